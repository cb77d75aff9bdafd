#include "cmf/flows.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cmf {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

void need_d2(int d) {
  if (d < 2) throw std::invalid_argument("flow needs d >= 2");
}

// Fractional map of one light-cone coordinate; nullopt on a vanishing denominator.
std::optional<double> lc_map(double x, double e) {
  double num = (1 + x) - e * (1 - x);
  double den = (1 + x) + e * (1 - x);
  if (std::abs(den) <= 1e-12 * (std::abs(1 + x) + e * std::abs(1 - x))) return std::nullopt;
  return num / den;
}

}  // namespace

CanonicalFlow wedge_flow(int d) {
  need_d2(d);
  LieGenerator a = boost_generator(d, 1);
  a.m *= kTwoPi;
  auto f = [](double t, const Point& x) -> std::optional<Point> {
    double c = std::cosh(kTwoPi * t), s = std::sinh(kTwoPi * t);
    Point y = x;
    y[0] = c * x[0] - s * x[1];
    y[1] = -s * x[0] + c * x[1];
    return y;
  };
  return {standard_wedge(d), a, f};
}

CanonicalFlow doublecone_flow(int d) {
  need_d2(d);
  // π(ρhρ − h): the vector field −π(1 − x₀² − |x⃗|²) ∂₀ + 2π x₀ x⃗·∂.
  Eigen::MatrixXd h = time_translation_generator(d).m;
  Eigen::MatrixXd r = ray_inversion(d).m;
  LieGenerator a{std::numbers::pi * (r * h * r - h)};
  auto f = [](double t, const Point& x) -> std::optional<Point> {
    double e = std::exp(kTwoPi * t);
    Eigen::Index n = x.size();
    double rad = x.tail(n - 1).norm();
    auto p = lc_map(x[0] + rad, e);
    auto m = lc_map(x[0] - rad, e);
    if (!p || !m) return std::nullopt;
    Point y(n);
    y[0] = 0.5 * (*p + *m);
    double r2 = 0.5 * (*p - *m);
    if (rad > 0)
      y.tail(n - 1) = x.tail(n - 1) * (r2 / rad);
    else
      y.tail(n - 1).setZero();
    return y;
  };
  return {unit_double_cone(d), a, f};
}

CanonicalFlow cone_flow(int d) {
  auto f = [](double t, const Point& x) -> std::optional<Point> { return Point(std::exp(t) * x); };
  return {forward_cone(d), dilation_generator(d), f};
}

CanonicalFlow conjugate_flow(const GroupElement& g, const CanonicalFlow& f) {
  GroupElement gi = g.inverse();
  LieGenerator a{g.m * f.generator.m * gi.m};
  auto base = f.closed_form;
  auto map = [g, gi, base](double t, const Point& x) -> std::optional<Point> {
    auto y = act(gi, x);
    if (!y) return std::nullopt;
    auto z = base(t, *y);
    if (!z) return std::nullopt;
    return act(g, *z);
  };
  return {transformed(g, f.region), a, map};
}

GroupElement wedge_to_double_cone(int d) {
  need_d2(d);
  Point e1 = Point::Zero(d);
  e1[1] = 1;
  return translation(e1) * dilation(d, 2) * inversion_r(d, 1) * translation(e1);
}

PctIngredients pct_ingredients(int d) {
  need_d2(d);
  PctIngredients p;
  p.beta = [](const Point& x) { return Point(-x); };
  if (d % 2 == 0) {
    GroupElement b = identity(d);
    for (int i = 0; i < d; ++i) b.m(i, i) = -1;
    p.beta_matrix = b;
  }
  p.r1 = identity(d);
  p.r1.m(0, 0) = p.r1.m(1, 1) = -1;
  p.s_w1 = identity(d);
  for (int i = 2; i < d; ++i) p.s_w1.m(i, i) = -1;
  return p;
}

}  // namespace cmf
