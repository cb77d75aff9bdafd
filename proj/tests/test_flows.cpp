#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cmf/flows.hpp"
#include "cmf/report.hpp"
#include "cmf/suites.hpp"

using namespace cmf;
using std::numbers::pi;

namespace {

double close(const Point& a, const Point& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

Point e(int d, int i, double v = 1.0) {
  Point p = Point::Zero(d);
  p[i] = v;
  return p;
}

// Independent evaluation of the double-cone flow on radial light-cone coordinates.
Point doublecone_oracle(double t, const Point& x) {
  int d = static_cast<int>(x.size());
  double r = x.tail(d - 1).norm();
  double q = std::exp(2 * pi * t);
  auto f = [&](double s) { return ((1 + s) - q * (1 - s)) / ((1 + s) + q * (1 - s)); };
  double p = f(x[0] + r), m = f(x[0] - r);
  Point y(d);
  y[0] = 0.5 * (p + m);
  double r2 = 0.5 * (p - m);
  for (int i = 1; i < d; ++i) y[i] = r > 0 ? x[i] * r2 / r : 0.0;
  return y;
}

}  // namespace

TEST_CASE("wedge flow: boost of rapidity 2 pi t") {
  CanonicalFlow w = wedge_flow(4);
  Point y = *w(1.0, e(4, 1));
  CHECK(y[0] == doctest::Approx(-std::sinh(2 * pi)).epsilon(1e-14));
  CHECK(y[1] == doctest::Approx(std::cosh(2 * pi)).epsilon(1e-14));
  CHECK(y[2] == 0);
  CHECK(y[3] == 0);
  Point x(4);
  x << 0.3, 0.9, -0.2, 0.5;
  CHECK(close(*w(0, x), x) == 0);
  CHECK_THROWS(wedge_flow(1));
}

TEST_CASE("double-cone flow: identity at zero, fixed light rays, closed form") {
  CanonicalFlow f = doublecone_flow(3);
  std::mt19937_64 rng(3);
  for (const auto& x : sample_region(unit_double_cone(3), 200, 5)) {
    CHECK(close(*f(0, x), x) < 1e-15);
    for (double t : {-1.0, -0.2, 0.4, 1.5}) CHECK(close(*f(t, x), doublecone_oracle(t, x)) < 1e-12);
  }
  // x₊ = 1 and x₋ = −1 are fixed, including for points outside O₁.
  for (double t : {-2.0, 0.5, 2.0}) {
    Point p(3);
    p << 0.3, 0.7, 0;  // x₊ = 1
    Point y = *f(t, p);
    CHECK(y[0] + y.tail(2).norm() == doctest::Approx(1.0));
    Point q(3);
    q << -0.2, 0, 0.8;  // x₋ = −1
    y = *f(t, q);
    CHECK(y[0] - y.tail(2).norm() == doctest::Approx(-1.0));
  }
}

TEST_CASE("cone flow: dilations") {
  CanonicalFlow c = cone_flow(4);
  Point y = *c(std::log(2.0), e(4, 0));
  CHECK(close(y, e(4, 0, 2.0)) < 1e-15);
  for (const auto& x : sample_region(forward_cone(4), 1000, 2, Box::standard(4)))
    for (double t : {-2.0, 0.1, 2.0}) CHECK(region_contains(forward_cone(4), *c(t, x)));
}

TEST_CASE("all canonical flows: group law, region preservation, generator consistency") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int d : {2, 3, 4})
    for (const CanonicalFlow& f : {wedge_flow(d), doublecone_flow(d), cone_flow(d)}) {
      auto pts = sample_region(f.region, 1000, 7, Box::standard(d));
      for (int k = 0; k < 100; ++k) {
        double s = u(rng), t = u(rng);
        auto a = f(t, pts[k]);
        REQUIRE(a);
        CHECK(close(*f(s, *a), *f(s + t, pts[k])) < 1e-9);
      }
      for (double t : {-2.0, -1.0, -0.1, 0.1, 1.0, 2.0})
        for (const auto& x : pts) CHECK(region_contains(f.region, *f(t, x)));
      for (double t = -2; t <= 2; t += 0.25)
        for (int k = 0; k < 1000; k += 10) CHECK(close(*act(f.matrix(t), pts[k]), *f(t, pts[k])) < 1e-8);
    }
}

TEST_CASE("coherence: the double-cone flow is the transported wedge flow") {
  for (int d : {2, 3, 4}) {
    GroupElement g = wedge_to_double_cone(d);
    // g carries W₁ into O₁
    for (const auto& x : sample_region(standard_wedge(d), 1000, 3, Box::standard(d))) {
      auto y = act(g, x);
      REQUIRE(y);
      CHECK(region_contains(unit_double_cone(d), *y));
    }
    for (const auto& y : sample_region(unit_double_cone(d), 1000, 4)) {
      auto x = act(g.inverse(), y);
      REQUIRE(x);
      CHECK(region_contains(standard_wedge(d), *x));
    }
    CanonicalFlow dc = doublecone_flow(d);
    for (double t = -2; t <= 2.0001; t += 0.1) {
      Eigen::MatrixXd rhs = (g * wedge_flow(d).matrix(t) * g.inverse()).m;
      CHECK(distance_mod_sign(dc.matrix(t).m, rhs) < 1e-8 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
    }
    CanonicalFlow cf = conjugate_flow(g, wedge_flow(d));
    for (const auto& x : sample_region(unit_double_cone(d), 300, 6))
      for (double t : {-1.0, 0.3}) CHECK(close(*cf(t, x), *dc(t, x)) < 1e-9);
  }
}

TEST_CASE("conjugate_flow: identity and translated cone") {
  CanonicalFlow c = cone_flow(3);
  CanonicalFlow same = conjugate_flow(identity(3), c);
  Point x(3);
  x << 2, 0.5, -0.3;
  CHECK(close(*same(0.7, x), *c(0.7, x)) < 1e-14);

  Point a(3);
  a << 1, -2, 0.5;
  CanonicalFlow moved = conjugate_flow(translation(a), c);
  CHECK(close(*moved(1.3, a), a) < 1e-12);  // the apex is fixed
  for (const auto& y : sample_region(moved.region, 500, 8, Box::standard(3))) {
    CHECK(causal_relation(a, y) == Causal::timelike_future);
    CHECK(region_contains(moved.region, *moved(-0.8, y)));
    CHECK(close(*moved(0.5, y), a + std::exp(0.5) * (y - a)) < 1e-12);
  }
  // conjugation is associative
  GroupElement g = cmf::boost(3, 1, 0.4), h = translation(a);
  CHECK(distance_mod_sign(conjugate_flow(g, conjugate_flow(h, c)).matrix(0.6).m,
                          conjugate_flow(g * h, c).matrix(0.6).m) < 1e-12);
}

TEST_CASE("PCT ingredients") {
  for (int d : {2, 3, 4}) {
    PctIngredients p = pct_ingredients(d);
    CHECK(p.beta_matrix.has_value() == (d % 2 == 0));
    Region w = standard_wedge(d), wp = spacelike_complement(w);
    for (const auto& x : sample_box(Box::standard(d), 2000, 1)) {
      CHECK(p.beta(p.beta(x)) == x);
      CHECK(close(p.beta(x), -x) == 0);
      CHECK(close(*act(p.r1, *act(p.s_w1, x)), -x) < 1e-12);
      if (p.beta_matrix) CHECK(close(*act(*p.beta_matrix, x), -x) < 1e-12);
      if (region_contains(w, x)) {
        CHECK(region_contains(wp, *act(p.r1, x)));
        CHECK(region_contains(w, *act(p.s_w1, x)));
      }
    }
  }
  CHECK_THROWS(pct_ingredients(1));
}

TEST_CASE("trajectory rows") {
  Point x = e(4, 0);
  auto rows = trajectory_rows(cone_flow(4), x, {0, 0.25, 0.5, 0.75, 1});
  CHECK(rows.size() == 5);
  CHECK(rows[4][1] == doctest::Approx(std::exp(1.0)));
  CHECK(trajectory_header(4).size() == 5);
  CHECK(format_csv(trajectory_header(4), trajectory_rows(cone_flow(4), x, {})) == "t,x0,x1,x2,x3\n");
}
