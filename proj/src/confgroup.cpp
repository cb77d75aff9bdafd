#include "cmf/confgroup.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace cmf {

namespace {

void check_dim(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

void check_axis(int d, int i) {
  if (i < 1 || i > d - 1) throw std::invalid_argument("spatial axis out of range");
}

// Light-cone frame (x, u, w) with u = ξ_d + ξ_{d+1}, w = ξ_d − ξ_{d+1}.
// There Q(ξ) = x² − u w and translations act triangularly.
Eigen::MatrixXd to_lc(int d) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(d + 2, d + 2);
  c(d, d) = 1;
  c(d, d + 1) = 1;
  c(d + 1, d) = 1;
  c(d + 1, d + 1) = -1;
  return c;
}

Eigen::MatrixXd from_lc(int d) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(d + 2, d + 2);
  c(d, d) = 0.5;
  c(d, d + 1) = 0.5;
  c(d + 1, d) = 0.5;
  c(d + 1, d + 1) = -0.5;
  return c;
}

Eigen::MatrixXd lc_to_xi(const Eigen::MatrixXd& a) {
  int d = static_cast<int>(a.rows()) - 2;
  return from_lc(d) * a * to_lc(d);
}

Eigen::MatrixXd eta(int d) {
  Eigen::MatrixXd e = -Eigen::MatrixXd::Identity(d, d);
  e(0, 0) = 1;
  return e;
}

GroupElement lorentz(const Eigen::MatrixXd& lam) {
  int d = static_cast<int>(lam.rows());
  GroupElement g = identity(d);
  g.m.topLeftCorner(d, d) = lam;
  return g;
}

// Pure boost taking e₀ to the unit future-timelike vector u.
Eigen::MatrixXd boost_to(const Point& u) {
  int d = static_cast<int>(u.size());
  Eigen::MatrixXd b = Eigen::MatrixXd::Identity(d, d);
  double g = u[0];
  Eigen::VectorXd p = u.tail(d - 1);
  b(0, 0) = g;
  b.block(0, 1, 1, d - 1) = p.transpose();
  b.block(1, 0, d - 1, 1) = p;
  if (p.squaredNorm() > 0) b.bottomRightCorner(d - 1, d - 1) += (g - 1) * p * p.transpose() / p.squaredNorm();
  return b;
}

}  // namespace

GroupElement GroupElement::inverse() const {
  int d = dim();
  Eigen::MatrixXd q = form_q(d);
  return {q * m.transpose() * q};
}

Eigen::MatrixXd form_q(int d) {
  check_dim(d);
  Eigen::MatrixXd q = -Eigen::MatrixXd::Identity(d + 2, d + 2);
  q(0, 0) = 1;
  q(d + 1, d + 1) = 1;
  return q;
}

double form_q(const Eigen::VectorXd& xi) {
  Eigen::Index n = xi.size();
  double s = xi[0] * xi[0] + xi[n - 1] * xi[n - 1];
  for (Eigen::Index i = 1; i < n - 1; ++i) s -= xi[i] * xi[i];
  return s;
}

Ray embed(const Point& x) {
  int d = static_cast<int>(x.size());
  check_dim(d);
  double x2 = minkowski_norm(x);
  Ray r{Eigen::VectorXd(d + 2)};
  r.xi.head(d) = x;
  r.xi[d] = 0.5 * (1 + x2);
  r.xi[d + 1] = 0.5 * (1 - x2);
  return r;
}

std::optional<Point> project(const Ray& r) {
  int d = r.dim();
  double n = r.xi.norm();
  if (n == 0) throw std::invalid_argument("zero ray");
  Eigen::VectorXd xi = r.xi / n;
  double u = xi[d] + xi[d + 1];
  if (std::abs(u) < kInfinityTol) return std::nullopt;
  return Point(xi.head(d) / u);
}

std::optional<Point> act(const GroupElement& g, const Point& x) {
  if (g.dim() != x.size()) throw std::invalid_argument("dimension mismatch");
  return project(Ray{g.m * embed(x).xi});
}

GroupElement identity(int d) {
  check_dim(d);
  return {Eigen::MatrixXd::Identity(d + 2, d + 2)};
}

GroupElement translation(const Point& a) {
  int d = static_cast<int>(a.size());
  check_dim(d);
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(d + 2, d + 2);
  Eigen::MatrixXd e = eta(d);
  t.block(0, d, d, 1) = a;
  t.block(d + 1, 0, 1, d) = 2 * (e * a).transpose();
  t(d + 1, d) = minkowski_norm(a);
  return {lc_to_xi(t)};
}

GroupElement boost(int d, int i, double s) {
  check_dim(d);
  check_axis(d, i);
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(d, d);
  l(0, 0) = l(i, i) = std::cosh(s);
  l(0, i) = l(i, 0) = -std::sinh(s);
  return lorentz(l);
}

GroupElement rotation(int d, int i, int j, double angle) {
  check_dim(d);
  check_axis(d, i);
  check_axis(d, j);
  if (i == j) throw std::invalid_argument("rotation needs two distinct axes");
  Eigen::MatrixXd l = Eigen::MatrixXd::Identity(d, d);
  l(i, i) = l(j, j) = std::cos(angle);
  l(i, j) = -std::sin(angle);
  l(j, i) = std::sin(angle);
  return lorentz(l);
}

GroupElement dilation(int d, double lambda) {
  check_dim(d);
  if (!(lambda > 0)) throw std::invalid_argument("dilation needs lambda > 0");
  Eigen::MatrixXd t = Eigen::MatrixXd::Identity(d + 2, d + 2);
  t(d, d) = 1 / lambda;
  t(d + 1, d + 1) = lambda;
  return {lc_to_xi(t)};
}

GroupElement ray_inversion(int d) {
  check_dim(d);
  GroupElement g = identity(d);
  for (int i = 0; i < d; ++i) g.m(i, i) = -1;
  g.m(d + 1, d + 1) = -1;
  return g;
}

GroupElement special_conformal(const Point& a) {
  int d = static_cast<int>(a.size());
  GroupElement r = ray_inversion(d);
  return r * translation(a) * r;
}

GroupElement parity_p(int d, int i) {
  check_dim(d);
  check_axis(d, i);
  GroupElement g = identity(d);
  g.m(i, i) = -1;
  return g;
}

GroupElement inversion_r(int d, int i) { return ray_inversion(d) * parity_p(d, i); }

double form_residual(const GroupElement& g) {
  Eigen::MatrixXd q = form_q(g.dim());
  return (g.m.transpose() * q * g.m - q).cwiseAbs().maxCoeff();
}

double form_residual(const LieGenerator& a) {
  Eigen::MatrixXd q = form_q(a.dim());
  return (a.m.transpose() * q + q * a.m).cwiseAbs().maxCoeff();
}

double distance_mod_sign(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

bool in_identity_component(const GroupElement& g) {
  int d = g.dim();
  // Positive block {ξ₀, ξ_{d+1}} and negative block {ξ₁..ξ_d}.
  Eigen::Matrix2d pos;
  pos << g.m(0, 0), g.m(0, d + 1), g.m(d + 1, 0), g.m(d + 1, d + 1);
  double neg = g.m.block(1, 1, d, d).determinant();
  // −g keeps the sign of the 2×2 determinant and multiplies the d×d one by (−1)^d.
  return pos.determinant() > 0 && (neg > 0 || d % 2 == 1);
}

GroupElement u_alpha(double alpha, int d, int i) {
  check_axis(d, i);
  double s = std::sin(alpha);
  if (std::abs(s) < 1e-12) return identity(d);
  Point a = Point::Zero(d);
  a[i] = -std::cos(alpha) / s;
  GroupElement t = translation(a);
  return t * dilation(d, 1 / (s * s)) * inversion_r(d, i) * t;
}

double dilation_identity_defect(double a, int d, int i) {
  if (a == 0) throw std::invalid_argument("dilation identity needs a != 0");
  check_axis(d, i);
  Point e = Point::Zero(d);
  e[i] = 1;
  GroupElement r = inversion_r(d, i);
  GroupElement lhs = translation(a * e) * r * translation(e / a) * r * translation(a * e) * r;
  return distance_mod_sign(lhs.m, dilation(d, a * a).m);
}

LieGenerator translation_generator(int d, int mu) {
  check_dim(d);
  if (mu < 0 || mu >= d) throw std::invalid_argument("index out of range");
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d + 2, d + 2);
  t(mu, d) = 1;
  t(d + 1, mu) = mu == 0 ? 2 : -2;
  return {lc_to_xi(t)};
}

LieGenerator time_translation_generator(int d) { return translation_generator(d, 0); }

LieGenerator boost_generator(int d, int i) {
  check_axis(d, i);
  LieGenerator a{Eigen::MatrixXd::Zero(d + 2, d + 2)};
  a.m(0, i) = a.m(i, 0) = -1;
  return a;
}

LieGenerator dilation_generator(int d) {
  check_dim(d);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(d + 2, d + 2);
  t(d, d) = -1;
  t(d + 1, d + 1) = 1;
  return {lc_to_xi(t)};
}

LieGenerator conformal_energy(int d) {
  Eigen::MatrixXd h = time_translation_generator(d).m;
  Eigen::MatrixXd r = ray_inversion(d).m;
  return {h + r * h * r};
}

GroupElement exp(const LieGenerator& a, double t) { return {(t * a.m).exp()}; }

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return a * b * a.inverse() * b.inverse();
}

GroupElement double_cone_map(const Point& p, const Point& f, const Point& p2, const Point& f2) {
  auto to_unit = [](const Point& past, const Point& fut) {
    Point v = 0.5 * (fut - past);
    if (!future_timelike(v)) throw std::invalid_argument("double cone tips must be future-timelike separated");
    double tau = std::sqrt(minkowski_norm(v));
    int d = static_cast<int>(v.size());
    Eigen::MatrixXd b = boost_to(v / tau);
    Eigen::MatrixXd e = eta(d);
    Eigen::MatrixXd binv = e * b.transpose() * e;
    return dilation(d, 1 / tau) * lorentz(binv) * translation(-0.5 * (fut + past));
  };
  return to_unit(p2, f2).inverse() * to_unit(p, f);
}

}  // namespace cmf
