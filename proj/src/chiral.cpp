#include "cmf/chiral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>

namespace cmf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSiteTol = 1e-9;

double wrap(double x) {
  double y = std::fmod(x, 2 * kPi);
  return y < 0 ? y + 2 * kPi : y;
}

// Σ_{n=1}^{N} cos(n x)
double dirichlet(int n, double x) {
  double h = std::sin(0.5 * x);
  if (std::abs(h) < 1e-9) {
    double s = 0;
    for (int k = 1; k <= n; ++k) s += std::cos(k * x);
    return s;
  }
  return std::sin((n + 0.5) * x) / (2 * h) - 0.5;
}

MatT<Real> site_columns(const MatT<Real>& e, const std::vector<int>& sites) {
  MatT<Real> g(e.rows(), static_cast<Eigen::Index>(sites.size()));
  for (size_t k = 0; k < sites.size(); ++k) g.col(static_cast<Eigen::Index>(k)) = e.col(sites[k]);
  return g;
}

// Pseudo-inverse of E: rows of E are orthogonal with squared norms w_n/L.
Eigen::MatrixXd embedding_pinv(const LatticeModel& model) {
  Eigen::VectorXd s(2 * model.m);
  for (int n = 0; n < model.m; ++n) s[n] = s[model.m + n] = model.L / model.weights[n];
  return model.embedding.transpose() * s.asDiagonal();
}

StandardSubspace<Real> make_subspace(const LatticeModel& model, const IntervalOnCircle& i) {
  PrecisionGuard g(model.digits);
  return interval_subspace(model, i);
}

ModularFrame<Real> make_frame(const StandardSubspace<Real>& k, unsigned digits) {
  PrecisionGuard g(digits);
  return ModularFrame<Real>(k);
}

}  // namespace

const char* to_string(EnergyWeights w) { return w == EnergyWeights::lattice ? "lattice" : "spectral"; }

unsigned default_digits(int L) { return static_cast<unsigned>(3 * L / 4 + 40); }

LatticeModel build_model(int L, EnergyWeights w, unsigned digits) {
  if (L < 16 || (L & (L - 1)) != 0) throw std::invalid_argument("L must be a power of two >= 16");
  LatticeModel mo;
  mo.L = L;
  mo.m = L / 2 - 1;
  mo.kind = w;
  mo.digits = digits ? digits : default_digits(L);
  mo.theta.resize(L);
  for (int j = 0; j < L; ++j) mo.theta[j] = 2 * kPi * j / L;
  mo.weights.resize(mo.m);
  for (int n = 1; n <= mo.m; ++n)
    mo.weights[n - 1] = w == EnergyWeights::lattice ? L / (2 * kPi) * std::sin(2 * kPi * n / L) : double(n);
  mo.embedding.resize(2 * mo.m, L);
  for (int n = 1; n <= mo.m; ++n) {
    double c = std::sqrt(2 * mo.weights[n - 1]) / L;
    for (int j = 0; j < L; ++j) {
      mo.embedding(n - 1, j) = c * std::cos(n * mo.theta[j]);
      mo.embedding(mo.m + n - 1, j) = c * std::sin(n * mo.theta[j]);
    }
  }
  // Multiplier −i·sign(n) on retained modes: 𝒥_{jk} = (2/L) Σ_n sin(n(θⱼ − θₖ)).
  mo.complex_structure.resize(L, L);
  for (int j = 0; j < L; ++j)
    for (int k = 0; k < L; ++k) {
      double s = 0;
      for (int n = 1; n <= mo.m; ++n) s += std::sin(n * (mo.theta[j] - mo.theta[k]));
      mo.complex_structure(j, k) = 2.0 * s / L;
    }
  return mo;
}

MatT<Real> embedding_mp(const LatticeModel& model) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const int L = model.L, m = model.m;
  const Real pi = boost::math::constants::pi<Real>();
  MatT<Real> e(2 * m, L);
  for (int n = 1; n <= m; ++n) {
    Real w = model.kind == EnergyWeights::lattice ? Real(L) / (2 * pi) * sin(2 * pi * n / L) : Real(n);
    Real c = sqrt(2 * w) / L;
    for (int j = 0; j < L; ++j) {
      Real th = 2 * pi * j / L;
      e(n - 1, j) = c * cos(n * th);
      e(m + n - 1, j) = c * sin(n * th);
    }
  }
  return e;
}

double IntervalOnCircle::length() const {
  double l = wrap(b - a);
  return l == 0 ? 2 * kPi : l;
}

IntervalOnCircle IntervalOnCircle::complement() const { return {b, a + 2 * kPi}; }

IntervalOnCircle IntervalOnCircle::rotated(double angle) const { return {a + angle, b + angle}; }

// Inversion in the circle through e^{ia}, e^{ib} orthogonal to the unit circle;
// for a half circle this degenerates to the mirror line through both endpoints.
static double reflect_angle(double theta, const IntervalOnCircle& about) {
  double h = 0.5 * about.length();
  if (h > 0.5 * kPi) h = kPi - h;  // half-angle of the shorter arc
  if (std::abs(h - 0.5 * kPi) < 1e-12) return about.a + about.b + kPi - theta;
  double phi = about.center();
  if (about.length() > kPi) phi += kPi;
  std::complex<double> c = std::polar(1.0 / std::cos(h), phi);
  double r2 = std::tan(h) * std::tan(h);
  std::complex<double> z = std::polar(1.0, theta);
  return std::arg(c + r2 / std::conj(z - c));
}

IntervalOnCircle IntervalOnCircle::reflected(const IntervalOnCircle& about) const {
  // Orientation reversing: the image of (a, b) runs from r(b) to r(a).
  return {wrap(reflect_angle(b, about)), wrap(reflect_angle(a, about))};
}

double IntervalOnCircle::center() const { return a + 0.5 * length(); }

IntervalOnCircle half_circle() { return {0.0, kPi}; }

std::vector<int> interval_sites(const LatticeModel& model, const IntervalOnCircle& i) {
  double len = i.length();
  if (!(len > 0 && len < 2 * kPi)) throw std::invalid_argument("interval length must lie in (0, 2pi)");
  std::vector<int> out;
  for (int j = 0; j < model.L; ++j) {
    double x = wrap(model.theta[j] - i.a);
    if (x > 2 * kPi - kSiteTol) x -= 2 * kPi;
    if (x > kSiteTol && x < len - kSiteTol) out.push_back(j);
  }
  return out;
}

bool contains(const IntervalOnCircle& outer, const IntervalOnCircle& inner) {
  double s = wrap(inner.a - outer.a);
  if (s > 2 * kPi - kSiteTol) s = 0;
  return s + inner.length() <= outer.length() + kSiteTol;
}

StandardSubspace<Real> interval_subspace(const LatticeModel& model, const IntervalOnCircle& i) {
  std::vector<int> sites = interval_sites(model, i);
  if (sites.empty()) throw std::invalid_argument("interval contains no lattice sites");
  if (static_cast<int>(sites.size()) == model.L) throw std::invalid_argument("interval complement contains no sites");
  return standard_subspace<Real>(site_columns(embedding_mp(model), sites));
}

double mobius_angle(double theta, const IntervalOnCircle& i, double s, double* derivative) {
  using C = std::complex<double>;
  C A = std::polar(1.0, i.a), B = std::polar(1.0, i.b), z = std::polar(1.0, theta);
  double k = std::exp(s);
  if (derivative) *derivative = k * std::norm(A - B) / std::norm((1 - k) * z + k * A - B);
  if (std::abs(z - B) < 1e-13) return theta;
  C r = k * (z - A) / (z - B);
  if (std::abs(1.0 - r) < 1e-300) return i.b;
  return std::arg((A - r * B) / (1.0 - r));
}

Eigen::MatrixXd mobius_flow_unitary(const LatticeModel& model, const IntervalOnCircle& i, double t, double exponent) {
  const int L = model.L, n = model.m;
  Eigen::MatrixXd g(L, L), p(L, L);
  for (int j = 0; j < L; ++j) {
    double d = 1;
    double th = mobius_angle(model.theta[j], i, 2 * kPi * t, &d);
    double wgt = exponent == 0 ? 1.0 : std::pow(d, exponent);
    for (int k = 0; k < L; ++k) {
      g(j, k) = wgt * 2.0 / L * dirichlet(n, th - model.theta[k]);
      p(j, k) = 2.0 / L * dirichlet(n, model.theta[j] - model.theta[k]);
    }
  }
  return p * g;
}

Eigen::MatrixXd bump_family(const LatticeModel& model, const IntervalOnCircle& i, const std::vector<double>& widths) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(model.L, static_cast<Eigen::Index>(widths.size()));
  double c = i.center(), scale = i.length() / kPi;
  for (size_t k = 0; k < widths.size(); ++k) {
    double hw = widths[k] * scale;
    for (int j = 0; j < model.L; ++j) {
      double x = wrap(model.theta[j] - c + kPi) - kPi;
      double r = x / hw;
      if (std::abs(r) < 1) b(j, static_cast<Eigen::Index>(k)) = std::exp(-1.0 / (1.0 - r * r));
    }
  }
  return b;
}

double BWReport::defect_at(double t) const {
  for (size_t k = 0; k < t_grid.size(); ++k)
    if (std::abs(t_grid[k] - t) < 1e-12) return defect[k];
  throw std::out_of_range("t not on the grid");
}

double BWReport::z_max() const {
  double z = 0;
  for (const auto& r : z_residuals) z = std::max(z, r.value);
  return z;
}

IntervalAnalysis::IntervalAnalysis(const LatticeModel& model, const IntervalOnCircle& i)
    : model_(model), interval_(i), k_(make_subspace(model, i)), frame_(make_frame(k_, model.digits)) {}

double IntervalAnalysis::max_log_delta() const {
  PrecisionGuard g(model_.digits);
  return to_double(Real(frame_.log_spectrum().cwiseAbs().maxCoeff()));
}

BWReport IntervalAnalysis::bw(const BWOptions& opt) const {
  PrecisionGuard guard(model_.digits);
  for (double t : opt.t_grid)
    if (t < -0.5 || t > 0.5) throw std::invalid_argument("t grid must lie in [-0.5, 0.5]");
  for (size_t k = 1; k < opt.t_grid.size(); ++k)
    if (!(opt.t_grid[k] > opt.t_grid[k - 1])) throw std::invalid_argument("t grid must be increasing");

  const Eigen::MatrixXd& e = model_.embedding;
  Eigen::MatrixXd bumps = bump_family(model_, interval_, opt.widths);
  Eigen::MatrixXd v = e * bumps;
  MatT<Real> vmp = embedding_mp(model_) * bumps.cast<Real>();
  Eigen::VectorXd vn = v.colwise().norm();

  BWReport rep;
  rep.L = model_.L;
  rep.interval = interval_;
  rep.t_grid = opt.t_grid;
  rep.digits = model_.digits;
  rep.min_angle = k_.report.min_angle;
  rep.max_log_delta = max_log_delta();

  auto defects = [&](const Eigen::MatrixXd& geo, const Eigen::MatrixXd& mod) {
    std::vector<double> d;
    for (Eigen::Index c = 0; c < geo.cols(); ++c) d.push_back((geo.col(c) - mod.col(c)).norm() / vn[c]);
    return d;
  };

  std::vector<Eigen::MatrixXd> mod;
  for (double t : opt.t_grid) {
    mod.push_back(to_double<Real>(frame_.apply_flow_k(vmp, Real(t))));
    Eigen::MatrixXd geo = e * mobius_flow_unitary(model_, interval_, t, opt.exponent) * bumps;
    auto d = defects(geo, mod.back());
    rep.defect_by_vector.push_back(d);
    rep.defect.push_back(*std::max_element(d.begin(), d.end()));
  }
  for (double ex : opt.diagnostic_exponents) {
    std::vector<double> per_t;
    for (size_t k = 0; k < opt.t_grid.size(); ++k) {
      Eigen::MatrixXd geo = e * mobius_flow_unitary(model_, interval_, opt.t_grid[k], ex) * bumps;
      auto d = defects(geo, mod[k]);
      per_t.push_back(*std::max_element(d.begin(), d.end()));
    }
    rep.diagnostics.emplace_back(ex, per_t);
  }

  // z(t) = Δ^{it} U(−t), acting on coordinate vectors.
  Eigen::MatrixXd pinv = embedding_pinv(model_);
  auto z = [&](double t, const Eigen::MatrixXd& x) -> Eigen::MatrixXd {
    Eigen::MatrixXd ux = e * (mobius_flow_unitary(model_, interval_, -t, opt.exponent) * (pinv * x));
    return to_double<Real>(frame_.apply_flow(ux.cast<Real>(), Real(t)));
  };
  for (const auto& [s, t] : opt.z_pairs) {
    Eigen::MatrixXd lhs = z(s + t, v);
    Eigen::MatrixXd rhs = z(s, z(t, v));
    auto d = defects(lhs, rhs);
    rep.z_residuals.push_back({s, t, *std::max_element(d.begin(), d.end())});
  }
  return rep;
}

double IntervalAnalysis::duality_defect() const {
  PrecisionGuard guard(model_.digits);
  StandardSubspace<Real> kc = interval_subspace(model_, interval_.complement());
  StandardSubspace<Real> kp = symplectic_complement(k_);
  return to_double(subspace_angle<Real>(kp.basis, kc.basis));
}

double IntervalAnalysis::pct_defect(const IntervalOnCircle& probe) const {
  if (!contains(interval_, probe) && !contains(interval_.complement(), probe))
    throw std::invalid_argument("probe must lie inside I or its complement");
  PrecisionGuard guard(model_.digits);
  MatT<Real> emp = embedding_mp(model_);
  std::vector<int> ps = interval_sites(model_, probe);
  std::vector<int> rs = interval_sites(model_, probe.reflected(interval_));
  if (ps.empty() || rs.empty()) throw std::invalid_argument("probe contains no lattice sites");
  MatT<Real> jp = frame_.apply_j(site_columns(emp, ps));
  return to_double(subspace_angle<Real>(jp, site_columns(emp, rs)));
}

double IntervalAnalysis::j_squared_residual(std::uint64_t seed, int count) const {
  PrecisionGuard guard(model_.digits);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd x(2 * model_.m, count);
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r) x(r, c) = n(rng);
  MatT<Real> v = x.cast<Real>();
  MatT<Real> jj = frame_.apply_j(frame_.apply_j(v));
  Real worst = 0;
  for (Eigen::Index c = 0; c < v.cols(); ++c) worst = std::max(worst, Real((jj.col(c) - v.col(c)).norm() / v.col(c).norm()));
  return to_double(worst);
}

BWReport bw_defect(const LatticeModel& model, const IntervalOnCircle& i, const BWOptions& opt) {
  return IntervalAnalysis(model, i).bw(opt);
}

double duality_defect(const LatticeModel& model, const IntervalOnCircle& i) {
  PrecisionGuard guard(model.digits);
  StandardSubspace<Real> k = interval_subspace(model, i);
  StandardSubspace<Real> kc = interval_subspace(model, i.complement());
  return to_double(subspace_angle<Real>(symplectic_complement(k).basis, kc.basis));
}

std::pair<double, double> duality_defects(const LatticeModel& model, const IntervalOnCircle& i) {
  PrecisionGuard guard(model.digits);
  StandardSubspace<Real> k = interval_subspace(model, i);
  StandardSubspace<Real> kc = interval_subspace(model, i.complement());
  return {to_double(subspace_angle<Real>(symplectic_complement(k).basis, kc.basis)),
          to_double(subspace_angle<Real>(symplectic_complement(kc).basis, k.basis))};
}

double pct_geometry_defect(const LatticeModel& model, const IntervalOnCircle& i, const IntervalOnCircle& probe) {
  return IntervalAnalysis(model, i).pct_defect(probe);
}

double symplectic_pairing_norm(const LatticeModel& model, const IntervalOnCircle& p, const IntervalOnCircle& i) {
  PrecisionGuard guard(model.digits);
  MatT<Real> emp = embedding_mp(model);
  MatT<Real> qp = orthonormal_basis<Real>(site_columns(emp, interval_sites(model, p)));
  MatT<Real> qi = orthonormal_basis<Real>(site_columns(emp, interval_sites(model, i)));
  return to_double(spectral_norm<Real>(MatT<Real>(qp.transpose() * apply_i<Real>(qi))));
}

double energy_trace(int n_modes, double beta) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  if (n_modes < 0) throw std::invalid_argument("mode count must be non-negative");
  double s = 0;
  for (int n = n_modes; n >= 1; --n) s += std::exp(-beta * n);
  return s;
}

double energy_trace(const LatticeModel& model, double beta) { return energy_trace(model.m, beta); }

double energy_trace_limit(double beta) {
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  return std::exp(-beta) / (1 - std::exp(-beta));
}

double energy_trace_tail_bound(int n_modes, double beta) {
  return std::exp(-beta * n_modes) / (1 - std::exp(-beta));
}

}  // namespace cmf
