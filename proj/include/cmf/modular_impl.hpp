#pragma once
// Template definitions for modular.hpp.

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmf {

template <class T>
MatT<T> complex_structure(Eigen::Index m) {
  MatT<T> i = MatT<T>::Zero(2 * m, 2 * m);
  for (Eigen::Index k = 0; k < m; ++k) {
    i(k, m + k) = T(-1);
    i(m + k, k) = T(1);
  }
  return i;
}

// I·X without forming I.
template <class T>
MatT<T> apply_i(const MatT<T>& x) {
  Eigen::Index m = x.rows() / 2;
  MatT<T> y(x.rows(), x.cols());
  y.topRows(m) = -x.bottomRows(m);
  y.bottomRows(m) = x.topRows(m);
  return y;
}

template <class T>
double angle_floor() {
  if constexpr (std::is_same_v<T, double>) {
    return 1e-6;
  } else {
    using std::log10;
    double lt = to_double(T(log10(machine_eps<T>())));
    double ld = std::log10(std::numeric_limits<double>::epsilon());
    return std::pow(10.0, -6.0 + (lt - ld) / 3.0);
  }
}

namespace detail {

template <class T>
void check_generators(const MatT<T>& g) {
  if (g.rows() == 0 || g.rows() % 2 != 0) throw std::invalid_argument("generators must have 2m rows");
  if (g.cols() == 0) throw std::invalid_argument("at least one generator is required");
  for (Eigen::Index j = 0; j < g.cols(); ++j)
    if (g.col(j).cwiseAbs().maxCoeff() == T(0)) throw std::invalid_argument("zero generator");
}

// Principal angles between span(Q) and span(IQ) for orthonormal Q, ascending.
template <class T>
std::vector<double> k_ik_angles(const MatT<T>& q) {
  using std::asin;
  using std::sqrt;
  MatT<T> iq = apply_i(q);
  MatT<T> r = iq - q * (q.transpose() * iq);
  MatT<T> g = r.transpose() * r;
  Eigen::SelfAdjointEigenSolver<MatT<T>> es(g, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    T s2 = es.eigenvalues()[k];
    T s = s2 > T(0) ? T(sqrt(s2)) : T(0);
    if (s > T(1)) s = T(1);
    out.push_back(to_double(T(asin(s))));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

namespace detail {

// Standardness of span(q) for an orthonormal q of numerical rank r.
template <class T>
StandardnessReport classify(const MatT<T>& q, Eigen::Index r) {
  StandardnessReport rep;
  rep.ambient_dim = q.rows() / 2;
  rep.floor = angle_floor<T>();
  rep.real_rank = r;
  rep.angles = k_ik_angles(q);
  rep.min_angle = rep.angles.empty() ? 0.0 : rep.angles.front();
  if (r < rep.ambient_dim) {
    rep.reason = "K + iK is a proper subspace (real rank " + std::to_string(r) + " < " +
                 std::to_string(rep.ambient_dim) + ")";
  } else if (r > rep.ambient_dim) {
    rep.reason = "K meets iK (real rank " + std::to_string(r) + " > " + std::to_string(rep.ambient_dim) + ")";
  } else if (!(rep.min_angle > rep.floor)) {
    rep.reason = "smallest angle between K and iK is below the floor";
  } else {
    rep.standard = true;
  }
  return rep;
}

template <class T>
StandardSubspace<T> make_standard(const MatT<T>& generators, MatT<T> q, Eigen::Index r) {
  StandardnessReport rep = classify<T>(q, r);
  if (!rep.standard) throw NotStandard("not a standard subspace: " + rep.reason, rep);
  StandardSubspace<T> k;
  k.m = rep.ambient_dim;
  k.generators = generators;
  k.basis = std::move(q);
  k.report = std::move(rep);
  return k;
}

}  // namespace detail

template <class T>
StandardnessReport is_standard(const MatT<T>& generators) {
  detail::check_generators(generators);
  Eigen::Index r = 0;
  MatT<T> q = orthonormal_basis(generators, &r);
  return detail::classify<T>(q, r);
}

template <class T>
StandardSubspace<T> standard_subspace(const MatT<T>& generators) {
  detail::check_generators(generators);
  Eigen::Index r = 0;
  MatT<T> q = orthonormal_basis(generators, &r);
  return detail::make_standard<T>(generators, std::move(q), r);
}

template <class T>
StandardSubspace<T> symplectic_complement(const StandardSubspace<T>& k) {
  // The trailing columns of the full Q factor of IQ are an orthonormal basis of (IK)^⊥.
  MatT<T> iq = apply_i(k.basis);
  Eigen::HouseholderQR<MatT<T>> qr(iq);
  MatT<T> full = qr.householderQ();
  MatT<T> comp = full.rightCols(full.cols() - iq.cols());
  return detail::make_standard<T>(comp, comp, comp.cols());
}

template <class T>
T subspace_angle(const MatT<T>& a, const MatT<T>& b) {
  using std::asin;
  Eigen::Index ra = 0, rb = 0;
  MatT<T> qa = orthonormal_basis(a, &ra);
  MatT<T> qb = orthonormal_basis(b, &rb);
  if (ra == 0 || rb == 0) throw std::invalid_argument("subspace_angle needs nonzero subspaces");
  if (ra > rb) std::swap(qa, qb);
  MatT<T> r = qa - qb * (qb.transpose() * qa);
  T s = spectral_norm<T>(r);
  if (s > T(1)) s = T(1);
  return asin(s);
}

template <class T>
std::pair<T, T> inner(const VecT<T>& u, const VecT<T>& v) {
  Eigen::Index m = u.size() / 2;
  T re = u.dot(v);
  T im = u.tail(m).dot(v.head(m)) - u.head(m).dot(v.tail(m));
  return {re, im};
}

// ---------------------------------------------------------------- full solve

template <class T>
ModularData<T> tomita_operators(const StandardSubspace<T>& k) {
  using std::exp;
  using std::log;
  ModularData<T> md;
  Eigen::Index m = k.m;
  md.m = m;
  const MatT<T>& q = k.basis;
  MatT<T> b(2 * m, 2 * m), x(2 * m, 2 * m);
  MatT<T> iq = apply_i(q);
  b << q, iq;
  x << q, -iq;
  // S B = X  ⇔  Bᵀ Sᵀ = Xᵀ
  Eigen::PartialPivLU<MatT<T>> lu(b.transpose());
  md.S = lu.solve(x.transpose()).transpose();
  MatT<T> delta = md.S.transpose() * md.S;
  delta = (delta + delta.transpose()) / T(2);
  Eigen::SelfAdjointEigenSolver<MatT<T>> es(delta);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= T(0))
    throw NotStandard("modular operator is not positive definite", k.report);
  md.eigvecs = es.eigenvectors();
  md.log_eigs = es.eigenvalues().unaryExpr([](const T& v) { return T(log(v)); });
  md.Delta = delta;
  md.J = md.S * md.power(T(-0.5));
  return md;
}

template <class T>
MatT<T> ModularData<T>::power(const T& s) const {
  using std::exp;
  VecT<T> d = log_eigs.unaryExpr([&](const T& l) { return T(exp(s * l)); });
  return eigvecs * d.asDiagonal() * eigvecs.transpose();
}

template <class T>
MatT<T> ModularData<T>::flow(const T& t) const {
  using std::cos;
  using std::sin;
  VecT<T> c = log_eigs.unaryExpr([&](const T& l) { return T(cos(t * l)); });
  VecT<T> s = log_eigs.unaryExpr([&](const T& l) { return T(sin(t * l)); });
  MatT<T> cm = eigvecs * c.asDiagonal() * eigvecs.transpose();
  MatT<T> sm = eigvecs * s.asDiagonal() * eigvecs.transpose();
  return cm + apply_i<T>(sm);
}

// ---------------------------------------------------------------- frame route

template <class T>
ModularFrame<T>::ModularFrame(const StandardSubspace<T>& k) : m_(k.m), q_(k.basis) {
  using std::log;
  using std::sqrt;
  const Eigen::Index m = m_;
  MatT<T> iq = apply_i(q_);
  b_.resize(2 * m, 2 * m);
  b_ << q_, iq;
  b_lu_.compute(b_);

  MatT<T> mm = q_.transpose() * iq;
  mm = (mm - mm.transpose()) / T(2);
  MatT<T> p = mm.transpose() * mm;
  Eigen::SelfAdjointEigenSolver<MatT<T>> es(p);
  const MatT<T>& v = es.eigenvectors();

  // Pair eigenvectors of MᵀM into complex eigenvectors of iM:
  // M a = h b, M b = −h a  ⇒  iM (a ± ib) = ±h (a ± ib).
  const T zero_tol = sqrt(machine_eps<T>());
  MatT<T> used(m, m);
  Eigen::Index nused = 0;
  w_.re = MatT<T>::Zero(m, m);
  w_.im = MatT<T>::Zero(m, m);
  log_delta_ = VecT<T>::Zero(m);
  Eigen::Index col = 0;
  const T inv_sqrt2 = T(1) / sqrt(T(2));
  auto orthogonalize = [&](VecT<T>& x) {
    for (int pass = 0; pass < 2; ++pass)
      if (nused > 0) x -= used.leftCols(nused) * (used.leftCols(nused).transpose() * x);
  };
  for (Eigen::Index j = m - 1; j >= 0 && col < m; --j) {
    VecT<T> a = v.col(j);
    orthogonalize(a);
    T na = a.norm();
    if (na < T(0.5)) continue;
    a /= na;
    VecT<T> y = mm * a;
    T h = y.norm();
    if (h > zero_tol && col + 1 < m) {
      VecT<T> bv = y / h;
      orthogonalize(bv);
      bv -= a * a.dot(bv);
      bv /= bv.norm();
      used.col(nused++) = a;
      used.col(nused++) = bv;
      T l = log((T(1) + h) / (T(1) - h));
      w_.re.col(col) = a * inv_sqrt2;
      w_.im.col(col) = bv * inv_sqrt2;
      log_delta_[col++] = l;
      w_.re.col(col) = a * inv_sqrt2;
      w_.im.col(col) = -bv * inv_sqrt2;
      log_delta_[col++] = -l;
    } else {
      used.col(nused++) = a;
      w_.re.col(col) = a;
      log_delta_[col++] = T(0);
    }
  }
  if (col != m) throw std::runtime_error("modular frame: eigenvector pairing failed");
}

template <class T>
MatT<T> ModularFrame<T>::coord_op(const VecT<T>& fre, const VecT<T>& fim) const {
  const Eigen::Index m = m_;
  MatT<T> ar = w_.re * fre.asDiagonal() - w_.im * fim.asDiagonal();
  MatT<T> ai = w_.re * fim.asDiagonal() + w_.im * fre.asDiagonal();
  MatT<T> xr = ar * w_.re.transpose() + ai * w_.im.transpose();
  MatT<T> xi = ai * w_.re.transpose() - ar * w_.im.transpose();
  MatT<T> x(2 * m, 2 * m);
  x << xr, -xi, xi, xr;
  return x;
}

template <class T>
MatT<T> ModularFrame<T>::to_vectors(const MatT<T>& x) const {
  // B X B⁻¹; only used when a full operator matrix is requested.
  return b_ * x * b_lu_.inverse();
}

template <class T>
void ModularFrame<T>::apply_coord(const VecT<T>& fre, const VecT<T>& fim, MatT<T>& cr, MatT<T>& ci) const {
  MatT<T> yr = w_.re.transpose() * cr + w_.im.transpose() * ci;
  MatT<T> yi = w_.re.transpose() * ci - w_.im.transpose() * cr;
  MatT<T> zr = fre.asDiagonal() * yr - fim.asDiagonal() * yi;
  MatT<T> zi = fre.asDiagonal() * yi + fim.asDiagonal() * yr;
  cr = w_.re * zr - w_.im * zi;
  ci = w_.im * zr + w_.re * zi;
}

template <class T>
MatT<T> ModularFrame<T>::apply_flow(const MatT<T>& v, const T& t) const {
  using std::cos;
  using std::sin;
  MatT<T> c = b_lu_.solve(v);
  MatT<T> cr = c.topRows(m_), ci = c.bottomRows(m_);
  VecT<T> fc = log_delta_.unaryExpr([&](const T& l) { return T(cos(t * l)); });
  VecT<T> fs = log_delta_.unaryExpr([&](const T& l) { return T(sin(t * l)); });
  apply_coord(fc, fs, cr, ci);
  return q_ * cr + apply_i<T>(MatT<T>(q_ * ci));
}

template <class T>
MatT<T> ModularFrame<T>::apply_flow_k(const MatT<T>& v, const T& t) const {
  using std::cos;
  using std::sin;
  MatT<T> cr = q_.transpose() * v;
  MatT<T> ci = MatT<T>::Zero(m_, v.cols());
  VecT<T> fc = log_delta_.unaryExpr([&](const T& l) { return T(cos(t * l)); });
  VecT<T> fs = log_delta_.unaryExpr([&](const T& l) { return T(sin(t * l)); });
  apply_coord(fc, fs, cr, ci);
  return q_ * cr + apply_i<T>(MatT<T>(q_ * ci));
}

template <class T>
MatT<T> ModularFrame<T>::apply_j(const MatT<T>& v) const {
  using std::exp;
  MatT<T> c = b_lu_.solve(v);
  MatT<T> cr = c.topRows(m_), ci = c.bottomRows(m_);
  VecT<T> e = log_delta_.unaryExpr([&](const T& l) { return T(exp(-l / T(2))); });
  apply_coord(e, VecT<T>::Zero(m_), cr, ci);
  return q_ * cr - apply_i<T>(MatT<T>(q_ * ci));
}

template <class T>
MatT<T> ModularFrame<T>::flow(const T& t) const {
  using std::cos;
  using std::sin;
  VecT<T> c = log_delta_.unaryExpr([&](const T& l) { return T(cos(t * l)); });
  VecT<T> s = log_delta_.unaryExpr([&](const T& l) { return T(sin(t * l)); });
  return to_vectors(coord_op(c, s));
}

template <class T>
MatT<T> ModularFrame<T>::power(const T& s) const {
  using std::exp;
  VecT<T> e = log_delta_.unaryExpr([&](const T& l) { return T(exp(s * l)); });
  return to_vectors(coord_op(e, VecT<T>::Zero(m_)));
}

template <class T>
MatT<T> ModularFrame<T>::s_operator() const {
  MatT<T> c = MatT<T>::Identity(2 * m_, 2 * m_);
  c.bottomRightCorner(m_, m_) *= T(-1);
  return to_vectors(c);
}

template <class T>
MatT<T> ModularFrame<T>::j_operator() const {
  using std::exp;
  VecT<T> e = log_delta_.unaryExpr([&](const T& l) { return T(exp(-l / T(2))); });
  MatT<T> y = coord_op(e, VecT<T>::Zero(m_));
  y.bottomRows(m_) *= T(-1);
  return to_vectors(y);
}

template <class T>
MatT<T> ModularFrame<T>::flow_on_k(const T& t) const {
  using std::cos;
  using std::sin;
  VecT<T> c = log_delta_.unaryExpr([&](const T& l) { return T(cos(t * l)); });
  VecT<T> s = log_delta_.unaryExpr([&](const T& l) { return T(sin(t * l)); });
  MatT<T> ar = w_.re * c.asDiagonal() - w_.im * s.asDiagonal();
  MatT<T> ai = w_.re * s.asDiagonal() + w_.im * c.asDiagonal();
  return ar * w_.re.transpose() + ai * w_.im.transpose();
}

// ---------------------------------------------------------------- checks

template <class T>
OperatorSet<T> operator_set(const ModularData<T>& md) {
  OperatorSet<T> o;
  o.S = md.S;
  o.J = md.J;
  o.Delta = md.Delta;
  o.Delta_inv = md.power(T(-1));
  o.Delta_half = md.power(T(0.5));
  o.flow = [md](const T& t) { return md.flow(t); };
  return o;
}

template <class T>
OperatorSet<T> operator_set(const ModularFrame<T>& fr) {
  OperatorSet<T> o;
  o.S = fr.s_operator();
  o.J = fr.j_operator();
  o.Delta = fr.power(T(1));
  o.Delta_inv = fr.power(T(-1));
  o.Delta_half = fr.power(T(0.5));
  o.flow = [&fr](const T& t) { return fr.flow(t); };
  return o;
}

template <class T>
ModularResiduals modular_residuals(const StandardSubspace<T>& k, const OperatorSet<T>& ops) {
  using std::sqrt;
  const Eigen::Index n = 2 * k.m;
  MatT<T> id = MatT<T>::Identity(n, n);
  auto maxabs = [](const MatT<T>& a) { return to_double(T(a.cwiseAbs().maxCoeff())); };
  ModularResiduals r;
  r.s_squared = maxabs(ops.S * ops.S - id);
  r.j_squared = maxabs(ops.J * ops.J - id);
  r.j_delta_j = maxabs(ops.J * ops.Delta * ops.J - ops.Delta_inv) / maxabs(ops.Delta_inv);
  for (Eigen::Index j = 0; j < k.generators.cols(); ++j) {
    VecT<T> g = k.generators.col(j);
    r.s_fixes_k = std::max(r.s_fixes_k, to_double(T((ops.S * g - g).norm() / g.norm())));
  }
  for (double t : {0.3, 1.0, 2.7})
    r.flow_preserves_k =
        std::max(r.flow_preserves_k, to_double(subspace_angle<T>(MatT<T>(ops.flow(T(t)) * k.basis), k.basis)));
  StandardSubspace<T> kp = symplectic_complement(k);
  r.j_maps_k_to_kprime = to_double(subspace_angle<T>(MatT<T>(ops.J * k.basis), kp.basis));

  MatT<T> basis(n, n);
  basis << k.basis, apply_i<T>(k.basis);
  MatT<T> dh = ops.Delta_half * basis;
  MatT<T> sb = ops.S * basis;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      auto lhs = inner<T>(dh.col(a), dh.col(b));
      auto rhs = inner<T>(sb.col(b), sb.col(a));
      T scale = dh.col(a).norm() * dh.col(b).norm();
      T dr = lhs.first - rhs.first, di = lhs.second - rhs.second;
      r.kms = std::max(r.kms, to_double(T(sqrt(dr * dr + di * di) / scale)));
    }
  return r;
}

extern template class ModularFrame<double>;
extern template struct ModularData<double>;

}  // namespace cmf
