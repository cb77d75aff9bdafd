#pragma once
// Small dense helpers shared by the double and multiprecision paths.

#include <Eigen/Dense>
#include <cmath>

namespace cmf {

template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using VecT = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
double to_double(const T& x) {
  if constexpr (std::is_same_v<T, double>)
    return x;
  else
    return x.template convert_to<double>();
}

template <class T>
MatT<double> to_double(const MatT<T>& a) {
  MatT<double> out(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i) out(i, j) = to_double(a(i, j));
  return out;
}

template <class T>
MatT<T> from_double(const MatT<double>& a) {
  return a.template cast<T>();
}

// Machine epsilon of the active precision.
template <class T>
T machine_eps() {
  return Eigen::NumTraits<T>::epsilon();
}

// Largest singular value via the symmetric eigenproblem of AᵀA (eigenvalues only).
template <class T>
T spectral_norm(const MatT<T>& a) {
  using std::sqrt;
  if (a.size() == 0) return T(0);
  MatT<T> g = a.rows() < a.cols() ? MatT<T>(a * a.transpose()) : MatT<T>(a.transpose() * a);
  Eigen::SelfAdjointEigenSolver<MatT<T>> es(g, Eigen::EigenvaluesOnly);
  T top = es.eigenvalues().maxCoeff();
  return top > 0 ? T(sqrt(top)) : T(0);
}

// Orthonormal basis of the column span, with numerical rank.
template <class T>
MatT<T> orthonormal_basis(const MatT<T>& a, Eigen::Index* rank_out = nullptr) {
  Eigen::ColPivHouseholderQR<MatT<T>> qr(a);
  using std::abs;
  T tol = machine_eps<T>() * T(std::max(a.rows(), a.cols())) * T(64);
  qr.setThreshold(tol);
  Eigen::Index r = qr.rank();
  if (rank_out) *rank_out = r;
  MatT<T> q = qr.householderQ() * MatT<T>::Identity(a.rows(), r);
  return q;
}

}  // namespace cmf
