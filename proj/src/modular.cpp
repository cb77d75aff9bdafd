#include "cmf/modular.hpp"

namespace cmf {

MatT<double> realify(const Eigen::MatrixXcd& z) {
  MatT<double> out(2 * z.rows(), z.cols());
  out << z.real(), z.imag();
  return out;
}

Eigen::MatrixXcd to_complex(const MatT<double>& x) {
  Eigen::Index m = x.rows() / 2;
  Eigen::MatrixXcd out(m, x.cols() / 2);
  out.real() = x.topLeftCorner(m, x.cols() / 2);
  out.imag() = x.bottomLeftCorner(m, x.cols() / 2);
  return out;
}

StandardSubspace<double> random_standard_subspace(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    MatT<double> g(2 * m, m);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < 2 * m; ++i) g(i, j) = n(rng);
    if (is_standard<double>(g).standard) return standard_subspace<double>(g);
  }
}

template class ModularFrame<double>;
template struct ModularData<double>;

}  // namespace cmf
