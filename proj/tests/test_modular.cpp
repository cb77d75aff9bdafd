#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "cmf/modular_mp.hpp"

using namespace cmf;
using cd = std::complex<double>;

namespace {

template <class Derived>
double maxabs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

// Oracle for S: solve S g_k = g_k and S(i g_k) = −i g_k as a dense real linear
// system, written independently of the library's block formulation.
Eigen::MatrixXd s_oracle(const StandardSubspace<double>& k) {
  Eigen::Index n = 2 * k.m;
  Eigen::MatrixXd i = complex_structure<double>(k.m);
  Eigen::MatrixXd from(n, n), to(n, n);
  from << k.basis, i * k.basis;
  to << k.basis, -i * k.basis;
  return to * from.inverse();
}

}  // namespace

TEST_CASE("complex structure and the inner product") {
  Eigen::MatrixXd i = complex_structure<double>(3);
  CHECK(maxabs(i * i + Eigen::MatrixXd::Identity(6, 6)) == 0);
  Eigen::VectorXcd u(3), v(3);
  u << cd(1, 2), cd(0, -1), cd(3, 0.5);
  v << cd(-1, 1), cd(2, 2), cd(0, 1);
  auto [re, im] = inner<double>(realify(u), realify(v));
  cd expect = v.dot(u);  // Σ conj(v) u, linear in u
  CHECK(re == doctest::Approx(expect.real()));
  CHECK(im == doctest::Approx(expect.imag()));
  // a complex-linear operator in the real encoding
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Random(3, 3);
  Eigen::MatrixXd x(6, 6);
  x << a.real(), -a.imag(), a.imag(), a.real();
  CHECK(maxabs(to_complex(x) - a) == 0);
  CHECK(maxabs(x * realify(u) - realify(a * u)) < 1e-14);
  CHECK(maxabs(x * i - i * x) < 1e-14);
}

TEST_CASE("standardness examples") {
  Eigen::MatrixXd real_axis = realify(Eigen::MatrixXcd::Identity(3, 3));
  CHECK(is_standard<double>(real_axis).standard);

  Eigen::MatrixXcd c1(1, 2);
  c1 << cd(1, 0), cd(0, 1);
  StandardnessReport r = is_standard<double>(realify(c1));
  CHECK_FALSE(r.standard);
  CHECK(r.min_angle < 1e-12);

  // A single real direction in ℂ² cannot fill K + iK.
  Eigen::MatrixXcd short1(2, 1);
  short1 << cd(1, 0), cd(0, 0);
  CHECK_FALSE(is_standard<double>(realify(short1)).standard);

  CHECK_THROWS_AS(standard_subspace<double>(realify(c1)), NotStandard);
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(2, 1);
  CHECK_THROWS(is_standard<double>(zero));
}

TEST_CASE("real axis: trivial modular operator, J is conjugation") {
  auto k = standard_subspace<double>(realify(Eigen::MatrixXcd::Identity(3, 3)));
  ModularData<double> md = tomita_operators(k);
  CHECK(maxabs(md.Delta - Eigen::MatrixXd::Identity(6, 6)) < 1e-12);
  Eigen::MatrixXd conj = Eigen::MatrixXd::Identity(6, 6);
  conj.bottomRightCorner(3, 3) *= -1;
  CHECK(maxabs(md.J - conj) < 1e-12);
  CHECK(subspace_angle<double>(symplectic_complement(k).basis, k.basis) < 1e-12);
}

TEST_CASE("rotated real line e^{i phi} R") {
  for (double phi : {0.3, 1.1, -0.7}) {
    Eigen::MatrixXcd g(1, 1);
    g << std::polar(1.0, phi);
    ModularData<double> md = tomita_operators(standard_subspace<double>(realify(g)));
    CHECK(maxabs(md.Delta - Eigen::MatrixXd::Identity(2, 2)) < 1e-12);
    // J = e^{2iφ} · conj, so its antilinear matrix is the 1×1 entry e^{2iφ}
    Eigen::MatrixXcd a = to_complex(md.J);
    CHECK(std::abs(a(0, 0) - std::polar(1.0, 2 * phi)) < 1e-12);
  }
}

TEST_CASE("two-dimensional example with nontrivial spectrum") {
  Eigen::MatrixXcd g(2, 2);
  g << cd(1, 0), cd(0, 0.5), cd(0, 0), cd(1.0, 0);
  auto k = standard_subspace<double>(realify(g));
  ModularData<double> md = tomita_operators(k);
  // S against the dense oracle, S fixes both generators, S² = I
  CHECK(maxabs(md.S - s_oracle(k)) < 1e-12);
  Eigen::MatrixXd gen = realify(g);
  CHECK(maxabs(md.S * gen - gen) < 1e-12);
  CHECK(maxabs(md.S * md.S - Eigen::MatrixXd::Identity(4, 4)) < 1e-12);
  // Δ = SᵀS has a nontrivial spectrum in reciprocal pairs
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(md.S.transpose() * md.S);
  Eigen::VectorXd ev = es.eigenvalues();
  CHECK(ev.maxCoeff() > 1.5);
  CHECK(ev.minCoeff() * ev.maxCoeff() == doctest::Approx(1.0));
  CHECK(maxabs(md.Delta - md.S.transpose() * md.S) < 1e-12);
}

TEST_CASE("random standard subspaces: Tomita relations") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    Eigen::Index m = 1 + k % 8;
    auto K = random_standard_subspace(m, rng);
    ModularData<double> md = tomita_operators(K);
    ModularResiduals r = modular_residuals(K, operator_set(md));
    CHECK(r.max() < 1e-6);
    CHECK(r.s_fixes_k < 1e-7);
    CHECK(maxabs(md.S - s_oracle(K)) < 1e-8 * std::max(1.0, maxabs(md.S)));
    // flow: t = 0, group law
    CHECK(maxabs(md.flow(0) - Eigen::MatrixXd::Identity(2 * m, 2 * m)) < 1e-12);
    CHECK(maxabs(md.flow(0.4) * md.flow(0.9) - md.flow(1.3)) < 1e-8);
    if (m <= 6)
      CHECK(subspace_angle<double>(symplectic_complement(symplectic_complement(K)).basis, K.basis) < 1e-8);
  }
}

TEST_CASE("K' is the kernel of the imaginary part of the pairing") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 20; ++k) {
    auto K = random_standard_subspace(1 + k % 6, rng);
    auto kp = symplectic_complement(K);
    Eigen::MatrixXd i = complex_structure<double>(K.m);
    CHECK(maxabs(kp.basis.transpose() * i * K.basis) < 1e-12);
    CHECK(kp.basis.cols() == K.m);
  }
}

TEST_CASE("frame route agrees with the full solve") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    Eigen::Index m = 1 + k % 8;
    auto K = random_standard_subspace(m, rng);
    ModularData<double> md = tomita_operators(K);
    ModularFrame<double> fr(K);
    auto rel = [](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return maxabs(a - b) / std::max(1.0, maxabs(b)); };
    CHECK(rel(fr.s_operator(), md.S) < 1e-6);
    CHECK(rel(fr.j_operator(), md.J) < 1e-6);
    CHECK(rel(fr.power(1.0), md.Delta) < 1e-6);
    for (double t : {-0.6, 0.25, 1.7}) {
      CHECK(rel(fr.flow(t), md.flow(t)) < 1e-6);
      Eigen::MatrixXd v = Eigen::MatrixXd::Random(2 * m, 3);
      CHECK(rel(fr.apply_flow(v, t), md.flow(t) * v) < 1e-6);
      CHECK(rel(fr.apply_flow_k(K.basis, t), md.flow(t) * K.basis) < 1e-6);
      // flow_on_k: coordinates in the basis of K
      CHECK(rel(K.basis * fr.flow_on_k(t), md.flow(t) * K.basis) < 1e-6);
    }
    Eigen::MatrixXd v = Eigen::MatrixXd::Random(2 * m, 2);
    CHECK(rel(fr.apply_j(v), md.J * v) < 1e-6);
    ModularResiduals r = modular_residuals(K, operator_set(fr));
    CHECK(r.max() < 1e-6);
  }
}

TEST_CASE("subspace angles") {
  Eigen::MatrixXd e1(2, 1), ie1(2, 1);
  e1 << 1, 0;
  ie1 << 0, 1;
  CHECK(subspace_angle<double>(e1, e1) == 0);
  CHECK(subspace_angle<double>(e1, ie1) == doctest::Approx(std::numbers::pi / 2));

  // First-order perturbation: angle(K, K + εX) ≈ ε‖(I − P)X‖ for orthonormal K.
  std::mt19937_64 rng(24);
  auto K = random_standard_subspace(4, rng);
  Eigen::MatrixXd x = Eigen::MatrixXd::Random(8, 4);
  Eigen::MatrixXd px = x - K.basis * (K.basis.transpose() * x);
  for (double eps : {1e-3, 1e-5}) {
    double a = subspace_angle<double>(K.basis, Eigen::MatrixXd(K.basis + eps * x));
    double first = eps * px.jacobiSvd().singularValues()[0];
    CHECK(a <= 1.01 * first);
    CHECK(a > 0);
  }
}

TEST_CASE("multiprecision route reproduces double results") {
  std::mt19937_64 rng(25);
  auto K = random_standard_subspace(4, rng);
  ModularData<double> md = tomita_operators(K);
  PrecisionGuard guard(60);
  auto Kmp = standard_subspace<Real>(from_double<Real>(K.generators));
  ModularFrame<Real> fr(Kmp);
  ModularResiduals r = modular_residuals(Kmp, operator_set(fr));
  CHECK(r.max() < 1e-40);
  CHECK(maxabs(to_double(fr.flow(Real(0.5))) - md.flow(0.5)) < 1e-8);
  CHECK(angle_floor<Real>() < 1e-6);
}
