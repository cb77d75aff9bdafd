#pragma once
// Tomita operators of standard real subspaces K ⊂ ℂᵐ.
//
// Vectors are handled in the real encoding v ↦ [Re v; Im v] ∈ ℝ²ᵐ, where
// multiplication by i is I = [[0, −1], [1, 0]] and
//   ⟨u, v⟩ = uᵀv + i·uᵀ I v   (linear in the first slot).
// Complex-linear maps commute with I; antilinear ones anticommute with it.
// For double, to_complex() recovers A with X v = A v (linear) or A conj(v)
// (antilinear).

#include <algorithm>
#include <complex>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cmf/linalg.hpp"

namespace cmf {

template <class T>
MatT<T> complex_structure(Eigen::Index m);

// Packs complex column vectors into the real encoding.
MatT<double> realify(const Eigen::MatrixXcd& z);
// Top-left block + i · bottom-left block.
Eigen::MatrixXcd to_complex(const MatT<double>& x);

// Floor on the K-vs-iK angle: 1e−6 in double, shrinking as eps^{1/3} for wider types.
template <class T>
double angle_floor();

struct StandardnessReport {
  bool standard = false;
  Eigen::Index ambient_dim = 0;    // m
  Eigen::Index real_rank = 0;      // dim_ℝ K
  std::vector<double> angles;      // principal angles between K and iK, ascending
  double min_angle = 0;
  double floor = 0;
  std::string reason;
};

class NotStandard : public std::runtime_error {
 public:
  NotStandard(const std::string& what, StandardnessReport r) : std::runtime_error(what), report(std::move(r)) {}
  StandardnessReport report;
};

template <class T>
struct StandardSubspace {
  Eigen::Index m = 0;
  MatT<T> generators;  // 2m × k, real-linear spanning set
  MatT<T> basis;       // 2m × m, orthonormal
  StandardnessReport report;
};

// Checks K ∩ iK = 0 (angle above the floor) and K + iK = ℂᵐ.
template <class T>
StandardnessReport is_standard(const MatT<T>& generators);

// Throws NotStandard when the check fails.
template <class T>
StandardSubspace<T> standard_subspace(const MatT<T>& generators);

// K′ = {v : Im⟨v, k⟩ = 0 for all k ∈ K} = (iK)^⊥.
template <class T>
StandardSubspace<T> symplectic_complement(const StandardSubspace<T>& k);

// Largest principal angle between column spans.
template <class T>
T subspace_angle(const MatT<T>& a, const MatT<T>& b);

// Full operators from the real 2m-dimensional solve:
// S(ξ + iη) = ξ − iη, Δ = S*S, J = SΔ^{−1/2}.
template <class T>
struct ModularData {
  Eigen::Index m = 0;
  MatT<T> S, Delta, J;
  MatT<T> eigvecs;  // orthonormal eigenvectors of Δ (real encoding)
  VecT<T> log_eigs; // log of the eigenvalues of Δ, each twice

  // Δ^{it} = cos(t log Δ) + I sin(t log Δ)
  MatT<T> flow(const T& t) const;
  // Δ^{s} for real s
  MatT<T> power(const T& s) const;
};

template <class T>
ModularData<T> tomita_operators(const StandardSubspace<T>& k);

// The same operators computed in the complex frame spanned by an orthonormal
// real basis Q of K. With M = QᵀIQ the Gram matrix of the basis is I − iM (in
// the convention ⟨x, y⟩ = yᴴ G x), S is conjugation of the coordinates and
// Δ = (I − iM)⁻¹(I + iM). The eigenvectors of iM diagonalise Δ with
// eigenvalue (1 + h)/(1 − h). Costs m × m instead of 2m × 2m work.
template <class T>
class ModularFrame {
 public:
  explicit ModularFrame(const StandardSubspace<T>& k);

  Eigen::Index m() const { return m_; }
  const MatT<T>& basis() const { return q_; }
  // log Δ on the complex eigenvectors, one entry per complex dimension.
  const VecT<T>& log_spectrum() const { return log_delta_; }

  // Real-encoded operators on ℂᵐ.
  MatT<T> flow(const T& t) const;   // Δ^{it}
  MatT<T> power(const T& s) const;  // Δ^{s}
  MatT<T> s_operator() const;
  MatT<T> j_operator() const;

  // Δ^{it} restricted to K, in the coordinates of basis(): an m × m real matrix.
  MatT<T> flow_on_k(const T& t) const;

  // Column-wise application; O(m²) per vector.
  MatT<T> apply_flow(const MatT<T>& v, const T& t) const;
  MatT<T> apply_j(const MatT<T>& v) const;
  // Faster variant for vectors known to lie in K.
  MatT<T> apply_flow_k(const MatT<T>& v, const T& t) const;

 private:
  struct CMat {
    MatT<T> re, im;
  };
  // Coordinate operator W diag(f) Wᴴ as a real 2m × 2m block matrix.
  MatT<T> coord_op(const VecT<T>& fre, const VecT<T>& fim) const;
  // Carries a coordinate operator to the real encoding: B X B⁻¹.
  MatT<T> to_vectors(const MatT<T>& x) const;
  // W diag(f) Wᴴ applied to complex coordinates c = cr + i ci.
  void apply_coord(const VecT<T>& fre, const VecT<T>& fim, MatT<T>& cr, MatT<T>& ci) const;

  Eigen::Index m_;
  MatT<T> q_;
  MatT<T> b_;  // [Q, IQ]
  Eigen::PartialPivLU<MatT<T>> b_lu_;
  CMat w_;
  VecT<T> log_delta_;
};

// Dense operators shared by both routes, for invariant checks.
template <class T>
struct OperatorSet {
  MatT<T> S, J, Delta, Delta_inv, Delta_half;
  std::function<MatT<T>(const T&)> flow;
};

template <class T>
OperatorSet<T> operator_set(const ModularData<T>& md);
template <class T>
OperatorSet<T> operator_set(const ModularFrame<T>& fr);

struct ModularResiduals {
  double s_squared = 0;          // max|S² − I|
  double j_squared = 0;          // max|J² − I|
  double j_delta_j = 0;          // max|JΔJ − Δ⁻¹| / max|Δ⁻¹|
  double s_fixes_k = 0;          // max ‖Sk − k‖/‖k‖ over generators
  double flow_preserves_k = 0;   // max angle(Δ^{it}K, K), t ∈ {0.3, 1, 2.7}
  double j_maps_k_to_kprime = 0; // angle(JK, K′)
  double kms = 0;                // ⟨Δ^{1/2}ξ, Δ^{1/2}η⟩ vs ⟨Sη, Sξ⟩, relative

  double max() const {
    return std::max({s_squared, j_squared, j_delta_j, s_fixes_k, flow_preserves_k, j_maps_k_to_kprime, kms});
  }
};

template <class T>
ModularResiduals modular_residuals(const StandardSubspace<T>& k, const OperatorSet<T>& ops);

// Complex inner product in the real encoding.
template <class T>
std::pair<T, T> inner(const VecT<T>& u, const VecT<T>& v);

// Random generators with independent N(0,1) real and imaginary parts, redrawn
// until standard.
StandardSubspace<double> random_standard_subspace(Eigen::Index m, std::mt19937_64& rng);

}  // namespace cmf

#include "cmf/modular_impl.hpp"
