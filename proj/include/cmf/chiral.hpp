#pragma once
// Lattice chiral field on the circle.
//
// Real site functions u ∈ ℝᴸ at θⱼ = 2πj/L. The zero and Nyquist modes are
// removed, leaving modes n = 1…m with m = L/2 − 1. The complex structure 𝒥
// multiplies the Fourier coefficient û_n by −i·sign(n). The energy form is
//   g(u, v) = Σ_{n≠0} w_n û_n conj(v̂_n) / L².
// In the coordinates z_n = √(2w_n)/L · Σⱼ uⱼ e^{inθⱼ}, 𝒥 becomes multiplication
// by i and ⟨u, v⟩ = g(u, v) + i g(u, 𝒥v) becomes the standard inner product.
// The embedding E (2m × L) maps site functions to the real encoding of z.

#include <cstdint>
#include <vector>

#include "cmf/modular_mp.hpp"

namespace cmf {

enum class EnergyWeights {
  lattice,   // w_n = (L/2π) sin(2πn/L): nearest-neighbour symplectic form
  spectral,  // w_n = |n|
};

const char* to_string(EnergyWeights w);

struct LatticeModel {
  int L = 0;
  int m = 0;
  EnergyWeights kind = EnergyWeights::lattice;
  unsigned digits = 0;              // working precision for modular data
  std::vector<double> theta;
  Eigen::VectorXd weights;          // w_1 … w_m
  Eigen::MatrixXd embedding;        // E, 2m × L
  Eigen::MatrixXd complex_structure;// 𝒥 on site functions, L × L
};

// Decimal digits used for a lattice of L sites: max|log Δ| grows like L.
unsigned default_digits(int L);

LatticeModel build_model(int L, EnergyWeights w = EnergyWeights::lattice, unsigned digits = 0);

// E at the active multiprecision precision.
MatT<Real> embedding_mp(const LatticeModel& model);

struct IntervalOnCircle {
  double a = 0, b = 0;  // counterclockwise from a to b
  double length() const;
  IntervalOnCircle complement() const;
  IntervalOnCircle rotated(double angle) const;
  // Image under the orientation-reversing Möbius reflection that fixes the
  // endpoints of `about` and exchanges it with its complement.
  IntervalOnCircle reflected(const IntervalOnCircle& about) const;
  double center() const;
};

IntervalOnCircle half_circle();
std::vector<int> interval_sites(const LatticeModel& model, const IntervalOnCircle& i);
bool contains(const IntervalOnCircle& outer, const IntervalOnCircle& inner);

// Real span of the site indicators inside I. Throws NotStandard with the
// angle report when the span is not standard. Call under a PrecisionGuard
// of model.digits.
StandardSubspace<Real> interval_subspace(const LatticeModel& model, const IntervalOnCircle& i);

// Möbius flow of the circle fixing the endpoints of I: contracts
// w = (z − A)/(z − B) by e^{s}. δ^I_t corresponds to s = −2πt.
double mobius_angle(double theta, const IntervalOnCircle& i, double s, double* derivative = nullptr);

// U(t) f = (f ∘ δ^I_{−t}) · ((δ^I_{−t})′)^exponent on site functions, through
// the trigonometric interpolant of the retained modes.
Eigen::MatrixXd mobius_flow_unitary(const LatticeModel& model, const IntervalOnCircle& i, double t,
                                    double exponent = 0.0);

// Smooth bumps centred in I with half-widths `widths`·|I|/π.
Eigen::MatrixXd bump_family(const LatticeModel& model, const IntervalOnCircle& i,
                            const std::vector<double>& widths = {0.3, 0.45, 0.6});

struct BWOptions {
  std::vector<double> t_grid{-0.25, -0.1, 0.0, 0.01, 0.05, 0.1, 0.25};
  std::vector<double> widths{0.3, 0.45, 0.6};
  std::vector<std::pair<double, double>> z_pairs{{0.05, 0.05}, {0.1, 0.15}, {0.125, 0.125}, {-0.1, 0.2}};
  double exponent = 0.0;
  std::vector<double> diagnostic_exponents{0.5, 1.0};
};

struct ZResidual {
  double s, t, value;
};

struct BWReport {
  int L = 0;
  IntervalOnCircle interval;
  std::vector<double> t_grid;
  std::vector<double> defect;                      // max over the test family, per t
  std::vector<std::vector<double>> defect_by_vector;
  std::vector<ZResidual> z_residuals;              // ‖z(s+t)v − z(s)z(t)v‖/‖v‖
  std::vector<std::pair<double, std::vector<double>>> diagnostics;  // exponent → defect per t
  double duality_defect = -1;
  double pct_defect = -1;
  double max_log_delta = 0;
  double min_angle = 0;
  unsigned digits = 0;

  double defect_at(double t) const;
  double z_max() const;
};

// Modular data of one interval subspace, reused across the checks.
class IntervalAnalysis {
 public:
  IntervalAnalysis(const LatticeModel& model, const IntervalOnCircle& i);

  const LatticeModel& model() const { return model_; }
  const IntervalOnCircle& interval() const { return interval_; }
  const StandardSubspace<Real>& subspace() const { return k_; }
  const ModularFrame<Real>& frame() const { return frame_; }

  BWReport bw(const BWOptions& opt = {}) const;
  double duality_defect() const;
  double pct_defect(const IntervalOnCircle& probe) const;
  // ‖J²v − v‖/‖v‖ maximised over seeded random vectors.
  double j_squared_residual(std::uint64_t seed, int count = 4) const;
  double max_log_delta() const;

 private:
  LatticeModel model_;
  IntervalOnCircle interval_;
  StandardSubspace<Real> k_;
  ModularFrame<Real> frame_;
};

BWReport bw_defect(const LatticeModel& model, const IntervalOnCircle& i, const BWOptions& opt = {});
double duality_defect(const LatticeModel& model, const IntervalOnCircle& i);
// (defect for I, defect for I′) from one pair of subspaces.
std::pair<double, double> duality_defects(const LatticeModel& model, const IntervalOnCircle& i);
double pct_geometry_defect(const LatticeModel& model, const IntervalOnCircle& i, const IntervalOnCircle& probe);

// Spectral norm of the symplectic pairing Im⟨p, k⟩ between orthonormal bases of K(P) and K(I).
double symplectic_pairing_norm(const LatticeModel& model, const IntervalOnCircle& p, const IntervalOnCircle& i);

// Σ_{n=1}^{N} e^{−βn}; the model form uses its m conformal-energy modes.
double energy_trace(int n_modes, double beta);
double energy_trace(const LatticeModel& model, double beta);
double energy_trace_limit(double beta);
double energy_trace_tail_bound(int n_modes, double beta);

}  // namespace cmf
