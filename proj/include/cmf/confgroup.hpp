#pragma once
// Conformal group as O(d,2) acting on isotropic rays of R^{d+2}.
//
// Coordinates ξ = (ξ₀, …, ξ_{d+1}) with Q = diag(+1, −1 × d, +1). A point x of
// Minkowski space sits on the null cone as ξ = (x, (1 + x²)/2, (1 − x²)/2).

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "cmf/point.hpp"

namespace cmf {

struct GroupElement {
  Eigen::MatrixXd m;
  int dim() const { return static_cast<int>(m.rows()) - 2; }
  GroupElement operator*(const GroupElement& o) const { return {m * o.m}; }
  GroupElement inverse() const;
};

struct LieGenerator {
  Eigen::MatrixXd m;
  int dim() const { return static_cast<int>(m.rows()) - 2; }
};

struct Ray {
  Eigen::VectorXd xi;
  int dim() const { return static_cast<int>(xi.size()) - 2; }
};

inline constexpr double kInfinityTol = 1e-10;

Eigen::MatrixXd form_q(int d);
double form_q(const Eigen::VectorXd& xi);

Ray embed(const Point& x);
// std::nullopt means the ray lies at infinity.
std::optional<Point> project(const Ray& r);

// project(g · embed(x)); std::nullopt when x is in the singular set of g.
std::optional<Point> act(const GroupElement& g, const Point& x);

GroupElement identity(int d);
GroupElement translation(const Point& a);
GroupElement boost(int d, int i, double rapidity);
GroupElement rotation(int d, int i, int j, double angle);
GroupElement dilation(int d, double lambda);
GroupElement special_conformal(const Point& a);
GroupElement ray_inversion(int d);
GroupElement inversion_r(int d, int i);
GroupElement parity_p(int d, int i);

// Residuals of the defining relations.
double form_residual(const GroupElement& g);
double form_residual(const LieGenerator& a);

// max|a − b| minimised over the overall sign of b.
double distance_mod_sign(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

bool in_identity_component(const GroupElement& g);

// U(α) = τᵢ(−cot α) D(sin⁻²α) Rᵢ τᵢ(−cot α); identity when sin α vanishes.
GroupElement u_alpha(double alpha, int d, int i);

// τᵢ(a) Rᵢ τᵢ(1/a) Rᵢ τᵢ(a) Rᵢ compared with ±D(a²).
double dilation_identity_defect(double a, int d, int i);

// Generator of time translations and k = h + ρhρ.
LieGenerator time_translation_generator(int d);
LieGenerator conformal_energy(int d);
// Generators of the remaining one-parameter subgroups.
LieGenerator translation_generator(int d, int mu);
LieGenerator boost_generator(int d, int i);
LieGenerator dilation_generator(int d);

GroupElement exp(const LieGenerator& a, double t = 1.0);

// Explicit commutator [a, b] = a b a⁻¹ b⁻¹.
GroupElement commutator(const GroupElement& a, const GroupElement& b);

// An element of the identity component carrying the double cone with tips
// (p, f) onto the one with tips (p2, f2): translation ∘ dilation ∘ boost.
GroupElement double_cone_map(const Point& p, const Point& f, const Point& p2, const Point& f2);

}  // namespace cmf
