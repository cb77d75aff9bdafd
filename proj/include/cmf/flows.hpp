#pragma once
// Canonical one-parameter groups of the wedge W₁, the double cone O₁ and the
// forward cone V₊, plus conjugation and the reflections used for PCT.

#include <functional>
#include <optional>

#include "cmf/confgroup.hpp"
#include "cmf/geometry.hpp"

namespace cmf {

struct CanonicalFlow {
  using Map = std::function<std::optional<Point>(double, const Point&)>;

  Region region;
  LieGenerator generator;
  Map closed_form;

  GroupElement matrix(double t) const { return exp(generator, t); }
  std::optional<Point> operator()(double t, const Point& x) const { return closed_form(t, x); }
};

// Boost of rapidity 2πt in the (x₀, x₁) plane.
CanonicalFlow wedge_flow(int d);

// x± ↦ ((1 + x±) − e^{2πt}(1 − x±)) / ((1 + x±) + e^{2πt}(1 − x±)) with radial
// light-cone coordinates x± = x₀ ± |x⃗|. Equals the wedge flow transported by any
// conformal map of W₁ onto O₁ (same orientation as the boost above).
CanonicalFlow doublecone_flow(int d);

// Dilations x ↦ eᵗx.
CanonicalFlow cone_flow(int d);

// Flow of g·O: generator g A g⁻¹, closed form g ∘ Λ_t ∘ g⁻¹.
CanonicalFlow conjugate_flow(const GroupElement& g, const CanonicalFlow& f);

// The map g = τ(e₁) D(2) R₁ τ(e₁) carrying W₁ onto O₁.
GroupElement wedge_to_double_cone(int d);

struct PctIngredients {
  std::function<Point(const Point&)> beta;  // x ↦ −x
  std::optional<GroupElement> beta_matrix;  // only for even d
  GroupElement r1;                          // flips (x₀, x₁)
  GroupElement s_w1;                        // flips x₂ … x_{d−1}
};

PctIngredients pct_ingredients(int d);

}  // namespace cmf
