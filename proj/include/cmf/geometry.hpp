#pragma once
// Region calculus on Minkowski space: double cones, wedges, future cones,
// conformal images and causal complements. All regions are open.

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "cmf/confgroup.hpp"
#include "cmf/point.hpp"

namespace cmf {

class Region;

struct DoubleCone {
  Point past, future;
};
// poincare · W₁ with W₁ = {x₁ > |x₀|}.
struct Wedge {
  GroupElement poincare;
};
struct FutureCone {
  Point apex;
};
struct Transformed {
  GroupElement g;
  std::shared_ptr<const Region> base;
};
// Points spacelike to every point of a double cone.
struct CausalComplement {
  DoubleCone base;
};
// Points timelike to every point of a double cone.
struct TimelikeComplement {
  DoubleCone base;
};

class Region {
 public:
  using Variant = std::variant<DoubleCone, Wedge, FutureCone, Transformed, CausalComplement, TimelikeComplement>;

  Region(DoubleCone c);
  Region(Wedge w);
  Region(FutureCone c);
  Region(Transformed t);
  Region(CausalComplement c);
  Region(TimelikeComplement c);

  int dim() const { return dim_; }
  const Variant& data() const { return v_; }
  bool bounded() const { return std::holds_alternative<DoubleCone>(v_); }

 private:
  Variant v_;
  int dim_;
};

Region standard_wedge(int d);        // W₁
Region unit_double_cone(int d);      // O₁ = {|x₀| + |x⃗| < 1}
Region forward_cone(int d);          // V₊
Region transformed(const GroupElement& g, const Region& base);

bool region_contains(const Region& r, const Point& x);

Region spacelike_complement(const Region& r);
Region timelike_complement(const Region& r);

// Axis-aligned box used to sample unbounded regions.
struct Box {
  Point lo, hi;
  static Box standard(int d, double half_width = 10.0);
};

// Uniform samples by rejection; deterministic in the seed (std::mt19937_64).
std::vector<Point> sample_region(const Region& r, int n, std::uint64_t seed,
                                 const std::optional<Box>& box = std::nullopt);

std::vector<Point> sample_box(const Box& box, int n, std::uint64_t seed);

}  // namespace cmf
