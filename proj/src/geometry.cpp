#include "cmf/geometry.hpp"

#include <random>
#include <stdexcept>

namespace cmf {

namespace {

int point_dim(const Point& p) { return static_cast<int>(p.size()); }

void check_cone(const DoubleCone& c) {
  if (c.past.size() != c.future.size()) throw std::invalid_argument("tip dimension mismatch");
  if (!future_timelike(c.future - c.past)) throw std::invalid_argument("double cone tips must be future-timelike separated");
}

bool in_double_cone(const DoubleCone& c, const Point& x) {
  return future_timelike(x - c.past) && future_timelike(c.future - x);
}

// Flip of (x₀, x₁): carries W₁ onto its spacelike complement.
GroupElement r1_matrix(int d) {
  GroupElement g = identity(d);
  g.m(0, 0) = g.m(1, 1) = -1;
  return g;
}

}  // namespace

Region::Region(DoubleCone c) : v_(c), dim_(point_dim(c.past)) { check_cone(c); }
Region::Region(Wedge w) : v_(w), dim_(w.poincare.dim()) {
  if (dim_ < 2) throw std::invalid_argument("wedges need d >= 2");
  // Poincaré elements leave u = ξ_d + ξ_{d+1} untouched (up to overall sign).
  const auto& m = w.poincare.m;
  int d = dim_;
  Eigen::RowVectorXd urow = m.row(d) + m.row(d + 1);
  Eigen::RowVectorXd lc(d + 2);
  lc.head(d) = urow.head(d);
  lc[d] = 0.5 * (urow[d] + urow[d + 1]);
  lc[d + 1] = 0.5 * (urow[d] - urow[d + 1]);
  Eigen::RowVectorXd e = Eigen::RowVectorXd::Zero(d + 2);
  e[d] = 1;
  if (std::min((lc - e).cwiseAbs().maxCoeff(), (lc + e).cwiseAbs().maxCoeff()) > 1e-9)
    throw std::invalid_argument("wedge transform must be a Poincare element");
}
Region::Region(FutureCone c) : v_(c), dim_(point_dim(c.apex)) {}
Region::Region(Transformed t) : v_(t), dim_(t.g.dim()) {
  if (!t.base || t.base->dim() != dim_) throw std::invalid_argument("transformed region dimension mismatch");
}
Region::Region(CausalComplement c) : v_(c), dim_(point_dim(c.base.past)) { check_cone(c.base); }
Region::Region(TimelikeComplement c) : v_(c), dim_(point_dim(c.base.past)) { check_cone(c.base); }

Region standard_wedge(int d) { return Region(Wedge{identity(d)}); }

Region unit_double_cone(int d) {
  Point p = Point::Zero(d), f = Point::Zero(d);
  p[0] = -1;
  f[0] = 1;
  return Region(DoubleCone{p, f});
}

Region forward_cone(int d) { return Region(FutureCone{Point::Zero(d)}); }

Region transformed(const GroupElement& g, const Region& base) {
  return Region(Transformed{g, std::make_shared<const Region>(base)});
}

bool region_contains(const Region& r, const Point& x) {
  if (x.size() != r.dim()) throw std::invalid_argument("dimension mismatch");
  return std::visit(
      [&](const auto& v) -> bool {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, DoubleCone>) {
          return in_double_cone(v, x);
        } else if constexpr (std::is_same_v<V, Wedge>) {
          auto y = act(v.poincare.inverse(), x);
          return y && (*y)[1] > std::abs((*y)[0]);
        } else if constexpr (std::is_same_v<V, FutureCone>) {
          return future_timelike(x - v.apex);
        } else if constexpr (std::is_same_v<V, Transformed>) {
          auto y = act(v.g.inverse(), x);
          return y && region_contains(*v.base, *y);
        } else if constexpr (std::is_same_v<V, CausalComplement>) {
          return minkowski_norm(x - v.base.past) < 0 && minkowski_norm(v.base.future - x) < 0;
        } else {
          return future_timelike(x - v.base.future) || future_timelike(v.base.past - x);
        }
      },
      r.data());
}

Region spacelike_complement(const Region& r) {
  if (auto* w = std::get_if<Wedge>(&r.data())) return Region(Wedge{w->poincare * r1_matrix(r.dim())});
  if (auto* c = std::get_if<DoubleCone>(&r.data())) return Region(CausalComplement{*c});
  // O'' = O for double cones.
  if (auto* c = std::get_if<CausalComplement>(&r.data())) return Region(c->base);
  throw std::invalid_argument("spacelike complement supports double cones and wedges only");
}

Region timelike_complement(const Region& r) {
  if (auto* c = std::get_if<DoubleCone>(&r.data())) return Region(TimelikeComplement{*c});
  throw std::invalid_argument("timelike complement supports double cones only");
}

Box Box::standard(int d, double half_width) {
  return {Point::Constant(d, -half_width), Point::Constant(d, half_width)};
}

std::vector<Point> sample_box(const Box& box, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(n);
  Point span = box.hi - box.lo;
  for (int k = 0; k < n; ++k) {
    Point x(box.lo.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = box.lo[i] + span[i] * u(rng);
    out.push_back(x);
  }
  return out;
}

std::vector<Point> sample_region(const Region& r, int n, std::uint64_t seed, const std::optional<Box>& box) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  Box b;
  if (auto* c = std::get_if<DoubleCone>(&r.data())) {
    double h = c->future[0] - c->past[0];
    b.lo = c->past.array() - h;
    b.hi = c->past.array() + h;
    b.lo[0] = c->past[0];
    b.hi[0] = c->future[0];
    if (box) {
      b.lo = b.lo.cwiseMax(box->lo);
      b.hi = b.hi.cwiseMin(box->hi);
    }
  } else if (box) {
    b = *box;
  } else {
    throw std::invalid_argument("unbounded region needs a sampling box");
  }
  if (b.lo.size() != r.dim()) throw std::invalid_argument("box dimension mismatch");

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(n);
  const long max_draws = 1000L * n + 100000L;
  long draws = 0;
  Point span = b.hi - b.lo;
  while (static_cast<int>(out.size()) < n) {
    if (++draws > max_draws) throw std::runtime_error("region has negligible volume inside the sampling box");
    Point x(r.dim());
    for (int i = 0; i < r.dim(); ++i) x[i] = b.lo[i] + span[i] * u(rng);
    if (region_contains(r, x)) out.push_back(x);
  }
  return out;
}

}  // namespace cmf
