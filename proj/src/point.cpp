#include "cmf/point.hpp"

#include <stdexcept>

namespace cmf {

double minkowski_product(const Point& x, const Point& y) {
  if (x.size() != y.size() || x.size() == 0) throw std::invalid_argument("dimension mismatch");
  double s = x[0] * y[0];
  for (Eigen::Index i = 1; i < x.size(); ++i) s -= x[i] * y[i];
  return s;
}

double minkowski_norm(const Point& x) { return minkowski_product(x, x); }

Causal causal_relation(const Point& x, const Point& y) {
  Point v = y - x;
  if ((v.array() == 0.0).all()) return Causal::equal;
  double n = minkowski_norm(v);
  if (n < 0) return Causal::spacelike;
  if (n == 0) return Causal::lightlike;
  return v[0] > 0 ? Causal::timelike_future : Causal::timelike_past;
}

const char* to_string(Causal c) {
  switch (c) {
    case Causal::spacelike: return "spacelike";
    case Causal::lightlike: return "lightlike";
    case Causal::timelike_future: return "timelike_future";
    case Causal::timelike_past: return "timelike_past";
    case Causal::equal: return "equal";
  }
  return "?";
}

bool future_timelike(const Point& v) { return v[0] > 0 && minkowski_norm(v) > 0; }

}  // namespace cmf
