#pragma once
// Points of Minkowski space with signature (+, -, ..., -).

#include <Eigen/Core>

namespace cmf {

using Point = Eigen::VectorXd;

// η(x, y) = x₀y₀ − Σ xᵢyᵢ
double minkowski_product(const Point& x, const Point& y);

// x² = η(x, x)
double minkowski_norm(const Point& x);

enum class Causal { spacelike, lightlike, timelike_future, timelike_past, equal };

// Classifies y − x. Exact: no tolerance band around the light cone.
Causal causal_relation(const Point& x, const Point& y);

const char* to_string(Causal c);

// Future-directed and strictly timelike.
bool future_timelike(const Point& v);

}  // namespace cmf
