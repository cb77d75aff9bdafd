#pragma once
// MPFR scalar usable as an Eigen scalar type.

#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Core>
#include <limits>

namespace cmf {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// Sets the default MPFR precision (decimal digits) for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
    Real::default_precision(digits);
  }
  ~PrecisionGuard() { Real::default_precision(saved_); }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

}  // namespace cmf

namespace Eigen {

// Boost ships its own adapter, but the 1.74 one predates Eigen 3.4's
// requirements (infinity, quiet_NaN), so we provide a complete one here.
template <>
struct NumTraits<cmf::Real> : GenericNumTraits<cmf::Real> {
  using Real = cmf::Real;
  using NonInteger = cmf::Real;
  using Nested = cmf::Real;
  using Literal = cmf::Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 20,
    MulCost = 40
  };
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return static_cast<int>(cmf::Real::default_precision()); }
};

}  // namespace Eigen
