#pragma once
// Multiprecision instantiations of the modular templates.

#include "cmf/multiprecision.hpp"
#include "cmf/modular.hpp"

namespace cmf {
extern template class ModularFrame<Real>;
extern template struct ModularData<Real>;
}  // namespace cmf
