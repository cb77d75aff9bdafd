#include "cmf/modular_mp.hpp"

namespace cmf {
template class ModularFrame<Real>;
template struct ModularData<Real>;
}  // namespace cmf
