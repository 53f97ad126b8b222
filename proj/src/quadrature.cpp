#include "ddcalc/quadrature.hpp"

namespace ddcalc {

void check_config(const QuadratureConfig& cfg) {
    if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
        throw UsageError("quadrature tolerances must be positive");
    if (cfg.max_subdivisions < 1) throw UsageError("max_subdivisions must be at least 1");
}

}  // namespace ddcalc
