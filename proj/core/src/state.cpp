#include "poisswell/state.hpp"

#include "poisswell/errors.hpp"

#include <cmath>

namespace poisswell {

void SimParams::validate() const
{
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ValidationError("epsilon", "must be >= 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "must be > 0");
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw ValidationError("t_final", "must be >= 0");
    if (!(s >= 0.0)) throw ValidationError("s", "must be >= 0");
    if (mu < 0.0) throw ValidationError("mu", "must be >= 0");
    if (mu1 < 0.0) throw ValidationError("mu1", "must be >= 0");
    if (mu2 < 0.0) throw ValidationError("mu2", "must be >= 0");
    if (sample_every < 1) throw ValidationError("sample_every", "must be >= 1");
    if (!(screened.tolerance > 0.0)) throw ValidationError("solver_tolerance", "must be > 0");
    if (screened.max_iters < 1) throw ValidationError("solver_max_iters", "must be >= 1");
}

} // namespace poisswell
