#ifndef BOXPROP_DRO_HPP
#define BOXPROP_DRO_HPP

#include <vector>

#include "boxprop/csp.hpp"

namespace boxprop {

struct ReductionOutcome {
    std::vector<std::pair<int, Interval>> updates;  // shrunk variables only
    bool failed = false;                            // some domain became empty
};

/// Applies the domain reduction operator of one primitive constraint to the
/// domains in b: each variable is narrowed to an outward-rounded hull of the
/// exact projection of the constraint relation onto it. Contracting,
/// monotone, idempotent. Failure is a returned state, never an exception.
ReductionOutcome reduce(const Csp& csp, const Constraint& c, const Box& b);

void apply(Box& b, const ReductionOutcome& o);

bool is_fixpoint(const Csp& csp, const Constraint& c, const Box& b);

}  // namespace boxprop

#endif
