#ifndef BOXPROP_PAVER_HPP
#define BOXPROP_PAVER_HPP

#include <vector>

#include "boxprop/box_consistency.hpp"

namespace boxprop {

enum class BoxClass { Inner, Boundary, Empty };

struct Paving {
    std::vector<VarBox> inner;      // every point satisfies every inequality
    std::vector<VarBox> boundary;   // undecided, width <= epsilon on completed runs
    long failed = 0;                // boxes discarded as infeasible
    double epsilon = 0.0;
    bool budget_exhausted = false;  // worklist remainder was flushed to boundary
};

struct PaveConfig {
    double epsilon = 0.1;     // > 0
    BcConfig bc;              // pruning strength
    long max_boxes = 1'000'000;  // processed-box budget
};

/// Inner when every inequality's natural interval evaluation has rb <= 0;
/// pruning (not this test) decides emptiness, so non-inner boxes are Boundary.
BoxClass classify(const SystemSpec& s, const VarBox& b);

double box_width(const VarBox& b);    // max component width
double box_volume(const VarBox& b);   // product of component widths

/// Depth-first branch-and-prune cover of the solution set inside b.
/// Throws std::invalid_argument on empty or infinite-width initial domains.
Paving pave(const SystemSpec& s, const VarBox& b, const PaveConfig& cfg);

}  // namespace boxprop

#endif
