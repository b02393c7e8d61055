#ifndef BOXPROP_PROPAGATION_HPP
#define BOXPROP_PROPAGATION_HPP

#include <map>
#include <string>
#include <vector>

#include "boxprop/csp.hpp"
#include "boxprop/dro.hpp"

namespace boxprop {

enum class Discipline { Fifo, DeepestFirst, ShallowestFirst };

enum class PropagationOutcome { Fixpoint, Failure };

struct PropagationStats {
    std::vector<long> activations;       // per constraint index
    long total_activations = 0;
    long effective_activations = 0;      // activations that changed a domain
    PropagationOutcome outcome = PropagationOutcome::Fixpoint;

    std::string to_text() const;         // flat key-value block
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr long kDefaultActivationBudget = 50'000'000;

struct GpaResult {
    Box box;
    PropagationStats stats;
    bool failed() const { return stats.outcome == PropagationOutcome::Failure; }
};

/// Fair propagation to the greatest common fixpoint of the DROs reachable
/// from `init` (with init = all constraints, of the whole CSP). Pops per the
/// discipline; after each application, constraints on changed variables
/// enter the active set and the applied constraint leaves it, so a DRO never
/// immediately re-runs. Stops as soon as a domain empties.
GpaResult gpa(const Csp& c, Box b, const std::vector<int>& init, Discipline d,
              long activation_budget = kDefaultActivationBudget);

std::vector<int> all_constraints(const Csp& c);

/// Selective initialization: active set starts with only the peripheral
/// constraints, deepest first. On a CSP compiled from single-occurrence
/// expressions with internal domains entire, each DRO runs at most once and
/// every root variable ends bit-equal to the natural interval evaluation.
GpaResult psi_evaluate(const Csp& c, Box b,
                       long activation_budget = kDefaultActivationBudget);

/// From a fixpoint box, shrinks v (which must occur in exactly one
/// constraint) to a proper subset and re-propagates with only that
/// constraint active: same result as a full restart. Throws
/// std::invalid_argument on a precondition violation.
GpaResult psi_reactivate(const Csp& c, const Box& fixpoint, int v, const Interval& shrunk,
                         long activation_budget = kDefaultActivationBudget);

/// psi_reactivate with the shallowest-first discipline, reporting whether
/// every DRO ran at most once.
bool count_single_pass(const Csp& c, const Box& fixpoint, int v, const Interval& shrunk);

}  // namespace boxprop

#endif
