#ifndef BOXPROP_BOX_CONSISTENCY_HPP
#define BOXPROP_BOX_CONSISTENCY_HPP

#include <string>
#include <vector>

#include "boxprop/expr.hpp"
#include "boxprop/propagation.hpp"

namespace boxprop {

enum class BcMode { Functional, Relational };
enum class BcPrecision { Canonical, WidthTau };

struct BcConfig {
    BcMode mode = BcMode::Relational;
    BcPrecision precision = BcPrecision::Canonical;
    double tau = 0.0;        // WidthTau only, >= 0
    int max_rounds = 1000;   // outer sweep cap, >= 1
};

/// Domains of the original system variables, in declaration order.
struct VarBox {
    std::vector<Interval> dom;
    bool same(const VarBox& o) const;
};

struct BcResult {
    VarBox box;
    bool failed = false;   // a domain emptied: no solution in the input box
    long trial_propagations = 0;
};

/// Bound-shrinking trial over the natural interval evaluation of g: returns
/// [lb(X_i), a*] where a* is the least float for which the slice
/// [a*, rb(X_i)] proves infeasible, X_i unchanged when even the top slice is
/// feasible, and empty when the whole domain is infeasible.
Interval shrink_upper_functional(const Expr& g, size_t i, const SystemSpec& s, const VarBox& b,
                                 const BcConfig& cfg = {});
Interval shrink_lower_functional(const Expr& g, size_t i, const SystemSpec& s, const VarBox& b,
                                 const BcConfig& cfg = {});

/// Round-robin over (inequality, variable) pairs applying both shrinks until
/// a full sweep changes nothing or a domain empties.
BcResult functional_bc(const SystemSpec& s, const VarBox& b, const BcConfig& cfg = {});

/// Compiled system shared by relational trials.
class RelationalContext {
public:
    RelationalContext(const SystemSpec& s, bool rewrite = true);

    const SystemSpec& original() const { return original_; }
    const SystemSpec& rewritten() const { return rewritten_; }
    const Csp& csp() const { return csp_; }

    /// Builds the CSP box for given original-variable domains.
    Box inject(const VarBox& b) const;
    /// Reads original-variable domains back (class members intersected).
    VarBox project(const Box& box) const;

    /// Propagation-based infeasibility trial for inequality j with variable
    /// i (original index) restricted to `slice`: the fragment of inequality
    /// j plus the equivalence classes it touches is propagated with all
    /// class members of i set to the slice; true means proven infeasible.
    bool slice_infeasible(size_t j, size_t i, const VarBox& b, const Interval& slice) const;

    /// gpa over the whole compiled CSP; failed() when infeasible.
    GpaResult propagate(const VarBox& b) const;

    size_t n_original_vars() const { return original_.variables.size(); }

private:
    SystemSpec original_;
    SystemSpec rewritten_;
    Csp csp_;
    std::vector<std::vector<int>> members_of_original_;  // csp var ids per original var
    std::vector<std::vector<int>> fragment_of_expr_;     // constraint ids incl. touched AllEq
};

/// Same sweep as functional_bc with the propagation trial instead of the
/// interval-arithmetic one, plus whole-CSP propagation between sweeps.
/// Componentwise at least as tight as functional_bc.
BcResult relational_bc(const SystemSpec& s, const VarBox& b, const BcConfig& cfg = {});

/// Variant reusing an already compiled context (e.g. across paving boxes).
BcResult relational_bc(const RelationalContext& ctx, const VarBox& b, const BcConfig& cfg = {});

BcResult run_bc(const SystemSpec& s, const VarBox& b, const BcConfig& cfg);

}  // namespace boxprop

#endif
