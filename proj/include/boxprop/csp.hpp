#ifndef BOXPROP_CSP_HPP
#define BOXPROP_CSP_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "boxprop/expr.hpp"
#include "boxprop/interval.hpp"

namespace boxprop {

enum class VarKind { External, Internal };

struct Variable {
    std::string name;
    VarKind kind;
};

/// One interval per CSP variable, indexed by variable id.
struct Box {
    std::vector<Interval> dom;

    Interval& operator[](int v) { return dom[v]; }
    const Interval& operator[](int v) const { return dom[v]; }
    size_t size() const { return dom.size(); }
    bool same(const Box& o) const;
};

/// Variable id or pre-evaluated interval constant.
struct Operand {
    int var = -1;          // -1 for constants
    Interval value;        // constants only

    bool is_const() const { return var < 0; }
    static Operand of_var(int v) { return Operand{v, Interval()}; }
    static Operand of_const(Interval c) { return Operand{-1, c}; }
};

enum class CKind { Sum, Prod, UnaryLink, Bound, AllEq };
enum class BoundRel { LeqZero, GeqSucc };

/// Sum:       a + b = z
/// Prod:      a * b = z   (subtraction and division compile to these,
///                         so any slot may hold a constant)
/// UnaryLink: f(a) = z
/// Bound:     var z <= 0, or var z >= succ(bound_val)
/// AllEq:     all members equal
struct Constraint {
    CKind kind;
    Operand a, b, z;           // Sum/Prod use all three, UnaryLink a and z,
                               // Bound z (always a variable)
    UnaryFn fn;                // UnaryLink
    BoundRel brel = BoundRel::LeqZero;
    double bound_val = 0.0;    // GeqSucc
    std::vector<int> members;  // AllEq (>= 2)
};

inline constexpr int kDepthAllEq = std::numeric_limits<int>::max();

struct Csp {
    std::vector<Variable> vars;
    Box initial;                       // externals from the system, internals entire
    std::vector<Constraint> constraints;
    std::vector<int> depth;            // root bound = 0, deeper larger; AllEq = kDepthAllEq
    std::vector<int> expr_of;          // source inequality index, -1 for AllEq
    std::vector<std::vector<int>> constraints_of_var;
    std::vector<int> root_var_of_expr;

    int var_id(const std::string& name) const;  // -1 if absent
    int internal_count(const Constraint& c) const;
    std::vector<int> vars_of(const Constraint& c) const;
    void rebuild_var_index();
};

enum class RootRel { None, LeqZero };

/// Appends the primitive-constraint fragment of one expression. The
/// expression must not repeat a variable (rewrite first); a repeat throws
/// std::invalid_argument. External variables are resolved against (or added
/// to) the CSP variable table with domain `entire` unless already present.
/// Returns the root variable id.
int compile_expression(Csp& csp, const Expr& e, RootRel rel, int expr_index);

/// Full system: all fragments plus one AllEq per equivalence class;
/// external domains from the spec. The system must be in single-occurrence
/// form already.
Csp compile_system(const SystemSpec& s, RootRel rel = RootRel::LeqZero);

/// Constraints with at most one internal variable (the PSI initialization
/// set); returned as constraint indices in csp order.
std::vector<int> peripheral_set(const Csp& c);

/// One constraint per line, for golden tests.
std::string dump(const Csp& c);

}  // namespace boxprop

#endif
