#include "boxprop/box_consistency.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace boxprop {

bool VarBox::same(const VarBox& o) const {
    if (dom.size() != o.dom.size()) return false;
    for (size_t i = 0; i < dom.size(); ++i)
        if (!dom[i].same(o.dom[i])) return false;
    return true;
}

namespace {

double dbl_max() { return std::numeric_limits<double>::max(); }

// Strictly interior probe point for bisection over possibly unbounded ranges.
double bisect_mid(double lo, double hi) {
    if (lo == -kInf && hi == kInf) return 0.0;
    if (lo == -kInf) {
        if (hi > 0.0) return 0.0;
        if (hi == 0.0) return -1.0;
        return std::max(2.0 * hi, -dbl_max());
    }
    if (hi == kInf) {
        if (lo < 0.0) return 0.0;
        if (lo == 0.0) return 1.0;
        return std::min(2.0 * lo, dbl_max());
    }
    double m = lo / 2 + hi / 2;
    if (m <= lo) m = next_up(lo);
    if (m >= hi) m = next_down(hi);
    return m;
}

bool at_resolution(double lo, double hi, const BcConfig& cfg) {
    if (next_up(lo) >= hi) return true;   // canonical gap
    if (cfg.precision == BcPrecision::WidthTau) {
        double w = hi - lo;
        return !(w > cfg.tau);
    }
    return false;
}

Env env_of(const SystemSpec& s, const VarBox& b) {
    Env env;
    for (size_t i = 0; i < s.variables.size(); ++i) env[s.variables[i].first] = b.dom[i];
    return env;
}

// Eq-2 style trial: the slice of X_i is infeasible when the natural interval
// evaluation of g has a positive lower bound (or is empty outright).
bool functional_slice_infeasible(const Expr& g, const std::string& var, Env env,
                                 const Interval& slice) {
    env[var] = slice;
    Interval ev = eval_natural(g, env);
    return ev.is_empty() || ev.lb() > 0.0;
}

// Shared bisection skeleton. `infeasible(islice)` must be monotone: slices
// nested inside an infeasible slice are infeasible.
template <typename TestFn>
Interval shrink_upper_impl(const Interval& X, const BcConfig& cfg, TestFn infeasible) {
    if (X.is_empty()) return X;
    if (infeasible(X)) return Interval::empty();
    if (X.lb() == X.rb()) return X;
    double top = next_down(X.rb());
    if (!infeasible(Interval(top, X.rb()))) return X;
    double lo = X.lb(), hi = top;   // lo feasible-side, hi infeasible
    while (!at_resolution(lo, hi, cfg)) {
        double m = bisect_mid(lo, hi);
        if (infeasible(Interval(m, X.rb()))) hi = m;
        else lo = m;
    }
    return Interval(X.lb(), hi);
}

template <typename TestFn>
Interval shrink_lower_impl(const Interval& X, const BcConfig& cfg, TestFn infeasible) {
    if (X.is_empty()) return X;
    if (infeasible(X)) return Interval::empty();
    if (X.lb() == X.rb()) return X;
    double bottom = next_up(X.lb());
    if (!infeasible(Interval(X.lb(), bottom))) return X;
    double lo = bottom, hi = X.rb();   // lo infeasible-side, hi feasible
    while (!at_resolution(lo, hi, cfg)) {
        double m = bisect_mid(lo, hi);
        if (infeasible(Interval(X.lb(), m))) lo = m;
        else hi = m;
    }
    return Interval(lo, X.rb());
}

}  // namespace

Interval shrink_upper_functional(const Expr& g, size_t i, const SystemSpec& s, const VarBox& b,
                                 const BcConfig& cfg) {
    Env env = env_of(s, b);
    const std::string& var = s.variables.at(i).first;
    return shrink_upper_impl(b.dom[i], cfg, [&](const Interval& slice) {
        return functional_slice_infeasible(g, var, env, slice);
    });
}

Interval shrink_lower_functional(const Expr& g, size_t i, const SystemSpec& s, const VarBox& b,
                                 const BcConfig& cfg) {
    Env env = env_of(s, b);
    const std::string& var = s.variables.at(i).first;
    return shrink_lower_impl(b.dom[i], cfg, [&](const Interval& slice) {
        return functional_slice_infeasible(g, var, env, slice);
    });
}

namespace {

std::vector<size_t> var_indices_of_expr(const SystemSpec& s, const Expr& g) {
    std::vector<size_t> out;
    for (const std::string& name : variables_of(g))
        for (size_t i = 0; i < s.variables.size(); ++i)
            if (s.variables[i].first == name) out.push_back(i);
    return out;
}

}  // namespace

BcResult functional_bc(const SystemSpec& s, const VarBox& b, const BcConfig& cfg) {
    BcResult res;
    res.box = b;
    std::vector<std::vector<size_t>> sweep_vars;
    for (const auto& g : s.inequalities) sweep_vars.push_back(var_indices_of_expr(s, *g));

    for (int round = 0; round < cfg.max_rounds; ++round) {
        bool changed = false;
        for (size_t j = 0; j < s.inequalities.size(); ++j) {
            for (size_t i : sweep_vars[j]) {
                Interval up = shrink_upper_functional(*s.inequalities[j], i, s, res.box, cfg);
                if (up.is_empty()) {
                    res.failed = true;
                    res.box.dom[i] = up;
                    return res;
                }
                if (!up.same(res.box.dom[i])) { res.box.dom[i] = up; changed = true; }
                Interval lo = shrink_lower_functional(*s.inequalities[j], i, s, res.box, cfg);
                if (lo.is_empty()) {
                    res.failed = true;
                    res.box.dom[i] = lo;
                    return res;
                }
                if (!lo.same(res.box.dom[i])) { res.box.dom[i] = lo; changed = true; }
            }
        }
        if (!changed) break;
    }
    return res;
}

// ---- relational ---------------------------------------------------------------

RelationalContext::RelationalContext(const SystemSpec& s, bool rewrite)
    : original_(s), rewritten_(rewrite ? rewrite_single_occurrence(s) : s) {
    csp_ = compile_system(rewritten_, RootRel::LeqZero);

    members_of_original_.resize(original_.variables.size());
    for (size_t i = 0; i < original_.variables.size(); ++i) {
        const std::string& name = original_.variables[i].first;
        const SystemSpec::EqClass* cls = nullptr;
        for (const auto& c : rewritten_.equivalence_classes)
            if (c.original == name) { cls = &c; break; }
        if (cls) {
            for (const auto& m : cls->members) members_of_original_[i].push_back(csp_.var_id(m));
        } else {
            int v = csp_.var_id(name);
            if (v >= 0) members_of_original_[i].push_back(v);
        }
    }

    fragment_of_expr_.resize(original_.inequalities.size());
    for (size_t j = 0; j < fragment_of_expr_.size(); ++j) {
        std::set<int> externals;
        for (size_t ci = 0; ci < csp_.constraints.size(); ++ci)
            if (csp_.expr_of[ci] == static_cast<int>(j)) {
                fragment_of_expr_[j].push_back(static_cast<int>(ci));
                for (int v : csp_.vars_of(csp_.constraints[ci]))
                    if (csp_.vars[v].kind == VarKind::External) externals.insert(v);
            }
        for (size_t ci = 0; ci < csp_.constraints.size(); ++ci) {
            if (csp_.constraints[ci].kind != CKind::AllEq) continue;
            for (int m : csp_.constraints[ci].members)
                if (externals.count(m)) {
                    fragment_of_expr_[j].push_back(static_cast<int>(ci));
                    break;
                }
        }
    }
}

Box RelationalContext::inject(const VarBox& b) const {
    Box box = csp_.initial;
    for (size_t i = 0; i < members_of_original_.size(); ++i)
        for (int v : members_of_original_[i]) box[v] = b.dom[i];
    return box;
}

VarBox RelationalContext::project(const Box& box) const {
    VarBox out;
    out.dom.resize(members_of_original_.size(), Interval::entire());
    for (size_t i = 0; i < members_of_original_.size(); ++i) {
        Interval acc = Interval::entire();
        for (int v : members_of_original_[i]) acc = intersect(acc, box[v]);
        out.dom[i] = acc;
    }
    return out;
}

bool RelationalContext::slice_infeasible(size_t j, size_t i, const VarBox& b,
                                         const Interval& slice) const {
    Box box = inject(b);
    for (int v : members_of_original_[i]) box[v] = slice;
    GpaResult r = gpa(csp_, std::move(box), fragment_of_expr_[j], Discipline::Fifo);
    return r.failed();
}

GpaResult RelationalContext::propagate(const VarBox& b) const {
    return gpa(csp_, inject(b), all_constraints(csp_), Discipline::Fifo);
}

BcResult relational_bc(const SystemSpec& s, const VarBox& b, const BcConfig& cfg) {
    return relational_bc(RelationalContext(s), b, cfg);
}

BcResult relational_bc(const RelationalContext& ctx, const VarBox& b, const BcConfig& cfg) {
    const SystemSpec& s = ctx.original();
    BcResult res;
    res.box = b;

    std::vector<std::vector<size_t>> sweep_vars;
    for (const auto& g : s.inequalities) sweep_vars.push_back(var_indices_of_expr(s, *g));

    for (int round = 0; round < cfg.max_rounds; ++round) {
        bool changed = false;

        // whole-CSP propagation between sweeps
        GpaResult prop = ctx.propagate(res.box);
        res.trial_propagations++;
        if (prop.failed()) {
            res.failed = true;
            return res;
        }
        VarBox tightened = ctx.project(prop.box);
        if (!tightened.same(res.box)) { res.box = tightened; changed = true; }

        for (size_t j = 0; j < s.inequalities.size(); ++j) {
            for (size_t i : sweep_vars[j]) {
                const Interval& X = res.box.dom[i];
                auto upper_test = [&](const Interval& slice) {
                    // the strict bound x > a becomes the float slice [succ(a), rb];
                    // the whole-domain check keeps the full slice
                    Interval t = slice.same(X) ? slice
                                               : Interval(next_up(slice.lb()), slice.rb());
                    res.trial_propagations++;
                    if (t.is_empty()) return true;
                    return ctx.slice_infeasible(j, i, res.box, t);
                };
                Interval up = shrink_upper_impl(X, cfg, upper_test);
                if (up.is_empty()) {
                    res.failed = true;
                    res.box.dom[i] = up;
                    return res;
                }
                if (!up.same(res.box.dom[i])) { res.box.dom[i] = up; changed = true; }

                const Interval& X2 = res.box.dom[i];
                auto lower_test = [&](const Interval& slice) {
                    Interval t = slice.same(X2) ? slice
                                                : Interval(slice.lb(), next_down(slice.rb()));
                    res.trial_propagations++;
                    if (t.is_empty()) return true;
                    return ctx.slice_infeasible(j, i, res.box, t);
                };
                Interval lo = shrink_lower_impl(X2, cfg, lower_test);
                if (lo.is_empty()) {
                    res.failed = true;
                    res.box.dom[i] = lo;
                    return res;
                }
                if (!lo.same(res.box.dom[i])) { res.box.dom[i] = lo; changed = true; }
            }
        }
        if (!changed) break;
    }
    // leave the reported box at a propagation fixpoint
    GpaResult prop = ctx.propagate(res.box);
    if (prop.failed()) {
        res.failed = true;
        return res;
    }
    res.box = ctx.project(prop.box);
    return res;
}

BcResult run_bc(const SystemSpec& s, const VarBox& b, const BcConfig& cfg) {
    return cfg.mode == BcMode::Functional ? functional_bc(s, b, cfg) : relational_bc(s, b, cfg);
}

}  // namespace boxprop
