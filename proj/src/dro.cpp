#include "boxprop/dro.hpp"

namespace boxprop {

namespace {

struct Slot {
    // current working domain: constants are fixed point sets
    Interval cur;
    bool is_var;
};

Slot slot_of(const Operand& o, const Box& b) {
    if (o.is_const()) return {o.value, false};
    return {b[o.var], true};
}

// Narrow a slot; returns true if it changed. Constants only check feasibility.
bool narrow(Slot& s, const Interval& projection, bool& infeasible) {
    Interval nv = intersect(s.cur, projection);
    if (nv.is_empty()) {
        if (!s.is_var) {
            // a constant with empty projection makes the relation empty
            infeasible = true;
            return false;
        }
        infeasible = true;
        s.cur = nv;
        return true;
    }
    if (!s.is_var) return false;   // never reduce a constant slot
    if (nv.same(s.cur)) return false;
    s.cur = nv;
    return true;
}

// Back-projection through a product: pieces of z/other are intersected with
// the current domain before hulling, so a gap in the quotient set can cut it.
Interval prod_back(const Interval& z, const Interval& other, const Interval& cur) {
    if (z.is_empty() || other.is_empty() || cur.is_empty()) return Interval::empty();
    if (other.lb() == 0.0 && other.rb() == 0.0)
        return z.contains(0.0) ? cur : Interval::empty();
    IntervalPair p = ext_div(z, other);
    return hull(intersect(p.first, cur), intersect(p.second, cur));
}

bool sum_pass(Slot& a, Slot& b, Slot& z, bool& infeasible) {
    bool ch = false;
    ch |= narrow(z, add(a.cur, b.cur), infeasible);
    if (infeasible) return ch;
    ch |= narrow(a, sub(z.cur, b.cur), infeasible);
    if (infeasible) return ch;
    ch |= narrow(b, sub(z.cur, a.cur), infeasible);
    return ch;
}

bool prod_pass(Slot& a, Slot& b, Slot& z, bool& infeasible) {
    bool ch = false;
    ch |= narrow(z, mul(a.cur, b.cur), infeasible);
    if (infeasible) return ch;
    Interval pa = prod_back(z.cur, b.cur, a.cur);
    ch |= narrow(a, pa, infeasible);
    if (infeasible) return ch;
    Interval pb = prod_back(z.cur, a.cur, b.cur);
    ch |= narrow(b, pb, infeasible);
    return ch;
}

bool unary_pass(const UnaryFn& fn, Slot& a, Slot& z, bool& infeasible) {
    bool ch = false;
    ch |= narrow(z, unary_fn(fn, a.cur), infeasible);
    if (infeasible) return ch;
    ch |= narrow(a, unary_inverse(fn, z.cur, a.cur), infeasible);
    return ch;
}

}  // namespace

ReductionOutcome reduce(const Csp& csp, const Constraint& c, const Box& b) {
    (void)csp;
    ReductionOutcome out;

    switch (c.kind) {
        case CKind::Sum:
        case CKind::Prod:
        case CKind::UnaryLink: {
            Slot sa = slot_of(c.a, b);
            Slot sb = c.kind == CKind::UnaryLink ? Slot{Interval(), false} : slot_of(c.b, b);
            Slot sz = slot_of(c.z, b);
            bool infeasible = false;
            // iterate the projection pass to its floating-point fixpoint so a
            // single reduce call is bit-exactly idempotent
            for (int pass = 0; pass < 64; ++pass) {
                bool ch;
                if (c.kind == CKind::Sum) ch = sum_pass(sa, sb, sz, infeasible);
                else if (c.kind == CKind::Prod) ch = prod_pass(sa, sb, sz, infeasible);
                else ch = unary_pass(c.fn, sa, sz, infeasible);
                if (infeasible || !ch) break;
            }
            if (infeasible) {
                // the relation restricted to the box is empty, so every
                // variable projection is empty
                out.failed = true;
                if (sa.is_var) out.updates.emplace_back(c.a.var, Interval::empty());
                if (c.kind != CKind::UnaryLink && sb.is_var)
                    out.updates.emplace_back(c.b.var, Interval::empty());
                if (sz.is_var) out.updates.emplace_back(c.z.var, Interval::empty());
                return out;
            }
            if (sa.is_var && !sa.cur.same(b[c.a.var])) out.updates.emplace_back(c.a.var, sa.cur);
            if (c.kind != CKind::UnaryLink && sb.is_var && !sb.cur.same(b[c.b.var]))
                out.updates.emplace_back(c.b.var, sb.cur);
            if (sz.is_var && !sz.cur.same(b[c.z.var])) out.updates.emplace_back(c.z.var, sz.cur);
            return out;
        }

        case CKind::Bound: {
            int v = c.z.var;
            Interval cut = c.brel == BoundRel::LeqZero
                               ? Interval(-kInf, 0.0)
                               : Interval(next_up(c.bound_val), kInf);
            Interval nv = intersect(b[v], cut);
            if (nv.is_empty()) {
                out.failed = true;
                out.updates.emplace_back(v, nv);
            } else if (!nv.same(b[v])) {
                out.updates.emplace_back(v, nv);
            }
            return out;
        }

        case CKind::AllEq: {
            Interval common = b[c.members.front()];
            for (size_t i = 1; i < c.members.size(); ++i)
                common = intersect(common, b[c.members[i]]);
            if (common.is_empty()) {
                out.failed = true;
                for (int m : c.members) out.updates.emplace_back(m, common);
                return out;
            }
            for (int m : c.members)
                if (!b[m].same(common)) out.updates.emplace_back(m, common);
            return out;
        }
    }
    return out;
}

void apply(Box& b, const ReductionOutcome& o) {
    for (const auto& [v, dom] : o.updates) b[v] = dom;
}

bool is_fixpoint(const Csp& csp, const Constraint& c, const Box& b) {
    ReductionOutcome o = reduce(csp, c, b);
    return !o.failed && o.updates.empty();
}

}  // namespace boxprop
