#include "boxprop/csp.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace boxprop {

bool Box::same(const Box& o) const {
    if (dom.size() != o.dom.size()) return false;
    for (size_t i = 0; i < dom.size(); ++i)
        if (!dom[i].same(o.dom[i])) return false;
    return true;
}

int Csp::var_id(const std::string& name) const {
    for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

std::vector<int> Csp::vars_of(const Constraint& c) const {
    std::vector<int> out;
    auto push = [&out](int v) {
        if (v < 0) return;
        for (int u : out)
            if (u == v) return;
        out.push_back(v);
    };
    switch (c.kind) {
        case CKind::Sum:
        case CKind::Prod:
            push(c.a.var);
            push(c.b.var);
            push(c.z.var);
            break;
        case CKind::UnaryLink:
            push(c.a.var);
            push(c.z.var);
            break;
        case CKind::Bound:
            push(c.z.var);
            break;
        case CKind::AllEq:
            for (int m : c.members) push(m);
            break;
    }
    return out;
}

int Csp::internal_count(const Constraint& c) const {
    int n = 0;
    for (int v : vars_of(c))
        if (vars[v].kind == VarKind::Internal) ++n;
    return n;
}

void Csp::rebuild_var_index() {
    constraints_of_var.assign(vars.size(), {});
    for (size_t ci = 0; ci < constraints.size(); ++ci)
        for (int v : vars_of(constraints[ci]))
            constraints_of_var[v].push_back(static_cast<int>(ci));
}

namespace {

struct Compiler {
    Csp& csp;
    int expr_index;
    int next_internal = 0;

    int fresh_internal() {
        // unique per csp, not per expression
        for (;;) {
            std::string name = "_v" + std::to_string(++next_internal);
            if (csp.var_id(name) < 0) {
                csp.vars.push_back({name, VarKind::Internal});
                csp.initial.dom.push_back(Interval::entire());
                return static_cast<int>(csp.vars.size()) - 1;
            }
        }
    }

    int external(const std::string& name) {
        int v = csp.var_id(name);
        if (v >= 0) return v;
        csp.vars.push_back({name, VarKind::External});
        csp.initial.dom.push_back(Interval::entire());
        return static_cast<int>(csp.vars.size()) - 1;
    }

    void emit(Constraint c, int depth) {
        csp.constraints.push_back(std::move(c));
        csp.depth.push_back(depth);
        csp.expr_of.push_back(expr_index);
    }

    // Returns the operand denoting the node value.
    Operand walk(const Expr& e, int depth, std::set<std::string>& seen) {
        switch (e.kind) {
            case Expr::Kind::Constant:
                return Operand::of_const(e.value);
            case Expr::Kind::Variable: {
                if (!seen.insert(e.name).second)
                    throw std::invalid_argument("repeated variable in expression: " + e.name);
                return Operand::of_var(external(e.name));
            }
            case Expr::Kind::Unary: {
                Operand child = walk(*e.left, depth + 1, seen);
                int v = fresh_internal();
                Constraint c;
                c.kind = CKind::UnaryLink;
                c.a = child;
                c.z = Operand::of_var(v);
                c.fn = e.fn;
                emit(std::move(c), depth);
                return Operand::of_var(v);
            }
            case Expr::Kind::Binary: {
                Operand l = walk(*e.left, depth + 1, seen);
                Operand r = walk(*e.right, depth + 1, seen);
                int v = fresh_internal();
                Constraint c;
                switch (e.bop) {
                    case BinaryOp::Add:   // l + r = v
                        c.kind = CKind::Sum;
                        c.a = l; c.b = r; c.z = Operand::of_var(v);
                        break;
                    case BinaryOp::Sub:   // l - r = v  as  v + r = l
                        c.kind = CKind::Sum;
                        c.a = Operand::of_var(v); c.b = r; c.z = l;
                        break;
                    case BinaryOp::Mul:
                        c.kind = CKind::Prod;
                        c.a = l; c.b = r; c.z = Operand::of_var(v);
                        break;
                    case BinaryOp::Div:   // l / r = v  as  v * r = l
                        c.kind = CKind::Prod;
                        c.a = Operand::of_var(v); c.b = r; c.z = l;
                        break;
                }
                emit(std::move(c), depth);
                return Operand::of_var(v);
            }
        }
        throw std::logic_error("unreachable");
    }
};

}  // namespace

int compile_expression(Csp& csp, const Expr& e, RootRel rel, int expr_index) {
    Compiler comp{csp, expr_index};
    comp.next_internal = 0;
    // continue internal numbering across fragments
    for (const auto& v : csp.vars)
        if (v.kind == VarKind::Internal) ++comp.next_internal;

    std::set<std::string> seen;
    Operand root = comp.walk(e, 1, seen);
    int root_var;
    if (root.is_const()) {
        // whole expression is constant: pin a variable to it
        root_var = comp.fresh_internal();
        csp.initial.dom.back() = root.value;
    } else {
        root_var = root.var;
    }
    if (rel == RootRel::LeqZero) {
        Constraint c;
        c.kind = CKind::Bound;
        c.z = Operand::of_var(root_var);
        c.brel = BoundRel::LeqZero;
        comp.emit(std::move(c), 0);
    }
    csp.root_var_of_expr.resize(std::max<size_t>(csp.root_var_of_expr.size(), expr_index + 1), -1);
    csp.root_var_of_expr[expr_index] = root_var;
    csp.rebuild_var_index();
    return root_var;
}

Csp compile_system(const SystemSpec& s, RootRel rel) {
    Csp csp;
    for (const auto& [name, dom] : s.variables) {
        csp.vars.push_back({name, VarKind::External});
        csp.initial.dom.push_back(dom);
    }
    for (size_t j = 0; j < s.inequalities.size(); ++j)
        compile_expression(csp, *s.inequalities[j], rel, static_cast<int>(j));
    for (const auto& cls : s.equivalence_classes) {
        Constraint c;
        c.kind = CKind::AllEq;
        for (const auto& m : cls.members) {
            int v = csp.var_id(m);
            if (v < 0) throw std::invalid_argument("equivalence class member not in system: " + m);
            c.members.push_back(v);
        }
        if (c.members.size() < 2) continue;
        csp.constraints.push_back(std::move(c));
        csp.depth.push_back(kDepthAllEq);
        csp.expr_of.push_back(-1);
    }
    csp.rebuild_var_index();
    return csp;
}

std::vector<int> peripheral_set(const Csp& c) {
    std::vector<int> out;
    for (size_t i = 0; i < c.constraints.size(); ++i)
        if (c.internal_count(c.constraints[i]) <= 1) out.push_back(static_cast<int>(i));
    return out;
}

namespace {

std::string operand_str(const Csp& c, const Operand& o) {
    if (o.is_const()) return to_string(o.value);
    return c.vars[o.var].name;
}

}  // namespace

std::string dump(const Csp& c) {
    std::ostringstream os;
    for (size_t i = 0; i < c.constraints.size(); ++i) {
        const Constraint& k = c.constraints[i];
        switch (k.kind) {
            case CKind::Sum:
                os << "Sum(" << operand_str(c, k.a) << "," << operand_str(c, k.b) << ","
                   << operand_str(c, k.z) << ")";
                break;
            case CKind::Prod:
                os << "Prod(" << operand_str(c, k.a) << "," << operand_str(c, k.b) << ","
                   << operand_str(c, k.z) << ")";
                break;
            case CKind::UnaryLink:
                os << "UnaryLink(" << unary_name(k.fn);
                if (k.fn.op == UnaryOp::Pow) os << k.fn.k;
                os << "," << operand_str(c, k.a) << "," << operand_str(c, k.z) << ")";
                break;
            case CKind::Bound:
                if (k.brel == BoundRel::LeqZero)
                    os << "Bound(" << c.vars[k.z.var].name << ",<=0)";
                else
                    os << "Bound(" << c.vars[k.z.var].name << ",>=succ(" << double_to_string(k.bound_val)
                       << "))";
                break;
            case CKind::AllEq: {
                os << "AllEq(";
                for (size_t m = 0; m < k.members.size(); ++m)
                    os << (m ? "," : "") << c.vars[k.members[m]].name;
                os << ")";
                break;
            }
        }
        os << " depth=" << (c.depth[i] == kDepthAllEq ? std::string("max") : std::to_string(c.depth[i]))
           << " expr=" << c.expr_of[i] << "\n";
    }
    return os.str();
}

}  // namespace boxprop
