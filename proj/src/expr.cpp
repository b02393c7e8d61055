#include "boxprop/expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace boxprop {

std::shared_ptr<const Expr> Expr::constant(Interval v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Constant;
    e->value = v;
    return e;
}

std::shared_ptr<const Expr> Expr::variable(std::string n) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Variable;
    e->name = std::move(n);
    return e;
}

std::shared_ptr<const Expr> Expr::unary(UnaryFn f, std::shared_ptr<const Expr> c) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Unary;
    e->fn = f;
    e->left = std::move(c);
    return e;
}

std::shared_ptr<const Expr> Expr::binary(BinaryOp op, std::shared_ptr<const Expr> l,
                                         std::shared_ptr<const Expr> r) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->bop = op;
    e->left = std::move(l);
    e->right = std::move(r);
    return e;
}

// ---- parser -----------------------------------------------------------------

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;
    int line = 1, col = 1;

    explicit Lexer(const std::string& t) : s(t) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) advance();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    char peek2() {
        skip_ws();
        return pos + 1 < s.size() ? s[pos + 1] : '\0';
    }
    void advance() {
        if (s[pos] == '\n') { ++line; col = 1; } else { ++col; }
        ++pos;
    }
    char get() {
        char c = peek();
        if (pos < s.size()) advance();
        return c;
    }
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line, col); }
};

struct Parser {
    Lexer lx;

    explicit Parser(const std::string& t) : lx(t) {}

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            char c = lx.peek();
            if (c == '+' || c == '-') {
                lx.get();
                ExprPtr r = parse_term();
                e = Expr::binary(c == '+' ? BinaryOp::Add : BinaryOp::Sub, e, r);
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            char c = lx.peek();
            if (c == '*' && lx.peek2() == '*') lx.fail("'**' not supported, use ^k with integer k");
            if (c == '*' || c == '/') {
                lx.get();
                ExprPtr r = parse_factor();
                e = Expr::binary(c == '*' ? BinaryOp::Mul : BinaryOp::Div, e, r);
            } else {
                return e;
            }
        }
    }

    // unary minus binds looser than ^
    ExprPtr parse_factor() {
        if (lx.peek() == '-') {
            lx.get();
            return Expr::unary(UnaryFn{UnaryOp::Neg, 0}, parse_factor());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (lx.peek() == '^') {
            lx.get();
            int k = parse_int_exponent();
            return Expr::unary(UnaryFn{UnaryOp::Pow, k}, base);
        }
        return base;
    }

    int parse_int_exponent() {
        lx.skip_ws();
        if (lx.pos >= lx.s.size() || !std::isdigit(static_cast<unsigned char>(lx.s[lx.pos])))
            lx.fail("expected nonnegative integer exponent");
        long k = 0;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) {
            k = k * 10 + (lx.s[lx.pos] - '0');
            if (k > 1000000) lx.fail("exponent too large");
            lx.advance();
        }
        return static_cast<int>(k);
    }

    ExprPtr parse_atom() {
        char c = lx.peek();
        if (c == '(') {
            lx.get();
            ExprPtr e = parse_expr();
            if (lx.peek() != ')') lx.fail("expected ')'");
            lx.get();
            return e;
        }
        if (c == '<') return parse_exact_pair();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        lx.fail(std::string("unexpected character '") + c + "'");
    }

    // `<lo,hi>` with exact (typically hex) float bounds; used to round-trip
    // constants whose decimal rendering would not re-read bit-identically.
    ExprPtr parse_exact_pair() {
        lx.get();  // '<'
        double lo = parse_exact_bound(',');
        double hi = parse_exact_bound('>');
        if (hi < lo) return Expr::constant(Interval::empty());
        return Expr::constant(Interval(lo, hi));
    }

    double parse_exact_bound(char terminator) {
        lx.skip_ws();
        size_t start = lx.pos;
        while (lx.pos < lx.s.size() && lx.s[lx.pos] != terminator) lx.advance();
        if (lx.pos >= lx.s.size()) lx.fail(std::string("expected '") + terminator + "'");
        std::string lit = lx.s.substr(start, lx.pos - start);
        lx.advance();  // terminator
        const char* p = lit.c_str();
        char* endp = nullptr;
        double v = std::strtod(p, &endp);
        while (endp && *endp && std::isspace(static_cast<unsigned char>(*endp))) ++endp;
        if (endp == p || *endp != '\0') lx.fail("bad exact bound '" + lit + "'");
        return v;
    }

    ExprPtr parse_number() {
        lx.skip_ws();
        size_t start = lx.pos;
        while (lx.pos < lx.s.size()) {
            char c = lx.s[lx.pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') { lx.advance(); continue; }
            if ((c == 'e' || c == 'E') && lx.pos + 1 < lx.s.size() &&
                (std::isdigit(static_cast<unsigned char>(lx.s[lx.pos + 1])) ||
                 ((lx.s[lx.pos + 1] == '+' || lx.s[lx.pos + 1] == '-') && lx.pos + 2 < lx.s.size() &&
                  std::isdigit(static_cast<unsigned char>(lx.s[lx.pos + 2]))))) {
                lx.advance();   // 'e'
                lx.advance();   // sign or digit
                continue;
            }
            break;
        }
        std::string lit = lx.s.substr(start, lx.pos - start);
        try {
            return Expr::constant(least_canonical(lit));
        } catch (const std::invalid_argument& ex) {
            lx.fail(ex.what());
        }
    }

    ExprPtr parse_name() {
        lx.skip_ws();
        size_t start = lx.pos;
        while (lx.pos < lx.s.size() &&
               (std::isalnum(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '_' ||
                lx.s[lx.pos] == '#')) {
            lx.advance();
        }
        std::string name = lx.s.substr(start, lx.pos - start);
        if (lx.peek() == '(') {
            lx.get();
            ExprPtr arg = parse_expr();
            if (lx.peek() != ')') lx.fail("expected ')'");
            lx.get();
            UnaryFn f;
            if (name == "exp") f.op = UnaryOp::Exp;
            else if (name == "log") f.op = UnaryOp::Log;
            else if (name == "sqrt") f.op = UnaryOp::Sqrt;
            else if (name == "sin") f.op = UnaryOp::Sin;
            else if (name == "cos") f.op = UnaryOp::Cos;
            else lx.fail("unknown function '" + name + "'");
            return Expr::unary(f, arg);
        }
        return Expr::variable(name);
    }
};

}  // namespace

ExprPtr parse(const std::string& text) {
    Parser p(text);
    ExprPtr e = p.parse_expr();
    if (p.lx.peek() != '\0') p.lx.fail("trailing input");
    return e;
}

std::string render(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Constant: {
            if (e.value.is_empty()) return "<1,-1>";
            // exact-pair form with hex bounds so the constant re-reads
            // bit-identically (decimal text would widen to a straddle)
            auto hex = [](double v) {
                if (v == kInf) return std::string("inf");
                if (v == -kInf) return std::string("-inf");
                char buf[48];
                std::snprintf(buf, sizeof buf, "%a", v);
                return std::string(buf);
            };
            return "<" + hex(e.value.lb()) + "," + hex(e.value.rb()) + ">";
        }
        case Expr::Kind::Variable:
            return e.name;
        case Expr::Kind::Unary:
            if (e.fn.op == UnaryOp::Neg) return "(-" + render(*e.left) + ")";
            if (e.fn.op == UnaryOp::Pow)
                return "(" + render(*e.left) + "^" + std::to_string(e.fn.k) + ")";
            return std::string(unary_name(e.fn)) + "(" + render(*e.left) + ")";
        case Expr::Kind::Binary: {
            const char* op = e.bop == BinaryOp::Add ? "+" : e.bop == BinaryOp::Sub ? "-"
                           : e.bop == BinaryOp::Mul ? "*" : "/";
            return "(" + render(*e.left) + op + render(*e.right) + ")";
        }
    }
    return "?";
}

bool equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::Constant: return a.value.same(b.value);
        case Expr::Kind::Variable: return a.name == b.name;
        case Expr::Kind::Unary:
            return a.fn.op == b.fn.op && a.fn.k == b.fn.k && equal(*a.left, *b.left);
        case Expr::Kind::Binary:
            return a.bop == b.bop && equal(*a.left, *b.left) && equal(*a.right, *b.right);
    }
    return false;
}

Interval eval_natural(const Expr& e, const Env& env) {
    switch (e.kind) {
        case Expr::Kind::Constant:
            return e.value;
        case Expr::Kind::Variable: {
            auto it = env.find(e.name);
            if (it == env.end()) throw std::out_of_range("unbound variable: " + e.name);
            return it->second;
        }
        case Expr::Kind::Unary:
            return unary_fn(e.fn, eval_natural(*e.left, env));
        case Expr::Kind::Binary: {
            Interval l = eval_natural(*e.left, env);
            Interval r = eval_natural(*e.right, env);
            switch (e.bop) {
                case BinaryOp::Add: return add(l, r);
                case BinaryOp::Sub: return sub(l, r);
                case BinaryOp::Mul: return mul(l, r);
                case BinaryOp::Div: return div(l, r);
            }
        }
    }
    return Interval::entire();
}

ExprPtr fold_constants(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Constant:
        case Expr::Kind::Variable:
            return e;
        case Expr::Kind::Unary: {
            ExprPtr c = fold_constants(e->left);
            if (c->kind == Expr::Kind::Constant)
                return Expr::constant(unary_fn(e->fn, c->value));
            return c == e->left ? e : Expr::unary(e->fn, c);
        }
        case Expr::Kind::Binary: {
            ExprPtr l = fold_constants(e->left);
            ExprPtr r = fold_constants(e->right);
            if (l->kind == Expr::Kind::Constant && r->kind == Expr::Kind::Constant)
                return Expr::constant(eval_natural(*Expr::binary(e->bop, l, r), {}));
            if (l == e->left && r == e->right) return e;
            return Expr::binary(e->bop, l, r);
        }
    }
    return e;
}

static void collect_vars(const Expr& e, std::vector<std::string>& out, std::set<std::string>& seen) {
    switch (e.kind) {
        case Expr::Kind::Constant: return;
        case Expr::Kind::Variable:
            if (seen.insert(e.name).second) out.push_back(e.name);
            return;
        case Expr::Kind::Unary:
            collect_vars(*e.left, out, seen);
            return;
        case Expr::Kind::Binary:
            collect_vars(*e.left, out, seen);
            collect_vars(*e.right, out, seen);
            return;
    }
}

std::vector<std::string> variables_of(const Expr& e) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    collect_vars(e, out, seen);
    return out;
}

const Interval* SystemSpec::domain_of(const std::string& name) const {
    for (const auto& [n, d] : variables)
        if (n == name) return &d;
    return nullptr;
}

// ---- single-occurrence rewriting ---------------------------------------------

namespace {

void count_occurrences(const Expr& e, std::map<std::string, int>& counts) {
    switch (e.kind) {
        case Expr::Kind::Constant: return;
        case Expr::Kind::Variable: ++counts[e.name]; return;
        case Expr::Kind::Unary: count_occurrences(*e.left, counts); return;
        case Expr::Kind::Binary:
            count_occurrences(*e.left, counts);
            count_occurrences(*e.right, counts);
            return;
    }
}

ExprPtr rename_occurrences(const ExprPtr& e, const std::map<std::string, int>& totals,
                           std::map<std::string, int>& next_ordinal) {
    switch (e->kind) {
        case Expr::Kind::Constant:
            return e;
        case Expr::Kind::Variable: {
            auto it = totals.find(e->name);
            if (it == totals.end() || it->second <= 1) return e;
            int ord = ++next_ordinal[e->name];
            return Expr::variable(e->name + "#" + std::to_string(ord));
        }
        case Expr::Kind::Unary: {
            ExprPtr c = rename_occurrences(e->left, totals, next_ordinal);
            return c == e->left ? e : Expr::unary(e->fn, c);
        }
        case Expr::Kind::Binary: {
            ExprPtr l = rename_occurrences(e->left, totals, next_ordinal);
            ExprPtr r = rename_occurrences(e->right, totals, next_ordinal);
            if (l == e->left && r == e->right) return e;
            return Expr::binary(e->bop, l, r);
        }
    }
    return e;
}

}  // namespace

SystemSpec rewrite_single_occurrence(const SystemSpec& s) {
    std::map<std::string, int> totals;
    for (const auto& g : s.inequalities) count_occurrences(*g, totals);

    SystemSpec out;
    std::map<std::string, int> next_ordinal;
    for (const auto& g : s.inequalities)
        out.inequalities.push_back(rename_occurrences(g, totals, next_ordinal));

    for (const auto& [name, dom] : s.variables) {
        auto it = totals.find(name);
        int n = it == totals.end() ? 0 : it->second;
        if (n <= 1) {
            out.variables.emplace_back(name, dom);
            continue;
        }
        SystemSpec::EqClass cls;
        cls.original = name;
        for (int i = 1; i <= n; ++i) {
            std::string member = name + "#" + std::to_string(i);
            out.variables.emplace_back(member, dom);
            cls.members.push_back(member);
        }
        out.equivalence_classes.push_back(std::move(cls));
    }
    return out;
}

}  // namespace boxprop
