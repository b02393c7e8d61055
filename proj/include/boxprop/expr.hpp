#ifndef BOXPROP_EXPR_HPP
#define BOXPROP_EXPR_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "boxprop/interval.hpp"

namespace boxprop {

enum class BinaryOp { Add, Sub, Mul, Div };

/// Arithmetic expression tree. Constants carry the least canonical interval
/// of their literal; power nodes keep an integer exponent k >= 0 as a
/// primitive unary op (exact range for even powers).
struct Expr {
    enum class Kind { Constant, Variable, Unary, Binary };

    Kind kind;
    Interval value;                 // Constant
    std::string name;               // Variable
    UnaryFn fn;                     // Unary
    BinaryOp bop = BinaryOp::Add;   // Binary
    std::shared_ptr<const Expr> left, right;   // Unary uses left only

    static std::shared_ptr<const Expr> constant(Interval v);
    static std::shared_ptr<const Expr> variable(std::string n);
    static std::shared_ptr<const Expr> unary(UnaryFn f, std::shared_ptr<const Expr> c);
    static std::shared_ptr<const Expr> binary(BinaryOp op, std::shared_ptr<const Expr> l,
                                              std::shared_ptr<const Expr> r);
};

using ExprPtr = std::shared_ptr<const Expr>;

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at " + std::to_string(l) + ":" + std::to_string(c)),
          line(l), column(c) {}
};

/// Grammar: ^ binds tighter than unary minus, then *,/ then +,-.
/// Left associative; ^ takes a nonnegative integer exponent only.
ExprPtr parse(const std::string& text);

/// Parenthesized normal form; render(parse(t)) reparses identically.
std::string render(const Expr& e);

bool equal(const Expr& a, const Expr& b);

using Env = std::map<std::string, Interval>;

/// Natural interval extension: bottom-up evaluation with interval operators.
/// Throws std::out_of_range on an unbound variable.
Interval eval_natural(const Expr& e, const Env& env);

/// Pre-evaluates variable-free subtrees to interval constants.
ExprPtr fold_constants(const ExprPtr& e);

/// Variable names in first-occurrence order (each once).
std::vector<std::string> variables_of(const Expr& e);

/// A system of inequalities expr <= 0 over named variables.
struct SystemSpec {
    std::vector<std::pair<std::string, Interval>> variables;  // declaration order
    std::vector<ExprPtr> inequalities;

    struct EqClass {
        std::string original;              // source variable the class renames
        std::vector<std::string> members;  // >= 2, in occurrence order
    };
    std::vector<EqClass> equivalence_classes;

    const Interval* domain_of(const std::string& name) const;
};

/// Renames every repeated variable occurrence-by-occurrence across the whole
/// system, recording one equivalence class per repeated source variable.
/// Classes of size 1 are elided; initial domains are copied to all members.
SystemSpec rewrite_single_occurrence(const SystemSpec& s);

}  // namespace boxprop

#endif
