#ifndef BOXPROP_INTERVAL_HPP
#define BOXPROP_INTERVAL_HPP

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace boxprop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Next float above / below x. next(+inf)=+inf, prev(-inf)=-inf.
double next_up(double x);
double next_down(double x);

/// Closed connected set of reals with floating-point bounds.
/// Empty is a distinguished value; bounds of non-empty intervals
/// satisfy lb <= rb with lb in F u {-inf}, rb in F u {+inf}.
class Interval {
public:
    Interval() : lo_(0.0), hi_(0.0) {}
    Interval(double lo, double hi);

    static Interval empty();
    static Interval entire() { return Interval(-kInf, kInf); }
    static Interval point(double v) { return Interval(v, v); }

    bool is_empty() const { return lo_ > hi_; }
    bool is_entire() const { return lo_ == -kInf && hi_ == kInf; }
    double lb() const { return lo_; }
    double rb() const { return hi_; }

    bool contains(double x) const { return !is_empty() && lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const;      // o subset of *this
    bool proper_superset_of(const Interval& o) const;
    bool same(const Interval& o) const;          // set equality (empty==empty)

    /// [f,f] or [f,next(f)]: no float in the open interior.
    bool is_canonical() const;

private:
    double lo_, hi_;
};

// -- textual form ----------------------------------------------------------

/// "[lb,rb]" with round-trip-exact bounds ("empty", "inf"/"-inf" tokens).
std::string to_string(const Interval& a);              // shortest round-trip
std::string to_string_17(const Interval& a);           // 17 significant digits
std::string to_string_hex(const Interval& a);          // hex floats
std::string double_to_string(double v);
std::string double_to_hex(double v);

/// Parses "[lb,rb]" / "empty". Throws std::invalid_argument on bad input.
Interval parse_interval(const std::string& text);

/// Least canonical interval containing the real denoted by a decimal
/// literal: [f,f] when the literal is exactly a float, else the straddling
/// [pred,succ] pair. Rejects non-finite literals.
Interval least_canonical(const std::string& literal);
Interval least_canonical(double x);

// -- arithmetic (outward-rounded; empty in => empty out) --------------------

Interval add(const Interval& a, const Interval& b);
Interval sub(const Interval& a, const Interval& b);
Interval mul(const Interval& a, const Interval& b);
Interval neg(const Interval& a);

/// div is the hull of the extended-division pieces
/// (so 0 interior to b yields [-inf,+inf] when 0 not in a).
Interval div(const Interval& a, const Interval& b);

struct IntervalPair {
    Interval first;
    Interval second;   // empty unless the quotient set has a gap
};

/// At most two maximal intervals covering {x/y : x in a, y in b, y != 0}.
/// Two pieces arise exactly when 0 is interior to b and 0 not in a.
IntervalPair ext_div(const Interval& a, const Interval& b);

// -- unary functions --------------------------------------------------------

enum class UnaryOp { Neg, Exp, Log, Sqrt, Sin, Cos, Pow };

struct UnaryFn {
    UnaryOp op = UnaryOp::Neg;
    int k = 0;   // exponent, Pow only (k >= 0)
};

/// Image f(a intersect dom(f)) with outward widening; disjoint from
/// dom(f) gives empty.
Interval unary_fn(const UnaryFn& f, const Interval& a);

/// Sound enclosure of {x in x_hint : f(x) in y}. Branch enumeration for
/// sin/cos/even powers is capped; when the cap trips, x_hint is returned.
Interval unary_inverse(const UnaryFn& f, const Interval& y, const Interval& x_hint);

const char* unary_name(const UnaryFn& f);

// -- set operations ---------------------------------------------------------

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

/// width(empty) = -inf by convention so that any real threshold exceeds it.
double width(const Interval& a);
double midpoint(const Interval& a);

/// Bisection at the midpoint. Throws std::domain_error on empty or
/// canonical input ("cannot refine further").
std::pair<Interval, Interval> split(const Interval& a);

}  // namespace boxprop

#endif
