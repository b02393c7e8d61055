#include "boxprop/interval.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace boxprop {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Normalize -0.0 to +0.0 so that equal sets have equal bits regardless of
// which arithmetic path produced them.
double norm_zero(double x) { return x == 0.0 ? 0.0 : x; }

// ---- directed rounding kernels --------------------------------------------
//
// Each kernel computes the exact directed rounding of the true result using
// the round-to-nearest value plus an error-free transformation (2Sum / fma).
// No rounding-mode switching, no unconditional widening: exact results stay
// exact.

double add_down(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) {
        double s = a + b;
        return std::isnan(s) ? -kInf : s;
    }
    double s = a + b;
    if (s == kInf) return std::numeric_limits<double>::max();
    if (s == -kInf) return -kInf;
    double t = s - a;
    double err = (a - (s - t)) + (b - t);
    if (std::isnan(err)) return next_down(s);
    return err < 0 ? next_down(s) : s;
}

double add_up(double a, double b) {
    if (std::isinf(a) || std::isinf(b)) {
        double s = a + b;
        return std::isnan(s) ? kInf : s;
    }
    double s = a + b;
    if (s == kInf) return kInf;
    if (s == -kInf) return -std::numeric_limits<double>::max();
    double t = s - a;
    double err = (a - (s - t)) + (b - t);
    if (std::isnan(err)) return next_up(s);
    return err > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

// 0 * inf resolves to 0 (containment-safe bound convention).
double mul_down(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    if (std::isinf(a) || std::isinf(b)) return std::signbit(a) == std::signbit(b) ? kInf : -kInf;
    double p = a * b;
    if (p == kInf) return std::numeric_limits<double>::max();
    if (p == -kInf) return -kInf;
    double err = std::fma(a, b, -p);
    if (std::isnan(err)) return next_down(p);
    return err < 0 ? next_down(p) : p;
}

double mul_up(double a, double b) {
    if (a == 0.0 || b == 0.0) return 0.0;
    if (std::isinf(a) || std::isinf(b)) return std::signbit(a) == std::signbit(b) ? kInf : -kInf;
    double p = a * b;
    if (p == kInf) return kInf;
    if (p == -kInf) return -std::numeric_limits<double>::max();
    double err = std::fma(a, b, -p);
    if (std::isnan(err)) return next_up(p);
    return err > 0 ? next_up(p) : p;
}

// b != 0 assumed.
double div_down(double a, double b) {
    if (a == 0.0) return 0.0;
    if (std::isinf(a)) return std::signbit(a) == std::signbit(b) ? kInf : -kInf;
    if (std::isinf(b)) return std::signbit(a) == std::signbit(b) ? 0.0 : -0.0;
    double q = a / b;
    if (q == kInf) return std::numeric_limits<double>::max();
    if (q == -kInf) return -kInf;
    double err = std::fma(q, b, -a);   // true quotient = q - err/b
    if (std::isnan(err) || std::isinf(err)) return next_down(q);
    if (err == 0.0) return q;
    bool true_below = (err > 0) == (b > 0);
    return true_below ? next_down(q) : q;
}

double div_up(double a, double b) {
    if (a == 0.0) return 0.0;
    if (std::isinf(a)) return std::signbit(a) == std::signbit(b) ? kInf : -kInf;
    if (std::isinf(b)) return std::signbit(a) == std::signbit(b) ? 0.0 : -0.0;
    double q = a / b;
    if (q == kInf) return kInf;
    if (q == -kInf) return -std::numeric_limits<double>::max();
    double err = std::fma(q, b, -a);
    if (std::isnan(err) || std::isinf(err)) return next_up(q);
    if (err == 0.0) return q;
    bool true_above = (err < 0) == (b > 0);
    return true_above ? next_up(q) : q;
}

// Transcendental bounds: platform libm result widened by one ulp.
double libm_down(double y) { return std::isnan(y) ? -kInf : next_down(y); }
double libm_up(double y) { return std::isnan(y) ? kInf : next_up(y); }

const double kPiLo = next_down(3.14159265358979323846);
const double kPiHi = next_up(3.14159265358979323846);
const double kTwoPiLo = next_down(2 * 3.14159265358979323846);
const double kTwoPiHi = next_up(2 * 3.14159265358979323846);
const double kHalfPiLo = next_down(3.14159265358979323846 / 2);
const double kHalfPiHi = next_up(3.14159265358979323846 / 2);

}  // namespace

double next_up(double x) {
    if (x == kInf) return kInf;
    return std::nextafter(x, kInf);
}

double next_down(double x) {
    if (x == -kInf) return -kInf;
    return std::nextafter(x, -kInf);
}

Interval::Interval(double lo, double hi) : lo_(norm_zero(lo)), hi_(norm_zero(hi)) {
    if (std::isnan(lo) || std::isnan(hi) || lo_ > hi_ || lo_ == kInf || hi_ == -kInf) {
        *this = empty();
    }
}

Interval Interval::empty() {
    Interval e;
    e.lo_ = kInf;
    e.hi_ = -kInf;
    return e;
}

bool Interval::contains(const Interval& o) const {
    if (o.is_empty()) return true;
    if (is_empty()) return false;
    return lo_ <= o.lo_ && o.hi_ <= hi_;
}

bool Interval::proper_superset_of(const Interval& o) const {
    return contains(o) && !same(o);
}

bool Interval::same(const Interval& o) const {
    if (is_empty() || o.is_empty()) return is_empty() && o.is_empty();
    return lo_ == o.lo_ && hi_ == o.hi_;
}

bool Interval::is_canonical() const {
    if (is_empty()) return false;
    if (std::isinf(lo_) || std::isinf(hi_)) return false;
    return lo_ == hi_ || next_up(lo_) == hi_;
}

// ---- text ------------------------------------------------------------------

std::string double_to_string(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string double_to_hex(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

static std::string double_to_17(double v) {
    if (v == kInf) return "inf";
    if (v == -kInf) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_string(const Interval& a) {
    if (a.is_empty()) return "empty";
    return "[" + double_to_string(a.lb()) + "," + double_to_string(a.rb()) + "]";
}

std::string to_string_17(const Interval& a) {
    if (a.is_empty()) return "empty";
    return "[" + double_to_17(a.lb()) + "," + double_to_17(a.rb()) + "]";
}

std::string to_string_hex(const Interval& a) {
    if (a.is_empty()) return "empty";
    return "[" + double_to_hex(a.lb()) + "," + double_to_hex(a.rb()) + "]";
}

static double parse_bound(std::string tok) {
    // trim
    size_t b = tok.find_first_not_of(" \t");
    size_t e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty interval bound");
    tok = tok.substr(b, e - b + 1);
    if (tok == "inf" || tok == "+inf") return kInf;
    if (tok == "-inf") return -kInf;
    const char* s = tok.c_str();
    char* endp = nullptr;
    double v = std::strtod(s, &endp);
    if (endp == s || *endp != '\0' || std::isnan(v))
        throw std::invalid_argument("bad interval bound: " + tok);
    return v;
}

Interval parse_interval(const std::string& text) {
    std::string t = text;
    size_t b = t.find_first_not_of(" \t");
    size_t e = t.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty interval text");
    t = t.substr(b, e - b + 1);
    if (t == "empty") return Interval::empty();
    if (t.size() < 3 || t.front() != '[' || t.back() != ']')
        throw std::invalid_argument("bad interval: " + text);
    size_t comma = t.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad interval: " + text);
    double lo = parse_bound(t.substr(1, comma - 1));
    double hi = parse_bound(t.substr(comma + 1, t.size() - comma - 2));
    if (lo > hi) throw std::invalid_argument("inverted interval: " + text);
    return Interval(lo, hi);
}

Interval least_canonical(const std::string& literal) {
    const char* s = literal.c_str();
    char* endp = nullptr;
    double d = std::strtod(s, &endp);
    if (endp == s || *endp != '\0')
        throw std::invalid_argument("bad numeric literal: " + literal);
    if (!std::isfinite(d))
        throw std::invalid_argument("non-finite literal rejected: " + literal);
    // Exactness check via extended precision: a literal that is exactly a double
    // parses identically as long double. Literals beyond long-double
    // precision (>18 significant digits) fall back to the safe straddle.
    int digits = 0;
    for (const char* p = s; *p && *p != 'e' && *p != 'E'; ++p)
        if (std::isdigit(static_cast<unsigned char>(*p))) ++digits;
    long double ld = std::strtold(s, nullptr);
    if (digits <= 18 && static_cast<long double>(d) == ld) return Interval::point(d);
    if (digits <= 18) {
        // d is the correctly rounded nearest; the literal sits strictly on
        // one side of it.
        if (ld > static_cast<long double>(d)) return Interval(d, next_up(d));
        return Interval(next_down(d), d);
    }
    return Interval(next_down(d), next_up(d));
}

Interval least_canonical(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite literal rejected");
    return Interval::point(x);
}

// ---- arithmetic ------------------------------------------------------------

Interval add(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return Interval(add_down(a.lb(), b.lb()), add_up(a.rb(), b.rb()));
}

Interval sub(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    return Interval(sub_down(a.lb(), b.rb()), sub_up(a.rb(), b.lb()));
}

Interval neg(const Interval& a) {
    if (a.is_empty()) return Interval::empty();
    return Interval(-a.rb(), -a.lb());
}

Interval mul(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    double lo = std::min(std::min(mul_down(a.lb(), b.lb()), mul_down(a.lb(), b.rb())),
                         std::min(mul_down(a.rb(), b.lb()), mul_down(a.rb(), b.rb())));
    double hi = std::max(std::max(mul_up(a.lb(), b.lb()), mul_up(a.lb(), b.rb())),
                         std::max(mul_up(a.rb(), b.lb()), mul_up(a.rb(), b.rb())));
    return Interval(lo, hi);
}

IntervalPair ext_div(const Interval& a, const Interval& b) {
    IntervalPair r{Interval::empty(), Interval::empty()};
    if (a.is_empty() || b.is_empty()) return r;
    if (b.lb() == 0.0 && b.rb() == 0.0) return r;   // no real quotient
    if (b.lb() > 0.0 || b.rb() < 0.0) {
        // 0 not in b: ordinary corner division.
        double lo = std::min(std::min(div_down(a.lb(), b.lb()), div_down(a.lb(), b.rb())),
                             std::min(div_down(a.rb(), b.lb()), div_down(a.rb(), b.rb())));
        double hi = std::max(std::max(div_up(a.lb(), b.lb()), div_up(a.lb(), b.rb())),
                             std::max(div_up(a.rb(), b.lb()), div_up(a.rb(), b.rb())));
        r.first = Interval(lo, hi);
        return r;
    }
    if (a.contains(0.0)) {
        r.first = Interval::entire();
        return r;
    }
    if (a.rb() < 0.0) {   // a strictly negative
        if (b.lb() == 0.0) {
            r.first = Interval(-kInf, div_up(a.rb(), b.rb()));
        } else if (b.rb() == 0.0) {
            r.first = Interval(div_down(a.rb(), b.lb()), kInf);
        } else {
            r.first = Interval(-kInf, div_up(a.rb(), b.rb()));
            r.second = Interval(div_down(a.rb(), b.lb()), kInf);
        }
    } else {              // a strictly positive
        if (b.lb() == 0.0) {
            r.first = Interval(div_down(a.lb(), b.rb()), kInf);
        } else if (b.rb() == 0.0) {
            r.first = Interval(-kInf, div_up(a.lb(), b.lb()));
        } else {
            r.first = Interval(-kInf, div_up(a.lb(), b.lb()));
            r.second = Interval(div_down(a.lb(), b.rb()), kInf);
        }
    }
    // Keep the (first, second) order invariant: first.rb < second.lb.
    if (!r.second.is_empty() && r.first.is_empty()) std::swap(r.first, r.second);
    if (!r.second.is_empty() && r.first.rb() >= r.second.lb()) {
        // outward rounding closed the gap (extreme underflow); merge
        r.first = hull(r.first, r.second);
        r.second = Interval::empty();
    }
    return r;
}

Interval div(const Interval& a, const Interval& b) {
    IntervalPair p = ext_div(a, b);
    return hull(p.first, p.second);
}

// ---- unary functions -------------------------------------------------------

namespace {

// c^k for a point c, directed bounds via repeated exact-rounded multiplication.
std::pair<double, double> pow_point(double c, int k) {
    double lo = 1.0, hi = 1.0;
    for (int i = 0; i < k; ++i) {
        double nlo, nhi;
        if (c >= 0.0) {
            nlo = mul_down(lo, c);
            nhi = mul_up(hi, c);
        } else {
            nlo = mul_down(hi, c);
            nhi = mul_up(lo, c);
        }
        lo = nlo;
        hi = nhi;
    }
    return {lo, hi};
}

Interval pow_fwd(const Interval& a, int k) {
    if (k == 0) return Interval::point(1.0);
    if (k % 2 == 1) {
        return Interval(pow_point(a.lb(), k).first, pow_point(a.rb(), k).second);
    }
    // even power: range over |a|
    double mlo, mhi;
    if (a.contains(0.0)) {
        mlo = 0.0;
        mhi = std::max(std::fabs(a.lb()), std::fabs(a.rb()));
    } else {
        mlo = std::min(std::fabs(a.lb()), std::fabs(a.rb()));
        mhi = std::max(std::fabs(a.lb()), std::fabs(a.rb()));
    }
    return Interval(pow_point(mlo, k).first, pow_point(mhi, k).second);
}

// k-th root, rounded outward, for y >= 0.
// pow(y, 1.0/k) is only an estimate (1/k is itself rounded), so correct the
// result until powering it back brackets y from the required side
double root_down(double y, int k) {
    if (y <= 0.0) return 0.0;
    if (y == kInf) return kInf;
    double r = std::pow(y, 1.0 / k);
    while (r > 0.0 && pow_point(r, k).second > y) r = next_down(r);   // certify r^k <= y
    while (pow_point(next_up(r), k).second <= y) r = next_up(r);
    return r;
}
double root_up(double y, int k) {
    if (y <= 0.0) return 0.0;
    if (y == kInf) return kInf;
    double r = std::pow(y, 1.0 / k);
    while (pow_point(r, k).first < y) r = next_up(r);                 // certify r^k >= y
    while (r > 0.0 && pow_point(next_down(r), k).first >= y) r = next_down(r);
    return r;
}

Interval sin_fwd(const Interval& a) {
    if (std::isinf(a.lb()) || std::isinf(a.rb()) || sub_up(a.rb(), a.lb()) >= kTwoPiLo)
        return Interval(-1.0, 1.0);
    double slo = libm_down(std::sin(a.lb()));
    double shi = libm_up(std::sin(a.rb()));
    double lo = std::min(slo, libm_down(std::sin(a.rb())));
    double hi = std::max(shi, libm_up(std::sin(a.lb())));
    // critical points at pi/2 + n*pi; include any whose enclosure may touch a
    double n_lo = std::floor((a.lb() - kHalfPiHi) / kPiLo) - 1;
    for (double n = n_lo; n <= n_lo + 4; ++n) {
        double c_lo = add_down(std::min(mul_down(n, kPiLo), mul_down(n, kPiHi)), kHalfPiLo);
        double c_hi = add_up(std::max(mul_up(n, kPiLo), mul_up(n, kPiHi)), kHalfPiHi);
        if (std::fabs(n) > 1e15) return Interval(-1.0, 1.0);  // phase unreliable
        if (c_hi < a.lb() || c_lo > a.rb()) continue;
        long ni = static_cast<long>(n);
        if (((ni % 2) + 2) % 2 == 0) hi = 1.0; else lo = -1.0;
    }
    return Interval(std::max(lo, -1.0), std::min(hi, 1.0));
}

Interval cos_fwd(const Interval& a) {
    if (std::isinf(a.lb()) || std::isinf(a.rb())) return Interval(-1.0, 1.0);
    return sin_fwd(add(a, Interval(kHalfPiLo, kHalfPiHi)));
}

}  // namespace

Interval unary_fn(const UnaryFn& f, const Interval& a) {
    if (a.is_empty()) return Interval::empty();
    switch (f.op) {
        case UnaryOp::Neg:
            return neg(a);
        case UnaryOp::Exp: {
            double lo = a.lb() == -kInf ? 0.0 : std::max(0.0, libm_down(std::exp(a.lb())));
            double hi = a.rb() == kInf ? kInf : libm_up(std::exp(a.rb()));
            return Interval(lo, hi);
        }
        case UnaryOp::Log: {
            Interval d = intersect(a, Interval(0.0, kInf));
            if (d.is_empty() || d.rb() == 0.0) return Interval::empty();   // dom is (0, inf)
            double lo = d.lb() == 0.0 ? -kInf : libm_down(std::log(d.lb()));
            double hi = d.rb() == kInf ? kInf : libm_up(std::log(d.rb()));
            return Interval(lo, hi);
        }
        case UnaryOp::Sqrt: {
            Interval d = intersect(a, Interval(0.0, kInf));
            if (d.is_empty()) return Interval::empty();
            // std::sqrt is correctly rounded; the residual sign via fma turns
            // it into exact directed rounding (exact squares stay exact).
            double slo = std::sqrt(d.lb());
            if (std::fma(slo, slo, -d.lb()) > 0) slo = next_down(slo);
            double shi = d.rb() == kInf ? kInf : std::sqrt(d.rb());
            if (shi != kInf && std::fma(shi, shi, -d.rb()) < 0) shi = next_up(shi);
            return Interval(std::max(0.0, slo), shi);
        }
        case UnaryOp::Sin:
            return sin_fwd(a);
        case UnaryOp::Cos:
            return cos_fwd(a);
        case UnaryOp::Pow:
            return pow_fwd(a, f.k);
    }
    return Interval::entire();
}

namespace {

// Hull of preimage branches (p + 2k*pi) and (pi - p + 2k*pi) clipped to x.
Interval sin_inverse(const Interval& y, const Interval& x) {
    Interval yy = intersect(y, Interval(-1.0, 1.0));
    if (yy.is_empty()) return Interval::empty();
    if (std::isinf(x.lb()) || std::isinf(x.rb())) return x;
    double p_lo = libm_down(std::asin(yy.lb()));
    double p_hi = libm_up(std::asin(yy.rb()));
    // enumerate periods overlapping x, capped at 4
    double k_first = std::floor((x.lb() - kPiHi) / kTwoPiLo);
    double k_last = std::ceil((x.rb() + kPiHi) / kTwoPiLo);
    if (!(k_last - k_first <= 6)) return x;
    Interval acc = Interval::empty();
    int branches = 0;
    for (double k = k_first; k <= k_last; ++k) {
        double off_lo = k >= 0 ? mul_down(k, kTwoPiLo) : mul_down(k, kTwoPiHi);
        double off_hi = k >= 0 ? mul_up(k, kTwoPiHi) : mul_up(k, kTwoPiLo);
        Interval b1(add_down(p_lo, off_lo), add_up(p_hi, off_hi));
        Interval b2(add_down(sub_down(kPiLo, p_hi), off_lo), add_up(sub_up(kPiHi, p_lo), off_hi));
        Interval c1 = intersect(b1, x);
        Interval c2 = intersect(b2, x);
        if (!c1.is_empty()) { acc = hull(acc, c1); ++branches; }
        if (!c2.is_empty()) { acc = hull(acc, c2); ++branches; }
        if (branches > 4) return x;
    }
    return acc;
}

}  // namespace

Interval unary_inverse(const UnaryFn& f, const Interval& y, const Interval& x_hint) {
    if (y.is_empty() || x_hint.is_empty()) return Interval::empty();
    switch (f.op) {
        case UnaryOp::Neg:
            return intersect(neg(y), x_hint);
        case UnaryOp::Exp: {
            Interval yy = intersect(y, Interval(0.0, kInf));
            if (yy.is_empty()) return Interval::empty();
            double lo = yy.lb() <= 0.0 ? -kInf : libm_down(std::log(yy.lb()));
            double hi = yy.rb() == kInf ? kInf : libm_up(std::log(yy.rb()));
            return intersect(Interval(lo, hi), x_hint);
        }
        case UnaryOp::Log: {
            double lo = y.lb() == -kInf ? 0.0 : std::max(0.0, libm_down(std::exp(y.lb())));
            double hi = y.rb() == kInf ? kInf : libm_up(std::exp(y.rb()));
            return intersect(Interval(lo, hi), x_hint);
        }
        case UnaryOp::Sqrt: {
            Interval yy = intersect(y, Interval(0.0, kInf));
            if (yy.is_empty()) return Interval::empty();
            Interval sq = mul(yy, yy);
            return intersect(intersect(sq, Interval(0.0, kInf)), x_hint);
        }
        case UnaryOp::Sin:
            return sin_inverse(y, x_hint);
        case UnaryOp::Cos:
            // cos(x) = sin(x + pi/2)
            {
                Interval shifted = sin_inverse(y, add(x_hint, Interval(kHalfPiLo, kHalfPiHi)));
                if (shifted.is_empty()) return Interval::empty();
                if (shifted.same(add(x_hint, Interval(kHalfPiLo, kHalfPiHi)))) return x_hint;
                return intersect(sub(shifted, Interval(kHalfPiLo, kHalfPiHi)), x_hint);
            }
        case UnaryOp::Pow: {
            if (f.k == 0) return y.contains(1.0) ? x_hint : Interval::empty();
            if (f.k % 2 == 1) {
                double lo = y.lb() == -kInf ? -kInf
                          : (y.lb() < 0 ? -root_up(-y.lb(), f.k) : root_down(y.lb(), f.k));
                double hi = y.rb() == kInf ? kInf
                          : (y.rb() < 0 ? -root_down(-y.rb(), f.k) : root_up(y.rb(), f.k));
                return intersect(Interval(lo, hi), x_hint);
            }
            Interval yy = intersect(y, Interval(0.0, kInf));
            if (yy.is_empty()) return Interval::empty();
            double rlo = root_down(yy.lb(), f.k);
            double rhi = yy.rb() == kInf ? kInf : root_up(yy.rb(), f.k);
            Interval pos = intersect(Interval(rlo, rhi), x_hint);
            Interval negb = intersect(Interval(-rhi, -rlo), x_hint);
            return hull(pos, negb);
        }
    }
    return x_hint;
}

const char* unary_name(const UnaryFn& f) {
    switch (f.op) {
        case UnaryOp::Neg: return "neg";
        case UnaryOp::Exp: return "exp";
        case UnaryOp::Log: return "log";
        case UnaryOp::Sqrt: return "sqrt";
        case UnaryOp::Sin: return "sin";
        case UnaryOp::Cos: return "cos";
        case UnaryOp::Pow: return "pow";
    }
    return "?";
}

// ---- set operations ---------------------------------------------------------

Interval hull(const Interval& a, const Interval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return Interval(std::min(a.lb(), b.lb()), std::max(a.rb(), b.rb()));
}

Interval intersect(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return Interval::empty();
    double lo = std::max(a.lb(), b.lb());
    double hi = std::min(a.rb(), b.rb());
    if (lo > hi) return Interval::empty();
    return Interval(lo, hi);
}

double width(const Interval& a) {
    if (a.is_empty()) return -kInf;
    return sub_up(a.rb(), a.lb());
}

double midpoint(const Interval& a) {
    if (a.is_empty()) return kNan;
    if (a.is_entire()) return 0.0;
    if (a.lb() == -kInf) return a.rb() > 0 ? 0.0 : std::max(2 * a.rb(), -std::numeric_limits<double>::max() / 2);
    if (a.rb() == kInf) return a.lb() < 0 ? 0.0 : std::min(2 * a.lb() + 1, std::numeric_limits<double>::max() / 2);
    double m = a.lb() / 2 + a.rb() / 2;
    if (m < a.lb()) m = a.lb();
    if (m > a.rb()) m = a.rb();
    return m;
}

std::pair<Interval, Interval> split(const Interval& a) {
    if (a.is_empty()) throw std::domain_error("split of empty interval");
    if (a.is_canonical()) throw std::domain_error("cannot refine further: canonical interval");
    double m = midpoint(a);
    if (m <= a.lb()) m = next_up(a.lb());
    if (m >= a.rb()) m = next_down(a.rb());
    return {Interval(a.lb(), m), Interval(m, a.rb())};
}

}  // namespace boxprop
