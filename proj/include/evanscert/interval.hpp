#pragma once

// Real interval arithmetic with outward rounding.  Every operation returns an
// interval containing the exact image of its operands (inclusion isotone).
// Division by an interval containing zero and domain violations of the
// elementary functions raise DomainError; the empty interval is an explicit
// sentinel produced only by intersect().

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "evanscert/rounding.hpp"

namespace evanscert {

class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class EnclosureError : public std::runtime_error {
  public:
    explicit EnclosureError(const std::string& what) : std::runtime_error(what) {}
};

class RealInterval {
  public:
    RealInterval() : lo_(0.0), hi_(0.0) {}
    RealInterval(double lo, double hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw DomainError("RealInterval: lo > hi");
    }
    static RealInterval point(double x) {
        if (std::isnan(x)) throw DomainError("RealInterval: NaN");
        return RealInterval(x, x);
    }
    // Empty sentinel: lo > hi canonical representation.
    static RealInterval empty() {
        RealInterval r;
        r.lo_ = std::numeric_limits<double>::infinity();
        r.hi_ = -std::numeric_limits<double>::infinity();
        return r;
    }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool is_empty() const { return lo_ > hi_; }
    bool is_point() const { return lo_ == hi_; }

    double mid() const {
        check();
        double m = 0.5 * (lo_ + hi_);
        if (!std::isfinite(m)) m = 0.5 * lo_ + 0.5 * hi_;
        if (m < lo_) m = lo_;
        if (m > hi_) m = hi_;
        return m;
    }
    // Width rounded up.
    double width() const {
        check();
        return rnd::sub(hi_, lo_).hi;
    }
    // Radius rounded up (covers both halves from mid()).
    double rad() const {
        check();
        const double m = mid();
        return std::max(rnd::sub(m, lo_).hi, rnd::sub(hi_, m).hi);
    }
    double mag() const {  // sup |x|
        check();
        return std::max(std::fabs(lo_), std::fabs(hi_));
    }
    double mig() const {  // inf |x|
        check();
        if (lo_ > 0.0) return lo_;
        if (hi_ < 0.0) return -hi_;
        return 0.0;
    }

    bool contains(double x) const { return !is_empty() && lo_ <= x && x <= hi_; }
    bool contains(const RealInterval& o) const {
        if (o.is_empty()) return true;
        return !is_empty() && lo_ <= o.lo_ && o.hi_ <= hi_;
    }
    bool is_positive() const { return !is_empty() && lo_ > 0.0; }
    bool is_negative() const { return !is_empty() && hi_ < 0.0; }
    bool is_nonnegative() const { return !is_empty() && lo_ >= 0.0; }

    RealInterval operator-() const {
        check();
        return RealInterval(-hi_, -lo_);
    }

    friend RealInterval operator+(const RealInterval& a, const RealInterval& b) {
        a.check(); b.check();
        return RealInterval(rnd::add(a.lo_, b.lo_).lo, rnd::add(a.hi_, b.hi_).hi);
    }
    friend RealInterval operator-(const RealInterval& a, const RealInterval& b) {
        a.check(); b.check();
        return RealInterval(rnd::sub(a.lo_, b.hi_).lo, rnd::sub(a.hi_, b.lo_).hi);
    }
    friend RealInterval operator*(const RealInterval& a, const RealInterval& b) {
        a.check(); b.check();
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double x : {a.lo_, a.hi_})
            for (double y : {b.lo_, b.hi_}) {
                lo = std::min(lo, prod_dn(x, y));
                hi = std::max(hi, prod_up(x, y));
            }
        return RealInterval(lo, hi);
    }
    friend RealInterval operator/(const RealInterval& a, const RealInterval& b) {
        a.check(); b.check();
        if (b.contains(0.0)) throw DomainError("interval division by zero");
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (double x : {a.lo_, a.hi_})
            for (double y : {b.lo_, b.hi_}) {
                lo = std::min(lo, quot_dn(x, y));
                hi = std::max(hi, quot_up(x, y));
            }
        return RealInterval(lo, hi);
    }
    RealInterval& operator+=(const RealInterval& o) { return *this = *this + o; }
    RealInterval& operator-=(const RealInterval& o) { return *this = *this - o; }
    RealInterval& operator*=(const RealInterval& o) { return *this = *this * o; }
    RealInterval& operator/=(const RealInterval& o) { return *this = *this / o; }

    friend RealInterval operator+(double a, const RealInterval& b) { return RealInterval::point(a) + b; }
    friend RealInterval operator+(const RealInterval& a, double b) { return a + RealInterval::point(b); }
    friend RealInterval operator-(double a, const RealInterval& b) { return RealInterval::point(a) - b; }
    friend RealInterval operator-(const RealInterval& a, double b) { return a - RealInterval::point(b); }
    friend RealInterval operator*(double a, const RealInterval& b) { return RealInterval::point(a) * b; }
    friend RealInterval operator*(const RealInterval& a, double b) { return a * RealInterval::point(b); }
    friend RealInterval operator/(const RealInterval& a, double b) { return a / RealInterval::point(b); }
    friend RealInterval operator/(double a, const RealInterval& b) { return RealInterval::point(a) / b; }

    friend bool operator==(const RealInterval& a, const RealInterval& b) {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

  private:
    void check() const {
        if (is_empty()) throw DomainError("operation on empty interval");
    }
    // Endpoint products with limit conventions for saturated (infinite)
    // endpoints; 0 * inf -> 0 (the finite factor is exactly zero).
    static double prod_dn(double x, double y) {
        if (x == 0.0 || y == 0.0) return 0.0;
        if (std::isinf(x) || std::isinf(y)) {
            const double s = ((x > 0) == (y > 0)) ? 1.0 : -1.0;
            return s * std::numeric_limits<double>::infinity();
        }
        return rnd::mul(x, y).lo;
    }
    static double prod_up(double x, double y) {
        if (x == 0.0 || y == 0.0) return 0.0;
        if (std::isinf(x) || std::isinf(y)) {
            const double s = ((x > 0) == (y > 0)) ? 1.0 : -1.0;
            return s * std::numeric_limits<double>::infinity();
        }
        return rnd::mul(x, y).hi;
    }
    static double quot_dn(double x, double y) {
        if (std::isinf(y)) return (x == 0.0) ? 0.0 : std::copysign(0.0, x / y);
        if (std::isinf(x)) return ((x > 0) == (y > 0)) ? std::numeric_limits<double>::infinity()
                                                       : -std::numeric_limits<double>::infinity();
        return rnd::div(x, y).lo;
    }
    static double quot_up(double x, double y) {
        if (std::isinf(y)) return (x == 0.0) ? 0.0 : std::copysign(0.0, x / y);
        if (std::isinf(x)) return ((x > 0) == (y > 0)) ? std::numeric_limits<double>::infinity()
                                                       : -std::numeric_limits<double>::infinity();
        return rnd::div(x, y).hi;
    }

    double lo_;
    double hi_;
};

// ---------------------------------------------------------------------------
// Lattice utilities.

inline RealInterval hull(const RealInterval& a, const RealInterval& b) {
    if (a.is_empty()) return b;
    if (b.is_empty()) return a;
    return RealInterval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

inline RealInterval intersect(const RealInterval& a, const RealInterval& b) {
    if (a.is_empty() || b.is_empty()) return RealInterval::empty();
    const double lo = std::max(a.lo(), b.lo());
    const double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return RealInterval::empty();
    return RealInterval(lo, hi);
}

inline RealInterval abs(const RealInterval& i) {
    if (i.lo() >= 0.0) return i;
    if (i.hi() <= 0.0) return -i;
    return RealInterval(0.0, i.mag());
}

inline RealInterval sqr(const RealInterval& i) {
    RealInterval a = abs(i);
    return RealInterval(rnd::mul(a.lo(), a.lo()).lo, rnd::mul(a.hi(), a.hi()).hi);
}

inline RealInterval sqrt(const RealInterval& i) {
    if (i.lo() < 0.0) throw DomainError("sqrt of interval below zero");
    return RealInterval(rnd::sqrt(i.lo()).lo, rnd::sqrt(i.hi()).hi);
}

// ---------------------------------------------------------------------------
// Constants (decimal literal bracketed by one ulp on each side).

namespace detail {
inline RealInterval bracket_literal(const char* s) {
    const double d = std::strtod(s, nullptr);
    return RealInterval(rnd::next_down(d), rnd::next_up(d));
}
}  // namespace detail

inline const RealInterval& pi() {
    static const RealInterval v = detail::bracket_literal("3.14159265358979323846264338327950288");
    return v;
}
inline const RealInterval& two_pi() {
    static const RealInterval v = detail::bracket_literal("6.28318530717958647692528676655900577");
    return v;
}
inline const RealInterval& half_pi() {
    static const RealInterval v = detail::bracket_literal("1.57079632679489661923132169163975144");
    return v;
}
inline const RealInterval& ln2() {
    static const RealInterval v = detail::bracket_literal("0.69314718055994530941723212145817657");
    return v;
}
inline const RealInterval& euler_gamma() {
    static const RealInterval v = detail::bracket_literal("0.57721566490153286060651209008240243");
    return v;
}

// ---------------------------------------------------------------------------
// Elementary functions.

namespace detail {

// exp on a narrow interval (endpoints of the public exp); argument reduction
// x = k ln2 + r, |r| <= ln2/2 + slack, then a degree-13 series with an
// explicit geometric remainder.
inline RealInterval exp_kernel(double t) {
    if (t > 709.782) return RealInterval(std::numeric_limits<double>::max(),
                                         std::numeric_limits<double>::infinity());
    if (t < -745.2) return RealInterval(0.0, 5e-324);
    const double k = std::nearbyint(t / 0.6931471805599453);
    const RealInterval r = RealInterval::point(t) - RealInterval::point(k) * ln2();
    RealInterval sum = RealInterval::point(1.0);
    RealInterval term = RealInterval::point(1.0);
    for (int n = 1; n <= 13; ++n) {
        term = term * r / static_cast<double>(n);
        sum += term;
    }
    const double m = r.mag();
    double m14 = 1.0;
    for (int n = 0; n < 14; ++n) m14 = rnd::mul(m14, m).hi;
    double rem = rnd::div(m14, 87178291200.0).hi;  // 14!
    rem = rnd::div(rem, 1.0 - m / 15.0).hi;
    sum += RealInterval(-rem, rem);
    const auto lo = rnd::ldexp({sum.lo(), sum.lo()}, static_cast<int>(k));
    const auto hi = rnd::ldexp({sum.hi(), sum.hi()}, static_cast<int>(k));
    return RealInterval(std::max(lo.lo, 0.0), hi.hi);
}

// log on [sqrt(1/2), sqrt(2)) via atanh series.
inline RealInterval log_kernel(double t) {
    int k = 0;
    double m = std::frexp(t, &k);  // t = m 2^k, m in [0.5, 1)
    if (m < 0.70710678118654752) {
        m *= 2.0;
        --k;
    }
    const RealInterval mi = RealInterval::point(m);
    const RealInterval u = (mi - 1.0) / (mi + 1.0);
    const RealInterval u2 = sqr(u);
    RealInterval sum = u;
    RealInterval up = u;
    for (int n = 3; n <= 21; n += 2) {
        up = up * u2;
        sum += up / static_cast<double>(n);
    }
    const double um = u.mag();
    double u23 = 1.0;
    for (int n = 0; n < 23; ++n) u23 = rnd::mul(u23, um).hi;
    double rem = rnd::div(u23, 23.0).hi;
    rem = rnd::div(rem, (1.0 - rnd::mul(um, um).hi)).hi;
    sum += RealInterval(-rem, rem);
    return 2.0 * sum + RealInterval::point(static_cast<double>(k)) * ln2();
}

// sin and cos on |r| <= pi/4 + slack, alternating series with remainder.
inline RealInterval sin_small(const RealInterval& r) {
    const RealInterval r2 = sqr(r);
    RealInterval term = r;
    RealInterval sum = r;
    double fact = 1.0;
    for (int n = 3; n <= 15; n += 2) {
        fact *= static_cast<double>(n - 1) * static_cast<double>(n);
        term = term * r2;
        const RealInterval c = term / fact;
        sum = (((n - 1) / 2) % 2 == 1) ? sum - c : sum + c;
    }
    double m = r.mag();
    double m17 = 1.0;
    for (int n = 0; n < 17; ++n) m17 = rnd::mul(m17, m).hi;
    const double rem = rnd::div(m17, 3.5568742809600e14).hi;  // 17!
    sum += RealInterval(-rem, rem);
    return intersect(sum, RealInterval(-1.0, 1.0));
}

inline RealInterval cos_small(const RealInterval& r) {
    const RealInterval r2 = sqr(r);
    RealInterval term = RealInterval::point(1.0);
    RealInterval sum = term;
    double fact = 1.0;
    for (int n = 2; n <= 16; n += 2) {
        fact *= static_cast<double>(n - 1) * static_cast<double>(n);
        term = term * r2;
        const RealInterval c = term / fact;
        sum = ((n / 2) % 2 == 1) ? sum - c : sum + c;
    }
    double m = r.mag();
    double m18 = 1.0;
    for (int n = 0; n < 18; ++n) m18 = rnd::mul(m18, m).hi;
    const double rem = rnd::div(m18, 6.402373705728e15).hi;  // 18!
    sum += RealInterval(-rem, rem);
    return intersect(sum, RealInterval(-1.0, 1.0));
}

// cos at a point argument: quadrant reduction by pi/2.
inline RealInterval cos_kernel(double t) {
    if (std::fabs(t) > 1e15) return RealInterval(-1.0, 1.0);
    const double n = std::nearbyint(t / 1.5707963267948966);
    const RealInterval r = RealInterval::point(t) - RealInterval::point(n) * half_pi();
    const long q = ((static_cast<long>(n) % 4) + 4) % 4;
    switch (q) {
        case 0: return cos_small(r);
        case 1: return -sin_small(r);
        case 2: return -cos_small(r);
        default: return sin_small(r);
    }
}

}  // namespace detail

inline RealInterval exp(const RealInterval& x) {
    if (x.is_empty()) throw DomainError("exp of empty interval");
    return RealInterval(detail::exp_kernel(x.lo()).lo(), detail::exp_kernel(x.hi()).hi());
}

inline RealInterval log(const RealInterval& x) {
    if (x.is_empty() || x.lo() <= 0.0) throw DomainError("log needs a positive interval");
    return RealInterval(detail::log_kernel(x.lo()).lo(), detail::log_kernel(x.hi()).hi());
}

inline RealInterval cos(const RealInterval& x) {
    if (x.is_empty()) throw DomainError("cos of empty interval");
    if (x.width() >= two_pi().hi()) return RealInterval(-1.0, 1.0);
    const RealInterval ca = detail::cos_kernel(x.lo());
    const RealInterval cb = detail::cos_kernel(x.hi());
    double lo = std::min(ca.lo(), cb.lo());
    double hi = std::max(ca.hi(), cb.hi());
    // Critical points k*pi inside x force an endpoint of +-1.
    const RealInterval q = x / pi();
    const double kmin = std::ceil(q.lo());
    const double kmax = std::floor(q.hi());
    for (double k = kmin; k <= kmax; k += 1.0) {
        if (std::fabs(std::remainder(k, 2.0)) < 0.5)
            hi = 1.0;
        else
            lo = -1.0;
    }
    return RealInterval(lo, hi);
}

inline RealInterval sin(const RealInterval& x) { return cos(x - half_pi()); }

// cos(m * t) and sin(m * t) for integer m >= 0 and a point angle t, with the
// argument reduced modulo 2 pi through an exact double-double split so the
// result width stays at a few ulp independently of m.
namespace detail {
// 2 pi = kTwoPiHi + kTwoPiLo + [-kTwoPiPad, kTwoPiPad]
constexpr double kTwoPiHi = 6.283185307179586232;
constexpr double kTwoPiLo = 2.4492935982947064e-16;
constexpr double kTwoPiPad = 3.1e-32;

inline RealInterval reduce_multiple_angle(double m, double t) {
    const double q = std::nearbyint(m * t / kTwoPiHi);
    const double p1 = m * t;
    const double e1 = std::fma(m, t, -p1);
    const double p2 = q * kTwoPiHi;
    const double e2 = std::fma(q, kTwoPiHi, -p2);
    const double p3 = q * kTwoPiLo;
    const double e3 = std::fma(q, kTwoPiLo, -p3);
    RealInterval r = RealInterval::point(p1) - RealInterval::point(p2);
    r += RealInterval::point(e1);
    r -= RealInterval::point(e2);
    r -= RealInterval::point(p3);
    r -= RealInterval::point(e3);
    const double pad = rnd::mul(std::fabs(q) + 1.0, kTwoPiPad).hi;
    return r + RealInterval(-pad, pad);
}
}  // namespace detail

inline RealInterval cos_multiple(double m, double t) {
    if (std::fabs(m * t) < 1.0) return cos(RealInterval::point(m) * RealInterval::point(t));
    return cos(detail::reduce_multiple_angle(m, t));
}

inline RealInterval sin_multiple(double m, double t) {
    if (std::fabs(m * t) < 1.0) return sin(RealInterval::point(m) * RealInterval::point(t));
    return sin(detail::reduce_multiple_angle(m, t));
}

inline RealInterval sinh(const RealInterval& x) {
    const RealInterval e = exp(x);
    const RealInterval en = exp(-x);
    return (e - en) / 2.0;
}

inline RealInterval cosh(const RealInterval& x) {
    const RealInterval e = exp(x);
    const RealInterval en = exp(-x);
    RealInterval r = (e + en) / 2.0;
    return intersect(r, RealInterval(1.0, std::numeric_limits<double>::infinity()));
}

inline RealInterval pow_int(const RealInterval& x, long n) {
    if (n == 0) return RealInterval::point(1.0);
    if (n < 0) return RealInterval::point(1.0) / pow_int(x, -n);
    RealInterval base = x;
    RealInterval acc = RealInterval::point(1.0);
    long k = n;
    bool first = true;
    // even powers tighten through |x|
    if (k % 2 == 0) base = abs(x);
    while (k > 0) {
        if (k & 1) acc = first ? base : acc * base, first = false;
        k >>= 1;
        if (k > 0) base = sqr(base);
    }
    return acc;
}

inline RealInterval pow(const RealInterval& x, const RealInterval& y) {
    if (x.lo() <= 0.0) throw DomainError("pow needs a positive base interval");
    return exp(y * log(x));
}

// arccos on [-1,1], monotone decreasing; the double seed is padded on the
// scale ulp(t)/sin(s) and certified against the rigorous cosine, escalating
// geometrically until the directed bound is proven.
namespace detail {
inline double acos_dir(double t, bool up) {
    if (t >= 1.0) return up ? 0.0 : 0.0;
    if (t <= -1.0) return up ? pi().hi() : pi().lo();
    const double s0 = std::acos(t);
    const double sn = std::max(std::sin(s0), 1e-300);
    double delta = std::max(2.0 * (std::fabs(std::cos(s0) - t) + 1e-16 * (std::fabs(t) + 0.25)) / sn,
                            4.0 * std::fabs(s0) * 1e-16);
    for (int iter = 0; iter < 80; ++iter, delta *= 4.0) {
        if (up) {
            const double u = std::min(s0 + delta, pi().hi());
            if (u >= pi().hi()) return pi().hi();
            if (cos_kernel(u).hi() <= t) return u;
        } else {
            const double l = std::max(s0 - delta, 0.0);
            if (l <= 0.0) return 0.0;
            if (cos_kernel(l).lo() >= t) return l;
        }
    }
    throw EnclosureError("acos certification failed to converge");
}
}  // namespace detail

inline RealInterval arccos(const RealInterval& x) {
    if (x.is_empty() || x.lo() < -1.0 || x.hi() > 1.0)
        throw DomainError("arccos needs a subset of [-1,1]");
    return RealInterval(detail::acos_dir(x.hi(), false), detail::acos_dir(x.lo(), true));
}

// ---------------------------------------------------------------------------
// Batch operations over arrays of intervals.

inline void vec_add(std::span<const RealInterval> a, std::span<const RealInterval> b,
                    std::span<RealInterval> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
}
inline void vec_mul(std::span<const RealInterval> a, std::span<const RealInterval> b,
                    std::span<RealInterval> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
}
inline void vec_scale(std::span<const RealInterval> a, const RealInterval& s,
                      std::span<RealInterval> out) {
    for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] * s;
}
inline RealInterval vec_sum(std::span<const RealInterval> a) {
    RealInterval s;
    for (const auto& x : a) s += x;
    return s;
}
inline RealInterval vec_dot(std::span<const RealInterval> a, std::span<const RealInterval> b) {
    RealInterval s;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace evanscert
