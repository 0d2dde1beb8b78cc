#pragma once

// Directed rounding for IEEE double arithmetic without touching the FPU
// rounding mode.  Each primitive returns a [lo, hi] pair that encloses the
// exact result of the operation on its double operands.  The residual of a
// correctly rounded op is recovered with an error-free transformation
// (TwoSum for +/-, an FMA for *, / and sqrt), so the step to the next
// representable value is taken only on the side that needs it.
//
// Assumes round-to-nearest mode (checked by check_fp_environment) and IEEE
// semantics for overflow: a finite-operand op that rounds to +inf has exact
// value > DBL_MAX, so DBL_MAX is a valid finite lower bound.  Residuals are
// not trusted near the subnormal range; there we step both sides.

#include <cfenv>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace evanscert::rnd {

struct Bounds {
    double lo;
    double hi;
};

inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

namespace detail {
// Below this magnitude the FMA residual of a product/quotient may itself be
// inexact (result within a factor ~2^53 of the subnormal range).
constexpr double kResidualSafe = 0x1p-967;

inline Bounds saturate(double r) {
    if (r == std::numeric_limits<double>::infinity())
        return {std::numeric_limits<double>::max(), r};
    if (r == -std::numeric_limits<double>::infinity())
        return {r, -std::numeric_limits<double>::max()};
    throw std::runtime_error("rounding: NaN produced from finite operands");
}

inline Bounds from_residual(double r, double e) {
    if (e > 0.0) return {r, next_up(r)};
    if (e < 0.0) return {next_down(r), r};
    return {r, r};
}
}  // namespace detail

// a + b with both operands finite.
inline Bounds add(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return detail::saturate(s);
    // Knuth TwoSum: exact residual of the rounded sum.
    const double bv = s - a;
    const double av = s - bv;
    const double br = b - bv;
    const double ar = a - av;
    return detail::from_residual(s, ar + br);
}

inline Bounds sub(double a, double b) { return add(a, -b); }

inline Bounds mul(double a, double b) {
    if (a == 0.0 || b == 0.0) return {0.0, 0.0};
    const double p = a * b;
    if (!std::isfinite(p)) return detail::saturate(p);
    if (std::fabs(p) < detail::kResidualSafe)
        return {next_down(p), next_up(p)};
    return detail::from_residual(p, std::fma(a, b, -p));
}

// a / b, b != 0.
inline Bounds div(double a, double b) {
    if (a == 0.0) return {0.0, 0.0};
    const double q = a / b;
    if (!std::isfinite(q)) return detail::saturate(q);
    if (std::fabs(q) < detail::kResidualSafe || std::fabs(a) < detail::kResidualSafe)
        return {next_down(q), next_up(q)};
    // a/b - q = (a - q*b)/b; only the sign of the correction is needed.
    const double r = std::fma(q, b, -a);
    const double corr = (b > 0.0) ? -r : r;
    return detail::from_residual(q, corr);
}

// sqrt(x), x >= 0.
inline Bounds sqrt(double x) {
    const double s = std::sqrt(x);
    if (!std::isfinite(s)) return detail::saturate(s);
    if (x < detail::kResidualSafe) {
        if (x == 0.0) return {0.0, 0.0};
        return {next_down(s), next_up(s)};
    }
    const double r = std::fma(s, s, -x);  // s^2 - x, exact
    if (r > 0.0) return {next_down(s), s};
    if (r < 0.0) return {s, next_up(s)};
    return {s, s};
}

// 2^k * x with exact scaling, directed at the representable boundary.
inline Bounds ldexp(Bounds b, int k) {
    double lo = std::ldexp(b.lo, k);
    double hi = std::ldexp(b.hi, k);
    // ldexp is exact unless it over/underflows; pad when the round trip fails.
    if (std::ldexp(lo, -k) != b.lo) lo = next_down(lo);
    if (std::ldexp(hi, -k) != b.hi) hi = next_up(hi);
    if (hi == std::numeric_limits<double>::infinity())
        return {lo, hi};
    return {lo, hi};
}

// The software policy relies on round-to-nearest; call once at startup.
inline void check_fp_environment() {
    if (std::fegetround() != FE_TONEAREST)
        throw std::runtime_error("FPU must be in round-to-nearest mode");
}

}  // namespace evanscert::rnd
