#pragma once

// The spectral contour: boundary of {Re >= 0} within the disc of radius
// R = (sqrt(gamma) + 1/2)^2, traversed in the upper half plane as graded
// segments of the imaginary axis plus a quarter arc.  The lower half is
// covered by conjugation symmetry.  Each piece is parameterized over
// theta in [-1,1]; the maps extend to complex theta for stadium work, and
// the "reflected" maps give the analytic continuation of conj(lambda(theta))
// off the real theta axis.

#include <cmath>
#include <complex>
#include <vector>

#include "evanscert/complex_interval.hpp"

namespace evanscert {

struct ContourPiece {
    enum class Kind { axis, arc };
    Kind kind = Kind::axis;
    double s_lo = 0.0;      // axis: imaginary parts covered
    double s_hi = 0.0;
    RealInterval radius;    // arc: |lambda|
    double q_lo = 0.0;      // arc: angle range [pi q_lo, pi q_hi]
    double q_hi = 0.5;
    int id = 0;

    // lambda(theta) for complex theta (encloses the analytic map).
    ComplexInterval lambda_c(const ComplexInterval& theta) const {
        if (kind == Kind::axis) {
            const RealInterval c = (RealInterval::point(s_lo) + RealInterval::point(s_hi)) / 2.0;
            const RealInterval r = (RealInterval::point(s_hi) - RealInterval::point(s_lo)) / 2.0;
            return mul_i(ComplexInterval::from_real(c) + ComplexInterval::from_real(r) * theta);
        }
        return ComplexInterval::from_real(radius) * exp(mul_i(angle_c(theta)));
    }

    // Analytic continuation of theta |-> conj(lambda(theta)) (agrees with the
    // conjugate for real theta).
    ComplexInterval lambda_refl_c(const ComplexInterval& theta) const {
        if (kind == Kind::axis) {
            const RealInterval c = (RealInterval::point(s_lo) + RealInterval::point(s_hi)) / 2.0;
            const RealInterval r = (RealInterval::point(s_hi) - RealInterval::point(s_lo)) / 2.0;
            return -mul_i(ComplexInterval::from_real(c) + ComplexInterval::from_real(r) * theta);
        }
        return ComplexInterval::from_real(radius) * exp(-mul_i(angle_c(theta)));
    }

    ComplexInterval lambda(const RealInterval& theta) const {
        return lambda_c(ComplexInterval::from_real(theta));
    }
    ComplexInterval lambda_refl(const RealInterval& theta) const {
        return lambda_refl_c(ComplexInterval::from_real(theta));
    }

    std::complex<double> lambda_mid(double theta) const {
        if (kind == Kind::axis)
            return {0.0, (s_lo + s_hi) / 2.0 + (s_hi - s_lo) / 2.0 * theta};
        const double ang = M_PI * (0.5 * (q_lo + q_hi) + 0.5 * (q_hi - q_lo) * theta);
        return radius.mid() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    std::complex<double> lambda_refl_mid(double theta) const { return std::conj(lambda_mid(theta)); }

    double dist_origin() const {
        if (kind == Kind::axis) return s_lo;
        return radius.lo();
    }
    double length() const {
        if (kind == Kind::axis) return s_hi - s_lo;
        return (pi() * radius * (q_hi - q_lo)).hi();
    }

  private:
    ComplexInterval angle_c(const ComplexInterval& theta) const {
        const RealInterval qm = (RealInterval::point(q_lo) + RealInterval::point(q_hi)) / 2.0;
        const RealInterval qh = (RealInterval::point(q_hi) - RealInterval::point(q_lo)) / 2.0;
        return ComplexInterval::from_real(pi()) *
               (ComplexInterval::from_real(qm) + ComplexInterval::from_real(qh) * theta);
    }
};

struct Contour {
    RealInterval gamma;
    RealInterval radius;  // (sqrt(gamma) + 1/2)^2
    std::vector<ContourPiece> pieces;
};

inline RealInterval contour_radius(const RealInterval& gamma) {
    return sqr(sqrt(gamma) + 0.5);
}

// Axis pieces graded geometrically toward lambda = 0 (shortest near the
// origin, about R/500), then one quarter-arc piece.
inline Contour build_contour(const RealInterval& gamma, std::size_t axis_budget) {
    if (axis_budget < 1) throw DomainError("build_contour: need at least one axis piece");
    Contour c;
    c.gamma = gamma;
    c.radius = contour_radius(gamma);
    const double top = c.radius.hi();
    const double lmin = top / 500.0;
    const auto n = static_cast<double>(axis_budget);
    // ratio r with lmin (r^n - 1)/(r - 1) = top
    double r_lo = 1.0 + 1e-12, r_hi = 8.0;
    auto total = [&](double r) { return lmin * (std::pow(r, n) - 1.0) / (r - 1.0); };
    if (total(r_hi) < top) throw DomainError("build_contour: budget too small for grading");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (r_lo + r_hi);
        (total(mid) < top ? r_lo : r_hi) = mid;
    }
    const double ratio = 0.5 * (r_lo + r_hi);
    double s = 0.0, len = lmin;
    for (std::size_t k = 0; k < axis_budget; ++k) {
        ContourPiece p;
        p.kind = ContourPiece::Kind::axis;
        p.s_lo = s;
        p.s_hi = (k + 1 == axis_budget) ? top : std::min(s + len, top);
        p.id = static_cast<int>(k);
        c.pieces.push_back(p);
        s = p.s_hi;
        len *= ratio;
    }
    ContourPiece arc;
    arc.kind = ContourPiece::Kind::arc;
    arc.radius = c.radius;
    arc.id = static_cast<int>(axis_budget);
    c.pieces.push_back(arc);
    return c;
}

// Adaptive refinement: halve a piece (axis by midpoint, arc by angle).
inline std::pair<ContourPiece, ContourPiece> bisect(const ContourPiece& p) {
    ContourPiece a = p, b = p;
    if (p.kind == ContourPiece::Kind::axis) {
        const double mid = 0.5 * (p.s_lo + p.s_hi);
        a.s_hi = mid;
        b.s_lo = mid;
    } else {
        const double mid = 0.5 * (p.q_lo + p.q_hi);
        a.q_hi = mid;
        b.q_lo = mid;
    }
    return {a, b};
}

}  // namespace evanscert
