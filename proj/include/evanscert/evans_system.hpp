#pragma once

// The eigenvalue-ODE data: the coefficient matrix A(x, lambda), its limits,
// the adjoint form, characteristic cubics, and certified enclosures of the
// decay/growth eigenvalues via a complex Krawczyk operator.
//
//   A(x,lambda) = [[0, lambda, 1], [0, 0, 1],
//                  [lambda v, lambda v, f(v) - lambda]],   v = profile value,
// with det(mu I - A) = mu^3 - (f - lambda) mu^2 - 2 lambda v mu - lambda^2 v.
//
// Left of the wave the relevant root mu_- of the limit matrix (v = 1) has
// positive real part.  On the right the adjoint system is used; in the
// reflected spectral parameter m = conj(lambda) the relevant quantity is the
// root nu of the v = v_plus cubic with positive real part, rescaled as
// g = nu / m which continues analytically through m = 0:
//   m g^3 - (f_plus - m) g^2 - 2 v_plus g - v_plus = 0,
// and mu_plus = -m g.

#include <array>
#include <complex>
#include <vector>

#include "evanscert/complex_interval.hpp"
#include "evanscert/interval_matrix.hpp"
#include "evanscert/profile.hpp"

namespace evanscert {

struct SpectralParams {
    RealInterval gamma;
    RealInterval vplus;
    RealInterval a;
    RealInterval radius;   // (sqrt(gamma)+1/2)^2
    RealInterval f_minus;  // f(1) = 1 - a gamma
    RealInterval f_plus;   // f(v+)

    SpectralParams() = default;
    SpectralParams(const RealInterval& g, const RealInterval& vp) : gamma(g), vplus(vp) {
        a = compute_a(gamma, vplus);
        radius = sqr(sqrt(gamma) + 0.5);
        f_minus = 1.0 - a * gamma;
        f_plus = profile_f(vplus, gamma, a);
    }
};

inline IntervalMatrix assemble_A(const RealInterval& v, const ComplexInterval& lambda,
                                 const SpectralParams& sp) {
    if (!(v.lo() > 0.0)) throw DomainError("assemble_A: v must be positive");
    IntervalMatrix m(3, 3);
    const ComplexInterval one = ComplexInterval::point(1.0);
    const ComplexInterval lv = lambda * ComplexInterval::from_real(v);
    m(0, 1) = lambda;
    m(0, 2) = one;
    m(1, 2) = one;
    m(2, 0) = lv;
    m(2, 1) = lv;
    m(2, 2) = ComplexInterval::from_real(profile_f(v, sp.gamma, sp.a)) - lambda;
    return m;
}

// -A(x,lambda)^* - mu_plus I (the system integrated on the right side).
inline IntervalMatrix assemble_adjoint(const RealInterval& v, const ComplexInterval& lambda,
                                       const ComplexInterval& mu_plus, const SpectralParams& sp) {
    const IntervalMatrix a = assemble_A(v, lambda, sp);
    IntervalMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) m(i, j) = -conj(a(j, i));
    for (std::size_t i = 0; i < 3; ++i) m(i, i) -= mu_plus;
    return m;
}

// ---------------------------------------------------------------------------
// Cubic polynomials with interval coefficients.

struct Cubic {
    std::array<ComplexInterval, 4> c;  // c[k] multiplies z^k

    ComplexInterval eval(const ComplexInterval& z) const {
        return ((c[3] * z + c[2]) * z + c[1]) * z + c[0];
    }
    ComplexInterval deriv(const ComplexInterval& z) const {
        return (c[3] * (3.0 * z) + c[2] * 2.0) * z + c[1];
    }
    std::array<std::complex<double>, 4> mid() const {
        return {c[0].mid(), c[1].mid(), c[2].mid(), c[3].mid()};
    }
};

// det(mu I - A_limit(lambda)) for limit state v_end with f_end = f(v_end).
inline Cubic limit_charpoly(const ComplexInterval& lambda, const RealInterval& v_end,
                            const RealInterval& f_end) {
    Cubic p;
    p.c[3] = ComplexInterval::point(1.0);
    p.c[2] = lambda - ComplexInterval::from_real(f_end);
    p.c[1] = lambda * ComplexInterval::from_real(-2.0 * v_end);
    p.c[0] = sqr(lambda) * ComplexInterval::from_real(-v_end);
    return p;
}

// Rescaled right-side cubic in g = nu/m at reflected parameter m:
// m g^3 - (f_plus - m) g^2 - 2 v_plus g - v_plus.
inline Cubic rescaled_right_cubic(const ComplexInterval& m, const SpectralParams& sp) {
    Cubic q;
    q.c[3] = m;
    q.c[2] = m - ComplexInterval::from_real(sp.f_plus);
    q.c[1] = ComplexInterval::from_real(-2.0 * sp.vplus);
    q.c[0] = ComplexInterval::from_real(-sp.vplus);
    return q;
}

// ---------------------------------------------------------------------------
// Double-precision cubic roots (seeding only; rigor never depends on them).

inline std::vector<std::complex<double>> cubic_roots_mid(const std::array<std::complex<double>, 4>& c) {
    using C = std::complex<double>;
    // Durand-Kerner on the monic normalization; degenerate leading
    // coefficients fall back to the quadratic.
    if (std::abs(c[3]) < 1e-14 * (std::abs(c[2]) + std::abs(c[1]) + std::abs(c[0]))) {
        const C disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
        return {(-c[1] + disc) / (2.0 * c[2]), (-c[1] - disc) / (2.0 * c[2])};
    }
    const C b2 = c[2] / c[3], b1 = c[1] / c[3], b0 = c[0] / c[3];
    auto f = [&](C z) { return ((z + b2) * z + b1) * z + b0; };
    std::array<C, 3> r = {C(0.4, 0.9), C(-0.6, 0.6) * C(0.4, 0.9), C(0.1, -1.1)};
    const double scale = 1.0 + std::max({std::abs(b2), std::abs(b1), std::abs(b0)});
    for (auto& z : r) z *= scale;
    for (int it = 0; it < 120; ++it) {
        double move = 0.0;
        for (int i = 0; i < 3; ++i) {
            C den = 1.0;
            for (int j = 0; j < 3; ++j)
                if (j != i) den *= (r[i] - r[j]);
            const C d = f(r[i]) / den;
            r[i] -= d;
            move = std::max(move, std::abs(d));
        }
        if (move < 1e-15 * scale) break;
    }
    return {r[0], r[1], r[2]};
}

// ---------------------------------------------------------------------------
// Complex Krawczyk certification: if K(X) lies in the interior of X and the
// contraction factor sup |1 - y p'(X)| is below one, then for every fixed
// parameter selection the cubic has exactly one (simple) root in X.

struct CertifiedRoot {
    bool ok = false;
    ComplexInterval box;
    double kappa = 1.0;
};

inline ComplexInterval centered_box(std::complex<double> z, double r) {
    return {RealInterval(z.real() - r, z.real() + r), RealInterval(z.imag() - r, z.imag() + r)};
}

inline bool contained_in_interior(const ComplexInterval& inner, const ComplexInterval& outer) {
    return inner.re.lo() > outer.re.lo() && inner.re.hi() < outer.re.hi() &&
           inner.im.lo() > outer.im.lo() && inner.im.hi() < outer.im.hi();
}

inline CertifiedRoot krawczyk_root(const Cubic& p, std::complex<double> seed, double r0) {
    CertifiedRoot out;
    const std::complex<double> pd = ((3.0 * p.c[3].mid() * seed + 2.0 * p.c[2].mid()) * seed) + p.c[1].mid();
    if (std::abs(pd) < 1e-300) return out;
    const ComplexInterval y = ComplexInterval::point(1.0 / pd);
    const ComplexInterval z0 = ComplexInterval::point(seed);
    const ComplexInterval one = ComplexInterval::point(1.0);
    double r = r0;
    for (int attempt = 0; attempt < 24; ++attempt, r *= 3.0) {
        ComplexInterval X = centered_box(seed, r);
        bool certified = false;
        for (int pass = 0; pass < 4; ++pass) {
            const ComplexInterval K =
                z0 - y * p.eval(z0) + (one - y * p.deriv(X)) * (X - z0);
            const double kappa = modulus(one - y * p.deriv(X)).hi();
            if (kappa < 1.0 && contained_in_interior(K, X)) {
                certified = true;
                out.kappa = kappa;
                // tighten: the root lies in K for every parameter selection
                X = ComplexInterval(intersect(K.re, X.re), intersect(K.im, X.im));
            } else {
                break;
            }
        }
        if (certified) {
            out.ok = true;
            out.box = X;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise certified eigenvalue enclosures (spec-level operations; the
// per-piece interpolants in mu_interp.hpp reuse the same pieces).

enum class Side { left, right };

// mu_-(lambda): root of the v=1 limit cubic with positive real part.
inline ComplexInterval mu_minus_enclosure(const ComplexInterval& lambda, const SpectralParams& sp) {
    const Cubic p = limit_charpoly(lambda, RealInterval::point(1.0), sp.f_minus);
    const auto roots = cubic_roots_mid(p.mid());
    std::complex<double> seed = roots[0];
    for (const auto& r : roots)
        if (r.real() > seed.real()) seed = r;
    const CertifiedRoot cr = krawczyk_root(p, seed, std::max(1e-12, 1e-9 * std::abs(seed)));
    if (!cr.ok) throw EnclosureError("mu_- certification failed; subdivide the piece");
    if (!(cr.box.re.lo() > 0.0))
        throw EnclosureError("mu_-: certified box does not have positive real part");
    return cr.box;
}

// g(m) enclosure: the rescaled right root with Re(-m g) < 0, and mu_+ = -m g.
inline ComplexInterval right_g_enclosure(const ComplexInterval& m, const SpectralParams& sp) {
    const Cubic q = rescaled_right_cubic(m, sp);
    const auto roots = cubic_roots_mid(q.mid());
    // the decay root: Re(-m g) < 0, i.e. Re(m g) > 0; prefer the decisive one
    std::complex<double> seed = roots[0];
    double best = -1e300;
    for (const auto& r : roots) {
        const double s = (m.mid() * r).real();
        if (s > best) {
            best = s;
            seed = r;
        }
    }
    const CertifiedRoot cr = krawczyk_root(q, seed, std::max(1e-12, 1e-9 * std::abs(seed) + 1e-12));
    if (!cr.ok) throw EnclosureError("right g certification failed; subdivide the piece");
    return cr.box;
}

inline ComplexInterval mu_plus_enclosure(const ComplexInterval& lambda, const SpectralParams& sp) {
    const ComplexInterval m = conj(lambda);
    return -(m * right_g_enclosure(m, sp));
}

inline ComplexInterval mu_enclosure(Side side, const ComplexInterval& lambda,
                                    const SpectralParams& sp) {
    return side == Side::left ? mu_minus_enclosure(lambda, sp) : mu_plus_enclosure(lambda, sp);
}

// All three certified roots (disjoint boxes), for eigenvalue-count checks.
inline std::vector<ComplexInterval> certified_spectrum(const Cubic& p) {
    const auto seeds = cubic_roots_mid(p.mid());
    std::vector<ComplexInterval> boxes;
    for (const auto& s : seeds) {
        const CertifiedRoot cr = krawczyk_root(p, s, std::max(1e-12, 1e-9 * std::abs(s)));
        if (!cr.ok) throw EnclosureError("spectrum certification failed");
        boxes.push_back(cr.box);
    }
    for (std::size_t i = 0; i < boxes.size(); ++i)
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
            const bool disjoint = intersect(boxes[i].re, boxes[j].re).is_empty() ||
                                  intersect(boxes[i].im, boxes[j].im).is_empty();
            if (!disjoint) throw EnclosureError("spectrum boxes overlap");
        }
    return boxes;
}

// ---------------------------------------------------------------------------
// Analytically varying boundary eigenvectors.

struct InitVectors {
    std::array<ComplexInterval, 3> v_minus;  // (lambda + mu_-, mu_-, mu_-^2)
    std::array<ComplexInterval, 3> v_plus;   // (g, g + 1, g^2 / v+)
};

inline std::array<ComplexInterval, 3> init_vector_minus(const ComplexInterval& lambda,
                                                        const ComplexInterval& mu_m) {
    return {lambda + mu_m, mu_m, sqr(mu_m)};
}

inline std::array<ComplexInterval, 3> init_vector_plus_from_g(const ComplexInterval& g,
                                                              const RealInterval& vplus) {
    return {g, g + ComplexInterval::point(1.0), sqr(g) / ComplexInterval::from_real(vplus)};
}

inline InitVectors init_vectors(const ComplexInterval& lambda, const ComplexInterval& mu_m,
                                const ComplexInterval& g_right, const SpectralParams& sp) {
    if (modulus(lambda).contains(0.0))
        throw DomainError("init_vectors: lambda enclosure touches zero");
    return {init_vector_minus(lambda, mu_m), init_vector_plus_from_g(g_right, sp.vplus)};
}

}  // namespace evanscert
