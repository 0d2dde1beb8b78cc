#pragma once

// Bivariate Chebyshev polynomials with interval coefficients, exact in
// degree: products, determinants and adjugates never truncate, so the only
// width growth is arithmetic rounding.  Index [i][j] holds the coefficient
// of T_i(xhat) T_j(theta) on [x_lo, x_hi] x [-1, 1].

#include <array>
#include <cstddef>
#include <vector>

#include "evanscert/chebyshev.hpp"

namespace evanscert {

struct ChebPoly2 {
    std::size_t nx = 1, nt = 1;  // coefficient counts (degree + 1)
    std::vector<ComplexInterval> c;
    double x_lo = -1.0, x_hi = 1.0;

    ChebPoly2() : c(1) {}
    ChebPoly2(std::size_t nx_, std::size_t nt_, double xlo, double xhi)
        : nx(nx_), nt(nt_), c(nx_ * nt_), x_lo(xlo), x_hi(xhi) {}

    ComplexInterval& at(std::size_t i, std::size_t j) { return c[i * nt + j]; }
    const ComplexInterval& at(std::size_t i, std::size_t j) const { return c[i * nt + j]; }

    static ChebPoly2 constant(const ComplexInterval& v, double xlo, double xhi) {
        ChebPoly2 p(1, 1, xlo, xhi);
        p.at(0, 0) = v;
        return p;
    }
    // Embed a series in x only (theta-degree 0) or theta only (x-degree 0).
    static ChebPoly2 from_x_series(const ChebEnclosure& s) {
        ChebPoly2 p(s.size(), 1, s.dom_lo, s.dom_hi);
        for (std::size_t i = 0; i < s.size(); ++i) p.at(i, 0) = s.coeffs[i];
        return p;
    }
    static ChebPoly2 from_theta_series(const ChebEnclosure& s, double xlo, double xhi) {
        ChebPoly2 p(1, s.size(), xlo, xhi);
        for (std::size_t j = 0; j < s.size(); ++j) p.at(0, j) = s.coeffs[j];
        return p;
    }

    std::size_t x_degree() const { return nx - 1; }
    std::size_t theta_degree() const { return nt - 1; }
};

namespace chebpoly {

inline void check_domains(const ChebPoly2& a, const ChebPoly2& b) {
    if (a.x_lo != b.x_lo || a.x_hi != b.x_hi)
        throw DomainError("ChebPoly2: mismatched x-domains");
}

inline ChebPoly2 add(const ChebPoly2& a, const ChebPoly2& b) {
    check_domains(a, b);
    ChebPoly2 r(std::max(a.nx, b.nx), std::max(a.nt, b.nt), a.x_lo, a.x_hi);
    for (std::size_t i = 0; i < a.nx; ++i)
        for (std::size_t j = 0; j < a.nt; ++j) r.at(i, j) += a.at(i, j);
    for (std::size_t i = 0; i < b.nx; ++i)
        for (std::size_t j = 0; j < b.nt; ++j) r.at(i, j) += b.at(i, j);
    return r;
}

inline ChebPoly2 sub(const ChebPoly2& a, const ChebPoly2& b) {
    check_domains(a, b);
    ChebPoly2 r(std::max(a.nx, b.nx), std::max(a.nt, b.nt), a.x_lo, a.x_hi);
    for (std::size_t i = 0; i < a.nx; ++i)
        for (std::size_t j = 0; j < a.nt; ++j) r.at(i, j) += a.at(i, j);
    for (std::size_t i = 0; i < b.nx; ++i)
        for (std::size_t j = 0; j < b.nt; ++j) r.at(i, j) -= b.at(i, j);
    return r;
}

inline ChebPoly2 neg(const ChebPoly2& a) {
    ChebPoly2 r = a;
    for (auto& z : r.c) z = -z;
    return r;
}

inline ChebPoly2 scale(const ChebPoly2& a, const ComplexInterval& s) {
    ChebPoly2 r = a;
    for (auto& z : r.c) z = z * s;
    return r;
}

// Exact-degree product: T_i T_k = (T_{i+k} + T_{|i-k|})/2 in each variable,
// so each coefficient pair feeds four cells with weight 1/4.
inline ChebPoly2 mul(const ChebPoly2& a, const ChebPoly2& b) {
    check_domains(a, b);
    ChebPoly2 r(a.nx + b.nx - 1, a.nt + b.nt - 1, a.x_lo, a.x_hi);
    for (std::size_t i = 0; i < a.nx; ++i)
        for (std::size_t j = 0; j < a.nt; ++j) {
            const ComplexInterval& aij = a.at(i, j);
            if (aij.re.lo() == 0 && aij.re.hi() == 0 && aij.im.lo() == 0 && aij.im.hi() == 0)
                continue;
            for (std::size_t k = 0; k < b.nx; ++k) {
                const std::size_t xs = i + k;
                const std::size_t xd = (i >= k) ? i - k : k - i;
                for (std::size_t l = 0; l < b.nt; ++l) {
                    const ComplexInterval p = (aij * b.at(k, l)) * 0.25;
                    const std::size_t ts = j + l;
                    const std::size_t td = (j >= l) ? j - l : l - j;
                    r.at(xs, ts) += p;
                    r.at(xs, td) += p;
                    r.at(xd, ts) += p;
                    r.at(xd, td) += p;
                }
            }
        }
    return r;
}

// Partial derivative in x (the mapped variable carries 2/(x_hi - x_lo)).
inline ChebPoly2 dx(const ChebPoly2& a) {
    ChebPoly2 r(a.nx > 1 ? a.nx - 1 : 1, a.nt, a.x_lo, a.x_hi);
    const RealInterval sc =
        2.0 / (RealInterval::point(a.x_hi) - RealInterval::point(a.x_lo));
    for (std::size_t j = 0; j < a.nt; ++j) {
        std::vector<ComplexInterval> w(a.nx + 1);
        for (std::size_t k = a.nx - 1; k >= 1; --k) {
            w[k - 1] = w[k + 1] + a.at(k, j) * (2.0 * static_cast<double>(k));
            if (k == 1) break;
        }
        if (a.nx > 1) {
            w[0] = w[0] * 0.5;
            for (std::size_t i = 0; i + 1 < a.nx; ++i) r.at(i, j) = w[i] * sc;
        }
    }
    return r;
}

// Exact endpoint slice in x: T_i(+-1) = (+-1)^i collapses rows to a theta
// series.
inline ChebEnclosure slice_at_end(const ChebPoly2& a, bool upper) {
    ChebEnclosure s;
    s.dom_lo = -1.0;
    s.dom_hi = 1.0;
    s.coeffs.assign(a.nt, ComplexInterval());
    for (std::size_t j = 0; j < a.nt; ++j) {
        ComplexInterval acc;
        for (std::size_t i = 0; i < a.nx; ++i) {
            const bool negate = !upper && (i % 2 == 1);
            acc += negate ? -a.at(i, j) : a.at(i, j);
        }
        s.coeffs[j] = acc;
    }
    return s;
}

// Collapse the theta direction over a fixed theta interval, leaving an x
// series that can then be swept over many x cells with one shared context.
inline ChebEnclosure theta_reduce(const ChebPoly2& a, const cheb::ThetaContext& tctx) {
    ChebEnclosure xs;
    xs.dom_lo = a.x_lo;
    xs.dom_hi = a.x_hi;
    xs.coeffs.resize(a.nx);
    std::vector<ComplexInterval> row(a.nt);
    for (std::size_t i = 0; i < a.nx; ++i) {
        for (std::size_t j = 0; j < a.nt; ++j) row[j] = a.at(i, j);
        xs.coeffs[i] = tctx.eval(row);
    }
    return xs;
}

// Enclosure over a rectangle (X, Theta).
inline ComplexInterval evaluate2(const ChebPoly2& a, const RealInterval& x,
                                 const RealInterval& theta) {
    cheb::ThetaContext tctx(theta, -1.0, 1.0);
    return cheb::evaluate_theta(theta_reduce(a, tctx), x);
}

// Sum of coefficient magnitudes: sup bound of |a| on the (real) domain.
inline double coeff_abs_sum(const ChebPoly2& a) {
    double s = 0.0;
    for (const auto& z : a.c) s = rnd::add(s, modulus(z).hi()).hi;
    return s;
}

}  // namespace chebpoly

// 3x3 matrix of bivariate Chebyshev polynomials.
struct ChebMat3 {
    std::array<ChebPoly2, 9> e;

    ChebPoly2& at(std::size_t i, std::size_t j) { return e[i * 3 + j]; }
    const ChebPoly2& at(std::size_t i, std::size_t j) const { return e[i * 3 + j]; }

    static ChebMat3 identity(double xlo, double xhi) {
        ChebMat3 m;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                m.at(i, j) = ChebPoly2::constant(
                    i == j ? ComplexInterval::point(1.0) : ComplexInterval(), xlo, xhi);
        return m;
    }
};

namespace chebpoly {

inline ChebMat3 add(const ChebMat3& a, const ChebMat3& b) {
    ChebMat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.e[k] = add(a.e[k], b.e[k]);
    return r;
}

inline ChebMat3 sub(const ChebMat3& a, const ChebMat3& b) {
    ChebMat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.e[k] = sub(a.e[k], b.e[k]);
    return r;
}

inline ChebMat3 mul(const ChebMat3& a, const ChebMat3& b) {
    ChebMat3 r;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            ChebPoly2 acc = mul(a.at(i, 0), b.at(0, j));
            acc = add(acc, mul(a.at(i, 1), b.at(1, j)));
            acc = add(acc, mul(a.at(i, 2), b.at(2, j)));
            r.at(i, j) = std::move(acc);
        }
    return r;
}

inline ChebMat3 dx(const ChebMat3& a) {
    ChebMat3 r;
    for (std::size_t k = 0; k < 9; ++k) r.e[k] = dx(a.e[k]);
    return r;
}

// 2x2 minor helper used by both the determinant and the adjugate.
inline ChebPoly2 minor2(const ChebMat3& m, std::size_t i, std::size_t j) {
    const std::size_t r0 = (i == 0) ? 1 : 0, r1 = (i == 2) ? 1 : 2;
    const std::size_t c0 = (j == 0) ? 1 : 0, c1 = (j == 2) ? 1 : 2;
    return sub(mul(m.at(r0, c0), m.at(r1, c1)), mul(m.at(r0, c1), m.at(r1, c0)));
}

// Exact-degree determinant: inputs of degree (p, q) give degree (3p, 3q).
inline ChebPoly2 poly_det3(const ChebMat3& m) {
    // minor2 carries no sign; cofactor signs applied explicitly
    ChebPoly2 d = mul(m.at(0, 0), minor2(m, 0, 0));
    d = sub(d, mul(m.at(0, 1), minor2(m, 0, 1)));
    d = add(d, mul(m.at(0, 2), minor2(m, 0, 2)));
    return d;
}

// Exact-degree adjugate: adj(m)(j,i) = (-1)^{i+j} minor_{ij}.
inline ChebMat3 poly_adjugate3(const ChebMat3& m) {
    ChebMat3 a;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            ChebPoly2 mm = minor2(m, i, j);
            a.at(j, i) = ((i + j) % 2 == 0) ? std::move(mm) : neg(mm);
        }
    return a;
}

// Entrywise coefficient-magnitude sums, a 3x3 nonnegative bound matrix.
inline std::array<double, 9> coeff_abs_sums(const ChebMat3& m) {
    std::array<double, 9> out{};
    for (std::size_t k = 0; k < 9; ++k) out[k] = coeff_abs_sum(m.e[k]);
    return out;
}

// Frobenius norm of a 3x3 nonnegative bound matrix (dominates the l2 norm).
inline double frobenius(const std::array<double, 9>& m) {
    double s = 0.0;
    for (double v : m) s = rnd::add(s, rnd::mul(v, v).hi).hi;
    return rnd::sqrt(s).hi;
}

}  // namespace chebpoly
}  // namespace evanscert
