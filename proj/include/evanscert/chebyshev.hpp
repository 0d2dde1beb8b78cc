#pragma once

// Rigorous Chebyshev interpolation: node and coefficient construction with
// interval arithmetic, analytic error bounds on Bernstein-ellipse stadia,
// Lebesgue-constant lifting of 1D bounds to 2D, and wrapping-safe evaluation
// through the angular substitution x = cos(theta).

#include <cstddef>
#include <utility>
#include <vector>

#include "evanscert/complex_interval.hpp"
#include "evanscert/interval.hpp"

namespace evanscert {

// Interpolant with interval coefficients and a uniform error bound on its
// domain: every f consistent with the construction satisfies
// f(x) in evaluate(x) +- err for all x in [dom_lo, dom_hi].
struct ChebEnclosure {
    std::vector<ComplexInterval> coeffs;
    double dom_lo = -1.0;
    double dom_hi = 1.0;
    RealInterval err;  // [0, bound]

    std::size_t size() const { return coeffs.size(); }
    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// Bernstein-ellipse stadium of parameter rho > 1 around [-1,1]:
// semi-axes (rho + 1/rho)/2 and (rho - 1/rho)/2.  M is a bound on |f| over
// the closed stadium (supplied by the caller, whose analyticity obligation
// it records).
struct Stadium {
    double rho;
    RealInterval eta;     // log(rho)
    RealInterval D_rho;   // distance lower bound (rho + 1/rho)/2 - 1
    RealInterval L_rho;   // length upper bound pi sqrt(rho^2 + rho^-2)
    RealInterval M_rho;   // sup |f| over the stadium

    Stadium(double rho_, RealInterval M) : rho(rho_), M_rho(std::move(M)) {
        if (!(rho_ > 1.0)) throw DomainError("Stadium: rho must exceed 1");
        const RealInterval r = RealInterval::point(rho_);
        const RealInterval rinv = 1.0 / r;
        eta = log(r);
        D_rho = (r + rinv) / 2.0 - 1.0;
        L_rho = pi() * sqrt(sqr(r) + sqr(rinv));
    }

    RealInterval semi_major() const {
        const RealInterval r = RealInterval::point(rho);
        return (r + 1.0 / r) / 2.0;
    }
    RealInterval semi_minor() const {
        const RealInterval r = RealInterval::point(rho);
        return (r - 1.0 / r) / 2.0;
    }
};

namespace cheb {

// Enclosures of the N roots of T_N: cos((j+1/2)pi/N), j = 0..N-1.
inline std::vector<RealInterval> nodes(std::size_t n) {
    if (n < 1) throw DomainError("nodes: N >= 1");
    std::vector<RealInterval> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const RealInterval arg =
            pi() * (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(n));
        out[j] = intersect(cos(arg), RealInterval(-1.0, 1.0));
    }
    return out;
}

inline std::vector<RealInterval> nodes_mapped(std::size_t n, double a, double b) {
    auto t = nodes(n);
    const RealInterval ia = RealInterval::point(a), ib = RealInterval::point(b);
    for (auto& x : t) x = (ia + ib) / 2.0 + x * ((ib - ia) / 2.0);
    return t;
}

// cos(m * theta_k) for m = 0..n-1 at theta_k = (k+1/2) pi / n, via the
// angle-addition recurrence (no large-argument reduction).
inline std::vector<std::vector<RealInterval>> node_cosine_table(std::size_t n) {
    std::vector<std::vector<RealInterval>> tab(n, std::vector<RealInterval>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const RealInterval th =
            pi() * (2.0 * static_cast<double>(k) + 1.0) / (2.0 * static_cast<double>(n));
        const RealInterval c1 = cos(th), s1 = sin(th);
        RealInterval c = RealInterval::point(1.0);
        RealInterval s;
        for (std::size_t m = 0; m < n; ++m) {
            tab[k][m] = c;
            const RealInterval cn = c * c1 - s * s1;
            s = s * c1 + c * s1;
            c = cn;
        }
    }
    return tab;
}

// Interval coefficients from samples at the N nodes (discrete orthogonality):
// a_m = (2 - [m==0]) / N * sum_k cos(m theta_k) f(x_k).
inline ChebEnclosure coefficients(const std::vector<ComplexInterval>& samples, double dom_lo = -1.0,
                                  double dom_hi = 1.0) {
    const std::size_t n = samples.size();
    if (n == 0) throw DomainError("coefficients: empty sample set");
    const auto tab = node_cosine_table(n);
    ChebEnclosure p;
    p.dom_lo = dom_lo;
    p.dom_hi = dom_hi;
    p.coeffs.resize(n);
    for (std::size_t m = 0; m < n; ++m) {
        ComplexInterval acc;
        for (std::size_t k = 0; k < n; ++k) acc += samples[k] * tab[k][m];
        const double scale = (m == 0) ? 1.0 : 2.0;
        p.coeffs[m] = acc * (RealInterval::point(scale) / static_cast<double>(n));
    }
    return p;
}

inline ChebEnclosure coefficients_real(const std::vector<RealInterval>& samples, double dom_lo = -1.0,
                                       double dom_hi = 1.0) {
    std::vector<ComplexInterval> cs(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) cs[i] = ComplexInterval::from_real(samples[i]);
    return coefficients(cs, dom_lo, dom_hi);
}

// Tensor-product coefficients of a 2D sample grid f(x_j, y_k); the grid is
// indexed samples[j][k].
struct Cheb2Enclosure {
    std::vector<std::vector<ComplexInterval>> coeffs;  // [m][n]
    double x_lo = -1.0, x_hi = 1.0;
    double y_lo = -1.0, y_hi = 1.0;
    RealInterval err;
};

inline Cheb2Enclosure coefficients2d(const std::vector<std::vector<ComplexInterval>>& samples,
                                     double x_lo = -1.0, double x_hi = 1.0, double y_lo = -1.0,
                                     double y_hi = 1.0) {
    const std::size_t nx = samples.size();
    if (nx == 0 || samples[0].empty()) throw DomainError("coefficients2d: empty grid");
    const std::size_t ny = samples[0].size();
    // transform along y then along x
    std::vector<std::vector<ComplexInterval>> half(nx);
    for (std::size_t j = 0; j < nx; ++j) half[j] = coefficients(samples[j]).coeffs;
    Cheb2Enclosure out;
    out.x_lo = x_lo;
    out.x_hi = x_hi;
    out.y_lo = y_lo;
    out.y_hi = y_hi;
    out.coeffs.assign(nx, std::vector<ComplexInterval>(ny));
    std::vector<ComplexInterval> col(nx);
    for (std::size_t n = 0; n < ny; ++n) {
        for (std::size_t j = 0; j < nx; ++j) col[j] = half[j][n];
        auto cx = coefficients(col).coeffs;
        for (std::size_t m = 0; m < nx; ++m) out.coeffs[m][n] = cx[m];
    }
    return out;
}

// Interpolation error bound for an f analytic on the stadium with |f| <= M:
// M L (pi D sinh(eta (N+1)))^-1.
inline RealInterval hermite_error_bound(const Stadium& st, std::size_t n_nodes) {
    if (!(st.rho > 1.0)) throw DomainError("hermite_error_bound: rho must exceed 1");
    const RealInterval s = sinh(st.eta * (static_cast<double>(n_nodes) + 1.0));
    return st.M_rho * st.L_rho / (pi() * st.D_rho * s);
}

// Lebesgue constant of interpolation in the T_N roots:
// (2/pi) log N + (2/pi)(gamma + log(8/pi)) + alpha_N, 0 < alpha_N < pi/(72 N^2).
inline RealInterval lebesgue_constant(std::size_t n_nodes) {
    if (n_nodes < 1) throw DomainError("lebesgue_constant: N >= 1");
    const RealInterval n = RealInterval::point(static_cast<double>(n_nodes));
    const RealInterval two_over_pi = 2.0 / pi();
    const RealInterval base =
        two_over_pi * log(n) + two_over_pi * (euler_gamma() + log(8.0 / pi()));
    const RealInterval alpha(0.0, (pi() / (72.0 * sqr(n))).hi());
    return base + alpha;
}

// Slice-uniform 2D bound: err_x + Lambda_{N_x-1} * err_y.
inline RealInterval error_2d(const RealInterval& err_x, const RealInterval& err_y,
                             std::size_t n_x) {
    return err_x + lebesgue_constant(n_x) * err_y;
}

// ---------------------------------------------------------------------------
// Evaluation through x = cos(theta).
//
// Clenshaw recurrences amplify coefficient widths exponentially in the
// degree, so the interpolant is evaluated as sum a_n cos(n theta) with a
// degree-5 Taylor expansion about the midpoint angle and a Lagrange remainder
// |delta|^6/6! * sum n^6 |a_n| covering the angular width.

// Map x in [dom_lo, dom_hi] to t in [-1, 1] outward.
inline RealInterval map_to_unit(const RealInterval& x, double lo, double hi) {
    if (lo == -1.0 && hi == 1.0) return intersect(x, RealInterval(-1.0, 1.0));
    const RealInterval a = RealInterval::point(lo), b = RealInterval::point(hi);
    const RealInterval t = (2.0 * x - a - b) / (b - a);
    return intersect(t, RealInterval(-1.0, 1.0));
}

// Shared evaluation state for one argument interval: trig tables at the
// midpoint angle (computed by direct reduction, whose width stays near one
// ulp per harmonic instead of compounding) plus the delta powers.  One
// context serves every series evaluated on the same argument, which is what
// makes polynomial-matrix sweeps affordable.
class ThetaContext {
  public:
    ThetaContext(const RealInterval& x, double dom_lo, double dom_hi) {
        const RealInterval t = map_to_unit(x, dom_lo, dom_hi);
        if (t.is_empty()) throw DomainError("evaluate_theta: x outside domain");
        const RealInterval theta = arccos(t);
        theta0_ = theta.mid();
        delta_ = theta - RealInterval::point(theta0_);
        dpow_[0] = RealInterval::point(1.0);
        for (std::size_t k = 1; k <= 5; ++k)
            dpow_[k] = dpow_[k - 1] * delta_ / static_cast<double>(k);
        double d6 = 1.0;
        const double dm = delta_.mag();
        for (int q = 0; q < 6; ++q) d6 = rnd::mul(d6, dm).hi;
        d6_over_720_ = rnd::div(d6, 720.0).hi;
        c_.push_back(RealInterval::point(1.0));
        s_.push_back(RealInterval());
    }

    double delta_mag() const { return delta_.mag(); }

    ComplexInterval eval(const std::vector<ComplexInterval>& coeffs) const {
        const std::size_t n = coeffs.size();
        ensure(n);
        ComplexInterval acc;
        double n6sum = 0.0;
        for (std::size_t k = 0; k <= 5; ++k) {
            ComplexInterval term;
            for (std::size_t m = (k == 0) ? 0 : 1; m < n; ++m) {
                double npow = 1.0;
                for (std::size_t q = 0; q < k; ++q) npow *= static_cast<double>(m);
                RealInterval trig;
                switch (k % 4) {
                    case 0: trig = c_[m]; break;
                    case 1: trig = -s_[m]; break;
                    case 2: trig = -c_[m]; break;
                    default: trig = s_[m]; break;
                }
                term += coeffs[m] * (trig * npow);
            }
            acc += term * dpow_[k];
        }
        for (std::size_t m = 1; m < n; ++m) {
            double n6 = 1.0;
            for (int q = 0; q < 6; ++q) n6 = rnd::mul(n6, static_cast<double>(m)).hi;
            n6sum = rnd::add(n6sum, rnd::mul(n6, modulus(coeffs[m]).hi()).hi).hi;
        }
        const double rem = rnd::mul(d6_over_720_, n6sum).hi;
        return inflate(acc, rem);
    }

  private:
    void ensure(std::size_t n) const {
        for (std::size_t m = c_.size(); m < n; ++m) {
            c_.push_back(cos_multiple(static_cast<double>(m), theta0_));
            s_.push_back(sin_multiple(static_cast<double>(m), theta0_));
        }
    }

    double theta0_;
    RealInterval delta_;
    RealInterval dpow_[6];
    double d6_over_720_;
    mutable std::vector<RealInterval> c_;  // cos(m theta0)
    mutable std::vector<RealInterval> s_;  // sin(m theta0)
};

// Enclosure of the polynomial part of p over x (the caller adds p.err).
inline ComplexInterval evaluate_theta(const ChebEnclosure& p, const RealInterval& x) {
    if (p.coeffs.empty()) return {};
    ThetaContext ctx(x, p.dom_lo, p.dom_hi);
    return ctx.eval(p.coeffs);
}

// Enclosure of p over x including the interpolation error band.
inline ComplexInterval evaluate(const ChebEnclosure& p, const RealInterval& x) {
    return inflate(evaluate_theta(p, x), p.err.hi());
}

// Exact derivative coefficient recurrence; degree drops by one.  The error
// band of p does not transport to p', so the result has err = 0 and refers
// to the polynomial part only.
inline ChebEnclosure derivative_series(const ChebEnclosure& p) {
    const std::size_t n = p.size();
    ChebEnclosure d;
    d.dom_lo = p.dom_lo;
    d.dom_hi = p.dom_hi;
    if (n <= 1) {
        d.coeffs.assign(1, ComplexInterval());
        return d;
    }
    std::vector<ComplexInterval> w(n + 1);
    for (std::size_t k = n - 1; k >= 1; --k) {
        w[k - 1] = w[k + 1] + p.coeffs[k] * (2.0 * static_cast<double>(k));
        if (k == 1) break;
    }
    d.coeffs.assign(w.begin(), w.begin() + static_cast<long>(n - 1));
    d.coeffs[0] = d.coeffs[0] * 0.5;
    const RealInterval scale =
        2.0 / (RealInterval::point(p.dom_hi) - RealInterval::point(p.dom_lo));
    for (auto& c : d.coeffs) c = c * scale;
    return d;
}

inline ComplexInterval evaluate_derivative(const ChebEnclosure& p, const RealInterval& x) {
    return evaluate_theta(derivative_series(p), x);
}

// Upper bound sum |a_n| (valid sup bound of the polynomial part on the domain).
inline double coeff_abs_sum(const ChebEnclosure& p) {
    double s = 0.0;
    for (const auto& c : p.coeffs) s = rnd::add(s, modulus(c).hi()).hi;
    return s;
}

}  // namespace cheb
}  // namespace evanscert
