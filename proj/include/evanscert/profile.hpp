#pragma once

// Validated wave profile: interval Taylor stepping with comparison-principle
// tightening on [-L, L], global derivative enclosures over [v_plus, 1], and
// interpolation error bounds for the profile and for f on x-subintervals.
//
// The wave satisfies v' = v (v - 1 + a (v^-gamma - 1)) with
// a = v_plus^gamma (1 - v_plus) / (1 - v_plus^gamma), decreasing from 1 at
// -inf to v_plus at +inf, anchored here by v(0) = (1 + v_plus)/2.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "evanscert/chebyshev.hpp"
#include "evanscert/decimal.hpp"
#include "evanscert/taylor_series.hpp"

namespace evanscert {

// a = v+^gamma (1 - v+) / (1 - v+^gamma)
inline RealInterval compute_a(const RealInterval& gamma, const RealInterval& vplus) {
    if (!(vplus.lo() > 0.0 && vplus.hi() < 1.0)) throw DomainError("compute_a: v+ must lie in (0,1)");
    const RealInterval vg = pow(vplus, gamma);
    return vg * (1.0 - vplus) / (1.0 - vg);
}

struct ProfileParams {
    RealInterval gamma;
    RealInterval vplus;
    RealInterval a;
    double L = 10.0;
    double h = 0.125;
    std::size_t taylor_order = 18;
    std::size_t partition = 256;

    ProfileParams() = default;
    ProfileParams(RealInterval g, RealInterval vp, double L_ = 10.0, double h_ = 0.125,
                  std::size_t order = 18, std::size_t part = 256)
        : gamma(std::move(g)), vplus(std::move(vp)), L(L_), h(h_), taylor_order(order),
          partition(part) {
        a = compute_a(gamma, vplus);
        // Rankine-Hugoniot residual must vanish at both rest states.
        const RealInterval r_plus = vplus - 1.0 + a * (pow(vplus, -gamma) - 1.0);
        if (!r_plus.contains(0.0))
            throw EnclosureError("profile params: rest-state residual excludes zero");
        if (!(L > 0.0 && h > 0.0) || taylor_order < 2 || partition < 1)
            throw DomainError("profile params: bad discretization");
        const double steps = L / h;
        if (std::fabs(steps - std::nearbyint(steps)) > 1e-9)
            throw DomainError("profile params: h must divide L");
    }

    std::size_t steps_per_side() const { return static_cast<std::size_t>(std::nearbyint(L / h)); }
};

// f(v) = v - v^-gamma h(v) with h(v) = -v^(gamma+1) + a(gamma-1) + (a+1)v^gamma,
// algebraically f(v) = 2v - (a+1) - a(gamma-1) v^-gamma (the tight form).
inline RealInterval profile_f(const RealInterval& v, const RealInterval& gamma,
                              const RealInterval& a) {
    return 2.0 * v - (a + 1.0) - a * (gamma - 1.0) * pow(v, -gamma);
}

inline RealInterval profile_f_prime(const RealInterval& v, const RealInterval& gamma,
                                    const RealInterval& a) {
    return 2.0 + a * gamma * (gamma - 1.0) * pow(v, -gamma - 1.0);
}

// v' = v (v - 1 + a (v^-gamma - 1))
inline RealInterval profile_rhs(const RealInterval& v, const RealInterval& gamma,
                                const RealInterval& a) {
    if (!(v.lo() > 0.0)) throw DomainError("profile_rhs: v must stay positive");
    return v * (v - 1.0 + a * (pow(v, -gamma) - 1.0));
}

namespace detail_profile {

// Taylor coefficients of the solution through v(0) = v0, and of f(v(x)).
// Driven by the expression tree of the right-hand side
// G(v) = v^2 - v + a v^(1-gamma) - a v via series recurrences.
struct ProfileSeries {
    TaylorSeries v;  // v_k = v^(k)(x)/k!
    TaylorSeries f;  // Taylor coefficients of f(v(x))
};

inline ProfileSeries expand(const RealInterval& v0, const ProfileParams& p, std::size_t order) {
    TaylorSeries v(order);
    v.c[0] = v0;
    TaylorSeries w(order);  // v^(1-gamma), rebuilt incrementally
    const RealInterval alpha = 1.0 - p.gamma;
    w.c[0] = pow(v0, alpha);
    for (std::size_t k = 0; k + 1 <= order; ++k) {
        // G_k = (v*v)_k - v_k + a w_k - a v_k
        RealInterval vv;
        for (std::size_t j = 0; j <= k; ++j) vv += v.c[j] * v.c[k - j];
        const RealInterval gk = vv - v.c[k] + p.a * w.c[k] - p.a * v.c[k];
        v.c[k + 1] = gk / static_cast<double>(k + 1);
        // advance w to order k+1: w_m recurrence needs v up to m
        const std::size_t m = k + 1;
        RealInterval s;
        for (std::size_t j = 0; j < m; ++j) {
            const RealInterval q =
                alpha * static_cast<double>(m - j) - RealInterval::point(static_cast<double>(j));
            s += q * v.c[m - j] * w.c[j];
        }
        w.c[m] = s / (static_cast<double>(m) * v.c[0]);
    }
    ProfileSeries out{std::move(v), TaylorSeries(order)};
    // f(v) = 2v - (a+1) - a(gamma-1) v^-gamma
    const TaylorSeries u = taylor::pow_real(out.v, -p.gamma, order);
    for (std::size_t k = 0; k <= order; ++k) {
        out.f.c[k] = 2.0 * out.v.c[k] - p.a * (p.gamma - 1.0) * u.c[k];
        if (k == 0) out.f.c[k] -= (p.a + 1.0);
    }
    return out;
}

}  // namespace detail_profile

// Range enclosures of v^(n) and (f(v))^(n) for v over [v_plus, 1], obtained
// by expanding on a partition of the state interval and joining.
struct DerivativeEnclosures {
    std::vector<RealInterval> v;  // index = derivative order
    std::vector<RealInterval> f;
    std::vector<RealInterval> cells;          // partition of [v+, 1]
    std::vector<std::vector<RealInterval>> v_cells;  // [order][cell]
    std::vector<std::vector<RealInterval>> f_cells;
};

inline DerivativeEnclosures derivative_enclosures(const ProfileParams& p, std::size_t order) {
    DerivativeEnclosures out;
    out.v.assign(order + 1, RealInterval::empty());
    out.f.assign(order + 1, RealInterval::empty());
    out.v_cells.assign(order + 1, {});
    out.f_cells.assign(order + 1, {});
    const double lo = p.vplus.lo();
    const double hi = 1.0;
    for (std::size_t j = 0; j < p.partition; ++j) {
        const double c0 = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(p.partition);
        const double c1 =
            lo + (hi - lo) * static_cast<double>(j + 1) / static_cast<double>(p.partition);
        const RealInterval cell(c0, std::max(c1, c0));
        out.cells.push_back(cell);
        const auto s = detail_profile::expand(cell, p, order);
        for (std::size_t k = 0; k <= order; ++k) {
            const RealInterval fact = taylor::factorial(k);
            const RealInterval dv = s.v.c[k] * fact;
            const RealInterval df = s.f.c[k] * fact;
            out.v[k] = hull(out.v[k], dv);
            out.f[k] = hull(out.f[k], df);
            out.v_cells[k].push_back(dv);
            out.f_cells[k].push_back(df);
        }
    }
    return out;
}

struct ProfileEnclosure {
    ProfileParams params;
    std::vector<double> xs;           // grid positions, -L..L
    std::vector<RealInterval> vals;   // enclosures of v(x_i)
    DerivativeEnclosures derivs;      // over [v+, 1]

    std::size_t index_of_zero() const { return params.steps_per_side(); }

    const RealInterval& value_at_grid(long i) const {
        return vals[static_cast<std::size_t>(i + static_cast<long>(params.steps_per_side()))];
    }
};

// One validated step of signed size H from the enclosure U (comparison
// principle: the flow through inf U and sup U brackets every trajectory).
inline RealInterval taylor_step(const RealInterval& U, const RealInterval& H,
                                const ProfileParams& p, const DerivativeEnclosures& derivs) {
    const std::size_t n = p.taylor_order;
    const RealInterval remainder =
        pow_int(H, static_cast<long>(n)) * derivs.v[n] / taylor::factorial(n);
    auto flow_from = [&](double v0) {
        auto s = detail_profile::expand(RealInterval::point(v0), p, n - 1);
        return taylor::evaluate(s.v, H) + remainder;
    };
    const RealInterval r1 = flow_from(U.lo());
    const RealInterval r2 = flow_from(U.hi());
    return hull(r1, r2);
}

// March from the anchored midpoint value at x = 0 out to +-L, intersecting
// with the invariant region [v+, 1] after each step.
inline ProfileEnclosure solve_profile(const ProfileParams& p) {
    ProfileEnclosure out;
    out.params = p;
    out.derivs = derivative_enclosures(p, p.taylor_order);
    const std::size_t m = p.steps_per_side();
    out.xs.resize(2 * m + 1);
    out.vals.resize(2 * m + 1);
    const RealInterval invariant(p.vplus.lo(), 1.0);
    const RealInterval anchor = (1.0 + p.vplus) / 2.0;
    out.xs[m] = 0.0;
    out.vals[m] = anchor;
    for (std::size_t side = 0; side < 2; ++side) {
        const double sgn = (side == 0) ? 1.0 : -1.0;
        RealInterval u = anchor;
        for (std::size_t i = 1; i <= m; ++i) {
            u = taylor_step(u, RealInterval::point(sgn * p.h), p, out.derivs);
            u = intersect(u, invariant);
            if (u.is_empty())
                throw EnclosureError("profile enclosure escaped [v+,1]; refine h or raise order");
            const std::size_t idx = (side == 0) ? m + i : m - i;
            out.xs[idx] = sgn * p.h * static_cast<double>(i);
            out.vals[idx] = u;
        }
    }
    return out;
}

// Enclosure of v(x) at an arbitrary point of [-L, L]: one validated step
// from the nearest grid anchor at or below x.
inline RealInterval profile_value_at(const ProfileEnclosure& prof, double x) {
    const ProfileParams& p = prof.params;
    if (x < -p.L - 1e-12 || x > p.L + 1e-12) throw DomainError("profile_value_at: outside [-L, L]");
    const std::size_t m = p.steps_per_side();
    double fi = std::floor((x + p.L) / p.h);
    auto i = static_cast<long>(fi);
    if (i < 0) i = 0;
    if (i > static_cast<long>(2 * m)) i = static_cast<long>(2 * m);
    const double xi = prof.xs[static_cast<std::size_t>(i)];
    const RealInterval delta = RealInterval::point(x) - RealInterval::point(xi);
    if (delta.mag() < 1e-300) return prof.vals[static_cast<std::size_t>(i)];
    RealInterval v = taylor_step(prof.vals[static_cast<std::size_t>(i)], delta, p, prof.derivs);
    return intersect(v, RealInterval(p.vplus.lo(), 1.0));
}

// Derivative range over the local state values attained on [a, b]: the
// global [v+,1] partition restricted to cells meeting the local range.
inline RealInterval local_derivative_bound(const ProfileEnclosure& prof, double a, double b,
                                           std::size_t order, bool of_f) {
    const RealInterval va = profile_value_at(prof, b);  // decreasing: v(b) <= v(a)
    const RealInterval vb = profile_value_at(prof, a);
    const RealInterval range = hull(va, vb);
    const auto& cells = prof.derivs.cells;
    const auto& tab = of_f ? prof.derivs.f_cells[order] : prof.derivs.v_cells[order];
    RealInterval out = RealInterval::empty();
    for (std::size_t j = 0; j < cells.size(); ++j) {
        if (intersect(cells[j], range).is_empty()) continue;
        out = hull(out, tab[j]);
    }
    if (out.is_empty()) out = of_f ? prof.derivs.f[order] : prof.derivs.v[order];
    return out;
}

// ((b-a)/2)^N sup|U_N| / (2^(N-1) N!): uniform interpolation error of the
// degree-(N-1) interpolant in the N Chebyshev nodes of [a, b].
inline RealInterval cheb_bound_profile(const ProfileEnclosure& prof, double a, double b,
                                       std::size_t n_nodes, bool of_f) {
    if (n_nodes > prof.params.taylor_order)
        throw DomainError("cheb_bound_profile: derivative order exceeds the computed table");
    const RealInterval un = local_derivative_bound(prof, a, b, n_nodes, of_f);
    const RealInterval half =
        (RealInterval::point(b) - RealInterval::point(a)) / 2.0;
    const RealInterval num = pow_int(half, static_cast<long>(n_nodes)) *
                             RealInterval(0.0, std::max(std::fabs(un.lo()), std::fabs(un.hi())));
    const RealInterval den =
        pow_int(RealInterval::point(2.0), static_cast<long>(n_nodes) - 1) *
        taylor::factorial(n_nodes);
    return num / den;
}

// Interval interpolants of v (or f(v)) on [a, b] with a rigorous uniform
// error band.
inline ChebEnclosure interpolate_profile(const ProfileEnclosure& prof, double a, double b,
                                         std::size_t n_nodes, bool of_f) {
    auto xs = cheb::nodes_mapped(n_nodes, a, b);
    std::vector<RealInterval> samples(n_nodes);
    for (std::size_t j = 0; j < n_nodes; ++j) {
        const RealInterval v = profile_value_at(prof, xs[j].mid());
        // node enclosure width is folded in by evaluating over the node interval
        const RealInterval spread = (xs[j] - xs[j].mid()) * prof.derivs.v[1];
        RealInterval vj = v + spread;
        samples[j] = of_f ? profile_f(intersect(vj, RealInterval(prof.params.vplus.lo(), 1.0)),
                                      prof.params.gamma, prof.params.a)
                          : vj;
    }
    ChebEnclosure p = cheb::coefficients_real(samples, a, b);
    p.err = RealInterval(0.0, cheb_bound_profile(prof, a, b, n_nodes, of_f).hi());
    return p;
}

// ---------------------------------------------------------------------------
// Serialization (versioned, decimal round-trip endpoints).

inline void save_profile(const ProfileEnclosure& prof, std::ostream& os) {
    os << "evanscert-profile 1\n";
    auto put = [&](const RealInterval& iv) {
        os << to_decimal(iv.lo()) << " " << to_decimal(iv.hi());
    };
    os << "gamma ";
    put(prof.params.gamma);
    os << "\nvplus ";
    put(prof.params.vplus);
    os << "\nL " << to_decimal(prof.params.L) << "\nh " << to_decimal(prof.params.h)
       << "\norder " << prof.params.taylor_order << "\npartition " << prof.params.partition
       << "\ngrid " << prof.xs.size() << "\n";
    for (std::size_t i = 0; i < prof.xs.size(); ++i) {
        os << to_decimal(prof.xs[i]) << " ";
        put(prof.vals[i]);
        os << "\n";
    }
    os << "derivs " << prof.derivs.v.size() << "\n";
    for (std::size_t k = 0; k < prof.derivs.v.size(); ++k) {
        put(prof.derivs.v[k]);
        os << " ";
        put(prof.derivs.f[k]);
        os << "\n";
    }
}

inline ProfileEnclosure load_profile(std::istream& is) {
    std::string tag;
    int version = 0;
    is >> tag >> version;
    if (tag != "evanscert-profile" || version != 1)
        throw DomainError("profile cache: unknown format");
    auto get = [&]() {
        std::string a, b;
        is >> a >> b;
        return RealInterval(from_decimal_exact(a), from_decimal_exact(b));
    };
    ProfileEnclosure out;
    RealInterval gamma, vplus;
    std::string key;
    is >> key;
    gamma = get();
    is >> key;
    vplus = get();
    std::string ls, hs;
    std::size_t order = 0, partition = 0, grid = 0;
    is >> key >> ls >> key >> hs >> key >> order >> key >> partition >> key >> grid;
    out.params = ProfileParams(gamma, vplus, from_decimal_exact(ls), from_decimal_exact(hs), order,
                               partition);
    out.xs.resize(grid);
    out.vals.resize(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        std::string x;
        is >> x;
        out.xs[i] = from_decimal_exact(x);
        out.vals[i] = get();
    }
    std::size_t dcount = 0;
    is >> key >> dcount;
    // global tables from the file, cell tables recomputed on demand
    out.derivs = derivative_enclosures(out.params, order);
    for (std::size_t k = 0; k < dcount; ++k) {
        const RealInterval dv = get();
        const RealInterval df = get();
        if (k < out.derivs.v.size() &&
            (intersect(dv, out.derivs.v[k]).is_empty() || intersect(df, out.derivs.f[k]).is_empty()))
            throw EnclosureError("profile cache: derivative tables inconsistent");
    }
    return out;
}

}  // namespace evanscert
