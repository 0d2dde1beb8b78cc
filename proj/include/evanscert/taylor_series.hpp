#pragma once

// Truncated power series with interval coefficients: the automatic
// differentiation substrate for the profile equation.  c[k] encloses the
// k-th Taylor coefficient f^(k)/k! of the represented function.

#include <vector>

#include "evanscert/interval.hpp"

namespace evanscert {

struct TaylorSeries {
    std::vector<RealInterval> c;

    explicit TaylorSeries(std::size_t order = 0) : c(order + 1) {}
    static TaylorSeries constant(const RealInterval& v, std::size_t order) {
        TaylorSeries s(order);
        s.c[0] = v;
        return s;
    }
    std::size_t order() const { return c.size() - 1; }
    const RealInterval& operator[](std::size_t k) const { return c[k]; }
    RealInterval& operator[](std::size_t k) { return c[k]; }
};

namespace taylor {

inline TaylorSeries add(const TaylorSeries& a, const TaylorSeries& b) {
    TaylorSeries r(std::max(a.order(), b.order()));
    for (std::size_t k = 0; k < r.c.size(); ++k) {
        if (k < a.c.size()) r.c[k] += a.c[k];
        if (k < b.c.size()) r.c[k] += b.c[k];
    }
    return r;
}

inline TaylorSeries sub(const TaylorSeries& a, const TaylorSeries& b) {
    TaylorSeries r(std::max(a.order(), b.order()));
    for (std::size_t k = 0; k < r.c.size(); ++k) {
        if (k < a.c.size()) r.c[k] += a.c[k];
        if (k < b.c.size()) r.c[k] -= b.c[k];
    }
    return r;
}

inline TaylorSeries scale(const TaylorSeries& a, const RealInterval& s) {
    TaylorSeries r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

// Cauchy product truncated at `order`.
inline TaylorSeries mul(const TaylorSeries& a, const TaylorSeries& b, std::size_t order) {
    TaylorSeries r(order);
    for (std::size_t i = 0; i < a.c.size() && i <= order; ++i)
        for (std::size_t j = 0; j < b.c.size() && i + j <= order; ++j)
            r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

// u = v^alpha through u' v = alpha u v':
// u_k = (1/(k v_0)) sum_{j<k} (alpha (k-j) - j) v_{k-j} u_j.
inline TaylorSeries pow_real(const TaylorSeries& v, const RealInterval& alpha, std::size_t order) {
    if (v.c[0].contains(0.0)) throw DomainError("taylor pow: base contains zero");
    TaylorSeries u(order);
    u.c[0] = pow(v.c[0], alpha);
    for (std::size_t k = 1; k <= order; ++k) {
        RealInterval s;
        for (std::size_t j = 0; j < k; ++j) {
            if (k - j >= v.c.size()) continue;
            const RealInterval w =
                alpha * static_cast<double>(k - j) - RealInterval::point(static_cast<double>(j));
            s += w * v.c[k - j] * u.c[j];
        }
        u.c[k] = s / (static_cast<double>(k) * v.c[0]);
    }
    return u;
}

// Interval evaluation at a step H: sum_k c_k H^k by Horner.
inline RealInterval evaluate(const TaylorSeries& a, const RealInterval& h) {
    RealInterval acc;
    for (std::size_t k = a.c.size(); k-- > 0;) acc = acc * h + a.c[k];
    return acc;
}

inline RealInterval factorial(std::size_t n) {
    RealInterval f = RealInterval::point(1.0);
    for (std::size_t k = 2; k <= n; ++k) f = f * static_cast<double>(k);
    return f;
}

}  // namespace taylor
}  // namespace evanscert
