#pragma once

// Axis-aligned rectangle enclosures of complex values: re x im with real
// interval components.  Operations return rectangles containing the exact
// image set.

#include <complex>

#include "evanscert/interval.hpp"

namespace evanscert {

struct ComplexInterval {
    RealInterval re;
    RealInterval im;

    ComplexInterval() = default;
    ComplexInterval(RealInterval r, RealInterval i) : re(std::move(r)), im(std::move(i)) {}
    static ComplexInterval point(std::complex<double> z) {
        return {RealInterval::point(z.real()), RealInterval::point(z.imag())};
    }
    static ComplexInterval point(double x) { return {RealInterval::point(x), RealInterval()}; }
    static ComplexInterval from_real(const RealInterval& r) { return {r, RealInterval()}; }

    bool contains(std::complex<double> z) const {
        return re.contains(z.real()) && im.contains(z.imag());
    }
    bool contains(const ComplexInterval& o) const {
        return re.contains(o.re) && im.contains(o.im);
    }
    std::complex<double> mid() const { return {re.mid(), im.mid()}; }
    // Diameter bound: sup distance of two points in the rectangle.
    double diam() const {
        return rnd::sqrt(rnd::add(rnd::mul(re.width(), re.width()).hi,
                                  rnd::mul(im.width(), im.width()).hi).hi).hi;
    }

    ComplexInterval operator-() const { return {-re, -im}; }
    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const RealInterval& s) {
        return {a.re * s, a.im * s};
    }
    friend ComplexInterval operator*(const RealInterval& s, const ComplexInterval& a) { return a * s; }
    friend ComplexInterval operator*(const ComplexInterval& a, double s) {
        return a * RealInterval::point(s);
    }
    friend ComplexInterval operator*(double s, const ComplexInterval& a) {
        return a * RealInterval::point(s);
    }
    friend ComplexInterval operator/(const ComplexInterval& a, const RealInterval& s) {
        return {a.re / s, a.im / s};
    }
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
        const RealInterval den = sqr(b.re) + sqr(b.im);
        if (den.contains(0.0)) throw DomainError("complex division by rectangle containing 0");
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    ComplexInterval& operator+=(const ComplexInterval& o) { return *this = *this + o; }
    ComplexInterval& operator-=(const ComplexInterval& o) { return *this = *this - o; }
    ComplexInterval& operator*=(const ComplexInterval& o) { return *this = *this * o; }
};

inline ComplexInterval conj(const ComplexInterval& z) { return {z.re, -z.im}; }

// Multiplication by i, exact (rectangle rotation).
inline ComplexInterval mul_i(const ComplexInterval& z) { return {-z.im, z.re}; }

// {|zeta| : zeta in z}; the lower bound is the distance of the rectangle to
// the origin, the upper bound is attained at a corner.
inline RealInterval modulus(const ComplexInterval& z) {
    const double dx = z.re.mig();
    const double dy = z.im.mig();
    const double lo = rnd::sqrt(rnd::add(rnd::mul(dx, dx).lo, rnd::mul(dy, dy).lo).lo).lo;
    const double mx = z.re.mag();
    const double my = z.im.mag();
    const double hi = rnd::sqrt(rnd::add(rnd::mul(mx, mx).hi, rnd::mul(my, my).hi).hi).hi;
    return RealInterval(lo, hi);
}

inline RealInterval abs_sq(const ComplexInterval& z) { return sqr(z.re) + sqr(z.im); }

inline ComplexInterval exp(const ComplexInterval& z) {
    const RealInterval r = exp(z.re);
    return {r * cos(z.im), r * sin(z.im)};
}

inline ComplexInterval sqr(const ComplexInterval& z) {
    // (re+im i)^2 with the re^2 - im^2 term evaluated once per component.
    return {sqr(z.re) - sqr(z.im), 2.0 * (z.re * z.im)};
}

inline ComplexInterval hull(const ComplexInterval& a, const ComplexInterval& b) {
    return {hull(a.re, b.re), hull(a.im, b.im)};
}

// Inflate by a closed disc of radius r >= 0 (rectangle hull of the sum).
inline ComplexInterval inflate(const ComplexInterval& z, double r) {
    const RealInterval ball(-r, r);
    return {z.re + ball, z.im + ball};
}

}  // namespace evanscert
