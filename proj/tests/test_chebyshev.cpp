#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "evanscert/chebpoly.hpp"
#include "evanscert/chebyshev.hpp"
#include "oracle_mpfr.hpp"

using namespace evanscert;
using cheb::coefficients;
using cheb::coefficients_real;
using cheb::evaluate_theta;
using cheb::hermite_error_bound;
using cheb::lebesgue_constant;
using cheb::nodes;

namespace {
std::mt19937_64 rng(7161);

ChebEnclosure make_unit_coeff(std::size_t n, std::size_t which) {
    ChebEnclosure p;
    p.coeffs.assign(n, ComplexInterval());
    p.coeffs[which] = ComplexInterval::point(1.0);
    return p;
}
}  // namespace

TEST_CASE("nodes match high-precision cosines") {
    auto n1 = nodes(1);
    CHECK(n1[0].contains(0.0));
    auto n2 = nodes(2);
    CHECK(n2[0].contains(std::sqrt(2.0) / 2.0));
    CHECK(n2[1].contains(-std::sqrt(2.0) / 2.0));
    for (std::size_t N : {4u, 9u, 33u}) {
        auto ns = nodes(N);
        for (std::size_t j = 0; j < N; ++j) {
            oracle::Real arg = oracle::Real::pi() * oracle::Real(2.0 * j + 1.0) / oracle::Real(2.0 * N);
            oracle::Real c = oracle::Real::cos(arg);
            REQUIRE(ns[j].lo() <= c.lo());
            REQUIRE(ns[j].hi() >= c.hi());
            REQUIRE(ns[j].lo() > -1.0);
            REQUIRE(ns[j].hi() < 1.0);
        }
    }
}

TEST_CASE("coefficients of simple functions") {
    // f == 1
    {
        std::vector<RealInterval> s(5, RealInterval::point(1.0));
        auto p = coefficients_real(s);
        CHECK(p.coeffs[0].re.contains(1.0));
        for (std::size_t m = 1; m < 5; ++m) CHECK(p.coeffs[m].contains({0.0, 0.0}));
    }
    // f(x) = x with N = 2
    {
        auto ns = nodes(2);
        std::vector<RealInterval> s = {ns[0], ns[1]};
        auto p = coefficients_real(s);
        CHECK(p.coeffs[0].contains({0.0, 0.0}));
        CHECK(p.coeffs[1].re.contains(1.0));
    }
    // f(x) = 2x^2 - 1 = T_2 with N = 3, checked against direct summation
    {
        auto ns = nodes(3);
        std::vector<RealInterval> s;
        for (auto& x : ns) s.push_back(2.0 * sqr(x) - 1.0);
        auto p = coefficients_real(s);
        CHECK(p.coeffs[0].contains({0.0, 0.0}));
        CHECK(p.coeffs[1].contains({0.0, 0.0}));
        CHECK(p.coeffs[2].re.contains(1.0));
        CHECK(p.coeffs[2].re.width() < 1e-13);
    }
}

TEST_CASE("2d coefficients") {
    // f == 1
    {
        std::vector<std::vector<ComplexInterval>> g(3, std::vector<ComplexInterval>(4, ComplexInterval::point(1.0)));
        auto p = cheb::coefficients2d(g);
        CHECK(p.coeffs[0][0].re.contains(1.0));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (i + j > 0) CHECK(p.coeffs[i][j].contains({0.0, 0.0}));
    }
    // f(x,y) = x y  ->  a_11 = 1
    {
        auto nx = nodes(3);
        auto ny = nodes(3);
        std::vector<std::vector<ComplexInterval>> g(3, std::vector<ComplexInterval>(3));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                g[i][j] = ComplexInterval::from_real(nx[i] * ny[j]);
        auto p = cheb::coefficients2d(g);
        CHECK(p.coeffs[1][1].re.contains(1.0));
        CHECK(p.coeffs[0][0].contains({0.0, 0.0}));
        CHECK(p.coeffs[2][2].contains({0.0, 0.0}));
    }
    // f(x,y) = exp(x+y) equals the 1d x 1d composition
    {
        const std::size_t N = 8;
        auto nsx = nodes(N);
        std::vector<std::vector<ComplexInterval>> g(N, std::vector<ComplexInterval>(N));
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                g[i][j] = ComplexInterval::from_real(exp(nsx[i] + nsx[j]));
        auto p2 = cheb::coefficients2d(g);
        std::vector<RealInterval> e1(N);
        for (std::size_t i = 0; i < N; ++i) e1[i] = exp(nsx[i]);
        auto p1 = coefficients_real(e1);
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                ComplexInterval prod = p1.coeffs[i] * p1.coeffs[j];
                // tensor coefficients of exp(x)exp(y)
                REQUIRE(intersect(prod.re, p2.coeffs[i][j].re).is_empty() == false);
            }
    }
}

TEST_CASE("hermite error bound closed form and monotonicity") {
    // M = 0 gives zero bound
    {
        Stadium st(2.0, RealInterval::point(0.0));
        auto b = hermite_error_bound(st, 10);
        CHECK(b.hi() == 0.0);
    }
    // rho=2, N=10, M=1: frozen oracle value of
    // pi*sqrt(4+1/16) / (pi * 1/4 * sinh(11 log 2))
    {
        Stadium st(2.0, RealInterval::point(1.0));
        auto b = hermite_error_bound(st, 10);
        oracle::Real rho(2.0);
        oracle::Real L = oracle::Real::pi() * oracle::Real::sqrt(oracle::Real(4.25));
        oracle::Real D(0.25);
        oracle::Real s = oracle::Real::sinh(oracle::Real(11.0) * oracle::Real::log(rho));
        oracle::Real expect = L / (oracle::Real::pi() * D * s);
        REQUIRE(b.lo() <= expect.lo());
        REQUIRE(b.hi() >= expect.hi());
        REQUIRE(b.width() < 1e-12);
    }
    // monotone decreasing in N
    {
        Stadium st(1.5, RealInterval::point(3.0));
        double prev = 1e300;
        for (std::size_t n = 4; n <= 64; n *= 2) {
            auto b = hermite_error_bound(st, n);
            REQUIRE(b.hi() < prev);
            prev = b.hi();
        }
    }
}

TEST_CASE("lebesgue constant") {
    auto l1 = lebesgue_constant(1);
    CHECK(l1.contains(1.0));  // single node: projector norm is 1
    // N=2: max over [-1,1] of |l0| + |l1| with nodes +-sqrt(2)/2 is sqrt(2)
    auto l2 = lebesgue_constant(2);
    double dense = 0.0;
    const double x0 = std::sqrt(2.0) / 2.0;
    for (int i = 0; i <= 20000; ++i) {
        const double x = -1.0 + 2.0 * i / 20000.0;
        dense = std::max(dense, std::fabs((x + x0) / (2 * x0)) + std::fabs((x - x0) / (-2 * x0)));
    }
    CHECK(l2.hi() >= dense - 1e-9);
    // width dominated by the alpha_N band
    for (std::size_t n : {1u, 2u, 8u, 64u}) {
        auto l = lebesgue_constant(n);
        CHECK(l.width() <= M_PI / (72.0 * n * n) + 1e-12);
    }
}

TEST_CASE("error_2d composition") {
    RealInterval ex(0.0, 1e-3), ey(0.0, 0.0);
    CHECK(cheb::error_2d(ex, ey, 4).hi() == ex.hi());
    RealInterval b = cheb::error_2d(RealInterval::point(0.0), RealInterval(0.0, 1e-3), 1);
    CHECK(b.hi() >= (lebesgue_constant(1) * RealInterval(0.0, 1e-3)).lo());
    // composite bound dominates measured 2d error for f(x,y) = exp(x) cos(y)
    const std::size_t NX = 10, NY = 10;
    auto nx = nodes(NX);
    std::vector<std::vector<ComplexInterval>> g(NX, std::vector<ComplexInterval>(NY));
    for (std::size_t i = 0; i < NX; ++i)
        for (std::size_t j = 0; j < NY; ++j)
            g[i][j] = ComplexInterval::from_real(exp(nx[i]) * cos(nx[j]));
    auto p = cheb::coefficients2d(g);
    // 1d slice-uniform bounds via stadia: |exp| on E_2 <= e^{1.25+...}, |cos| <= cosh(0.75)+
    Stadium stx(2.0, exp(RealInterval::point(1.26)));
    Stadium sty(2.0, cosh(RealInterval::point(0.76)) * 1.001);
    RealInterval bx = hermite_error_bound(stx, NX) * cosh(RealInterval::point(1.0));
    RealInterval by = hermite_error_bound(sty, NY) * exp(RealInterval::point(1.0));
    RealInterval b2 = cheb::error_2d(bx, by, NX);
    double worst = 0.0;
    for (int i = 0; i <= 60; ++i)
        for (int j = 0; j <= 60; ++j) {
            const double x = -1.0 + 2.0 * i / 60.0, y = -1.0 + 2.0 * j / 60.0;
            // evaluate tensor polynomial at points
            ChebEnclosure row;
            row.coeffs.resize(NY);
            ChebEnclosure xs;
            xs.coeffs.resize(NX);
            for (std::size_t m = 0; m < NX; ++m) {
                for (std::size_t n = 0; n < NY; ++n) row.coeffs[n] = p.coeffs[m][n];
                xs.coeffs[m] = evaluate_theta(row, RealInterval::point(y));
            }
            auto v = evaluate_theta(xs, RealInterval::point(x));
            worst = std::max(worst, std::fabs(v.re.mid() - std::exp(x) * std::cos(y)));
        }
    CHECK(worst <= b2.hi());
}

TEST_CASE("evaluate_theta basics") {
    // T_0 evaluates to 1 everywhere
    {
        auto p = make_unit_coeff(1, 0);
        auto v = evaluate_theta(p, RealInterval(-1.0, 1.0));
        CHECK(v.re.contains(1.0));
        CHECK(v.re.width() < 1e-12);
    }
    // T_3 at 0.5: cos(3 acos(1/2)) = -1
    {
        auto p = make_unit_coeff(4, 3);
        auto v = evaluate_theta(p, RealInterval::point(0.5));
        CHECK(v.re.contains(-1.0));
        CHECK(v.re.width() < 1e-12);
    }
    // random polynomial against dense containment
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 40; ++it) {
        const std::size_t n = 1 + static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 24)(rng));
        ChebEnclosure p;
        p.coeffs.resize(n);
        for (auto& c : p.coeffs)
            c = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
        const double a = u(rng), b0 = u(rng);
        RealInterval X(std::min(a, b0), std::max(a, b0));
        auto v = evaluate_theta(p, X);
        for (int s = 0; s <= 50; ++s) {
            const double x = X.lo() + (X.hi() - X.lo()) * s / 50.0;
            std::complex<double> acc = 0.0;
            const double th = std::acos(std::clamp(x, -1.0, 1.0));
            for (std::size_t m = 0; m < n; ++m)
                acc += p.coeffs[m].mid() * std::cos(static_cast<double>(m) * th);
            REQUIRE(v.re.lo() <= acc.real() + 1e-11);
            REQUIRE(v.re.hi() >= acc.real() - 1e-11);
            REQUIRE(v.im.lo() <= acc.imag() + 1e-11);
            REQUIRE(v.im.hi() >= acc.imag() - 1e-11);
        }
    }
}

TEST_CASE("evaluate_theta beats interval Clenshaw on wide-coefficient series") {
    // throwaway interval Clenshaw for the comparison
    auto clenshaw = [](const ChebEnclosure& p, const RealInterval& x) {
        ComplexInterval b1, b2;
        for (std::size_t k = p.size(); k-- > 1;) {
            ComplexInterval t = p.coeffs[k] + b1 * (2.0 * x) - b2;
            b2 = b1;
            b1 = t;
        }
        return p.coeffs[0] + b1 * x - b2;
    };
    const std::size_t N = 64;
    ChebEnclosure p;
    p.coeffs.resize(N);
    const double w = std::ldexp(1.0, -52);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& c : p.coeffs) {
        const double v = u(rng);
        c = ComplexInterval(RealInterval(v - w, v + w), RealInterval());
    }
    const RealInterval X = RealInterval::point(0.3);
    auto via_theta = evaluate_theta(p, X);
    auto via_clenshaw = clenshaw(p, X);
    CHECK(via_theta.re.width() * 1e3 < via_clenshaw.re.width());
}

TEST_CASE("evaluate_theta width grows mildly with N for fixed-width coefficients") {
    const double w = std::ldexp(1.0, -52);
    double w32 = 0, w256 = 0;
    for (std::size_t N : {32u, 256u}) {
        ChebEnclosure p;
        p.coeffs.assign(N, ComplexInterval(RealInterval(1.0 - w, 1.0 + w), RealInterval()));
        auto v = evaluate_theta(p, RealInterval::point(0.25));
        (N == 32 ? w32 : w256) = v.re.width();
    }
    CHECK(w256 < 16.0 * w32);  // at most linear growth, with slack
}

TEST_CASE("containment for analytic functions") {
    // exp, 1/(x-2), sin(5x) with matched stadia
    auto check_fn = [&](auto f, double rho, const RealInterval& M, std::size_t N, double tol_scale) {
        auto ns = nodes(N);
        std::vector<RealInterval> s;
        for (auto& x : ns) s.push_back(f(x));
        auto p = coefficients_real(s);
        Stadium st(rho, M);
        auto bound = hermite_error_bound(st, N);
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = -1.0 + 2.0 * i / 2000.0;
            auto v = evaluate_theta(p, RealInterval::point(x));
            const double fx = f(RealInterval::point(x)).mid();
            worst = std::max(worst, std::fabs(v.re.mid() - fx));
        }
        REQUIRE(worst <= bound.hi() * tol_scale + 1e-15);
    };
    check_fn([](const RealInterval& x) { return exp(x); }, 2.0,
             exp(RealInterval::point(1.3)), 16, 1.0);
    check_fn([](const RealInterval& x) { return 1.0 / (x - 2.0); }, 1.8,
             RealInterval::point(2.0), 16, 1.0);
    check_fn([](const RealInterval& x) { return sin(5.0 * x); }, 1.5,
             cosh(RealInterval::point(5.0 * 0.4171)) * 1.01, 24, 1.0);
}

TEST_CASE("derivative series") {
    // T_1' = 1
    {
        auto p = make_unit_coeff(2, 1);
        auto v = cheb::evaluate_derivative(p, RealInterval(-1.0, 1.0));
        CHECK(v.re.contains(1.0));
        CHECK(v.re.width() < 1e-12);
    }
    // T_2'(0.5) = 4*0.5 = 2
    {
        auto p = make_unit_coeff(3, 2);
        auto v = cheb::evaluate_derivative(p, RealInterval::point(0.5));
        CHECK(v.re.contains(2.0));
    }
    // random polynomial against central finite differences
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 20; ++it) {
        ChebEnclosure p;
        p.coeffs.resize(9);
        for (auto& c : p.coeffs) c = ComplexInterval::point(u(rng));
        const double x = 0.8 * u(rng);
        const double h = 1e-6;
        auto fp = evaluate_theta(p, RealInterval::point(x + h));
        auto fm = evaluate_theta(p, RealInterval::point(x - h));
        const double fd = (fp.re.mid() - fm.re.mid()) / (2 * h);
        auto d = cheb::evaluate_derivative(p, RealInterval::point(x));
        REQUIRE(std::fabs(d.re.mid() - fd) < 1e-5);
    }
}

TEST_CASE("poly algebra: products, determinant, adjugate") {
    // det of constant identity is 1
    {
        ChebMat3 I = ChebMat3::identity(-1.0, 1.0);
        auto d = chebpoly::poly_det3(I);
        CHECK(d.at(0, 0).re.contains(1.0));
        CHECK(chebpoly::coeff_abs_sum(d) < 1.0 + 1e-12);
    }
    // degree bookkeeping: degree-n inputs -> det degree <= 3n, never truncated
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        ChebMat3 m;
        for (std::size_t i = 0; i < 9; ++i) {
            m.e[i] = ChebPoly2(3, 2, -1.0, 1.0);
            for (auto& z : m.e[i].c) z = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
        }
        auto d = chebpoly::poly_det3(m);
        CHECK(d.x_degree() == 6);
        CHECK(d.theta_degree() == 3);
        // adj(m) * m = det(m) I coefficientwise containment at sample points
        auto adj = chebpoly::poly_adjugate3(m);
        auto prod = chebpoly::mul(adj, m);
        for (int s = 0; s < 12; ++s) {
            RealInterval X = RealInterval::point(u(rng));
            RealInterval T = RealInterval::point(u(rng));
            auto dv = chebpoly::evaluate2(d, X, T);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    auto pv = chebpoly::evaluate2(prod.at(i, j), X, T);
                    if (i == j) {
                        REQUIRE(intersect(pv.re, dv.re).is_empty() == false);
                        REQUIRE(intersect(pv.im, dv.im).is_empty() == false);
                    } else {
                        REQUIRE(pv.re.contains(0.0));
                        REQUIRE(pv.im.contains(0.0));
                    }
                }
        }
    }
    // evaluation of product equals product of evaluations (containment)
    {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int it = 0; it < 30; ++it) {
            ChebPoly2 a(3, 3, -2.0, 1.0), b(2, 4, -2.0, 1.0);
            for (auto& z : a.c) z = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
            for (auto& z : b.c) z = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
            auto ab = chebpoly::mul(a, b);
            const RealInterval X = RealInterval::point(-2.0 + 3.0 * (0.5 + 0.5 * u(rng)));
            const RealInterval T = RealInterval::point(u(rng));
            auto va = chebpoly::evaluate2(a, X, T);
            auto vb = chebpoly::evaluate2(b, X, T);
            auto vab = chebpoly::evaluate2(ab, X, T);
            auto prod = va * vb;
            REQUIRE(intersect(vab.re, prod.re).is_empty() == false);
            REQUIRE(intersect(vab.im, prod.im).is_empty() == false);
        }
    }
    // endpoint slices are exact sign sums
    {
        ChebPoly2 a(4, 2, -3.0, -1.0);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& z : a.c) z = ComplexInterval::point(u(rng));
        auto lo_slice = chebpoly::slice_at_end(a, false);
        auto v = evaluate_theta(lo_slice, RealInterval::point(0.3));
        auto direct = chebpoly::evaluate2(a, RealInterval::point(-3.0), RealInterval::point(0.3));
        REQUIRE(intersect(v.re, direct.re).is_empty() == false);
    }
}
