#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "evanscert/complex_interval.hpp"
#include "evanscert/decimal.hpp"
#include "evanscert/interval.hpp"
#include "evanscert/interval_matrix.hpp"
#include "oracle_mpfr.hpp"

using namespace evanscert;

namespace {

std::mt19937_64 rng(20240817);

double random_double() {
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-12, 12);
    return std::ldexp(mant(rng), expo(rng));
}

RealInterval random_interval() {
    double a = random_double(), b = random_double();
    if (a > b) std::swap(a, b);
    return RealInterval(a, b);
}

double random_in(const RealInterval& x) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return x.lo() + u(rng) * (x.hi() - x.lo());
}

}  // namespace

TEST_CASE("endpoint arithmetic is exact when representable") {
    RealInterval a(1.0, 2.0), b(3.0, 4.0);
    RealInterval s = a + b;
    CHECK(s.lo() == 4.0);
    CHECK(s.hi() == 6.0);

    RealInterval x(-1.0, 1.0);
    RealInterval p = x * x;  // naive product, no dependency tracking
    CHECK(p.lo() == -1.0);
    CHECK(p.hi() == 1.0);
}

TEST_CASE("inclusion isotonicity randomized") {
    for (int it = 0; it < 20000; ++it) {
        RealInterval X = random_interval(), Y = random_interval();
        double x = random_in(X), y = random_in(Y);
        oracle::Real ox(x), oy(y);
        {
            auto r = X + Y;
            oracle::Real e = ox + oy;
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = X - Y;
            oracle::Real e = ox - oy;
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = X * Y;
            oracle::Real e = ox * oy;
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        if (!Y.contains(0.0)) {
            auto r = X / Y;
            oracle::Real e = ox / oy;
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
    }
}

TEST_CASE("monotonicity of enclosure") {
    for (int it = 0; it < 2000; ++it) {
        RealInterval X = random_interval(), Y = random_interval();
        RealInterval Xp = hull(X, random_interval());
        RealInterval Yp = hull(Y, random_interval());
        CHECK((Xp + Yp).contains(X + Y));
        CHECK((Xp - Yp).contains(X - Y));
        CHECK((Xp * Yp).contains(X * Y));
    }
}

TEST_CASE("division by zero-containing interval throws") {
    CHECK_THROWS_AS(RealInterval(1.0, 2.0) / RealInterval(-1.0, 1.0), DomainError);
    CHECK_THROWS_AS(ComplexInterval::point(1.0) /
                        ComplexInterval(RealInterval(-1e-3, 1e-3), RealInterval(-1e-3, 1e-3)),
                    DomainError);
}

TEST_CASE("elementary functions enclose extended-precision values") {
    // exp(0) is within two ulps of 1
    RealInterval e0 = exp(RealInterval::point(0.0));
    CHECK(e0.contains(1.0));
    CHECK(e0.width() <= 2 * std::ldexp(1.0, -52));

    RealInterval s = sqrt(RealInterval(4.0, 9.0));
    CHECK(s.lo() <= 2.0);
    CHECK(s.hi() >= 3.0);

    // cos over [0, pi] covers [-1, 1]
    RealInterval c = cos(RealInterval(0.0, pi().hi()));
    CHECK(c.lo() <= -1.0);
    CHECK(c.hi() >= 1.0);

    std::uniform_real_distribution<double> u(-30.0, 30.0);
    for (int it = 0; it < 4000; ++it) {
        double x = u(rng);
        oracle::Real ox(x);
        {
            auto r = exp(RealInterval::point(x));
            auto e = oracle::Real::exp(ox);
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = sin(RealInterval::point(x));
            auto e = oracle::Real::sin(ox);
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = cos(RealInterval::point(x));
            auto e = oracle::Real::cos(ox);
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = sinh(RealInterval::point(x));
            auto e = oracle::Real::sinh(ox);
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = cosh(RealInterval::point(x));
            auto e = oracle::Real::cosh(ox);
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        double xp = std::fabs(x) + 1e-9;
        {
            auto r = log(RealInterval::point(xp));
            auto e = oracle::Real::log(oracle::Real(xp));
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
        {
            auto r = pow(RealInterval::point(xp), RealInterval::point(1.37));
            auto e = oracle::Real::pow(oracle::Real(xp), oracle::Real(1.37));
            REQUIRE(r.lo() <= e.lo());
            REQUIRE(r.hi() >= e.hi());
        }
    }
    std::uniform_real_distribution<double> v(-1.0, 1.0);
    for (int it = 0; it < 2000; ++it) {
        double x = v(rng);
        auto r = arccos(RealInterval::point(x));
        auto e = oracle::Real::acos(oracle::Real(x));
        REQUIRE(r.lo() <= e.lo());
        REQUIRE(r.hi() >= e.hi());
    }
}

TEST_CASE("cos range via monotone segments") {
    // Compare against a fine-partition oracle on random windows.
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int it = 0; it < 300; ++it) {
        double a = u(rng), b = a + std::uniform_real_distribution<double>(0.0, 5.0)(rng);
        RealInterval r = cos(RealInterval(a, b));
        double lo = 1e100, hi = -1e100;
        for (int i = 0; i <= 2000; ++i) {
            double t = a + (b - a) * i / 2000.0;
            double c = std::cos(t);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        REQUIRE(r.lo() <= lo + 1e-12);
        REQUIRE(r.hi() >= hi - 1e-12);
    }
}

TEST_CASE("domain violations raise explicit errors") {
    CHECK_THROWS_AS(log(RealInterval(-1.0, 1.0)), DomainError);
    CHECK_THROWS_AS(evanscert::sqrt(RealInterval(-1.0, 1.0)), DomainError);
    CHECK_THROWS_AS(arccos(RealInterval(0.5, 1.5)), DomainError);
}

TEST_CASE("complex rectangle product contains sampled images") {
    ComplexInterval z(RealInterval(0.0, 1.0), RealInterval(0.0, 1.0));
    ComplexInterval w = z * z;
    // hull of samples of (x+iy)^2 must lie inside w; also w covers [-1,1]+i[0,2]
    CHECK(w.re.lo() <= -1.0 + 1e-12);
    CHECK(w.re.hi() >= 1.0 - 1e-12);
    CHECK(w.im.lo() <= 1e-12);
    CHECK(w.im.hi() >= 2.0 - 1e-12);
    for (int i = 0; i <= 40; ++i)
        for (int j = 0; j <= 40; ++j) {
            std::complex<double> p(i / 40.0, j / 40.0);
            REQUIRE(w.contains(p * p));
        }
    for (int it = 0; it < 3000; ++it) {
        ComplexInterval A(random_interval(), random_interval());
        ComplexInterval B(random_interval(), random_interval());
        std::complex<double> a(random_in(A.re), random_in(A.im));
        std::complex<double> b(random_in(B.re), random_in(B.im));
        oracle::Complex oa(a), ob(b);
        auto p = oa * ob;
        ComplexInterval P = A * B;
        REQUIRE(P.re.lo() <= p.re.lo());
        REQUIRE(P.re.hi() >= p.re.hi());
        REQUIRE(P.im.lo() <= p.im.lo());
        REQUIRE(P.im.hi() >= p.im.hi());
    }
}

TEST_CASE("modulus of rectangles") {
    RealInterval m = modulus(ComplexInterval::point(std::complex<double>(3.0, 4.0)));
    CHECK(m.contains(5.0));
    CHECK(m.width() < 1e-14);

    RealInterval m2 = modulus(ComplexInterval(RealInterval(-1.0, 1.0), RealInterval(-1.0, 1.0)));
    CHECK(m2.lo() == 0.0);
    CHECK(m2.contains(std::sqrt(2.0)));
    CHECK(m2.hi() < std::sqrt(2.0) + 1e-14);

    RealInterval m3 = modulus(ComplexInterval(RealInterval(1.0, 2.0), RealInterval()));
    CHECK(m3.lo() <= 1.0);
    CHECK(m3.hi() >= 2.0);
    CHECK(m3.width() < 1.0 + 1e-12);
}

TEST_CASE("lattice utilities") {
    CHECK(hull(RealInterval(0.0, 1.0), RealInterval(2.0, 3.0)) == RealInterval(0.0, 3.0));
    CHECK(RealInterval(0.0, 1.0).contains(0.5));
    CHECK(RealInterval(1.0, 4.0).width() == 3.0);
    CHECK(intersect(RealInterval(0.0, 1.0), RealInterval(2.0, 3.0)).is_empty());
    CHECK(intersect(RealInterval(0.0, 2.0), RealInterval(1.0, 3.0)) == RealInterval(1.0, 2.0));
    CHECK_THROWS_AS(RealInterval::empty() + RealInterval(0.0, 1.0), DomainError);
}

TEST_CASE("product_with_error center and cross terms") {
    auto point_mat = [](double v) {
        IntervalMatrix m(1, 1);
        m(0, 0) = ComplexInterval::point(v);
        return m;
    };
    auto err_mat = [](double w) {
        IntervalMatrix m(1, 1);
        m(0, 0) = ComplexInterval(RealInterval(0.0, w), RealInterval());
        return m;
    };

    // zero error: err term vanishes, center = ABC
    {
        ErrorSplitMatrix A{point_mat(2.0), err_mat(0.0)};
        ErrorSplitMatrix B{point_mat(3.0), err_mat(0.0)};
        ErrorSplitMatrix C{point_mat(4.0), err_mat(0.0)};
        auto r = product_with_error(A, B, C);
        CHECK(r.center(0, 0).re.contains(24.0));
        CHECK(r.err(0, 0).re.lo() == 0.0);
        CHECK(r.err(0, 0).re.hi() == 0.0);
    }
    // (1+e)^3 - 1 = 3e + 3e^2 + e^3 with e in [0,1e-3]
    {
        ErrorSplitMatrix A{point_mat(1.0), err_mat(1e-3)};
        auto r = product_with_error(A, A, A);
        const double expect = 3e-3 + 3e-6 + 1e-9;
        CHECK(r.err(0, 0).re.lo() <= 0.0);
        CHECK(r.err(0, 0).re.hi() >= expect);
        CHECK(r.err(0, 0).re.hi() <= expect * (1 + 1e-12));
    }
}

TEST_CASE("error-split product is at least as tight as the naive product") {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 50; ++it) {
        IntervalMatrix Ac(3, 3), Bc(3, 3), Cc(3, 3), Ae(3, 3), Be(3, 3), Ce(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                Ac(i, j) = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
                Bc(i, j) = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
                Cc(i, j) = ComplexInterval::point(std::complex<double>(u(rng), u(rng)));
                const double w = 1e-6 * std::fabs(u(rng));
                Ae(i, j) = ComplexInterval(RealInterval(-w, w), RealInterval(-w, w));
                Be(i, j) = Ae(i, j);
                Ce(i, j) = ComplexInterval(RealInterval(-w, w), RealInterval(-w, w));
            }
        ErrorSplitMatrix A{Ac, Ae}, B{Bc, Be}, C{Cc, Ce};
        auto split = product_with_error(A, B, C);
        IntervalMatrix naive = (A.total() * B.total()) * C.total();
        IntervalMatrix tot = split.total();
        double wn = 0, ws = 0;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                wn += naive(i, j).re.width() + naive(i, j).im.width();
                ws += tot(i, j).re.width() + tot(i, j).im.width();
            }
        CHECK(ws <= wn * (1 + 1e-9));
        // containment of the true product with sampled representatives
        for (int rep = 0; rep < 5; ++rep) {
            IntervalMatrix sa(3, 3), sb(3, 3), sc(3, 3);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) {
                    auto pick = [&](const ComplexInterval& c, const ComplexInterval& e) {
                        return ComplexInterval::point(std::complex<double>(
                            random_in(c.re) + random_in(e.re), random_in(c.im) + random_in(e.im)));
                    };
                    sa(i, j) = pick(Ac(i, j), Ae(i, j));
                    sb(i, j) = pick(Bc(i, j), Be(i, j));
                    sc(i, j) = pick(Cc(i, j), Ce(i, j));
                }
            IntervalMatrix prod = (sa * sb) * sc;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    REQUIRE(tot(i, j).contains(prod(i, j)));
        }
    }
}

TEST_CASE("decimal round trips") {
    for (int it = 0; it < 1000; ++it) {
        double x = random_double();
        CHECK(from_decimal_exact(to_decimal(x)) == x);
    }
    RealInterval g = parse_number_enclosure("5/3");
    CHECK(g.contains(5.0 / 3.0));
    CHECK(g.width() < 1e-14);
    RealInterval v = parse_decimal_enclosure("0.4");
    CHECK(v.lo() < 0.4);
    CHECK(v.hi() > 0.4);
}
