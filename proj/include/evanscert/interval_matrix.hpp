#pragma once

// Dense matrices of complex rectangles, plus the center/error split used to
// keep products of near-point matrices from wrapping.

#include <cstddef>
#include <vector>

#include "evanscert/complex_interval.hpp"

namespace evanscert {

class IntervalMatrix {
  public:
    IntervalMatrix() : rows_(0), cols_(0) {}
    IntervalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntervalMatrix identity(std::size_t n) {
        IntervalMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = ComplexInterval::point(1.0);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    ComplexInterval& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const ComplexInterval& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    friend IntervalMatrix operator+(const IntervalMatrix& a, const IntervalMatrix& b) {
        IntervalMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend IntervalMatrix operator-(const IntervalMatrix& a, const IntervalMatrix& b) {
        IntervalMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }
    friend IntervalMatrix operator*(const IntervalMatrix& a, const IntervalMatrix& b) {
        if (a.cols_ != b.rows_) throw DomainError("matrix product: shape mismatch");
        IntervalMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const ComplexInterval& aik = a(i, k);
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }
    friend IntervalMatrix operator*(const IntervalMatrix& a, const ComplexInterval& s) {
        IntervalMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] * s;
        return r;
    }
    friend IntervalMatrix operator*(const ComplexInterval& s, const IntervalMatrix& a) { return a * s; }

    std::vector<ComplexInterval> apply(const std::vector<ComplexInterval>& v) const {
        std::vector<ComplexInterval> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    IntervalMatrix conj_transpose() const {
        IntervalMatrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = conj((*this)(i, j));
        return r;
    }

    // Upper bound on the Frobenius norm; dominates the l2 operator norm.
    RealInterval frobenius_sup() const {
        RealInterval s;
        for (const auto& z : e_) s += abs_sq(z);
        return sqrt(s);
    }

    bool contains_zero() const {
        for (const auto& z : e_)
            if (!z.contains(std::complex<double>(0.0, 0.0))) return false;
        return true;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<ComplexInterval> e_;
};

inline ComplexInterval det3c(const IntervalMatrix& m) {
    auto minor2 = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    };
    return m(0, 0) * minor2(1, 2, 1, 2) - m(0, 1) * minor2(1, 2, 0, 2) + m(0, 2) * minor2(1, 2, 0, 1);
}

inline IntervalMatrix adjugate3(const IntervalMatrix& m) {
    IntervalMatrix a(3, 3);
    auto minor2 = [&](std::size_t i, std::size_t j) {
        std::size_t r0 = (i == 0) ? 1 : 0, r1 = (i == 2) ? 1 : 2;
        std::size_t c0 = (j == 0) ? 1 : 0, c1 = (j == 2) ? 1 : 2;
        return m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0);
    };
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            ComplexInterval mm = minor2(i, j);
            a(j, i) = (((i + j) % 2) == 0) ? mm : -mm;
        }
    return a;
}

// Matrices represented as {M + E : M in center, E in err}, where center holds
// point (or near-point) intervals and err holds small-width error bounds.
struct ErrorSplitMatrix {
    IntervalMatrix center;
    IntervalMatrix err;

    ErrorSplitMatrix() = default;
    ErrorSplitMatrix(IntervalMatrix c, IntervalMatrix e)
        : center(std::move(c)), err(std::move(e)) {}

    // Collapse into one interval matrix.
    IntervalMatrix total() const { return center + err; }
};

// Enclosure of (A+Ae)(B+Be)(C+Ce) with the center product kept separate from
// the seven error cross terms.
inline ErrorSplitMatrix product_with_error(const ErrorSplitMatrix& a, const ErrorSplitMatrix& b,
                                           const ErrorSplitMatrix& c) {
    const IntervalMatrix bc = b.center * c.center;
    IntervalMatrix center = a.center * bc;
    IntervalMatrix err = a.err * bc;                       // Ae B C
    err = err + a.center * (b.err * c.center);             // A Be C
    err = err + (a.center * b.center) * c.err;             // A B Ce
    err = err + a.center * (b.err * c.err);                // A Be Ce
    err = err + a.err * (b.center * c.err);                // Ae B Ce
    err = err + a.err * (b.err * c.center);                // Ae Be C
    err = err + a.err * (b.err * c.err);                   // Ae Be Ce
    return {std::move(center), std::move(err)};
}

}  // namespace evanscert
