#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "gemcensus/errors.hpp"

namespace gemcensus {

// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw InvalidParams("matrix dimensions must be non-negative");
        data_.resize(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    mpz_class& at(int r, int c) { return data_[index(r, c)]; }
    const mpz_class& at(int r, int c) const { return data_[index(r, c)]; }

  private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
               static_cast<std::size_t>(c);
    }

    int rows_;
    int cols_;
    std::vector<mpz_class> data_;
};

struct SmithResult {
    // Nonzero diagonal entries after reduction: positive, each dividing the next.
    std::vector<mpz_class> factors;
};

namespace detail {

// Quotient of a by b rounded to the nearest integer (b > 0), so that the
// remainder a - q*b lies in [-b/2, b/2].
inline mpz_class rounded_quotient(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (2 * r > b) ++q;
    return q;
}

inline void swap_rows(IntMatrix& m, int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < m.cols(); ++c) std::swap(m.at(r1, c), m.at(r2, c));
}

inline void swap_cols(IntMatrix& m, int c1, int c2) {
    if (c1 == c2) return;
    for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, c1), m.at(r, c2));
}

}  // namespace detail

// Smith normal form by repeated pivoting on the entry of least absolute
// value. The input is consumed; only the invariant factors are returned.
inline SmithResult smith_normal_form(IntMatrix m) {
    const int rows = m.rows();
    const int cols = m.cols();
    SmithResult out;
    int t = 0;
    while (t < rows && t < cols) {
        // Locate the submatrix entry of least absolute value.
        int pr = -1;
        int pc = -1;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c) {
                if (m.at(r, c) == 0) continue;
                if (pr == -1 ||
                    mpz_cmpabs(m.at(r, c).get_mpz_t(), m.at(pr, pc).get_mpz_t()) < 0) {
                    pr = r;
                    pc = c;
                }
            }
        if (pr == -1) break;  // the rest of the matrix is zero
        detail::swap_rows(m, t, pr);
        detail::swap_cols(m, t, pc);
        if (m.at(t, t) < 0)
            for (int c = t; c < cols; ++c) m.at(t, c) = -m.at(t, c);

        // Clear the pivot's row and column; any surviving remainder is
        // strictly smaller than the pivot, so re-running the pivot search
        // makes progress.
        bool reduced = true;
        for (int r = t + 1; r < rows; ++r) {
            if (m.at(r, t) == 0) continue;
            const mpz_class q = detail::rounded_quotient(m.at(r, t), m.at(t, t));
            for (int c = t; c < cols; ++c) m.at(r, c) -= q * m.at(t, c);
            if (m.at(r, t) != 0) reduced = false;
        }
        for (int c = t + 1; c < cols; ++c) {
            if (m.at(t, c) == 0) continue;
            const mpz_class q = detail::rounded_quotient(m.at(t, c), m.at(t, t));
            for (int r = t; r < rows; ++r) m.at(r, c) -= q * m.at(r, t);
            if (m.at(t, c) != 0) reduced = false;
        }
        if (!reduced) continue;

        // Enforce divisibility: fold any offending row into the pivot row and
        // reduce again.
        bool divides = true;
        for (int r = t + 1; r < rows && divides; ++r)
            for (int c = t + 1; c < cols; ++c) {
                if (m.at(r, c) % m.at(t, t) == 0) continue;
                for (int cc = t; cc < cols; ++cc) m.at(t, cc) += m.at(r, cc);
                divides = false;
                break;
            }
        if (!divides) continue;
        ++t;
    }
    for (int i = 0; i < t; ++i) out.factors.push_back(m.at(i, i));
    return out;
}

}  // namespace gemcensus
