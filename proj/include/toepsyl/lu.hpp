#pragma once

// LU factorization with row pivoting. This is the general solver behind the
// structured inverses (it inverts the m x m Bezoutian); it is kept apart from
// the Gauss-Jordan oracle so the two routes never share code.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

namespace toepsyl {

template <field_scalar T>
class lu_factorization {
public:
    /// Float pivots below `relative_threshold * max|a_ij|` count as zero.
    explicit lu_factorization(dense_matrix<T> a, double relative_threshold = 1e-12)
        : lu_(std::move(a)), perm_(lu_.rows()) {
        if (lu_.rows() != lu_.cols()) {
            throw dimension_error("lu_factorization: matrix is not square");
        }
        const std::size_t n = lu_.rows();
        std::iota(perm_.begin(), perm_.end(), std::size_t{0});

        double scale = 0.0;
        for (const T& v : lu_.entries()) {
            scale = std::max(scale, field_traits<T>::magnitude(v));
        }

        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            if constexpr (field_traits<T>::exact) {
                while (p < n && lu_(p, k) == 0) {
                    ++p;
                }
                if (p == n) {
                    throw singular_error("lu_factorization: singular matrix");
                }
            } else {
                for (std::size_t r = k + 1; r < n; ++r) {
                    if (std::abs(lu_(r, k)) > std::abs(lu_(p, k))) {
                        p = r;
                    }
                }
                const double mag = std::abs(lu_(p, k));
                if (mag == 0.0 || mag < relative_threshold * scale) {
                    throw singular_error("lu_factorization: singular matrix");
                }
            }
            if (p != k) {
                for (std::size_t c = 0; c < n; ++c) {
                    std::swap(lu_(k, c), lu_(p, c));
                }
                std::swap(perm_[k], perm_[p]);
            }
            for (std::size_t r = k + 1; r < n; ++r) {
                if (lu_(r, k) == 0) {
                    continue;
                }
                lu_(r, k) /= lu_(k, k);
                const T f = lu_(r, k);
                for (std::size_t c = k + 1; c < n; ++c) {
                    lu_(r, c) -= f * lu_(k, c);
                }
            }
        }
    }

    std::size_t order() const noexcept { return lu_.rows(); }

    /// Solves A X = B for X.
    dense_matrix<T> solve(const dense_matrix<T>& b) const {
        const std::size_t n = order();
        if (b.rows() != n) {
            throw dimension_error("lu solve: right-hand side has wrong row count");
        }
        const std::size_t k_cols = b.cols();
        dense_matrix<T> x(n, k_cols);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < k_cols; ++c) {
                x(r, c) = b(perm_[r], c);
            }
        }
        // L y = P b, unit diagonal
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t k = 0; k < r; ++k) {
                const T& f = lu_(r, k);
                if (f == 0) {
                    continue;
                }
                for (std::size_t c = 0; c < k_cols; ++c) {
                    x(r, c) -= f * x(k, c);
                }
            }
        }
        // U x = y
        for (std::size_t r = n; r-- > 0;) {
            for (std::size_t k = r + 1; k < n; ++k) {
                const T& f = lu_(r, k);
                if (f == 0) {
                    continue;
                }
                for (std::size_t c = 0; c < k_cols; ++c) {
                    x(r, c) -= f * x(k, c);
                }
            }
            const T inv = T(1) / lu_(r, r);
            for (std::size_t c = 0; c < k_cols; ++c) {
                x(r, c) *= inv;
            }
        }
        return x;
    }

    dense_matrix<T> inverse() const { return solve(identity<T>(order())); }

private:
    dense_matrix<T> lu_;
    std::vector<std::size_t> perm_;
};

template <field_scalar T>
dense_matrix<T> lu_inverse(const dense_matrix<T>& a) {
    return lu_factorization<T>(a).inverse();
}

} // namespace toepsyl
