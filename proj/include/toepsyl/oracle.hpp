#pragma once

// Brute-force dense linear algebra used as ground truth. Depends only on the
// scalar field and the dense carrier; nothing structured lives here.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

namespace toepsyl::oracle {

// Float realization: elimination runs on the transpose, so partial pivoting
// picks the pivot along a row of the input. Row-wise partial pivoting shows
// exponential growth on Sylvester layouts (banded columns); the transposed
// orientation does not.

/// Relative pivot threshold for the float realization: a pivot is treated as
/// zero when it falls below this multiple of the largest magnitude in the
/// same column of the (transposed) working matrix before elimination.
inline constexpr double float_pivot_threshold = 1e-12;

namespace detail {

inline void require_square(std::size_t rows, std::size_t cols, const char* what) {
    if (rows != cols) {
        throw dimension_error(std::string(what) + ": matrix is not square");
    }
}

template <field_scalar T>
std::vector<double> column_scales(const dense_matrix<T>& x) {
    std::vector<double> scale(x.cols(), 0.0);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            scale[c] = std::max(scale[c], field_traits<T>::magnitude(x(r, c)));
        }
    }
    return scale;
}

// Row index of the pivot for column `col`, searching rows col..n-1, or
// nullopt when the column is numerically zero there.
template <field_scalar T>
std::optional<std::size_t> find_pivot(const dense_matrix<T>& work, std::size_t col,
                                      double column_scale) {
    const std::size_t n = work.rows();
    if constexpr (field_traits<T>::exact) {
        for (std::size_t r = col; r < n; ++r) {
            if (work(r, col) != 0) {
                return r;
            }
        }
        return std::nullopt;
    } else {
        std::size_t best = col;
        double best_mag = -1.0;
        for (std::size_t r = col; r < n; ++r) {
            const double mag = field_traits<T>::magnitude(work(r, col));
            if (mag > best_mag) {
                best = r;
                best_mag = mag;
            }
        }
        if (best_mag == 0.0 || best_mag < float_pivot_threshold * column_scale) {
            return std::nullopt;
        }
        return best;
    }
}

template <field_scalar T>
void swap_rows(dense_matrix<T>& x, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t c = 0; c < x.cols(); ++c) {
        std::swap(x(a, c), x(b, c));
    }
}

template <field_scalar T>
dense_matrix<T> gauss_jordan_inverse(const dense_matrix<T>& x) {
    const std::size_t n = x.rows();
    const std::vector<double> scales = detail::column_scales(x);

    dense_matrix<T> work(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            work(r, c) = x(r, c);
        }
        work(r, n + r) = T(1);
    }

    for (std::size_t col = 0; col < n; ++col) {
        const auto pivot_row = detail::find_pivot(work, col, scales[col]);
        if (!pivot_row) {
            throw singular_error("dense_inverse: matrix is singular (column " +
                                 std::to_string(col + 1) + ")");
        }
        detail::swap_rows(work, col, *pivot_row);

        const T inv_pivot = T(1) / work(col, col);
        for (std::size_t c = col; c < 2 * n; ++c) {
            work(col, c) *= inv_pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || work(r, col) == 0) {
                continue;
            }
            const T factor = work(r, col);
            for (std::size_t c = col; c < 2 * n; ++c) {
                if (work(col, c) != 0) {
                    work(r, c) -= factor * work(col, c);
                }
            }
        }
    }
    return window(work, n + 1, n);
}

} // namespace detail

/// Gauss-Jordan on [X | I]. Throws singular_error when no usable pivot exists.
template <field_scalar T>
dense_matrix<T> dense_inverse(const dense_matrix<T>& x) {
    detail::require_square(x.rows(), x.cols(), "dense_inverse");
    if constexpr (field_traits<T>::exact) {
        return detail::gauss_jordan_inverse(x);
    } else {
        return transpose(detail::gauss_jordan_inverse(transpose(x)));
    }
}

/// Determinant by forward elimination with sign tracking.
template <field_scalar T>
T dense_det(const dense_matrix<T>& x) {
    detail::require_square(x.rows(), x.cols(), "dense_det");
    const std::size_t n = x.rows();
    dense_matrix<T> work = x;
    T det(1);
    for (std::size_t col = 0; col < n; ++col) {
        // zero scale: only an exactly zero column ends the elimination
        const auto pivot_row = detail::find_pivot(work, col, 0.0);
        if (!pivot_row) {
            return T(0);
        }
        if (*pivot_row != col) {
            detail::swap_rows(work, col, *pivot_row);
            det = -det;
        }
        const T pivot = work(col, col);
        det *= pivot;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (work(r, col) == 0) {
                continue;
            }
            const T factor = work(r, col) / pivot;
            for (std::size_t c = col; c < n; ++c) {
                work(r, c) -= factor * work(col, c);
            }
        }
    }
    return det;
}

/// Exact field: det == 0. Float field: elimination (same orientation as
/// dense_inverse) meets a pivot below float_pivot_threshold.
template <field_scalar T>
bool is_singular(const dense_matrix<T>& x) {
    detail::require_square(x.rows(), x.cols(), "is_singular");
    if constexpr (field_traits<T>::exact) {
        return dense_det(x) == 0;
    } else {
        const std::size_t n = x.rows();
        dense_matrix<T> work = transpose(x);
        const std::vector<double> scales = detail::column_scales(work);
        for (std::size_t col = 0; col < n; ++col) {
            const auto pivot_row = detail::find_pivot(work, col, scales[col]);
            if (!pivot_row) {
                return true;
            }
            detail::swap_rows(work, col, *pivot_row);
            for (std::size_t r = col + 1; r < n; ++r) {
                const T factor = work(r, col) / work(col, col);
                for (std::size_t c = col; c < n; ++c) {
                    work(r, c) -= factor * work(col, c);
                }
            }
        }
        return false;
    }
}

} // namespace toepsyl::oracle
