#pragma once

// Compact triangular Toeplitz matrices and the structured products between
// them and dense operands.
//
// lower_toeplitz stores its first column c_1..c_m, entry (i, j) = c_{i-j+1}
// for i >= j. upper_toeplitz stores its first row r_1..r_m, entry (i, j) =
// r_{j-i+1} for j >= i. Storage below is 0-based: coeff(k) is the value on
// the k-th sub/super-diagonal.

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"

namespace toepsyl {

template <field_scalar T>
class lower_toeplitz {
public:
    explicit lower_toeplitz(std::vector<T> first_column) : col_(std::move(first_column)) {
        if (col_.empty()) {
            throw dimension_error("lower Toeplitz matrix needs at least one coefficient");
        }
    }

    std::size_t order() const noexcept { return col_.size(); }
    const std::vector<T>& column() const noexcept { return col_; }
    const T& coeff(std::size_t k) const { return col_[k]; }

    dense_matrix<T> dense() const {
        const std::size_t m = order();
        dense_matrix<T> out(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j <= i; ++j) {
                out(i, j) = col_[i - j];
            }
        }
        return out;
    }

    friend bool operator==(const lower_toeplitz&, const lower_toeplitz&) = default;

private:
    std::vector<T> col_;
};

template <field_scalar T>
class upper_toeplitz {
public:
    explicit upper_toeplitz(std::vector<T> first_row) : row_(std::move(first_row)) {
        if (row_.empty()) {
            throw dimension_error("upper Toeplitz matrix needs at least one coefficient");
        }
    }

    std::size_t order() const noexcept { return row_.size(); }
    const std::vector<T>& row() const noexcept { return row_; }
    const T& coeff(std::size_t k) const { return row_[k]; }

    dense_matrix<T> dense() const {
        const std::size_t m = order();
        dense_matrix<T> out(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i; j < m; ++j) {
                out(i, j) = row_[j - i];
            }
        }
        return out;
    }

    friend bool operator==(const upper_toeplitz&, const upper_toeplitz&) = default;

private:
    std::vector<T> row_;
};

template <field_scalar T>
dense_matrix<T> densify(const lower_toeplitz<T>& l) {
    return l.dense();
}

template <field_scalar T>
dense_matrix<T> densify(const upper_toeplitz<T>& u) {
    return u.dense();
}

/// Lower triangular Toeplitz matrix with first column (c_1, ..., c_m).
template <field_scalar T>
lower_toeplitz<T> lower_from_coeffs(std::span<const T> coeffs) {
    return lower_toeplitz<T>(std::vector<T>(coeffs.begin(), coeffs.end()));
}

/// Upper triangular Toeplitz matrix built from (c_2, ..., c_{m+1}): the
/// diagonal is c_{m+1} and the last superdiagonal entry is c_2.
template <field_scalar T>
upper_toeplitz<T> upper_from_coeffs(std::span<const T> coeffs) {
    return upper_toeplitz<T>(std::vector<T>(coeffs.rbegin(), coeffs.rend()));
}

/// Forward recursion g_1 = 1/c_1, g_k = -(sum_{j=2..k} c_j g_{k-j+1}) / c_1.
template <field_scalar T>
lower_toeplitz<T> invert_lower(const lower_toeplitz<T>& l) {
    const std::size_t m = l.order();
    if (l.coeff(0) == 0) {
        throw singular_error("lower Toeplitz matrix has a zero diagonal");
    }
    std::vector<T> g(m, T(0));
    const T inv_lead = T(1) / l.coeff(0);
    g[0] = inv_lead;
    for (std::size_t k = 1; k < m; ++k) {
        T acc(0);
        for (std::size_t j = 1; j <= k; ++j) {
            if (!detail::is_zero(l.coeff(j))) {
                acc += l.coeff(j) * g[k - j];
            }
        }
        g[k] = -acc * inv_lead;
    }
    return lower_toeplitz<T>(std::move(g));
}

/// U^{-1} = J (J U J)^{-1} J, where J U J is lower Toeplitz with U's first
/// row as its first column.
template <field_scalar T>
upper_toeplitz<T> invert_upper(const upper_toeplitz<T>& u) {
    if (u.coeff(0) == 0) {
        throw singular_error("upper Toeplitz matrix has a zero diagonal");
    }
    const lower_toeplitz<T> reversed(u.row());
    return upper_toeplitz<T>(invert_lower(reversed).column());
}

namespace detail {

inline void require_order(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw dimension_error(std::string(what) + ": orders " + std::to_string(a) + " and " +
                              std::to_string(b));
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Toeplitz x Toeplitz, O(m^2)
// ---------------------------------------------------------------------------

template <field_scalar T>
lower_toeplitz<T> operator*(const lower_toeplitz<T>& a, const lower_toeplitz<T>& b) {
    detail::require_order(a.order(), b.order(), "lower*lower");
    const std::size_t m = a.order();
    std::vector<T> c(m, T(0));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
            c[k] += a.coeff(j) * b.coeff(k - j);
        }
    }
    return lower_toeplitz<T>(std::move(c));
}

template <field_scalar T>
upper_toeplitz<T> operator*(const upper_toeplitz<T>& a, const upper_toeplitz<T>& b) {
    detail::require_order(a.order(), b.order(), "upper*upper");
    const std::size_t m = a.order();
    std::vector<T> r(m, T(0));
    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t j = 0; j <= k; ++j) {
            r[k] += a.coeff(j) * b.coeff(k - j);
        }
    }
    return upper_toeplitz<T>(std::move(r));
}

/// (L U)(i, j) = (L U)(i-1, j-1) + l_i u_j.
template <field_scalar T>
dense_matrix<T> operator*(const lower_toeplitz<T>& l, const upper_toeplitz<T>& u) {
    detail::require_order(l.order(), u.order(), "lower*upper");
    const std::size_t m = l.order();
    dense_matrix<T> out(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            T v = l.coeff(i) * u.coeff(j);
            if (i > 0 && j > 0) {
                v += out(i - 1, j - 1);
            }
            out(i, j) = std::move(v);
        }
    }
    return out;
}

/// (U L)(i, j) = (U L)(i+1, j+1) + u_{m-1-i} l_{m-1-j}.
template <field_scalar T>
dense_matrix<T> operator*(const upper_toeplitz<T>& u, const lower_toeplitz<T>& l) {
    detail::require_order(l.order(), u.order(), "upper*lower");
    const std::size_t m = l.order();
    dense_matrix<T> out(m, m);
    for (std::size_t i = m; i-- > 0;) {
        for (std::size_t j = m; j-- > 0;) {
            T v = u.coeff(m - 1 - i) * l.coeff(m - 1 - j);
            if (i + 1 < m && j + 1 < m) {
                v += out(i + 1, j + 1);
            }
            out(i, j) = std::move(v);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Toeplitz x dense, O(m^2 c / 2)
// ---------------------------------------------------------------------------

template <field_scalar T>
dense_matrix<T> operator*(const lower_toeplitz<T>& l, const dense_matrix<T>& x) {
    detail::require_order(l.order(), x.rows(), "lower*dense");
    const std::size_t m = l.order();
    dense_matrix<T> out(m, x.cols());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k <= i; ++k) {
            const T& a = l.coeff(i - k);
            if (detail::is_zero(a)) {
                continue;
            }
            for (std::size_t c = 0; c < x.cols(); ++c) {
                out(i, c) += a * x(k, c);
            }
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> operator*(const upper_toeplitz<T>& u, const dense_matrix<T>& x) {
    detail::require_order(u.order(), x.rows(), "upper*dense");
    const std::size_t m = u.order();
    dense_matrix<T> out(m, x.cols());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = i; k < m; ++k) {
            const T& a = u.coeff(k - i);
            if (detail::is_zero(a)) {
                continue;
            }
            for (std::size_t c = 0; c < x.cols(); ++c) {
                out(i, c) += a * x(k, c);
            }
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> operator*(const dense_matrix<T>& x, const lower_toeplitz<T>& l) {
    detail::require_order(x.cols(), l.order(), "dense*lower");
    const std::size_t m = l.order();
    dense_matrix<T> out(x.rows(), m);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t k = 0; k < m; ++k) {
            const T& a = x(r, k);
            if (detail::is_zero(a)) {
                continue;
            }
            // column k of the row contributes to output columns j <= k
            for (std::size_t j = 0; j <= k; ++j) {
                out(r, j) += a * l.coeff(k - j);
            }
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> operator*(const dense_matrix<T>& x, const upper_toeplitz<T>& u) {
    detail::require_order(x.cols(), u.order(), "dense*upper");
    const std::size_t m = u.order();
    dense_matrix<T> out(x.rows(), m);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t k = 0; k < m; ++k) {
            const T& a = x(r, k);
            if (detail::is_zero(a)) {
                continue;
            }
            for (std::size_t j = k; j < m; ++j) {
                out(r, j) += a * u.coeff(j - k);
            }
        }
    }
    return out;
}

} // namespace toepsyl
