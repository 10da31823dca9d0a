#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <type_traits>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "numeric.hpp"

namespace toepsyl {

/// Row-major dense matrix over a field. Element access is 0-based;
/// every window / block operation in the library is 1-based.
template <field_scalar T>
class dense_matrix {
public:
    using value_type = T;

    dense_matrix() = default;

    dense_matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, T(0)) {
        if (rows == 0 || cols == 0) {
            throw dimension_error("matrix dimensions must be positive");
        }
    }

    dense_matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw dimension_error("matrix dimensions must be positive");
        }
        if (entries_.size() != rows * cols) {
            throw dimension_error("entry count does not match " + std::to_string(rows) + "x" +
                                  std::to_string(cols));
        }
    }

    dense_matrix(std::initializer_list<std::initializer_list<T>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        if (rows_ == 0 || cols_ == 0) {
            throw dimension_error("matrix dimensions must be positive");
        }
        entries_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw dimension_error("ragged matrix literal");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    T& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<T>& entries() const noexcept { return entries_; }

    friend bool operator==(const dense_matrix& a, const dense_matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> entries_;
};

template <field_scalar T>
dense_matrix<T> identity(std::size_t n) {
    dense_matrix<T> out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = T(1);
    }
    return out;
}

namespace detail {

inline void require_same_shape(std::size_t ar, std::size_t ac, std::size_t br, std::size_t bc,
                               const char* what) {
    if (ar != br || ac != bc) {
        throw dimension_error(std::string(what) + ": shape " + std::to_string(ar) + "x" +
                              std::to_string(ac) + " vs " + std::to_string(br) + "x" +
                              std::to_string(bc));
    }
}

template <class T>
bool is_zero(const T& x) {
    return x == 0;
}

// Scales every entry by the lcm of the denominators, giving an integer matrix.
inline std::vector<mpz_class> integer_scaled(const std::vector<rational>& entries,
                                             mpz_class& common) {
    common = 1;
    for (const auto& q : entries) {
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den_mpz_t());
    }
    std::vector<mpz_class> out;
    out.reserve(entries.size());
    for (const auto& q : entries) {
        mpz_class v = common / q.get_den();
        v *= q.get_num();
        out.push_back(std::move(v));
    }
    return out;
}

// Rational product with one gcd per output entry instead of one per
// multiply-add.
inline std::vector<rational> rational_product(const std::vector<rational>& x,
                                              const std::vector<rational>& y, std::size_t rows,
                                              std::size_t inner, std::size_t cols) {
    mpz_class dx, dy;
    const auto xi = integer_scaled(x, dx);
    const auto yi = integer_scaled(y, dy);
    std::vector<mpz_class> acc(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t k = 0; k < inner; ++k) {
            const mpz_class& a = xi[i * inner + k];
            if (a == 0) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                mpz_addmul(acc[i * cols + j].get_mpz_t(), a.get_mpz_t(), yi[k * cols + j].get_mpz_t());
            }
        }
    }
    const mpz_class den = dx * dy;
    std::vector<rational> out(rows * cols);
    for (std::size_t e = 0; e < out.size(); ++e) {
        out[e] = rational(acc[e], den);
        out[e].canonicalize();
    }
    return out;
}

} // namespace detail

template <field_scalar T>
dense_matrix<T> operator*(const dense_matrix<T>& x, const dense_matrix<T>& y) {
    if (x.cols() != y.rows()) {
        throw dimension_error("mat_mul: inner dimensions " + std::to_string(x.cols()) + " and " +
                              std::to_string(y.rows()));
    }
    if constexpr (std::is_same_v<T, rational>) {
        return dense_matrix<T>(
            x.rows(), y.cols(),
            detail::rational_product(x.entries(), y.entries(), x.rows(), x.cols(), y.cols()));
    }
    dense_matrix<T> out(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const T& a = x(i, k);
            if (detail::is_zero(a)) {
                continue;
            }
            for (std::size_t j = 0; j < y.cols(); ++j) {
                out(i, j) += a * y(k, j);
            }
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> operator-(const dense_matrix<T>& x, const dense_matrix<T>& y) {
    detail::require_same_shape(x.rows(), x.cols(), y.rows(), y.cols(), "mat_sub");
    dense_matrix<T> out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out(r, c) = x(r, c) - y(r, c);
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> operator+(const dense_matrix<T>& x, const dense_matrix<T>& y) {
    detail::require_same_shape(x.rows(), x.cols(), y.rows(), y.cols(), "mat_add");
    dense_matrix<T> out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out(r, c) = x(r, c) + y(r, c);
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> operator-(const dense_matrix<T>& x) {
    dense_matrix<T> out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out(r, c) = -x(r, c);
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> scaled(const dense_matrix<T>& x, const T& factor) {
    dense_matrix<T> out(x.rows(), x.cols());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out(r, c) = x(r, c) * factor;
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> transpose(const dense_matrix<T>& x) {
    dense_matrix<T> out(x.cols(), x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out(c, r) = x(r, c);
        }
    }
    return out;
}

/// Columns start..start+width-1 (1-based), all rows.
template <field_scalar T>
dense_matrix<T> window(const dense_matrix<T>& x, std::size_t start, std::size_t width) {
    if (start < 1 || width < 1 || start + width - 1 > x.cols()) {
        throw dimension_error("column window [" + std::to_string(start) + ", " +
                              std::to_string(start + width - 1) + "] outside 1.." +
                              std::to_string(x.cols()));
    }
    dense_matrix<T> out(x.rows(), width);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        for (std::size_t c = 0; c < width; ++c) {
            out(r, c) = x(r, start - 1 + c);
        }
    }
    return out;
}

/// Rows start..start+height-1 (1-based), all columns.
template <field_scalar T>
dense_matrix<T> row_block(const dense_matrix<T>& x, std::size_t start, std::size_t height) {
    if (start < 1 || height < 1 || start + height - 1 > x.rows()) {
        throw dimension_error("row block [" + std::to_string(start) + ", " +
                              std::to_string(start + height - 1) + "] outside 1.." +
                              std::to_string(x.rows()));
    }
    dense_matrix<T> out(height, x.cols());
    for (std::size_t r = 0; r < height; ++r) {
        for (std::size_t c = 0; c < x.cols(); ++c) {
            out(r, c) = x(start - 1 + r, c);
        }
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> hstack(std::initializer_list<const dense_matrix<T>*> parts) {
    std::size_t rows = (*parts.begin())->rows();
    std::size_t cols = 0;
    for (const auto* p : parts) {
        if (p->rows() != rows) {
            throw dimension_error("hstack: row counts differ");
        }
        cols += p->cols();
    }
    dense_matrix<T> out(rows, cols);
    std::size_t offset = 0;
    for (const auto* p : parts) {
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < p->cols(); ++c) {
                out(r, offset + c) = (*p)(r, c);
            }
        }
        offset += p->cols();
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> hstack(const dense_matrix<T>& a, const dense_matrix<T>& b) {
    return hstack<T>({&a, &b});
}

template <field_scalar T>
dense_matrix<T> vstack(std::initializer_list<const dense_matrix<T>*> parts) {
    std::size_t cols = (*parts.begin())->cols();
    std::size_t rows = 0;
    for (const auto* p : parts) {
        if (p->cols() != cols) {
            throw dimension_error("vstack: column counts differ");
        }
        rows += p->rows();
    }
    dense_matrix<T> out(rows, cols);
    std::size_t offset = 0;
    for (const auto* p : parts) {
        for (std::size_t r = 0; r < p->rows(); ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                out(offset + r, c) = (*p)(r, c);
            }
        }
        offset += p->rows();
    }
    return out;
}

template <field_scalar T>
dense_matrix<T> vstack(const dense_matrix<T>& a, const dense_matrix<T>& b) {
    return vstack<T>({&a, &b});
}

/// Frobenius norm, evaluated in binary64.
template <field_scalar T>
double frobenius_norm(const dense_matrix<T>& x) {
    double scale = 0.0;
    for (const T& v : x.entries()) {
        scale = std::max(scale, field_traits<T>::magnitude(v));
    }
    if (scale == 0.0 || !std::isfinite(scale)) {
        return scale;
    }
    double sum = 0.0;
    for (const T& v : x.entries()) {
        const double s = field_traits<T>::to_double(v) / scale;
        sum += s * s;
    }
    return scale * std::sqrt(sum);
}

struct comparison {
    bool equal = false;
    /// ||X - Y||_F / max(1, ||X||_F, ||Y||_F); exactly 0 when X == Y.
    double residual = 0.0;

    explicit operator bool() const noexcept { return equal; }
};

template <field_scalar T>
comparison matrices_equal(const dense_matrix<T>& x, const dense_matrix<T>& y,
                          const eq_policy& policy) {
    detail::require_same_shape(x.rows(), x.cols(), y.rows(), y.cols(), "matrices_equal");
    if (x.entries() == y.entries()) {
        return {true, 0.0};
    }
    const dense_matrix<T> diff = x - y;
    const double abs_residual = frobenius_norm(diff);
    const double denom = std::max({1.0, frobenius_norm(x), frobenius_norm(y)});
    comparison out;
    out.residual = abs_residual / denom;
    if (policy.mode() == eq_mode::exact) {
        out.equal = x.entries() == y.entries();
    } else {
        out.equal = abs_residual <= policy.tol() * denom;
    }
    return out;
}

template <field_scalar T>
bool is_zero_matrix(const dense_matrix<T>& x) {
    return std::all_of(x.entries().begin(), x.entries().end(),
                       [](const T& v) { return detail::is_zero(v); });
}

/// Converts a rational matrix into another field.
template <field_scalar T>
dense_matrix<T> convert(const dense_matrix<rational>& x) {
    std::vector<T> entries;
    entries.reserve(x.entries().size());
    for (const auto& v : x.entries()) {
        entries.push_back(field_traits<T>::from_rational(v));
    }
    return dense_matrix<T>(x.rows(), x.cols(), std::move(entries));
}

} // namespace toepsyl
