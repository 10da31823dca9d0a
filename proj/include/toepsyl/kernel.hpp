#pragma once

// The kernel matrix T = (-D_U D_L^{-1} | I_m | -D_L D_U^{-1}) and the window
// calculus around it.
//
// Notation (all indices 1-based, windows run over 1..m+1):
//   T_i      columns i .. i+2m-1 of T                  (m x 2m)
//   T_{i,j}  columns j .. j+m-1 of T_i                 (m x m)
//   A_i      columns i .. i+m-1 of A_B (bottom of D^{-1})
//   B_i      columns i .. i+m-1 of B_B (bottom of S^{-1})
//   H        T M                                         (m x 2m)
//
// Closed forms:
//   A_j^{-1} = T_{m-j+2} D_r        B_j^{-1} = T_{m-j+2} N
//   A_i^{-1} A_j = T_{m-i+2, j} = B_i^{-1} B_j
//   H_i = B_{m-i+2}^{-1}            B_i H = T_i

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "builders.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "toeplitz.hpp"

namespace toepsyl {

/// All index arithmetic of the window calculus.
namespace index_map {

/// Throws dimension_error unless 1 <= i <= m+1.
inline void require_window(std::size_t m, std::size_t i) {
    if (i < 1 || i > m + 1) {
        throw dimension_error("window index " + std::to_string(i) + " outside 1.." +
                              std::to_string(m + 1));
    }
}

/// m - i + 2: the T-window whose product with D_r (resp. N) inverts A_i (resp. B_i).
inline std::size_t complement(std::size_t m, std::size_t i) {
    require_window(m, i);
    return m - i + 2;
}

/// First column of T occupied by T_{i,j}: i + j - 1.
inline std::size_t block_start(std::size_t m, std::size_t i, std::size_t j) {
    require_window(m, i);
    require_window(m, j);
    return i + j - 1;
}

/// Largest k >= 0 with (i+k, j-k) both in 1..m+1.
inline std::size_t max_shift(std::size_t m, std::size_t i, std::size_t j) {
    require_window(m, i);
    require_window(m, j);
    return std::min(m + 1 - i, j - 1);
}

} // namespace index_map

/// Strong 1-based window index, validated against an order m.
class window_index {
public:
    window_index(std::size_t m, std::size_t i) : value_(i) { index_map::require_window(m, i); }
    std::size_t value() const noexcept { return value_; }
    operator std::size_t() const noexcept { return value_; }

private:
    std::size_t value_;
};

/// m x 3m kernel matrix.
template <field_scalar T>
class kernel_t {
public:
    explicit kernel_t(const instance<T>& inst) : m_(inst.order()) {
        lower_toeplitz<T> dl_inv = inverted(inst.d_lower(), "d_1 = 0");
        upper_toeplitz<T> du_inv = inverted(inst.d_upper(), "d_{m+1} = 0");
        const dense_matrix<T> left = -(inst.d_upper() * dl_inv);
        const dense_matrix<T> right = -(inst.d_lower() * du_inv);
        const dense_matrix<T> mid = identity<T>(m_);
        body_ = hstack<T>({&left, &mid, &right});
    }

    std::size_t order() const noexcept { return m_; }
    const dense_matrix<T>& body() const noexcept { return body_; }

    /// T_i, m x 2m.
    dense_matrix<T> window(std::size_t i) const {
        index_map::require_window(m_, i);
        return toepsyl::window(body_, i, 2 * m_);
    }

    /// T_{i,j}, m x m.
    dense_matrix<T> block(std::size_t i, std::size_t j) const {
        return toepsyl::window(body_, index_map::block_start(m_, i, j), m_);
    }

private:
    template <class Tri>
    static Tri inverted(const Tri& t, const char* why) {
        try {
            return invert_lower_or_upper(t);
        } catch (const singular_error&) {
            throw singular_error(std::string("kernel undefined: ") + why);
        }
    }
    static lower_toeplitz<T> invert_lower_or_upper(const lower_toeplitz<T>& l) {
        return invert_lower(l);
    }
    static upper_toeplitz<T> invert_lower_or_upper(const upper_toeplitz<T>& u) {
        return invert_upper(u);
    }

    std::size_t m_;
    dense_matrix<T> body_;
};

template <field_scalar T>
kernel_t<T> build_T(const instance<T>& inst) {
    return kernel_t<T>(inst);
}

template <field_scalar T>
dense_matrix<T> t_window(const kernel_t<T>& t, std::size_t i) {
    return t.window(i);
}

template <field_scalar T>
dense_matrix<T> t_block(const kernel_t<T>& t, std::size_t i, std::size_t j) {
    return t.block(i, j);
}

/// Everything the identity checks need for one instance, computed once.
///
/// A and B default to the structured inverses of D and S; either may be
/// supplied explicitly (e.g. an oracle inverse, or a deliberately corrupted
/// one) while T, N, D_r and the closed-form window inverses are always
/// derived from the instance alone.
template <field_scalar T>
class window_calculus {
public:
    explicit window_calculus(instance<T> inst)
        : window_calculus(inst, invert_D_structured(inst), invert_S_structured(inst)) {}

    window_calculus(instance<T> inst, dense_matrix<T> a_full, dense_matrix<T> b_full)
        : inst_(std::move(inst)),
          m_(inst_.order()),
          kernel_(inst_),
          a_full_(std::move(a_full)),
          b_full_(std::move(b_full)) {
        if (a_full_.rows() != 2 * m_ || a_full_.cols() != 2 * m_ || b_full_.rows() != 2 * m_ ||
            b_full_.cols() != 2 * m_) {
            throw dimension_error("window_calculus: A and B must be 2m x 2m");
        }
        a_bottom_ = row_block(a_full_, m_ + 1, m_);
        b_bottom_ = row_block(b_full_, m_ + 1, m_);
        d_l_ = build_Dl(inst_);
        d_r_ = build_Dr(inst_);
        n_ = build_N(inst_);
        h_ = kernel_.body() * build_M(inst_);
        for (std::size_t i = 1; i <= m_ + 1; ++i) {
            a_windows_.push_back(window(a_bottom_, i, m_));
            b_windows_.push_back(window(b_bottom_, i, m_));
            const auto t = kernel_.window(index_map::complement(m_, i));
            a_invs_.push_back(t * d_r_);
            b_invs_.push_back(t * n_);
        }
    }

    const instance<T>& inst() const noexcept { return inst_; }
    std::size_t order() const noexcept { return m_; }
    const kernel_t<T>& kernel() const noexcept { return kernel_; }

    const dense_matrix<T>& a_full() const noexcept { return a_full_; }
    const dense_matrix<T>& b_full() const noexcept { return b_full_; }
    const dense_matrix<T>& a_bottom() const noexcept { return a_bottom_; }
    const dense_matrix<T>& b_bottom() const noexcept { return b_bottom_; }
    const dense_matrix<T>& d_l() const noexcept { return d_l_; }
    const dense_matrix<T>& d_r() const noexcept { return d_r_; }
    const dense_matrix<T>& n() const noexcept { return n_; }
    const dense_matrix<T>& h() const noexcept { return h_; }

    const dense_matrix<T>& a_window(std::size_t i) const { return a_windows_[slot(i)]; }
    const dense_matrix<T>& b_window(std::size_t i) const { return b_windows_[slot(i)]; }
    /// T_{m-j+2} D_r
    const dense_matrix<T>& a_inv(std::size_t j) const { return a_invs_[slot(j)]; }
    /// T_{m-j+2} N
    const dense_matrix<T>& b_inv(std::size_t j) const { return b_invs_[slot(j)]; }
    /// H_i, columns i..i+m-1 of H.
    dense_matrix<T> h_window(std::size_t i) const { return window(h_, slot(i) + 1, m_); }

private:
    std::size_t slot(std::size_t i) const {
        index_map::require_window(m_, i);
        return i - 1;
    }

    instance<T> inst_;
    std::size_t m_;
    kernel_t<T> kernel_;
    dense_matrix<T> a_full_, b_full_;
    dense_matrix<T> a_bottom_, b_bottom_;
    dense_matrix<T> d_l_, d_r_, n_, h_;
    std::vector<dense_matrix<T>> a_windows_, b_windows_, a_invs_, b_invs_;
};

// Free-function forms; each builds what it needs from the instance.

template <field_scalar T>
dense_matrix<T> a_window(const instance<T>& inst, std::size_t i) {
    index_map::require_window(inst.order(), i);
    return window(row_block(invert_D_structured(inst), inst.order() + 1, inst.order()), i,
                  inst.order());
}

template <field_scalar T>
dense_matrix<T> b_window(const instance<T>& inst, std::size_t i) {
    index_map::require_window(inst.order(), i);
    return window(row_block(invert_S_structured(inst), inst.order() + 1, inst.order()), i,
                  inst.order());
}

template <field_scalar T>
dense_matrix<T> a_inv(const instance<T>& inst, std::size_t j) {
    const kernel_t<T> t(inst);
    return t.window(index_map::complement(inst.order(), j)) * build_Dr(inst);
}

template <field_scalar T>
dense_matrix<T> b_inv(const instance<T>& inst, std::size_t j) {
    const kernel_t<T> t(inst);
    return t.window(index_map::complement(inst.order(), j)) * build_N(inst);
}

template <field_scalar T>
dense_matrix<T> h_matrix(const instance<T>& inst) {
    return kernel_t<T>(inst).body() * build_M(inst);
}

template <field_scalar T>
dense_matrix<T> h_window(const dense_matrix<T>& h, std::size_t i) {
    const std::size_t m = h.rows();
    index_map::require_window(m, i);
    return window(h, i, m);
}

} // namespace toepsyl
