#pragma once

// Instances and every block matrix assembled from them: the Sylvester matrix
// S, the block lower triangular D, the stacked columns D_l, D_r, N, the
// three-block stacks K and M, the Bezoutian, and the structured inverses of
// S and D.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "error.hpp"
#include "lu.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "toeplitz.hpp"

namespace toepsyl {

/// Coefficient vectors d_1..d_{m+1} and n_1..n_{m+1}.
template <field_scalar T>
class instance {
public:
    instance(std::vector<T> d, std::vector<T> n) : d_(std::move(d)), n_(std::move(n)) {
        if (d_.size() < 2) {
            throw dimension_error("instance needs m >= 1, i.e. at least two d coefficients");
        }
        if (n_.size() != d_.size()) {
            throw dimension_error("d has " + std::to_string(d_.size()) + " coefficients but n has " +
                                  std::to_string(n_.size()));
        }
    }

    std::size_t order() const noexcept { return d_.size() - 1; }
    const std::vector<T>& d() const noexcept { return d_; }
    const std::vector<T>& n() const noexcept { return n_; }

    /// D_L: first column d_1..d_m.
    lower_toeplitz<T> d_lower() const { return lower_from_coeffs<T>(std::span(d_).first(order())); }
    /// D_U: diagonal d_{m+1}, last superdiagonal entry d_2.
    upper_toeplitz<T> d_upper() const { return upper_from_coeffs<T>(std::span(d_).subspan(1)); }
    lower_toeplitz<T> n_lower() const { return lower_from_coeffs<T>(std::span(n_).first(order())); }
    upper_toeplitz<T> n_upper() const { return upper_from_coeffs<T>(std::span(n_).subspan(1)); }

    friend bool operator==(const instance&, const instance&) = default;

private:
    std::vector<T> d_;
    std::vector<T> n_;
};

template <field_scalar T>
instance<T> convert(const instance<rational>& inst) {
    std::vector<T> d, n;
    for (const auto& v : inst.d()) {
        d.push_back(field_traits<T>::from_rational(v));
    }
    for (const auto& v : inst.n()) {
        n.push_back(field_traits<T>::from_rational(v));
    }
    return instance<T>(std::move(d), std::move(n));
}

// ---------------------------------------------------------------------------
// Block assembly
// ---------------------------------------------------------------------------

/// [[D_L, N_L], [D_U, N_U]]
template <field_scalar T>
dense_matrix<T> build_S(const instance<T>& inst) {
    const auto dl = inst.d_lower().dense();
    const auto du = inst.d_upper().dense();
    const auto nl = inst.n_lower().dense();
    const auto nu = inst.n_upper().dense();
    return vstack(hstack(dl, nl), hstack(du, nu));
}

/// [[D_L, 0], [D_U, D_L]]
template <field_scalar T>
dense_matrix<T> build_D(const instance<T>& inst) {
    const std::size_t m = inst.order();
    const auto dl = inst.d_lower().dense();
    const auto du = inst.d_upper().dense();
    const dense_matrix<T> zero(m, m);
    return vstack(hstack(dl, zero), hstack(du, dl));
}

/// [D_L; D_U]
template <field_scalar T>
dense_matrix<T> build_Dl(const instance<T>& inst) {
    return vstack(inst.d_lower().dense(), inst.d_upper().dense());
}

/// [0; D_L]
template <field_scalar T>
dense_matrix<T> build_Dr(const instance<T>& inst) {
    const std::size_t m = inst.order();
    return vstack(dense_matrix<T>(m, m), inst.d_lower().dense());
}

/// [N_L; N_U]
template <field_scalar T>
dense_matrix<T> build_N(const instance<T>& inst) {
    return vstack(inst.n_lower().dense(), inst.n_upper().dense());
}

namespace detail {

// [[L, 0], [U, L], [0, U]]
template <field_scalar T>
dense_matrix<T> three_block_stack(const dense_matrix<T>& lower, const dense_matrix<T>& upper) {
    const dense_matrix<T> zero(lower.rows(), lower.cols());
    const auto top = hstack(lower, zero);
    const auto mid = hstack(upper, lower);
    const auto bottom = hstack(zero, upper);
    return vstack<T>({&top, &mid, &bottom});
}

} // namespace detail

/// [[D_L, 0], [D_U, D_L], [0, D_U]], 3m x 2m.
template <field_scalar T>
dense_matrix<T> build_K(const instance<T>& inst) {
    return detail::three_block_stack(inst.d_lower().dense(), inst.d_upper().dense());
}

/// [[N_L, 0], [N_U, N_L], [0, N_U]], 3m x 2m.
template <field_scalar T>
dense_matrix<T> build_M(const instance<T>& inst) {
    return detail::three_block_stack(inst.n_lower().dense(), inst.n_upper().dense());
}

/// D_L N_U - N_L D_U. The equivalent form N_U D_L - D_U N_L is evaluated as
/// well and must agree; a mismatch is a bug, reported as std::logic_error.
template <field_scalar T>
dense_matrix<T> bezout_matrix(const instance<T>& inst) {
    const auto dl = inst.d_lower();
    const auto du = inst.d_upper();
    const auto nl = inst.n_lower();
    const auto nu = inst.n_upper();
    dense_matrix<T> bez = dl * nu - nl * du;
    const dense_matrix<T> alt = nu * dl - du * nl;
    if (!matrices_equal(bez, alt, default_policy<T>())) {
        throw std::logic_error("bezout_matrix: D_L N_U - N_L D_U differs from N_U D_L - D_U N_L");
    }
    return bez;
}

/// S^{-1} = [[N_U B_z, -N_L B_z], [-D_U B_z, D_L B_z]] with B_z the inverse
/// of the Bezoutian.
template <field_scalar T>
dense_matrix<T> invert_S_structured(const instance<T>& inst) {
    dense_matrix<T> bz;
    try {
        bz = lu_inverse(bezout_matrix(inst));
    } catch (const singular_error&) {
        throw singular_error("singular instance: Bezoutian is not invertible");
    }
    const auto top_left = inst.n_upper() * bz;
    const auto top_right = -(inst.n_lower() * bz);
    const auto bottom_left = -(inst.d_upper() * bz);
    const auto bottom_right = inst.d_lower() * bz;
    return vstack(hstack(top_left, top_right), hstack(bottom_left, bottom_right));
}

/// D^{-1} = [[D_L^{-1}, 0], [-D_L^{-1} D_U D_L^{-1}, D_L^{-1}]].
template <field_scalar T>
dense_matrix<T> invert_D_structured(const instance<T>& inst) {
    const std::size_t m = inst.order();
    lower_toeplitz<T> dl_inv = [&] {
        try {
            return invert_lower(inst.d_lower());
        } catch (const singular_error&) {
            throw singular_error("singular instance: d_1 = 0");
        }
    }();
    const dense_matrix<T> coupling = -(dl_inv * (inst.d_upper() * dl_inv));
    const dense_matrix<T> diag = dl_inv.dense();
    const dense_matrix<T> zero(m, m);
    return vstack(hstack(diag, zero), hstack(coupling, diag));
}

// ---------------------------------------------------------------------------
// Validity
// ---------------------------------------------------------------------------

enum class validation_mode { strict, relaxed };

enum class validity_failure {
    none,
    zero_leading_d,     // d_1 = 0: D_L and D singular
    zero_trailing_d,    // d_{m+1} = 0: D_U singular
    singular_bezoutian, // S singular
    zero_coefficient,   // strict only: some interior d_h or n_h is zero
};

inline std::string_view to_string(validity_failure f) {
    switch (f) {
    case validity_failure::none: return "none";
    case validity_failure::zero_leading_d: return "zero_leading_d";
    case validity_failure::zero_trailing_d: return "zero_trailing_d";
    case validity_failure::singular_bezoutian: return "singular_bezoutian";
    case validity_failure::zero_coefficient: return "zero_coefficient";
    }
    return "unknown";
}

struct validity {
    bool strict_ok = false;
    bool relaxed_ok = false;
    validity_failure reason = validity_failure::none;

    bool ok(validation_mode mode) const noexcept {
        return mode == validation_mode::strict ? strict_ok : relaxed_ok;
    }
};

/// Evaluates both modes at once. `reason` names the first failing condition
/// (relaxed conditions are checked first).
template <field_scalar T>
validity validate(const instance<T>& inst) {
    validity v;
    const std::size_t m = inst.order();
    if (inst.d()[0] == 0) {
        v.reason = validity_failure::zero_leading_d;
        return v;
    }
    if (inst.d()[m] == 0) {
        v.reason = validity_failure::zero_trailing_d;
        return v;
    }
    if (oracle::is_singular(bezout_matrix(inst))) {
        v.reason = validity_failure::singular_bezoutian;
        return v;
    }
    v.relaxed_ok = true;
    for (std::size_t h = 0; h <= m; ++h) {
        if (inst.d()[h] == 0 || inst.n()[h] == 0) {
            v.reason = validity_failure::zero_coefficient;
            return v;
        }
    }
    v.strict_ok = true;
    return v;
}

} // namespace toepsyl
