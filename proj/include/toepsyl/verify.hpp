#pragma once

// Identity checks over one instance. Each check is exhaustive over its
// quantifier range and yields one check_record; run_all strings them together
// in a fixed order.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "builders.hpp"
#include "error.hpp"
#include "kernel.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "oracle.hpp"

namespace toepsyl {

using index_tuple = std::array<std::size_t, 4>;

enum class failure_kind {
    none,
    counterexample,    // exact field: the identity is violated
    exceeds_tolerance, // float field: residual above the policy tolerance
    error,             // evaluation threw (e.g. a window turned out singular)
};

struct check_record {
    std::string name;
    /// Human-readable quantifier range, e.g. "1<=i<j<=3".
    std::string range;
    bool pass = true;
    double max_residual = 0.0;
    std::size_t comparisons = 0;
    /// First failing (i, j, k, l) in lexicographic loop order; unused slots are 0.
    std::optional<index_tuple> counterexample;
    failure_kind failure = failure_kind::none;
    std::string detail;
};

struct identity_report {
    std::size_t m = 0;
    std::string field;
    std::optional<std::uint64_t> seed;
    validity valid;
    validation_mode mode = validation_mode::strict;
    std::vector<check_record> checks;

    bool instance_ok() const noexcept { return valid.ok(mode); }

    /// Valid instance and every check passed.
    bool passed() const noexcept {
        return instance_ok() && std::all_of(checks.begin(), checks.end(),
                                            [](const check_record& c) { return c.pass; });
    }
};

namespace detail {

class check_builder {
public:
    check_builder(std::string name, std::string range, eq_policy policy)
        : policy_(policy) {
        rec_.name = std::move(name);
        rec_.range = std::move(range);
    }

    template <field_scalar T>
    void compare(const dense_matrix<T>& x, const dense_matrix<T>& y, index_tuple where) {
        const comparison c = matrices_equal(x, y, policy_);
        ++rec_.comparisons;
        rec_.max_residual = std::max(rec_.max_residual, c.residual);
        if (!c.equal) {
            fail(where, policy_.mode() == eq_mode::exact ? failure_kind::counterexample
                                                         : failure_kind::exceeds_tolerance);
        }
    }

    void fail(index_tuple where, failure_kind kind, std::string detail = {}) {
        if (rec_.pass) {
            rec_.pass = false;
            rec_.counterexample = where;
            rec_.failure = kind;
            rec_.detail = std::move(detail);
        }
    }

    /// Runs `body`, turning a thrown library error into a failure at `where`.
    template <class F>
    void guarded(index_tuple where, F&& body) {
        try {
            body();
        } catch (const singular_error& e) {
            ++rec_.comparisons;
            fail(where, failure_kind::error, e.what());
        } catch (const dimension_error& e) {
            ++rec_.comparisons;
            fail(where, failure_kind::error, e.what());
        }
    }

    check_record finish() && { return std::move(rec_); }

private:
    eq_policy policy_;
    check_record rec_;
};

inline std::string upto(std::size_t m) { return std::to_string(m + 1); }

// X = 0 rewritten as P = -Q for X = P + Q, so float residuals are measured
// against the size of the terms rather than against 1.
template <field_scalar T>
std::pair<dense_matrix<T>, dense_matrix<T>> split_product(const dense_matrix<T>& left,
                                                          const dense_matrix<T>& right,
                                                          std::size_t split) {
    const auto l1 = window(left, 1, split);
    const auto l2 = window(left, split + 1, left.cols() - split);
    const auto r1 = row_block(right, 1, split);
    const auto r2 = row_block(right, split + 1, right.rows() - split);
    return {l1 * r1, -(l2 * r2)};
}

} // namespace detail

/// Structured S^{-1} and D^{-1} against the Gauss-Jordan oracle.
template <field_scalar T>
std::vector<check_record> check_structured_inverses(const window_calculus<T>& calc,
                                                    const eq_policy& policy) {
    const auto& inst = calc.inst();
    detail::check_builder s("inverse_s_structured", "S^-1", policy);
    s.guarded({0, 0, 0, 0},
              [&] { s.compare(calc.b_full(), oracle::dense_inverse(build_S(inst)), {0, 0, 0, 0}); });
    detail::check_builder d("inverse_d_structured", "D^-1", policy);
    d.guarded({0, 0, 0, 0},
              [&] { d.compare(calc.a_full(), oracle::dense_inverse(build_D(inst)), {0, 0, 0, 0}); });
    std::vector<check_record> out;
    out.push_back(std::move(s).finish());
    out.push_back(std::move(d).finish());
    return out;
}

/// T K = 0 and T_i D_l = 0 for every i.
template <field_scalar T>
check_record check_kernel_annihilation(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("kernel_annihilation", "TK; 1<=i<=" + detail::upto(m), policy);
    {
        const auto [p, q] =
            detail::split_product(calc.kernel().body(), build_K(calc.inst()), m);
        b.compare(p, q, {0, 0, 0, 0});
    }
    for (std::size_t i = 1; i <= m + 1; ++i) {
        const auto [p, q] = detail::split_product(calc.kernel().window(i), calc.d_l(), m);
        b.compare(p, q, {i, 0, 0, 0});
    }
    return std::move(b).finish();
}

/// Middle block is I; T_{m-i+2, i} = I; the end windows match
/// (-D_U D_L^{-1}, I) and (I, -D_L D_U^{-1}) computed through the oracle;
/// T_{i+k, j-k} = T_{i, j}.
template <field_scalar T>
check_record check_kernel_blocks(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    const auto& kernel = calc.kernel();
    const auto& inst = calc.inst();
    detail::check_builder b("kernel_blocks", "1<=i,j<=" + detail::upto(m) + "; k shifts",
                            policy);
    const auto eye = identity<T>(m);
    b.compare(window(kernel.body(), m + 1, m), eye, {0, 0, 0, 0});
    for (std::size_t i = 1; i <= m + 1; ++i) {
        b.compare(kernel.block(index_map::complement(m, i), i), eye, {i, 0, 0, 0});
    }
    b.guarded({1, 0, 0, 0}, [&] {
        const auto du = inst.d_upper().dense();
        const auto dl = inst.d_lower().dense();
        const auto first = hstack(-(du * oracle::dense_inverse(dl)), eye);
        const auto last = hstack(eye, -(dl * oracle::dense_inverse(du)));
        b.compare(kernel.window(1), first, {1, 0, 0, 0});
        b.compare(kernel.window(m + 1), last, {m + 1, 0, 0, 0});
    });
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            const auto base = kernel.block(i, j);
            for (std::size_t k = 1; k <= index_map::max_shift(m, i, j); ++k) {
                b.compare(kernel.block(i + k, j - k), base, {i, j, k, 0});
            }
        }
    }
    return std::move(b).finish();
}

/// Closed-form A_j^{-1} = T_{m-j+2} D_r (or B_j^{-1} = T_{m-j+2} N) against
/// the oracle inverse of the extracted window.
template <field_scalar T>
check_record check_window_inverses(const window_calculus<T>& calc, bool b_side,
                                   const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b(b_side ? "window_inverse_b" : "window_inverse_a",
                            "1<=j<=" + detail::upto(m), policy);
    for (std::size_t j = 1; j <= m + 1; ++j) {
        b.guarded({j, 0, 0, 0}, [&] {
            const auto& win = b_side ? calc.b_window(j) : calc.a_window(j);
            const auto& closed = b_side ? calc.b_inv(j) : calc.a_inv(j);
            b.compare(closed, oracle::dense_inverse(win), {j, 0, 0, 0});
        });
    }
    return std::move(b).finish();
}

/// A_i^{-1} A_B = T_{m-i+2} (or the B analogue).
template <field_scalar T>
check_record check_key_relation(const window_calculus<T>& calc, bool b_side,
                                const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b(b_side ? "key_relation_b" : "key_relation_a",
                            "1<=i<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        const auto& inv = b_side ? calc.b_inv(i) : calc.a_inv(i);
        const auto& bottom = b_side ? calc.b_bottom() : calc.a_bottom();
        b.compare(inv * bottom, calc.kernel().window(index_map::complement(m, i)), {i, 0, 0, 0});
    }
    return std::move(b).finish();
}

/// A_i^{-1} A_j = T_{m-i+2, j} = B_i^{-1} B_j for all i, j, and A_i B_i^{-1}
/// is the same for every i.
template <field_scalar T>
check_record check_window_ratios(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("window_ratios", "1<=i,j<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            const auto block = calc.kernel().block(index_map::complement(m, i), j);
            const auto a_ratio = calc.a_inv(i) * calc.a_window(j);
            const auto b_ratio = calc.b_inv(i) * calc.b_window(j);
            b.compare(a_ratio, block, {i, j, 0, 0});
            b.compare(b_ratio, block, {i, j, 0, 0});
            b.compare(a_ratio, b_ratio, {i, j, 0, 0});
        }
    }
    const auto first = calc.a_window(1) * calc.b_inv(1);
    for (std::size_t i = 2; i <= m + 1; ++i) {
        b.compare(calc.a_window(i) * calc.b_inv(i), first, {1, i, 0, 0});
    }
    return std::move(b).finish();
}

/// A_i B_j = A_j B_i for 1 <= i < j <= m+1.
template <field_scalar T>
check_record check_hill(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("hill_identity", "1<=i<j<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = i + 1; j <= m + 1; ++j) {
            b.compare(calc.a_window(i) * calc.b_window(j), calc.a_window(j) * calc.b_window(i),
                      {i, j, 0, 0});
        }
    }
    return std::move(b).finish();
}

/// B_i^{-1} B_j = B_j B_i^{-1} for 1 <= i < j <= m+1.
template <field_scalar T>
check_record check_commutation(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("window_commutation", "1<=i<j<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = i + 1; j <= m + 1; ++j) {
            b.compare(calc.b_inv(i) * calc.b_window(j), calc.b_window(j) * calc.b_inv(i),
                      {i, j, 0, 0});
        }
    }
    return std::move(b).finish();
}

/// B_i B_j = B_j B_i, and B_i B_j = B_{i+l} B_{j-l} for every l >= 1 in range.
template <field_scalar T>
check_record check_product_shift(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("product_shift", "1<=i,j<=" + detail::upto(m) + "; l shifts",
                            policy);
    std::vector<dense_matrix<T>> products;
    products.reserve((m + 1) * (m + 1));
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            products.push_back(calc.b_window(i) * calc.b_window(j));
        }
    }
    const auto product = [&](std::size_t i, std::size_t j) -> const dense_matrix<T>& {
        return products[(i - 1) * (m + 1) + (j - 1)];
    };
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            if (i < j) {
                b.compare(product(i, j), product(j, i), {i, j, 0, 0});
            }
            for (std::size_t l = 1; l <= index_map::max_shift(m, i, j); ++l) {
                b.compare(product(i, j), product(i + l, j - l), {i, j, 0, l});
            }
        }
    }
    return std::move(b).finish();
}

/// A_i^{-1} A_j = A_{i+k}^{-1} A_{j+k} (or the B analogue), k >= 1 in range.
template <field_scalar T>
check_record check_shift(const window_calculus<T>& calc, bool b_side, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b(b_side ? "shift_invariance_b" : "shift_invariance_a",
                            "1<=i,j<=" + detail::upto(m) + "; k shifts", policy);
    std::vector<dense_matrix<T>> ratios;
    ratios.reserve((m + 1) * (m + 1));
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            ratios.push_back(b_side ? calc.b_inv(i) * calc.b_window(j)
                                    : calc.a_inv(i) * calc.a_window(j));
        }
    }
    const auto ratio = [&](std::size_t i, std::size_t j) -> const dense_matrix<T>& {
        return ratios[(i - 1) * (m + 1) + (j - 1)];
    };
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            for (std::size_t k = 1; i + k <= m + 1 && j + k <= m + 1; ++k) {
                b.compare(ratio(i, j), ratio(i + k, j + k), {i, j, k, 0});
            }
        }
    }
    return std::move(b).finish();
}

/// A_i B_i^{-1} = A_B N for every i.
template <field_scalar T>
check_record check_invariance(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("ab_invariance", "1<=i<=" + detail::upto(m), policy);
    const auto target = calc.a_bottom() * calc.n();
    for (std::size_t i = 1; i <= m + 1; ++i) {
        b.compare(calc.a_window(i) * calc.b_inv(i), target, {i, 0, 0, 0});
    }
    return std::move(b).finish();
}

/// H_i = B_{m-i+2}^{-1}, with H_1 = T_1 N and H_{m+1} = T_{m+1} N.
template <field_scalar T>
check_record check_h_windows(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("h_windows", "1<=i<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        b.compare(calc.h_window(i), calc.b_inv(index_map::complement(m, i)), {i, 0, 0, 0});
    }
    b.compare(calc.h_window(1), calc.kernel().window(1) * calc.n(), {1, 0, 0, 0});
    b.compare(calc.h_window(m + 1), calc.kernel().window(m + 1) * calc.n(), {m + 1, 0, 0, 0});
    return std::move(b).finish();
}

/// B_i H = T_i.
template <field_scalar T>
check_record check_b_times_h(const window_calculus<T>& calc, const eq_policy& policy) {
    const std::size_t m = calc.order();
    detail::check_builder b("b_times_h", "1<=i<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        b.compare(calc.b_window(i) * calc.h(), calc.kernel().window(i), {i, 0, 0, 0});
    }
    return std::move(b).finish();
}

/// B_i^{-1} B_j is the same for two instances sharing d.
template <field_scalar T>
check_record check_independence(const window_calculus<T>& first, const window_calculus<T>& second,
                                const eq_policy& policy) {
    if (first.inst().d() != second.inst().d()) {
        throw input_error("check_independence: instances must share d");
    }
    const std::size_t m = first.order();
    detail::check_builder b("n_independence", "1<=i,j<=" + detail::upto(m), policy);
    for (std::size_t i = 1; i <= m + 1; ++i) {
        for (std::size_t j = 1; j <= m + 1; ++j) {
            b.compare(first.b_inv(i) * first.b_window(j), second.b_inv(i) * second.b_window(j),
                      {i, j, 0, 0});
        }
    }
    return std::move(b).finish();
}

/// Convenience overload: validates both (d, n1) and (d, n2) first.
template <field_scalar T>
check_record check_independence(const std::vector<T>& d, const std::vector<T>& n1,
                                const std::vector<T>& n2,
                                const eq_policy& policy = default_policy<T>(),
                                validation_mode mode = validation_mode::strict) {
    instance<T> a(d, n1);
    instance<T> b(d, n2);
    if (!validate(a).ok(mode) || !validate(b).ok(mode)) {
        throw input_error("check_independence: both instances must be valid");
    }
    return check_independence(window_calculus<T>(std::move(a)), window_calculus<T>(std::move(b)),
                              policy);
}

/// Every single-instance check, in report order.
template <field_scalar T>
std::vector<check_record> run_checks(const window_calculus<T>& calc, const eq_policy& policy) {
    std::vector<check_record> out = check_structured_inverses(calc, policy);
    out.push_back(check_kernel_annihilation(calc, policy));
    out.push_back(check_kernel_blocks(calc, policy));
    out.push_back(check_window_inverses(calc, false, policy));
    out.push_back(check_window_inverses(calc, true, policy));
    out.push_back(check_key_relation(calc, false, policy));
    out.push_back(check_key_relation(calc, true, policy));
    out.push_back(check_window_ratios(calc, policy));
    out.push_back(check_hill(calc, policy));
    out.push_back(check_commutation(calc, policy));
    out.push_back(check_h_windows(calc, policy));
    out.push_back(check_b_times_h(calc, policy));
    out.push_back(check_product_shift(calc, policy));
    out.push_back(check_shift(calc, false, policy));
    out.push_back(check_shift(calc, true, policy));
    out.push_back(check_invariance(calc, policy));
    return out;
}

struct run_options {
    validation_mode mode = validation_mode::strict;
    std::optional<eq_policy> policy; // defaults to default_policy<T>()
    std::optional<std::uint64_t> seed;
};

/// Validates, then runs every check. An invalid instance yields a report with
/// no check records.
template <field_scalar T>
identity_report run_all(const instance<T>& inst, const run_options& opts = {}) {
    identity_report report;
    report.m = inst.order();
    report.field = std::string(field_traits<T>::name);
    report.seed = opts.seed;
    report.mode = opts.mode;
    report.valid = validate(inst);
    if (!report.instance_ok()) {
        return report;
    }
    const eq_policy policy = opts.policy.value_or(default_policy<T>());
    report.checks = run_checks(window_calculus<T>(inst), policy);
    return report;
}

} // namespace toepsyl
