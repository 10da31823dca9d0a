#pragma once

// Shared helpers for the unit and acceptance suites: seeded random rationals,
// matrices and instances, plus the conditioning filter used for float runs.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "toepsyl/toepsyl.hpp"

namespace toepsyl::testing {

inline rational random_rational(splitmix64& rng, long range = 9) {
    return rat(rng.in(range), rng.nonzero_in(range));
}

template <field_scalar T = rational>
dense_matrix<T> random_matrix(splitmix64& rng, std::size_t rows, std::size_t cols,
                              long range = 9) {
    dense_matrix<T> out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            out(r, c) = field_traits<T>::from_rational(random_rational(rng, range));
        }
    }
    return out;
}

inline std::vector<rational> random_coeffs(splitmix64& rng, std::size_t count, long range = 9,
                                           bool nonzero = true) {
    std::vector<rational> out;
    for (std::size_t h = 0; h < count; ++h) {
        out.emplace_back(nonzero ? rng.nonzero_in(range) : rng.in(range));
    }
    return out;
}

/// Strict-valid integer instance of order m drawn from `rng`.
inline instance<rational> random_valid_instance(splitmix64& rng, std::size_t m, long range = 9) {
    return draw_instance(rng, m, range, validation_mode::strict);
}

// ---------------------------------------------------------------------------
// Float conditioning
// ---------------------------------------------------------------------------

struct conditioning {
    double kappa_s = INFINITY; // ||S||_F ||S^-1||_F
    double kappa_d = INFINITY; // ||D||_F ||D^-1||_F
    double kernel_norm = INFINITY; // ||T||_F
};

inline double frobenius_condition(const dense_matrix<double>& x) {
    try {
        return frobenius_norm(x) * frobenius_norm(oracle::dense_inverse(x));
    } catch (const singular_error&) {
        return INFINITY;
    }
}

inline conditioning measure_conditioning(const instance<double>& inst) {
    conditioning c;
    c.kappa_s = frobenius_condition(build_S(inst));
    c.kappa_d = frobenius_condition(build_D(inst));
    try {
        c.kernel_norm = frobenius_norm(kernel_t<double>(inst).body());
    } catch (const singular_error&) {
    }
    return c;
}

/// Float-path acceptance filter: kappa_F(S) <= 1e4, kappa_F(D) <= 1e4,
/// ||T||_F <= 1e3.
inline bool well_conditioned(const conditioning& c) {
    return c.kappa_s <= 1e4 && c.kappa_d <= 1e4 && c.kernel_norm <= 1e3;
}

/// Strict-valid, well-conditioned float instance with coefficients in
/// [-9, 9] \ {0}. Proposals alternate between a uniform d and a sign-pattern
/// d_h = c s^h (s = +-1, roots on the unit circle); n is always uniform. Each
/// proposal must pass the conditioning filter.
inline instance<double> well_conditioned_instance(splitmix64& rng, std::size_t m,
                                                  std::size_t max_attempts = 10'000) {
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<double> d(m + 1), n(m + 1);
        const long c = rng.nonzero_in(9);
        const bool alternate = rng.nonzero_in(1) < 0;
        for (std::size_t h = 0; h <= m; ++h) {
            if (attempt % 2 == 0) {
                d[h] = static_cast<double>(rng.nonzero_in(9));
            } else {
                d[h] = static_cast<double>(alternate && h % 2 == 1 ? -c : c);
            }
        }
        for (std::size_t h = 0; h <= m; ++h) {
            n[h] = static_cast<double>(rng.nonzero_in(9));
        }
        instance<double> inst(std::move(d), std::move(n));
        if (validate(inst).strict_ok && well_conditioned(measure_conditioning(inst))) {
            return inst;
        }
    }
    throw generation_exhausted("no well-conditioned instance found");
}

} // namespace toepsyl::testing
