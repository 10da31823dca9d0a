#pragma once

// Scalar fields. Two realizations are supported everywhere in the library:
//
//   rational  -- GMP mpq_class, always canonical (lowest terms, positive
//                denominator); the exact gold standard.
//   double    -- binary64; comparisons go through a relative Frobenius
//                tolerance.
//
// Everything else is templated on the scalar and talks to it through
// field_traits<T>.

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace toepsyl {

using rational = mpq_class;

/// Canonical p/q. Throws input_error when q == 0.
inline rational rat(const mpz_class& p, const mpz_class& q) {
    if (q == 0) {
        throw input_error("rational with zero denominator");
    }
    rational r(p, q);
    r.canonicalize();
    return r;
}

template <std::integral P, std::integral Q = long>
rational rat(P p, Q q = 1) {
    return rat(mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q)));
}

/// Parses the interchange form: optional '-', decimal digits, optionally
/// followed by '/' and decimal digits. Non-canonical input ("2/4") is
/// accepted and reduced.
inline rational parse_rational(std::string_view text) {
    auto digits_end = [&](std::size_t pos) {
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            ++pos;
        }
        return pos;
    };
    const auto reject = [&] {
        return input_error("not a rational: \"" + std::string(text) + "\"");
    };

    std::size_t pos = 0;
    if (pos < text.size() && text[pos] == '-') {
        ++pos;
    }
    const std::size_t num_begin = pos;
    pos = digits_end(pos);
    if (pos == num_begin) {
        throw reject();
    }
    const std::string numerator(text.substr(0, pos));
    std::string denominator = "1";
    if (pos < text.size()) {
        if (text[pos] != '/') {
            throw reject();
        }
        const std::size_t den_begin = ++pos;
        pos = digits_end(pos);
        if (pos == den_begin || pos != text.size()) {
            throw reject();
        }
        denominator = std::string(text.substr(den_begin));
    }
    return rat(mpz_class(numerator, 10), mpz_class(denominator, 10));
}

inline std::string to_string(const rational& q) { return q.get_str(); }

template <class T>
struct field_traits;

template <>
struct field_traits<rational> {
    static constexpr bool exact = true;
    static constexpr std::string_view name = "rational";

    static rational from_rational(const rational& q) { return q; }
    static double to_double(const rational& x) { return x.get_d(); }
    static double magnitude(const rational& x) { return std::fabs(x.get_d()); }
};

template <>
struct field_traits<double> {
    static constexpr bool exact = false;
    static constexpr std::string_view name = "float64";

    static double from_rational(const rational& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
    static double magnitude(double x) { return std::fabs(x); }
};

template <class T>
concept field_scalar = requires(const T& a, const T& b, const rational& q) {
    { field_traits<T>::exact } -> std::convertible_to<bool>;
    { field_traits<T>::from_rational(q) } -> std::convertible_to<T>;
    { field_traits<T>::to_double(a) } -> std::convertible_to<double>;
    { T(a * b) };
    { T(a + b) };
    { T(a - b) };
    { T(a / b) };
};

// ---------------------------------------------------------------------------
// Equality policy
// ---------------------------------------------------------------------------

enum class eq_mode { exact, approx };

inline constexpr double default_tolerance = 1e-9;

class eq_policy {
public:
    static eq_policy exact() { return eq_policy(eq_mode::exact, 0.0); }

    /// Relative Frobenius tolerance; tol must be finite and > 0.
    static eq_policy approx(double tol = default_tolerance) {
        if (!(tol > 0.0) || !std::isfinite(tol)) {
            throw input_error("approximate equality needs a positive finite tolerance");
        }
        return eq_policy(eq_mode::approx, tol);
    }

    eq_mode mode() const noexcept { return mode_; }
    double tol() const noexcept { return tol_; }

private:
    eq_policy(eq_mode mode, double tol) : mode_(mode), tol_(tol) {}

    eq_mode mode_;
    double tol_;
};

/// exact for the rational field, approx(1e-9) for floats.
template <field_scalar T>
eq_policy default_policy() {
    if constexpr (field_traits<T>::exact) {
        return eq_policy::exact();
    } else {
        return eq_policy::approx(default_tolerance);
    }
}

} // namespace toepsyl
