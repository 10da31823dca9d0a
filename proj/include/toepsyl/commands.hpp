#pragma once

// The gen / check / bench commands, parameterized on output streams so the
// CLI binary is a thin argument parser over these functions.
//
// Exit codes: 0 success, 1 an identity check (or benchmark agreement) failed,
// 2 input, configuration, or validation error.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "builders.hpp"
#include "error.hpp"
#include "io.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "verify.hpp"

namespace toepsyl {

enum class exit_code : int { ok = 0, check_failed = 1, bad_input = 2 };

enum class field_kind { rational, float64 };

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

inline exit_code cmd_gen(const gen_config& config, std::ostream& out, std::ostream& err) {
    try {
        for (const auto& g : generate_instances(config)) {
            write_instance_line(out, from_generated(g));
        }
    } catch (const generation_exhausted& e) {
        err << "gen: " << e.what() << '\n';
        return exit_code::bad_input;
    } catch (const input_error& e) {
        err << "gen: " << e.what() << '\n';
        return exit_code::bad_input;
    }
    return exit_code::ok;
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

struct check_config {
    field_kind field = field_kind::rational;
    std::optional<double> tol;
    validation_mode mode = validation_mode::strict;
};

template <field_scalar T>
identity_report check_instance(const instance_file& file, const check_config& config) {
    run_options opts;
    opts.mode = config.mode;
    opts.seed = file.seed;
    if constexpr (!field_traits<T>::exact) {
        opts.policy = eq_policy::approx(config.tol.value_or(default_tolerance));
    }
    return run_all(convert<T>(file.inst), opts);
}

inline exit_code cmd_check(const std::vector<instance_file>& files, const check_config& config,
                           std::ostream& out, std::ostream& err) {
    if (config.field == field_kind::float64 && config.tol && !(*config.tol > 0.0)) {
        err << "check: --tol must be positive\n";
        return exit_code::bad_input;
    }
    bool any_invalid = false;
    bool any_failed = false;
    for (std::size_t k = 0; k < files.size(); ++k) {
        const identity_report report = config.field == field_kind::rational
                                           ? check_instance<rational>(files[k], config)
                                           : check_instance<double>(files[k], config);
        write_report(out, report, k);
        if (!report.instance_ok()) {
            any_invalid = true;
            err << "check: instance " << k << " is not valid (" << to_string(report.valid.reason)
                << ")\n";
            continue;
        }
        for (const auto& rec : report.checks) {
            if (!rec.pass) {
                any_failed = true;
                err << "check: instance " << k << ": " << rec.name << " failed"
                    << (rec.failure == failure_kind::exceeds_tolerance ? " (exceeds tolerance)" : "")
                    << '\n';
            }
        }
    }
    if (any_invalid) {
        return exit_code::bad_input;
    }
    return any_failed ? exit_code::check_failed : exit_code::ok;
}

inline exit_code cmd_check(std::istream& in, const check_config& config, std::ostream& out,
                           std::ostream& err) {
    std::vector<instance_file> files;
    try {
        files = read_instances(in);
    } catch (const input_error& e) {
        err << "check: " << e.what() << '\n';
        return exit_code::bad_input;
    } catch (const dimension_error& e) {
        err << "check: " << e.what() << '\n';
        return exit_code::bad_input;
    }
    return cmd_check(files, config, out, err);
}

inline exit_code cmd_check(const gen_config& generation, const check_config& config,
                           std::ostream& out, std::ostream& err) {
    std::vector<instance_file> files;
    try {
        for (const auto& g : generate_instances(generation)) {
            files.push_back(from_generated(g));
        }
    } catch (const std::runtime_error& e) {
        err << "check: " << e.what() << '\n';
        return exit_code::bad_input;
    }
    return cmd_check(files, config, out, err);
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct bench_config {
    std::vector<std::size_t> sizes;
    std::size_t count = 5;
    std::uint64_t seed = 0;
    double tol = default_tolerance;
    long range = 9;
    /// Corrupts the structured result before the agreement check (tests only).
    bool inject_fault = false;
};

struct bench_row {
    std::size_t m = 0;
    std::size_t count = 0;
    double structured_ms = 0.0; // median
    double dense_ms = 0.0;      // median
    double max_residual = 0.0;

    double speedup() const noexcept { return structured_ms > 0.0 ? dense_ms / structured_ms : 0.0; }
};

class bench_mismatch : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

/// Times invert_S_structured against the Gauss-Jordan oracle on `count`
/// float64 instances of order m. Throws bench_mismatch if any pair of
/// results disagrees beyond `tol` (relative Frobenius).
inline bench_row bench_size(std::size_t m, const bench_config& config) {
    using clock = std::chrono::steady_clock;
    const eq_policy policy = eq_policy::approx(config.tol);
    bench_row row;
    row.m = m;
    row.count = config.count;
    std::vector<double> structured, dense;
    for (std::size_t k = 0; k < config.count; ++k) {
        splitmix64 stream(derive_seed(config.seed, k));
        const instance<double> inst =
            convert<double>(draw_instance<double>(stream, m, config.range, validation_mode::strict));
        const dense_matrix<double> s = build_S(inst);

        const auto t0 = clock::now();
        dense_matrix<double> fast = invert_S_structured(inst);
        const auto t1 = clock::now();
        const dense_matrix<double> slow = oracle::dense_inverse(s);
        const auto t2 = clock::now();

        if (config.inject_fault) {
            fast(0, 0) += 1.0;
        }
        const comparison c = matrices_equal(fast, slow, policy);
        row.max_residual = std::max(row.max_residual, c.residual);
        if (!c.equal) {
            throw bench_mismatch("m=" + std::to_string(m) + ", instance " + std::to_string(k) +
                                 ": structured and dense inverses differ (relative residual " +
                                 format_residual(c.residual) + ")");
        }
        structured.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
        dense.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
    }
    if (config.count > 0) {
        row.structured_ms = detail::median(structured);
        row.dense_ms = detail::median(dense);
    }
    return row;
}

inline exit_code cmd_bench(const bench_config& config, std::ostream& out, std::ostream& err) {
    if (config.sizes.empty() || config.count == 0) {
        err << "bench: need at least one size and count >= 1\n";
        return exit_code::bad_input;
    }
    if (!(config.tol > 0.0)) {
        err << "bench: --tol must be positive\n";
        return exit_code::bad_input;
    }
    std::vector<bench_row> rows;
    try {
        for (const std::size_t m : config.sizes) {
            rows.push_back(bench_size(m, config));
        }
    } catch (const bench_mismatch& e) {
        err << "bench: aborted: " << e.what() << '\n';
        return exit_code::check_failed;
    } catch (const std::runtime_error& e) {
        err << "bench: " << e.what() << '\n';
        return exit_code::bad_input;
    }
    out << "field: float64  count: " << config.count << "  seed: " << config.seed << '\n';
    out << std::setw(6) << "m" << std::setw(16) << "structured_ms" << std::setw(14) << "dense_ms"
        << std::setw(10) << "speedup" << std::setw(16) << "max_residual" << '\n';
    for (const auto& r : rows) {
        out << std::setw(6) << r.m << std::fixed << std::setprecision(3) << std::setw(16)
            << r.structured_ms << std::setw(14) << r.dense_ms << std::setprecision(2)
            << std::setw(10) << r.speedup() << std::defaultfloat << std::setprecision(3)
            << std::setw(16) << r.max_residual << '\n';
    }
    return exit_code::ok;
}

} // namespace toepsyl
