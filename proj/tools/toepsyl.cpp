// toepsyl command-line front end: gen, check, bench.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "toepsyl/commands.hpp"

namespace {

int as_int(toepsyl::exit_code c) { return static_cast<int>(c); }

} // namespace

int main(int argc, char** argv) {
    using namespace toepsyl;

    CLI::App app{"Triangular Toeplitz / Sylvester window-inverse identity checker"};
    app.require_subcommand(1);

    // gen
    gen_config gen;
    bool gen_relaxed = false;
    auto* gen_cmd = app.add_subcommand("gen", "Emit seeded random valid instances as JSON lines");
    gen_cmd->add_option("--m", gen.m, "Order m (>= 1)")->required()->check(CLI::PositiveNumber);
    gen_cmd->add_option("--count", gen.count, "Number of instances")->default_val(1);
    gen_cmd->add_option("--seed", gen.seed, "Master seed")->default_val(0);
    gen_cmd->add_option("--range", gen.range, "Coefficient bound R (draws from [-R, R])")
        ->default_val(9)
        ->check(CLI::PositiveNumber);
    gen_cmd->add_flag("--relaxed", gen_relaxed, "Allow zero coefficients; relaxed validity");

    // check
    check_config check;
    gen_config check_gen;
    std::string input;
    std::string field = "rational";
    std::optional<double> tol;
    bool check_relaxed = false;
    auto* check_cmd = app.add_subcommand("check", "Run the identity suite on instances");
    auto* input_opt =
        check_cmd->add_option("--input", input, "Instance file (JSON, JSON array, or JSON lines; - for stdin)");
    auto* m_opt = check_cmd->add_option("--m", check_gen.m, "Generate instances of order m instead")
                      ->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", check_gen.seed, "Master seed for generation")->default_val(0);
    check_cmd->add_option("--count", check_gen.count, "Number of generated instances")->default_val(1);
    check_cmd->add_option("--range", check_gen.range, "Coefficient bound R for generation")
        ->default_val(9)
        ->check(CLI::PositiveNumber);
    check_cmd->add_option("--field", field, "Scalar field")
        ->check(CLI::IsMember({"rational", "float64"}))
        ->default_val("rational");
    check_cmd->add_option("--tol", tol, "Relative Frobenius tolerance (float64 only)");
    check_cmd->add_flag("--relaxed", check_relaxed, "Use relaxed validity");
    input_opt->excludes(m_opt);

    // bench
    bench_config bench;
    auto* bench_cmd = app.add_subcommand("bench", "Time structured S^-1 against dense Gauss-Jordan");
    bench_cmd->add_option("--m", bench.sizes, "Orders, comma separated")->required()->delimiter(',');
    bench_cmd->add_option("--count", bench.count, "Instances per order")->default_val(5);
    bench_cmd->add_option("--seed", bench.seed, "Master seed")->default_val(0);
    bench_cmd->add_option("--tol", bench.tol, "Agreement tolerance")->default_val(default_tolerance);
    bench_cmd->add_flag("--inject-fault", bench.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : as_int(exit_code::bad_input);
    }

    if (*gen_cmd) {
        gen.mode = gen_relaxed ? validation_mode::relaxed : validation_mode::strict;
        return as_int(cmd_gen(gen, std::cout, std::cerr));
    }

    if (*check_cmd) {
        check.field = field == "float64" ? field_kind::float64 : field_kind::rational;
        check.tol = tol;
        check.mode = check_relaxed ? validation_mode::relaxed : validation_mode::strict;
        if (check.field == field_kind::rational && tol) {
            std::cerr << "check: --tol is ignored for the rational field\n";
        }
        if (*m_opt) {
            check_gen.mode = check.mode;
            return as_int(cmd_check(check_gen, check, std::cout, std::cerr));
        }
        if (input.empty()) {
            std::cerr << "check: need --input PATH or --m for generated instances\n";
            return as_int(exit_code::bad_input);
        }
        if (input == "-") {
            return as_int(cmd_check(std::cin, check, std::cout, std::cerr));
        }
        std::ifstream in(input);
        if (!in) {
            std::cerr << "check: cannot open " << input << '\n';
            return as_int(exit_code::bad_input);
        }
        return as_int(cmd_check(in, check, std::cout, std::cerr));
    }

    return as_int(cmd_bench(bench, std::cout, std::cerr));
}
