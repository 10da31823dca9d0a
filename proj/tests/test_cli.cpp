#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support.hpp"

using namespace toepsyl;
using qinst = instance<rational>;

namespace {

struct run_result {
    exit_code code;
    std::string out;
    std::string err;
};

run_result gen(const gen_config& cfg) {
    std::ostringstream out, err;
    const exit_code c = cmd_gen(cfg, out, err);
    return {c, out.str(), err.str()};
}

run_result check_text(const std::string& text, const check_config& cfg = {}) {
    std::istringstream in(text);
    std::ostringstream out, err;
    const exit_code c = cmd_check(in, cfg, out, err);
    return {c, out.str(), err.str()};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
    std::vector<nlohmann::json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(nlohmann::json::parse(line));
    }
    return out;
}

const std::string golden_path = std::string(TOEPSYL_TEST_DATA) + "/golden_instance.json";

} // namespace

TEST_CASE("splitmix64 reference outputs", "[cli][prng]") {
    // published SplitMix64 test vector for seed 1234567
    splitmix64 rng(1234567);
    CHECK(rng.next() == 6457827717110365317ULL);
    CHECK(rng.next() == 3203168211198807973ULL);
    CHECK(rng.next() == 9817491932198370423ULL);
    CHECK(derive_seed(7, 0) == splitmix64(7).next());
}

TEST_CASE("bounded draws are in range and cover it", "[cli][prng]") {
    splitmix64 rng(71);
    std::set<long> seen_nonzero, seen_any;
    for (int k = 0; k < 5000; ++k) {
        const long a = rng.nonzero_in(3);
        CHECK(a != 0);
        CHECK(a >= -3);
        CHECK(a <= 3);
        seen_nonzero.insert(a);
        const long b = rng.in(2);
        CHECK(b >= -2);
        CHECK(b <= 2);
        seen_any.insert(b);
    }
    CHECK(seen_nonzero.size() == 6);
    CHECK(seen_any.size() == 5);
}

TEST_CASE("gen is deterministic", "[cli]") {
    const gen_config cfg{.m = 2, .count = 1, .seed = 42, .range = 9};
    const auto first = gen(cfg);
    const auto second = gen(cfg);
    CHECK(first.code == exit_code::ok);
    CHECK(first.out == second.out);
    const auto lines = json_lines(first.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["m"] == 2);
    CHECK(lines[0]["seed"] == derive_seed(42, 0));
    CHECK(lines[0]["generator"] == "splitmix64-v1");

    std::istringstream in(first.out);
    const auto files = read_instances(in);
    REQUIRE(files.size() == 1);
    CHECK(validate(files[0].inst).strict_ok);
    for (const auto& v : files[0].inst.d()) {
        CHECK(v != 0);
        CHECK(abs(v) <= 9);
        CHECK(v.get_den() == 1);
    }

    // prefix stability: instance k does not depend on count
    const auto five = gen(gen_config{.m = 2, .count = 5, .seed = 42});
    CHECK(five.out.substr(0, first.out.size()) == first.out);
    CHECK(gen(gen_config{.m = 2, .count = 1, .seed = 43}).out != first.out);
}

TEST_CASE("gen with m=1, R=1 emits exactly the valid sign patterns", "[cli]") {
    // enumerate all 16 sign patterns; valid iff d1 n2 - n1 d2 != 0
    std::set<std::vector<long>> valid;
    for (int mask = 0; mask < 16; ++mask) {
        const long d1 = mask & 1 ? -1 : 1, d2 = mask & 2 ? -1 : 1;
        const long n1 = mask & 4 ? -1 : 1, n2 = mask & 8 ? -1 : 1;
        if (d1 * n2 - n1 * d2 != 0) {
            valid.insert({d1, d2, n1, n2});
        }
    }
    CHECK(valid.size() == 8);
    CHECK_FALSE(valid.contains({1, 1, 1, 1}));

    const auto result = gen(gen_config{.m = 1, .count = 200, .seed = 5, .range = 1});
    REQUIRE(result.code == exit_code::ok);
    std::istringstream in(result.out);
    std::set<std::vector<long>> seen;
    for (const auto& f : read_instances(in)) {
        const std::vector<long> key{f.inst.d()[0].get_num().get_si(), f.inst.d()[1].get_num().get_si(),
                                    f.inst.n()[0].get_num().get_si(), f.inst.n()[1].get_num().get_si()};
        CHECK(valid.contains(key));
        seen.insert(key);
    }
    CHECK(seen == valid);
}

TEST_CASE("gen edge cases", "[cli]") {
    const auto empty = gen(gen_config{.m = 3, .count = 0, .seed = 1});
    CHECK(empty.code == exit_code::ok);
    CHECK(empty.out.empty());

    CHECK(gen(gen_config{.m = 0, .count = 1}).code == exit_code::bad_input);
    CHECK(gen(gen_config{.m = 1, .count = 1, .range = 0}).code == exit_code::bad_input);

    const auto relaxed =
        gen(gen_config{.m = 3, .count = 20, .seed = 9, .mode = validation_mode::relaxed});
    CHECK(relaxed.code == exit_code::ok);
    std::istringstream in(relaxed.out);
    for (const auto& f : read_instances(in)) {
        CHECK(validate(f.inst).relaxed_ok);
    }
}

TEST_CASE("generation gives up after the rejection bound", "[cli]") {
    // find a stream whose first draw (m=1, R=1) is rejected
    std::uint64_t seed = 0;
    for (;; ++seed) {
        splitmix64 probe(seed);
        const long d1 = probe.nonzero_in(1), d2 = probe.nonzero_in(1);
        const long n1 = probe.nonzero_in(1), n2 = probe.nonzero_in(1);
        if (d1 * n2 - n1 * d2 == 0) {
            break;
        }
    }
    splitmix64 stream(seed);
    CHECK_THROWS_AS(draw_instance(stream, 1, 1, validation_mode::strict, 1), generation_exhausted);
    splitmix64 again(seed);
    CHECK_NOTHROW(draw_instance(again, 1, 1, validation_mode::strict));
    CHECK(max_consecutive_rejections == 10'000);
}

TEST_CASE("check on the golden instance", "[cli]") {
    const std::string text = read_file(golden_path);
    const auto result = check_text(text);
    CHECK(result.code == exit_code::ok);
    const auto lines = json_lines(result.out);
    REQUIRE(lines.size() == 18);
    CHECK(lines[0]["valid"] == true);
    CHECK(lines[0]["field"] == "rational");
    CHECK(lines[0]["seed"].is_null());
    for (std::size_t k = 1; k < lines.size(); ++k) {
        CHECK(lines[k]["pass"] == true);
        CHECK(lines[k]["max_residual"] == "0");
        CHECK(lines[k]["counterexample"].is_null());
    }

    const auto golden_report = read_file(std::string(TOEPSYL_TEST_DATA) + "/golden_report.jsonl");
    CHECK(result.out == golden_report);

    const auto f = check_text(text, {.field = field_kind::float64, .tol = 1e-9});
    CHECK(f.code == exit_code::ok);
    const auto flines = json_lines(f.out);
    CHECK(flines[0]["field"] == "float64");
    for (std::size_t k = 1; k < flines.size(); ++k) {
        CHECK(flines[k]["pass"] == true);
        CHECK(std::stod(flines[k]["max_residual"].get<std::string>()) <= 1e-9);
    }
}

TEST_CASE("malformed input exits 2 and names the field", "[cli]") {
    struct bad_case {
        std::string text;
        std::string needle;
    };
    const std::vector<bad_case> cases = {
        {R"({"m": 2, "d": ["1","1"], "n": ["1","2","3"]})", "\"d\""},
        {R"({"m": 2, "d": ["1","1","1"], "n": ["1","2"]})", "\"n\""},
        {R"({"d": ["1","1"], "n": ["1","2"]})", "\"m\""},
        {R"({"m": 0, "d": ["1"], "n": ["1"]})", "\"m\""},
        {R"({"m": 1, "d": [1, 2], "n": ["1","3"]})", "\"d\"[0]"},
        {R"({"m": 1, "d": ["1", "2/0"], "n": ["1","3"]})", "\"d\"[1]"},
        {R"({"m": 1, "d": ["1", "2"], "n": ["1","x"]})", "\"n\"[1]"},
        {R"({"m": 1, "d": ["1", "2"], "n": ["1","3"], "seed": -4})", "\"seed\""},
        {R"({"m": 1, "d": "12", "n": ["1","3"]})", "\"d\""},
        {"{not json", "malformed"},
    };
    for (const auto& c : cases) {
        INFO(c.text);
        const auto r = check_text(c.text);
        CHECK(r.code == exit_code::bad_input);
        CHECK(r.err.find(c.needle) != std::string::npos);
    }
}

TEST_CASE("invalid instance exits 2 even if others fail", "[cli]") {
    const std::string text = R"({"m": 1, "d": ["1","2"], "n": ["2","4"]})";
    const auto r = check_text(text);
    CHECK(r.code == exit_code::bad_input);
    const auto lines = json_lines(r.out);
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["valid"] == false);
    CHECK(lines[0]["reason"] == "singular_bezoutian");

    CHECK(check_text(R"({"m":1,"d":["1","2"],"n":["1","3"]})",
                     {.field = field_kind::float64, .tol = -1.0})
              .code == exit_code::bad_input);
}

TEST_CASE("exit code is 0 iff the report has no failing record", "[cli][property]") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        for (const auto field : {field_kind::rational, field_kind::float64}) {
            std::ostringstream out, err;
            const exit_code c = cmd_check(gen_config{.m = 1 + seed, .count = 3, .seed = seed},
                                          check_config{.field = field}, out, err);
            bool any_fail = false;
            for (const auto& line : json_lines(out.str())) {
                if (line.contains("check") && line["pass"] == false) {
                    any_fail = true;
                }
            }
            CHECK((c == exit_code::ok) == !any_fail);
        }
    }
    // an absurd tolerance that forces float failures: exit 1 and failing records present
    std::ostringstream out, err;
    const exit_code c = cmd_check(gen_config{.m = 6, .count = 2, .seed = 3},
                                  check_config{.field = field_kind::float64, .tol = 1e-30}, out, err);
    bool any_fail = false;
    for (const auto& line : json_lines(out.str())) {
        any_fail = any_fail || (line.contains("check") && line["pass"] == false);
    }
    CHECK(any_fail);
    CHECK(c == exit_code::check_failed);
    CHECK(err.str().find("exceeds tolerance") != std::string::npos);
}

TEST_CASE("instance files round-trip", "[cli][property]") {
    const auto generated = gen(gen_config{.m = 3, .count = 4, .seed = 17});
    std::istringstream in(generated.out);
    const auto files = read_instances(in);
    REQUIRE(files.size() == 4);

    std::ostringstream rewritten;
    for (const auto& f : files) {
        write_instance_line(rewritten, f);
    }
    CHECK(rewritten.str() == generated.out);

    const auto direct = check_text(generated.out);
    const auto reread = check_text(rewritten.str());
    CHECK(direct.out == reread.out);
    CHECK(direct.code == reread.code);

    // array and single-object forms read the same instances
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& line : json_lines(generated.out)) {
        arr.push_back(line);
    }
    std::istringstream arr_in(arr.dump(2));
    const auto from_array = read_instances(arr_in);
    REQUIRE(from_array.size() == files.size());
    for (std::size_t k = 0; k < files.size(); ++k) {
        CHECK(from_array[k].inst == files[k].inst);
        CHECK(from_array[k].seed == files[k].seed);
    }

    // non-integer rationals survive exactly
    const instance_file frac{qinst({rat(1, 3), rat(-7, 2)}, {rat(5), rat(2, 9)}), std::nullopt,
                             std::nullopt};
    std::ostringstream one;
    write_instance_line(one, frac);
    CHECK(one.str() == "{\"m\":1,\"d\":[\"1/3\",\"-7/2\"],\"n\":[\"5\",\"2/9\"]}\n");
    std::istringstream back(one.str());
    CHECK(read_instances(back)[0].inst == frac.inst);
}

TEST_CASE("format_residual", "[cli]") {
    CHECK(format_residual(0.0) == "0");
    CHECK(format_residual(1e-12) == "1e-12");
    CHECK(std::stod(format_residual(3.141592653589793)) == 3.141592653589793);
}

TEST_CASE("bench", "[cli]") {
    bench_config cfg;
    cfg.sizes = {1, 8};
    cfg.count = 3;
    cfg.seed = 2;
    std::ostringstream out, err;
    CHECK(cmd_bench(cfg, out, err) == exit_code::ok);
    CHECK(out.str().find("speedup") != std::string::npos);

    const bench_row row = bench_size(16, cfg);
    CHECK(row.m == 16);
    CHECK(row.count == 3);
    CHECK(row.max_residual <= 1e-9);
    CHECK(row.structured_ms > 0.0);
    CHECK(row.dense_ms > 0.0);

    cfg.inject_fault = true;
    std::ostringstream out2, err2;
    CHECK(cmd_bench(cfg, out2, err2) == exit_code::check_failed);
    CHECK(err2.str().find("differ") != std::string::npos);

    bench_config empty;
    std::ostringstream out3, err3;
    CHECK(cmd_bench(empty, out3, err3) == exit_code::bad_input);
}
