#pragma once

// Interchange formats.
//
// Instance file (UTF-8 JSON, one object; streams are one object per line):
//   {"m": 2, "d": ["1","1","1"], "n": ["1","2","3"], "seed": 7, "generator": "splitmix64-v1"}
// "seed" and "generator" are optional. Rationals are strings in the form
// accepted by parse_rational.
//
// Report (JSON lines): one header object per instance followed by one object
// per check:
//   {"instance":0,"m":2,"field":"rational","mode":"strict","seed":null,"valid":true,"reason":"none"}
//   {"check":"hill_identity","pass":true,"max_residual":"0","counterexample":null}

#include <charconv>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "json.hpp"

#include "builders.hpp"
#include "error.hpp"
#include "numeric.hpp"
#include "random.hpp"
#include "verify.hpp"

namespace toepsyl {

struct instance_file {
    instance<rational> inst;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> generator;
};

inline nlohmann::ordered_json to_json(const instance_file& file) {
    nlohmann::ordered_json j;
    j["m"] = file.inst.order();
    auto strings = [](const std::vector<rational>& v) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& q : v) {
            arr.push_back(to_string(q));
        }
        return arr;
    };
    j["d"] = strings(file.inst.d());
    j["n"] = strings(file.inst.n());
    if (file.seed) {
        j["seed"] = *file.seed;
    }
    if (file.generator) {
        j["generator"] = *file.generator;
    }
    return j;
}

inline instance_file from_generated(const generated_instance& g) {
    return {g.inst, g.seed, std::string(generator_version)};
}

/// Schema-checked decode. input_error messages name the offending field.
inline instance_file parse_instance(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw input_error("instance: expected a JSON object");
    }
    const auto m_it = j.find("m");
    if (m_it == j.end()) {
        throw input_error("field \"m\": missing");
    }
    if (!m_it->is_number_integer() || m_it->get<std::int64_t>() < 1) {
        throw input_error("field \"m\": expected a positive integer");
    }
    const auto m = static_cast<std::size_t>(m_it->get<std::int64_t>());

    const auto coeffs = [&](const char* name) {
        const auto it = j.find(name);
        const std::string field = std::string("field \"") + name + "\"";
        if (it == j.end()) {
            throw input_error(field + ": missing");
        }
        if (!it->is_array()) {
            throw input_error(field + ": expected an array of rational strings");
        }
        if (it->size() != m + 1) {
            throw input_error(field + ": expected " + std::to_string(m + 1) + " entries (m+1), got " +
                              std::to_string(it->size()));
        }
        std::vector<rational> out;
        for (std::size_t h = 0; h < it->size(); ++h) {
            const auto& e = (*it)[h];
            if (!e.is_string()) {
                throw input_error(field + "[" + std::to_string(h) + "]: expected a string");
            }
            try {
                out.push_back(parse_rational(e.get<std::string>()));
            } catch (const input_error& err) {
                throw input_error(field + "[" + std::to_string(h) + "]: " + err.what());
            }
        }
        return out;
    };
    std::vector<rational> d = coeffs("d");
    std::vector<rational> n = coeffs("n");

    instance_file file{instance<rational>(std::move(d), std::move(n)), std::nullopt, std::nullopt};
    if (const auto it = j.find("seed"); it != j.end() && !it->is_null()) {
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
            throw input_error("field \"seed\": expected a non-negative integer");
        }
        file.seed = it->get<std::uint64_t>();
    }
    if (const auto it = j.find("generator"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) {
            throw input_error("field \"generator\": expected a string");
        }
        file.generator = it->get<std::string>();
    }
    return file;
}

/// Accepts a single instance object, a JSON array of them, or JSON lines.
inline std::vector<instance_file> read_instances(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::vector<instance_file> out;
    const auto whole = nlohmann::json::parse(text, nullptr, false);
    if (!whole.is_discarded()) {
        if (whole.is_array()) {
            for (std::size_t k = 0; k < whole.size(); ++k) {
                try {
                    out.push_back(parse_instance(whole[k]));
                } catch (const input_error& e) {
                    throw input_error("instance " + std::to_string(k) + ": " + e.what());
                }
            }
        } else {
            out.push_back(parse_instance(whole));
        }
        return out;
    }
    std::istringstream lines(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw input_error("line " + std::to_string(line_no) + ": malformed JSON");
        }
        try {
            out.push_back(parse_instance(j));
        } catch (const input_error& e) {
            throw input_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

inline void write_instance_line(std::ostream& out, const instance_file& file) {
    out << to_json(file).dump() << '\n';
}

/// Shortest round-trip decimal form ("0" for zero).
inline std::string format_residual(double r) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, r);
    return std::string(buf, res.ptr);
}

inline std::string_view to_string(validation_mode mode) {
    return mode == validation_mode::strict ? "strict" : "relaxed";
}

inline nlohmann::ordered_json report_header_json(const identity_report& report, std::size_t index) {
    nlohmann::ordered_json j;
    j["instance"] = index;
    j["m"] = report.m;
    j["field"] = report.field;
    j["mode"] = to_string(report.mode);
    j["seed"] = report.seed ? nlohmann::ordered_json(*report.seed) : nlohmann::ordered_json(nullptr);
    j["valid"] = report.instance_ok();
    j["reason"] = to_string(report.valid.reason);
    return j;
}

inline nlohmann::ordered_json check_json(const check_record& rec) {
    nlohmann::ordered_json j;
    j["check"] = rec.name;
    j["pass"] = rec.pass;
    j["max_residual"] = format_residual(rec.max_residual);
    if (rec.counterexample) {
        j["counterexample"] = *rec.counterexample;
    } else {
        j["counterexample"] = nullptr;
    }
    return j;
}

inline void write_report(std::ostream& out, const identity_report& report, std::size_t index) {
    out << report_header_json(report, index).dump() << '\n';
    for (const auto& rec : report.checks) {
        out << check_json(rec).dump() << '\n';
    }
}

} // namespace toepsyl
