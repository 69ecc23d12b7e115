#include "surdlab/config.hpp"

#include <vector>

#include "surdlab/errors.hpp"

namespace surdlab {

namespace {

using nlohmann::json;

Integer json_integer(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return Integer(v.get<std::string>());
        if (v.is_number_unsigned()) return Integer(v.get<unsigned long long>());
        if (v.is_number_integer()) return Integer(v.get<long long>());
    } catch (const std::exception&) {
    }
    throw ConfigError(where + " must be an integer (number or decimal string)");
}

std::string json_rational_text(const json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) return v.dump();  // keeps the literal digits
    throw ConfigError(where + " must be a number or a rational string");
}

std::size_t json_index(const json& v, const std::string& where) {
    if (v.is_number_unsigned()) return v.get<std::size_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
        return static_cast<std::size_t>(v.get<long long>());
    throw ConfigError(where + " must be a non-negative integer");
}

}  // namespace

PseudoAbsoluteSequence sequence_from_json(const nlohmann::json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        throw ConfigError("sequence spec must be an object with a \"kind\" string");
    std::string kind = spec["kind"].get<std::string>();
    if (kind == "p-power") {
        if (!spec.contains("p")) throw ConfigError("p-power sequence needs \"p\"");
        return PseudoAbsoluteSequence::p_power(json_integer(spec["p"], "p"));
    }
    if (kind == "m-unit") {
        if (!spec.contains("M") || !spec["M"].is_array() || spec["M"].empty())
            throw ConfigError("m-unit sequence needs a nonempty \"M\" array");
        std::vector<Integer> M;
        for (const auto& v : spec["M"]) M.push_back(json_integer(v, "M entry"));
        if (!spec.contains("schedule") ||
            (spec["schedule"].is_string() &&
             spec["schedule"].get<std::string>() == "round-robin"))
            return PseudoAbsoluteSequence::m_unit_round_robin(std::move(M));
        if (spec["schedule"].is_array()) {
            std::vector<std::vector<unsigned>> rows;
            for (const auto& row : spec["schedule"]) {
                if (!row.is_array()) throw ConfigError("schedule rows must be arrays");
                std::vector<unsigned> r;
                for (const auto& v : row) {
                    Integer e = json_integer(v, "schedule exponent");
                    if (e < 0 || e > 1000000)
                        throw ConfigError("schedule exponent out of range");
                    r.push_back(e.convert_to<unsigned>());
                }
                rows.push_back(std::move(r));
            }
            return PseudoAbsoluteSequence::m_unit_schedule(std::move(M), std::move(rows));
        }
        throw ConfigError("schedule must be \"round-robin\" or an exponent matrix");
    }
    if (kind == "explicit") {
        if (!spec.contains("terms") || !spec["terms"].is_array())
            throw ConfigError("explicit sequence needs a \"terms\" array");
        std::vector<Integer> terms;
        for (const auto& v : spec["terms"]) terms.push_back(json_integer(v, "term"));
        return PseudoAbsoluteSequence::explicit_terms(std::move(terms));
    }
    throw ConfigError("unknown sequence kind \"" + kind +
                      "\" (expected p-power, m-unit or explicit)");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.merge_json(j);
    return c;
}

void ExperimentConfig::merge_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "alpha") {
            alpha = value.is_string() ? value.get<std::string>()
                                      : throw ConfigError("alpha must be a string");
        } else if (key == "seq" || key == "sequence") {
            if (!value.is_object()) throw ConfigError("sequence must be an object");
            seq = value;
        } else if (key == "n_from" || key == "n-from") {
            n_from = json_index(value, key);
        } else if (key == "n_to" || key == "n-to") {
            n_to = json_index(value, key);
        } else if (key == "n_range") {
            if (!value.is_array() || value.size() != 2)
                throw ConfigError("n_range must be [from, to]");
            n_from = json_index(value[0], "n_range[0]");
            n_to = json_index(value[1], "n_range[1]");
        } else if (key == "delta0") {
            delta0 = json_rational_text(value, "delta0");
        } else if (key == "tol") {
            tol = json_rational_text(value, "tol");
        } else if (key == "out" || key == "output") {
            if (value.is_string()) {
                out = value.get<std::string>();
            } else if (value.is_object()) {
                if (value.contains("path")) out = value["path"].get<std::string>();
                if (value.contains("format")) format = value["format"].get<std::string>();
            } else {
                throw ConfigError("output must be a path or {path, format}");
            }
        } else if (key == "format") {
            format = value.is_string() ? value.get<std::string>()
                                       : throw ConfigError("format must be a string");
        } else if (key == "threads") {
            if (value.is_string() && value.get<std::string>() == "auto") {
                threads = 0;
            } else if (value.is_number_unsigned() || value.is_number_integer()) {
                long long t = value.get<long long>();
                if (t < 1) throw ConfigError("threads must be positive or \"auto\"");
                threads = static_cast<unsigned>(t);
            } else {
                throw ConfigError("threads must be a positive integer or \"auto\"");
            }
        } else {
            throw ConfigError("unknown config key \"" + key + "\"");
        }
    }
}

void ExperimentConfig::validate() const {
    std::vector<std::string> problems;
    if (n_from == 0) problems.push_back("n_from must be at least 1 (chains are 1-based)");
    if (format != "jsonl" && format != "csv")
        problems.push_back("format must be jsonl or csv");
    try {
        parse_alpha();
    } catch (const std::exception& ex) {
        problems.push_back(std::string("alpha: ") + ex.what());
    }
    try {
        PseudoAbsoluteSequence s = parse_seq();
        if (s.is_finite() && n_to > s.length())
            problems.push_back("n_to exceeds the finite chain length " +
                               std::to_string(s.length()));
    } catch (const std::exception& ex) {
        problems.push_back(std::string("sequence: ") + ex.what());
    }
    try {
        Rational d = parse_delta0();
        if (d < Rational(25, 64) || d > Rational(1, 2))
            problems.push_back("delta0 must lie in [25/64, 1/2]");
    } catch (const std::exception& ex) {
        problems.push_back(std::string("delta0: ") + ex.what());
    }
    try {
        if (parse_tol() <= 0) problems.push_back("tol must be positive");
    } catch (const std::exception& ex) {
        problems.push_back(std::string("tol: ") + ex.what());
    }
    if (!problems.empty()) {
        std::string joined;
        for (std::size_t i = 0; i < problems.size(); ++i)
            joined += (i ? "; " : "") + problems[i];
        throw ConfigError(joined);
    }
}

QuadraticSurd ExperimentConfig::parse_alpha() const { return parse_surd(alpha); }

PseudoAbsoluteSequence ExperimentConfig::parse_seq() const {
    return sequence_from_json(seq);
}

Rational ExperimentConfig::parse_delta0() const { return rational_from_string(delta0); }

Rational ExperimentConfig::parse_tol() const { return rational_from_string(tol); }

}  // namespace surdlab
