#include <doctest.h>

#include <string>

#include "surdlab/config.hpp"
#include "surdlab/errors.hpp"

using namespace surdlab;
using nlohmann::json;

namespace {

std::string config_error_text(const ExperimentConfig& c) {
    try {
        c.validate();
    } catch (const ConfigError& ex) {
        return ex.what();
    }
    return {};
}

}  // namespace

/* ----- defaults and merging ----- */

TEST_CASE("default configuration") {
    ExperimentConfig c;
    CHECK(c.alpha == "sqrt(2)");
    CHECK(c.seq == json({{"kind", "p-power"}, {"p", 2}}));
    CHECK(c.n_from == 1);
    CHECK(c.n_to == 8);
    CHECK(c.delta0 == "25/64");
    CHECK(c.tol == "1e-12");
    CHECK(c.out.empty());
    CHECK(c.format == "jsonl");
    CHECK(c.threads == 0);
    CHECK_NOTHROW(c.validate());
    CHECK(c.parse_alpha().to_string() == "(0+sqrt(2))/1");
    CHECK(c.parse_delta0() == Rational(25, 64));
    CHECK(c.parse_tol() == Rational(1, Integer("1000000000000")));
}

TEST_CASE("merge_json accepts both key spellings") {
    ExperimentConfig a = ExperimentConfig::from_json(
        json{{"n_from", 2}, {"n_to", 5}});
    CHECK(a.n_from == 2);
    CHECK(a.n_to == 5);
    ExperimentConfig b = ExperimentConfig::from_json(
        json{{"n-from", 3}, {"n-to", 7}});
    CHECK(b.n_from == 3);
    CHECK(b.n_to == 7);
    ExperimentConfig c = ExperimentConfig::from_json(json{{"n_range", {4, 9}}});
    CHECK(c.n_from == 4);
    CHECK(c.n_to == 9);
    ExperimentConfig d = ExperimentConfig::from_json(
        json{{"sequence", {{"kind", "p-power"}, {"p", 3}}}});
    CHECK(d.seq["p"] == 3);
}

TEST_CASE("later merges override earlier layers field by field") {
    ExperimentConfig c;
    c.merge_json(json{{"alpha", "(1+sqrt(5))/2"}, {"n_to", 12}});
    c.merge_json(json{{"n_to", 6}});
    CHECK(c.alpha == "(1+sqrt(5))/2");
    CHECK(c.n_to == 6);
    CHECK(c.n_from == 1);  // untouched layers keep their defaults
}

TEST_CASE("output may be a path or an object") {
    ExperimentConfig a = ExperimentConfig::from_json(json{{"out", "runs.jsonl"}});
    CHECK(a.out == "runs.jsonl");
    CHECK(a.format == "jsonl");
    ExperimentConfig b = ExperimentConfig::from_json(
        json{{"output", {{"path", "runs.csv"}, {"format", "csv"}}}});
    CHECK(b.out == "runs.csv");
    CHECK(b.format == "csv");
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"out", 7}}), ConfigError);
}

TEST_CASE("threads parsing") {
    CHECK(ExperimentConfig::from_json(json{{"threads", "auto"}}).threads == 0);
    CHECK(ExperimentConfig::from_json(json{{"threads", 4}}).threads == 4);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"threads", 0}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"threads", -2}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"threads", "four"}}), ConfigError);
}

TEST_CASE("unknown keys and malformed values are rejected") {
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"alpa", "sqrt(2)"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json::array()), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"alpha", 2}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"seq", "p-power"}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"n_range", {1, 2, 3}}}), ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::from_json(json{{"format", 1}}), ConfigError);
    try {
        ExperimentConfig::from_json(json{{"mystery", true}});
        FAIL("expected ConfigError");
    } catch (const ConfigError& ex) {
        CHECK(std::string(ex.what()).find("mystery") != std::string::npos);
    }
}

TEST_CASE("numeric delta0 and tol keep their literal digits") {
    ExperimentConfig c = ExperimentConfig::from_json(
        json{{"delta0", 0.40625}, {"tol", "1e-6"}});
    CHECK(c.parse_delta0() == Rational(13, 32));
    CHECK(c.parse_tol() == Rational(1, 1000000));
    CHECK_NOTHROW(c.validate());
}

/* ----- validation ----- */

TEST_CASE("validate aggregates every problem into one error") {
    ExperimentConfig c;
    c.alpha = "sqrt(-1)";
    c.n_from = 0;
    c.format = "xml";
    c.delta0 = "1/3";
    c.tol = "-1e-3";
    std::string msg = config_error_text(c);
    REQUIRE_FALSE(msg.empty());
    CHECK(msg.find("n_from") != std::string::npos);
    CHECK(msg.find("format") != std::string::npos);
    CHECK(msg.find("alpha") != std::string::npos);
    CHECK(msg.find("delta0") != std::string::npos);
    CHECK(msg.find("tol") != std::string::npos);
}

TEST_CASE("validate enforces the delta0 window endpoints") {
    ExperimentConfig c;
    c.delta0 = "25/64";
    CHECK_NOTHROW(c.validate());
    c.delta0 = "1/2";
    CHECK_NOTHROW(c.validate());
    c.delta0 = "0.39";  // just below 25/64 = 0.390625
    CHECK_FALSE(config_error_text(c).empty());
    c.delta0 = "0.51";
    CHECK_FALSE(config_error_text(c).empty());
}

TEST_CASE("validate rejects ranges past a finite chain") {
    ExperimentConfig c;
    c.seq = json{{"kind", "explicit"}, {"terms", {1, 2, 4}}};
    c.n_to = 3;
    CHECK_NOTHROW(c.validate());
    c.n_to = 4;
    std::string msg = config_error_text(c);
    CHECK(msg.find("chain length 3") != std::string::npos);
}

TEST_CASE("invalid sequence specs surface through validate") {
    ExperimentConfig c;
    c.seq = json{{"kind", "p-power"}, {"p", 6}};
    std::string msg = config_error_text(c);
    CHECK(msg.find("sequence") != std::string::npos);
}

/* ----- sequence specs ----- */

TEST_CASE("sequence_from_json builds every kind") {
    PseudoAbsoluteSequence p = sequence_from_json(
        json{{"kind", "p-power"}, {"p", 3}});
    CHECK(p.term(3) == 9);
    PseudoAbsoluteSequence ps = sequence_from_json(
        json{{"kind", "p-power"}, {"p", "5"}});
    CHECK(ps.term(2) == 5);

    PseudoAbsoluteSequence rr = sequence_from_json(
        json{{"kind", "m-unit"}, {"M", {2, 3}}});
    CHECK(rr.term(4) == 12);  // 1,2,6,12 under the round-robin schedule
    PseudoAbsoluteSequence rr2 = sequence_from_json(
        json{{"kind", "m-unit"}, {"M", {2, 3}}, {"schedule", "round-robin"}});
    CHECK(rr2.term(4) == 12);

    PseudoAbsoluteSequence sched = sequence_from_json(
        json{{"kind", "m-unit"},
             {"M", {2, 3}},
             {"schedule", {{0, 0}, {2, 0}, {2, 1}, {4, 3}}}});
    CHECK(sched.term(3) == 12);
    CHECK(sched.term(4) == 432);
    CHECK(sched.is_finite());
    CHECK(sched.length() == 4);

    PseudoAbsoluteSequence ex = sequence_from_json(
        json{{"kind", "explicit"}, {"terms", {1, 3, 9, 45}}});
    CHECK(ex.term(4) == 45);
    CHECK(ex.is_finite());
}

TEST_CASE("sequence spec errors") {
    CHECK_THROWS_AS(sequence_from_json(json::array()), ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"p", 2}}), ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "geometric"}}), ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "p-power"}}), ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "p-power"}, {"p", 2.5}}),
                    ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "p-power"}, {"p", "abc"}}),
                    ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "m-unit"}, {"M", json::array()}}),
                    ConfigError);
    CHECK_THROWS_AS(
        sequence_from_json(json{{"kind", "m-unit"}, {"M", {2, 3}}, {"schedule", 7}}),
        ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "m-unit"},
                                            {"M", {2, 3}},
                                            {"schedule", {{0, 0}, {-1, 0}}}}),
                    ConfigError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "explicit"}}), ConfigError);
    // domain faults from the sequence layer pass through untouched
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "p-power"}, {"p", 6}}),
                    NotMUnitError);
    CHECK_THROWS_AS(sequence_from_json(json{{"kind", "explicit"}, {"terms", {1, 2, 3}}}),
                    InvalidChainError);
}
