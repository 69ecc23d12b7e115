#ifndef SURDLAB_CONFIG_HPP
#define SURDLAB_CONFIG_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "surdlab/pseudo_absolute.hpp"
#include "surdlab/surd.hpp"

namespace surdlab {

// Run configuration for the littlewood/stats commands.  A JSON config file
// mirrors the command-line flags; flags take precedence.  validate() throws
// ConfigError listing everything wrong at once.
struct ExperimentConfig {
    std::string alpha = "sqrt(2)";
    nlohmann::json seq = {{"kind", "p-power"}, {"p", 2}};
    std::size_t n_from = 1;
    std::size_t n_to = 8;
    std::string delta0 = "25/64";
    std::string tol = "1e-12";
    std::string out;            // empty = stdout
    std::string format = "jsonl";  // jsonl | csv
    unsigned threads = 0;       // 0 = auto

    static ExperimentConfig from_json(const nlohmann::json& j);
    void merge_json(const nlohmann::json& j);  // file layer, before flag overrides
    void validate() const;

    QuadraticSurd parse_alpha() const;
    PseudoAbsoluteSequence parse_seq() const;
    Rational parse_delta0() const;
    Rational parse_tol() const;
};

PseudoAbsoluteSequence sequence_from_json(const nlohmann::json& spec);

}  // namespace surdlab

#endif
