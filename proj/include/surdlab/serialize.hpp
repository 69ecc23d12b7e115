#ifndef SURDLAB_SERIALIZE_HPP
#define SURDLAB_SERIALIZE_HPP

#include <string>

#include <json.hpp>

#include "surdlab/cf.hpp"
#include "surdlab/lab.hpp"

namespace surdlab {

// Machine-readable emission.  Intervals become {"lo": "...", "hi": "..."}
// decimal strings with outward rounding; exact rationals are "p/q" strings;
// integers are decimal strings (they outgrow JSON numbers quickly).  All
// digit counts derive from interval widths, so output is deterministic and
// identical across thread counts.

nlohmann::json interval_to_json(const RationalInterval& iv);
std::string rational_to_fraction_string(const Rational& r);

nlohmann::json record_to_json(const LittlewoodRecord& rec);
nlohmann::json sweep_entry_to_json(const SweepEntry& entry);
nlohmann::json summary_to_json(const SweepSummary& s);
nlohmann::json stats_to_json(const PeriodStats& s);
nlohmann::json expansion_to_json(const QuadraticSurd& x, const PeriodicCF& cf);

// JSON-lines for the record stream: one entry per line, then one summary line.
std::string sweep_to_jsonl(const SweepResult& res);
// CSV summary: n, u_n, l, a_last, r_digits, q_digits, product_lo, product_hi,
// l_over_un, ec4_ratio (header included, midpoint for the ec4 column).
std::string sweep_to_csv(const SweepResult& res);

std::string stats_to_jsonl(const std::vector<PeriodStats>& reports);

}  // namespace surdlab

#endif
