#include "surdlab/serialize.hpp"

#include <sstream>

namespace surdlab {

using nlohmann::json;

json interval_to_json(const RationalInterval& iv) {
    int digits = display_digits(iv);
    return {{"lo", decimal_lower(iv.lo(), digits)},
            {"hi", decimal_upper(iv.hi(), digits)}};
}

std::string rational_to_fraction_string(const Rational& r) {
    Integer n = num(r), d = den(r);
    return d == 1 ? n.str() : n.str() + "/" + d.str();
}

json record_to_json(const LittlewoodRecord& rec) {
    json j;
    j["n"] = rec.n;
    j["u_n"] = rec.u_n.str();
    j["m"] = rec.m;
    j["l"] = rec.l;
    j["a_last"] = rec.a_last.str();
    j["j_star"] = rec.j_star;
    j["r"] = rec.r.str();
    j["q"] = rec.q.str();
    j["err"] = interval_to_json(rec.err);
    j["val"] = rational_to_fraction_string(rec.val);
    j["log_q"] = interval_to_json(rec.log_q);
    j["product"] = interval_to_json(rec.product);
    j["qnorm"] = interval_to_json(rec.qnorm);
    j["core"] = interval_to_json(rec.core);
    j["ec3_ratio"] = interval_to_json(rec.ec3_ratio);
    j["ec4_ratio"] = interval_to_json(rec.ec4_ratio);
    j["log_r_over_l"] = interval_to_json(rec.log_r_over_l);
    return j;
}

json sweep_entry_to_json(const SweepEntry& entry) {
    json j;
    j["n"] = entry.n;
    if (entry.record)
        j["record"] = record_to_json(*entry.record);
    else
        j["error"] = entry.error;
    return j;
}

json summary_to_json(const SweepSummary& s) {
    json j;
    j["counted"] = s.counted;
    if (s.counted > 0) {
        j["c_hat"] = decimal_upper(s.c_hat, 15);
        j["c_lo"] = decimal_lower(s.c_lo, 15);
        j["ratio_min"] = rational_to_fraction_string(s.ratio_min);
        j["ratio_max"] = rational_to_fraction_string(s.ratio_max);
        j["s_membership_max"] = decimal_upper(s.s_membership_max, 15);
    }
    j["s_membership_ok"] = s.s_membership_ok;
    j["products_positive"] = s.products_positive;
    return j;
}

json stats_to_json(const PeriodStats& s) {
    json j;
    j["n"] = s.n;
    j["u_n"] = s.u_n.str();
    j["l"] = s.l;
    j["kappa"] = rational_to_fraction_string(s.kappa);
    j["threshold"] = interval_to_json(s.threshold);
    j["birkhoff"] = interval_to_json(s.birkhoff);
    j["gamma_dev"] = interval_to_json(s.gamma_dev);
    j["delta_ref"] = interval_to_json(s.delta_ref);
    j["gm_log_b"] = interval_to_json(s.gm_log_b);
    j["gm_log_b1"] = interval_to_json(s.gm_log_b1);
    // The unknown up-to-constant factor, exposed as data: |gamma_dev| in units
    // of the reference scale.
    j["dev_over_ref"] = interval_to_json(s.gamma_dev.abs() / s.delta_ref);
    j["below_threshold"] = s.below_threshold;
    j["two_sided"] = s.two_sided;
    j["ub_ok"] = s.ub_ok;
    j["lb_ok"] = s.lb_ok;
    j["sandwich_ok"] = s.sandwich_ok;
    return j;
}

json expansion_to_json(const QuadraticSurd& x, const PeriodicCF& cf) {
    json j;
    j["surd"] = x.to_string();
    j["D"] = cf.D.str();
    j["m"] = cf.m();
    j["l"] = cf.l();
    j["purely_periodic"] = cf.purely_periodic;
    json pre = json::array(), per = json::array();
    for (const Integer& a : cf.preperiod) pre.push_back(a.str());
    for (const Integer& a : cf.period) per.push_back(a.str());
    j["preperiod"] = std::move(pre);
    j["period"] = std::move(per);
    j["rendered"] = cf.to_string();
    return j;
}

std::string sweep_to_jsonl(const SweepResult& res) {
    std::ostringstream os;
    for (const SweepEntry& e : res.entries) os << sweep_entry_to_json(e).dump() << "\n";
    os << json{{"summary", summary_to_json(res.summary)}}.dump() << "\n";
    return os.str();
}

std::string sweep_to_csv(const SweepResult& res) {
    std::ostringstream os;
    os << "n,u_n,l,a_last,r_digits,q_digits,product_lo,product_hi,l_over_un,ec4_ratio\n";
    for (const SweepEntry& e : res.entries) {
        if (!e.record) continue;
        const LittlewoodRecord& rec = *e.record;
        os << rec.n << "," << rec.u_n.str() << "," << rec.l << ","
           << rec.a_last.str() << "," << decimal_digits(rec.r) << ","
           << decimal_digits(rec.q) << "," << decimal_lower(rec.product.lo(), 12)
           << "," << decimal_upper(rec.product.hi(), 12) << ","
           << decimal_lower(Rational(rec.l) / rec.u_n, 12) << ","
           << decimal_lower(rec.ec4_ratio.mid(), 12) << "\n";
    }
    return os.str();
}

std::string stats_to_jsonl(const std::vector<PeriodStats>& reports) {
    std::ostringstream os;
    for (const PeriodStats& s : reports) os << stats_to_json(s).dump() << "\n";
    return os.str();
}

}  // namespace surdlab
