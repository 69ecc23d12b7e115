// surdlab: continued-fraction laboratory for quadratic surds.
//
// Subcommands:
//   expand     print the periodic continued fraction of a surd
//   littlewood sweep the product q log(q) ||q alpha|| |q|_D over a chain
//   stats      period shift statistics against the Gauss measure
//   selftest   run the built-in invariant suite

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "surdlab/config.hpp"
#include "surdlab/errors.hpp"
#include "surdlab/lab.hpp"
#include "surdlab/serialize.hpp"

namespace {

using namespace surdlab;

// Writes payload to the path, or to stdout when the path is empty.  Returns
// false (after reporting) when the file cannot be written.
bool emit(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return false;
    }
    out << payload;
    return out.good();
}

// Human-facing stream: stdout normally, stderr when the machine-readable
// records are already going to stdout.
std::ostream& chatter(const ExperimentConfig& cfg) {
    return cfg.out.empty() ? std::cerr : std::cout;
}

void print_quotients(std::ostream& os, const std::vector<Integer>& v, std::size_t limit) {
    for (std::size_t i = 0; i < v.size() && i < limit; ++i)
        os << (i ? ", " : "") << v[i].str();
    if (v.size() > limit) os << ", ...";
}

int cmd_expand(const std::string& text, std::size_t limit) {
    QuadraticSurd x = parse_surd(text);
    PeriodicCF cf = expand(x);
    std::cout << x.to_string() << "\n";
    std::cout << "preperiod (m=" << cf.m() << "): ";
    print_quotients(std::cout, cf.preperiod, limit);
    std::cout << "\nperiod (l=" << cf.l() << "): ";
    print_quotients(std::cout, cf.period, limit);
    std::cout << "\n";
    if (cf.purely_periodic) std::cout << "purely periodic\n";
    return 0;
}

// Largest ratio of consecutive chain terms over the run's range; the chain
// contract does not require it bounded, so it is reported, not enforced.
Rational chain_ratio_bound(const PseudoAbsoluteSequence& seq, std::size_t from,
                           std::size_t to) {
    Rational best = 0;
    for (std::size_t n = from; n + 1 <= to; ++n) {
        Rational ratio = Rational(seq.term(n + 1)) / seq.term(n);
        best = std::max(best, ratio);
    }
    return best;
}

int cmd_littlewood(const ExperimentConfig& cfg) {
    QuadraticSurd alpha = reduce_to_purely_periodic(cfg.parse_alpha());
    PseudoAbsoluteSequence seq = cfg.parse_seq();
    SweepResult res = sweep(alpha, seq, cfg.n_from, cfg.n_to, cfg.parse_tol(),
                            cfg.threads);
    std::string payload = cfg.format == "csv" ? sweep_to_csv(res) : sweep_to_jsonl(res);
    if (!emit(cfg.out, payload)) return 1;

    std::ostream& os = chatter(cfg);
    const SweepSummary& s = res.summary;
    os << "records: " << res.entries.size() << " (" << s.counted
       << " past the baseline)\n";
    for (const SweepEntry& e : res.entries)
        if (!e.record) os << "  n=" << e.n << ": " << e.error << "\n";
    if (s.counted > 0) {
        os << "c_hat = " << decimal_upper(s.c_hat, 12)
           << "  c_lo = " << decimal_lower(s.c_lo, 12) << "\n";
        os << "l/u_n in [" << rational_to_fraction_string(s.ratio_min) << ", "
           << rational_to_fraction_string(s.ratio_max) << "]\n";
        os << "S-membership: max q||q alpha|| a_last / u_n = "
           << decimal_upper(s.s_membership_max, 12)
           << (s.s_membership_ok ? " (all below 1, exact)" : " (violated)") << "\n";
    }
    if (cfg.n_from < cfg.n_to)
        os << "chain u_{n+1}/u_n <= "
           << rational_to_fraction_string(chain_ratio_bound(seq, cfg.n_from, cfg.n_to))
           << " over the range\n";
    return 0;
}

int cmd_stats(const ExperimentConfig& cfg) {
    QuadraticSurd alpha = reduce_to_purely_periodic(cfg.parse_alpha());
    PseudoAbsoluteSequence seq = cfg.parse_seq();
    Rational delta0 = cfg.parse_delta0();
    Rational tol = cfg.parse_tol();
    std::vector<PeriodStats> reports;
    std::ostream& os = chatter(cfg);
    for (std::size_t n = cfg.n_from; n <= cfg.n_to; ++n) {
        try {
            reports.push_back(period_statistics(alpha, seq, n, delta0, tol));
        } catch (const HypothesisViolationError& ex) {
            os << "  n=" << n << ": " << ex.what() << "\n";
        }
    }
    if (!emit(cfg.out, stats_to_jsonl(reports))) return 1;
    for (const PeriodStats& st : reports)
        os << "n=" << st.n << " l=" << st.l
           << " gamma_dev=" << st.gamma_dev.to_pm_string()
           << " two_sided=" << st.two_sided << "\n";
    return 0;
}

int cmd_selftest(bool quick) {
    std::vector<CheckResult> results = run_selftest(quick);
    bool all_ok = true;
    for (const CheckResult& c : results) {
        std::cout << (c.ok ? "PASS" : "FAIL") << "  " << c.name;
        if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
        std::cout << "\n";
        all_ok = all_ok && c.ok;
    }
    std::cout << (all_ok ? "all checks passed" : "FAILURES present") << "\n";
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact continued-fraction laboratory for quadratic surds"};
    app.require_subcommand(1);

    auto* sub_expand = app.add_subcommand("expand", "expand a quadratic surd");
    std::string surd_text;
    std::size_t limit = 40;
    sub_expand->add_option("surd", surd_text, "sqrt(D) or (P+sqrt(D))/Q")->required();
    sub_expand->add_option("--limit", limit, "quotients shown per block");

    ExperimentConfig cfg;
    std::string config_path, seq_text, alpha_text, delta0_text, tol_text, out_path,
        format_text, threads_text;
    std::size_t n_from = 0, n_to = 0;

    auto add_experiment_flags = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file (flags override)");
        sub->add_option("--alpha", alpha_text, "surd, e.g. \"sqrt(2)\"");
        sub->add_option("--seq", seq_text, "chain spec JSON, e.g. {\"kind\":\"p-power\",\"p\":2}");
        sub->add_option("--n-from", n_from, "first chain index");
        sub->add_option("--n-to", n_to, "last chain index");
        sub->add_option("--delta0", delta0_text, "threshold exponent in [25/64, 1/2]");
        sub->add_option("--tol", tol_text, "certification tolerance");
        sub->add_option("--out", out_path, "output path (default stdout)");
        sub->add_option("--format", format_text, "jsonl or csv");
        sub->add_option("--threads", threads_text, "worker count or \"auto\"");
    };
    auto* sub_little = app.add_subcommand("littlewood", "sweep the product over a chain");
    add_experiment_flags(sub_little);
    auto* sub_stats = app.add_subcommand("stats", "period statistics per index");
    add_experiment_flags(sub_stats);

    auto* sub_self = app.add_subcommand("selftest", "run the invariant suite");
    bool quick = false;
    sub_self->add_flag("--quick", quick, "small subset, under ten seconds");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub_expand->parsed()) return cmd_expand(surd_text, limit);
        if (sub_self->parsed()) return cmd_selftest(quick);

        CLI::App* sub = sub_little->parsed() ? sub_little : sub_stats;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot read config file " + config_path);
            nlohmann::json j;
            try {
                in >> j;
            } catch (const std::exception& ex) {
                throw ConfigError(std::string("config file: ") + ex.what());
            }
            cfg.merge_json(j);
        }
        if (sub->count("--alpha")) cfg.alpha = alpha_text;
        if (sub->count("--seq")) {
            try {
                cfg.seq = nlohmann::json::parse(seq_text);
            } catch (const std::exception& ex) {
                throw ConfigError(std::string("--seq: ") + ex.what());
            }
        }
        if (sub->count("--n-from")) cfg.n_from = n_from;
        if (sub->count("--n-to")) cfg.n_to = n_to;
        if (sub->count("--delta0")) cfg.delta0 = delta0_text;
        if (sub->count("--tol")) cfg.tol = tol_text;
        if (sub->count("--out")) cfg.out = out_path;
        if (sub->count("--format")) cfg.format = format_text;
        if (sub->count("--threads")) {
            if (threads_text == "auto") {
                cfg.threads = 0;
            } else {
                try {
                    cfg.threads = static_cast<unsigned>(std::stoul(threads_text));
                } catch (const std::exception&) {
                    throw ConfigError("--threads must be a positive integer or \"auto\"");
                }
                if (cfg.threads == 0) throw ConfigError("--threads must be positive");
            }
        }
        cfg.validate();
        return sub_little->parsed() ? cmd_littlewood(cfg) : cmd_stats(cfg);
    } catch (const ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << "\n";
        return 2;
    } catch (const ParseError& ex) {
        std::cerr << "parse error: " << ex.what() << "\n";
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return sub_expand->parsed() ? 2 : 1;
    }
}
