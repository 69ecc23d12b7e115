#include "surdlab/cf.hpp"

#include <algorithm>
#include <boost/functional/hash.hpp>
#include <sstream>
#include <unordered_map>

#include "surdlab/errors.hpp"

namespace surdlab {

namespace {

struct StateHash {
    std::size_t operator()(const CfState& s) const {
        std::size_t seed = boost::hash<Integer>{}(s.P);
        boost::hash_combine(seed, boost::hash<Integer>{}(s.Q));
        return seed;
    }
};

// floor((P + sqrt(D))/Q) from s = floor(sqrt(D)); exact for non-square D
// because P + sqrt(D) lies strictly between P+s and P+s+1.
Integer state_floor(const Integer& P, const Integer& Q, const Integer& s) {
    if (Q > 0) return floor_div(P + s, Q);
    return floor_div(-P - s - 1, -Q);
}

// One PQa step in place; the divisibility Q | D - P^2 is the loop invariant.
Integer pqa_step(Integer& P, Integer& Q, const Integer& D, const Integer& s) {
    Integer a = state_floor(P, Q, s);
    Integer Pn = a * Q - P;
    Integer num = D - Pn * Pn;
    Integer Qn = num / Q;
    if (Qn * Q != num)
        throw AssertionFailureError("PQa divisibility invariant broken");
    P = Pn;
    Q = Qn;
    return a;
}

// Convergent matrix of the word w: product of [[b,1],[1,0]] over b in w.
struct Mat {
    Integer A{1}, B{0}, C{0}, D{1};
};

Mat word_matrix(const std::vector<Integer>& w) {
    Mat m;
    for (const Integer& b : w) {
        Mat n;
        n.A = m.A * b + m.B;
        n.B = m.A;
        n.C = m.C * b + m.D;
        n.D = m.C;
        m = n;
    }
    return m;
}

// Positive fixed point of y = (A y + B)/(C y + D) for a nonempty word of
// positive quotients (so C >= 1): the purely periodic value of the word.
QuadraticSurd word_fixed_point(const std::vector<Integer>& w) {
    Mat m = word_matrix(w);
    Integer disc = (m.D - m.A) * (m.D - m.A) + 4 * m.B * m.C;
    return QuadraticSurd::canonicalize(m.A - m.D, disc, 2 * m.C);
}

}  // namespace

const Integer& PeriodicCF::quotient(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    return period[(i - preperiod.size()) % period.size()];
}

std::vector<Integer> PeriodicCF::stream(std::size_t count) const {
    std::vector<Integer> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(quotient(i));
    return out;
}

QuadraticSurd PeriodicCF::complete_quotient(std::size_t i) const {
    std::size_t idx = i < states.size() ? i : m() + (i - m()) % l();
    return QuadraticSurd::canonicalize(states[idx].P, D, states[idx].Q);
}

Integer PeriodicCF::max_quotient() const {
    Integer best = preperiod.front();
    for (const Integer& a : preperiod) best = std::max(best, a);
    for (const Integer& a : period) best = std::max(best, a);
    return best;
}

std::string PeriodicCF::to_string() const {
    std::ostringstream os;
    os << "[" << preperiod[0].str();
    if (preperiod.size() > 1 || !purely_periodic) os << ";";
    for (std::size_t i = 1; i < preperiod.size(); ++i)
        os << (i == 1 ? " " : ", ") << preperiod[i].str();
    os << (purely_periodic && preperiod.size() == 1 ? "; " : " ") << "{";
    for (std::size_t i = 0; i < period.size(); ++i)
        os << (i ? ", " : "") << period[i].str();
    os << "}]";
    return os.str();
}

PeriodicCF expand(const QuadraticSurd& x) {
    PeriodicCF cf;
    cf.D = x.D();
    Integer s = isqrt(x.D());
    Integer P = x.P();
    Integer Q = x.Q();
    std::vector<Integer> quotients;
    std::vector<CfState> orbit;
    std::unordered_map<CfState, std::size_t, StateHash> seen;
    for (;;) {
        CfState st{P, Q};
        auto [it, fresh] = seen.emplace(st, orbit.size());
        if (!fresh) {
            std::size_t j = it->second;
            if (j > 0) {
                cf.preperiod.assign(quotients.begin(), quotients.begin() + j);
                cf.period.assign(quotients.begin() + j, quotients.end());
                cf.states.assign(orbit.begin(), orbit.end());
            } else {
                // Purely periodic: keep the stream identical but move a_0 into
                // the preperiod slot and rotate the cycle left once.
                cf.purely_periodic = true;
                cf.preperiod.assign(quotients.begin(), quotients.begin() + 1);
                cf.period.assign(quotients.begin() + 1, quotients.end());
                cf.period.push_back(quotients[0]);
                cf.states = orbit;
                cf.states.push_back(orbit[0]);
            }
            return cf;
        }
        orbit.push_back(st);
        quotients.push_back(pqa_step(P, Q, cf.D, s));
        if (orbit.size() > 50000000)
            throw PrecisionError("expansion state budget exhausted");
    }
}

QuadraticSurd reduce_to_purely_periodic(const QuadraticSurd& x) {
    PeriodicCF cf = expand(x);
    return cf.purely_periodic ? cf.complete_quotient(0)
                              : cf.complete_quotient(cf.m());
}

ConvergentTable convergents(const PeriodicCF& cf, std::size_t upto) {
    ConvergentTable t;
    t.p.reserve(upto + 1);
    t.r.reserve(upto + 1);
    t.p.push_back(cf.quotient(0));
    t.r.push_back(1);
    if (upto >= 1) {
        t.p.push_back(cf.quotient(1) * cf.quotient(0) + 1);
        t.r.push_back(cf.quotient(1));
    }
    for (std::size_t k = 2; k <= upto; ++k) {
        const Integer& a = cf.quotient(k);
        t.p.push_back(a * t.p[k - 1] + t.p[k - 2]);
        t.r.push_back(a * t.r[k - 1] + t.r[k - 2]);
    }
    return t;
}

ApproxError exact_error(const QuadraticSurd& x, const PeriodicCF& cf,
                        const ConvergentTable& table, std::size_t k,
                        const Rational& tol) {
    (void)cf;
    if (k >= table.size())
        throw AssertionFailureError("convergent index beyond table");
    QuadExt diff = x.value() * Rational(table.r[k]) - Rational(table.p[k]);
    if (diff.sign() < 0) diff = -diff;
    ApproxError out{diff, diff.enclosure(tol), false};
    out.is_nearest_distance = diff.compare(Rational(1, 2)) < 0;
    return out;
}

ApproxError exact_error(const QuadraticSurd& x, std::size_t k, const Rational& tol) {
    PeriodicCF cf = expand(x);
    return exact_error(x, cf, convergents(cf, k), k, tol);
}

std::vector<QuadraticSurd> shifts(const PeriodicCF& cf) {
    std::size_t l = cf.l();
    std::vector<QuadraticSurd> out;
    out.reserve(l);
    // Rotation r of the stored period starts at quotient(m + r), so entry i of
    // the result is always 1 / complete_quotient(m + i), for both shapes of
    // the normal form.
    std::vector<Integer> word(cf.period.begin(), cf.period.end());
    for (std::size_t r = 0; r < l; ++r) {
        out.push_back(word_fixed_point(word).reciprocal());
        std::rotate(word.begin(), word.begin() + 1, word.end());
    }
    return out;
}

QuadExt evaluate(const PeriodicCF& cf) {
    QuadExt v = word_fixed_point(cf.period).value();
    for (std::size_t i = cf.m(); i-- > 0;) {
        QuadExt recip = QuadExt::rational(Rational(1)) / v;
        v = recip + Rational(cf.preperiod[i]);
    }
    return v;
}

QuadraticSurd periodic_word_value(const std::vector<Integer>& word) {
    if (word.empty()) throw Error("periodic word must be nonempty");
    for (const Integer& a : word)
        if (a < 1) throw NonPositiveInputError("periodic word quotients must be positive");
    return word_fixed_point(word);
}

void verify_cycle_minimality(const QuadraticSurd& x, const PeriodicCF& cf) {
    auto fail = [](const std::string& what) { throw AssertionFailureError(what); };
    if (cf.preperiod.empty()) fail("normal form requires a nonempty preperiod");
    if (cf.period.empty()) fail("period must be nonempty");
    std::size_t m_eff = cf.purely_periodic ? 0 : cf.m();
    std::size_t l = cf.l();
    if (cf.purely_periodic && cf.m() != 1)
        fail("purely periodic normal form must have m == 1");

    Integer s = isqrt(x.D());
    Integer P = x.P();
    Integer Q = x.Q();
    std::vector<CfState> orbit;
    for (std::size_t i = 0; i < m_eff + l + 1; ++i) {
        orbit.push_back({P, Q});
        Integer a = pqa_step(P, Q, x.D(), s);
        if (i < m_eff + l && a != cf.quotient(i)) fail("quotient mismatch in orbit");
    }
    if (!(orbit[m_eff + l] == orbit[m_eff])) fail("claimed period does not recur");
    for (std::size_t d = 1; d < l; ++d) {
        if (l % d != 0) continue;
        bool same = true;
        for (std::size_t i = 0; i < l && same; ++i)
            same = cf.quotient(cf.m() + i) == cf.quotient(cf.m() + (i + d) % l);
        if (same) fail("period is not minimal");
    }
    if (m_eff >= 1) {
        for (std::size_t i = 0; i < l; ++i)
            if (orbit[m_eff - 1] == orbit[m_eff + i]) fail("preperiod is not minimal");
    }
    if (cf.purely_periodic) {
        if (cf.period.back() != cf.preperiod[0])
            fail("rotated period must end at the leading quotient");
    } else if (!cf.states.empty()) {
        for (std::size_t i = 0; i < l; ++i)
            if (orbit[0] == orbit[m_eff + i] && m_eff > 0)
                fail("flagged aperiodic head but the first state recurs");
    }
}

}  // namespace surdlab
