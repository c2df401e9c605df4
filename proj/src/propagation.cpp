#include "digitseq/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "digitseq/errors.hpp"
#include "digitseq/phase.hpp"

namespace digitseq {

Rational make_rational(long long num, long long den) {
    if (den == 0) throw usage_error("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

PhaseAlpha PhaseAlpha::from_rational(long long num, long long den) {
    PhaseAlpha a;
    a.rational = make_rational(num, den);
    a.value = static_cast<double>(a.rational->num) / static_cast<double>(a.rational->den);
    return a;
}

PhaseAlpha PhaseAlpha::from_real(double v) {
    PhaseAlpha a;
    a.value = v;
    return a;
}

PhaseAlpha parse_alpha(const std::string& text) {
    const std::size_t slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const long long num = std::stoll(text.substr(0, slash));
            const long long den = std::stoll(text.substr(slash + 1));
            return PhaseAlpha::from_rational(num, den);
        }
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw usage_error("trailing characters in alpha '" + text + "'");
        return PhaseAlpha::from_real(v);
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error("cannot parse alpha '" + text + "'");
    }
}

namespace {

struct PropScan {
    const SequenceDef& seq;
    const PhaseAlpha& alpha;
    std::uint64_t qk;   // q^kappa
    std::uint64_t qkr;  // q^(kappa+rho)

    // alpha * delta not an integer, with delta the four-term a difference.
    bool phase_differs(long long delta) const {
        if (delta == 0) return false;
        if (alpha.rational) {
            const long long den = alpha.rational->den;
            const __int128 prod =
                static_cast<__int128>(alpha.rational->num % den) * (delta % den);
            return prod % den != 0;
        }
        return dist_to_int(alpha.value * static_cast<double>(delta)) > 1e-9;
    }

    bool exceptional(std::uint64_t l) const {
        const std::uint64_t base = l * qk;
        if (base + 2 * (qk - 1) < qkr) return false; // truncation never active
        for (std::uint64_t k1 = 0; k1 < qk; ++k1) {
            const std::uint64_t n1 = base + k1;
            const long long a1 = eval(seq, n1);
            const long long a1t = eval(seq, n1 % qkr);
            for (std::uint64_t k2 = 0; k2 < qk; ++k2) {
                const std::uint64_t n2 = n1 + k2;
                const long long delta =
                    (eval(seq, n2) - a1) - (eval(seq, n2 % qkr) - a1t);
                if (phase_differs(delta)) return true;
            }
        }
        return false;
    }
};

PropScan make_scan(const PropagationQuery& query) {
    query.seq.validate();
    if (query.kappa < 1) throw usage_error("kappa must be at least 1");
    if (query.lambda < 0 || query.rho < 0) throw usage_error("lambda and rho must be nonnegative");
    const auto q = static_cast<std::uint64_t>(query.seq.q);
    const std::uint64_t work = upow(q, query.lambda + 2 * query.kappa);
    if (work > query.budget)
        throw budget_error("q^(lambda+2*kappa) exceeds the enumeration budget");
    return PropScan{query.seq, query.alpha, upow(q, query.kappa),
                    upow(q, query.kappa + query.rho)};
}

int digit(std::uint64_t n, int i, std::uint64_t q) {
    for (int j = 0; j < i; ++j) n /= q;
    return static_cast<int>(n % q);
}

} // namespace

std::uint64_t exceptional_count(const PropagationQuery& query) {
    const PropScan scan = make_scan(query);
    const auto total =
        static_cast<long long>(upow(static_cast<std::uint64_t>(query.seq.q), query.lambda));
    std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : count)
    for (long long l = 0; l < total; ++l)
        if (scan.exceptional(static_cast<std::uint64_t>(l))) ++count;
    return count;
}

std::vector<std::uint64_t> exceptional_list(const PropagationQuery& query) {
    const PropScan scan = make_scan(query);
    const std::uint64_t total = upow(static_cast<std::uint64_t>(query.seq.q), query.lambda);
    std::vector<std::uint64_t> out;
    for (std::uint64_t l = 0; l < total; ++l)
        if (scan.exceptional(l)) out.push_back(l);
    return out;
}

std::uint64_t cardA_closed(int q, int beta, int lambda, int rho) {
    return upow(static_cast<std::uint64_t>(q), beta - 2) *
           (upow(static_cast<std::uint64_t>(q), lambda - rho) - 1);
}

std::uint64_t cardB_closed(int q, int beta, int lambda, int rho) {
    return static_cast<std::uint64_t>(rho - beta + 2) * upow(static_cast<std::uint64_t>(q), beta - 1) *
           (upow(static_cast<std::uint64_t>(q), lambda - rho) - 1);
}

namespace {

struct SetConditions {
    std::uint64_t q;
    int beta;
    int lambda;
    int rho;
    std::uint64_t qrho;

    bool in_A(std::uint64_t l) const {
        if (l < qrho) return false;
        for (int i = 0; i < rho - beta + 2; ++i)
            if (digit(l, i, q) != static_cast<int>(q) - 1) return false;
        return true;
    }

    bool in_B_i(std::uint64_t l, int i) const {
        if (l < qrho) return false;
        if (digit(l, i, q) == static_cast<int>(q) - 1) return false;
        for (int m = 0; m < i; ++m)
            if (digit(l, m, q) != static_cast<int>(q) - 1) return false;
        for (int j = i + beta - 1; j < rho; ++j)
            if (digit(l, j, q) != 0) return false;
        return true;
    }

    bool in_B(std::uint64_t l) const {
        for (int i = 0; i < rho - beta + 2; ++i)
            if (in_B_i(l, i)) return true;
        return false;
    }

    // Relaxed set used for the cardinality accounting: only the zero window.
    bool in_B0_relaxed(std::uint64_t l) const {
        if (l < qrho) return false;
        for (int j = beta - 1; j < rho; ++j)
            if (digit(l, j, q) != 0) return false;
        return true;
    }

    bool in_C(std::uint64_t l) const { return l == qrho - 1 || l == qrho; }
};

SetConditions make_conditions(const PropagationQuery& query) {
    if (query.rho < query.seq.beta - 1)
        throw usage_error("rho must be at least beta-1 for the structured sets");
    if (query.rho >= query.lambda) throw usage_error("rho must be smaller than lambda");
    const auto q = static_cast<std::uint64_t>(query.seq.q);
    if (upow(q, query.lambda) > query.budget)
        throw budget_error("q^lambda exceeds the enumeration budget");
    return SetConditions{q, query.seq.beta, query.lambda, query.rho, upow(q, query.rho)};
}

double growth_bound_exponent(const PropagationQuery& query) {
    // Natural-log convention for the q^(log rho) factor.
    return static_cast<double>(query.lambda - query.rho) +
           std::log(static_cast<double>(query.rho));
}

} // namespace

PropagationReport structured_sets(const PropagationQuery& query) {
    query.seq.validate();
    const SetConditions cond = make_conditions(query);
    const std::uint64_t total = upow(cond.q, query.lambda);
    std::uint64_t card_a = 0, card_b0 = 0, card_c = 0;
    for (std::uint64_t l = 0; l < total; ++l) {
        if (cond.in_A(l)) ++card_a;
        if (cond.in_B0_relaxed(l)) ++card_b0;
        if (cond.in_C(l)) ++card_c;
    }
    PropagationReport report;
    report.cardA = card_a;
    report.cardB = static_cast<std::uint64_t>(query.rho - query.seq.beta + 2) * card_b0;
    report.cardC = card_c;
    if (report.cardA != cardA_closed(query.seq.q, query.seq.beta, query.lambda, query.rho))
        throw internal_error("enumerated #A disagrees with the closed form");
    if (report.cardB != cardB_closed(query.seq.q, query.seq.beta, query.lambda, query.rho))
        throw internal_error("enumerated #B disagrees with the closed form");
    if (report.cardC != 2) throw internal_error("enumerated #C is not 2");
    report.bound = std::pow(static_cast<double>(query.seq.q),
                            static_cast<double>(query.seq.beta) + growth_bound_exponent(query));
    return report;
}

PropagationReport propagation_report(const PropagationQuery& query) {
    PropagationReport report = structured_sets(query);
    report.exceptional = exceptional_count(query);
    report.fitted_constant =
        static_cast<double>(report.exceptional) /
        std::pow(static_cast<double>(query.seq.q), growth_bound_exponent(query));
    return report;
}

bool in_cover(const PropagationQuery& query, std::uint64_t l) {
    const SetConditions cond = make_conditions(query);
    return cond.in_A(l) || cond.in_B(l) || cond.in_C(l);
}

namespace ref {

std::uint64_t exceptional_count(const PropagationQuery& query) {
    const PropScan scan = make_scan(query);
    const std::uint64_t total = upow(static_cast<std::uint64_t>(query.seq.q), query.lambda);
    std::uint64_t count = 0;
    for (std::uint64_t l = 0; l < total; ++l)
        if (scan.exceptional(l)) ++count;
    return count;
}

} // namespace ref

} // namespace digitseq
