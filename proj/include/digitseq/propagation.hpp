#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "digitseq/sequences.hpp"

namespace digitseq {

/// Reduced fraction with positive denominator.
struct Rational {
    long long num = 0;
    long long den = 1;
};

Rational make_rational(long long num, long long den);

/// Phase multiplier alpha, kept as an exact rational when one is available so
/// the carry tests below run on integers instead of floating point.
struct PhaseAlpha {
    std::optional<Rational> rational;
    double value = 0.0;

    static PhaseAlpha from_rational(long long num, long long den);
    static PhaseAlpha from_real(double a);
};

/// Parse "p/r" into an exact rational, anything else as a real.
PhaseAlpha parse_alpha(const std::string& text);

struct PropagationQuery {
    SequenceDef seq;
    PhaseAlpha alpha;
    int lambda = 1;
    int kappa = 1;
    int rho = 0;
    std::uint64_t budget = std::uint64_t(1) << 30;
};

/// Number of l < q^lambda admitting (k1,k2) < q^kappa whose truncated-vs-full
/// phase difference ratios disagree. Exact enumeration with early exit per l.
std::uint64_t exceptional_count(const PropagationQuery& query);

/// The exceptional l values themselves, ascending.
std::vector<std::uint64_t> exceptional_list(const PropagationQuery& query);

struct PropagationReport {
    std::uint64_t exceptional = 0;
    std::uint64_t cardA = 0;
    std::uint64_t cardB = 0; // (rho-beta+2) copies of the relaxed B_0 count
    std::uint64_t cardC = 0;
    double bound = 0.0;          // q^beta * q^(lambda-rho+ln rho)
    double fitted_constant = 0.0; // exceptional / q^(lambda-rho+ln rho)
};

/// Closed-form values the enumeration must reproduce exactly.
std::uint64_t cardA_closed(int q, int beta, int lambda, int rho);
std::uint64_t cardB_closed(int q, int beta, int lambda, int rho);

/// Enumerates the covering sets by their digit conditions and checks the
/// closed forms; requires beta-1 <= rho < lambda. exceptional/fitted_constant
/// are left unfilled.
PropagationReport structured_sets(const PropagationQuery& query);

/// Full report: structured sets plus the exceptional count and fitted constant.
PropagationReport propagation_report(const PropagationQuery& query);

/// Membership of l in A, in some B_i (all digit conditions), or in C.
bool in_cover(const PropagationQuery& query, std::uint64_t l);

namespace ref {
std::uint64_t exceptional_count(const PropagationQuery& query);
}

} // namespace digitseq
