#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <utility>

#include <vector>

#include "digitseq/report.hpp"
#include "digitseq/sequences.hpp"

namespace digitseq {

/// Smallest-prime-factor table to a fixed limit; Mobius and von Mangoldt
/// values and prime iteration are derived per query.
class SieveTables {
public:
    static constexpr std::uint64_t default_limit = 10'000'000;
    static constexpr std::uint64_t max_limit = 200'000'000;

    explicit SieveTables(std::uint64_t limit);

    std::uint64_t limit() const { return spf_.size() - 1; }

    std::uint32_t spf(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;
    int mobius(std::uint64_t n) const;

    /// (p, e) with n = p^e, when n is a prime power.
    std::optional<std::pair<std::uint32_t, int>> prime_power(std::uint64_t n) const;

    /// log p on prime powers p^e, 0 elsewhere.
    double mangoldt(std::uint64_t n) const;

    /// pi(x; a, m) = #{p <= x : p = a mod m}. Requires gcd(a, m) = 1.
    std::uint64_t count_primes(std::uint64_t x, long long a, long long m) const;

private:
    std::vector<std::uint32_t> spf_;
};

/// (1/N) sum_{n <= N} mu(n) e(jprime * a(n) / mprime). Phases accumulate as
/// exact residue-class integers; only the final conversion is floating point.
std::complex<double> mobius_correlation(const SieveTables& sieve, const SequenceDef& seq,
                                        std::uint64_t N, int mprime = 2, int jprime = 1);

/// sum_{n <= x} Lambda(n) e(alpha a(n) + theta n) over prime powers.
std::complex<double> lambda_weighted_sum(const SieveTables& sieve, const SequenceDef& seq,
                                         double alpha, double theta, std::uint64_t x);

/// Rows (x, a, m, aprime, count, expected, deviation) for aprime in [0, mprime):
/// count of primes p <= x, p = a mod m, with a(p) = aprime mod mprime;
/// expected = pi(x;a,m)/mprime and deviation = count/pi - 1/mprime.
StatReport residue_counts(const SieveTables& sieve, const SequenceDef& seq, std::uint64_t x,
                          long long a, long long m, int mprime);

/// Rows (h, re, im, modulus) of the normalized Weyl sums
/// (1/pi(x;a,m)) sum_{p <= x, p = a mod m} e(h alpha a(p)) for h = 1..H.
StatReport weyl_sums(const SieveTables& sieve, const SequenceDef& seq, double alpha,
                     std::uint64_t x, long long a, long long m, int H);

/// Constants of the von-Mangoldt-sum error term, with natural logarithms:
///   c2 = 4 + log(q)/4 + max(omega(q), 2)/4,
///   c1 = max(tau(q) log q, log^10 q)^(1/4) * (log q)^(2 - 2 c2),
/// where tau counts divisors and omega distinct prime factors. Descriptive
/// only: the bound they enter is vacuous at any range a desk can scan, so
/// nothing here checks them against data.
struct ErrorTermConstants {
    double c1 = 0.0;
    double c2 = 0.0;
};

ErrorTermConstants error_term_constants(int q);

namespace ref {
std::complex<double> mobius_correlation(const SieveTables& sieve, const SequenceDef& seq,
                                        std::uint64_t N, int mprime = 2, int jprime = 1);
std::complex<double> lambda_weighted_sum(const SieveTables& sieve, const SequenceDef& seq,
                                         double alpha, double theta, std::uint64_t x);
StatReport residue_counts(const SieveTables& sieve, const SequenceDef& seq, std::uint64_t x,
                          long long a, long long m, int mprime);
StatReport weyl_sums(const SieveTables& sieve, const SequenceDef& seq, double alpha,
                     std::uint64_t x, long long a, long long m, int H);
} // namespace ref

} // namespace digitseq
