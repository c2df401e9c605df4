#include "digitseq/numtheory.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "digitseq/errors.hpp"
#include "digitseq/phase.hpp"

namespace digitseq {

namespace {

constexpr std::uint64_t kChunk = 1 << 16;

struct KahanComplex {
    double re = 0.0, im = 0.0;
    double cre = 0.0, cim = 0.0;
    void add(std::complex<double> z) {
        double y = z.real() - cre;
        double t = re + y;
        cre = (t - re) - y;
        re = t;
        y = z.imag() - cim;
        t = im + y;
        cim = (t - im) - y;
        im = t;
    }
    std::complex<double> value() const { return {re, im}; }
};

long long norm_mod(long long v, long long m) {
    v %= m;
    return v < 0 ? v + m : v;
}

void check_residue_args(const SieveTables& sieve, std::uint64_t x, long long a, long long m,
                        int mprime) {
    if (m < 1) throw usage_error("modulus m must be at least 1");
    if (mprime < 1) throw usage_error("modulus mprime must be at least 1");
    if (std::gcd(norm_mod(a, m), m) != 1) throw usage_error("a must be coprime to m");
    if (x > sieve.limit()) throw usage_error("x exceeds the sieve limit");
}

} // namespace

SieveTables::SieveTables(std::uint64_t limit) {
    if (limit < 2) throw usage_error("sieve limit must be at least 2");
    if (limit > max_limit) throw budget_error("sieve limit exceeds the memory budget");
    spf_.assign(limit + 1, 0);
    std::vector<std::uint32_t> primes;
    primes.reserve(static_cast<std::size_t>(1.3 * static_cast<double>(limit) /
                                            std::log(static_cast<double>(limit) + 2.0)) +
                   16);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        for (const std::uint32_t p : primes) {
            if (p > spf_[i] || i * p > limit) break;
            spf_[i * p] = p;
        }
    }
}

std::uint32_t SieveTables::spf(std::uint64_t n) const {
    if (n < 2 || n > limit()) throw usage_error("argument outside the sieve range");
    return spf_[n];
}

bool SieveTables::is_prime(std::uint64_t n) const {
    if (n < 2) return false;
    return spf(n) == n;
}

int SieveTables::mobius(std::uint64_t n) const {
    if (n == 0) throw usage_error("mobius is undefined at 0");
    if (n == 1) return 1;
    int sign = 1;
    while (n > 1) {
        const std::uint32_t p = spf(n);
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    return sign;
}

std::optional<std::pair<std::uint32_t, int>> SieveTables::prime_power(std::uint64_t n) const {
    if (n < 2) return std::nullopt;
    const std::uint32_t p = spf(n);
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    if (n != 1) return std::nullopt;
    return std::make_pair(p, e);
}

double SieveTables::mangoldt(std::uint64_t n) const {
    const auto pp = prime_power(n);
    return pp ? std::log(static_cast<double>(pp->first)) : 0.0;
}

std::uint64_t SieveTables::count_primes(std::uint64_t x, long long a, long long m) const {
    check_residue_args(*this, x, a, m, 1);
    const auto am = static_cast<std::uint64_t>(norm_mod(a, m));
    const auto um = static_cast<std::uint64_t>(m);
    std::uint64_t count = 0;
    for (std::uint64_t n = 2; n <= x; ++n)
        if (spf_[n] == n && n % um == am) ++count;
    return count;
}

std::complex<double> mobius_correlation(const SieveTables& sieve, const SequenceDef& seq,
                                        std::uint64_t N, int mprime, int jprime) {
    seq.validate();
    if (N < 1) throw usage_error("N must be at least 1");
    if (N > sieve.limit()) throw usage_error("N exceeds the sieve limit");
    if (mprime < 1) throw usage_error("modulus mprime must be at least 1");
    std::vector<long long> classes(static_cast<std::size_t>(mprime), 0);
#pragma omp parallel
    {
        std::vector<long long> local(static_cast<std::size_t>(mprime), 0);
#pragma omp for schedule(static) nowait
        for (long long n = 1; n <= static_cast<long long>(N); ++n) {
            const int mu = sieve.mobius(static_cast<std::uint64_t>(n));
            if (mu == 0) continue;
            const long long r =
                norm_mod(norm_mod(eval(seq, static_cast<std::uint64_t>(n)), mprime) * jprime, mprime);
            local[static_cast<std::size_t>(r)] += mu;
        }
#pragma omp critical
        for (std::size_t i = 0; i < classes.size(); ++i) classes[i] += local[i];
    }
    std::complex<double> sum{0.0, 0.0};
    for (int r = 0; r < mprime; ++r)
        sum += static_cast<double>(classes[static_cast<std::size_t>(r)]) *
               unit_phase(static_cast<double>(r) / mprime);
    return sum / static_cast<double>(N);
}

std::complex<double> lambda_weighted_sum(const SieveTables& sieve, const SequenceDef& seq,
                                         double alpha, double theta, std::uint64_t x) {
    seq.validate();
    if (x > sieve.limit()) throw usage_error("x exceeds the sieve limit");
    if (x < 2) return {0.0, 0.0};
    // Fixed-size chunks summed independently and combined in index order keep
    // the result identical for any thread count.
    const std::uint64_t chunks = (x - 1 + kChunk - 1) / kChunk;
    std::vector<std::complex<double>> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
        const std::uint64_t lo = 2 + static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t hi = std::min(x, lo + kChunk - 1);
        KahanComplex acc;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            const auto pp = sieve.prime_power(n);
            if (!pp) continue;
            const double lg = std::log(static_cast<double>(pp->first));
            const long double phase =
                static_cast<long double>(alpha) * static_cast<long double>(eval(seq, n)) +
                static_cast<long double>(theta) * static_cast<long double>(n);
            acc.add(lg * unit_phase_l(phase));
        }
        partial[static_cast<std::size_t>(c)] = acc.value();
    }
    KahanComplex total;
    for (const auto& z : partial) total.add(z);
    return total.value();
}

StatReport residue_counts(const SieveTables& sieve, const SequenceDef& seq, std::uint64_t x,
                          long long a, long long m, int mprime) {
    seq.validate();
    check_residue_args(sieve, x, a, m, mprime);
    const auto am = static_cast<std::uint64_t>(norm_mod(a, m));
    const auto um = static_cast<std::uint64_t>(m);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(mprime), 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(static_cast<std::size_t>(mprime), 0);
#pragma omp for schedule(static) nowait
        for (long long n = 2; n <= static_cast<long long>(x); ++n) {
            const auto un = static_cast<std::uint64_t>(n);
            if (!sieve.is_prime(un) || un % um != am) continue;
            ++local[static_cast<std::size_t>(norm_mod(eval(seq, un), mprime))];
        }
#pragma omp critical
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
    }
    std::uint64_t pi = 0;
    for (const auto c : counts) pi += c;
    StatReport report;
    report.columns = {"x", "a", "m", "aprime", "count", "expected", "deviation"};
    for (int ap = 0; ap < mprime; ++ap) {
        const auto count = static_cast<double>(counts[static_cast<std::size_t>(ap)]);
        const double expected = pi ? static_cast<double>(pi) / mprime : 0.0;
        const double deviation = pi ? count / static_cast<double>(pi) - 1.0 / mprime : 0.0;
        report.rows.push_back({static_cast<double>(x), static_cast<double>(a),
                               static_cast<double>(m), static_cast<double>(ap), count, expected,
                               deviation});
    }
    return report;
}

StatReport weyl_sums(const SieveTables& sieve, const SequenceDef& seq, double alpha,
                     std::uint64_t x, long long a, long long m, int H) {
    seq.validate();
    check_residue_args(sieve, x, a, m, 1);
    if (H < 1) throw usage_error("H must be at least 1");
    const auto am = static_cast<std::uint64_t>(norm_mod(a, m));
    const auto um = static_cast<std::uint64_t>(m);
    const std::uint64_t chunks = x < 2 ? 0 : (x - 1 + kChunk - 1) / kChunk;
    std::vector<std::vector<std::complex<double>>> partial(
        static_cast<std::size_t>(chunks),
        std::vector<std::complex<double>>(static_cast<std::size_t>(H)));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(chunks), 0);
#pragma omp parallel for schedule(dynamic)
    for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
        const std::uint64_t lo = 2 + static_cast<std::uint64_t>(c) * kChunk;
        const std::uint64_t hi = std::min(x, lo + kChunk - 1);
        std::vector<KahanComplex> acc(static_cast<std::size_t>(H));
        std::uint64_t seen = 0;
        for (std::uint64_t n = lo; n <= hi; ++n) {
            if (!sieve.is_prime(n) || n % um != am) continue;
            ++seen;
            const auto an = static_cast<double>(eval(seq, n));
            for (int h = 1; h <= H; ++h)
                acc[static_cast<std::size_t>(h - 1)].add(unit_phase(h * alpha * an));
        }
        counts[static_cast<std::size_t>(c)] = seen;
        for (int h = 0; h < H; ++h)
            partial[static_cast<std::size_t>(c)][static_cast<std::size_t>(h)] =
                acc[static_cast<std::size_t>(h)].value();
    }
    std::uint64_t pi = 0;
    for (const auto c : counts) pi += c;
    StatReport report;
    report.columns = {"h", "re", "im", "modulus"};
    for (int h = 0; h < H; ++h) {
        KahanComplex total;
        for (std::size_t c = 0; c < partial.size(); ++c)
            total.add(partial[c][static_cast<std::size_t>(h)]);
        const std::complex<double> z =
            pi ? total.value() / static_cast<double>(pi) : std::complex<double>{0.0, 0.0};
        report.rows.push_back({static_cast<double>(h + 1), z.real(), z.imag(), std::abs(z)});
    }
    return report;
}

ErrorTermConstants error_term_constants(int q) {
    if (q < 2) throw usage_error("base must be at least 2");
    int tau = 0, omega = 0;
    for (int d = 1; d <= q; ++d)
        if (q % d == 0) ++tau;
    int m = q;
    for (int p = 2; p <= m; ++p) {
        if (m % p) continue;
        ++omega;
        while (m % p == 0) m /= p;
    }
    const double lq = std::log(static_cast<double>(q));
    ErrorTermConstants c;
    c.c2 = 4.0 + lq / 4.0 + std::max(omega, 2) / 4.0;
    c.c1 = std::pow(std::max(tau * lq, std::pow(lq, 10.0)), 0.25) *
           std::pow(lq, 2.0 - 2.0 * c.c2);
    return c;
}

namespace ref {

std::complex<double> mobius_correlation(const SieveTables& sieve, const SequenceDef& seq,
                                        std::uint64_t N, int mprime, int jprime) {
    seq.validate();
    if (N < 1) throw usage_error("N must be at least 1");
    if (N > sieve.limit()) throw usage_error("N exceeds the sieve limit");
    if (mprime < 1) throw usage_error("modulus mprime must be at least 1");
    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t n = 1; n <= N; ++n) {
        const int mu = sieve.mobius(n);
        if (mu == 0) continue;
        const long long r = norm_mod(norm_mod(eval(seq, n), mprime) * jprime, mprime);
        sum += static_cast<double>(mu) * unit_phase(static_cast<double>(r) / mprime);
    }
    return sum / static_cast<double>(N);
}

std::complex<double> lambda_weighted_sum(const SieveTables& sieve, const SequenceDef& seq,
                                         double alpha, double theta, std::uint64_t x) {
    seq.validate();
    if (x > sieve.limit()) throw usage_error("x exceeds the sieve limit");
    std::complex<double> sum{0.0, 0.0};
    for (std::uint64_t n = 2; n <= x; ++n) {
        const auto pp = sieve.prime_power(n);
        if (!pp) continue;
        const long double phase =
            static_cast<long double>(alpha) * static_cast<long double>(eval(seq, n)) +
            static_cast<long double>(theta) * static_cast<long double>(n);
        sum += std::log(static_cast<double>(pp->first)) * unit_phase_l(phase);
    }
    return sum;
}

StatReport residue_counts(const SieveTables& sieve, const SequenceDef& seq, std::uint64_t x,
                          long long a, long long m, int mprime) {
    seq.validate();
    check_residue_args(sieve, x, a, m, mprime);
    const auto am = static_cast<std::uint64_t>(norm_mod(a, m));
    const auto um = static_cast<std::uint64_t>(m);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(mprime), 0);
    for (std::uint64_t n = 2; n <= x; ++n)
        if (sieve.is_prime(n) && n % um == am)
            ++counts[static_cast<std::size_t>(norm_mod(eval(seq, n), mprime))];
    std::uint64_t pi = 0;
    for (const auto c : counts) pi += c;
    StatReport report;
    report.columns = {"x", "a", "m", "aprime", "count", "expected", "deviation"};
    for (int ap = 0; ap < mprime; ++ap) {
        const auto count = static_cast<double>(counts[static_cast<std::size_t>(ap)]);
        const double expected = pi ? static_cast<double>(pi) / mprime : 0.0;
        const double deviation = pi ? count / static_cast<double>(pi) - 1.0 / mprime : 0.0;
        report.rows.push_back({static_cast<double>(x), static_cast<double>(a),
                               static_cast<double>(m), static_cast<double>(ap), count, expected,
                               deviation});
    }
    return report;
}

StatReport weyl_sums(const SieveTables& sieve, const SequenceDef& seq, double alpha,
                     std::uint64_t x, long long a, long long m, int H) {
    seq.validate();
    check_residue_args(sieve, x, a, m, 1);
    if (H < 1) throw usage_error("H must be at least 1");
    const auto am = static_cast<std::uint64_t>(norm_mod(a, m));
    const auto um = static_cast<std::uint64_t>(m);
    std::vector<std::complex<double>> sums(static_cast<std::size_t>(H));
    std::uint64_t pi = 0;
    for (std::uint64_t n = 2; n <= x; ++n) {
        if (!sieve.is_prime(n) || n % um != am) continue;
        ++pi;
        const auto an = static_cast<double>(eval(seq, n));
        for (int h = 1; h <= H; ++h)
            sums[static_cast<std::size_t>(h - 1)] += unit_phase(h * alpha * an);
    }
    StatReport report;
    report.columns = {"h", "re", "im", "modulus"};
    for (int h = 0; h < H; ++h) {
        const std::complex<double> z = pi ? sums[static_cast<std::size_t>(h)] /
                                                static_cast<double>(pi)
                                          : std::complex<double>{0.0, 0.0};
        report.rows.push_back({static_cast<double>(h + 1), z.real(), z.imag(), std::abs(z)});
    }
    return report;
}

} // namespace ref

} // namespace digitseq
