// Timing comparison between the OpenMP kernels and their serial references.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "digitseq/genealogy.hpp"
#include "digitseq/numtheory.hpp"
#include "digitseq/propagation.hpp"
#include "digitseq/sequences.hpp"

using namespace digitseq;

namespace {

double time_of(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-28s %10.3fs %10.3fs %8.2fx\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif
    std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

    const SequenceDef rs = make_rudin_shapiro(2);
    const AssociatedFunction fn{rs, 0.5};
    const GenealogyContext ctx(fn);

    {
        volatile double sink = 0;
        const double ts = time_of([&] { sink = ref::empirical_sup(fn, 10, 0, 2048); });
        const double tp = time_of([&] { sink = empirical_sup(fn, 10, 0, 2048); });
        row("fourier grid sup (N=10)", ts, tp);
    }
    {
        const GenealogyContext big(AssociatedFunction{make_beta_delta(3, 2), 0.5});
        const double ts = time_of([&] { ref::norm_sweep(big, 4096); });
        const double tp = time_of([&] { norm_sweep(big, 4096); });
        row("norm sweep (q=3, 4096 pts)", ts, tp);
    }
    {
        PropagationQuery query;
        query.seq = rs;
        query.alpha = PhaseAlpha::from_rational(1, 2);
        query.lambda = 10;
        query.kappa = 3;
        query.rho = 4;
        volatile std::uint64_t sink = 0;
        const double ts = time_of([&] { sink = ref::exceptional_count(query); });
        const double tp = time_of([&] { sink = exceptional_count(query); });
        row("exceptional count (2^16)", ts, tp);
    }

    const SieveTables sieve(4000000);
    {
        volatile double sink = 0;
        const double ts =
            time_of([&] { sink = std::abs(ref::mobius_correlation(sieve, rs, 4000000)); });
        const double tp = time_of([&] { sink = std::abs(mobius_correlation(sieve, rs, 4000000)); });
        row("mobius correlation (4e6)", ts, tp);
    }
    {
        volatile double sink = 0;
        const double ts = time_of(
            [&] { sink = std::abs(ref::lambda_weighted_sum(sieve, rs, 0.5, 0.3, 4000000)); });
        const double tp =
            time_of([&] { sink = std::abs(lambda_weighted_sum(sieve, rs, 0.5, 0.3, 4000000)); });
        row("von Mangoldt sum (4e6)", ts, tp);
    }
    {
        const double ts = time_of([&] { ref::weyl_sums(sieve, rs, 0.618, 4000000, 0, 1, 4); });
        const double tp = time_of([&] { weyl_sums(sieve, rs, 0.618, 4000000, 0, 1, 4); });
        row("weyl sums (4e6, H=4)", ts, tp);
    }
    return 0;
}
