#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "digitseq/report.hpp"
#include "digitseq/sequences.hpp"
#include "digitseq/words.hpp"

namespace digitseq {

/// Dense complex matrix indexed by the word enumeration of a context.
struct TransferMatrix {
    int dim = 0;
    double alpha = 0.0;
    double t = 0.0;
    std::vector<std::complex<double>> entries; // row-major

    std::complex<double>& at(int r, int c) { return entries[static_cast<std::size_t>(r) * dim + c]; }
    const std::complex<double>& at(int r, int c) const {
        return entries[static_cast<std::size_t>(r) * dim + c];
    }
};

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b);

/// Maximum absolute row sum.
double norm_inf(const TransferMatrix& m);

/// Associated function together with the enumeration of the D = (q^beta-1)/(q-1)
/// states (words of length at most beta-1).
struct GenealogyContext {
    AssociatedFunction fn;
    WordEnum words;

    explicit GenealogyContext(AssociatedFunction f);

    int dim() const { return words.size(); }
    int q() const { return fn.seq.q; }
    int beta() const { return fn.seq.beta; }
};

/// V_n[l] = f(q^|w| n + value(w)) for w the l-th enumerated word.
std::vector<std::complex<double>> vector_V(const GenealogyContext& ctx, std::uint64_t n);

/// One-letter transfer matrix: V_{qn+l} e((qn+l)t) = M_l(alpha,t) V_n e(qnt).
/// Each row carries exactly one entry of modulus 1.
TransferMatrix matrix_Ml(const GenealogyContext& ctx, int l, double t);

/// M(alpha,t) = sum over the q letters of M_l(alpha,t).
TransferMatrix matrix_M(const GenealogyContext& ctx, double t);

/// Ordered product M(alpha,t) M(alpha,qt) ... M(alpha,q^(beta-1)t); the order
/// is forced by the recursion S(N,t) = M(alpha,t) S(N-1,qt).
TransferMatrix matrix_Mtilde(const GenealogyContext& ctx, double t);

/// Infinity norm of the ordered product, computed from the matrix itself.
double norm_inf_direct(const GenealogyContext& ctx, double t);

/// The same norm via the closed path-encoding formula: sup over start words
/// gamma of the summed path phases. Agrees with norm_inf_direct to 1e-9.
double norm_inf_graph(const GenealogyContext& ctx, double t);

/// Quadruple witness for the contraction criterion: omega1, omega2 of length
/// beta-1 sharing their (beta-2)-suffix, distinct letters k1, k2, and
/// K = g(w1k1) - g(w1k2) - g(w2k1) + g(w2k2).
struct KWitness {
    Word omega1;
    Word omega2;
    int k1 = 0;
    int k2 = 0;
    long long K = 0;
    double alpha_dist = 0.0; // ||alpha * K||_Z
};

long long k_value(const SequenceDef& seq, const Word& omega1, const Word& omega2, int k1, int k2);

/// Enumerates all admissible witnesses and returns one maximizing
/// ||alpha*K||_Z; ties go to the first witness in enumeration order.
KWitness best_k(const AssociatedFunction& fn);

/// Uniform-in-t bound q^beta - 8 sin^2(pi ||alpha K||_Z / 4).
double scolie_bound(const AssociatedFunction& fn, const KWitness& witness);

/// Witness construction for occurrence counters whose block set admits the
/// boundary-extension conditions; yields K = 1 when it applies.
std::optional<KWitness> occurrence_witness(int q, const std::vector<Word>& blocks);

/// Witness construction for digit polynomials P = X_k X_0 P1 + P2 with
/// P1(1,x,...,1) = 1 solvable and P2 free of X_k X_0 monomials; yields K = 1.
std::optional<KWitness> poly_witness(int q, const DigitPolynomial& poly);

/// (1/q^N) sum_{n < q^N} f(q^kappa n) e(-nt). For kappa >= beta the power is
/// reduced to beta-1 through a(q^kappa n) = a(q^(beta-1) n) + (kappa-beta+1) g(0..0),
/// with the n = 0 term corrected exactly.
std::complex<double> fourier_sum(const AssociatedFunction& fn, int N, int kappa, double t);

/// Max of |fourier_sum| over the uniform grid t = j/gridsize.
double empirical_sup(const AssociatedFunction& fn, int N, int kappa, int gridsize);

/// Per-digit decay exponent log_q(q^beta / B) / beta from the best witness
/// bound B; zero when the bound is vacuous.
double decay_rate(const AssociatedFunction& fn);

/// Grid sweep rows: t, norm_direct, norm_graph, bound.
StatReport norm_sweep(const GenealogyContext& ctx, int gridsize);

/// Decay report rows: N, kappa, sup_grid, matrix_bound, where matrix_bound is
/// the rigorous uniform product bound (B/q^beta)^floor(N/beta).
StatReport decay_report(const AssociatedFunction& fn, int N, const std::vector<int>& kappas,
                        int gridsize);

namespace ref {

/// Literal summation, no power reduction, plain serial accumulation.
std::complex<double> fourier_sum(const AssociatedFunction& fn, int N, int kappa, double t);
double empirical_sup(const AssociatedFunction& fn, int N, int kappa, int gridsize);
StatReport norm_sweep(const GenealogyContext& ctx, int gridsize);

} // namespace ref

} // namespace digitseq
