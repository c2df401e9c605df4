#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "digitseq/words.hpp"

namespace digitseq {

/// A base-q sequence determined by a window function g on length-beta digit
/// words plus explicit initial values below q^(beta-1).
///
/// g is total on the q^beta windows and indexed by the window's numeric value;
/// it takes values in Z (digit polynomials go negative), so a(n) is summed in
/// exact integer arithmetic and only f(n) = e(alpha*a(n)) leaves the integers.
struct SequenceDef {
    int q = 2;
    int beta = 2;
    std::vector<long long> g;        // size q^beta
    std::vector<long long> initial;  // size q^(beta-1)

    long long g_word(const Word& w) const;
    void validate() const;
};

/// Closed-sum evaluation: a(n) = initial[top beta-1 digits] + sum of g over
/// every full length-beta digit window of n. Total on all n >= 0.
long long eval(const SequenceDef& seq, std::uint64_t n);

/// Independent evaluator: literal recursion peeling one digit at a time.
/// Kept permanently alongside eval for differential testing.
long long eval_oracle(const SequenceDef& seq, std::uint64_t n);

/// a(n mod q^lambda); periodic in n with period q^lambda.
long long truncate_eval(const SequenceDef& seq, int lambda, std::uint64_t n);

/// f(n) = e(alpha * a(n)) on the unit circle.
struct AssociatedFunction {
    SequenceDef seq;
    double alpha = 0.0;
};

std::complex<double> f_value(const AssociatedFunction& fn, std::uint64_t n);
std::complex<double> f_trunc_value(const AssociatedFunction& fn, int lambda, std::uint64_t n);

// ---- constructors for the named families ----------------------------------

SequenceDef make_table(int q, int beta, std::vector<long long> g, std::vector<long long> initial);

/// g(ab) = a*b; counts adjacent equal-weighted digit pairs. The classical
/// sequence is q = 2.
SequenceDef make_rudin_shapiro(int q = 2);

/// a(n) = sum_l digit_l(n) * digit_(l+delta)(n); beta = delta + 1.
SequenceDef make_beta_delta(int q, int delta);

/// a(n) = sum_l digit_l(n) * digit_(l+1)(n) * ... * digit_(l+d)(n); beta = d + 1.
SequenceDef make_b_d(int q, int d);

/// Block-additive on the infinite (zero-padded) expansion; requires
/// g(0...0) = 0 and fills the initial table from the padded windows.
SequenceDef make_block_additive(int q, int beta, const std::vector<long long>& g);

/// Block-additive on the finite expansion: full windows only, zero initials.
SequenceDef make_block_additive_finite(int q, int beta, const std::vector<long long>& g);

/// Counts occurrences of the given blocks (all of one length k >= 2) in the
/// finite expansion; g is the indicator of the block set, zero initials.
SequenceDef make_occurrence(int q, const std::vector<Word>& blocks);

/// Integer polynomial in the k+1 window digits X_k..X_0.
/// Term exponents are listed most-significant first (exps[0] belongs to X_k).
struct PolyTerm {
    std::vector<int> exps;
    long long coeff = 0;
};

struct DigitPolynomial {
    int k = 1;
    std::vector<PolyTerm> terms;
};

long long poly_eval(const DigitPolynomial& p, const Word& w);

/// a(n) = sum_i P(digit_(i+k)(n), ..., digit_i(n)) over full windows; beta = k+1.
SequenceDef make_digit_polynomial(int q, const DigitPolynomial& p);

} // namespace digitseq
