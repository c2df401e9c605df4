#include "digitseq/sequences.hpp"

#include <algorithm>
#include <string>

#include "digitseq/errors.hpp"
#include "digitseq/phase.hpp"

namespace digitseq {

long long SequenceDef::g_word(const Word& w) const {
    if (w.size() != beta || w.base != q) throw usage_error("g is defined on words of length beta");
    return g[word_value(w)];
}

void SequenceDef::validate() const {
    if (q < 2) throw usage_error("base must be at least 2");
    if (beta < 2) throw usage_error("window length must be at least 2");
    if (g.size() != upow(static_cast<std::uint64_t>(q), beta))
        throw usage_error("g table must have q^beta entries");
    if (initial.size() != upow(static_cast<std::uint64_t>(q), beta - 1))
        throw usage_error("initial table must have q^(beta-1) entries");
}

long long eval(const SequenceDef& seq, std::uint64_t n) {
    const auto q = static_cast<std::uint64_t>(seq.q);
    const std::uint64_t lead = upow(q, seq.beta - 1);
    if (n < lead) return seq.initial[n];

    int digits[64];
    int len = 0;
    for (std::uint64_t m = n; m != 0; m /= q) digits[len++] = static_cast<int>(m % q);

    long long acc = 0;
    for (int l = 0; l + seq.beta <= len; ++l) {
        std::uint64_t w = 0;
        for (int i = seq.beta - 1; i >= 0; --i) w = w * q + static_cast<std::uint64_t>(digits[l + i]);
        acc += seq.g[w];
    }
    std::uint64_t top = 0;
    for (int i = len - 1; i >= len - (seq.beta - 1); --i)
        top = top * q + static_cast<std::uint64_t>(digits[i]);
    return acc + seq.initial[top];
}

long long eval_oracle(const SequenceDef& seq, std::uint64_t n) {
    const auto q = static_cast<std::uint64_t>(seq.q);
    const std::uint64_t lead = upow(q, seq.beta - 1);
    const std::uint64_t window = lead * q;
    if (n < lead) return seq.initial[n];
    return eval_oracle(seq, n / q) + seq.g[n % window];
}

long long truncate_eval(const SequenceDef& seq, int lambda, std::uint64_t n) {
    if (lambda < 0) throw usage_error("truncation level must be nonnegative");
    const std::uint64_t mod = upow_sat(static_cast<std::uint64_t>(seq.q), lambda);
    if (mod == UINT64_MAX || n < mod) return eval(seq, n);
    return eval(seq, n % mod);
}

std::complex<double> f_value(const AssociatedFunction& fn, std::uint64_t n) {
    return unit_phase(fn.alpha * static_cast<double>(eval(fn.seq, n)));
}

std::complex<double> f_trunc_value(const AssociatedFunction& fn, int lambda, std::uint64_t n) {
    return unit_phase(fn.alpha * static_cast<double>(truncate_eval(fn.seq, lambda, n)));
}

SequenceDef make_table(int q, int beta, std::vector<long long> g, std::vector<long long> initial) {
    SequenceDef seq;
    seq.q = q;
    seq.beta = beta;
    seq.g = std::move(g);
    seq.initial = std::move(initial);
    seq.validate();
    return seq;
}

namespace {

SequenceDef windows_only(int q, int beta, std::vector<long long> g) {
    SequenceDef seq;
    seq.q = q;
    seq.beta = beta;
    seq.g = std::move(g);
    seq.initial.assign(upow(static_cast<std::uint64_t>(q), beta - 1), 0);
    seq.validate();
    return seq;
}

} // namespace

SequenceDef make_rudin_shapiro(int q) {
    if (q < 2) throw usage_error("base must be at least 2");
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), 2);
    std::vector<long long> g(size, 0);
    for (std::uint64_t v = 0; v < size; ++v) {
        const auto hi = static_cast<long long>(v / static_cast<std::uint64_t>(q));
        const auto lo = static_cast<long long>(v % static_cast<std::uint64_t>(q));
        g[v] = hi * lo;
    }
    return windows_only(q, 2, std::move(g));
}

SequenceDef make_beta_delta(int q, int delta) {
    if (delta < 1) throw usage_error("delta must be at least 1");
    const int beta = delta + 1;
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), beta);
    std::vector<long long> g(size, 0);
    for (std::uint64_t v = 0; v < size; ++v) {
        const Word w = word_from_value(v, beta, q);
        g[v] = static_cast<long long>(w.letter(delta)) * w.letter(0);
    }
    return windows_only(q, beta, std::move(g));
}

SequenceDef make_b_d(int q, int d) {
    if (d < 1) throw usage_error("d must be at least 1");
    const int beta = d + 1;
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), beta);
    std::vector<long long> g(size, 0);
    for (std::uint64_t v = 0; v < size; ++v) {
        const Word w = word_from_value(v, beta, q);
        long long prod = 1;
        for (int i = 0; i < beta; ++i) prod *= w.letter(i);
        g[v] = prod;
    }
    return windows_only(q, beta, std::move(g));
}

SequenceDef make_block_additive(int q, int beta, const std::vector<long long>& g) {
    SequenceDef seq;
    seq.q = q;
    seq.beta = beta;
    seq.g = g;
    if (g.size() != upow(static_cast<std::uint64_t>(q), beta))
        throw usage_error("g table must have q^beta entries");
    if (g[0] != 0)
        throw usage_error("block-additive sequences require g(0...0) = 0");
    // Initial values come from the zero-padded windows of the expansion, so
    // the padded closed formula holds for every n.
    const std::uint64_t lead = upow(static_cast<std::uint64_t>(q), beta - 1);
    const std::uint64_t window = lead * static_cast<std::uint64_t>(q);
    seq.initial.assign(lead, 0);
    for (std::uint64_t n = 1; n < lead; ++n) {
        long long acc = 0;
        for (std::uint64_t m = n; m != 0; m /= static_cast<std::uint64_t>(q))
            acc += g[m % window];
        seq.initial[n] = acc;
    }
    seq.validate();
    return seq;
}

SequenceDef make_block_additive_finite(int q, int beta, const std::vector<long long>& g) {
    if (g.size() != upow(static_cast<std::uint64_t>(q), beta))
        throw usage_error("g table must have q^beta entries");
    return windows_only(q, beta, g);
}

SequenceDef make_occurrence(int q, const std::vector<Word>& blocks) {
    if (blocks.empty()) throw usage_error("occurrence counter needs at least one block");
    const int k = blocks.front().size();
    if (k < 2) throw usage_error("occurrence blocks must have length at least 2");
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), k);
    std::vector<long long> g(size, 0);
    for (const Word& b : blocks) {
        if (b.size() != k) throw usage_error("occurrence blocks must all have the same length");
        if (b.base != q) throw usage_error("occurrence block base mismatch");
        g[word_value(b)] = 1;
    }
    return windows_only(q, k, std::move(g));
}

long long poly_eval(const DigitPolynomial& p, const Word& w) {
    if (w.size() != p.k + 1) throw usage_error("polynomial arity does not match the window length");
    long long value = 0;
    for (const PolyTerm& term : p.terms) {
        long long m = term.coeff;
        for (std::size_t j = 0; j < term.exps.size(); ++j) {
            const int x = w.letters[j];
            for (int e = 0; e < term.exps[j]; ++e) m *= x;
        }
        value += m;
    }
    return value;
}

SequenceDef make_digit_polynomial(int q, const DigitPolynomial& p) {
    if (p.k < 1) throw usage_error("polynomial window must span at least two digits");
    for (const PolyTerm& term : p.terms)
        if (static_cast<int>(term.exps.size()) != p.k + 1)
            throw usage_error("every term needs k+1 exponents");
    const int beta = p.k + 1;
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), beta);
    std::vector<long long> g(size, 0);
    for (std::uint64_t v = 0; v < size; ++v)
        g[v] = poly_eval(p, word_from_value(v, beta, q));
    return windows_only(q, beta, std::move(g));
}

} // namespace digitseq
