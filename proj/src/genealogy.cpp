#include "digitseq/genealogy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "digitseq/errors.hpp"
#include "digitseq/phase.hpp"

namespace digitseq {

namespace {

constexpr std::uint64_t kSumBudget = std::uint64_t(1) << 28;

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace

TransferMatrix matmul(const TransferMatrix& a, const TransferMatrix& b) {
    if (a.dim != b.dim) throw usage_error("matrix dimension mismatch");
    TransferMatrix r;
    r.dim = a.dim;
    r.alpha = a.alpha;
    r.t = a.t;
    r.entries.assign(static_cast<std::size_t>(a.dim) * a.dim, {0.0, 0.0});
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) {
            const std::complex<double> aik = a.at(i, k);
            if (aik == std::complex<double>{0.0, 0.0}) continue;
            for (int j = 0; j < a.dim; ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

double norm_inf(const TransferMatrix& m) {
    double best = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.dim; ++j) row += std::abs(m.at(i, j));
        best = std::max(best, row);
    }
    return best;
}

GenealogyContext::GenealogyContext(AssociatedFunction f)
    : fn(std::move(f)), words(fn.seq.q, fn.seq.beta) {
    fn.seq.validate();
}

std::vector<std::complex<double>> vector_V(const GenealogyContext& ctx, std::uint64_t n) {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(ctx.dim()));
    for (int l = 0; l < ctx.dim(); ++l) {
        const Word& w = ctx.words.word(l);
        const std::uint64_t arg =
            upow(static_cast<std::uint64_t>(ctx.q()), w.size()) * n + word_value(w);
        v[static_cast<std::size_t>(l)] = f_value(ctx.fn, arg);
    }
    return v;
}

TransferMatrix matrix_Ml(const GenealogyContext& ctx, int l, double t) {
    if (l < 0 || l >= ctx.q()) throw usage_error("letter out of range");
    const SequenceDef& seq = ctx.fn.seq;
    const int dim = ctx.dim();
    TransferMatrix m;
    m.dim = dim;
    m.alpha = ctx.fn.alpha;
    m.t = t;
    m.entries.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
    const std::complex<double> el = unit_phase(static_cast<double>(l) * t);
    const std::uint64_t shift = upow(static_cast<std::uint64_t>(seq.q), seq.beta - 1);
    for (int i = 0; i < dim; ++i) {
        const Word& w = ctx.words.word(i);
        if (w.size() < seq.beta - 1) {
            m.at(i, ctx.words.index(prepend(l, w))) = el;
        } else {
            const std::uint64_t garg = static_cast<std::uint64_t>(l) * shift + word_value(w);
            const int j = ctx.words.index(prepend(l, prefix(w, w.size() - 1)));
            m.at(i, j) = el * unit_phase(ctx.fn.alpha * static_cast<double>(seq.g[garg]));
        }
    }
    return m;
}

TransferMatrix matrix_M(const GenealogyContext& ctx, double t) {
    TransferMatrix m = matrix_Ml(ctx, 0, t);
    for (int l = 1; l < ctx.q(); ++l) {
        const TransferMatrix part = matrix_Ml(ctx, l, t);
        for (std::size_t i = 0; i < m.entries.size(); ++i) m.entries[i] += part.entries[i];
    }
    return m;
}

TransferMatrix matrix_Mtilde(const GenealogyContext& ctx, double t) {
    TransferMatrix m = matrix_M(ctx, t);
    double scale = 1.0;
    for (int k = 1; k < ctx.beta(); ++k) {
        scale *= ctx.q();
        m = matmul(m, matrix_M(ctx, scale * t));
    }
    m.t = t;
    return m;
}

double norm_inf_direct(const GenealogyContext& ctx, double t) {
    return norm_inf(matrix_Mtilde(ctx, t));
}

double norm_inf_graph(const GenealogyContext& ctx, double t) {
    const SequenceDef& seq = ctx.fn.seq;
    const double alpha = ctx.fn.alpha;
    const auto q = static_cast<std::uint64_t>(seq.q);
    std::uint64_t qpow[64];
    qpow[0] = 1;
    for (int i = 1; i < seq.beta; ++i) qpow[i] = qpow[i - 1] * q;
    const std::uint64_t wcount = qpow[seq.beta - 1];

    double best = 0.0;
    for (int gi = 0; gi < ctx.dim(); ++gi) {
        const Word& gamma = ctx.words.word(gi);
        const int glen = gamma.size();
        const std::uint64_t gv = word_value(gamma);
        double row = 0.0;
        for (std::uint64_t wv = 0; wv < wcount; ++wv) {
            std::complex<double> acc{0.0, 0.0};
            for (std::uint64_t k = 0; k < q; ++k) {
                long long gsum = 0;
                for (int m = 0; m <= glen; ++m) {
                    const std::uint64_t suf = wv % qpow[seq.beta - 1 - m];
                    const std::uint64_t pre = gv / qpow[glen - m];
                    gsum += seq.g[(suf * q + k) * qpow[m] + pre];
                }
                acc += unit_phase(t * static_cast<double>(k + q * wv) +
                                  alpha * static_cast<double>(gsum));
            }
            row += std::abs(acc);
        }
        best = std::max(best, row);
    }
    return best;
}

long long k_value(const SequenceDef& seq, const Word& omega1, const Word& omega2, int k1, int k2) {
    if (omega1.base != seq.q || omega2.base != seq.q)
        throw usage_error("witness word base mismatch");
    if (omega1.size() != seq.beta - 1 || omega2.size() != seq.beta - 1)
        throw usage_error("witness words must have length beta-1");
    if (!(suffix(omega1, seq.beta - 2) == suffix(omega2, seq.beta - 2)))
        throw usage_error("witness words must share their (beta-2)-suffix");
    if (omega1 == omega2) throw usage_error("witness words must be distinct");
    if (k1 == k2) throw usage_error("witness letters must be distinct");
    if (k1 < 0 || k1 >= seq.q || k2 < 0 || k2 >= seq.q)
        throw usage_error("witness letter out of range");
    const auto q = static_cast<std::uint64_t>(seq.q);
    const std::uint64_t v1 = word_value(omega1) * q;
    const std::uint64_t v2 = word_value(omega2) * q;
    const auto uk1 = static_cast<std::uint64_t>(k1);
    const auto uk2 = static_cast<std::uint64_t>(k2);
    return seq.g[v1 + uk1] - seq.g[v1 + uk2] - seq.g[v2 + uk1] + seq.g[v2 + uk2];
}

KWitness best_k(const AssociatedFunction& fn) {
    const SequenceDef& seq = fn.seq;
    seq.validate();
    WordEnum en(seq.q, seq.beta);
    const int start = en.offset(seq.beta - 1);
    KWitness best;
    bool found = false;
    for (int i1 = start; i1 < en.size(); ++i1) {
        const Word& w1 = en.word(i1);
        for (int i2 = start; i2 < en.size(); ++i2) {
            if (i1 == i2) continue;
            const Word& w2 = en.word(i2);
            if (!(suffix(w1, seq.beta - 2) == suffix(w2, seq.beta - 2))) continue;
            for (int k1 = 0; k1 < seq.q; ++k1)
                for (int k2 = 0; k2 < seq.q; ++k2) {
                    if (k1 == k2) continue;
                    const long long k = k_value(seq, w1, w2, k1, k2);
                    const double dist = dist_to_int(fn.alpha * static_cast<double>(k));
                    if (!found || dist > best.alpha_dist) {
                        best = KWitness{w1, w2, k1, k2, k, dist};
                        found = true;
                    }
                }
        }
    }
    if (!found) throw internal_error("no admissible witness exists");
    return best;
}

double scolie_bound(const AssociatedFunction& fn, const KWitness& witness) {
    const double dist = dist_to_int(fn.alpha * static_cast<double>(witness.K));
    const double s = std::sin(3.14159265358979323846 * dist / 4.0);
    return std::pow(static_cast<double>(fn.seq.q), fn.seq.beta) - 8.0 * s * s;
}

std::optional<KWitness> occurrence_witness(int q, const std::vector<Word>& blocks) {
    if (blocks.empty()) throw usage_error("empty block set");
    const int k = blocks.front().size();
    if (k < 2) throw usage_error("blocks must have length at least 2");
    const SequenceDef seq = make_occurrence(q, blocks);
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), k);
    std::vector<char> member(size, 0);
    for (const Word& b : blocks) member[word_value(b)] = 1;

    const auto uq = static_cast<std::uint64_t>(q);
    std::uint64_t top = 1;
    for (int i = 1; i < k; ++i) top *= uq;
    for (const Word& w : blocks) {
        const std::uint64_t wv = word_value(w);
        const std::uint64_t suf = wv % top;        // last k-1 letters
        const std::uint64_t pre = wv / uq;         // first k-1 letters
        const std::uint64_t mid = (wv / uq) % (top / uq); // letters strictly inside
        for (int l1 = 0; l1 < q; ++l1) {
            if (member[static_cast<std::uint64_t>(l1) * top + suf]) continue;
            for (int l2 = 0; l2 < q; ++l2) {
                if (member[pre * uq + static_cast<std::uint64_t>(l2)]) continue;
                if (member[(static_cast<std::uint64_t>(l1) * (top / uq) + mid) * uq +
                           static_cast<std::uint64_t>(l2)])
                    continue;
                KWitness wit;
                wit.omega1 = prefix(w, k - 1);
                wit.omega2 = prepend(l1, suffix(prefix(w, k - 1), k - 2));
                wit.k1 = w.letter(0);
                wit.k2 = l2;
                wit.K = k_value(seq, wit.omega1, wit.omega2, wit.k1, wit.k2);
                return wit;
            }
        }
    }
    return std::nullopt;
}

std::optional<KWitness> poly_witness(int q, const DigitPolynomial& poly) {
    if (poly.k < 1) throw usage_error("polynomial window must span at least two digits");
    // Split off the part divisible by X_k X_0.
    std::vector<PolyTerm> p1;
    for (const PolyTerm& term : poly.terms) {
        if (static_cast<int>(term.exps.size()) != poly.k + 1)
            throw usage_error("every term needs k+1 exponents");
        if (term.exps.front() >= 1 && term.exps.back() >= 1) p1.push_back(term);
    }
    const SequenceDef seq = make_digit_polynomial(q, poly);
    // Search for middle letters x with P1(1, x, 1) = 1.
    const int mid = poly.k - 1;
    std::vector<int> x(static_cast<std::size_t>(mid), 0);
    while (true) {
        long long val = 0;
        for (const PolyTerm& term : p1) {
            long long m = term.coeff;
            for (int j = 0; j < mid; ++j) {
                const int base = x[static_cast<std::size_t>(j)];
                for (int e = 0; e < term.exps[static_cast<std::size_t>(j) + 1]; ++e) m *= base;
            }
            val += m; // end variables evaluate at 1
        }
        if (val == 1) {
            std::vector<int> letters1{1};
            letters1.insert(letters1.end(), x.begin(), x.end());
            std::vector<int> letters2{0};
            letters2.insert(letters2.end(), x.begin(), x.end());
            KWitness wit;
            wit.omega1 = Word(letters1, q);
            wit.omega2 = Word(letters2, q);
            wit.k1 = 1;
            wit.k2 = 0;
            wit.K = k_value(seq, wit.omega1, wit.omega2, wit.k1, wit.k2);
            return wit;
        }
        int j = mid - 1;
        while (j >= 0 && x[static_cast<std::size_t>(j)] == q - 1) x[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
        ++x[static_cast<std::size_t>(j)];
    }
    return std::nullopt;
}

namespace {

std::complex<double> fourier_core(const AssociatedFunction& fn, int N, int kappa, double t) {
    const auto q = static_cast<std::uint64_t>(fn.seq.q);
    const std::uint64_t total = upow(q, N);
    if (total > kSumBudget) throw budget_error("q^N exceeds the summation budget");
    upow(q, N + kappa); // argument range must fit
    const std::uint64_t qk = upow(q, kappa);
    KahanSum re, im;
    for (std::uint64_t n = 0; n < total; ++n) {
        const std::complex<double> z =
            unit_phase(fn.alpha * static_cast<double>(eval(fn.seq, qk * n)) -
                       static_cast<double>(n) * t);
        re.add(z.real());
        im.add(z.imag());
    }
    const auto d = static_cast<double>(total);
    return {re.sum / d, im.sum / d};
}

} // namespace

std::complex<double> fourier_sum(const AssociatedFunction& fn, int N, int kappa, double t) {
    if (N < 1) throw usage_error("N must be at least 1");
    if (kappa < 0) throw usage_error("kappa must be nonnegative");
    const int beta = fn.seq.beta;
    if (kappa >= beta) {
        // a(q^kappa n) = a(q^(beta-1) n) + (kappa-beta+1) g(0..0) for n >= 1;
        // the n = 0 term carries no such shift and is corrected separately.
        const double c =
            fn.alpha * static_cast<double>(kappa - beta + 1) * static_cast<double>(fn.seq.g[0]);
        const std::complex<double> rot = unit_phase(c);
        const std::complex<double> base = fourier_core(fn, N, beta - 1, t);
        const std::complex<double> f0 = unit_phase(fn.alpha * static_cast<double>(fn.seq.initial[0]));
        const auto total = static_cast<double>(upow(static_cast<std::uint64_t>(fn.seq.q), N));
        return rot * base + (f0 - rot * f0) / total;
    }
    return fourier_core(fn, N, kappa, t);
}

double empirical_sup(const AssociatedFunction& fn, int N, int kappa, int gridsize) {
    if (gridsize < 1) throw usage_error("grid size must be positive");
    double best = 0.0;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (int j = 0; j < gridsize; ++j) {
        const double v = std::abs(fourier_sum(fn, N, kappa, static_cast<double>(j) / gridsize));
        best = std::max(best, v);
    }
    return best;
}

double decay_rate(const AssociatedFunction& fn) {
    const KWitness witness = best_k(fn);
    const double bound = scolie_bound(fn, witness);
    const double qb = std::pow(static_cast<double>(fn.seq.q), fn.seq.beta);
    if (bound >= qb) return 0.0;
    return std::log(qb / bound) / (fn.seq.beta * std::log(static_cast<double>(fn.seq.q)));
}

StatReport norm_sweep(const GenealogyContext& ctx, int gridsize) {
    if (gridsize < 1) throw usage_error("grid size must be positive");
    const double bound = scolie_bound(ctx.fn, best_k(ctx.fn));
    StatReport report;
    report.columns = {"t", "norm_direct", "norm_graph", "bound"};
    report.rows.assign(static_cast<std::size_t>(gridsize), {});
#pragma omp parallel for schedule(static)
    for (int j = 0; j < gridsize; ++j) {
        const double t = static_cast<double>(j) / gridsize;
        report.rows[static_cast<std::size_t>(j)] = {t, norm_inf_direct(ctx, t),
                                                    norm_inf_graph(ctx, t), bound};
    }
    return report;
}

StatReport decay_report(const AssociatedFunction& fn, int N, const std::vector<int>& kappas,
                        int gridsize) {
    const double bound = scolie_bound(fn, best_k(fn));
    const double qb = std::pow(static_cast<double>(fn.seq.q), fn.seq.beta);
    const int blocks = N / fn.seq.beta;
    const double matrix_bound = std::pow(bound / qb, blocks);
    StatReport report;
    report.columns = {"N", "kappa", "sup_grid", "matrix_bound"};
    for (int kappa : kappas)
        report.rows.push_back({static_cast<double>(N), static_cast<double>(kappa),
                               empirical_sup(fn, N, kappa, gridsize), matrix_bound});
    return report;
}

namespace ref {

std::complex<double> fourier_sum(const AssociatedFunction& fn, int N, int kappa, double t) {
    if (N < 1) throw usage_error("N must be at least 1");
    if (kappa < 0) throw usage_error("kappa must be nonnegative");
    const auto q = static_cast<std::uint64_t>(fn.seq.q);
    const std::uint64_t total = upow(q, N);
    if (total > kSumBudget) throw budget_error("q^N exceeds the summation budget");
    upow(q, N + kappa);
    const std::uint64_t qk = upow(q, kappa);
    std::complex<double> acc{0.0, 0.0};
    for (std::uint64_t n = 0; n < total; ++n)
        acc += unit_phase(fn.alpha * static_cast<double>(eval(fn.seq, qk * n)) -
                          static_cast<double>(n) * t);
    return acc / static_cast<double>(total);
}

double empirical_sup(const AssociatedFunction& fn, int N, int kappa, int gridsize) {
    if (gridsize < 1) throw usage_error("grid size must be positive");
    double best = 0.0;
    for (int j = 0; j < gridsize; ++j)
        best = std::max(best,
                        std::abs(ref::fourier_sum(fn, N, kappa, static_cast<double>(j) / gridsize)));
    return best;
}

StatReport norm_sweep(const GenealogyContext& ctx, int gridsize) {
    if (gridsize < 1) throw usage_error("grid size must be positive");
    const double bound = scolie_bound(ctx.fn, best_k(ctx.fn));
    StatReport report;
    report.columns = {"t", "norm_direct", "norm_graph", "bound"};
    for (int j = 0; j < gridsize; ++j) {
        const double t = static_cast<double>(j) / gridsize;
        report.rows.push_back({t, norm_inf_direct(ctx, t), norm_inf_graph(ctx, t), bound});
    }
    return report;
}

} // namespace ref

} // namespace digitseq
