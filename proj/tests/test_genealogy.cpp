#include <doctest.h>

#include <cmath>
#include <complex>

#include "digitseq/errors.hpp"
#include "digitseq/genealogy.hpp"
#include "digitseq/phase.hpp"
#include "testutil.hpp"

using namespace digitseq;
using cd = std::complex<double>;

namespace {

// Direct summation of S(N,t) = sum_{n<q^N} V_n e(nt), used to probe the
// matrix recursion from the vector side.
std::vector<cd> vector_sum(const GenealogyContext& ctx, int N, double t) {
    std::vector<cd> s(static_cast<std::size_t>(ctx.dim()));
    const std::uint64_t total = upow(ctx.q(), N);
    for (std::uint64_t n = 0; n < total; ++n) {
        const auto v = vector_V(ctx, n);
        const cd ph = unit_phase(static_cast<double>(n) * t);
        for (std::size_t i = 0; i < v.size(); ++i) s[i] += v[i] * ph;
    }
    return s;
}

std::vector<cd> apply(const TransferMatrix& m, const std::vector<cd>& v) {
    std::vector<cd> out(static_cast<std::size_t>(m.dim));
    for (int i = 0; i < m.dim; ++i) {
        cd acc = 0;
        for (int j = 0; j < m.dim; ++j) acc += m.at(i, j) * v[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("genealogical vector basics") {
    const GenealogyContext rs23(AssociatedFunction{make_beta_delta(2, 2), 0.5});
    CHECK(rs23.dim() == 7);
    CHECK(vector_V(rs23, 4).size() == 7);

    const GenealogyContext zero(AssociatedFunction{make_rudin_shapiro(2), 0.0});
    for (const cd z : vector_V(zero, 37)) CHECK(std::abs(z - cd{1.0, 0.0}) < 1e-12);

    const GenealogyContext rs(AssociatedFunction{make_rudin_shapiro(2), 0.5});
    const auto v1 = vector_V(rs, 1); // (f(1), f(2), f(3))
    CHECK(std::abs(v1[0] - cd{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(v1[1] - cd{1.0, 0.0}) < 1e-12);
    CHECK(std::abs(v1[2] - cd{-1.0, 0.0}) < 1e-12);
}

TEST_CASE("each one-letter matrix has a single unit entry per row") {
    testutil::Rng rng(7);
    for (int q : {2, 3})
        for (int beta : {2, 3}) {
            const GenealogyContext ctx(
                AssociatedFunction{testutil::random_sequence(rng, q, beta), rng.real()});
            for (int l = 0; l < q; ++l) {
                const TransferMatrix m = matrix_Ml(ctx, l, rng.real());
                for (int i = 0; i < m.dim; ++i) {
                    int nonzero = 0;
                    for (int j = 0; j < m.dim; ++j) {
                        const double a = std::abs(m.at(i, j));
                        if (a > 0.0) {
                            ++nonzero;
                            CHECK(a == doctest::Approx(1.0).epsilon(1e-12));
                        }
                    }
                    CHECK(nonzero == 1);
                }
            }
        }
}

TEST_CASE("defining relation of the one-letter matrices") {
    const GenealogyContext ctx(AssociatedFunction{make_rudin_shapiro(2), 0.5});
    testutil::Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t n = rng.below(1 << 10);
        const double t = rng.real();
        const auto vn = vector_V(ctx, n);
        for (int l = 0; l < 2; ++l) {
            const auto lhs = vector_V(ctx, 2 * n + static_cast<std::uint64_t>(l));
            const cd lhs_ph = unit_phase(static_cast<double>(2 * n + static_cast<std::uint64_t>(l)) * t);
            std::vector<cd> rhs = apply(matrix_Ml(ctx, l, t), vn);
            const cd rhs_ph = unit_phase(static_cast<double>(2 * n) * t);
            for (std::size_t i = 0; i < lhs.size(); ++i)
                CHECK(std::abs(lhs[i] * lhs_ph - rhs[i] * rhs_ph) < 1e-9);
        }
    }
}

TEST_CASE("rows at full window length pick up the g phase") {
    // q = 2, beta = 3: the row of state 11 under letter 0 carries
    // e(alpha g(011)) in the column of state 01.
    testutil::Rng rng(37);
    const SequenceDef seq = testutil::random_sequence(rng, 2, 3);
    const double alpha = 0.37;
    const GenealogyContext ctx(AssociatedFunction{seq, alpha});
    const TransferMatrix m0 = matrix_Ml(ctx, 0, 0.0);
    const int row = ctx.words.index(parse_word("11", 2));
    const int col = ctx.words.index(parse_word("01", 2));
    const cd expected = unit_phase(alpha * static_cast<double>(seq.g[word_value(parse_word("011", 2))]));
    CHECK(std::abs(m0.at(row, col) - expected) < 1e-12);
    for (int j = 0; j < ctx.dim(); ++j)
        if (j != col) CHECK(std::abs(m0.at(row, j)) == 0.0);
}

TEST_CASE("odd best K at alpha = 1/2 forces a positive decay rate") {
    const std::vector<SequenceDef> families{
        make_rudin_shapiro(2),      make_beta_delta(2, 2),
        make_b_d(2, 2),             make_occurrence(2, {parse_word("101", 2)}),
        make_rudin_shapiro(3),      make_occurrence(3, {parse_word("12", 3)}),
    };
    for (const SequenceDef& seq : families) {
        const AssociatedFunction fn{seq, 0.5};
        const KWitness w = best_k(fn);
        REQUIRE(std::llabs(w.K) % 2 == 1);
        CHECK(decay_rate(fn) > 0.0);
    }
}

TEST_CASE("phase-free matrices reduce to the descent graph") {
    for (int q : {2, 3})
        for (int beta : {2, 3}) {
            const GenealogyContext ctx(AssociatedFunction{make_beta_delta(q, beta - 1), 0.0});
            const TransferMatrix m = matrix_M(ctx, 0.0);
            for (int i = 0; i < m.dim; ++i) {
                double row = 0;
                for (int j = 0; j < m.dim; ++j) {
                    const double a = std::abs(m.at(i, j));
                    CHECK((a < 1e-12 || std::fabs(a - 1.0) < 1e-12 || std::fabs(a - q) < 1e-12));
                    row += a;
                }
                CHECK(row == doctest::Approx(q));
            }
            CHECK(norm_inf_direct(ctx, 0.0) == doctest::Approx(std::pow(q, beta)));
            CHECK(norm_inf_graph(ctx, 0.0) == doctest::Approx(std::pow(q, beta)));
        }
}

TEST_CASE("matrix recursion for the summed vectors") {
    const GenealogyContext ctx(AssociatedFunction{make_rudin_shapiro(2), 0.5});
    const double t = 0.3;
    const auto s6 = vector_sum(ctx, 6, t);
    const auto s4 = vector_sum(ctx, 4, 4.0 * t);
    const auto rhs = apply(matrix_Mtilde(ctx, t), s4);
    for (std::size_t i = 0; i < s6.size(); ++i) CHECK(std::abs(s6[i] - rhs[i]) < 1e-9);
}

TEST_CASE("path-encoding entry for the worked two-step example") {
    testutil::Rng rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const SequenceDef seq = testutil::random_sequence(rng, 2, 3);
        const double alpha = rng.real();
        const double t = rng.real();
        const GenealogyContext ctx(AssociatedFunction{seq, alpha});
        const TransferMatrix m = matrix_Mtilde(ctx, t);
        // Two three-step paths lead from the empty word to 00: staying on 000,
        // or passing through 1 and 01.
        const cd expected = unit_phase(alpha * static_cast<double>(seq.g[0])) +
                            unit_phase(t + alpha * static_cast<double>(seq.g[1]));
        const int col = ctx.words.index(parse_word("00", 2));
        CHECK(std::abs(m.at(0, col) - expected) < 1e-10);
    }
}

TEST_CASE("norm formula equals the direct norm on random parameters") {
    testutil::Rng rng(41);
    for (int q : {2, 3})
        for (int beta : {2, 3}) {
            for (int trial = 0; trial < 12; ++trial) {
                const GenealogyContext ctx(
                    AssociatedFunction{testutil::random_sequence(rng, q, beta, 4), rng.real()});
                const double t = rng.real();
                const double direct = norm_inf_direct(ctx, t);
                const double graph = norm_inf_graph(ctx, t);
                CHECK(std::fabs(direct - graph) <= 1e-9);
                CHECK(direct <= std::pow(q, beta) + 1e-9);
            }
        }
}

TEST_CASE("K invariant values") {
    const SequenceDef rs = make_rudin_shapiro(2);
    CHECK(k_value(rs, parse_word("1", 2), parse_word("0", 2), 1, 0) == 1);
    CHECK_THROWS_AS(k_value(rs, parse_word("1", 2), parse_word("1", 2), 1, 0), usage_error);
    CHECK_THROWS_AS(k_value(rs, parse_word("1", 2), parse_word("0", 2), 1, 1), usage_error);

    const SequenceDef bd2 = make_beta_delta(2, 2);
    CHECK_THROWS_AS(
        k_value(bd2, parse_word("10", 2), parse_word("01", 2), 1, 0), usage_error);

    // The 00/11 occurrence counter: |K| = 2 for every admissible witness.
    const SequenceDef both = make_occurrence(2, {parse_word("00", 2), parse_word("11", 2)});
    for (int w1 = 0; w1 < 2; ++w1)
        for (int w2 = 0; w2 < 2; ++w2)
            for (int k1 = 0; k1 < 2; ++k1)
                for (int k2 = 0; k2 < 2; ++k2) {
                    if (w1 == w2 || k1 == k2) continue;
                    const long long k =
                        k_value(both, word_from_value(static_cast<std::uint64_t>(w1), 1, 2),
                                word_from_value(static_cast<std::uint64_t>(w2), 1, 2), k1, k2);
                    CHECK(std::llabs(k) == 2);
                }

    // P(X1,X0) = X1 + X0: K = 0 for every admissible witness.
    DigitPolynomial sum_poly;
    sum_poly.k = 1;
    sum_poly.terms = {{{1, 0}, 1}, {{0, 1}, 1}};
    const SequenceDef sum_seq = make_digit_polynomial(2, sum_poly);
    for (int w1 = 0; w1 < 2; ++w1)
        for (int w2 = 0; w2 < 2; ++w2)
            for (int k1 = 0; k1 < 2; ++k1)
                for (int k2 = 0; k2 < 2; ++k2) {
                    if (w1 == w2 || k1 == k2) continue;
                    CHECK(k_value(sum_seq, word_from_value(static_cast<std::uint64_t>(w1), 1, 2),
                                  word_from_value(static_cast<std::uint64_t>(w2), 1, 2), k1,
                                  k2) == 0);
                }
}

TEST_CASE("best witness and the contraction bound") {
    const AssociatedFunction rs{make_rudin_shapiro(2), 0.5};
    const KWitness w = best_k(rs);
    CHECK(w.alpha_dist == doctest::Approx(0.5));
    CHECK(std::llabs(w.K) % 2 == 1);
    const double bound = scolie_bound(rs, w);
    CHECK(bound == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));

    // Vacuous case: every K is even, alpha = 1/2.
    const AssociatedFunction both{
        make_occurrence(2, {parse_word("00", 2), parse_word("11", 2)}), 0.5};
    const KWitness wb = best_k(both);
    CHECK(wb.alpha_dist == doctest::Approx(0.0));
    CHECK(scolie_bound(both, wb) == doctest::Approx(4.0));
    CHECK(decay_rate(both) == 0.0);

    CHECK(decay_rate(rs) == doctest::Approx(0.25));
}

TEST_CASE("norm stays under the uniform bound on a grid") {
    const GenealogyContext ctx(AssociatedFunction{make_rudin_shapiro(2), 0.5});
    const double bound = scolie_bound(ctx.fn, best_k(ctx.fn));
    double seen = 0;
    for (int j = 0; j < 1000; ++j) {
        const double norm = norm_inf_direct(ctx, j / 1000.0);
        CHECK(norm <= bound + 1e-9);
        seen = std::max(seen, norm);
    }
    // The bound is attained at t = 1/8, so the grid maximum comes close.
    CHECK(seen > bound - 1e-2);
}

TEST_CASE("trigonometric contraction inequality") {
    testutil::Rng rng(59);
    for (int trial = 0; trial < 1000; ++trial) {
        const double x = 4.0 * rng.real() - 2.0;
        const double xp = 4.0 * rng.real() - 2.0;
        const double xi = 4.0 * rng.real() - 2.0;
        const double ap = 4.0 * rng.real() - 2.0;
        const double lhs = std::abs(unit_phase(x + ap) + unit_phase(x)) +
                           std::abs(unit_phase(xp + xi) + unit_phase(xp));
        const double s = std::sin(3.14159265358979323846 * dist_to_int(xi - ap) / 4.0);
        CHECK(lhs <= 4.0 - 8.0 * s * s + 1e-12);
    }
}

TEST_CASE("witness constructions for occurrence counters") {
    const auto rs = occurrence_witness(2, {parse_word("11", 2)});
    REQUIRE(rs.has_value());
    CHECK(rs->K == 1);

    const auto zeros = occurrence_witness(2, {parse_word("00", 2)});
    REQUIRE(zeros.has_value());
    CHECK(zeros->K == 1);

    const auto w101 = occurrence_witness(2, {parse_word("101", 2)});
    REQUIRE(w101.has_value());
    CHECK(w101->K == 1);

    const auto runs3 = occurrence_witness(3, {parse_word("000", 3), parse_word("111", 3),
                                         parse_word("222", 3)});
    REQUIRE(runs3.has_value());
    CHECK(runs3->K == 1);

    // 00 and 01 together block every boundary extension.
    CHECK_FALSE(occurrence_witness(2, {parse_word("00", 2), parse_word("01", 2)}).has_value());
}

TEST_CASE("witness constructions for digit polynomials") {
    DigitPolynomial prod2; // X2*X1*X0
    prod2.k = 2;
    prod2.terms = {{{1, 1, 1}, 1}};
    const auto w1 = poly_witness(2, prod2);
    REQUIRE(w1.has_value());
    CHECK(w1->K == 1);

    DigitPolynomial anti2; // (1-X2)(1-X1)(1-X0)
    anti2.k = 2;
    anti2.terms = {{{0, 0, 0}, 1}, {{1, 0, 0}, -1}, {{0, 1, 0}, -1}, {{0, 0, 1}, -1},
                   {{1, 1, 0}, 1}, {{1, 0, 1}, 1},  {{0, 1, 1}, 1},  {{1, 1, 1}, -1}};
    const auto w2 = poly_witness(2, anti2);
    REQUIRE(w2.has_value());
    CHECK(w2->K == 1);

    DigitPolynomial sum_poly; // X1 + X0 is bilinear-free, no witness
    sum_poly.k = 1;
    sum_poly.terms = {{{1, 0}, 1}, {{0, 1}, 1}};
    CHECK_FALSE(poly_witness(2, sum_poly).has_value());
}

TEST_CASE("fourier sums: collapsing cases") {
    const AssociatedFunction zero{make_rudin_shapiro(2), 0.0};
    CHECK(std::abs(fourier_sum(zero, 6, 0, 0.0) - cd{1.0, 0.0}) < 1e-12);
    for (int j = 1; j < 8; ++j)
        CHECK(std::abs(fourier_sum(zero, 3, 0, j / 8.0)) < 1e-12);
}

TEST_CASE("power reduction agrees with the literal sum") {
    // Includes a family with g(0...0) != 0 so the n = 0 correction matters.
    std::vector<long long> g{1, 0, 2, 1};
    const AssociatedFunction fin{make_block_additive_finite(2, 2, g), 0.3};
    const AssociatedFunction rs{make_rudin_shapiro(2), 0.5};
    for (const auto& fn : {fin, rs})
        for (int kappa : {0, 1, 2, 3, 4})
            for (double t : {0.0, 0.2, 0.77}) {
                const cd a = fourier_sum(fn, 6, kappa, t);
                const cd b = ref::fourier_sum(fn, 6, kappa, t);
                CHECK(std::abs(a - b) < 1e-12);
            }
}

TEST_CASE("fourier decay is controlled by the matrix product") {
    const AssociatedFunction rs{make_rudin_shapiro(2), 0.5};
    const GenealogyContext ctx(rs);
    const int N = 8;
    const int blocks = N / 2;
    testutil::Rng rng(71);
    for (int kappa : {0, 1})
        for (int trial = 0; trial < 40; ++trial) {
            const double t = rng.real();
            double product = 1.0;
            double scale = 1.0;
            for (int i = 0; i < blocks; ++i) {
                product *= norm_inf_direct(ctx, scale * t);
                scale *= 4.0;
            }
            const double lhs = std::abs(fourier_sum(rs, N, kappa, t));
            CHECK(lhs <= product / std::pow(2.0, 2 * blocks) + 1e-9);
        }
}

TEST_CASE("grid supremum respects the uniform decay bound") {
    const AssociatedFunction rs{make_rudin_shapiro(2), 0.5};
    const double bound = scolie_bound(rs, best_k(rs));
    const int N = 8;
    const double sup = empirical_sup(rs, N, 0, 512);
    CHECK(sup <= std::pow(bound / 4.0, N / 2) + 1e-9);
    CHECK(sup > 0.0);
}

TEST_CASE("sweep reports") {
    const GenealogyContext ctx(AssociatedFunction{make_rudin_shapiro(2), 0.5});
    const StatReport sweep = norm_sweep(ctx, 32);
    CHECK(sweep.columns == std::vector<std::string>{"t", "norm_direct", "norm_graph", "bound"});
    CHECK(sweep.rows.size() == 32);
    for (const auto& row : sweep.rows) {
        CHECK(std::fabs(row[1] - row[2]) <= 1e-9);
        CHECK(row[1] <= row[3] + 1e-9);
    }

    const StatReport decay = decay_report(ctx.fn, 8, {0, 1, 2}, 64);
    CHECK(decay.columns == std::vector<std::string>{"N", "kappa", "sup_grid", "matrix_bound"});
    CHECK(decay.rows.size() == 3);
    for (const auto& row : decay.rows) CHECK(row[2] <= row[3] + 1e-9);
}
