#include "digitseq/cli.hpp"

#include <complex>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "digitseq/errors.hpp"
#include "digitseq/genealogy.hpp"
#include "digitseq/numtheory.hpp"
#include "digitseq/phase.hpp"
#include "digitseq/propagation.hpp"
#include "digitseq/report.hpp"
#include "digitseq/seqdef.hpp"
#include "digitseq/sequences.hpp"

namespace digitseq {

namespace {

struct SequenceFlags {
    std::string seq_path;
    std::string builtin;
    int q = 2;
    int delta = 1;
    int d = 1;
    std::string blocks;
};

void add_sequence_flags(CLI::App* cmd, SequenceFlags& flags) {
    auto* path = cmd->add_option("--seq", flags.seq_path, "sequence definition file");
    auto* builtin =
        cmd->add_option("--builtin", flags.builtin,
                        "builtin kind: rudin-shapiro | beta-delta | b-d | occurrence");
    path->excludes(builtin);
    cmd->add_option("--q", flags.q, "base for --builtin")->check(CLI::Range(2, 64));
    cmd->add_option("--delta", flags.delta, "delta for --builtin beta-delta");
    cmd->add_option("--d", flags.d, "d for --builtin b-d");
    cmd->add_option("--blocks", flags.blocks, "comma-separated blocks for --builtin occurrence");
}

SequenceDef resolve_sequence(const SequenceFlags& flags) {
    if (!flags.seq_path.empty()) return parse_seqdef(flags.seq_path);
    if (flags.builtin.empty())
        throw usage_error("a sequence is required: pass --seq FILE or --builtin KIND");
    if (flags.builtin == "rudin-shapiro") return make_rudin_shapiro(flags.q);
    if (flags.builtin == "beta-delta") return make_beta_delta(flags.q, flags.delta);
    if (flags.builtin == "b-d") return make_b_d(flags.q, flags.d);
    if (flags.builtin == "occurrence") {
        std::vector<Word> blocks;
        std::stringstream ss(flags.blocks);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) blocks.push_back(parse_word(tok, flags.q));
        }
        return make_occurrence(flags.q, blocks);
    }
    throw usage_error("unknown builtin '" + flags.builtin + "'");
}

void print_row(std::ostream& out, const std::vector<double>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << format_number(row[i]);
    }
    out << '\n';
}

void print_report(std::ostream& out, const StatReport& report) { out << to_csv(report); }

std::uint64_t sieve_limit_from_env() {
    if (const char* env = std::getenv("DIGITSEQ_SIEVE_LIMIT")) {
        try {
            const long long v = std::stoll(env);
            if (v < 2) throw usage_error("DIGITSEQ_SIEVE_LIMIT must be at least 2");
            return static_cast<std::uint64_t>(v);
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("invalid DIGITSEQ_SIEVE_LIMIT");
        }
    }
    return SieveTables::default_limit;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"base-q recursive digit sequences: transfer-matrix norms, "
                 "propagation counts, prime statistics"};
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "cap the number of worker threads");

    SequenceFlags flags;

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a(n)");
    std::uint64_t eval_n = 0;
    std::uint64_t eval_count = 1;
    add_sequence_flags(eval_cmd, flags);
    eval_cmd->add_option("--n", eval_n, "first index")->required();
    eval_cmd->add_option("--count", eval_count, "number of consecutive indices");

    // oracle-diff
    auto* oracle_cmd = app.add_subcommand("oracle-diff", "compare eval against the literal recursion");
    std::uint64_t oracle_max = 1024;
    add_sequence_flags(oracle_cmd, flags);
    oracle_cmd->add_option("--max", oracle_max, "check all n below this bound");

    // truncate-check
    auto* trunc_cmd = app.add_subcommand("truncate-check", "verify truncation periodicity");
    int trunc_lambda = 4;
    std::uint64_t trunc_max = 1024;
    add_sequence_flags(trunc_cmd, flags);
    trunc_cmd->add_option("--lambda", trunc_lambda, "truncation level")->required();
    trunc_cmd->add_option("--max", trunc_max, "check all n below this bound");

    // matrix-norm
    auto* norm_cmd = app.add_subcommand("matrix-norm", "infinity norm of the ordered matrix product");
    double norm_alpha = 0.5, norm_t = 0.0;
    add_sequence_flags(norm_cmd, flags);
    norm_cmd->add_option("--alpha", norm_alpha, "phase multiplier");
    norm_cmd->add_option("--t", norm_t, "frequency");

    // norm-sweep
    auto* sweep_cmd = app.add_subcommand("norm-sweep", "norm over a uniform t grid");
    double sweep_alpha = 0.5;
    int sweep_grid = 1024;
    add_sequence_flags(sweep_cmd, flags);
    sweep_cmd->add_option("--alpha", sweep_alpha, "phase multiplier");
    sweep_cmd->add_option("--grid", sweep_grid, "grid size")->check(CLI::PositiveNumber);

    // decay
    auto* decay_cmd = app.add_subcommand("decay", "Fourier sum decay report");
    double decay_alpha = 0.5;
    int decay_N = 8;
    std::vector<int> decay_kappas{0};
    int decay_grid = 1024;
    add_sequence_flags(decay_cmd, flags);
    decay_cmd->add_option("--alpha", decay_alpha, "phase multiplier");
    decay_cmd->add_option("--N", decay_N, "summation length exponent")->check(CLI::PositiveNumber);
    decay_cmd->add_option("--kappa", decay_kappas, "power shifts (repeatable)");
    decay_cmd->add_option("--grid", decay_grid, "grid size")->check(CLI::PositiveNumber);

    // k-search
    auto* k_cmd = app.add_subcommand("k-search", "best contraction witness");
    double k_alpha = 0.5;
    add_sequence_flags(k_cmd, flags);
    k_cmd->add_option("--alpha", k_alpha, "phase multiplier");

    // prop-count
    auto* prop_cmd = app.add_subcommand("prop-count", "exceptional-set and covering-set counts");
    std::string prop_alpha = "1/2";
    int prop_lambda = 8, prop_kappa = 2, prop_rho = 4;
    std::uint64_t prop_budget = std::uint64_t(1) << 30;
    add_sequence_flags(prop_cmd, flags);
    prop_cmd->add_option("--alpha", prop_alpha, "phase, 'p/r' for exact rational arithmetic");
    prop_cmd->add_option("--lambda", prop_lambda, "digit range exponent")->required();
    prop_cmd->add_option("--kappa", prop_kappa, "carry window exponent")->required();
    prop_cmd->add_option("--rho", prop_rho, "truncation exponent")->required();
    prop_cmd->add_option("--budget", prop_budget, "enumeration budget");

    // mobius
    auto* mobius_cmd = app.add_subcommand("mobius", "Mobius correlation");
    std::vector<std::uint64_t> mobius_N{10000};
    int mobius_mprime = 2, mobius_jprime = 1;
    add_sequence_flags(mobius_cmd, flags);
    mobius_cmd->add_option("--N", mobius_N, "scan lengths (repeatable)");
    mobius_cmd->add_option("--mprime", mobius_mprime, "phase denominator");
    mobius_cmd->add_option("--jprime", mobius_jprime, "phase numerator");

    // lambda-sum
    auto* lambda_cmd = app.add_subcommand("lambda-sum", "von Mangoldt weighted exponential sum");
    double ls_alpha = 0.5, ls_theta = 0.0;
    std::uint64_t ls_x = 100000;
    add_sequence_flags(lambda_cmd, flags);
    lambda_cmd->add_option("--alpha", ls_alpha, "phase multiplier");
    lambda_cmd->add_option("--theta", ls_theta, "linear phase");
    lambda_cmd->add_option("--x", ls_x, "upper bound")->required();

    // residues
    auto* res_cmd = app.add_subcommand("residues", "prime residue class counts");
    std::uint64_t res_x = 100000;
    long long res_a = 0, res_m = 1;
    int res_mprime = 2;
    add_sequence_flags(res_cmd, flags);
    res_cmd->add_option("--x", res_x, "upper bound")->required();
    res_cmd->add_option("--a", res_a, "residue of p mod m");
    res_cmd->add_option("--m", res_m, "prime progression modulus");
    res_cmd->add_option("--mprime", res_mprime, "sequence value modulus");

    // weyl
    auto* weyl_cmd = app.add_subcommand("weyl", "Weyl sums over primes");
    double weyl_alpha = 0.5;
    std::uint64_t weyl_x = 100000;
    long long weyl_a = 0, weyl_m = 1;
    int weyl_H = 5;
    add_sequence_flags(weyl_cmd, flags);
    weyl_cmd->add_option("--alpha", weyl_alpha, "phase multiplier")->required();
    weyl_cmd->add_option("--x", weyl_x, "upper bound")->required();
    weyl_cmd->add_option("--a", weyl_a, "residue of p mod m");
    weyl_cmd->add_option("--m", weyl_m, "prime progression modulus");
    weyl_cmd->add_option("--H", weyl_H, "number of harmonics")->check(CLI::PositiveNumber);

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "digitseq: " << e.what() << '\n';
        return 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    if (eval_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        out << "n,a\n";
        for (std::uint64_t n = eval_n; n < eval_n + eval_count; ++n)
            print_row(out, {static_cast<double>(n), static_cast<double>(eval(seq, n))});
        return 0;
    }
    if (oracle_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        std::uint64_t mismatches = 0;
        for (std::uint64_t n = 0; n < oracle_max; ++n)
            if (eval(seq, n) != eval_oracle(seq, n)) ++mismatches;
        out << "checked,mismatches\n";
        print_row(out, {static_cast<double>(oracle_max), static_cast<double>(mismatches)});
        if (mismatches) {
            err << "oracle-diff: eval and eval_oracle disagree\n";
            return 4;
        }
        return 0;
    }
    if (trunc_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        if (trunc_lambda < 0) throw usage_error("lambda must be nonnegative");
        const std::uint64_t period = upow(static_cast<std::uint64_t>(seq.q), trunc_lambda);
        std::uint64_t violations = 0;
        for (std::uint64_t n = 0; n < trunc_max; ++n)
            if (truncate_eval(seq, trunc_lambda, n) != truncate_eval(seq, trunc_lambda, n + period))
                ++violations;
        out << "checked,violations\n";
        print_row(out, {static_cast<double>(trunc_max), static_cast<double>(violations)});
        if (violations) {
            err << "truncate-check: periodicity violated\n";
            return 4;
        }
        return 0;
    }
    if (norm_cmd->parsed()) {
        const GenealogyContext ctx(AssociatedFunction{resolve_sequence(flags), norm_alpha});
        const double bound = scolie_bound(ctx.fn, best_k(ctx.fn));
        out << "t,norm_direct,norm_graph,bound\n";
        print_row(out, {norm_t, norm_inf_direct(ctx, norm_t), norm_inf_graph(ctx, norm_t), bound});
        return 0;
    }
    if (sweep_cmd->parsed()) {
        const GenealogyContext ctx(AssociatedFunction{resolve_sequence(flags), sweep_alpha});
        print_report(out, norm_sweep(ctx, sweep_grid));
        return 0;
    }
    if (decay_cmd->parsed()) {
        const AssociatedFunction fn{resolve_sequence(flags), decay_alpha};
        print_report(out, decay_report(fn, decay_N, decay_kappas, decay_grid));
        return 0;
    }
    if (k_cmd->parsed()) {
        const AssociatedFunction fn{resolve_sequence(flags), k_alpha};
        const KWitness w = best_k(fn);
        out << "omega1,omega2,k1,k2,K,alpha_dist,bound\n";
        out << word_to_string(w.omega1) << ',' << word_to_string(w.omega2) << ','
            << w.k1 << ',' << w.k2 << ',' << w.K << ',' << format_number(w.alpha_dist) << ','
            << format_number(scolie_bound(fn, w)) << '\n';
        return 0;
    }
    if (prop_cmd->parsed()) {
        PropagationQuery query;
        query.seq = resolve_sequence(flags);
        query.alpha = parse_alpha(prop_alpha);
        query.lambda = prop_lambda;
        query.kappa = prop_kappa;
        query.rho = prop_rho;
        query.budget = prop_budget;
        const PropagationReport report = propagation_report(query);
        out << "lambda,kappa,rho,exceptional,cardA,cardB,cardC,bound,fitted_constant\n";
        print_row(out, {static_cast<double>(prop_lambda), static_cast<double>(prop_kappa),
                        static_cast<double>(prop_rho), static_cast<double>(report.exceptional),
                        static_cast<double>(report.cardA), static_cast<double>(report.cardB),
                        static_cast<double>(report.cardC), report.bound, report.fitted_constant});
        return 0;
    }
    if (mobius_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        std::uint64_t need = 2;
        for (const auto n : mobius_N) need = std::max(need, n);
        const std::uint64_t limit = sieve_limit_from_env();
        if (need > limit) throw usage_error("N exceeds the sieve limit");
        const SieveTables sieve(limit);
        out << "N,correlation_re,correlation_im\n";
        for (const auto n : mobius_N) {
            const auto z = mobius_correlation(sieve, seq, n, mobius_mprime, mobius_jprime);
            print_row(out, {static_cast<double>(n), z.real(), z.imag()});
        }
        return 0;
    }
    if (lambda_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        const std::uint64_t limit = sieve_limit_from_env();
        if (ls_x > limit) throw usage_error("x exceeds the sieve limit");
        const SieveTables sieve(limit);
        const auto z = lambda_weighted_sum(sieve, seq, ls_alpha, ls_theta, ls_x);
        out << "x,re,im,modulus\n";
        print_row(out, {static_cast<double>(ls_x), z.real(), z.imag(), std::abs(z)});
        return 0;
    }
    if (res_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        const std::uint64_t limit = sieve_limit_from_env();
        if (res_x > limit) throw usage_error("x exceeds the sieve limit");
        const SieveTables sieve(limit);
        print_report(out, residue_counts(sieve, seq, res_x, res_a, res_m, res_mprime));
        return 0;
    }
    if (weyl_cmd->parsed()) {
        const SequenceDef seq = resolve_sequence(flags);
        const std::uint64_t limit = sieve_limit_from_env();
        if (weyl_x > limit) throw usage_error("x exceeds the sieve limit");
        const SieveTables sieve(limit);
        print_report(out, weyl_sums(sieve, seq, weyl_alpha, weyl_x, weyl_a, weyl_m, weyl_H));
        return 0;
    }
    throw usage_error("no subcommand given");
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const usage_error& e) {
        err << "digitseq: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "digitseq: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "digitseq: " << e.what() << '\n';
        return 2;
    } catch (const budget_error& e) {
        err << "digitseq: " << e.what() << '\n';
        return 3;
    } catch (const internal_error& e) {
        err << "digitseq: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "digitseq: " << e.what() << '\n';
        return 4;
    }
}

} // namespace digitseq
