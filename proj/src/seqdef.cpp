#include "digitseq/seqdef.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "digitseq/errors.hpp"
#include "digitseq/phase.hpp"
#include "digitseq/words.hpp"

namespace digitseq {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

struct Section {
    std::map<std::string, Entry> entries;
    std::vector<std::pair<std::string, Entry>> ordered;
    int line = 0;
    bool present = false;
};

[[noreturn]] void fail(const std::string& name, int line, const std::string& msg) {
    throw usage_error(name + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return {};
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& name, int line, const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) fail(name, line, "invalid integer '" + text + "'");
        return v;
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        fail(name, line, "invalid integer '" + text + "'");
    }
}

struct ParsedFile {
    Section sequence, g, initial, poly;

    Section* section(const std::string& title) {
        if (title == "sequence") return &sequence;
        if (title == "g") return &g;
        if (title == "initial") return &initial;
        if (title == "poly") return &poly;
        return nullptr;
    }
};

ParsedFile read_sections(std::istream& in, const std::string& name) {
    ParsedFile file;
    Section* current = nullptr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(name, lineno, "malformed section header");
            const std::string title = trim(line.substr(1, line.size() - 2));
            Section* s = file.section(title);
            if (!s) fail(name, lineno, "unknown section [" + title + "]");
            if (s->present) fail(name, lineno, "duplicate section [" + title + "]");
            s->present = true;
            s->line = lineno;
            current = s;
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(name, lineno, "expected 'key = value'");
        if (!current) fail(name, lineno, "entry outside of any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) fail(name, lineno, "empty key");
        if (current->entries.count(key)) fail(name, lineno, "duplicate key '" + key + "'");
        current->entries[key] = Entry{value, lineno};
        current->ordered.emplace_back(key, Entry{value, lineno});
    }
    return file;
}

const Entry* find(const Section& s, const std::string& key) {
    const auto it = s.entries.find(key);
    return it == s.entries.end() ? nullptr : &it->second;
}

void reject_section(const std::string& name, const Section& s, const std::string& title,
                    const std::string& kind) {
    if (s.present)
        fail(name, s.line, "section [" + title + "] is not allowed for kind=" + kind);
}

std::vector<long long> read_g_table(const std::string& name, const ParsedFile& file, int q,
                                    int beta, bool require_complete) {
    if (!file.g.present) fail(name, 1, "section [g] is required for this kind");
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), beta);
    std::vector<long long> g(size, 0);
    std::vector<char> seen(size, 0);
    for (const auto& [key, entry] : file.g.ordered) {
        Word w;
        try {
            w = parse_word(key, q);
        } catch (const usage_error& e) {
            fail(name, entry.line, e.what());
        }
        if (w.size() != beta) fail(name, entry.line, "wrong word length (expected beta letters)");
        const std::uint64_t v = word_value(w);
        g[v] = parse_int(name, entry.line, entry.value);
        seen[v] = 1;
    }
    if (require_complete)
        for (std::uint64_t v = 0; v < size; ++v)
            if (!seen[v])
                fail(name, file.g.line,
                     "missing g entry for word " + word_to_string(word_from_value(v, beta, q)));
    return g;
}

std::vector<long long> read_initial_table(const std::string& name, const ParsedFile& file, int q,
                                          int beta) {
    const std::uint64_t size = upow(static_cast<std::uint64_t>(q), beta - 1);
    std::vector<long long> initial(size, 0);
    if (!file.initial.present) return initial;
    for (const auto& [key, entry] : file.initial.ordered) {
        const long long n = parse_int(name, entry.line, key);
        if (n < 0 || static_cast<std::uint64_t>(n) >= size)
            fail(name, entry.line, "initial index out of range [0, q^(beta-1))");
        initial[static_cast<std::uint64_t>(n)] = parse_int(name, entry.line, entry.value);
    }
    return initial;
}

} // namespace

SequenceDef parse_seqdef_text(std::istream& in, const std::string& name) {
    ParsedFile file = read_sections(in, name);
    if (!file.sequence.present) fail(name, 1, "missing [sequence] section");
    const Section& hdr = file.sequence;

    const Entry* qe = find(hdr, "q");
    if (!qe) fail(name, hdr.line, "missing 'q'");
    const long long q = parse_int(name, qe->line, qe->value);
    if (q < 2 || q > 64) fail(name, qe->line, "q must be in [2, 64]");

    const Entry* ke = find(hdr, "kind");
    if (!ke) fail(name, hdr.line, "missing 'kind'");
    const std::string kind = ke->value;

    const Entry* be = find(hdr, "beta");
    const auto beta_given = [&](int required) {
        if (be) {
            const long long b = parse_int(name, be->line, be->value);
            if (b != required)
                fail(name, be->line, "beta must be " + std::to_string(required) + " for this kind");
        }
        return required;
    };
    const auto beta_required = [&]() -> int {
        if (!be) fail(name, hdr.line, "missing 'beta'");
        const long long b = parse_int(name, be->line, be->value);
        if (b < 2 || b > 12) fail(name, be->line, "beta must be in [2, 12]");
        return static_cast<int>(b);
    };

    const auto no_tables = [&]() {
        reject_section(name, file.g, "g", kind);
        reject_section(name, file.initial, "initial", kind);
        reject_section(name, file.poly, "poly", kind);
    };

    const int iq = static_cast<int>(q);
    if (kind == "table") {
        const int beta = beta_required();
        reject_section(name, file.poly, "poly", kind);
        auto g = read_g_table(name, file, iq, beta, /*require_complete=*/true);
        auto initial = read_initial_table(name, file, iq, beta);
        return make_table(iq, beta, std::move(g), std::move(initial));
    }
    if (kind == "rudin-shapiro") {
        no_tables();
        beta_given(2);
        return make_rudin_shapiro(iq);
    }
    if (kind == "beta-delta") {
        no_tables();
        const Entry* de = find(hdr, "delta");
        if (!de) fail(name, hdr.line, "missing 'delta'");
        const long long delta = parse_int(name, de->line, de->value);
        if (delta < 1 || delta > 11) fail(name, de->line, "delta must be in [1, 11]");
        beta_given(static_cast<int>(delta) + 1);
        return make_beta_delta(iq, static_cast<int>(delta));
    }
    if (kind == "b-d") {
        no_tables();
        const Entry* de = find(hdr, "d");
        if (!de) fail(name, hdr.line, "missing 'd'");
        const long long d = parse_int(name, de->line, de->value);
        if (d < 1 || d > 11) fail(name, de->line, "d must be in [1, 11]");
        beta_given(static_cast<int>(d) + 1);
        return make_b_d(iq, static_cast<int>(d));
    }
    if (kind == "block-additive" || kind == "block-additive-finite") {
        reject_section(name, file.initial, "initial", kind);
        reject_section(name, file.poly, "poly", kind);
        const int beta = beta_required();
        auto g = read_g_table(name, file, iq, beta, /*require_complete=*/false);
        if (kind == "block-additive") {
            if (g[0] != 0)
                fail(name, file.g.line, "block-additive requires g(0...0) = 0");
            return make_block_additive(iq, beta, g);
        }
        return make_block_additive_finite(iq, beta, g);
    }
    if (kind == "occurrence") {
        no_tables();
        const Entry* blocks_entry = find(hdr, "blocks");
        if (!blocks_entry) fail(name, hdr.line, "missing 'blocks'");
        std::vector<Word> blocks;
        std::stringstream ss(blocks_entry->value);
        std::string tok;
        while (std::getline(ss, tok, iq <= 10 ? ',' : ' ')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            try {
                blocks.push_back(parse_word(tok, iq));
            } catch (const usage_error& e) {
                fail(name, blocks_entry->line, e.what());
            }
        }
        if (blocks.empty()) fail(name, blocks_entry->line, "no blocks given");
        const int k = blocks.front().size();
        for (const Word& b : blocks)
            if (b.size() != k) fail(name, blocks_entry->line, "blocks must all have one length");
        if (k < 2) fail(name, blocks_entry->line, "blocks must have length at least 2");
        if (be) beta_given(k);
        return make_occurrence(iq, blocks);
    }
    if (kind == "digit-polynomial") {
        reject_section(name, file.g, "g", kind);
        reject_section(name, file.initial, "initial", kind);
        const int beta = beta_required();
        if (!file.poly.present) fail(name, 1, "section [poly] is required for kind=digit-polynomial");
        DigitPolynomial poly;
        poly.k = beta - 1;
        for (const auto& [key, entry] : file.poly.ordered) {
            PolyTerm term;
            std::stringstream ss(key);
            std::string tok;
            while (std::getline(ss, tok, ',')) {
                tok = trim(tok);
                const long long e = parse_int(name, entry.line, tok);
                if (e < 0 || e > 16) fail(name, entry.line, "exponent out of range [0, 16]");
                term.exps.push_back(static_cast<int>(e));
            }
            if (static_cast<int>(term.exps.size()) != beta)
                fail(name, entry.line, "each term needs beta comma-separated exponents");
            term.coeff = parse_int(name, entry.line, entry.value);
            poly.terms.push_back(std::move(term));
        }
        return make_digit_polynomial(iq, poly);
    }
    fail(name, ke->line, "unknown kind '" + kind + "'");
}

SequenceDef parse_seqdef(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open sequence definition '" + path + "'");
    return parse_seqdef_text(in, path);
}

} // namespace digitseq
