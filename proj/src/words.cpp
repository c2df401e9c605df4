#include "digitseq/words.hpp"

#include <algorithm>
#include <stdexcept>

#include "digitseq/errors.hpp"
#include "digitseq/phase.hpp"

namespace digitseq {

Word::Word(std::vector<int> ls, int q) : letters(std::move(ls)), base(q) {
    if (q < 2) throw usage_error("word base must be at least 2");
    for (int l : letters)
        if (l < 0 || l >= q)
            throw usage_error("letter " + std::to_string(l) + " out of range for base " +
                              std::to_string(q));
}

int Word::letter(int i) const {
    if (i < 0 || i >= size()) throw std::out_of_range("letter index out of range");
    return letters[letters.size() - 1 - static_cast<std::size_t>(i)];
}

std::uint64_t word_value(const Word& w) {
    std::uint64_t v = 0;
    for (int l : w.letters) v = v * static_cast<std::uint64_t>(w.base) + static_cast<std::uint64_t>(l);
    return v;
}

Word prefix(const Word& w, int k) {
    if (k < 0 || k > w.size()) throw std::out_of_range("prefix size out of range");
    Word r;
    r.base = w.base;
    r.letters.assign(w.letters.begin(), w.letters.begin() + k);
    return r;
}

Word suffix(const Word& w, int k) {
    if (k < 0 || k > w.size()) throw std::out_of_range("suffix size out of range");
    Word r;
    r.base = w.base;
    r.letters.assign(w.letters.end() - k, w.letters.end());
    return r;
}

std::pair<Word, Word> split(const Word& w, int k) {
    if (k < 0 || k > w.size()) throw std::out_of_range("split position out of range");
    return {prefix(w, w.size() - k), suffix(w, k)};
}

Word concat(const Word& a, const Word& b) {
    if (a.base != b.base) throw usage_error("cannot concatenate words of different bases");
    Word r;
    r.base = a.base;
    r.letters.reserve(a.letters.size() + b.letters.size());
    r.letters.insert(r.letters.end(), a.letters.begin(), a.letters.end());
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
}

Word prepend(int letter, const Word& w) {
    if (letter < 0 || letter >= w.base) throw usage_error("letter out of range");
    Word r;
    r.base = w.base;
    r.letters.reserve(w.letters.size() + 1);
    r.letters.push_back(letter);
    r.letters.insert(r.letters.end(), w.letters.begin(), w.letters.end());
    return r;
}

Word append(const Word& w, int letter) {
    if (letter < 0 || letter >= w.base) throw usage_error("letter out of range");
    Word r = w;
    r.letters.push_back(letter);
    return r;
}

Word word_from_value(std::uint64_t value, int length, int q) {
    if (q < 2) throw usage_error("word base must be at least 2");
    Word r;
    r.base = q;
    r.letters.assign(static_cast<std::size_t>(length), 0);
    for (int i = length - 1; i >= 0; --i) {
        r.letters[static_cast<std::size_t>(i)] = static_cast<int>(value % static_cast<std::uint64_t>(q));
        value /= static_cast<std::uint64_t>(q);
    }
    if (value != 0) throw std::out_of_range("value does not fit in the requested word length");
    return r;
}

std::string word_to_string(const Word& w) {
    std::string s;
    if (w.base <= 10) {
        for (int l : w.letters) s.push_back(static_cast<char>('0' + l));
    } else {
        for (std::size_t i = 0; i < w.letters.size(); ++i) {
            if (i) s.push_back(',');
            s += std::to_string(w.letters[i]);
        }
    }
    return s;
}

Word parse_word(const std::string& s, int q) {
    Word r;
    r.base = q;
    if (q < 2) throw usage_error("word base must be at least 2");
    if (s.empty()) return r;
    if (q <= 10) {
        for (char c : s) {
            if (c < '0' || c > '9') throw usage_error("invalid letter '" + std::string(1, c) + "'");
            int l = c - '0';
            if (l >= q) throw usage_error("letter out of range for base " + std::to_string(q));
            r.letters.push_back(l);
        }
    } else {
        std::size_t pos = 0;
        while (pos <= s.size()) {
            std::size_t comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            if (tok.empty()) throw usage_error("empty letter in word '" + s + "'");
            int l = 0;
            try {
                l = std::stoi(tok);
            } catch (const std::exception&) {
                throw usage_error("invalid letter '" + tok + "'");
            }
            if (l < 0 || l >= q) throw usage_error("letter out of range for base " + std::to_string(q));
            r.letters.push_back(l);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return r;
}

WordEnum::WordEnum(int q, int beta) : q_(q), beta_(beta) {
    if (q < 2) throw usage_error("base must be at least 2");
    if (beta < 2) throw usage_error("window length must be at least 2");
    offsets_.assign(static_cast<std::size_t>(beta) + 1, 0);
    std::uint64_t count = 0;
    for (int len = 0; len <= beta - 1; ++len) {
        offsets_[static_cast<std::size_t>(len)] = static_cast<int>(count);
        count += upow(static_cast<std::uint64_t>(q), len);
        if (count > (1u << 24)) throw budget_error("word enumeration too large");
    }
    offsets_[static_cast<std::size_t>(beta)] = static_cast<int>(count);
    dim_ = static_cast<int>(count);
    table_.reserve(static_cast<std::size_t>(dim_));
    for (int len = 0; len <= beta - 1; ++len) {
        const std::uint64_t n = upow(static_cast<std::uint64_t>(q), len);
        for (std::uint64_t v = 0; v < n; ++v) table_.push_back(word_from_value(v, len, q));
    }
}

int WordEnum::offset(int len) const {
    if (len < 0 || len > beta_) throw std::out_of_range("length out of range");
    return offsets_[static_cast<std::size_t>(len)];
}

const Word& WordEnum::word(int index) const {
    if (index < 0 || index >= dim_) throw std::out_of_range("word index out of range");
    return table_[static_cast<std::size_t>(index)];
}

int WordEnum::index(const Word& w) const {
    if (w.base != q_) throw usage_error("word base does not match enumeration");
    if (w.size() > beta_ - 1) throw std::out_of_range("word too long for enumeration");
    // Within a fixed length, left-to-right lexicographic order coincides with
    // numeric order of the word value.
    return offsets_[static_cast<std::size_t>(w.size())] + static_cast<int>(word_value(w));
}

} // namespace digitseq
