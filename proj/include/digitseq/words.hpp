#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace digitseq {

/// A finite word over the alphabet {0,...,q-1}.
///
/// Letters are stored most-significant first, while letter(i) reads from the
/// right: letter(0) is the last letter. Both directions appear in the digit
/// identities, so the convention is fixed here once.
struct Word {
    std::vector<int> letters;
    int base = 2;

    Word() = default;
    Word(std::vector<int> ls, int q);

    int size() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    /// i-th letter counted from the right; letter(size()-1) is the leading letter.
    int letter(int i) const;

    bool operator==(const Word& other) const = default;
};

/// Numeric value sum_i letter(i) * q^i. The empty word maps to 0.
std::uint64_t word_value(const Word& w);

/// Prefix of size k (leftmost k letters).
Word prefix(const Word& w, int k);

/// Suffix of size k (rightmost k letters).
Word suffix(const Word& w, int k);

/// (prefix of size |w|-k, suffix of size k); concatenating the parts gives w back.
std::pair<Word, Word> split(const Word& w, int k);

Word concat(const Word& a, const Word& b);
Word prepend(int letter, const Word& w);
Word append(const Word& w, int letter);

/// The length-`length` word whose value is `value` (leading zeros included).
Word word_from_value(std::uint64_t value, int length, int q);

/// Plain digit string for q <= 10, comma-separated integers for q > 10.
std::string word_to_string(const Word& w);
Word parse_word(const std::string& s, int q);

/// Bijection between {0,...,D-1} and the words of length at most beta-1,
/// ordered by size first and left-to-right lexicographically within a size.
/// Index 0 is the empty word and D = (q^beta - 1)/(q - 1).
class WordEnum {
public:
    WordEnum(int q, int beta);

    int base() const { return q_; }
    int beta() const { return beta_; }
    int size() const { return dim_; }

    /// First index of the words of length len.
    int offset(int len) const;

    const Word& word(int index) const;
    int index(const Word& w) const;

private:
    int q_;
    int beta_;
    int dim_;
    std::vector<Word> table_;
    std::vector<int> offsets_;
};

} // namespace digitseq
