// Words in the free semigroup on n generators and the graded basis of P^(m).
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncft {

constexpr int kMaxGenerators = 9;

class Word {
public:
    Word() = default;
    explicit Word(std::vector<std::uint8_t> letters);
    Word(std::initializer_list<int> letters);

    // "" is the empty word g_0, "121" is g_1 g_2 g_1.  Letters must lie in 1..n.
    static Word parse(std::string_view s, int n);

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<std::uint8_t>& letters() const { return letters_; }
    int max_letter() const;

    std::string str() const;

    Word operator+(const Word& other) const;
    Word prepend(int i) const;
    Word append(int i) const;
    Word prefix(std::size_t len) const;
    Word suffix(std::size_t len) const;

    // graded order: shorter words first, then lexicographic
    std::strong_ordering operator<=>(const Word& other) const;
    bool operator==(const Word& other) const = default;

private:
    std::vector<std::uint8_t> letters_;
};

Word reverse(const Word& w);

// sigma with omega = sigma gamma and sigma nonempty
std::optional<Word> right_quotient(const Word& omega, const Word& gamma);
// sigma with omega = gamma sigma and sigma nonempty
std::optional<Word> left_quotient(const Word& omega, const Word& gamma);

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

// All words of length <= maxDeg in graded-lex order.  Positions are computed
// arithmetically, so lookups do not need a hash table.
class GradedBasis {
public:
    GradedBasis(int n, int maxDeg);

    int n() const { return n_; }
    int max_degree() const { return maxDeg_; }
    std::size_t size() const { return words_.size(); }
    const Word& word_at(std::size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }

    // position of w; w must have length <= maxDeg and letters in 1..n
    std::size_t index(const Word& w) const;
    std::optional<std::size_t> find(const Word& w) const;

    // first position of degree k, and number of words of degree k
    std::size_t degree_offset(int k) const { return offsets_[k]; }
    std::size_t degree_count(int k) const { return offsets_[k + 1] - offsets_[k]; }
    int degree_of(std::size_t i) const { return degrees_[i]; }
    std::size_t rank_in_degree(std::size_t i) const { return i - offsets_[degrees_[i]]; }
    std::size_t power(int k) const { return powers_[k]; }

    // index of g_i w and of w g_i; nullopt when the result leaves the basis
    std::optional<std::size_t> prepend_index(int i, std::size_t idx) const;
    std::optional<std::size_t> append_index(std::size_t idx, int i) const;

private:
    int n_;
    int maxDeg_;
    std::vector<Word> words_;
    std::vector<std::size_t> offsets_;   // size maxDeg + 2
    std::vector<std::size_t> powers_;    // n^k
    std::vector<int> degrees_;
};

GradedBasis enumerate(int n, int m);

}  // namespace ncft
