#include "ncft/word.hpp"

#include <algorithm>

#include "ncft/errors.hpp"

namespace ncft {

Word::Word(std::vector<std::uint8_t> letters) : letters_(std::move(letters)) {
    for (auto c : letters_)
        if (c < 1 || c > kMaxGenerators) throw InputError("word letter out of range 1..9");
}

Word::Word(std::initializer_list<int> letters) {
    letters_.reserve(letters.size());
    for (int c : letters) {
        if (c < 1 || c > kMaxGenerators) throw InputError("word letter out of range 1..9");
        letters_.push_back(static_cast<std::uint8_t>(c));
    }
}

Word Word::parse(std::string_view s, int n) {
    if (n < 1 || n > kMaxGenerators) throw InputError("generator count must be in 1..9");
    std::vector<std::uint8_t> out;
    out.reserve(s.size());
    for (char ch : s) {
        int c = ch - '0';
        if (c < 1 || c > n)
            throw InputError("invalid word \"" + std::string(s) + "\" for n = " + std::to_string(n));
        out.push_back(static_cast<std::uint8_t>(c));
    }
    Word w;
    w.letters_ = std::move(out);
    return w;
}

int Word::max_letter() const {
    int m = 0;
    for (auto c : letters_) m = std::max<int>(m, c);
    return m;
}

std::string Word::str() const {
    std::string s;
    s.reserve(letters_.size());
    for (auto c : letters_) s.push_back(static_cast<char>('0' + c));
    return s;
}

Word Word::operator+(const Word& other) const {
    Word w;
    w.letters_ = letters_;
    w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
    return w;
}

Word Word::prepend(int i) const {
    Word w;
    w.letters_.reserve(size() + 1);
    w.letters_.push_back(static_cast<std::uint8_t>(i));
    w.letters_.insert(w.letters_.end(), letters_.begin(), letters_.end());
    return w;
}

Word Word::append(int i) const {
    Word w = *this;
    w.letters_.push_back(static_cast<std::uint8_t>(i));
    return w;
}

Word Word::prefix(std::size_t len) const {
    Word w;
    w.letters_.assign(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(len));
    return w;
}

Word Word::suffix(std::size_t len) const {
    Word w;
    w.letters_.assign(letters_.end() - static_cast<std::ptrdiff_t>(len), letters_.end());
    return w;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
    if (auto c = size() <=> other.size(); c != 0) return c;
    return letters_ <=> other.letters_;
}

Word reverse(const Word& w) {
    std::vector<std::uint8_t> r(w.letters().rbegin(), w.letters().rend());
    return Word(std::move(r));
}

std::optional<Word> right_quotient(const Word& omega, const Word& gamma) {
    if (omega.size() <= gamma.size()) return std::nullopt;
    if (!std::equal(gamma.letters().begin(), gamma.letters().end(),
                    omega.letters().end() - static_cast<std::ptrdiff_t>(gamma.size())))
        return std::nullopt;
    return omega.prefix(omega.size() - gamma.size());
}

std::optional<Word> left_quotient(const Word& omega, const Word& gamma) {
    if (omega.size() <= gamma.size()) return std::nullopt;
    if (!std::equal(gamma.letters().begin(), gamma.letters().end(), omega.letters().begin()))
        return std::nullopt;
    return omega.suffix(omega.size() - gamma.size());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto c : w.letters()) h = (h ^ c) * 1099511628211ULL;
    return h ^ w.size();
}

GradedBasis::GradedBasis(int n, int maxDeg) : n_(n), maxDeg_(maxDeg) {
    if (n < 1 || n > kMaxGenerators) throw InputError("generator count must be in 1..9");
    if (maxDeg < 0) throw InputError("degree must be nonnegative");
    powers_.assign(static_cast<std::size_t>(maxDeg) + 1, 1);
    for (int k = 1; k <= maxDeg; ++k) powers_[k] = powers_[k - 1] * static_cast<std::size_t>(n);
    offsets_.assign(static_cast<std::size_t>(maxDeg) + 2, 0);
    for (int k = 0; k <= maxDeg; ++k) offsets_[k + 1] = offsets_[k] + powers_[k];

    words_.reserve(offsets_.back());
    degrees_.reserve(offsets_.back());
    words_.emplace_back();
    degrees_.push_back(0);
    // degree k+1 words are the degree k words with every letter appended,
    // which keeps lexicographic order inside the block
    for (int k = 0; k < maxDeg; ++k) {
        for (std::size_t i = offsets_[k]; i < offsets_[k + 1]; ++i) {
            for (int c = 1; c <= n; ++c) {
                words_.push_back(words_[i].append(c));
                degrees_.push_back(k + 1);
            }
        }
    }
}

std::size_t GradedBasis::index(const Word& w) const {
    auto r = find(w);
    if (!r) throw InputError("word \"" + w.str() + "\" is not in the basis");
    return *r;
}

std::optional<std::size_t> GradedBasis::find(const Word& w) const {
    if (w.size() > static_cast<std::size_t>(maxDeg_)) return std::nullopt;
    std::size_t rank = 0;
    for (auto c : w.letters()) {
        if (c > n_) return std::nullopt;
        rank = rank * static_cast<std::size_t>(n_) + (c - 1u);
    }
    return offsets_[w.size()] + rank;
}

std::optional<std::size_t> GradedBasis::prepend_index(int i, std::size_t idx) const {
    int k = degrees_[idx];
    if (k >= maxDeg_) return std::nullopt;
    std::size_t rank = idx - offsets_[k];
    return offsets_[k + 1] + static_cast<std::size_t>(i - 1) * powers_[k] + rank;
}

std::optional<std::size_t> GradedBasis::append_index(std::size_t idx, int i) const {
    int k = degrees_[idx];
    if (k >= maxDeg_) return std::nullopt;
    std::size_t rank = idx - offsets_[k];
    return offsets_[k + 1] + rank * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i - 1);
}

GradedBasis enumerate(int n, int m) { return GradedBasis(n, m); }

}  // namespace ncft
