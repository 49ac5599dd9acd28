#include "digitwalk/words.hpp"

#include <bit>
#include <stdexcept>

namespace digitwalk {

Word Word::parse(std::string_view text) {
  Word w;
  if (text == "eps" || text.empty()) return w;
  w.bits_.reserve(text.size());
  for (char c : text) {
    if (c == 'L')
      w.bits_.push_back(false);
    else if (c == 'R')
      w.bits_.push_back(true);
    else
      throw std::invalid_argument("Word::parse: letters must be 'L' or 'R'");
  }
  return w;
}

Word Word::from_mask(std::uint64_t mask, unsigned length) {
  if (length > 64) throw std::invalid_argument("Word::from_mask: length > 64");
  Word w;
  w.bits_.reserve(length);
  for (unsigned i = 0; i < length; ++i) w.bits_.push_back((mask >> i) & 1u);
  return w;
}

Word Word::repeat(Letter letter, std::size_t n) {
  Word w;
  w.bits_.assign(n, letter == Letter::R);
  return w;
}

Word Word::alternating(std::size_t n) {
  Word w;
  w.bits_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) w.bits_.push_back(i % 2 == 1);
  return w;
}

Letter Word::at(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("Word::at");
  return bits_[i] ? Letter::R : Letter::L;
}

Word Word::append(Letter letter) const {
  Word w = *this;
  w.bits_.push_back(letter == Letter::R);
  return w;
}

Word Word::concat(const Word& other) const {
  Word w = *this;
  w.bits_.insert(w.bits_.end(), other.bits_.begin(), other.bits_.end());
  return w;
}

Word Word::prefix(std::size_t n) const {
  if (n > bits_.size()) throw std::out_of_range("Word::prefix");
  Word w;
  w.bits_.assign(bits_.begin(), bits_.begin() + static_cast<long>(n));
  return w;
}

std::size_t Word::count_r() const {
  std::size_t c = 0;
  for (bool b : bits_) c += b;
  return c;
}

std::size_t Word::count_l() const { return bits_.size() - count_r(); }

std::size_t Word::block_count() const {
  if (bits_.empty())
    throw std::invalid_argument("block_count: undefined on the empty word");
  std::size_t blocks = 1;
  for (std::size_t i = 1; i < bits_.size(); ++i)
    if (bits_[i] != bits_[i - 1]) ++blocks;
  return blocks;
}

Word Word::bar() const {
  Word w;
  w.bits_.reserve(bits_.size());
  for (bool b : bits_) w.bits_.push_back(!b);
  return w;
}

Word Word::reversed() const {
  Word w;
  w.bits_.assign(bits_.rbegin(), bits_.rend());
  return w;
}

std::string Word::str() const {
  if (bits_.empty()) return "eps";
  std::string s;
  s.reserve(bits_.size());
  for (bool b : bits_) s.push_back(b ? 'R' : 'L');
  return s;
}

std::uint64_t word_to_odd(const Word& w) {
  if (w.length() > 62)
    throw std::invalid_argument(
        "word_to_odd: words longer than 62 letters overflow 64 bits");
  std::uint64_t t = 1;
  for (std::size_t i = 0; i < w.length(); ++i)
    t = (t << 1) | (w.at(i) == Letter::R ? 1u : 0u);
  return (t << 1) | 1u;
}

Word odd_to_word(std::uint64_t t) {
  if ((t & 1u) == 0) throw std::invalid_argument("odd_to_word: t must be odd");
  if (t == 1)
    throw std::invalid_argument(
        "odd_to_word: t = 1 is the chain bottom and has no word");
  if (t < 3) throw std::invalid_argument("odd_to_word: t must be >= 3");
  unsigned width = static_cast<unsigned>(std::bit_width(t));
  unsigned len = width - 2;
  std::uint64_t mask = 0;
  for (unsigned i = 0; i < len; ++i)
    if ((t >> (width - 2 - i)) & 1u) mask |= std::uint64_t(1) << i;
  return Word::from_mask(mask, len);
}

std::uint64_t chain_prefix(const Word& w, long long n) {
  if (n == -1) return 1;
  if (n < -1 || static_cast<std::size_t>(n) > w.length())
    throw std::out_of_range("chain_prefix: index beyond available letters");
  return word_to_odd(w.prefix(static_cast<std::size_t>(n)));
}

}  // namespace digitwalk
