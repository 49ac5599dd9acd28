#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace digitwalk {

enum class Letter : unsigned char { L = 0, R = 1 };

/// Finite word over {L, R}, stored as packed bits (L=0, R=1) with an explicit
/// length. The empty word is written "eps" in all textual interfaces.
class Word {
 public:
  Word() = default;

  /// Parses "L"/"R" strings; "eps" (and "") give the empty word.
  static Word parse(std::string_view text);

  /// The length-n word whose i-th letter is bit i of `mask` (0=L, 1=R).
  static Word from_mask(std::uint64_t mask, unsigned length);

  static Word repeat(Letter letter, std::size_t n);

  /// LRLR... of length n.
  static Word alternating(std::size_t n);

  std::size_t length() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  Letter at(std::size_t i) const;

  Word append(Letter letter) const;
  Word concat(const Word& other) const;
  Word prefix(std::size_t n) const;

  std::size_t count_l() const;
  std::size_t count_r() const;

  /// Number of maximal single-letter runs; undefined (throws) on the empty
  /// word.
  std::size_t block_count() const;

  /// Letter-swap (L <-> R) and reversal; both are involutions and commute.
  Word bar() const;
  Word reversed() const;

  std::string str() const;

  bool operator==(const Word& other) const { return bits_ == other.bits_; }
  bool operator!=(const Word& other) const { return !(*this == other); }

 private:
  std::vector<bool> bits_;
};

/// Word -> odd integer codec: the binary digits of the result are a leading
/// 1, the letters (L=0, R=1) in order, and a trailing 1. The empty word maps
/// to 3. Words longer than 62 letters do not fit a 64-bit integer and are
/// rejected.
std::uint64_t word_to_odd(const Word& w);

/// Inverse codec. Rejects even inputs and t < 3 (t = 1 is the order's bottom
/// and carries no word).
Word odd_to_word(std::uint64_t t);

/// The odd integer of the length-n prefix of w, extended by the conventions
/// n = -1 -> 1 and n = 0 -> 3. Rejects n beyond the available letters.
std::uint64_t chain_prefix(const Word& w, long long n);

}  // namespace digitwalk
