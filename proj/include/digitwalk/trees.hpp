#pragma once

#include "digitwalk/span_dist.hpp"
#include "digitwalk/words.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace digitwalk {

/// One simulated walk, stopped by a tree.
struct WalkSample {
  std::vector<int> steps;  // the consumed ±1 steps, stop_index of them
  unsigned stop_index = 0;
  int terminal = 0;  // sum of the consumed steps
};

struct SampleSummary {
  std::map<int, std::uint64_t> counts;  // terminal value -> occurrences
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased sample variance
};

/// Full planar binary tree. Immutable; building a grown tree shares the
/// untouched subtrees of its predecessor, so construction along a word is
/// linear in the word length.
class PlanarTree {
 public:
  PlanarTree() = default;  // leaf

  static PlanarTree leaf() { return PlanarTree(); }
  static PlanarTree node(const PlanarTree& left, const PlanarTree& right);

  bool is_leaf() const { return impl_ == nullptr; }
  PlanarTree left() const;
  PlanarTree right() const;

  /// Height: 0 for a leaf, 1 + max of children otherwise.
  unsigned height() const { return impl_ ? impl_->h : 0; }

  bool operator==(const PlanarTree& other) const;
  bool operator!=(const PlanarTree& other) const { return !(*this == other); }

 private:
  struct Impl {
    std::shared_ptr<const Impl> l, r;
    unsigned h;
  };
  explicit PlanarTree(std::shared_ptr<const Impl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;

  friend SpanDist enumerate_distribution(const PlanarTree&);
  friend Rational expected_stop(const PlanarTree&);
  friend unsigned stopping_time(const PlanarTree&, std::span<const int>);
  friend WalkSample sample_walk(const PlanarTree&, std::uint64_t,
                                std::uint64_t);
  friend SampleSummary sample_stopped(const PlanarTree&, std::uint64_t,
                                      std::uint64_t, unsigned);
};

/// The tree grown along w: starting from the two-leaf tree, each letter
/// replaces one subtree by a copy of the whole current tree (L grows the
/// left side, R the right) while the other subtree is kept intact.
PlanarTree tree_of(const Word& w);

/// Integer-keyed variant: t = 1 gives the bare leaf, odd t >= 3 the tree of
/// its word; even t reduces to its odd part first.
PlanarTree tree_of_odd(std::uint64_t t);

/// Descend the tree along the path (-1 = left, +1 = right) and return the
/// number of steps until a leaf. Throws if the path is exhausted first.
unsigned stopping_time(const PlanarTree& tree, std::span<const int> path);

/// Exact law of the walk value at the stopping time: every root-to-leaf
/// descent of the unfolded tree contributes 2^-depth at its walk offset.
/// Heights above 30 exceed the exact-enumeration budget and are rejected.
SpanDist enumerate_distribution(const PlanarTree& tree);

/// Expected number of steps, exact; equals the variance of the enumerated
/// law.
Rational expected_stop(const PlanarTree& tree);

/// Bracket rendering, e.g. "[[•,•],•]".
std::string to_bracket(const PlanarTree& tree);

/// Indented text outline for docs and logs.
std::string to_outline(const PlanarTree& tree);

/// Deterministic sample `index` of the stream identified by `seed`. The
/// generator is SplitMix64 seeded with mix64(seed ^ mix64(index + 1)); each
/// output supplies 64 walk steps, bit 0 first (0 = left, 1 = right).
WalkSample sample_walk(const PlanarTree& tree, std::uint64_t seed,
                       std::uint64_t index);

/// Monte Carlo summary of `count` stopped walks. Samples are indexed, so the
/// result is identical for any worker count; workers = 0 picks a hardware
/// default.
SampleSummary sample_stopped(const PlanarTree& tree, std::uint64_t count,
                             std::uint64_t seed, unsigned workers = 0);

std::string to_json_string(const SampleSummary& summary);

}  // namespace digitwalk
