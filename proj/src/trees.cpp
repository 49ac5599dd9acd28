#include "digitwalk/trees.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace digitwalk {

namespace {

constexpr unsigned kEnumerationBudget = 30;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    return mix64(state);
  }
};

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64{mix64(seed ^ mix64(index + 1))};
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

PlanarTree PlanarTree::node(const PlanarTree& left, const PlanarTree& right) {
  auto impl = std::make_shared<Impl>();
  impl->l = left.impl_;
  impl->r = right.impl_;
  impl->h = 1 + std::max(left.height(), right.height());
  return PlanarTree(std::move(impl));
}

PlanarTree PlanarTree::left() const {
  if (!impl_) throw std::logic_error("PlanarTree::left on a leaf");
  return PlanarTree(impl_->l);
}

PlanarTree PlanarTree::right() const {
  if (!impl_) throw std::logic_error("PlanarTree::right on a leaf");
  return PlanarTree(impl_->r);
}

bool PlanarTree::operator==(const PlanarTree& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  if (impl_->h != other.impl_->h) return false;
  return PlanarTree(impl_->l) == PlanarTree(other.impl_->l) &&
         PlanarTree(impl_->r) == PlanarTree(other.impl_->r);
}

PlanarTree tree_of(const Word& w) {
  PlanarTree t = PlanarTree::node(PlanarTree::leaf(), PlanarTree::leaf());
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (w.at(i) == Letter::L)
      t = PlanarTree::node(t, t.right());
    else
      t = PlanarTree::node(t.left(), t);
  }
  return t;
}

PlanarTree tree_of_odd(std::uint64_t t) {
  if (t == 0) throw std::invalid_argument("tree_of_odd: t must be >= 1");
  while ((t & 1u) == 0) t >>= 1;
  if (t == 1) return PlanarTree::leaf();
  return tree_of(odd_to_word(t));
}

unsigned stopping_time(const PlanarTree& tree, std::span<const int> path) {
  const PlanarTree::Impl* node = tree.impl_.get();
  unsigned steps = 0;
  while (node != nullptr) {
    if (steps >= path.size())
      throw std::invalid_argument("stopping_time: path too short");
    int step = path[steps];
    if (step == -1)
      node = node->l.get();
    else if (step == 1)
      node = node->r.get();
    else
      throw std::invalid_argument("stopping_time: path entries must be ±1");
    ++steps;
  }
  return steps;
}

SpanDist enumerate_distribution(const PlanarTree& tree) {
  unsigned h = tree.height();
  if (h > kEnumerationBudget)
    throw std::invalid_argument(
        "enumerate_distribution: tree height exceeds the exact budget (30)");
  std::vector<BigInt> acc(2 * h + 1);
  // Every descent of the unfolded tree lands on a leaf at some depth d and
  // walk offset; it carries weight 2^-d, accumulated here at exponent h.
  auto walk = [&](auto&& self, const PlanarTree::Impl* node, int offset,
                  unsigned depth) -> void {
    if (node == nullptr) {
      acc[static_cast<std::size_t>(offset + static_cast<int>(h))] +=
          BigInt(1) << (h - depth);
      return;
    }
    self(self, node->l.get(), offset - 1, depth + 1);
    self(self, node->r.get(), offset + 1, depth + 1);
  };
  walk(walk, tree.impl_.get(), 0, 0);
  std::size_t first = 0, last = acc.size() - 1;
  while (acc[first].is_zero()) ++first;
  while (acc[last].is_zero()) --last;
  std::vector<BigInt> nums(acc.begin() + static_cast<long>(first),
                           acc.begin() + static_cast<long>(last + 1));
  return SpanDist(static_cast<int>(first) - static_cast<int>(h), h,
                  std::move(nums));
}

Rational expected_stop(const PlanarTree& tree) {
  unsigned h = tree.height();
  if (h > kEnumerationBudget)
    throw std::invalid_argument(
        "expected_stop: tree height exceeds the exact budget (30)");
  BigInt acc = 0;
  auto walk = [&](auto&& self, const PlanarTree::Impl* node,
                  unsigned depth) -> void {
    if (node == nullptr) {
      acc += BigInt(depth) << (h - depth);
      return;
    }
    self(self, node->l.get(), depth + 1);
    self(self, node->r.get(), depth + 1);
  };
  walk(walk, tree.impl_.get(), 0);
  return Rational(acc, BigInt(1) << h);
}

std::string to_bracket(const PlanarTree& tree) {
  if (tree.is_leaf()) return "•";
  return "[" + to_bracket(tree.left()) + "," + to_bracket(tree.right()) + "]";
}

namespace {
void outline_rec(const PlanarTree& tree, unsigned depth, std::string& out) {
  out.append(2 * depth, ' ');
  if (tree.is_leaf()) {
    out += "•\n";
    return;
  }
  out += "[]\n";
  outline_rec(tree.left(), depth + 1, out);
  outline_rec(tree.right(), depth + 1, out);
}
}  // namespace

std::string to_outline(const PlanarTree& tree) {
  std::string out;
  outline_rec(tree, 0, out);
  return out;
}

WalkSample sample_walk(const PlanarTree& tree, std::uint64_t seed,
                       std::uint64_t index) {
  SplitMix64 rng = sample_stream(seed, index);
  WalkSample sample;
  const PlanarTree::Impl* node = tree.impl_.get();
  std::uint64_t buf = 0;
  unsigned bits_left = 0;
  while (node != nullptr) {
    if (bits_left == 0) {
      buf = rng.next();
      bits_left = 64;
    }
    int step = (buf & 1u) ? 1 : -1;
    buf >>= 1;
    --bits_left;
    sample.steps.push_back(step);
    sample.terminal += step;
    node = step == -1 ? node->l.get() : node->r.get();
  }
  sample.stop_index = static_cast<unsigned>(sample.steps.size());
  return sample;
}

SampleSummary sample_stopped(const PlanarTree& tree, std::uint64_t count,
                             std::uint64_t seed, unsigned workers) {
  if (count == 0)
    throw std::invalid_argument("sample_stopped: count must be >= 1");
  unsigned n_workers = resolve_workers(workers);
  if (static_cast<std::uint64_t>(n_workers) > count)
    n_workers = static_cast<unsigned>(count);

  std::vector<std::map<int, std::uint64_t>> partial(n_workers);
  auto run = [&](unsigned worker) {
    std::uint64_t lo = count * worker / n_workers;
    std::uint64_t hi = count * (worker + 1) / n_workers;
    auto& local = partial[worker];
    const PlanarTree::Impl* root = tree.impl_.get();
    for (std::uint64_t j = lo; j < hi; ++j) {
      SplitMix64 rng = sample_stream(seed, j);
      const PlanarTree::Impl* node = root;
      int offset = 0;
      std::uint64_t buf = 0;
      unsigned bits_left = 0;
      while (node != nullptr) {
        if (bits_left == 0) {
          buf = rng.next();
          bits_left = 64;
        }
        if (buf & 1u) {
          ++offset;
          node = node->r.get();
        } else {
          --offset;
          node = node->l.get();
        }
        buf >>= 1;
        --bits_left;
      }
      ++local[offset];
    }
  };

  if (n_workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  SampleSummary summary;
  summary.count = count;
  summary.seed = seed;
  for (auto& local : partial)
    for (auto& [value, c] : local) summary.counts[value] += c;

  long long sum = 0, sum_sq = 0;
  for (auto& [value, c] : summary.counts) {
    sum += static_cast<long long>(value) * static_cast<long long>(c);
    sum_sq += static_cast<long long>(value) * value *
              static_cast<long long>(c);
  }
  double n = static_cast<double>(count);
  summary.mean = static_cast<double>(sum) / n;
  if (count > 1)
    summary.variance =
        (static_cast<double>(sum_sq) - n * summary.mean * summary.mean) /
        (n - 1.0);
  return summary;
}

std::string to_json_string(const SampleSummary& summary) {
  nlohmann::json j;
  j["count"] = summary.count;
  j["seed"] = summary.seed;
  j["mean"] = summary.mean;
  j["variance"] = summary.variance;
  nlohmann::json counts = nlohmann::json::object();
  for (auto& [value, c] : summary.counts)
    counts[std::to_string(value)] = c;
  j["counts"] = std::move(counts);
  return j.dump();
}

}  // namespace digitwalk
