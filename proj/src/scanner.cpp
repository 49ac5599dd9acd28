#include "digitwalk/scanner.hpp"

#include "digitwalk/words.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

namespace digitwalk {

namespace {

constexpr char kMagic[8] = {'D', 'W', 'S', 'C', 'A', 'N', '0', '1'};
constexpr std::uint32_t kCheckpointVersion = 1;

struct Fnv1a {
  std::uint64_t h = 1469598103934665603ull;
  void update(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= p[i];
      h *= 1099511628211ull;
    }
  }
};

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Per bit-length level: dense rows of mass numerators (one shared exponent)
// plus one variance numerator per odd t. Rows are exactly the tight support
// span, so width = bit length + 1.
template <typename Cell>
struct Level {
  std::uint64_t first_t = 0;
  std::uint64_t count = 0;
  std::uint32_t width = 0;
  std::uint32_t exponent = 0;
  std::vector<Cell> masses;  // count * width
  std::vector<Cell> varnum;  // count

  std::uint64_t bytes() const {
    return (masses.size() + varnum.size()) * sizeof(Cell);
  }
};

inline int row_min_offset(std::uint64_t t) {
  // Tight lower support bound: -(count of L letters + 1).
  unsigned m = static_cast<unsigned>(std::bit_width(t));
  return static_cast<int>(std::popcount(t)) - static_cast<int>(m) - 1;
}

template <typename Cell>
class LevelStore {
 public:
  LevelStore(std::uint64_t max_odd, unsigned top) : levels_(top + 1) {
    for (unsigned m = 2; m <= top; ++m) {
      Level<Cell>& lv = levels_[m];
      lv.first_t = (std::uint64_t(1) << (m - 1)) + 1;
      std::uint64_t last = std::min((std::uint64_t(1) << m) - 1, max_odd);
      lv.count = (last - lv.first_t) / 2 + 1;
      lv.width = m + 1;
      lv.exponent = m - 1;
    }
  }

  Level<Cell>& at(unsigned m) { return levels_[m]; }
  const Level<Cell>& at(unsigned m) const { return levels_[m]; }

  void allocate(unsigned m) {
    Level<Cell>& lv = levels_[m];
    lv.masses.assign(lv.count * lv.width, Cell(0));
    lv.varnum.assign(lv.count, Cell(0));
  }

  struct Row {
    const Cell* cells;
    int min_offset;
    std::uint32_t width;
    std::uint32_t exponent;
    Cell var;
  };

  Row row(std::uint64_t p) const {
    if (p == 1) return Row{kUnitRow, 0, 1, 0, Cell(0)};
    unsigned m = static_cast<unsigned>(std::bit_width(p));
    const Level<Cell>& lv = levels_[m];
    std::uint64_t idx = (p - lv.first_t) >> 1;
    return Row{lv.masses.data() + idx * lv.width, row_min_offset(p), lv.width,
               lv.exponent, lv.varnum[idx]};
  }

 private:
  inline static const Cell kUnitRow[1] = {Cell(1)};
  std::vector<Level<Cell>> levels_;
};

template <typename Cell>
void compute_rows(LevelStore<Cell>& store, unsigned m, std::uint64_t lo_idx,
                  std::uint64_t hi_idx) {
  Level<Cell>& lv = store.at(m);
  const unsigned exponent = lv.exponent;
  for (std::uint64_t idx = lo_idx; idx < hi_idx; ++idx) {
    std::uint64_t t = lv.first_t + 2 * idx;
    std::uint64_t s = (t - 1) >> 1;
    std::uint64_t a = s + 1;
    a >>= std::countr_zero(a);
    std::uint64_t b = s;
    b >>= std::countr_zero(b);
    auto ra = store.row(a);
    auto rb = store.row(b);
    unsigned sha = exponent - 1 - ra.exponent;
    unsigned shb = exponent - 1 - rb.exponent;
    int min_offset = row_min_offset(t);
    Cell* out = lv.masses.data() + idx * lv.width;
    // Half of the left parent shifted one left, half of the right parent
    // shifted one right; the halves are absorbed into the exponent step.
    long base_a = ra.min_offset - 1 - min_offset;
    assert(base_a >= 0 && base_a + ra.width <= lv.width);
    for (std::uint32_t i = 0; i < ra.width; ++i)
      out[base_a + i] += ra.cells[i] << sha;
    long base_b = rb.min_offset + 1 - min_offset;
    assert(base_b >= 0 && base_b + rb.width <= lv.width);
    for (std::uint32_t i = 0; i < rb.width; ++i)
      out[base_b + i] += rb.cells[i] << shb;
    lv.varnum[idx] =
        (ra.var << sha) + (rb.var << shb) + (Cell(1) << exponent);
  }
}

template <typename Cell>
ScanRecord make_record(const LevelStore<Cell>& store, unsigned m,
                       std::uint64_t idx) {
  const Level<Cell>& lv = store.at(m);
  std::uint64_t t = lv.first_t + 2 * idx;
  const Cell* cells = lv.masses.data() + idx * lv.width;
  int min_offset = row_min_offset(t);
  std::uint64_t vnum = 0;
  for (std::uint32_t i = static_cast<std::uint32_t>(-min_offset);
       i < lv.width; ++i)
    vnum += static_cast<std::uint64_t>(cells[i]);
  ScanRecord rec;
  rec.t = t;
  rec.word_length = m - 2;
  rec.first_letter = m == 2 ? '-' : (((t >> (m - 2)) & 1u) ? 'R' : 'L');
  rec.v_numerator = vnum;
  rec.variance_numerator = static_cast<std::uint64_t>(lv.varnum[idx]);
  rec.exponent = lv.exponent;
  rec.is_minimizer = (vnum == (std::uint64_t(1) << (m - 2)));
  return rec;
}

struct Accumulated {
  std::uint64_t records = 0;
  std::vector<std::uint64_t> minimizers;
  std::uint64_t median_violations = 0;
  std::uint64_t asymmetry_violations = 0;
};

template <typename Cell>
void emit_level(const LevelStore<Cell>& store, unsigned m, Accumulated& acc,
                const std::function<void(const ScanRecord&)>& sink) {
  const Level<Cell>& lv = store.at(m);
  const std::uint64_t half = std::uint64_t(1) << (m - 2);
  for (std::uint64_t idx = 0; idx < lv.count; ++idx) {
    ScanRecord rec = make_record(store, m, idx);
    ++acc.records;
    if (rec.is_minimizer) acc.minimizers.push_back(rec.t);
    if (rec.v_numerator < half) ++acc.median_violations;
    if (rec.first_letter == 'L' && rec.v_numerator <= half)
      ++acc.asymmetry_violations;
    if (sink) sink(rec);
  }
}

void write_bytes(std::ostream& out, Fnv1a& hash, const void* data,
                 std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
  hash.update(data, n);
}

template <typename T>
void write_pod(std::ostream& out, Fnv1a& hash, const T& value) {
  write_bytes(out, hash, &value, sizeof(T));
}

void read_bytes(std::istream& in, Fnv1a& hash, void* data, std::size_t n) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (!in) throw ScanCheckpointError("checkpoint: truncated file");
  hash.update(data, n);
}

template <typename T>
void read_pod(std::istream& in, Fnv1a& hash, T& value) {
  read_bytes(in, hash, &value, sizeof(T));
}

template <typename Cell>
void save_checkpoint(const std::string& path, std::uint64_t max_t,
                     unsigned completed, const LevelStore<Cell>& store,
                     const Accumulated& acc) {
  std::string tmp = path + ".tmp";
  std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
  if (!out) throw ScanError("checkpoint: cannot write " + tmp);

  // Header placeholder; hashes are patched in after the payload is known.
  char header[56];
  std::memset(header, 0, sizeof(header));
  out.write(header, sizeof(header));

  Fnv1a payload_hash;
  std::uint64_t payload_size = 0;
  auto count_and_write = [&](const void* data, std::size_t n) {
    write_bytes(out, payload_hash, data, n);
    payload_size += n;
  };
  auto put_u64 = [&](std::uint64_t v) { count_and_write(&v, sizeof(v)); };

  put_u64(acc.records);
  put_u64(acc.median_violations);
  put_u64(acc.asymmetry_violations);
  put_u64(acc.minimizers.size());
  if (!acc.minimizers.empty())
    count_and_write(acc.minimizers.data(),
                    acc.minimizers.size() * sizeof(std::uint64_t));
  for (unsigned m = 2; m <= completed; ++m) {
    const Level<Cell>& lv = store.at(m);
    put_u64(lv.count);
    std::uint32_t meta[2] = {lv.width, lv.exponent};
    count_and_write(meta, sizeof(meta));
    count_and_write(lv.masses.data(), lv.masses.size() * sizeof(Cell));
    count_and_write(lv.varnum.data(), lv.varnum.size() * sizeof(Cell));
  }
  if (!out) throw ScanError("checkpoint: write failed for " + tmp);

  std::uint32_t cell_bits = sizeof(Cell) * 8;
  std::uint32_t completed32 = completed;
  std::uint32_t flags = 0;
  std::memcpy(header, kMagic, 8);
  std::memcpy(header + 8, &kCheckpointVersion, 4);
  std::memcpy(header + 12, &cell_bits, 4);
  std::memcpy(header + 16, &max_t, 8);
  std::memcpy(header + 24, &completed32, 4);
  std::memcpy(header + 28, &flags, 4);
  std::memcpy(header + 32, &payload_size, 8);
  std::memcpy(header + 40, &payload_hash.h, 8);
  Fnv1a header_hash;
  header_hash.update(header, 48);
  std::memcpy(header + 48, &header_hash.h, 8);
  out.seekp(0);
  out.write(header, sizeof(header));
  out.close();
  if (!out) throw ScanError("checkpoint: write failed for " + tmp);
  std::filesystem::rename(tmp, path);
}

struct CheckpointHeader {
  std::uint32_t cell_bits = 0;
  std::uint64_t max_t = 0;
  unsigned completed = 0;
  std::uint64_t payload_size = 0;
  std::uint64_t payload_hash = 0;
};

CheckpointHeader read_checkpoint_header(std::istream& in) {
  char header[56];
  in.read(header, sizeof(header));
  if (!in) throw ScanCheckpointError("checkpoint: truncated header");
  if (std::memcmp(header, kMagic, 8) != 0)
    throw ScanCheckpointError("checkpoint: bad magic");
  std::uint32_t version = 0;
  std::memcpy(&version, header + 8, 4);
  if (version != kCheckpointVersion)
    throw ScanCheckpointError("checkpoint: version mismatch");
  std::uint64_t stored_header_hash = 0;
  std::memcpy(&stored_header_hash, header + 48, 8);
  Fnv1a header_hash;
  header_hash.update(header, 48);
  if (header_hash.h != stored_header_hash)
    throw ScanCheckpointError("checkpoint: header checksum mismatch");
  CheckpointHeader h;
  std::uint32_t completed32 = 0;
  std::memcpy(&h.cell_bits, header + 12, 4);
  std::memcpy(&h.max_t, header + 16, 8);
  std::memcpy(&completed32, header + 24, 4);
  std::memcpy(&h.payload_size, header + 32, 8);
  std::memcpy(&h.payload_hash, header + 40, 8);
  h.completed = completed32;
  return h;
}

template <typename Cell>
unsigned load_checkpoint(const std::string& path, std::uint64_t max_t,
                         LevelStore<Cell>& store, Accumulated& acc) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScanError("checkpoint: cannot read " + path);
  CheckpointHeader h = read_checkpoint_header(in);
  if (h.cell_bits != sizeof(Cell) * 8)
    throw ScanCheckpointError("checkpoint: cell width mismatch");
  if (h.max_t != max_t)
    throw ScanCheckpointError(
        "checkpoint: created for a different scan bound");

  Fnv1a payload_hash;
  auto get_u64 = [&](std::uint64_t& v) { read_pod(in, payload_hash, v); };
  get_u64(acc.records);
  get_u64(acc.median_violations);
  get_u64(acc.asymmetry_violations);
  std::uint64_t n_min = 0;
  get_u64(n_min);
  acc.minimizers.resize(n_min);
  if (n_min)
    read_bytes(in, payload_hash, acc.minimizers.data(),
               n_min * sizeof(std::uint64_t));
  for (unsigned m = 2; m <= h.completed; ++m) {
    Level<Cell>& lv = store.at(m);
    std::uint64_t count = 0;
    get_u64(count);
    std::uint32_t meta[2];
    read_bytes(in, payload_hash, meta, sizeof(meta));
    if (count != lv.count || meta[0] != lv.width || meta[1] != lv.exponent)
      throw ScanCheckpointError("checkpoint: level layout mismatch");
    lv.masses.resize(lv.count * lv.width);
    lv.varnum.resize(lv.count);
    read_bytes(in, payload_hash, lv.masses.data(),
               lv.masses.size() * sizeof(Cell));
    read_bytes(in, payload_hash, lv.varnum.data(),
               lv.varnum.size() * sizeof(Cell));
  }
  if (payload_hash.h != h.payload_hash)
    throw ScanCheckpointError("checkpoint: payload checksum mismatch");
  return h.completed;
}

template <typename Cell>
ScanSummary scan_impl(const ScanOptions& options, std::uint64_t max_odd,
                      unsigned top) {
  LevelStore<Cell> store(max_odd, top);
  Accumulated acc;

  std::uint64_t bound = 0;
  for (unsigned m = 2; m <= top; ++m)
    bound += store.at(m).count * (store.at(m).width + 1) * sizeof(Cell);

  unsigned start_level = 2;
  if (!options.checkpoint_path.empty() &&
      std::filesystem::exists(options.checkpoint_path))
    start_level =
        load_checkpoint(options.checkpoint_path, max_odd, store, acc) + 1;

  std::uint64_t resident = 0;
  for (unsigned m = 2; m < start_level; ++m) resident += store.at(m).bytes();

  unsigned workers = resolve_workers(options.workers);
  unsigned last_done = start_level - 1;
  for (unsigned m = start_level; m <= top; ++m) {
    Level<Cell>& lv = store.at(m);
    std::uint64_t level_bytes = lv.count * (lv.width + 1) * sizeof(Cell);
    if (options.memory_budget_bytes != 0 &&
        resident + level_bytes > options.memory_budget_bytes)
      throw ScanMemoryError(
          "scan: memory budget exceeded before level " + std::to_string(m) +
              " (completed through level " + std::to_string(m - 1) + ")",
          m - 1);
    if (options.progress) options.progress(m, top, lv.count);
    store.allocate(m);
    resident += lv.bytes();

    if (workers <= 1 || lv.count < 4096) {
      compute_rows(store, m, 0, lv.count);
    } else {
      unsigned n = workers;
      std::vector<std::thread> threads;
      threads.reserve(n);
      for (unsigned w = 0; w < n; ++w) {
        std::uint64_t lo = lv.count * w / n;
        std::uint64_t hi = lv.count * (w + 1) / n;
        threads.emplace_back([&store, m, lo, hi] {
          compute_rows(store, m, lo, hi);
        });
      }
      for (auto& th : threads) th.join();
    }

    emit_level(store, m, acc, options.sink);
    last_done = m;
    if (!options.checkpoint_path.empty())
      save_checkpoint(options.checkpoint_path, max_odd, m, store, acc);
    if (options.stop_after_level != 0 && m >= options.stop_after_level) break;
  }

  ScanSummary summary;
  summary.max_t = options.max_t;
  summary.records = acc.records;
  summary.minimizers = std::move(acc.minimizers);
  summary.median_violations = acc.median_violations;
  summary.asymmetry_violations = acc.asymmetry_violations;
  summary.peak_store_bytes = resident;
  summary.store_bound_bytes = bound;
  summary.completed_level = last_done;
  summary.top_level = top;
  summary.cell_bits = sizeof(Cell) * 8;
  summary.finished = last_done == top;
  return summary;
}

}  // namespace

ScanSummary scan(const ScanOptions& options) {
  if (options.max_t < 3) throw ScanError("scan: max must be >= 3");
  std::uint64_t max_odd = options.max_t | 1u;
  if (max_odd > options.max_t) max_odd -= 2;  // largest odd <= max
  unsigned top = static_cast<unsigned>(std::bit_width(max_odd));
  if (top > 62) throw ScanError("scan: max too large for 64-bit cells");
  // 32-bit cells hold every numerator up to bit length 26; beyond that the
  // variance numerators outgrow them.
  unsigned cell_bits = options.force_cell_bits;
  if (cell_bits == 0) cell_bits = top <= 26 ? 32 : 64;
  if (cell_bits == 32) {
    if (top > 26)
      throw ScanError("scan: 32-bit cells cannot reach this bound");
    return scan_impl<std::uint32_t>(options, max_odd, top);
  }
  if (cell_bits != 64)
    throw ScanError("scan: cell width must be 32 or 64");
  return scan_impl<std::uint64_t>(options, max_odd, top);
}

std::vector<std::uint64_t> find_minimizers(
    const std::vector<ScanRecord>& records) {
  std::vector<std::uint64_t> out;
  for (const ScanRecord& r : records)
    if (r.is_minimizer) out.push_back(r.t);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t count_median_violations(const std::vector<ScanRecord>& records) {
  std::uint64_t n = 0;
  for (const ScanRecord& r : records)
    if (r.v_numerator < (std::uint64_t(1) << (r.exponent - 1))) ++n;
  return n;
}

std::uint64_t count_asymmetry_violations(
    const std::vector<ScanRecord>& records) {
  std::uint64_t n = 0;
  for (const ScanRecord& r : records)
    if (r.first_letter == 'L' &&
        r.v_numerator <= (std::uint64_t(1) << (r.exponent - 1)))
      ++n;
  return n;
}

void emit_minimizer_table(const std::vector<std::uint64_t>& minimizers,
                          std::ostream& out, TableFormat format) {
  if (format == TableFormat::csv) {
    out << "word_length,t,word\n";
    for (std::uint64_t t : minimizers) {
      Word w = odd_to_word(t);
      out << w.length() << "," << t << "," << w.str() << "\n";
    }
    return;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint64_t t : minimizers) {
    Word w = odd_to_word(t);
    rows.push_back({{"word_length", w.length()},
                    {"t", t},
                    {"word", w.str()}});
  }
  out << rows.dump() << "\n";
}

}  // namespace digitwalk
