#pragma once

#include "digitwalk/dyadic.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace digitwalk {

/// One scanned odd t. V and the variance share the level exponent
/// (bit length of t minus one): V = v_numerator / 2^exponent and
/// variance = variance_numerator / 2^exponent.
struct ScanRecord {
  std::uint64_t t = 0;
  std::uint32_t word_length = 0;
  char first_letter = '-';  // 'L', 'R', or '-' for t = 3 (empty word)
  std::uint64_t v_numerator = 0;
  std::uint64_t variance_numerator = 0;
  std::uint32_t exponent = 0;
  bool is_minimizer = false;  // V == 1/2 exactly

  Dyadic v() const { return Dyadic(BigInt(v_numerator), exponent); }
  Rational variance() const {
    return Rational(BigInt(variance_numerator), BigInt(1) << exponent);
  }
};

struct ScanSummary {
  std::uint64_t max_t = 0;
  std::uint64_t records = 0;
  std::vector<std::uint64_t> minimizers;  // ascending
  std::uint64_t median_violations = 0;    // V < 1/2
  std::uint64_t asymmetry_violations = 0; // first letter L with V <= 1/2
  std::uint64_t peak_store_bytes = 0;     // resident distribution storage
  std::uint64_t store_bound_bytes = 0;    // per-level (count * (span+1) * cell) bound
  unsigned completed_level = 0;           // highest finished bit length
  unsigned top_level = 0;
  unsigned cell_bits = 0;
  bool finished = false;
};

struct ScanOptions {
  std::uint64_t max_t = 0;  // K, >= 3
  unsigned workers = 0;     // 0 = hardware default
  std::uint64_t memory_budget_bytes = 0;  // 0 = unlimited
  std::string checkpoint_path;    // load if present, save after each level
  unsigned stop_after_level = 0;  // 0 = run to completion
  unsigned force_cell_bits = 0;   // 0 = auto, else 32 or 64
  std::function<void(const ScanRecord&)> sink;  // ascending t
  std::function<void(unsigned level, unsigned top, std::uint64_t odd_count)>
      progress;
};

struct ScanError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ScanMemoryError : ScanError {
  unsigned level_reached;
  ScanMemoryError(const std::string& what, unsigned level)
      : ScanError(what), level_reached(level) {}
};
struct ScanCheckpointError : ScanError {
  using ScanError::ScanError;
};

/// Level-synchronous exact DP over every odd t in [3, K]. Records are
/// emitted in ascending t and are identical for any worker count. Cells are
/// 32-bit when K's bit length allows it, 64-bit otherwise.
ScanSummary scan(const ScanOptions& options);

/// Record-level reductions, equivalent to the summary fields.
std::vector<std::uint64_t> find_minimizers(
    const std::vector<ScanRecord>& records);
std::uint64_t count_median_violations(const std::vector<ScanRecord>& records);
std::uint64_t count_asymmetry_violations(
    const std::vector<ScanRecord>& records);

enum class TableFormat { csv, json };

/// Minimizer table with columns (word length, t, word); byte-stable for
/// identical inputs.
void emit_minimizer_table(const std::vector<std::uint64_t>& minimizers,
                          std::ostream& out, TableFormat format);

}  // namespace digitwalk
