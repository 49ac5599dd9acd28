#include "digitwalk/measures.hpp"
#include "digitwalk/scanner.hpp"
#include "digitwalk/span_dist.hpp"
#include "digitwalk/trees.hpp"
#include "digitwalk/verify.hpp"
#include "digitwalk/words.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace digitwalk;
using nlohmann::json;

unsigned env_workers() {
  if (const char* s = std::getenv("DIGITWALK_WORKERS"))
    return static_cast<unsigned>(std::strtoul(s, nullptr, 10));
  return 0;
}

std::uint64_t env_memory_budget_bytes() {
  if (const char* s = std::getenv("DIGITWALK_MEM_MIB"))
    return std::strtoull(s, nullptr, 10) * 1024 * 1024;
  return 0;
}

// Data goes to stdout unless --emit names a file; diagnostics to stderr.
void write_output(const std::string& path, const std::string& data) {
  if (path.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write to " + path);
  out << data;
}

json span_dist_json(const SpanDist& d) {
  json j;
  j["min_offset"] = d.min_offset();
  j["exponent"] = d.exponent();
  json arr = json::array();
  for (const BigInt& n : d.numerators()) arr.push_back(n.str());
  j["numerators"] = std::move(arr);
  return j;
}

json dyadic_json(const Dyadic& v) {
  return json{{"numerator", v.numerator().str()},
              {"exponent", v.exponent()}};
}

std::uint64_t resolve_t(const std::string& word_text, std::uint64_t t_flag) {
  if (!word_text.empty() && t_flag != 0)
    throw CLI::ValidationError("pass either --word or --t, not both");
  if (!word_text.empty()) return word_to_odd(Word::parse(word_text));
  if (t_flag == 0)
    throw CLI::ValidationError("one of --word or --t is required");
  return t_flag;
}

struct DistArgs {
  std::string word;
  std::uint64_t t = 0;
  std::string format = "json";
  std::string emit;
};

int run_dist(const DistArgs& args) {
  std::uint64_t t = resolve_t(args.word, args.t);
  std::uint64_t odd = t;
  while ((odd & 1u) == 0) odd >>= 1;
  auto p = p_of(t);
  if (args.format == "csv") {
    write_output(args.emit, to_csv_string(*p));
    return 0;
  }
  json report;
  report["t"] = t;
  report["word"] = odd == 1 ? "bottom" : odd_to_word(odd).str();
  report["P"] = span_dist_json(*p);
  report["variance"] = rational_string(variance(*p));
  report["V"] = rational_string(tail_nonneg(*p).to_rational());
  MuView mu = mu_window(odd);
  json window = json::array();
  for (int d = mu.lo; d <= mu.hi; ++d) {
    json row = dyadic_json(mu.window[static_cast<std::size_t>(d - mu.lo)]);
    row["d"] = d;
    window.push_back(std::move(row));
  }
  report["mu_window"] = std::move(window);
  report["mu_tail_coeff"] = dyadic_json(mu.tail_coefficient);
  write_output(args.emit, report.dump(2) + "\n");
  return 0;
}

struct ScanArgs {
  std::uint64_t max = 0;
  unsigned workers = 0;
  std::string emit;
  std::string format = "csv";
  std::string checkpoint;
  std::string asserts;
  std::string table;
  unsigned stop_after_level = 0;
  std::uint64_t mem_mib = 0;
  bool quiet = false;
};

int run_scan(const ScanArgs& args) {
  ScanOptions options;
  options.max_t = args.max;
  options.workers = args.workers != 0 ? args.workers : env_workers();
  options.memory_budget_bytes = args.mem_mib != 0
                                    ? args.mem_mib * 1024 * 1024
                                    : env_memory_budget_bytes();
  options.checkpoint_path = args.checkpoint;
  options.stop_after_level = args.stop_after_level;
  if (!args.quiet)
    options.progress = [](unsigned level, unsigned top, std::uint64_t count) {
      std::cerr << "scan: level " << level << "/" << top << " (" << count
                << " odd values)\n";
    };

  std::ofstream emit_file;
  std::ostream* emit = nullptr;
  if (!args.emit.empty()) {
    emit_file.open(args.emit, std::ios::binary | std::ios::trunc);
    if (!emit_file) throw std::runtime_error("cannot write to " + args.emit);
    emit = &emit_file;
  }
  bool csv = args.format == "csv";
  if (emit && csv)
    (*emit) << "t,word_length,first_letter,exponent,v_numerator,"
               "variance_numerator,is_minimizer\n";
  if (emit) {
    options.sink = [emit, csv](const ScanRecord& r) {
      if (csv) {
        (*emit) << r.t << ',' << r.word_length << ',' << r.first_letter << ','
                << r.exponent << ',' << r.v_numerator << ','
                << r.variance_numerator << ',' << (r.is_minimizer ? 1 : 0)
                << '\n';
      } else {
        json row{{"t", r.t},
                 {"word_length", r.word_length},
                 {"first_letter", std::string(1, r.first_letter)},
                 {"exponent", r.exponent},
                 {"v_numerator", r.v_numerator},
                 {"variance_numerator", r.variance_numerator},
                 {"is_minimizer", r.is_minimizer}};
        (*emit) << row.dump() << '\n';
      }
    };
  }

  ScanSummary summary = scan(options);

  if (!args.table.empty()) {
    std::ofstream table_out(args.table, std::ios::binary | std::ios::trunc);
    if (!table_out) throw std::runtime_error("cannot write to " + args.table);
    emit_minimizer_table(summary.minimizers, table_out,
                         csv ? TableFormat::csv : TableFormat::json);
  }

  json out;
  out["max"] = summary.max_t;
  out["records"] = summary.records;
  out["minimizer_count"] = summary.minimizers.size();
  out["minimizers"] = summary.minimizers;
  out["median_violations"] = summary.median_violations;
  out["asymmetry_violations"] = summary.asymmetry_violations;
  out["peak_store_bytes"] = summary.peak_store_bytes;
  out["store_bound_bytes"] = summary.store_bound_bytes;
  out["completed_level"] = summary.completed_level;
  out["top_level"] = summary.top_level;
  out["cell_bits"] = summary.cell_bits;
  out["finished"] = summary.finished;
  std::cout << out.dump(2) << "\n";

  int rc = 0;
  std::stringstream wanted(args.asserts);
  std::string name;
  while (std::getline(wanted, name, ',')) {
    if (name == "median") {
      if (summary.median_violations != 0) {
        std::cerr << "assert median: " << summary.median_violations
                  << " violations\n";
        rc = 1;
      }
    } else if (name == "asymmetry") {
      if (summary.asymmetry_violations != 0) {
        std::cerr << "assert asymmetry: " << summary.asymmetry_violations
                  << " violations\n";
        rc = 1;
      }
    } else if (!name.empty()) {
      throw CLI::ValidationError("unknown assertion: " + name);
    }
  }
  return rc;
}

struct VerifyArgs {
  std::string suite = "all";
  unsigned max_len = 0;  // 0 = per-suite default
  unsigned max_k = 30;
  unsigned chains = 100;
  unsigned chain_length = 30;
  std::uint64_t seed = 1;
  std::uint64_t max_t = 4096;
};

int run_verify(const VerifyArgs& args) {
  std::vector<verify::SuiteReport> reports;
  auto want = [&](const std::string& name) {
    return args.suite == "all" || args.suite == name;
  };
  auto len_or = [&](unsigned dflt) {
    return args.max_len != 0 ? args.max_len : dflt;
  };
  if (want("codec")) reports.push_back(verify::codec(len_or(20)));
  if (want("symmetries")) reports.push_back(verify::symmetries(len_or(12)));
  if (want("variance"))
    reports.push_back(verify::variance_bounds(len_or(12), args.max_k));
  if (want("support")) reports.push_back(verify::support(len_or(12)));
  if (want("oracle")) reports.push_back(verify::oracle(len_or(12)));
  if (want("wald")) reports.push_back(verify::wald(len_or(12)));
  if (want("peacock"))
    reports.push_back(
        verify::peacock(args.chains, args.chain_length, args.seed));
  if (want("stabilization"))
    reports.push_back(verify::stabilization(len_or(10), len_or(8), 8));
  if (want("deconvolution"))
    reports.push_back(verify::deconvolution(args.max_t));
  if (reports.empty())
    throw CLI::ValidationError("unknown suite: " + args.suite);

  int rc = 0;
  for (const auto& report : reports) {
    std::cout << report.name << ": " << (report.ok() ? "ok" : "FAILED")
              << " (" << report.checks << " checks, " << report.failures
              << " failures)\n";
    for (const auto& note : report.notes) std::cout << "  " << note << "\n";
    if (!report.ok()) rc = 1;
  }
  return rc;
}

struct SimulateArgs {
  std::string word;
  std::uint64_t t = 0;
  std::uint64_t count = 1000000;
  std::uint64_t seed = 1;
  unsigned workers = 0;
  std::string emit;
};

int run_simulate(const SimulateArgs& args) {
  std::uint64_t t = resolve_t(args.word, args.t);
  PlanarTree tree = tree_of_odd(t);
  unsigned workers = args.workers != 0 ? args.workers : env_workers();
  SampleSummary summary = sample_stopped(tree, args.count, args.seed, workers);
  json out = json::parse(to_json_string(summary));
  out["t"] = t;
  if (tree.height() <= 30) {
    SpanDist exact = enumerate_distribution(tree);
    double tv = 0.0;
    for (int d = exact.min_offset() - 1; d <= exact.max_offset() + 1; ++d) {
      double p = exact.mass(d).to_double();
      auto it = summary.counts.find(d);
      double q = it == summary.counts.end()
                     ? 0.0
                     : static_cast<double>(it->second) /
                           static_cast<double>(summary.count);
      tv += std::abs(p - q);
    }
    out["tv_to_exact"] = tv / 2.0;
    out["exact_variance"] = rational_string(variance(exact));
  }
  write_output(args.emit, out.dump(2) + "\n");
  return 0;
}

struct LimitArgs {
  std::string word;
  std::string steps = "auto";
  std::string emit;
};

int run_limit(const LimitArgs& args) {
  Word v = Word::parse(args.word);
  unsigned steps;
  bool analytic = args.steps == "auto";
  if (analytic) {
    steps = static_cast<unsigned>(v.count_r()) + 2;
  } else {
    try {
      std::size_t used = 0;
      steps = static_cast<unsigned>(std::stoul(args.steps, &used));
      if (used != args.steps.size()) throw std::invalid_argument(args.steps);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--steps must be a number or 'auto'");
    }
  }
  SpanDist p = limit_iterate(v, steps);
  json out;
  out["word"] = v.str();
  out["steps"] = steps;
  out["steps_mode"] = analytic ? "auto" : "explicit";
  Word grown = v.append(Letter::R).concat(Word::repeat(Letter::L, steps));
  out["t"] = word_to_odd(grown);
  out["P"] = span_dist_json(p);
  out["V"] = rational_string(tail_nonneg(p).to_rational());
  if (analytic)
    out["mu_nonneg_mass"] =
        rational_string(mu_nonneg_mass(v).to_rational());
  write_output(args.emit, out.dump(2) + "\n");
  return 0;
}

struct EmpiricalArgs {
  std::uint64_t t = 1;
  std::uint64_t n = std::uint64_t(1) << 22;
  std::string format = "json";
  std::string emit;
};

int run_empirical(const EmpiricalArgs& args) {
  if (args.t == 0) throw CLI::ValidationError("--t must be >= 1");
  auto counts = empirical_frequency(args.t, args.n);
  auto p = p_of(args.t);
  double max_abs_diff = 0.0;
  int lo = std::min(counts.begin()->first, p->min_offset() - 1);
  int hi = std::max(counts.rbegin()->first, p->max_offset() + 1);

  std::ostringstream csv;
  json rows = json::array();
  csv << "d,count,frequency,mu,abs_diff\n";
  for (int d = lo; d <= hi; ++d) {
    auto it = counts.find(d);
    std::uint64_t count = it == counts.end() ? 0 : it->second;
    double freq =
        static_cast<double>(count) / static_cast<double>(args.n);
    Dyadic mu = mu_value(*p, d);
    double diff = std::abs(freq - mu.to_double());
    max_abs_diff = std::max(max_abs_diff, diff);
    if (args.format == "csv") {
      csv << d << ',' << count << ',' << freq << ',' << mu.to_string() << ','
          << diff << '\n';
    } else {
      rows.push_back({{"d", d},
                      {"count", count},
                      {"frequency", freq},
                      {"mu", mu.to_string()},
                      {"abs_diff", diff}});
    }
  }
  if (args.format == "csv") {
    write_output(args.emit, csv.str());
    std::cerr << "empirical: max_abs_diff = " << max_abs_diff << "\n";
  } else {
    json out;
    out["t"] = args.t;
    out["n"] = args.n;
    out["rows"] = std::move(rows);
    out["max_abs_diff"] = max_abs_diff;
    write_output(args.emit, out.dump(2) + "\n");
  }
  return 0;
}

struct CltArgs {
  unsigned n = 10;
  std::string emit;
};

int run_clt(const CltArgs& args) {
  auto p = p_of(Word::alternating(args.n));
  json out;
  out["n"] = args.n;
  out["variance"] = rational_string(variance(*p));
  out["distance"] = clt_probe(args.n);
  write_output(args.emit, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "digitwalk: exact binary digit-sum difference measures, their "
      "stopped-walk trees, and the large-scale tail-mass scan"};
  app.require_subcommand(1);
  int rc = 0;

  DistArgs dist_args;
  auto* dist = app.add_subcommand(
      "dist", "Exact distribution report for one word or integer");
  dist->add_option("--word", dist_args.word, "word over {L,R}, or 'eps'");
  dist->add_option("--t", dist_args.t, "integer key (>= 1)");
  dist->add_option("--format", dist_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  dist->add_option("--emit", dist_args.emit, "output file (default stdout)");
  dist->callback([&] { rc = run_dist(dist_args); });

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand(
      "scan", "Exact tail-mass scan over every odd t up to a bound");
  scan_cmd->add_option("--max", scan_args.max, "largest t to scan (>= 3)")
      ->required();
  scan_cmd->add_option("--workers", scan_args.workers,
                       "worker threads (default: hardware)");
  scan_cmd->add_option("--emit", scan_args.emit, "write per-t records here");
  scan_cmd->add_option("--format", scan_args.format,
                       "csv|json for records and table")
      ->check(CLI::IsMember({"csv", "json"}));
  scan_cmd->add_option("--checkpoint", scan_args.checkpoint,
                       "checkpoint file (resumes if present)");
  scan_cmd->add_option("--assert", scan_args.asserts,
                       "comma list of median,asymmetry");
  scan_cmd->add_option("--table", scan_args.table,
                       "write the minimizer table here");
  scan_cmd->add_option("--stop-after-level", scan_args.stop_after_level,
                       "stop once this bit-length level completes");
  scan_cmd->add_option("--mem-mib", scan_args.mem_mib,
                       "memory budget in MiB (0 = unlimited)");
  scan_cmd->add_flag("--quiet", scan_args.quiet, "suppress progress lines");
  scan_cmd->callback([&] { rc = run_scan(scan_args); });

  VerifyArgs verify_args;
  auto* verify_cmd =
      app.add_subcommand("verify", "Run a verification suite");
  verify_cmd->add_option("--suite", verify_args.suite,
                         "codec|symmetries|variance|support|oracle|wald|"
                         "peacock|stabilization|deconvolution|all");
  verify_cmd->add_option("--max-len", verify_args.max_len,
                         "word length bound for exhaustive suites "
                         "(0 = per-suite default)");
  verify_cmd->add_option("--max-k", verify_args.max_k,
                         "closed-form length bound");
  verify_cmd->add_option("--chains", verify_args.chains,
                         "pseudorandom chains for the convex-order suite");
  verify_cmd->add_option("--chain-length", verify_args.chain_length,
                         "length of each chain");
  verify_cmd->add_option("--seed", verify_args.seed, "chain seed");
  verify_cmd->add_option("--max-t", verify_args.max_t,
                         "bound for the deconvolution suite");
  verify_cmd->callback([&] { rc = run_verify(verify_args); });

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand(
      "simulate", "Monte Carlo sample of the stopped walk");
  sim->add_option("--word", sim_args.word, "word over {L,R}, or 'eps'");
  sim->add_option("--t", sim_args.t, "integer key (>= 1)");
  sim->add_option("--count", sim_args.count, "number of samples");
  sim->add_option("--seed", sim_args.seed, "RNG seed");
  sim->add_option("--workers", sim_args.workers, "worker threads");
  sim->add_option("--emit", sim_args.emit, "output file (default stdout)");
  sim->callback([&] { rc = run_simulate(sim_args); });

  LimitArgs limit_args;
  auto* limit = app.add_subcommand(
      "limit", "Closed-form growth iterate and its stabilized tail mass");
  limit->add_option("--word", limit_args.word, "word over {L,R}, or 'eps'")
      ->required();
  limit->add_option("--steps", limit_args.steps,
                    "trailing growth steps, or 'auto' for the stabilization "
                    "point");
  limit->add_option("--emit", limit_args.emit, "output file");
  limit->callback([&] { rc = run_limit(limit_args); });

  EmpiricalArgs emp_args;
  auto* emp = app.add_subcommand(
      "empirical", "Digit-difference frequencies counted directly");
  emp->add_option("--t", emp_args.t, "shift t (>= 1)")->required();
  emp->add_option("--n", emp_args.n, "count over n < this bound");
  emp->add_option("--format", emp_args.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  emp->add_option("--emit", emp_args.emit, "output file");
  emp->callback([&] { rc = run_empirical(emp_args); });

  CltArgs clt_args;
  auto* clt = app.add_subcommand(
      "clt", "Normal-approximation distance for the alternating word");
  clt->add_option("--n", clt_args.n, "alternating word length")->required();
  clt->add_option("--emit", clt_args.emit, "output file");
  clt->callback([&] { rc = run_clt(clt_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
