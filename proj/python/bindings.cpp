#include "digitwalk/measures.hpp"
#include "digitwalk/scanner.hpp"
#include "digitwalk/span_dist.hpp"
#include "digitwalk/trees.hpp"
#include "digitwalk/words.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace digitwalk;

namespace {

py::object big_to_py(const BigInt& n) {
  // Arbitrary precision survives the trip through a decimal string.
  return py::module_::import("builtins").attr("int")(n.str());
}

py::object fraction(const Rational& r) {
  auto ctor = py::module_::import("fractions").attr("Fraction");
  return ctor(big_to_py(boost::multiprecision::numerator(r)),
              big_to_py(boost::multiprecision::denominator(r)));
}

py::object fraction(const Dyadic& d) { return fraction(d.to_rational()); }

py::dict masses_dict(const SpanDist& d) {
  py::dict out;
  for (int j = d.min_offset(); j <= d.max_offset(); ++j)
    if (!d.numerator(j).is_zero()) out[py::int_(j)] = fraction(d.mass(j));
  return out;
}

}  // namespace

PYBIND11_MODULE(_digitwalk, m) {
  m.doc() =
      "Exact distributions of binary digit-sum differences: the growth "
      "recursion, stopped-walk trees, and the odd-integer tail-mass scan.";

  py::class_<SpanDist>(m, "SpanDist")
      .def(py::init([](int min_offset, unsigned exponent,
                       const std::vector<std::string>& numerators) {
             std::vector<BigInt> nums;
             nums.reserve(numerators.size());
             for (const auto& s : numerators) nums.emplace_back(s);
             return SpanDist(min_offset, exponent, std::move(nums));
           }),
           py::arg("min_offset"), py::arg("exponent"), py::arg("numerators"))
      .def_property_readonly("min_offset", &SpanDist::min_offset)
      .def_property_readonly("max_offset", &SpanDist::max_offset)
      .def_property_readonly("exponent", &SpanDist::exponent)
      .def_property_readonly("numerators",
                             [](const SpanDist& d) {
                               py::list out;
                               for (const BigInt& n : d.numerators())
                                 out.append(big_to_py(n));
                               return out;
                             })
      .def("mass", [](const SpanDist& d, int j) { return fraction(d.mass(j)); },
           py::arg("d"))
      .def("masses", &masses_dict)
      .def("mean", [](const SpanDist& d) { return fraction(mean(d)); })
      .def("variance", [](const SpanDist& d) { return fraction(variance(d)); })
      .def("central_moment",
           [](const SpanDist& d, unsigned k) {
             return fraction(central_moment(d, k));
           })
      .def("tail_nonneg",
           [](const SpanDist& d) { return fraction(tail_nonneg(d)); })
      .def("tail_nonpos",
           [](const SpanDist& d) { return fraction(tail_nonpos(d)); })
      .def("support_bounds", [](const SpanDist& d) { return support_bounds(d); })
      .def("to_json", [](const SpanDist& d) { return to_json_string(d); })
      .def_static("from_json", &span_dist_from_json_string)
      .def("to_csv", [](const SpanDist& d) { return to_csv_string(d); })
      .def_static("from_csv", &span_dist_from_csv_string)
      .def("__eq__", [](const SpanDist& a, const SpanDist& b) { return a == b; })
      .def("__repr__", [](const SpanDist& d) {
        return "SpanDist(" + to_json_string(d) + ")";
      });

  m.def("shift", &shift, py::arg("dist"), py::arg("k"));
  m.def("phi", &phi, py::arg("left"), py::arg("right"));
  m.def("convolve", &convolve);
  m.def("reflect", &reflect);
  m.def("point", &SpanDist::point, py::arg("k"));

  m.def("word_to_odd",
        [](const std::string& w) { return word_to_odd(Word::parse(w)); });
  m.def("odd_to_word", [](std::uint64_t t) { return odd_to_word(t).str(); });
  m.def("bar",
        [](const std::string& w) { return Word::parse(w).bar().str(); });
  m.def("rev",
        [](const std::string& w) { return Word::parse(w).reversed().str(); });
  m.def("block_count",
        [](const std::string& w) { return Word::parse(w).block_count(); });
  m.def("letter_counts", [](const std::string& w) {
    Word word = Word::parse(w);
    return std::make_pair(word.count_l(), word.count_r());
  });
  m.def("chain_prefix", [](const std::string& w, long long n) {
    return chain_prefix(Word::parse(w), n);
  });
  m.def("alternating_word",
        [](std::size_t n) { return Word::alternating(n).str(); });

  m.def("binary_weight", &binary_weight);
  m.def("mu1_value", [](int k) { return fraction(mu1_value(k)); });
  m.def("p_of", [](std::uint64_t t) { return *p_of(t); }, py::arg("t"));
  m.def("p_of_word",
        [](const std::string& w) { return *p_of(Word::parse(w)); });
  m.def("mu_window",
        [](std::uint64_t t, int lo, int hi) {
          MuView view = mu_window(t, lo, hi);
          py::dict out;
          out["lo"] = view.lo;
          out["hi"] = view.hi;
          py::list window;
          for (const Dyadic& v : view.window) window.append(fraction(v));
          out["window"] = window;
          out["tail_coefficient"] = fraction(view.tail_coefficient);
          out["mass_below"] = fraction(view.mass_below);
          out["mass_above"] = fraction(view.mass_above);
          return out;
        },
        py::arg("t"), py::arg("lo"), py::arg("hi"))
  ;
  m.def("mu_value", [](std::uint64_t t, int d) {
    return fraction(mu_value(*p_of(t), d));
  });
  m.def("mu_nonneg_mass", [](std::uint64_t t) {
    return fraction(mu_nonneg_mass(t));
  });
  m.def("limit_iterate", [](const std::string& v, unsigned n) {
    return limit_iterate(Word::parse(v), n);
  });
  m.def("empirical_frequency", &empirical_frequency, py::arg("t"),
        py::arg("n_max"));
  m.def("clt_probe", &clt_probe, py::arg("n"));

  py::class_<PlanarTree>(m, "PlanarTree")
      .def_property_readonly("height", &PlanarTree::height)
      .def_property_readonly("is_leaf", &PlanarTree::is_leaf)
      .def("bracket", [](const PlanarTree& t) { return to_bracket(t); })
      .def("outline", [](const PlanarTree& t) { return to_outline(t); })
      .def("enumerate_distribution",
           [](const PlanarTree& t) { return enumerate_distribution(t); })
      .def("expected_stop",
           [](const PlanarTree& t) { return fraction(expected_stop(t)); })
      .def("stopping_time", [](const PlanarTree& t, std::vector<int> path) {
        return stopping_time(t, path);
      });

  m.def("tree_of",
        [](const std::string& w) { return tree_of(Word::parse(w)); });
  m.def("tree_of_odd", &tree_of_odd);
  m.def("sample_stopped",
        [](const PlanarTree& tree, std::uint64_t count, std::uint64_t seed,
           unsigned workers) {
          SampleSummary s = sample_stopped(tree, count, seed, workers);
          py::dict out;
          out["counts"] = s.counts;
          out["count"] = s.count;
          out["seed"] = s.seed;
          out["mean"] = s.mean;
          out["variance"] = s.variance;
          return out;
        },
        py::arg("tree"), py::arg("count"), py::arg("seed"),
        py::arg("workers") = 0);

  m.def("scan",
        [](std::uint64_t max_t, unsigned workers) {
          ScanOptions options;
          options.max_t = max_t;
          options.workers = workers;
          ScanSummary s = scan(options);
          py::dict out;
          out["max"] = s.max_t;
          out["records"] = s.records;
          out["minimizers"] = s.minimizers;
          out["median_violations"] = s.median_violations;
          out["asymmetry_violations"] = s.asymmetry_violations;
          out["peak_store_bytes"] = s.peak_store_bytes;
          out["cell_bits"] = s.cell_bits;
          return out;
        },
        py::arg("max_t"), py::arg("workers") = 0);
}
