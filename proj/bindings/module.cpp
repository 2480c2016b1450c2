#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "ddcrit/error.hpp"
#include "ddcrit/report.hpp"
#include "ddcrit/synth.hpp"

namespace py = pybind11;
using namespace ddc;

namespace {

std::vector<std::string> date_strings(const PriceSeries& s) {
  std::vector<std::string> out;
  out.reserve(s.dates.size());
  for (const Date& d : s.dates) out.push_back(format_date(d));
  return out;
}

PriceSeries make_series(const std::string& symbol,
                        const std::vector<std::string>& dates,
                        const std::vector<double>& closes,
                        const std::string& date_format) {
  PriceSeries s;
  s.symbol = symbol;
  s.closes = closes;
  s.dates.reserve(dates.size());
  for (const std::string& d : dates) s.dates.push_back(parse_date(d, date_format));
  s.validate();
  return s;
}

AnalysisConfig config_from_kwargs(int window_months, int window_days,
                                  const std::string& warmup,
                                  const std::string& depth_unit,
                                  bool include_incomplete, std::size_t min_segment,
                                  std::size_t min_tail, std::size_t bootstrap,
                                  std::uint64_t seed, const std::string& date_column,
                                  const std::string& close_column,
                                  const std::string& date_format, char delimiter) {
  AnalysisConfig cfg;
  if (window_days > 0) {
    cfg.window.mode = WindowMode::trading_days;
    cfg.window.span = window_days;
  } else {
    cfg.window.mode = WindowMode::calendar_months;
    cfg.window.span = window_months;
  }
  cfg.window.warmup = (warmup == "skip") ? Warmup::skip : Warmup::expanding;
  cfg.depth_unit = (depth_unit == "points") ? DepthUnit::points : DepthUnit::relative;
  cfg.include_incomplete = include_incomplete;
  cfg.min_segment = min_segment;
  cfg.min_tail = min_tail;
  cfg.bootstrap_trials = bootstrap;
  cfg.master_seed = seed;
  cfg.schema.date_column = date_column;
  cfg.schema.close_column = close_column;
  cfg.schema.date_format = date_format;
  cfg.schema.delimiter = delimiter;
  return cfg;
}

py::dict report_dict(const IndexReport& r) {
  py::dict d;
  d["symbol"] = r.symbol;
  const auto cols = report_columns(r);
  const char* names[] = {"N_tot", "N_sup", "N_inf", "pct_sup", "K_tot", "K_sup",
                         "K_inf", "x_max", "x_min", "R2",    "alpha", "sigma"};
  py::dict c;
  for (std::size_t i = 0; i < 12; ++i) c[names[i]] = cols[i];
  d["columns"] = c;
  py::dict stats;
  stats["N_r"] = r.series_stats.n_returns;
  stats["S_r"] = r.series_stats.stddev;
  stats["K_r"] = r.series_stats.excess_kurtosis;
  stats["first_date"] = format_date(r.series_stats.first_date);
  stats["last_date"] = format_date(r.series_stats.last_date);
  d["series_stats"] = stats;
  py::dict fit;
  fit["alpha"] = r.fit.alpha;
  fit["sigma"] = r.fit.sigma;
  fit["x_min"] = r.fit.x_min;
  fit["n_tail"] = r.fit.n_tail;
  fit["ks_distance"] = r.fit.ks_distance;
  if (r.fit.p_value) fit["p_value"] = *r.fit.p_value;
  d["fit"] = fit;
  py::dict reg;
  reg["slope"] = r.regression.slope;
  reg["intercept"] = r.regression.intercept;
  reg["r_squared"] = r.regression.r_squared;
  reg["degenerate"] = r.regression.degenerate;
  d["regression"] = reg;
  py::dict verdict;
  verdict["label"] = r.verdict.label == RegimeLabel::SelfOrganized ? "SelfOrganized"
                                                                   : "RandomWalkOnly";
  verdict["k_sup"] = r.verdict.k_sup;
  verdict["n_sup"] = r.verdict.n_sup;
  d["verdict"] = verdict;
  d["magnitudes"] = r.depths.magnitudes;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ddcrit, m) {
  m.doc() = "draw-down criticality analysis core";

  // translators run newest-first, so the base class goes in first
  py::register_exception<Error>(m, "DdcritError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<PriceSeries>(m, "PriceSeries")
      .def(py::init(&make_series), py::arg("symbol"), py::arg("dates"),
           py::arg("closes"), py::arg("date_format") = "%Y-%m-%d")
      .def_readonly("symbol", &PriceSeries::symbol)
      .def_property_readonly("dates", &date_strings)
      .def_readonly("closes", &PriceSeries::closes)
      .def("__len__", &PriceSeries::size);

  m.def("excess_kurtosis",
        [](const std::vector<double>& xs) { return excess_kurtosis(xs); },
        "Population excess kurtosis (Gaussian = 0)");
  m.def("log_returns",
        [](const PriceSeries& s) { return log_returns(s).values; });
  m.def("trailing_max",
        [](const PriceSeries& s, int months, int days) {
          WindowSpec w;
          if (days > 0) {
            w.mode = WindowMode::trading_days;
            w.span = days;
          } else {
            w.span = months;
          }
          return trailing_max(s, w);
        },
        py::arg("series"), py::arg("months") = 6, py::arg("days") = 0);
  m.def("mle_alpha",
        [](const std::vector<double>& tail, double x_min) {
          return mle_alpha(tail, x_min);
        });
  m.def("alpha_stderr", &alpha_stderr);
  m.def("ks_distance",
        [](const std::vector<double>& tail, double alpha, double x_min) {
          return ks_distance(tail, alpha, x_min);
        });
  m.def("gen_gbm",
        [](std::size_t n_days, double mu, double sigma, std::uint64_t seed,
           double start_price, const std::string& symbol) {
          return gen_gbm({n_days, mu, sigma, seed, start_price}, symbol);
        },
        py::arg("n_days"), py::arg("mu") = 0.0, py::arg("sigma") = 0.01,
        py::arg("seed") = 0, py::arg("start_price") = 100.0,
        py::arg("symbol") = "GBM");
  m.def("shuffle_returns", &shuffle_returns, py::arg("series"), py::arg("seed"));

  const auto analyze = [](const PriceSeries& s, int window_months, int window_days,
                          const std::string& warmup, const std::string& depth_unit,
                          bool include_incomplete, std::size_t min_segment,
                          std::size_t min_tail, std::size_t bootstrap,
                          std::uint64_t seed) {
    const AnalysisConfig cfg = config_from_kwargs(
        window_months, window_days, warmup, depth_unit, include_incomplete,
        min_segment, min_tail, bootstrap, seed, "date", "close", "%Y-%m-%d", ',');
    return report_dict(analyze_index(s, cfg));
  };
  m.def("analyze", analyze, py::arg("series"), py::arg("window_months") = 6,
        py::arg("window_days") = 0, py::arg("warmup") = "expanding",
        py::arg("depth_unit") = "relative", py::arg("include_incomplete") = false,
        py::arg("min_segment") = 20, py::arg("min_tail") = 10,
        py::arg("bootstrap") = 0, py::arg("seed") = 0,
        "Full pipeline on a series; returns a nested dict report");

  m.def("analyze_file",
        [analyze](const std::string& path, int window_months, int window_days,
                  const std::string& warmup, const std::string& depth_unit,
                  bool include_incomplete, std::size_t min_segment,
                  std::size_t min_tail, std::size_t bootstrap, std::uint64_t seed,
                  const std::string& date_column, const std::string& close_column,
                  const std::string& date_format, char delimiter) {
          std::ifstream in(path);
          if (!in) throw ParseError("cannot open file: " + path);
          CsvSchema schema{delimiter, date_column, close_column, date_format};
          std::string symbol = path;
          const auto slash = symbol.find_last_of('/');
          if (slash != std::string::npos) symbol = symbol.substr(slash + 1);
          const auto dot = symbol.find_last_of('.');
          if (dot != std::string::npos) symbol = symbol.substr(0, dot);
          const PriceSeries s = parse_price_file(in, schema, symbol);
          return analyze(s, window_months, window_days, warmup, depth_unit,
                         include_incomplete, min_segment, min_tail, bootstrap, seed);
        },
        py::arg("path"), py::arg("window_months") = 6, py::arg("window_days") = 0,
        py::arg("warmup") = "expanding", py::arg("depth_unit") = "relative",
        py::arg("include_incomplete") = false, py::arg("min_segment") = 20,
        py::arg("min_tail") = 10, py::arg("bootstrap") = 0, py::arg("seed") = 0,
        py::arg("date_column") = "date", py::arg("close_column") = "close",
        py::arg("date_format") = "%Y-%m-%d", py::arg("delimiter") = ',');
}
