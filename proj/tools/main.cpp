// ddcrit: draw-down criticality analysis of daily price series.
//
// Subcommands: analyze, table, plot, synth gbm, synth shuffle, sweep-demo.
// All randomness derives from --seed, so repeated runs are byte-identical.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ddcrit/error.hpp"
#include "ddcrit/report.hpp"
#include "ddcrit/rng.hpp"
#include "ddcrit/synth.hpp"

namespace fs = std::filesystem;
using namespace ddc;

namespace {

struct CommonOpts {
  AnalysisConfig config;
  std::string window_mode = "calendar";
  int window_months = 6;
  int window_days = 126;
  std::string warmup = "expanding";
  std::string depth_unit = "relative";
  std::string format = "tsv";
  std::string output;

  void add_flags(CLI::App* app) {
    app->add_option("--window-months", window_months, "Trailing window span in calendar months")
        ->capture_default_str();
    app->add_option("--window-days", window_days, "Trailing window span in trading days")
        ->capture_default_str();
    app->add_option("--window-mode", window_mode, "calendar or days")
        ->check(CLI::IsMember({"calendar", "days"}))
        ->capture_default_str();
    app->add_option("--warmup", warmup, "expanding or skip")
        ->check(CLI::IsMember({"expanding", "skip"}))
        ->capture_default_str();
    app->add_option("--depth-unit", depth_unit, "relative or points")
        ->check(CLI::IsMember({"relative", "points"}))
        ->capture_default_str();
    app->add_flag("--include-incomplete", config.include_incomplete,
                  "Keep the trailing unfinished draw-down");
    app->add_option("--min-segment", config.min_segment,
                    "Smallest inferior set evaluated in the kurtosis sweep")
        ->capture_default_str();
    app->add_option("--min-tail", config.min_tail, "Smallest allowed superior segment")
        ->capture_default_str();
    app->add_option("--bootstrap", config.bootstrap_trials,
                    "Goodness-of-fit bootstrap trials (0 = skip)")
        ->capture_default_str();
    app->add_option("--seed", config.master_seed, "Master seed")->capture_default_str();
    app->add_option("--date-column", config.schema.date_column)->capture_default_str();
    app->add_option("--close-column", config.schema.close_column)->capture_default_str();
    app->add_option("--date-format", config.schema.date_format)->capture_default_str();
    app->add_option("--delimiter", config.schema.delimiter)->capture_default_str();
    app->add_option("--format", format, "tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}))
        ->capture_default_str();
    app->add_option("-o,--output", output, "Output file (default stdout)");
  }

  void resolve() {
    if (window_mode == "days") {
      config.window.mode = WindowMode::trading_days;
      config.window.span = window_days;
    } else {
      config.window.mode = WindowMode::calendar_months;
      config.window.span = window_months;
    }
    config.window.warmup = (warmup == "skip") ? Warmup::skip : Warmup::expanding;
    config.depth_unit =
        (depth_unit == "points") ? DepthUnit::points : DepthUnit::relative;
  }
};

// Apply defaults from the JSON file named by DDCRIT_CONFIG, if any, before
// command-line flags are parsed.
void apply_env_config(CommonOpts& opts) {
  const char* path = std::getenv("DDCRIT_CONFIG");
  if (path == nullptr) return;
  std::ifstream in(path);
  if (!in) throw Error(std::string("cannot read config file ") + path);
  nlohmann::json j;
  in >> j;
  if (j.contains("seed")) opts.config.master_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("window_months")) opts.window_months = j["window_months"].get<int>();
  if (j.contains("window_days")) opts.window_days = j["window_days"].get<int>();
  if (j.contains("window_mode")) opts.window_mode = j["window_mode"].get<std::string>();
  if (j.contains("warmup")) opts.warmup = j["warmup"].get<std::string>();
  if (j.contains("depth_unit")) opts.depth_unit = j["depth_unit"].get<std::string>();
  if (j.contains("min_segment")) opts.config.min_segment = j["min_segment"].get<std::size_t>();
  if (j.contains("min_tail")) opts.config.min_tail = j["min_tail"].get<std::size_t>();
  if (j.contains("bootstrap")) opts.config.bootstrap_trials = j["bootstrap"].get<std::size_t>();
  if (j.contains("format")) opts.format = j["format"].get<std::string>();
}

PriceSeries load_series(const fs::path& path, const CsvSchema& schema) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path.string());
  return parse_price_file(in, schema, path.stem().string());
}

void write_output(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw Error("cannot write output file: " + output);
  out << text;
}

std::map<std::string, std::string> load_group_map(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open group map: " + path.string());
  std::map<std::string, std::string> map;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("group map line without tab: " + line);
    map[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return map;
}

// Per-series failures are reported and skipped; batch analysis survives a
// bad file.
std::vector<IndexReport> analyze_files(const std::vector<std::string>& files,
                                       const AnalysisConfig& config, int& errors) {
  std::vector<IndexReport> reports;
  for (const std::string& file : files) {
    try {
      reports.push_back(analyze_index(load_series(file, config.schema), config));
    } catch (const Error& e) {
      std::cerr << "error: " << file << ": " << e.what() << '\n';
      ++errors;
    }
  }
  return reports;
}

nlohmann::ordered_json report_json(const IndexReport& r) {
  nlohmann::ordered_json j;
  j["symbol"] = r.symbol;
  const auto cols = report_columns(r);
  const char* names[] = {"N_tot", "N_sup", "N_inf", "pct_sup", "K_tot", "K_sup",
                         "K_inf", "x_max", "x_min", "R2",    "alpha", "sigma"};
  for (std::size_t i = 0; i < 12; ++i) j["columns"][names[i]] = cols[i];
  j["series_stats"] = {{"N_r", r.series_stats.n_returns},
                       {"S_r", r.series_stats.stddev},
                       {"K_r", r.series_stats.excess_kurtosis},
                       {"first_date", format_date(r.series_stats.first_date)},
                       {"last_date", format_date(r.series_stats.last_date)}};
  j["fit"] = {{"alpha", r.fit.alpha},
              {"sigma", r.fit.sigma},
              {"x_min", r.fit.x_min},
              {"n_tail", r.fit.n_tail},
              {"ks_distance", r.fit.ks_distance}};
  if (r.fit.p_value) j["fit"]["p_value"] = *r.fit.p_value;
  j["regression"] = {{"slope", r.regression.slope},
                     {"intercept", r.regression.intercept},
                     {"r_squared", r.regression.r_squared},
                     {"degenerate", r.regression.degenerate}};
  j["verdict"] = {{"label", r.verdict.label == RegimeLabel::SelfOrganized
                               ? "SelfOrganized"
                               : "RandomWalkOnly"},
                  {"k_sup", r.verdict.k_sup},
                  {"ks_distance", r.verdict.ks_distance},
                  {"n_sup", r.verdict.n_sup},
                  {"thresholds",
                   {{"k_sup_min", r.verdict.thresholds.k_sup_min},
                    {"n_min", r.verdict.thresholds.n_min},
                    {"p_min", r.verdict.thresholds.p_min}}}};
  if (r.verdict.p_value) j["verdict"]["p_value"] = *r.verdict.p_value;
  return j;
}

std::string series_to_csv(const PriceSeries& series, std::uint64_t seed) {
  std::ostringstream os;
  os << "# ddcrit synth\tseed=" << seed << '\n' << "date,close\n";
  char buf[64];
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10f", series.closes[i]);
    os << format_date(series.dates[i]) << ',' << buf << '\n';
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"draw-down criticality analysis"};
  app.require_subcommand(1);

  CommonOpts opts;
  try {
    apply_env_config(opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  std::vector<std::string> files;
  std::string group_map_path;
  std::string which = "params";
  std::string figure = "rank_scatter";

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on price files");
  analyze->add_option("files", files, "Delimited price files")->required();
  opts.add_flags(analyze);

  auto* table = app.add_subcommand("table", "Emit the parameter or series-stats table");
  table->add_option("files", files, "Delimited price files")->required();
  table->add_option("--which", which, "params or series_stats")
      ->check(CLI::IsMember({"params", "series_stats"}));
  table->add_option("--group-map", group_map_path,
                    "TSV symbol<TAB>group file; appends per-group mean x_min");
  opts.add_flags(table);

  auto* plot = app.add_subcommand("plot", "Emit plot data for one series");
  plot->add_option("file", files, "Delimited price file")->required()->expected(1);
  plot->add_option("--figure", figure,
                   "ceiling_curves, dd_curve, rank_scatter or tail_fit")
      ->check(CLI::IsMember({"ceiling_curves", "dd_curve", "rank_scatter", "tail_fit"}));
  opts.add_flags(plot);

  auto* synth = app.add_subcommand("synth", "Generate control series");
  GbmSpec gbm_spec;
  std::string synth_symbol = "GBM";
  auto* gbm = synth->add_subcommand("gbm", "Geometric Brownian motion control");
  gbm->add_option("--days", gbm_spec.n_days, "Number of trading days")->required();
  gbm->add_option("--mu", gbm_spec.mu, "Daily log-return drift")->capture_default_str();
  gbm->add_option("--sigma", gbm_spec.sigma, "Daily log-return stddev")
      ->capture_default_str();
  gbm->add_option("--seed", gbm_spec.seed, "Seed")->capture_default_str();
  gbm->add_option("--start", gbm_spec.start_price, "Start price")->capture_default_str();
  gbm->add_option("--symbol", synth_symbol)->capture_default_str();
  gbm->add_option("-o,--output", opts.output, "Output file (default stdout)");

  auto* shuffle = synth->add_subcommand("shuffle", "Return-shuffle control of a file");
  shuffle->add_option("file", files, "Delimited price file")->required()->expected(1);
  opts.add_flags(shuffle);
  synth->require_subcommand(1);

  auto* sweep = app.add_subcommand("sweep-demo",
                                   "Emit the kurtosis sweep curve for one series");
  sweep->add_option("file", files, "Delimited price file")->required()->expected(1);
  opts.add_flags(sweep);

  CLI11_PARSE(app, argc, argv);
  opts.resolve();

  try {
    if (*analyze) {
      int errors = 0;
      const auto reports = analyze_files(files, opts.config, errors);
      if (reports.empty()) {
        std::cerr << "error: no series analyzed\n";
        return 1;
      }
      if (opts.format == "json") {
        nlohmann::ordered_json j;
        j["seed"] = opts.config.master_seed;
        j["reports"] = nlohmann::ordered_json::array();
        for (const auto& r : reports) j["reports"].push_back(report_json(r));
        write_output(j.dump(2) + "\n", opts.output);
      } else {
        write_output(emit_table(reports, TableKind::params, TableFormat::tsv, opts.config),
                     opts.output);
      }
      return errors > 0 ? 1 : 0;
    }

    if (*table) {
      int errors = 0;
      const auto reports = analyze_files(files, opts.config, errors);
      if (reports.empty()) {
        std::cerr << "error: no series analyzed\n";
        return 1;
      }
      const TableKind kind =
          (which == "series_stats") ? TableKind::series_stats : TableKind::params;
      const TableFormat fmt =
          (opts.format == "json") ? TableFormat::json : TableFormat::tsv;
      std::string text = emit_table(reports, kind, fmt, opts.config);
      if (!group_map_path.empty() && kind == TableKind::params && fmt == TableFormat::tsv) {
        const auto groups = group_xmin(reports, load_group_map(group_map_path));
        std::ostringstream os;
        os << "\n# group mean x_min\n";
        char buf[64];
        for (const auto& g : groups) {
          std::snprintf(buf, sizeof buf, "%.3f", g.mean_x_min);
          os << g.name << '\t' << buf << '\t' << g.members.size() << " members\n";
        }
        text += os.str();
      }
      write_output(text, opts.output);
      return errors > 0 ? 1 : 0;
    }

    if (*plot) {
      const auto report = analyze_index(load_series(files[0], opts.config.schema),
                                        opts.config);
      FigureKind fig = FigureKind::rank_scatter;
      if (figure == "ceiling_curves") fig = FigureKind::ceiling_curves;
      else if (figure == "dd_curve") fig = FigureKind::dd_curve;
      else if (figure == "tail_fit") fig = FigureKind::tail_fit;
      write_output(emit_plot_data(report, fig), opts.output);
      return 0;
    }

    if (*gbm) {
      const PriceSeries series = gen_gbm(gbm_spec, synth_symbol);
      write_output(series_to_csv(series, gbm_spec.seed), opts.output);
      return 0;
    }

    if (*shuffle) {
      const PriceSeries series = load_series(files[0], opts.config.schema);
      const PriceSeries shuffled = shuffle_returns(series, opts.config.master_seed);
      write_output(series_to_csv(shuffled, opts.config.master_seed), opts.output);
      return 0;
    }

    if (*sweep) {
      const PriceSeries series = load_series(files[0], opts.config.schema);
      AnalysisConfig cfg = opts.config;
      IndexReport report = analyze_index(series, cfg);
      const auto points = kurtosis_sweep(report.depths, cfg.min_segment);
      std::ostringstream os;
      os << "# ddcrit sweep-demo\tseed=" << cfg.master_seed << "\tx_min="
         << report.split.x_min << "\ncutoff\tn_inferior\tk_inferior\n";
      char buf[64];
      for (const auto& p : points) {
        std::snprintf(buf, sizeof buf, "%.10g\t%zu\t%.6f", p.cutoff_value, p.n_inferior,
                      p.k_inferior);
        os << buf << '\n';
      }
      write_output(os.str(), opts.output);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
