#include "ddcrit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "ddcrit/error.hpp"
#include "ddcrit/rng.hpp"

namespace ddc {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

double round_to(double v, int decimals) {
  if (!std::isfinite(v)) return v;
  const double scale = std::pow(10.0, decimals);
  return std::round(v * scale) / scale;
}

const char* window_mode_name(WindowMode m) {
  return m == WindowMode::calendar_months ? "calendar_months" : "trading_days";
}

std::string config_header(const AnalysisConfig& c) {
  std::ostringstream os;
  os << "# seed=" << c.master_seed << "\twindow=" << c.window.span << ' '
     << window_mode_name(c.window.mode) << " ("
     << (c.window.warmup == Warmup::expanding ? "expanding" : "skip") << " warmup)"
     << "\tdepth-unit=" << (c.depth_unit == DepthUnit::relative ? "relative" : "points")
     << "\tinclude-incomplete=" << (c.include_incomplete ? 1 : 0)
     << "\tmin-segment=" << c.min_segment << "\tmin-tail=" << c.min_tail
     << "\tbootstrap=" << c.bootstrap_trials << '\n'
     << "# stddev: sample (N-1); kurtosis: population excess (Gaussian = 0)\n";
  return os.str();
}

ordered_json config_json(const AnalysisConfig& c) {
  ordered_json j;
  j["seed"] = c.master_seed;
  j["window_span"] = c.window.span;
  j["window_mode"] = window_mode_name(c.window.mode);
  j["warmup"] = c.window.warmup == Warmup::expanding ? "expanding" : "skip";
  j["depth_unit"] = c.depth_unit == DepthUnit::relative ? "relative" : "points";
  j["include_incomplete"] = c.include_incomplete;
  j["min_segment"] = c.min_segment;
  j["min_tail"] = c.min_tail;
  j["bootstrap_trials"] = c.bootstrap_trials;
  j["stddev_convention"] = "sample";
  j["kurtosis_convention"] = "population excess";
  return j;
}

double json_safe(double v) { return v; }  // NaN becomes null via dump()

// One table column: how to print a body cell and how to summarize it.
struct Column {
  std::string name;
  bool is_count = false;
  int decimals = 3;
  bool percent = false;  // display value already in percent units
};

std::string format_cell(const Column& col, double v) {
  if (!std::isfinite(v)) return "NA";
  if (col.is_count) return std::to_string(static_cast<long long>(std::llround(v)));
  std::string s = fixed(v, col.decimals);
  if (col.percent) s += '%';
  return s;
}

std::string render_tsv(const std::string& title, const AnalysisConfig& config,
                       const std::vector<Column>& cols,
                       const std::vector<std::string>& row_names,
                       const std::vector<std::vector<double>>& body,
                       const std::vector<std::vector<std::string>>& extra_text) {
  std::ostringstream os;
  os << "# ddcrit " << title << '\n' << config_header(config);
  os << "symbol";
  for (const Column& c : cols) os << '\t' << c.name;
  for (std::size_t e = 0; e < (extra_text.empty() ? 0 : extra_text[0].size()); ++e)
    os << '\t' << (e == 0 ? "first_date" : "last_date");
  os << '\n';

  // round first so the summary rows are exactly recomputable from the text
  std::vector<std::vector<double>> rounded = body;
  for (auto& row : rounded)
    for (std::size_t c = 0; c < cols.size(); ++c)
      row[c] = cols[c].is_count ? std::round(row[c]) : round_to(row[c], cols[c].decimals);

  for (std::size_t r = 0; r < rounded.size(); ++r) {
    os << row_names[r];
    for (std::size_t c = 0; c < cols.size(); ++c)
      os << '\t' << format_cell(cols[c], rounded[r][c]);
    if (!extra_text.empty())
      for (const std::string& t : extra_text[r]) os << '\t' << t;
    os << '\n';
  }

  const auto summarize = [&](const char* label, auto&& fold) {
    os << label;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::vector<double> vals;
      for (const auto& row : rounded)
        if (std::isfinite(row[c])) vals.push_back(row[c]);
      double v = std::numeric_limits<double>::quiet_NaN();
      if (!vals.empty()) v = fold(vals);
      if (cols[c].is_count && std::isfinite(v)) v = std::round(v);
      os << '\t' << format_cell(cols[c], std::isfinite(v) ? round_to(v, cols[c].decimals) : v);
    }
    if (!extra_text.empty())
      for (std::size_t e = 0; e < extra_text[0].size(); ++e) os << '\t';
    os << '\n';
  };
  summarize("AVERAGE", [](const std::vector<double>& v) { return mean(v); });
  summarize("MAX", [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end());
  });
  summarize("MIN", [](const std::vector<double>& v) {
    return *std::min_element(v.begin(), v.end());
  });
  return os.str();
}

}  // namespace

std::array<double, 12> report_columns(const IndexReport& report) {
  const bool rel = report.depth_unit == DepthUnit::relative;
  const double depth_scale = rel ? -100.0 : -1.0;  // signed display units
  return {static_cast<double>(report.split.n_total),
          static_cast<double>(report.split.n_sup),
          static_cast<double>(report.split.n_inf),
          report.split.pct_sup,
          report.split.k_tot,
          report.split.k_sup,
          report.split.k_inf,
          depth_scale * report.split.x_max,
          depth_scale * report.split.x_min,
          report.regression.r_squared,
          report.fit.alpha,
          report.fit.sigma};
}

IndexReport analyze_index(const PriceSeries& series, const AnalysisConfig& config) {
  try {
    series.validate();
    IndexReport report;
    report.symbol = series.symbol;
    report.depth_unit = config.depth_unit;
    report.series_stats = series_summary(series);

    report.series = series;
    if (config.window.warmup == Warmup::skip) {
      const std::size_t skip = warmup_length(series, config.window);
      if (series.size() < skip + 2)
        throw DomainError("series shorter than the warmup window");
      report.series.dates.erase(report.series.dates.begin(),
                                report.series.dates.begin() + static_cast<std::ptrdiff_t>(skip));
      report.series.closes.erase(report.series.closes.begin(),
                                 report.series.closes.begin() + static_cast<std::ptrdiff_t>(skip));
    }

    report.ceiling = trailing_max(report.series, config.window);
    report.curve = drawdown_curve(report.series, report.ceiling);
    report.events = segment_drawdowns(report.curve, report.series, report.ceiling);
    report.depths = collect_depths(report.events, config.depth_unit,
                                   config.include_incomplete);
    if (report.depths.n_total == 0)
      throw DomainError("no draw-downs (series never falls below its ceiling)");

    const auto sweep = kurtosis_sweep(report.depths, config.min_segment);
    report.split = select_critical(sweep, report.depths, config.min_tail);

    const std::span<const double> tail(report.depths.magnitudes.data(),
                                       report.split.n_sup);
    report.fit = fit_power_law(tail, report.split.x_min);
    if (config.bootstrap_trials > 0) {
      const std::uint64_t stream =
          Rng::mix(config.master_seed) ^ Rng::hash_string(series.symbol);
      report.fit.p_value =
          bootstrap_pvalue(tail, report.fit, config.bootstrap_trials, stream);
    }

    std::vector<std::pair<std::size_t, double>> tail_points;
    tail_points.reserve(tail.size());
    for (std::size_t r = 0; r < tail.size(); ++r)
      tail_points.emplace_back(r + 1, tail[r]);
    report.regression = rank_size_regression(tail_points);

    report.verdict = classify_regime(report.split, report.fit, config.thresholds);
    return report;
  } catch (const ParseError& e) {
    throw ParseError(series.symbol + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(series.symbol + ": " + e.what());
  }
}

std::string emit_table(const std::vector<IndexReport>& reports, TableKind which,
                       TableFormat format, const AnalysisConfig& config) {
  if (reports.empty()) throw DomainError("emit_table: no reports");
  const bool rel = config.depth_unit == DepthUnit::relative;

  if (which == TableKind::params) {
    const std::vector<Column> cols = {
        {"N_tot", true, 0, false},    {"N_sup", true, 0, false},
        {"N_inf", true, 0, false},    {"pct_sup", false, 2, true},
        {"K_tot", false, 3, false},   {"K_sup", false, 3, false},
        {"K_inf", false, 3, false},   {"x_max", false, 2, rel},
        {"x_min", false, 2, rel},     {"R2", false, 4, false},
        {"alpha", false, 3, false},   {"sigma", false, 3, false}};
    std::vector<std::string> names;
    std::vector<std::vector<double>> body;
    for (const IndexReport& r : reports) {
      auto a = report_columns(r);
      a[3] *= 100.0;  // pct_sup displayed in percent
      names.push_back(r.symbol);
      body.emplace_back(a.begin(), a.end());
    }
    if (format == TableFormat::tsv)
      return render_tsv("params", config, cols, names, body, {});

    ordered_json j;
    j["table"] = "params";
    j["config"] = config_json(config);
    j["rows"] = ordered_json::array();
    for (std::size_t r = 0; r < body.size(); ++r) {
      ordered_json row;
      row["symbol"] = names[r];
      for (std::size_t c = 0; c < cols.size(); ++c)
        row[cols[c].name] = json_safe(body[r][c]);
      j["rows"].push_back(row);
    }
    for (const char* label : {"average", "max", "min"}) {
      ordered_json row;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        std::vector<double> vals;
        for (const auto& b : body)
          if (std::isfinite(b[c])) vals.push_back(b[c]);
        double v = std::numeric_limits<double>::quiet_NaN();
        if (!vals.empty()) {
          if (std::string(label) == "average") v = mean(vals);
          else if (std::string(label) == "max") v = *std::max_element(vals.begin(), vals.end());
          else v = *std::min_element(vals.begin(), vals.end());
        }
        row[cols[c].name] = v;
      }
      j[label] = row;
    }
    return j.dump(2) + "\n";
  }

  // series_stats table
  const std::vector<Column> cols = {
      {"N_r", true, 0, false}, {"S_r", false, 3, true}, {"K_r", false, 3, false}};
  std::vector<std::string> names;
  std::vector<std::vector<double>> body;
  std::vector<std::vector<std::string>> dates;
  for (const IndexReport& r : reports) {
    names.push_back(r.symbol);
    body.push_back({static_cast<double>(r.series_stats.n_returns),
                    100.0 * r.series_stats.stddev, r.series_stats.excess_kurtosis});
    dates.push_back({format_date(r.series_stats.first_date),
                     format_date(r.series_stats.last_date)});
  }
  if (format == TableFormat::tsv)
    return render_tsv("series_stats", config, cols, names, body, dates);

  ordered_json j;
  j["table"] = "series_stats";
  j["config"] = config_json(config);
  j["rows"] = ordered_json::array();
  for (std::size_t r = 0; r < body.size(); ++r) {
    ordered_json row;
    row["symbol"] = names[r];
    row["N_r"] = static_cast<long long>(std::llround(body[r][0]));
    row["S_r"] = body[r][1];
    row["K_r"] = body[r][2];
    row["first_date"] = dates[r][0];
    row["last_date"] = dates[r][1];
    j["rows"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::vector<GroupSummary> group_xmin(const std::vector<IndexReport>& reports,
                                     const std::map<std::string, std::string>& grouping) {
  std::vector<GroupSummary> out;
  std::vector<std::vector<double>> values;
  for (const IndexReport& r : reports) {
    const auto it = grouping.find(r.symbol);
    if (it == grouping.end())
      throw DomainError("group_xmin: symbol '" + r.symbol + "' has no group mapping");
    const double scale = (r.depth_unit == DepthUnit::relative) ? -100.0 : -1.0;
    const double x = scale * r.split.x_min;
    auto pos = std::find_if(out.begin(), out.end(), [&](const GroupSummary& g) {
      return g.name == it->second;
    });
    if (pos == out.end()) {
      out.push_back({it->second, {r.symbol}, 0.0});
      values.push_back({x});
    } else {
      pos->members.push_back(r.symbol);
      values[static_cast<std::size_t>(pos - out.begin())].push_back(x);
    }
  }
  for (std::size_t g = 0; g < out.size(); ++g) out[g].mean_x_min = mean(values[g]);
  return out;
}

std::string emit_plot_data(const IndexReport& report, FigureKind figure) {
  std::ostringstream os;
  char buf[64];
  const auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return std::string(buf);
  };
  switch (figure) {
    case FigureKind::ceiling_curves:
      os << "# ddcrit ceiling_curves\t" << report.symbol << "\ndate\tclose\tceiling\n";
      for (std::size_t i = 0; i < report.series.size(); ++i)
        os << format_date(report.series.dates[i]) << '\t' << num(report.series.closes[i])
           << '\t' << num(report.ceiling[i]) << '\n';
      return os.str();
    case FigureKind::dd_curve:
      os << "# ddcrit dd_curve\t" << report.symbol << "\ndate\td\n";
      for (std::size_t i = 0; i < report.series.size(); ++i)
        os << format_date(report.series.dates[i]) << '\t' << num(report.curve[i]) << '\n';
      return os.str();
    case FigureKind::rank_scatter: {
      os << "# ddcrit rank_scatter\t" << report.symbol
         << "\nrank\tmagnitude\tis_critical\n";
      for (std::size_t r = 0; r < report.depths.magnitudes.size(); ++r)
        os << (r + 1) << '\t' << num(report.depths.magnitudes[r]) << '\t'
           << (r + 1 == report.split.n_sup ? 1 : 0) << '\n';
      return os.str();
    }
    case FigureKind::tail_fit: {
      os << "# ddcrit tail_fit\t" << report.symbol
         << "\nrank\tmagnitude\tprediction\n";
      for (std::size_t r = 0; r < report.split.n_sup; ++r) {
        const double lr = std::log10(static_cast<double>(r + 1));
        const double pred =
            std::pow(10.0, report.regression.intercept + report.regression.slope * lr);
        os << (r + 1) << '\t' << num(report.depths.magnitudes[r]) << '\t' << num(pred)
           << '\n';
      }
      return os.str();
    }
  }
  throw DomainError("emit_plot_data: unknown figure");
}

}  // namespace ddc
