#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ddcrit/critical.hpp"
#include "ddcrit/drawdown.hpp"
#include "ddcrit/powerlaw.hpp"
#include "ddcrit/series.hpp"
#include "ddcrit/synth.hpp"

namespace ddc {

struct AnalysisConfig {
  WindowSpec window;
  DepthUnit depth_unit = DepthUnit::relative;
  bool include_incomplete = false;
  std::size_t min_segment = 20;
  std::size_t min_tail = 10;
  std::size_t bootstrap_trials = 0;  // 0 = skip the goodness-of-fit bootstrap
  std::uint64_t master_seed = 0;
  RegimeThresholds thresholds;
  CsvSchema schema;
};

// Everything the pipeline produced for one series, kept around so tables
// and plot data can be emitted without recomputation.
struct IndexReport {
  std::string symbol;
  PriceSeries series;
  std::vector<double> ceiling;
  std::vector<double> curve;  // d_i = close - ceiling
  std::vector<DrawdownEvent> events;
  DrawdownSet depths;
  SeriesStats series_stats;
  CriticalSplit split;
  PowerLawFit fit;
  PowerRegression regression;
  RegimeVerdict verdict;
  DepthUnit depth_unit = DepthUnit::relative;
};

// The twelve reported parameters in table column order a..l:
// N_tot, N_sup, N_inf, %Sup, K_tot, K_sup, K_inf, x_Max, x_min, R^2,
// alpha, sigma. Depths are signed (negative); in relative mode they are
// percentages.
std::array<double, 12> report_columns(const IndexReport& report);

// Full pipeline: summary stats -> ceiling/curve/segmentation -> kurtosis
// split -> tail fit (+ optional bootstrap) -> regime verdict.
// Deterministic for a fixed config; the bootstrap stream is derived from
// (master_seed, symbol).
IndexReport analyze_index(const PriceSeries& series, const AnalysisConfig& config);

enum class TableKind { params, series_stats };
enum class TableFormat { tsv, json };

// Table in the reported column order with AVERAGE / MAX / MIN rows. The
// summary rows are computed from the rounded body values, so recomputing
// them from the emitted text reproduces them exactly.
std::string emit_table(const std::vector<IndexReport>& reports, TableKind which,
                       TableFormat format, const AnalysisConfig& config);

struct GroupSummary {
  std::string name;
  std::vector<std::string> members;
  double mean_x_min = 0.0;  // signed; percent in relative depth mode
};

// Per-group arithmetic mean of the signed critical level. Every symbol must
// be mapped. Groups are emitted in first-appearance order of the mapping's
// use by the reports.
std::vector<GroupSummary> group_xmin(const std::vector<IndexReport>& reports,
                                     const std::map<std::string, std::string>& grouping);

enum class FigureKind { ceiling_curves, dd_curve, rank_scatter, tail_fit };

// Tab-separated plot data:
//   ceiling_curves: date, close, ceiling
//   dd_curve:       date, d
//   rank_scatter:   rank, magnitude, is_critical
//   tail_fit:       rank, magnitude, prediction (from the log-log regression)
std::string emit_plot_data(const IndexReport& report, FigureKind figure);

}  // namespace ddc
