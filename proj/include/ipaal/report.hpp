#pragma once

#include "ipaal/params.hpp"
#include "ipaal/solver.hpp"

#include <string>
#include <vector>

namespace ipaal {

/// Scalar summary of an IterationRecord as it appears in emitted reports.
struct RecordSummary {
  int k = 0;
  double eps = 0.0;
  double delta = 0.0;
  double v_hat_norm = 0.0;
  double feas = 0.0;
  int acg_iters = 0;
  double v_norm = 0.0;
  double r_norm = 0.0;

  static RecordSummary from(const IterationRecord& rec);
};

/// One (theta, variant) experiment row.
struct ReportRow {
  double theta = 0.0;
  Variant variant = Variant::Constant;
  long acg_iters = 0;
  int outer_iters = 0;
  int cycles = 0;
  double runtime_s = 0.0;
  double stationarity = 0.0;
  double feasibility = 0.0;
  double stationarity_rel = 0.0;
  double feasibility_rel = 0.0;
  double final_c = 0.0;
  bool converged = false;
  std::vector<CycleStats> cycle_stats;
  std::vector<RecordSummary> records;
};

struct RunReport {
  std::vector<ReportRow> rows;
};

enum class ReportFormat { Json, Csv, Table };

ReportFormat report_format_from_string(const std::string& s);

/// json is canonical and lossless (emit(parse(emit(r))) is byte-identical);
/// csv carries the summary columns; table is a fixed-width rendering.
std::string emit_report(const RunReport& report, ReportFormat format);

RunReport report_from_json(const std::string& text);

}  // namespace ipaal
