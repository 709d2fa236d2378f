#include "ipaal/report.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <sstream>

namespace ipaal {

using nlohmann::json;

RecordSummary RecordSummary::from(const IterationRecord& rec) {
  RecordSummary s;
  s.k = rec.k;
  s.eps = rec.eps;
  s.delta = rec.delta;
  s.v_hat_norm = rec.v_hat_norm;
  s.feas = rec.feas;
  s.acg_iters = rec.acg_iters;
  s.v_norm = rec.v.norm();
  s.r_norm = rec.r.norm();
  return s;
}

ReportFormat report_format_from_string(const std::string& s) {
  if (s == "json") return ReportFormat::Json;
  if (s == "csv") return ReportFormat::Csv;
  if (s == "table") return ReportFormat::Table;
  throw std::invalid_argument("unknown report format '" + s + "' (expected json|csv|table)");
}

static std::string num(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

static json to_json(const RunReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    json jr;
    jr["theta"] = r.theta;
    jr["variant"] = to_string(r.variant);
    jr["acg_iters"] = r.acg_iters;
    jr["outer_iters"] = r.outer_iters;
    jr["cycles"] = r.cycles;
    jr["runtime_s"] = r.runtime_s;
    jr["stationarity"] = r.stationarity;
    jr["feasibility"] = r.feasibility;
    jr["stationarity_rel"] = r.stationarity_rel;
    jr["feasibility_rel"] = r.feasibility_rel;
    jr["final_c"] = r.final_c;
    jr["converged"] = r.converged;
    json cyc = json::array();
    for (const auto& c : r.cycle_stats)
      cyc.push_back({{"cycle", c.cycle},
                     {"c", c.c},
                     {"outer_iters", c.outer_iters},
                     {"acg_iters", c.acg_iters},
                     {"v_hat_norm", c.v_hat_norm},
                     {"feas", c.feas}});
    jr["cycle_stats"] = cyc;
    json recs = json::array();
    for (const auto& s : r.records)
      recs.push_back({{"k", s.k},
                      {"eps", s.eps},
                      {"delta", s.delta},
                      {"v_hat_norm", s.v_hat_norm},
                      {"feas", s.feas},
                      {"acg_iters", s.acg_iters},
                      {"v_norm", s.v_norm},
                      {"r_norm", s.r_norm}});
    jr["records"] = recs;
    rows.push_back(jr);
  }
  return json{{"rows", rows}};
}

std::string emit_report(const RunReport& report, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(report).dump(1) + "\n";

  if (format == ReportFormat::Csv) {
    std::ostringstream out;
    out << "theta,variant,acg_iters,outer_iters,cycles,runtime_s,stationarity,feasibility,"
           "final_c\n";
    for (const auto& r : report.rows) {
      char runtime[32];
      std::snprintf(runtime, sizeof(runtime), "%.3f", r.runtime_s);
      out << num(r.theta) << ',' << to_string(r.variant) << ',' << r.acg_iters << ','
          << r.outer_iters << ',' << r.cycles << ',' << runtime << ',' << num(r.stationarity)
          << ',' << num(r.feasibility) << ',' << num(r.final_c) << '\n';
    }
    return out.str();
  }

  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof(line), "%7s %-12s %10s %6s %6s %10s %12s %12s %10s\n", "theta",
                "variant", "acg", "outer", "cycle", "time[s]", "|v_hat|", "|Az-b|", "final c");
  out << line;
  for (const auto& r : report.rows) {
    std::snprintf(line, sizeof(line), "%7.3g %-12s %10ld %6d %6d %10.3f %12.4e %12.4e %10.3e%s\n",
                  r.theta, to_string(r.variant).c_str(), r.acg_iters, r.outer_iters, r.cycles,
                  r.runtime_s, r.stationarity, r.feasibility, r.final_c,
                  r.converged ? "" : "  [cap exceeded]");
    out << line;
  }
  return out.str();
}

RunReport report_from_json(const std::string& text) {
  const json j = json::parse(text);
  RunReport report;
  for (const auto& jr : j.at("rows")) {
    ReportRow r;
    r.theta = jr.at("theta").get<double>();
    r.variant = variant_from_string(jr.at("variant").get<std::string>());
    r.acg_iters = jr.at("acg_iters").get<long>();
    r.outer_iters = jr.at("outer_iters").get<int>();
    r.cycles = jr.at("cycles").get<int>();
    r.runtime_s = jr.at("runtime_s").get<double>();
    r.stationarity = jr.at("stationarity").get<double>();
    r.feasibility = jr.at("feasibility").get<double>();
    r.stationarity_rel = jr.at("stationarity_rel").get<double>();
    r.feasibility_rel = jr.at("feasibility_rel").get<double>();
    r.final_c = jr.at("final_c").get<double>();
    r.converged = jr.at("converged").get<bool>();
    for (const auto& jc : jr.at("cycle_stats")) {
      CycleStats c;
      c.cycle = jc.at("cycle").get<int>();
      c.c = jc.at("c").get<double>();
      c.outer_iters = jc.at("outer_iters").get<int>();
      c.acg_iters = jc.at("acg_iters").get<long>();
      c.v_hat_norm = jc.at("v_hat_norm").get<double>();
      c.feas = jc.at("feas").get<double>();
      r.cycle_stats.push_back(c);
    }
    for (const auto& js : jr.at("records")) {
      RecordSummary s;
      s.k = js.at("k").get<int>();
      s.eps = js.at("eps").get<double>();
      s.delta = js.at("delta").get<double>();
      s.v_hat_norm = js.at("v_hat_norm").get<double>();
      s.feas = js.at("feas").get<double>();
      s.acg_iters = js.at("acg_iters").get<int>();
      s.v_norm = js.at("v_norm").get<double>();
      s.r_norm = js.at("r_norm").get<double>();
      r.records.push_back(s);
    }
    report.rows.push_back(std::move(r));
  }
  return report;
}

}  // namespace ipaal
