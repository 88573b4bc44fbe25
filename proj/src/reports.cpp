#include "btlab/reports.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>

namespace btlab {

std::string format_double(double v) {
  char buf[40];
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  // find the shortest precision that round-trips
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v || (std::isnan(back) && std::isnan(v))) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  out += '\n';
  return out;
}

std::string pii_csv(const PiiSolution& sol) {
  std::string out = "x,u,du,H\n";
  for (size_t i = 0; i < sol.x.size(); ++i)
    out += csv_row({format_double(sol.x[i]), format_double(sol.u[i]),
                    format_double(sol.du[i]), format_double(sol.H[i])});
  return out;
}

std::string scaling_csv(const ScalingReport& rep) {
  std::string out =
      "n,t,LHS_D,RHS_D,err_D,LHS_gamma,RHS_gamma,err_gamma,LHS_R,RHS_R,err_R,"
      "crosscheck_rel,skipped,skip_reason\n";
  for (const ScalingRung& r : rep.rungs)
    out += csv_row({format_double(r.n), format_double(r.t), format_double(r.lhs_D),
                    format_double(r.rhs_D), format_double(r.err_D), format_double(r.lhs_g),
                    format_double(r.rhs_g), format_double(r.err_g), format_double(r.lhs_R),
                    format_double(r.rhs_R), format_double(r.err_R),
                    format_double(r.crosscheck_rel), r.skipped ? "1" : "0", r.skip_reason});
  return out;
}

std::string xi_sweep_csv(const std::vector<XiRow>& rows) {
  std::string out = "xi,x_target,n,t,err_D,err_gamma,err_R,crosscheck_rel,skipped,skip_reason\n";
  for (const XiRow& row : rows)
    out += csv_row({format_double(row.xi), format_double(row.x_target),
                    format_double(row.rung.n), format_double(row.rung.t),
                    format_double(row.rung.err_D), format_double(row.rung.err_g),
                    format_double(row.rung.err_R), format_double(row.rung.crosscheck_rel),
                    row.rung.skipped ? "1" : "0", row.rung.skip_reason});
  return out;
}

void JsonVerdict::add(const std::string& key, double value) {
  metrics.emplace_back(key, format_double(value));
}

void JsonVerdict::add(const std::string& key, const std::string& raw_literal) {
  metrics.emplace_back(key, raw_literal);
}

std::string JsonVerdict::str() const {
  std::string out = "{\"name\": \"" + name + "\", \"pass\": " + (pass ? "true" : "false") +
                    ", \"metrics\": {";
  for (size_t i = 0; i < metrics.size(); ++i) {
    if (i) out += ", ";
    out += "\"" + metrics[i].first + "\": " + metrics[i].second;
  }
  out += "}}\n";
  return out;
}

}  // namespace btlab
