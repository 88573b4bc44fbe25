#pragma once

// Deterministic plain-text serialization of module reports: CSV with fixed
// headers and shortest round-trip double formatting, plus a minimal JSON
// verdict builder. Shared by the CLI and the acceptance suite so that
// byte-level determinism is checked on exactly what the tools emit.

#include "btlab/scaling.hpp"

#include <string>
#include <vector>

namespace btlab {

// shortest representation that round-trips a double (%.17g trimmed)
std::string format_double(double v);

std::string csv_row(const std::vector<std::string>& cells);

std::string pii_csv(const PiiSolution& sol);
std::string scaling_csv(const ScalingReport& rep);
std::string xi_sweep_csv(const std::vector<XiRow>& rows);

// {"name": ..., "pass": ..., "metrics": {...}} with insertion-ordered keys
struct JsonVerdict {
  std::string name;
  bool pass = false;
  std::vector<std::pair<std::string, std::string>> metrics;  // key -> literal

  void add(const std::string& key, double value);
  void add(const std::string& key, const std::string& raw_literal);
  std::string str() const;
};

}  // namespace btlab
