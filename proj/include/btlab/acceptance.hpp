#pragma once

// The eight-criterion acceptance gate. Each criterion is a self-contained
// check with pinned tolerances; run_acceptance executes them in order and
// returns one result per criterion for the caller to print.

#include <string>
#include <vector>

namespace btlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;  // worst-case metrics, for the human reading the line
  double seconds = 0.0;
};

std::vector<CriterionResult> run_acceptance();

// "[PASS] criterion 3 (piii-residual): worst 2.1e-17 of 1e-15 budget [1.2 s]";
// with_time = false drops the timing suffix so output is byte-deterministic
std::string criterion_line(const CriterionResult& r, bool with_time = true);

}  // namespace btlab
