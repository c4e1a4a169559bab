#pragma once

#include <string>
#include <vector>

namespace casimir::acc {

struct Criterion {
  int id;
  bool pass;
  std::string line;  // one line, no trailing newline
};

inline constexpr int kCriteria = 12;

// Runs one row of the acceptance table; internal errors are reported as a failing row.
Criterion run(int id);
std::vector<Criterion> run_all();

}  // namespace casimir::acc
