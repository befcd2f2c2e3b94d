#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "grasspenta/exec.hpp"

namespace grasspenta {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

CriterionResult run_criterion(int id, std::uint64_t seed, Exec exec = Exec::parallel);

// Runs criteria 1..11, or only the given ids.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed, const std::vector<int>& only = {},
                                            Exec exec = Exec::parallel);

// "PASS  3  title  worst=... tol=...  detail  (0.12 s)"
std::string format_result(const CriterionResult& r);

}  // namespace grasspenta
