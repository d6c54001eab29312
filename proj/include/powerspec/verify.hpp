#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "powerspec/expsum.hpp"
#include "powerspec/field.hpp"
#include "powerspec/parallel.hpp"
#include "powerspec/report.hpp"

namespace powerspec {

enum class CheckStatus { Pass, Fail, Skipped };

std::string status_name(CheckStatus s);

struct VerifyCheck {
  std::string name;
  CheckStatus status = CheckStatus::Skipped;
  Json expected;
  Json actual;
  std::string detail;
  double elapsed_ms = 0;
};

struct VerifyReport {
  std::string preset;
  std::vector<VerifyCheck> checks;

  bool passed() const;
  std::size_t count(CheckStatus s) const;
  // Elapsed times are left out unless asked for, so that two runs with the
  // same configuration produce identical bytes.
  Json to_json(bool timings = false) const;
};

struct VerifyOptions {
  Exec exec;
  std::uint64_t pair_budget = kDefaultPairBudget;
  std::uint64_t cap = kDefaultFieldCap;
  // Largest field for the curve sweep.
  std::uint64_t curve_limit = 4096;
};

// "desk": (2,1), (3,1), (2,2), (5,1), (2,3). "extended" adds (11,1).
std::vector<std::pair<std::uint32_t, std::uint32_t>> preset_families(const std::string& preset);

VerifyReport run_verify(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& families,
                        const VerifyOptions& options = {}, const std::string& preset = "custom");

VerifyReport run_verify(const std::string& preset, const VerifyOptions& options = {});

}  // namespace powerspec
