#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "powerspec/field.hpp"

namespace powerspec {

// alpha x^{n1} + beta y^{n2} + 1 = 0 over F_{p^n}, n = 2ks, with
// lcm(n1, n2) | p^s + 1, alpha in psi^{r1} <psi^{n1}>, beta in psi^{r2} <psi^{n2}>.
struct CurveSpec {
  std::uint32_t k = 1, s = 1;
  std::uint32_t n1 = 1, n2 = 1;
  std::uint32_t r1 = 0, r2 = 0;
  Element alpha, beta;

  std::uint32_t t() const;
  // Throws PreconditionError when the parameters do not fit the field.
  void validate(const FieldContext& field) const;
};

enum class CurveCase { I, II, III, IV, V };

std::string case_label(CurveCase c);

struct ClosedCount {
  CurveCase which = CurveCase::I;
  std::int64_t count = 0;
};

// Folds the image multiplicities of y -> beta y^{n2}; `naive` runs the
// plain double loop instead.
std::uint64_t count_points_oracle(const FieldContext& field, const CurveSpec& spec, bool naive = false);

// Throws UncoveredCaseError for (r1, r2) outside the five cases.
ClosedCount count_points_closed(const FieldContext& field, const CurveSpec& spec);

// Every s with 2s | n, divisor pairs (n1, n2) of p^s + 1 and residues
// (r1, r2), with `reps` coset representatives psi^{r + n w}, w = 0..reps-1.
struct CurveSweep {
  std::map<std::string, std::uint64_t> matched;  // by case label
  std::uint64_t mismatched = 0;
  std::uint64_t uncovered = 0;
  std::vector<std::string> failures;
};

CurveSweep curve_sweep(const FieldContext& field, std::uint32_t reps = 2);

// x^2 + a x + b over F_{2^{2m}}.
struct QuadInMuQuery {
  std::uint32_t m = 1;
  Element a, b;
};

// b = a^{1 - 2^m} and Tr_1^m(a^{-2^m - 1}) = 1.
bool quad_roots_in_mu(const FieldContext& field, const QuadInMuQuery& query);

// Both roots found among the elements of mu_{2^m + 1}.
bool quad_roots_in_mu_oracle(const FieldContext& field, const QuadInMuQuery& query);

struct QuadSweep {
  std::uint64_t pairs = 0;
  std::uint64_t positives = 0;
  std::uint64_t mismatched = 0;
};

// All (a, b) in F* x F*.
QuadSweep quad_sweep(const FieldContext& field);

}  // namespace powerspec
