#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "powerspec/family.hpp"
#include "powerspec/field.hpp"
#include "powerspec/parallel.hpp"

namespace powerspec {

inline constexpr std::uint64_t kDefaultPairBudget = std::uint64_t{1} << 26;

// N_j = #{x : Tr(u x^{d1} - v x) = j}. The character sum is the integer
// N_0 - N_1 exactly when N_1 = ... = N_{p-1}.
struct TraceCountVector {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const;
  bool operator==(const TraceCountVector&) const = default;
};

struct SumValue {
  std::int64_t value = 0;
  bool rational = false;
};

// Never throws; rational = false when the tail counts differ.
SumValue evaluate_sum(const TraceCountVector& counts);

struct NTriple {
  std::uint32_t n_inf = 0;
  std::uint32_t n0 = 0;
  std::uint32_t n1 = 0;
  bool operator==(const NTriple&) const = default;
};

enum class SumDomain { NonzeroU, All };

struct SumDistribution {
  SumDomain domain = SumDomain::NonzeroU;
  std::map<std::int64_t, std::uint64_t> counts;

  std::uint64_t total() const;
  bool operator==(const SumDistribution&) const = default;
};

TraceCountVector trace_counts(const FieldContext& field, std::int64_t d1, Element u, Element v);

// Throws IrrationalSumError when the sum is not a rational integer.
SumValue exp_sum(const FieldContext& field, std::int64_t d1, Element u, Element v);

// sum_y zeta^{Tr(a y^{p^l+1})} by enumeration, checked against the value
// p^n / -p^{3l} / p^{2l} for a in C_inf / C_0 / C_1.
std::int64_t gauss_like(const FieldContext& field, Element a);

// Classes of u psi^{d1 j} - v psi^j for j = 0..p^l: C_inf = {0},
// C_0 = nonzero (p^l+1)-th powers, C_1 = the rest.
NTriple n_counts(const FieldContext& field, std::int64_t d1, Element u, Element v);

// (p^{4l} n_inf - p^{3l} n0 + p^{2l} n1) / (p^l + 1)
std::int64_t sum_from_ntriple(const Family& family, const NTriple& t);
std::int64_t exp_sum_via_ncounts(const FieldContext& field, std::int64_t d1, Element u, Element v);

// S(u, v) for every v (indexed by slot) with u fixed, through the SIMD
// kernels.
std::vector<std::int64_t> sum_row(const FieldContext& field, std::int64_t d1, Element u);

// All (u, v) with u != 0; refuses when p^{2n} exceeds the pair budget.
SumDistribution distribution_oracle(const FieldContext& field, std::int64_t d1,
                                    std::uint64_t pair_budget = kDefaultPairBudget, const Exec& exec = {});

// Cube-class representatives u in {1, psi, psi^2}, each row scaled by
// (p^n - 1)/3. Requires gcd(d1, p^n - 1) = 3 and checks the psi and psi^2
// rows agree as multisets.
SumDistribution distribution_reduced(const FieldContext& field, std::int64_t d1, const Exec& exec = {});

// The six (value, multiplicity) rows before merging.
std::vector<std::pair<std::int64_t, std::uint64_t>> closed_sum_rows(std::uint32_t p, std::uint32_t l);
SumDistribution distribution_closed(std::uint32_t p, std::uint32_t l);

struct MomentReport {
  __int128 m1 = 0, m2 = 0, m3 = 0;
  __int128 expected1 = 0, expected2 = 0, expected3 = 0;
  __int128 u_zero_m1 = 0;  // contribution of the u = 0 rows to m1
  bool holds() const { return m1 == expected1 && m2 == expected2 && m3 == expected3; }
};

// First three power sums over all (u, v) in F x F; throws VerificationError
// when they differ from p^{2n}, p^{3n}, p^{13l} + p^{3n} - p^{9l}.
MomentReport moment_check(const FieldContext& field, std::int64_t d1,
                          std::uint64_t pair_budget = kDefaultPairBudget, const Exec& exec = {});

}  // namespace powerspec
