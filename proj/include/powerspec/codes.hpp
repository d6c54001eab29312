#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "powerspec/expsum.hpp"
#include "powerspec/field.hpp"
#include "powerspec/parallel.hpp"

namespace powerspec {

enum class CodeVariant { Full, Short };

// The trace code c_{u,v} = (Tr(u psi^{j d1} + v psi^j))_j. The full code has
// length p^n - 1; the short code keeps the first (p^n - 1)/(p - 1)
// coordinates and is beta^{-1}-constacyclic.
struct CodeSpec {
  FieldParams field;
  std::int64_t d1 = 0;
  std::uint64_t length_full = 0;
  std::uint64_t length_short = 0;
  std::uint32_t dimension = 0;
  Element beta;

  static CodeSpec make(const FieldContext& field, std::int64_t d1);
};

struct Codeword {
  std::vector<std::uint8_t> coords;
  Element u, v;
};

struct WeightDistribution {
  std::map<std::uint64_t, std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t min_nonzero() const;
  bool operator==(const WeightDistribution&) const = default;
};

enum class WeightMethod { Direct, ViaSums, Closed };

Codeword codeword(const FieldContext& field, std::int64_t d1, Element u, Element v, CodeVariant variant);

std::uint64_t hamming_weight(const Codeword& word);

// Weight from the exponential sum S' = S(u, -v):
//   full:  p^{n-1}(p-1) - (p-1) S'/p,   short: p^{n-1} - S'/p.
// Throws VerificationError if p does not divide S' or the result differs
// from the direct Hamming weight.
std::uint64_t weight_via_sum(const FieldContext& field, std::int64_t d1, Element u, Element v,
                             CodeVariant variant);

// Maps an exponential-sum distribution over F* x F to short-code weights and
// adds the u = 0 words (one zero word, p^n - 1 words of weight p^{n-1}).
WeightDistribution weights_from_sums(const FieldContext& field, const SumDistribution& sums);

// Short-code weight distribution.
//   Direct:  every codeword through the SIMD match-count kernel.
//   ViaSums: exponential-sum distribution (full sweep within the pair budget,
//            otherwise the cube-class reduction).
//   Closed:  closed-form value distribution, n = 4l and p^l = 2 mod 3.
WeightDistribution weight_distribution(const FieldContext& field, std::int64_t d1, WeightMethod method,
                                       std::uint64_t pair_budget = kDefaultPairBudget, const Exec& exec = {});

// Runs the requested methods and throws VerificationError on disagreement.
WeightDistribution cross_checked_weights(const FieldContext& field, std::int64_t d1,
                                         const std::vector<WeightMethod>& methods,
                                         std::uint64_t pair_budget = kDefaultPairBudget, const Exec& exec = {});

// (c_0, ..., c_{L-1}) -> (beta^{-1} c_{L-1}, c_0, ..., c_{L-2})
std::vector<std::uint8_t> constacyclic_shift(const FieldContext& field, const std::vector<std::uint8_t>& word);

struct ConstacyclicReport {
  std::uint64_t tested = 0;
  bool exhaustive = false;
};

// Checks shift(c'_{u,v}) = c'_{u psi^{-d1}, v psi^{-1}}: every pair when
// p^{2n} <= 2^16, otherwise `samples` pseudo-random pairs from a fixed seed.
ConstacyclicReport constacyclic_check(const FieldContext& field, std::int64_t d1, std::uint64_t samples = 10000,
                                      std::uint64_t seed = 0x5eed);

// Dimension of the short code: exhaustive distinctness of all p^{2n} words
// when p^{2n} <= 2^16, otherwise the F_p-rank of the 2n basis words.
std::uint32_t dimension_check(const FieldContext& field, std::int64_t d1);

std::uint32_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

// 2n x L generator matrix of the short code (rows for (x^i, 0) then
// (0, x^i)) as comma-separated digits, one row per line.
std::string generator_matrix_csv(const FieldContext& field, std::int64_t d1);

// Minimal polynomial of a over F_p, constant term first.
std::vector<std::uint32_t> minimal_polynomial(const FieldContext& field, Element a);

// Parity-check polynomial h1 * h2 with h1, h2 the minimal polynomials of
// psi^{-1} and psi^{-d1}.
std::vector<std::uint32_t> parity_check_polynomial(const FieldContext& field, std::int64_t d1);

}  // namespace powerspec
