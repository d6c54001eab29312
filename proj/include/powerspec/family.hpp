#pragma once

#include <cstdint>

#include "powerspec/field.hpp"

namespace powerspec {

// The exponent family over F_{p^n}, n = 4l:
//   d  = p^{2l} - p^l + 1
//   d1 = p^{3l} - p^{2l} + p^l = p^l * d   (same spectra up to Frobenius)
struct Family {
  std::uint32_t p = 0;
  std::uint32_t l = 0;

  std::uint32_t n() const { return 4 * l; }
  std::uint64_t pl() const;  // p^l
  std::uint64_t q() const;   // p^n
  std::int64_t d() const;
  std::int64_t d1() const;
  // p^l = 2 mod 3, the hypothesis of the exponential-sum and code results.
  bool mod3_case() const { return pl() % 3 == 2; }

  // Throws PreconditionError unless n = 4l.
  static Family of_field(const FieldContext& field);
  FieldContext field(std::uint64_t cap = kDefaultFieldCap) const;
  void require_mod3() const;
};

// Integer power with overflow detection into __int128.
__int128 ipow128(std::int64_t base, std::uint32_t exp);

}  // namespace powerspec
