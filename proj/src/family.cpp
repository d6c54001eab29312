#include "powerspec/family.hpp"

#include <string>

namespace powerspec {

__int128 ipow128(std::int64_t base, std::uint32_t exp) {
  __int128 r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > (static_cast<__int128>(1) << 100) || r < -(static_cast<__int128>(1) << 100)) {
      throw SizeError("integer power overflow");
    }
  }
  return r;
}

std::uint64_t Family::pl() const { return static_cast<std::uint64_t>(ipow128(p, l)); }
std::uint64_t Family::q() const { return static_cast<std::uint64_t>(ipow128(p, n())); }

std::int64_t Family::d() const {
  return static_cast<std::int64_t>(ipow128(p, 2 * l) - ipow128(p, l) + 1);
}

std::int64_t Family::d1() const {
  return static_cast<std::int64_t>(ipow128(p, 3 * l) - ipow128(p, 2 * l) + ipow128(p, l));
}

Family Family::of_field(const FieldContext& field) {
  if (field.n() % 4 != 0) {
    throw PreconditionError("field degree " + std::to_string(field.n()) + " is not of the form 4l");
  }
  return Family{field.p(), field.n() / 4};
}

FieldContext Family::field(std::uint64_t cap) const {
  if (l == 0) throw ValidationError("l must be positive");
  return build_field_cached(default_field_params(p, n(), cap), cap);
}

void Family::require_mod3() const {
  if (!mod3_case()) {
    throw PreconditionError("p^l = " + std::to_string(pl()) + " is not congruent to 2 mod 3");
  }
}

}  // namespace powerspec
