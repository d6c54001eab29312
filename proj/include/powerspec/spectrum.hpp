#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "powerspec/family.hpp"
#include "powerspec/field.hpp"
#include "powerspec/parallel.hpp"

namespace powerspec {

// Differential spectrum: counts[i] = #{b : delta(1,b) = i}, zero bins omitted.
struct Spectrum {
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t delta = 0;
  std::uint64_t field_size = 0;

  // sum w_i = p^n and sum i*w_i = p^n
  bool satisfies_identities() const;
  bool operator==(const Spectrum&) const = default;
};

Spectrum make_spectrum(std::map<std::uint64_t, std::uint64_t> counts, std::uint64_t field_size);

// x^d for every slot of the field (0^d = 0 for d > 0, x^0 = 1).
std::vector<Element> power_table(const FieldContext& field, std::int64_t d);

// #{x : (x+1)^d - x^d = b}
std::uint64_t delta_b(const FieldContext& field, std::int64_t d, Element b);

// delta(1,b) for every b, indexed by slot.
std::vector<std::uint64_t> delta_row(const FieldContext& field, std::int64_t d, const Exec& exec = {});

Spectrum diff_spectrum_oracle(const FieldContext& field, std::int64_t d, const Exec& exec = {});

// Audit path: sweeps every a != 0, confirms delta(a,b) = delta(1, b/a^d) and
// returns the a = 1 spectrum. O(p^{2n}).
Spectrum diff_spectrum_full_sweep(const FieldContext& field, std::int64_t d);

// Closed-form spectrum for d = p^{2l} - p^l + 1 over F_{p^{4l}}, colliding
// bins merged.
Spectrum diff_spectrum_closed(std::uint32_t p, std::uint32_t l);

// Per-b classification of delta(b): delta(1) = p^l, delta(b) = p^{2l} - p^l on
// mu_{p^l+1} \ {1}, delta(b) in {0, 2} elsewhere.
struct DeltaClassification {
  std::uint64_t delta_at_one = 0;
  std::uint64_t mu_members = 0;          // b in mu_{p^l+1} \ {1}
  std::uint64_t mu_matching = 0;         // ... with delta(b) = p^{2l} - p^l
  std::uint64_t other_members = 0;
  std::uint64_t other_in_zero_two = 0;   // ... with delta(b) in {0, 2}
  bool holds = false;
};

DeltaClassification classify_delta(const FieldContext& field, std::int64_t d, const Exec& exec = {});

// #{x : (x+1)^d - c x^d = b}
std::uint64_t c_delta(const FieldContext& field, std::int64_t d, Element c, Element b);

struct CDiffReport {
  Element c;
  std::uint64_t uniformity = 0;
  Element witness_b;
  std::uint64_t witness_count = 0;
  std::uint64_t gcd_term = 0;
  // (p^l+1)^2 when n = 4l and c is outside mu_{p^l+1}.
  std::optional<std::uint64_t> bound;
  bool bound_holds = true;
};

CDiffReport c_diff_uniformity(const FieldContext& field, std::int64_t d, Element c);

struct CDiffSweep {
  std::uint64_t c_values = 0;
  std::uint64_t max_uniformity = 0;
  Element worst_c;
  std::uint64_t bound = 0;
  std::uint64_t gcd_term = 0;
  bool all_hold = false;
};

// Every c outside mu_{p^l+1}, every b.
CDiffSweep c_diff_sweep(const FieldContext& field, std::int64_t d, const Exec& exec = {});

}  // namespace powerspec
