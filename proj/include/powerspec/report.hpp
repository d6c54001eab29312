#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "powerspec/codes.hpp"
#include "powerspec/curves.hpp"
#include "powerspec/expsum.hpp"
#include "powerspec/field.hpp"
#include "powerspec/spectrum.hpp"

namespace powerspec {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Json, Csv, Text };

OutputFormat parse_format(const std::string& name);

Json field_json(const FieldContext& field);

// {"0": w0, "2": w2, ...}
Json spectrum_json(const Spectrum& s);
// [[value, count], ...] in increasing order of value
Json distribution_json(const SumDistribution& d);
Json enumerator_json(const WeightDistribution& w);

Json cdiff_json(const FieldContext& field, const CDiffReport& r);
Json cdiff_sweep_json(const FieldContext& field, const CDiffSweep& s);

struct Moments {
  __int128 m1 = 0, m2 = 0, m3 = 0;
};
// Power sums over F x F: the distribution over u != 0 plus the u = 0 row,
// which contributes p^n once.
Moments moments_over_all_pairs(const FieldContext& field, const SumDistribution& d);

// Decimal string when the value does not fit a JSON integer.
Json int128_json(__int128 v);

Json curve_json(const FieldContext& field, const CurveSpec& spec);

// The report's (key, count) table if it has one: "spectrum",
// "distribution" or "enumerator".
std::string render(const Json& report, OutputFormat format);

}  // namespace powerspec
