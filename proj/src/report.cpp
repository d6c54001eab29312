#include "powerspec/report.hpp"

#include <limits>
#include <sstream>

#include "powerspec/errors.hpp"
#include "powerspec/family.hpp"

namespace powerspec {

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "text") return OutputFormat::Text;
  throw ValidationError("unknown output format '" + name + "' (json, csv, text)");
}

Json field_json(const FieldContext& field) {
  Json j;
  j["p"] = field.p();
  j["n"] = field.n();
  j["modulus"] = field.params().modulus;
  return j;
}

Json spectrum_json(const Spectrum& s) {
  Json j = Json::object();
  for (const auto& [i, w] : s.counts) j[std::to_string(i)] = w;
  return j;
}

Json distribution_json(const SumDistribution& d) {
  Json j = Json::array();
  for (const auto& [v, c] : d.counts) j.push_back({v, c});
  return j;
}

Json enumerator_json(const WeightDistribution& w) {
  Json j = Json::array();
  for (const auto& [wt, c] : w.counts) j.push_back({wt, c});
  return j;
}

Json cdiff_json(const FieldContext& field, const CDiffReport& r) {
  Json j;
  j["field"] = field_json(field);
  j["c"] = field.to_string(r.c);
  j["uniformity"] = r.uniformity;
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  j["bound_holds"] = r.bound_holds;
  j["gcd"] = r.gcd_term;
  j["witness_b"] = field.to_string(r.witness_b);
  j["witness_count"] = r.witness_count;
  return j;
}

Json cdiff_sweep_json(const FieldContext& field, const CDiffSweep& s) {
  Json j;
  j["field"] = field_json(field);
  j["c_values"] = s.c_values;
  j["uniformity"] = s.max_uniformity;
  j["worst_c"] = field.to_string(s.worst_c);
  j["bound"] = s.bound;
  j["gcd"] = s.gcd_term;
  j["bound_holds"] = s.all_hold;
  return j;
}

Moments moments_over_all_pairs(const FieldContext& field, const SumDistribution& d) {
  Moments m;
  if (d.domain == SumDomain::NonzeroU) {
    const __int128 q = field.order();
    m.m1 = q;
    m.m2 = q * q;
    m.m3 = q * q * q;
  }
  for (const auto& [v, c] : d.counts) {
    const __int128 x = v;
    m.m1 += x * c;
    m.m2 += x * x * c;
    m.m3 += x * x * x * c;
  }
  return m;
}

Json int128_json(__int128 v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(v));
  }
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  std::string s;
  do {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  } while (u != 0);
  return Json(neg ? "-" + s : s);
}

Json curve_json(const FieldContext& field, const CurveSpec& spec) {
  Json j;
  j["p"] = field.p();
  j["n"] = field.n();
  j["k"] = spec.k;
  j["s"] = spec.s;
  j["n1"] = spec.n1;
  j["n2"] = spec.n2;
  j["r1"] = spec.r1;
  j["r2"] = spec.r2;
  j["t"] = spec.t();
  j["alpha"] = field.to_string(spec.alpha);
  j["beta"] = field.to_string(spec.beta);
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, scalar_text(j));
  }
}

// (key, count) rows of the report's table, if any.
bool table_rows(const Json& report, std::string& header, std::vector<std::pair<std::string, std::string>>& rows) {
  if (report.contains("spectrum") && report["spectrum"].is_object()) {
    header = "value,count";
    for (const auto& [k, v] : report["spectrum"].items()) rows.emplace_back(k, v.dump());
    return true;
  }
  for (const char* key : {"distribution", "enumerator"}) {
    if (report.contains(key) && report[key].is_array()) {
      header = std::string(key) == "distribution" ? "value,count" : "weight,count";
      for (const auto& row : report[key]) rows.emplace_back(row[0].dump(), row[1].dump());
      return true;
    }
  }
  return false;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render(const Json& report, OutputFormat format) {
  std::ostringstream os;
  switch (format) {
    case OutputFormat::Json:
      os << report.dump(2) << '\n';
      break;
    case OutputFormat::Csv: {
      std::string header;
      std::vector<std::pair<std::string, std::string>> rows;
      if (!table_rows(report, header, rows)) {
        header = "key,value";
        flatten(report, "", rows);
      }
      os << header << '\n';
      for (const auto& [a, b] : rows) os << csv_cell(a) << ',' << csv_cell(b) << '\n';
      break;
    }
    case OutputFormat::Text: {
      std::vector<std::pair<std::string, std::string>> rows;
      flatten(report, "", rows);
      for (const auto& [a, b] : rows) os << a << ": " << b << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace powerspec
