#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "field_tables.hpp"
#include "powerspec/field.hpp"

namespace powerspec {

namespace {

constexpr std::uint64_t kMagic = 0x3142544d50535750ull;  // "PWSPMTB1"

std::uint64_t fnv1a(const std::vector<std::uint32_t>& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t v : data) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xFFu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ValidationError("truncated field table blob");
  return v;
}

}  // namespace

std::string table_cache_path(const std::string& dir, const FieldParams& params) {
  std::ostringstream name;
  name << "gf_" << params.p << "_" << params.n << "_";
  for (std::size_t i = 0; i < params.modulus.size(); ++i) {
    name << (i ? "-" : "") << params.modulus[i];
  }
  name << ".bin";
  return (std::filesystem::path(dir) / name.str()).string();
}

// Blob layout: magic, p, n, modulus[n+1], q-1, checksum, exp[q-1].
void save_field_tables(const std::string& path, const FieldContext& field) {
  std::vector<std::uint32_t> exp(field.group_order());
  for (std::uint32_t i = 0; i < field.group_order(); ++i) exp[i] = field.code(Element::from_index(i));
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write " + path);
  put(os, kMagic);
  put(os, field.p());
  put(os, field.n());
  for (auto c : field.params().modulus) put(os, c);
  put(os, field.group_order());
  put(os, fnv1a(exp));
  os.write(reinterpret_cast<const char*>(exp.data()),
           static_cast<std::streamsize>(exp.size() * sizeof(std::uint32_t)));
}

FieldContext load_field_tables(const std::string& path, const FieldParams& params, std::uint64_t cap) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot read " + path);
  if (get<std::uint64_t>(is) != kMagic) throw ValidationError("bad field table magic");
  FieldParams stored;
  stored.p = get<std::uint32_t>(is);
  stored.n = get<std::uint32_t>(is);
  if (stored.n != params.n) throw ValidationError("field table does not match parameters");
  for (std::uint32_t i = 0; i <= stored.n; ++i) stored.modulus.push_back(get<std::uint32_t>(is));
  if (!(stored == params)) throw ValidationError("field table does not match parameters");
  const std::uint64_t q = checked_power(params.p, params.n, cap);
  const auto qm1 = get<std::uint32_t>(is);
  if (qm1 != q - 1) throw ValidationError("field table has wrong length");
  const auto checksum = get<std::uint64_t>(is);

  auto t = std::make_shared<FieldTables>();
  t->params = params;
  t->q = q;
  t->qm1 = qm1;
  t->digit_weight.resize(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) {
    t->digit_weight[i] = i == 0 ? 1 : t->digit_weight[i - 1] * params.p;
  }
  t->exp.resize(qm1);
  is.read(reinterpret_cast<char*>(t->exp.data()), static_cast<std::streamsize>(qm1 * sizeof(std::uint32_t)));
  if (!is) throw ValidationError("truncated field table blob");
  if (fnv1a(t->exp) != checksum) throw ValidationError("field table checksum mismatch");
  std::vector<bool> seen(q, false);
  for (auto c : t->exp) {
    if (c == 0 || c >= q || seen[c]) throw ValidationError("field table is not a permutation");
    seen[c] = true;
  }
  finish_tables(*t);
  return FieldContext(std::move(t));
}

FieldContext build_field_cached(const FieldParams& params, std::uint64_t cap) {
  const char* dir = std::getenv("POWERSPEC_TABLE_CACHE");
  if (dir == nullptr || *dir == '\0') return build_field(params, cap);
  const std::string path = table_cache_path(dir, params);
  if (std::filesystem::exists(path)) {
    try {
      return load_field_tables(path, params, cap);
    } catch (const ValidationError&) {
      // stale or corrupt blob: rebuild below and overwrite
    }
  }
  FieldContext field = build_field(params, cap);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!ec) save_field_tables(path, field);
  return field;
}

}  // namespace powerspec
