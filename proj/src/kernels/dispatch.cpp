#include <cstdlib>
#include <string>

#include "powerspec/errors.hpp"
#include "powerspec/kernels.hpp"

namespace powerspec::simd {

namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(POWERSPEC_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(POWERSPEC_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& select_active() {
  if (const char* env = std::getenv("POWERSPEC_SIMD"); env != nullptr && *env != '\0') {
    const std::string want(env);
    for (Isa isa : available_isas()) {
      if (isa_name(isa) == want) return kernels_for(isa);
    }
    // Unknown or unavailable request falls back to the scalar reference.
    return detail::scalar_table();
  }
  const auto isas = available_isas();
  return kernels_for(isas.back());
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::Scalar};
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (cpu_has(isa)) out.push_back(isa);
  }
  return out;
}

const KernelTable& kernels_for(Isa isa) {
  if (!cpu_has(isa)) throw Error("kernel set '" + std::string(isa_name(isa)) + "' unavailable");
  switch (isa) {
#if defined(POWERSPEC_HAVE_AVX2)
    case Isa::Avx2:
      return detail::avx2_table();
#endif
#if defined(POWERSPEC_HAVE_NEON)
    case Isa::Neon:
      return detail::neon_table();
#endif
    default:
      return detail::scalar_table();
  }
}

const KernelTable& active_kernels() {
  static const KernelTable& table = select_active();
  return table;
}

std::size_t count_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) throw Error("count_equal: length mismatch");
  return active_kernels().count_equal(a.data(), b.data(), a.size());
}

void residue_histogram(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, unsigned p,
                       std::span<std::uint64_t> counts) {
  if (a.size() != b.size()) throw Error("residue_histogram: length mismatch");
  if (p < 2 || p > 255 || counts.size() < p) throw Error("residue_histogram: bad modulus");
  active_kernels().residue_histogram(a.data(), b.data(), a.size(), p, counts.data());
}

}  // namespace powerspec::simd
