#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

// Byte-digit kernels behind every exhaustive sweep. Each kernel has a scalar
// reference and optional AVX2 / NEON variants; the active table is chosen at
// runtime from CPU features (POWERSPEC_SIMD=scalar|avx2|neon overrides).
namespace powerspec::simd {

enum class Isa { Scalar, Avx2, Neon };

struct KernelTable {
  Isa isa;
  // #{i : a[i] == b[i]}
  std::size_t (*count_equal)(const std::uint8_t* a, const std::uint8_t* b, std::size_t len);
  // counts[(a[i] - b[i]) mod p] += 1 for digits a[i], b[i] < p < 256.
  void (*residue_histogram)(const std::uint8_t* a, const std::uint8_t* b, std::size_t len,
                            unsigned p, std::uint64_t* counts);
};

std::string_view isa_name(Isa isa);
std::vector<Isa> available_isas();
const KernelTable& kernels_for(Isa isa);
const KernelTable& active_kernels();

std::size_t count_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
void residue_histogram(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b, unsigned p,
                       std::span<std::uint64_t> counts);

namespace detail {
const KernelTable& scalar_table();
#if defined(POWERSPEC_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(POWERSPEC_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace powerspec::simd
