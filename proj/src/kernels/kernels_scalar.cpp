#include "powerspec/kernels.hpp"

namespace powerspec::simd::detail {

namespace {

std::size_t count_equal_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t len) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < len; ++i) n += a[i] == b[i];
  return n;
}

void residue_histogram_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t len,
                              unsigned p, std::uint64_t* counts) {
  for (std::size_t i = 0; i < len; ++i) {
    const unsigned d = a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i];
    ++counts[d];
  }
}

const KernelTable kScalar{Isa::Scalar, &count_equal_scalar, &residue_histogram_scalar};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace powerspec::simd::detail
