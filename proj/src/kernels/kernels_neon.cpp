#include <arm_neon.h>

#include <algorithm>
#include <array>

#include "powerspec/kernels.hpp"

namespace powerspec::simd::detail {

namespace {

constexpr std::size_t kFlushBlocks = 255;

inline std::uint64_t widen_sum(uint8x16_t acc) {
  return vaddlvq_u8(acc);
}

std::size_t count_equal_neon(const std::uint8_t* a, const std::uint8_t* b, std::size_t len) {
  std::uint64_t n = 0;
  std::size_t i = 0;
  while (len - i >= 16) {
    const std::size_t blocks = std::min(kFlushBlocks, (len - i) / 16);
    uint8x16_t acc = vdupq_n_u8(0);
    for (std::size_t k = 0; k < blocks; ++k, i += 16) {
      const uint8x16_t eq = vceqq_u8(vld1q_u8(a + i), vld1q_u8(b + i));
      acc = vsubq_u8(acc, eq);
    }
    n += widen_sum(acc);
  }
  for (; i < len; ++i) n += a[i] == b[i];
  return n;
}

constexpr unsigned kComparePassLimit = 16;

void residue_histogram_neon(const std::uint8_t* a, const std::uint8_t* b, std::size_t len, unsigned p,
                            std::uint64_t* counts) {
  const uint8x16_t vp = vdupq_n_u8(static_cast<std::uint8_t>(p));
  std::array<std::uint8_t, 16 * kFlushBlocks> block;
  std::size_t i = 0;
  while (len - i >= 16) {
    const std::size_t blocks = std::min(kFlushBlocks, (len - i) / 16);
    for (std::size_t k = 0; k < blocks; ++k) {
      const uint8x16_t va = vld1q_u8(a + i + 16 * k);
      const uint8x16_t vb = vld1q_u8(b + i + 16 * k);
      const uint8x16_t lt = vcltq_u8(va, vb);
      vst1q_u8(block.data() + 16 * k, vaddq_u8(vsubq_u8(va, vb), vandq_u8(lt, vp)));
    }
    const std::size_t bytes = 16 * blocks;
    if (p <= kComparePassLimit) {
      std::uint64_t nonzero = 0;
      for (unsigned r = 1; r < p; ++r) {
        const uint8x16_t vr = vdupq_n_u8(static_cast<std::uint8_t>(r));
        uint8x16_t acc = vdupq_n_u8(0);
        for (std::size_t k = 0; k < blocks; ++k) {
          acc = vsubq_u8(acc, vceqq_u8(vld1q_u8(block.data() + 16 * k), vr));
        }
        const std::uint64_t c = widen_sum(acc);
        counts[r] += c;
        nonzero += c;
      }
      counts[0] += bytes - nonzero;
    } else {
      for (std::size_t k = 0; k < bytes; ++k) ++counts[block[k]];
    }
    i += bytes;
  }
  for (; i < len; ++i) {
    const unsigned d = a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i];
    ++counts[d];
  }
}

const KernelTable kNeon{Isa::Neon, &count_equal_neon, &residue_histogram_neon};

}  // namespace

const KernelTable& neon_table() { return kNeon; }

}  // namespace powerspec::simd::detail
