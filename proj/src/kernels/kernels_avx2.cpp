#include <immintrin.h>

#include <algorithm>
#include <array>

#include "powerspec/kernels.hpp"

namespace powerspec::simd::detail {

namespace {

// Byte lanes count matches by subtracting the 0xFF compare mask; flush to
// 64-bit lanes with SAD before any lane can pass 255.
constexpr std::size_t kFlushBlocks = 255;

inline std::uint64_t horizontal_sum(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

std::size_t count_equal_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t len) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i total = zero;
  std::size_t i = 0;
  while (len - i >= 32) {
    const std::size_t blocks = std::min(kFlushBlocks, (len - i) / 32);
    __m256i acc = zero;
    for (std::size_t k = 0; k < blocks; ++k, i += 32) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
      acc = _mm256_sub_epi8(acc, _mm256_cmpeq_epi8(va, vb));
    }
    total = _mm256_add_epi64(total, _mm256_sad_epu8(acc, zero));
  }
  std::size_t n = horizontal_sum(total);
  for (; i < len; ++i) n += a[i] == b[i];
  return n;
}

inline __m256i residue_diff(__m256i va, __m256i vb, __m256i vp) {
  const __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(va, vb), va);
  return _mm256_add_epi8(_mm256_sub_epi8(va, vb), _mm256_andnot_si256(ge, vp));
}

// Small moduli: one compare pass per nonzero residue over a block that stays
// in L1; residue 0 is the remainder.
constexpr unsigned kComparePassLimit = 16;

void residue_histogram_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t len, unsigned p,
                            std::uint64_t* counts) {
  if (p == 2) {
    // a - b = a xor b over F_2
    const std::size_t eq = count_equal_avx2(a, b, len);
    counts[0] += eq;
    counts[1] += len - eq;
    return;
  }
  const __m256i zero = _mm256_setzero_si256();
  const __m256i vp = _mm256_set1_epi8(static_cast<char>(p));
  alignas(32) std::array<std::uint8_t, 32 * kFlushBlocks> block;
  std::size_t i = 0;
  while (len - i >= 32) {
    const std::size_t blocks = std::min(kFlushBlocks, (len - i) / 32);
    for (std::size_t k = 0; k < blocks; ++k) {
      const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i + 32 * k));
      const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i + 32 * k));
      _mm256_store_si256(reinterpret_cast<__m256i*>(block.data() + 32 * k), residue_diff(va, vb, vp));
    }
    const std::size_t bytes = 32 * blocks;
    if (p <= kComparePassLimit) {
      std::uint64_t nonzero = 0;
      for (unsigned r = 1; r < p; ++r) {
        const __m256i vr = _mm256_set1_epi8(static_cast<char>(r));
        __m256i acc = zero;
        for (std::size_t k = 0; k < blocks; ++k) {
          const __m256i d = _mm256_load_si256(reinterpret_cast<const __m256i*>(block.data() + 32 * k));
          acc = _mm256_sub_epi8(acc, _mm256_cmpeq_epi8(d, vr));
        }
        const std::uint64_t c = horizontal_sum(_mm256_sad_epu8(acc, zero));
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

const KernelTable kAvx2{Isa::Avx2, &count_equal_avx2, &residue_histogram_avx2};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace powerspec::simd::detail
