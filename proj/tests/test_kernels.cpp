#include <doctest.h>

#include <random>

#include "powerspec/kernels.hpp"

using namespace powerspec::simd;

namespace {

std::vector<std::uint8_t> random_digits(std::mt19937& rng, std::size_t len, unsigned p) {
  std::uniform_int_distribution<unsigned> d(0, p - 1);
  std::vector<std::uint8_t> v(len);
  for (auto& x : v) x = static_cast<std::uint8_t>(d(rng));
  return v;
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("scalar reference against naive loops") {
    std::mt19937 rng(7);
    const auto& s = kernels_for(Isa::Scalar);
    for (unsigned p : {2u, 3u, 11u, 255u}) {
      const auto a = random_digits(rng, 1000, p), b = random_digits(rng, 1000, p);
      std::size_t eq = 0;
      std::vector<std::uint64_t> want(p, 0), got(p, 0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        eq += a[i] == b[i];
        ++want[(a[i] + p - b[i]) % p];
      }
      CHECK(s.count_equal(a.data(), b.data(), a.size()) == eq);
      s.residue_histogram(a.data(), b.data(), a.size(), p, got.data());
      CHECK(got == want);
    }
  }

  TEST_CASE("every available variant matches the scalar kernels") {
    std::mt19937 rng(11);
    const auto& ref = kernels_for(Isa::Scalar);
    const std::size_t lengths[] = {0, 1, 15, 31, 32, 33, 63, 64, 255, 1000, 255 * 32 - 1, 255 * 32, 255 * 32 + 5,
                                   255 * 64 + 77, 70000};
    for (Isa isa : available_isas()) {
      CAPTURE(isa_name(isa));
      const auto& k = kernels_for(isa);
      for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 16u, 17u, 31u, 101u, 255u}) {
        for (std::size_t len : lengths) {
          CAPTURE(p);
          CAPTURE(len);
          const auto a = random_digits(rng, len, p), b = random_digits(rng, len, p);
          CHECK(k.count_equal(a.data(), b.data(), len) == ref.count_equal(a.data(), b.data(), len));
          std::vector<std::uint64_t> x(p, 0), y(p, 0);
          k.residue_histogram(a.data(), b.data(), len, p, x.data());
          ref.residue_histogram(a.data(), b.data(), len, p, y.data());
          CHECK(x == y);
        }
      }
      // Long runs of equal bytes push the byte accumulators to their limit.
      const std::vector<std::uint8_t> zeros(100000, 0);
      CHECK(k.count_equal(zeros.data(), zeros.data(), zeros.size()) == zeros.size());
      std::vector<std::uint64_t> h(3, 0);
      k.residue_histogram(zeros.data(), zeros.data(), zeros.size(), 3, h.data());
      CHECK(h[0] == zeros.size());
    }
  }

  TEST_CASE("span wrappers validate their inputs") {
    std::vector<std::uint8_t> a(10, 1), b(9, 1);
    std::vector<std::uint64_t> counts(3, 0);
    CHECK_THROWS(count_equal(a, b));
    CHECK_THROWS(residue_histogram(a, a, 1, counts));
    CHECK_THROWS(residue_histogram(a, a, 5, counts));
    residue_histogram(a, a, 3, counts);
    CHECK(counts[0] == 10);
    CHECK(available_isas().front() == Isa::Scalar);
  }
}
