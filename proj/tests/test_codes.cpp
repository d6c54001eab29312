#include <doctest.h>

#include <set>

#include "oracle/poly_field.hpp"
#include "powerspec/codes.hpp"
#include "powerspec/errors.hpp"

using namespace powerspec;

namespace {

using Enum = std::map<std::uint64_t, std::uint64_t>;

}  // namespace

TEST_SUITE("codes") {
  TEST_CASE("code parameters") {
    const Family fam{5, 1};
    const FieldContext f = fam.field();
    const CodeSpec spec = CodeSpec::make(f, fam.d1());
    CHECK(spec.length_full == 624);
    CHECK(spec.length_short == 156);
    CHECK(spec.dimension == 8);
    CHECK_THROWS_AS(CodeSpec::make(f, 2), PreconditionError);
  }

  TEST_CASE("codewords agree with the reference construction") {
    const Family fam{3, 1};
    const FieldContext f = fam.field();
    const oracle::PolyField ref(3, 4);
    const oracle::TraceCode code(ref, static_cast<std::uint64_t>(fam.d1()));
    for (std::uint64_t u = 0; u < 81; u += 4) {
      for (std::uint64_t v = 0; v < 81; v += 3) {
        const auto w = codeword(f, fam.d1(), f.from_code(static_cast<std::uint32_t>(u)),
                                f.from_code(static_cast<std::uint32_t>(v)), CodeVariant::Short);
        CHECK(w.coords == code.word(u, v));
      }
    }
  }

  TEST_CASE("full words repeat the short word scaled by beta") {
    const Family fam{5, 1};
    const FieldContext f = fam.field();
    const auto full = codeword(f, fam.d1(), f.psi(), f.power_of_psi(7), CodeVariant::Full);
    const auto part = codeword(f, fam.d1(), f.psi(), f.power_of_psi(7), CodeVariant::Short);
    const std::uint32_t b = f.to_prime_field(f.beta());
    std::uint32_t scale = 1;
    for (std::size_t k = 0; k < 4; ++k) {
      for (std::size_t j = 0; j < part.coords.size(); ++j) {
        CHECK(full.coords[k * 156 + j] == (scale * part.coords[j]) % 5);
      }
      scale = scale * b % 5;
    }
    CHECK(hamming_weight(full) == 4 * hamming_weight(part));
  }

  TEST_CASE("weights through exponential sums") {
    const Family fam{5, 1};
    const FieldContext f = fam.field();
    for (std::uint32_t k : {0u, 1u, 5u, 100u}) {
      for (std::uint32_t j : {0u, 3u, 77u}) {
        const Element u = f.power_of_psi(k), v = f.power_of_psi(j);
        CHECK(weight_via_sum(f, fam.d1(), u, v, CodeVariant::Short) ==
              hamming_weight(codeword(f, fam.d1(), u, v, CodeVariant::Short)));
        CHECK_NOTHROW(weight_via_sum(f, fam.d1(), u, v, CodeVariant::Full));
      }
    }
  }

  TEST_CASE("weight enumerators") {
    const Family f21{2, 1};
    const FieldContext F16 = f21.field();
    const Enum want{{0, 1}, {4, 15}, {6, 100}, {8, 75}, {10, 60}, {12, 5}};
    for (auto m : {WeightMethod::Direct, WeightMethod::ViaSums, WeightMethod::Closed}) {
      CHECK(weight_distribution(F16, f21.d1(), m).counts == want);
    }
    // Reference enumeration
    const oracle::PolyField ref(2, 4);
    const oracle::TraceCode code(ref, 6);
    Enum brute;
    for (std::uint64_t u = 0; u < 16; ++u) {
      for (std::uint64_t v = 0; v < 16; ++v) ++brute[oracle::TraceCode::weight(code.word(u, v))];
    }
    CHECK(brute == want);

    const Family f51{5, 1};
    const auto w = cross_checked_weights(f51.field(), f51.d1(),
                                         {WeightMethod::Direct, WeightMethod::ViaSums, WeightMethod::Closed});
    CHECK(w.counts == Enum{{0, 1}, {100, 624}, {105, 3120}, {120, 128960}, {125, 162240}, {130, 62400}, {135, 33280}});
    CHECK(w.min_nonzero() == 100);
    CHECK(w.total() == 390625);
  }

  TEST_CASE("constacyclic shift") {
    const Family fam{3, 1};
    const FieldContext f = fam.field();
    const std::vector<std::uint8_t> word{1, 2, 0, 1};
    // beta^{-1} = beta = 2 in F_3
    CHECK(constacyclic_shift(f, word) == std::vector<std::uint8_t>{2, 1, 2, 0});
    const auto r = constacyclic_check(f, fam.d1());
    CHECK(r.exhaustive);
    CHECK(r.tested == 81 * 81);
    const Family f51{5, 1};
    const auto s = constacyclic_check(f51.field(), f51.d1(), 2000);
    CHECK(!s.exhaustive);
    CHECK(s.tested == 2001);
  }

  TEST_CASE("dimension and rank") {
    const Family f21{2, 1};
    CHECK(dimension_check(f21.field(), f21.d1()) == 8);
    const Family f51{5, 1};
    CHECK(dimension_check(f51.field(), f51.d1()) == 8);
    CHECK(rank_mod_p({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}}, 7) == 2);
    CHECK(rank_mod_p({{1, 0}, {0, 1}}, 2) == 2);
    CHECK(rank_mod_p({}, 3) == 0);
    const auto csv = generator_matrix_csv(f21.field(), f21.d1());
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 8);
  }

  TEST_CASE("minimal and parity-check polynomials") {
    const FieldContext f = make_field(2, 4);
    CHECK(minimal_polynomial(f, f.psi()) == f.params().modulus);
    CHECK(minimal_polynomial(f, f.one()) == std::vector<std::uint32_t>{1, 1});
    // psi^5 lies in F_4
    CHECK(minimal_polynomial(f, f.power_of_psi(5)).size() == 3);
    const auto h = parity_check_polynomial(f, 6);
    CHECK(h.size() == 9);
    CHECK(h.back() == 1);
  }
}
