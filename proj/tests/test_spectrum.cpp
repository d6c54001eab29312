#include <doctest.h>

#include "oracle/poly_field.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/family.hpp"
#include "powerspec/spectrum.hpp"

using namespace powerspec;

TEST_SUITE("spectrum") {
  TEST_CASE("family exponents") {
    const Family f{3, 1};
    CHECK(f.n() == 4);
    CHECK(f.d() == 7);
    CHECK(f.d1() == 21);
    CHECK(Family{2, 2}.d() == 13);
    CHECK(Family{2, 2}.d1() == 52);
    CHECK(Family{2, 1}.mod3_case());
    CHECK(!Family{2, 2}.mod3_case());
    CHECK(!Family{3, 1}.mod3_case());
    CHECK(Family{11, 1}.mod3_case());
    CHECK_THROWS_AS(Family::of_field(make_field(2, 6)), PreconditionError);
    CHECK_THROWS_AS((Family{3, 1}.require_mod3()), PreconditionError);
  }

  TEST_CASE("oracle spectra against the brute-force reference") {
    for (auto [p, l] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
      const Family fam{p, l};
      const FieldContext f = fam.field();
      const oracle::PolyField ref(p, fam.n());
      const auto want = oracle::diff_spectrum(ref, static_cast<std::uint64_t>(fam.d()));
      CHECK(diff_spectrum_oracle(f, fam.d()).counts == want);
      CHECK(diff_spectrum_oracle(f, fam.d1()).counts == want);
      CHECK(diff_spectrum_closed(p, l).counts == want);
    }
  }

  TEST_CASE("known spectra") {
    const auto s16 = diff_spectrum_closed(2, 1);
    CHECK(s16.counts == std::map<std::uint64_t, std::uint64_t>{{0, 8}, {2, 8}});
    CHECK(s16.delta == 2);
    const auto s81 = diff_spectrum_closed(3, 1);
    CHECK(s81.counts == std::map<std::uint64_t, std::uint64_t>{{0, 47}, {2, 30}, {3, 1}, {6, 3}});
    CHECK(s81.delta == 6);
    CHECK(s81.satisfies_identities());
    const auto s256 = diff_spectrum_closed(2, 2);
    CHECK(s256.counts == std::map<std::uint64_t, std::uint64_t>{{0, 149}, {2, 102}, {4, 1}, {12, 4}});
    CHECK(diff_spectrum_closed(2, 3).satisfies_identities());
    CHECK(diff_spectrum_closed(11, 1).satisfies_identities());
  }

  TEST_CASE("closed form matches the oracle on larger fields") {
    const Family fam{2, 3};
    const FieldContext f = fam.field();
    CHECK(diff_spectrum_oracle(f, fam.d(), Exec{2}) == diff_spectrum_closed(2, 3));
  }

  TEST_CASE("single delta values and the full a sweep") {
    const FieldContext f = make_field(3, 4);
    CHECK(delta_b(f, 7, f.power_of_psi(20)) == 6);
    CHECK(delta_b(f, 7, f.one()) == 3);
    const auto row = delta_row(f, 7);
    for (std::uint32_t s = 0; s < f.order(); ++s) CHECK(row[s] == delta_b(f, 7, f.at_slot(s)));
    CHECK(diff_spectrum_full_sweep(f, 7) == diff_spectrum_oracle(f, 7));
  }

  TEST_CASE("per-b classification") {
    for (auto [p, l] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
      const Family fam{p, l};
      const auto c = classify_delta(fam.field(), fam.d());
      CHECK(c.holds);
      CHECK(c.delta_at_one == fam.pl());
      CHECK(c.mu_members == fam.pl());
      CHECK(c.mu_matching == fam.pl());
      CHECK(c.other_in_zero_two == c.other_members);
    }
  }

  TEST_CASE("c-differentials") {
    const Family fam{3, 1};
    const FieldContext f = fam.field();
    // c = 1 is the ordinary derivative
    for (std::uint32_t s = 0; s < f.order(); s += 5) {
      CHECK(c_delta(f, 7, f.one(), f.at_slot(s)) == delta_b(f, 7, f.at_slot(s)));
    }
    const auto one = c_diff_uniformity(f, 7, f.one());
    CHECK(one.uniformity == 6);
    CHECK(!one.bound.has_value());

    const auto rep = c_diff_uniformity(f, 7, f.psi());
    REQUIRE(rep.bound.has_value());
    CHECK(*rep.bound == 16);
    CHECK(rep.bound_holds);
    CHECK(c_delta(f, 7, f.psi(), rep.witness_b) == rep.witness_count);

    // Brute-force c-uniformity over every a and b for one c outside mu_4.
    const oracle::PolyField ref(3, 4);
    const std::uint64_t c = f.code(f.psi());
    std::uint64_t best = 0;
    for (std::uint64_t a = 0; a < 81; ++a) {
      std::vector<std::uint64_t> hits(81, 0);
      for (std::uint64_t x = 0; x < 81; ++x) {
        ++hits[ref.sub(ref.pow(ref.add(x, a), 7), ref.mul(c, ref.pow(x, 7)))];
      }
      for (auto h : hits) best = std::max(best, h);
    }
    CHECK(rep.uniformity == best);

    const auto sweep = c_diff_sweep(f, 7);
    CHECK(sweep.c_values == 81 - 4);
    CHECK(sweep.all_hold);
    CHECK(sweep.bound == 16);
    CHECK(sweep.gcd_term <= 3);
    CHECK_THROWS_AS(c_diff_sweep(make_field(2, 6), 3), PreconditionError);
  }
}
