#include <doctest.h>

#include "oracle/poly_field.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/expsum.hpp"

using namespace powerspec;

namespace {

using Dist = std::map<std::int64_t, std::uint64_t>;

}  // namespace

TEST_SUITE("expsum") {
  TEST_CASE("trace counts and single sums") {
    const FieldContext f = make_field(2, 4);
    const auto tc = trace_counts(f, 6, f.one(), f.one());
    CHECK(tc.counts == std::vector<std::uint64_t>{12, 4});
    CHECK(tc.total() == 16);
    CHECK(exp_sum(f, 6, f.one(), f.one()).value == 8);
    CHECK(exp_sum(f, 6, Element::zero(), Element::zero()).value == 16);
    CHECK(exp_sum(f, 6, Element::zero(), f.psi()).value == 0);
  }

  TEST_CASE("irrational sums are reported, not rounded") {
    const FieldContext f3 = make_field(3, 1);
    const auto tc = trace_counts(f3, 2, f3.one(), Element::zero());
    CHECK(tc.counts == std::vector<std::uint64_t>{1, 2, 0});
    CHECK(!evaluate_sum(tc).rational);
    CHECK_THROWS_AS(exp_sum(f3, 2, f3.one(), Element::zero()), IrrationalSumError);
  }

  TEST_CASE("rows through the kernels equal field-op sums") {
    for (auto [p, l] : {std::pair{2u, 1u}, {5u, 1u}}) {
      const Family fam{p, l};
      const FieldContext f = fam.field();
      for (std::uint32_t us : {1u, 2u, 3u, 17u}) {
        const Element u = f.at_slot(us);
        const auto row = sum_row(f, fam.d1(), u);
        for (std::uint32_t vs = 0; vs < f.order(); vs += (p == 2 ? 1 : 13)) {
          CHECK(row[vs] == exp_sum(f, fam.d1(), u, f.at_slot(vs)).value);
        }
      }
    }
  }

  TEST_CASE("distributions: oracle, reduced, closed and the reference") {
    const Dist want21{{-8, 5}, {-4, 60}, {0, 60}, {4, 100}, {8, 15}};
    const Family f21{2, 1};
    const FieldContext F16 = f21.field();
    CHECK(distribution_oracle(F16, f21.d1()).counts == want21);
    CHECK(distribution_reduced(F16, f21.d1()).counts == want21);
    CHECK(distribution_closed(2, 1).counts == want21);
    const oracle::PolyField ref16(2, 4);
    const auto r16 = oracle::exp_sum_distribution(ref16, 6);
    CHECK(r16.all_rational);
    CHECK(r16.dist == want21);

    const Dist want51{{-50, 33280}, {-25, 62400}, {0, 161616}, {25, 128960}, {100, 3120}, {125, 624}};
    const Family f51{5, 1};
    const FieldContext F625 = f51.field();
    CHECK(distribution_oracle(F625, f51.d1(), kDefaultPairBudget, Exec{2}).counts == want51);
    CHECK(distribution_reduced(F625, f51.d1()).counts == want51);
    CHECK(distribution_closed(5, 1).counts == want51);
  }

  TEST_CASE("closed rows before merging") {
    const auto rows = closed_sum_rows(2, 1);
    REQUIRE(rows.size() == 6);
    std::uint64_t total = 0;
    for (const auto& [v, c] : rows) total += c;
    CHECK(total == 15 * 16);
    CHECK(closed_sum_rows(2, 3).size() == 6);
    CHECK_THROWS_AS(closed_sum_rows(3, 1), PreconditionError);
  }

  TEST_CASE("reduced path matches closed form on the larger fields") {
    const Family f23{2, 3};
    CHECK(distribution_reduced(f23.field(), f23.d1()) == distribution_closed(2, 3));
    const Family f111{11, 1};
    CHECK(distribution_reduced(f111.field(), f111.d1()) == distribution_closed(11, 1));
  }

  TEST_CASE("budget and preconditions") {
    const Family f23{2, 3};
    const FieldContext F = f23.field();
    CHECK_THROWS_AS(distribution_oracle(F, f23.d1(), 1000), SizeError);
    CHECK_THROWS_AS(distribution_reduced(make_field(3, 4), 21), PreconditionError);
    CHECK_THROWS_AS(distribution_reduced(make_field(2, 4), 5), PreconditionError);
    CHECK_THROWS_AS(sum_row(F, 0, F.one()), PreconditionError);
  }

  TEST_CASE("moment identities") {
    const Family f21{2, 1};
    const auto m = moment_check(f21.field(), f21.d1());
    CHECK(m.holds());
    CHECK(m.m1 == 256);
    CHECK(m.m2 == 4096);
    CHECK(m.m3 == 11776);
    const Family f51{5, 1};
    const auto m5 = moment_check(f51.field(), f51.d1());
    CHECK(m5.m1 == 390625);
    CHECK(m5.m2 == 244140625);
    CHECK(m5.m3 == 1462890625);
  }

  TEST_CASE("quadratic-form sums by coset class") {
    const Family fam{2, 1};
    const FieldContext f = fam.field();
    CHECK(gauss_like(f, Element::zero()) == 16);
    CHECK(gauss_like(f, f.one()) == -8);
    CHECK(gauss_like(f, f.psi()) == 4);
    const Family f5{5, 1};
    const FieldContext g = f5.field();
    for (std::uint32_t k = 0; k < 12; ++k) CHECK_NOTHROW(gauss_like(g, g.power_of_psi(k)));
  }

  TEST_CASE("n-counts reproduce every sum") {
    const Family fam{2, 1};
    const FieldContext f = fam.field();
    CHECK(n_counts(f, fam.d1(), f.one(), f.one()) == NTriple{1, 0, 2});
    CHECK(n_counts(f, fam.d1(), f.psi(), f.psi()) == NTriple{1, 1, 1});
    for (std::uint32_t us = 1; us < f.order(); ++us) {
      for (std::uint32_t vs = 0; vs < f.order(); ++vs) {
        const Element u = f.at_slot(us), v = f.at_slot(vs);
        const NTriple t = n_counts(f, fam.d1(), u, v);
        CHECK(t.n_inf + t.n0 + t.n1 == fam.pl() + 1);
        CHECK(exp_sum_via_ncounts(f, fam.d1(), u, v) == exp_sum(f, fam.d1(), u, v).value);
      }
    }
    const Family f5{5, 1};
    const FieldContext g = f5.field();
    for (std::uint32_t us = 1; us < g.order(); us += 37) {
      for (std::uint32_t vs = 0; vs < g.order(); vs += 11) {
        const Element u = g.at_slot(us), v = g.at_slot(vs);
        CHECK(exp_sum_via_ncounts(g, f5.d1(), u, v) == exp_sum(g, f5.d1(), u, v).value);
      }
    }
    CHECK_THROWS_AS(n_counts(f, fam.d1(), Element::zero(), f.one()), PreconditionError);
  }
}
