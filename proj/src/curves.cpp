#include "powerspec/curves.hpp"

#include <numeric>

#include "powerspec/errors.hpp"
#include "powerspec/family.hpp"

namespace powerspec {

std::uint32_t CurveSpec::t() const { return std::gcd(n1, n2); }

void CurveSpec::validate(const FieldContext& field) const {
  if (k == 0 || s == 0 || n1 == 0 || n2 == 0) throw PreconditionError("k, s, n1, n2 must be positive");
  if (static_cast<std::uint64_t>(2) * k * s != field.n()) throw PreconditionError("n must equal 2ks");
  const auto ps1 = static_cast<std::uint64_t>(ipow128(field.p(), s)) + 1;
  if (ps1 % std::lcm<std::uint64_t>(n1, n2) != 0) throw PreconditionError("lcm(n1, n2) must divide p^s + 1");
  if (r1 >= n1 || r2 >= n2) throw PreconditionError("need 0 <= r1 < n1 and 0 <= r2 < n2");
  if (alpha.is_zero() || beta.is_zero()) throw PreconditionError("alpha and beta must be nonzero");
  if (field.coset_class(alpha, n1) != r1) throw PreconditionError("alpha is not in the coset C_{1,r1}");
  if (field.coset_class(beta, n2) != r2) throw PreconditionError("beta is not in the coset C_{2,r2}");
}

std::string case_label(CurveCase c) {
  switch (c) {
    case CurveCase::I: return "i";
    case CurveCase::II: return "ii";
    case CurveCase::III: return "iii";
    case CurveCase::IV: return "iv";
    case CurveCase::V: return "v";
  }
  return "?";
}

std::uint64_t count_points_oracle(const FieldContext& field, const CurveSpec& spec, bool naive) {
  spec.validate(field);
  const auto q = static_cast<std::uint32_t>(field.order());
  const Element minus_one = field.minus_one();
  if (naive) {
    std::uint64_t n = 0;
    for (std::uint32_t xs = 0; xs < q; ++xs) {
      const Element x = field.at_slot(xs);
      const Element lhs = field.add(field.mul(spec.alpha, field.pow(x, spec.n1)), field.one());
      for (std::uint32_t ys = 0; ys < q; ++ys) {
        const Element y = field.at_slot(ys);
        n += field.add(lhs, field.mul(spec.beta, field.pow(y, spec.n2))).is_zero();
      }
    }
    return n;
  }
  std::vector<std::uint64_t> image(q, 0);
  for (std::uint32_t ys = 0; ys < q; ++ys) {
    ++image[field.slot(field.mul(spec.beta, field.pow(field.at_slot(ys), spec.n2)))];
  }
  std::uint64_t n = 0;
  for (std::uint32_t xs = 0; xs < q; ++xs) {
    const Element x = field.at_slot(xs);
    n += image[field.slot(field.sub(minus_one, field.mul(spec.alpha, field.pow(x, spec.n1))))];
  }
  return n;
}

ClosedCount count_points_closed(const FieldContext& field, const CurveSpec& spec) {
  spec.validate(field);
  const auto q = static_cast<std::int64_t>(field.order());
  const auto h = static_cast<std::int64_t>(ipow128(field.p(), field.n() / 2));
  const std::int64_t sign_k = spec.k % 2 == 0 ? 1 : -1;  // (-1)^k
  const std::int64_t n1 = spec.n1, n2 = spec.n2, t = spec.t();
  const std::int64_t r1 = spec.r1, r2 = spec.r2;

  if (r1 == 0 && r2 == 0) return {CurveCase::I, q - sign_k * ((n1 - 1) * (n2 - 1) + 1 - t) * h - t + 1};
  if (r1 == 0 && r2 % t != 0) return {CurveCase::II, q + sign_k * (n1 - 2) * h + 1};
  if (r2 == 0 && r1 % t != 0) return {CurveCase::III, q + sign_k * (n2 - 2) * h + 1};
  if (r1 != 0 && r2 != 0) {
    if ((r1 - r2) % t != 0) return {CurveCase::IV, q - sign_k * 2 * h + 1};
    return {CurveCase::V, q + sign_k * (t - 2) * h - t + 1};
  }
  throw UncoveredCaseError("the point-count formulas do not cover r1 = " + std::to_string(r1) +
                           ", r2 = " + std::to_string(r2) + ", t = " + std::to_string(t));
}

CurveSweep curve_sweep(const FieldContext& field, std::uint32_t reps) {
  CurveSweep out;
  const std::uint32_t n = field.n();
  for (std::uint32_t s = 1; 2 * s <= n; ++s) {
    if (n % (2 * s) != 0) continue;
    const auto ps1 = static_cast<std::uint32_t>(ipow128(field.p(), s)) + 1;
    std::vector<std::uint32_t> divs;
    for (std::uint32_t d = 1; d <= ps1; ++d) {
      if (ps1 % d == 0) divs.push_back(d);
    }
    for (std::uint32_t n1 : divs) {
      for (std::uint32_t n2 : divs) {
        for (std::uint32_t r1 = 0; r1 < n1; ++r1) {
          for (std::uint32_t r2 = 0; r2 < n2; ++r2) {
            for (std::uint32_t w = 0; w < reps; ++w) {
              CurveSpec spec{n / (2 * s), s, n1, n2, r1, r2,
                             field.power_of_psi(static_cast<std::int64_t>(r1) + std::int64_t{n1} * w),
                             field.power_of_psi(static_cast<std::int64_t>(r2) + std::int64_t{n2} * w)};
              ClosedCount closed;
              try {
                closed = count_points_closed(field, spec);
              } catch (const UncoveredCaseError&) {
                ++out.uncovered;
                continue;
              }
              const auto oracle = count_points_oracle(field, spec);
              if (closed.count >= 0 && static_cast<std::uint64_t>(closed.count) == oracle) {
                ++out.matched[case_label(closed.which)];
              } else {
                ++out.mismatched;
                out.failures.push_back("s=" + std::to_string(s) + " n1=" + std::to_string(n1) +
                                       " n2=" + std::to_string(n2) + " r1=" + std::to_string(r1) +
                                       " r2=" + std::to_string(r2) + " closed=" + std::to_string(closed.count) +
                                       " oracle=" + std::to_string(oracle));
              }
            }
          }
        }
      }
    }
  }
  return out;
}

namespace {

void require_quad_field(const FieldContext& field, const QuadInMuQuery& query) {
  if (field.p() != 2) throw PreconditionError("the quadratic criterion needs characteristic 2");
  if (field.n() != 2 * query.m) throw PreconditionError("n must equal 2m");
  if (query.a.is_zero() || query.b.is_zero()) throw PreconditionError("a and b must be nonzero");
}

}  // namespace

bool quad_roots_in_mu(const FieldContext& field, const QuadInMuQuery& query) {
  require_quad_field(field, query);
  const std::int64_t two_m = std::int64_t{1} << query.m;
  if (query.b != field.pow(query.a, 1 - two_m)) return false;
  // z lies in F_{2^m}, so its relative trace is the sum of m conjugates.
  const Element z = field.pow(query.a, -two_m - 1);
  Element tr = Element::zero();
  Element c = z;
  for (std::uint32_t i = 0; i < query.m; ++i) {
    tr = field.add(tr, c);
    c = field.frobenius(c);
  }
  return tr == field.one();
}

bool quad_roots_in_mu_oracle(const FieldContext& field, const QuadInMuQuery& query) {
  require_quad_field(field, query);
  const std::uint32_t e = (1u << query.m) + 1;
  const std::uint32_t step = field.group_order() / e;
  std::uint32_t roots = 0;
  for (std::uint32_t i = 0; i < e; ++i) {
    const Element x = field.power_of_psi(static_cast<std::int64_t>(i) * step);
    const Element val = field.add(field.add(field.mul(x, x), field.mul(query.a, x)), query.b);
    roots += val.is_zero();
  }
  // a != 0 makes the polynomial separable, so both roots are distinct.
  return roots == 2;
}

QuadSweep quad_sweep(const FieldContext& field) {
  if (field.n() % 2 != 0) throw PreconditionError("n must be even");
  QuadSweep out;
  const std::uint32_t m = field.n() / 2;
  for (std::uint32_t ai = 0; ai < field.group_order(); ++ai) {
    for (std::uint32_t bi = 0; bi < field.group_order(); ++bi) {
      const QuadInMuQuery query{m, Element::from_index(ai), Element::from_index(bi)};
      const bool crit = quad_roots_in_mu(field, query);
      ++out.pairs;
      out.positives += crit;
      out.mismatched += crit != quad_roots_in_mu_oracle(field, query);
    }
  }
  return out;
}

}  // namespace powerspec
