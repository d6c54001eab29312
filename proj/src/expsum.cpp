#include "powerspec/expsum.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "powerspec/kernels.hpp"

namespace powerspec {

std::uint64_t TraceCountVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
}

std::uint64_t SumDistribution::total() const {
  std::uint64_t t = 0;
  for (const auto& [value, count] : counts) t += count;
  return t;
}

SumValue evaluate_sum(const TraceCountVector& tc) {
  SumValue s;
  if (tc.counts.size() < 2) return s;
  s.rational = std::all_of(tc.counts.begin() + 1, tc.counts.end(),
                           [&](std::uint64_t c) { return c == tc.counts[1]; });
  s.value = static_cast<std::int64_t>(tc.counts[0]) - static_cast<std::int64_t>(tc.counts[1]);
  return s;
}

namespace {

void require_positive_exponent(std::int64_t d1) {
  if (d1 < 1) throw PreconditionError("exponent must be positive");
}

std::int64_t checked_exact_div(__int128 num, __int128 den, const char* what) {
  if (num % den != 0) throw VerificationError(std::string("inexact division in ") + what);
  return static_cast<std::int64_t>(num / den);
}

SumValue rational_or_throw(const FieldContext& field, const TraceCountVector& tc, Element u, Element v) {
  const SumValue s = evaluate_sum(tc);
  if (!s.rational) {
    throw IrrationalSumError("exponential sum at (u, v) = (" + field.to_string(u) + ", " + field.to_string(v) +
                             ") is not rational");
  }
  return s;
}

// Tr(u psi^{k d1}) for k in [0, p^n - 1).
void load_u_row(const FieldContext& field, std::int64_t d1, Element u, std::vector<std::uint8_t>& row) {
  const std::uint32_t qm1 = field.group_order();
  row.assign(qm1, 0);
  if (u.is_zero()) return;
  const auto tr = field.trace_sequence();
  const std::uint64_t step = static_cast<std::uint64_t>(d1) % qm1;
  std::uint64_t e = u.index();
  for (std::uint32_t k = 0; k < qm1; ++k) {
    row[k] = tr[e];
    e += step;
    if (e >= qm1) e -= qm1;
  }
}

// Values S(u, v) for all v slots given the u row; zeros is a q-1 zero buffer.
void fill_sum_row(const FieldContext& field, const std::vector<std::uint8_t>& urow,
                  const std::vector<std::uint8_t>& zeros, Element u, std::vector<std::int64_t>& out) {
  const std::uint32_t qm1 = field.group_order();
  const unsigned p = field.p();
  const auto tr = field.trace_sequence();
  const auto& kt = simd::active_kernels();
  out.resize(field.order());
  TraceCountVector tc;
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    tc.counts.assign(p, 0);
    tc.counts[0] = 1;  // x = 0
    const std::uint8_t* b = s == 0 ? zeros.data() : tr.data() + (s - 1);
    kt.residue_histogram(urow.data(), b, qm1, p, tc.counts.data());
    out[s] = rational_or_throw(field, tc, u, field.at_slot(s)).value;
  }
}

}  // namespace

TraceCountVector trace_counts(const FieldContext& field, std::int64_t d1, Element u, Element v) {
  TraceCountVector tc;
  tc.counts.assign(field.p(), 0);
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    const Element x = field.at_slot(s);
    const Element arg = field.sub(field.mul(u, field.pow(x, d1)), field.mul(v, x));
    ++tc.counts[field.trace(arg)];
  }
  return tc;
}

SumValue exp_sum(const FieldContext& field, std::int64_t d1, Element u, Element v) {
  return rational_or_throw(field, trace_counts(field, d1, u, v), u, v);
}

std::int64_t gauss_like(const FieldContext& field, Element a) {
  const Family fam = Family::of_field(field);
  const std::uint64_t pl = fam.pl();
  TraceCountVector tc;
  tc.counts.assign(field.p(), 0);
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    const Element y = field.at_slot(s);
    ++tc.counts[field.trace(field.mul(a, field.pow(y, static_cast<std::int64_t>(pl + 1))))];
  }
  const std::int64_t value = rational_or_throw(field, tc, a, Element::zero()).value;
  std::int64_t expected = 0;
  if (a.is_zero()) {
    expected = static_cast<std::int64_t>(field.order());
  } else if (field.coset_class(a, pl + 1) == 0) {
    expected = -static_cast<std::int64_t>(ipow128(fam.p, 3 * fam.l));
  } else {
    expected = static_cast<std::int64_t>(ipow128(fam.p, 2 * fam.l));
  }
  if (value != expected) {
    throw VerificationError("quadratic-form sum at a = " + field.to_string(a) + " is " + std::to_string(value) +
                            ", expected " + std::to_string(expected));
  }
  return value;
}

NTriple n_counts(const FieldContext& field, std::int64_t d1, Element u, Element v) {
  const Family fam = Family::of_field(field);
  fam.require_mod3();
  if (u.is_zero()) throw PreconditionError("n_counts requires u != 0");
  const std::uint64_t m = fam.pl() + 1;
  NTriple t;
  for (std::uint64_t j = 0; j < m; ++j) {
    const auto jj = static_cast<std::int64_t>(j);
    const Element a = field.sub(field.mul(u, field.power_of_psi(jj * (d1 % field.group_order()))),
                                field.mul(v, field.power_of_psi(jj)));
    if (a.is_zero()) {
      ++t.n_inf;
    } else if (field.coset_class(a, m) == 0) {
      ++t.n0;
    } else {
      ++t.n1;
    }
  }
  return t;
}

std::int64_t sum_from_ntriple(const Family& fam, const NTriple& t) {
  const __int128 num = ipow128(fam.p, 4 * fam.l) * t.n_inf - ipow128(fam.p, 3 * fam.l) * t.n0 +
                       ipow128(fam.p, 2 * fam.l) * t.n1;
  return checked_exact_div(num, static_cast<__int128>(fam.pl()) + 1, "n-count sum formula");
}

std::int64_t exp_sum_via_ncounts(const FieldContext& field, std::int64_t d1, Element u, Element v) {
  return sum_from_ntriple(Family::of_field(field), n_counts(field, d1, u, v));
}

std::vector<std::int64_t> sum_row(const FieldContext& field, std::int64_t d1, Element u) {
  require_positive_exponent(d1);
  std::vector<std::uint8_t> urow;
  const std::vector<std::uint8_t> zeros(field.group_order(), 0);
  load_u_row(field, d1, u, urow);
  std::vector<std::int64_t> out;
  fill_sum_row(field, urow, zeros, u, out);
  return out;
}

namespace {

void check_budget(const FieldContext& field, std::uint64_t pair_budget) {
  const unsigned __int128 pairs = static_cast<unsigned __int128>(field.order()) * field.order();
  if (pairs > pair_budget) {
    throw SizeError("full (u, v) sweep needs " + std::to_string(static_cast<std::uint64_t>(pairs)) +
                    " pair evaluations, budget is " + std::to_string(pair_budget) +
                    "; use the reduced distribution");
  }
}

// Runs fn(u, row_values) for every u slot in [first_slot, q) across workers;
// fn receives the worker id for per-worker accumulation.
template <typename Fn>
void sweep_rows(const FieldContext& field, std::int64_t d1, std::uint32_t first_slot, const Exec& exec, Fn&& fn) {
  require_positive_exponent(d1);
  const std::vector<std::uint8_t> zeros(field.group_order(), 0);
  const std::size_t rows = field.order() - first_slot;
  parallel_chunks(exec, rows, [&](std::size_t w, std::size_t begin, std::size_t end) {
    std::vector<std::uint8_t> urow;
    std::vector<std::int64_t> values;
    for (std::size_t r = begin; r < end; ++r) {
      const Element u = field.at_slot(static_cast<std::uint32_t>(first_slot + r));
      load_u_row(field, d1, u, urow);
      fill_sum_row(field, urow, zeros, u, values);
      fn(w, u, values);
    }
  });
}

}  // namespace

SumDistribution distribution_oracle(const FieldContext& field, std::int64_t d1, std::uint64_t pair_budget,
                                    const Exec& exec) {
  check_budget(field, pair_budget);
  std::vector<std::map<std::int64_t, std::uint64_t>> partial(chunk_count(exec, field.order() - 1));
  sweep_rows(field, d1, 1, exec, [&](std::size_t w, Element, const std::vector<std::int64_t>& values) {
    for (std::int64_t s : values) ++partial[w][s];
  });
  SumDistribution dist;
  dist.domain = SumDomain::NonzeroU;
  for (const auto& m : partial) {
    for (const auto& [value, count] : m) dist.counts[value] += count;
  }
  return dist;
}

SumDistribution distribution_reduced(const FieldContext& field, std::int64_t d1, const Exec& exec) {
  require_positive_exponent(d1);
  const std::uint32_t qm1 = field.group_order();
  if (qm1 % 3 != 0) throw PreconditionError("3 does not divide p^n - 1");
  if (std::gcd(static_cast<std::uint64_t>(d1), static_cast<std::uint64_t>(qm1)) != 3) {
    throw PreconditionError("gcd(d1, p^n - 1) != 3");
  }
  std::array<std::map<std::int64_t, std::uint64_t>, 3> rows;
  parallel_chunks(exec, 3, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) {
      for (std::int64_t s : sum_row(field, d1, Element::from_index(static_cast<std::uint32_t>(j)))) ++rows[j][s];
    }
  });
  if (rows[1] != rows[2]) {
    throw VerificationError("u = psi and u = psi^2 rows differ as multisets");
  }
  SumDistribution dist;
  dist.domain = SumDomain::NonzeroU;
  const std::uint64_t scale = qm1 / 3;
  for (const auto& row : rows) {
    for (const auto& [value, count] : row) dist.counts[value] += count * scale;
  }
  return dist;
}

std::vector<std::pair<std::int64_t, std::uint64_t>> closed_sum_rows(std::uint32_t p, std::uint32_t l) {
  const Family fam{p, l};
  fam.require_mod3();
  auto P = [&](std::uint32_t k) { return ipow128(p, k * l); };
  auto count = [&](__int128 num, __int128 den) {
    return static_cast<std::uint64_t>(checked_exact_div(num, den, "value distribution"));
  };
  const __int128 e0 = P(8) - 3 * P(7) + 3 * P(6) - P(5) - P(4) + 3 * P(3) - 3 * P(2) + P(1);
  const __int128 e1 = P(7) - P(6) - P(3) + P(2);
  const __int128 e2 = P(8) - P(7) + P(6) - P(5) - 3 * P(4) + P(3) - P(2) + P(1) + 2;
  const __int128 e3 = P(8) - P(5) - P(4) + P(1);
  const __int128 e4 = P(1) * (P(4) - 1);
  const __int128 e5 = P(4) - 1;
  const auto v2 = static_cast<std::int64_t>(P(2));
  const auto v3 = static_cast<std::int64_t>(P(3));
  return {
      {-2 * v2, count(e0, 6)}, {-v2, count(e1, 1)},      {0, count(e2, 2)},
      {v2, count(e3, 3)},      {v3 - v2, count(e4, 1)}, {v3, count(e5, 1)},
  };
}

SumDistribution distribution_closed(std::uint32_t p, std::uint32_t l) {
  SumDistribution dist;
  dist.domain = SumDomain::NonzeroU;
  for (const auto& [value, count] : closed_sum_rows(p, l)) dist.counts[value] += count;
  std::erase_if(dist.counts, [](const auto& kv) { return kv.second == 0; });
  return dist;
}

MomentReport moment_check(const FieldContext& field, std::int64_t d1, std::uint64_t pair_budget,
                          const Exec& exec) {
  const Family fam = Family::of_field(field);
  check_budget(field, pair_budget);
  struct Acc {
    __int128 m1 = 0, m2 = 0, m3 = 0, u0 = 0;
  };
  std::vector<Acc> partial(chunk_count(exec, field.order()));
  sweep_rows(field, d1, 0, exec, [&](std::size_t w, Element u, const std::vector<std::int64_t>& values) {
    Acc& a = partial[w];
    for (std::int64_t s : values) {
      const __int128 v = s;
      a.m1 += v;
      a.m2 += v * v;
      a.m3 += v * v * v;
      if (u.is_zero()) a.u0 += v;
    }
  });
  MomentReport r;
  for (const auto& a : partial) {
    r.m1 += a.m1;
    r.m2 += a.m2;
    r.m3 += a.m3;
    r.u_zero_m1 += a.u0;
  }
  const std::uint32_t n = fam.n();
  r.expected1 = ipow128(fam.p, 2 * n);
  r.expected2 = ipow128(fam.p, 3 * n);
  r.expected3 = ipow128(fam.p, 13 * fam.l) + ipow128(fam.p, 3 * n) - ipow128(fam.p, 9 * fam.l);
  if (!r.holds()) throw VerificationError("moment identities do not hold");
  return r;
}

}  // namespace powerspec
