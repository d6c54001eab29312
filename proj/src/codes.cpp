#include "powerspec/codes.hpp"

#include <random>
#include <set>
#include <sstream>

#include "powerspec/family.hpp"
#include "powerspec/kernels.hpp"

namespace powerspec {

namespace {

std::uint64_t short_length(const FieldContext& field) { return field.group_order() / (field.p() - 1); }

std::uint64_t code_length(const FieldContext& field, CodeVariant variant) {
  return variant == CodeVariant::Full ? field.group_order() : short_length(field);
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) { return static_cast<std::uint64_t>(ipow128(b, e)); }

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    const std::int64_t k = r / nr;
    t = std::exchange(nt, t - k * nt);
    r = std::exchange(nr, r - k * nr);
  }
  if (r != 1) throw DomainError("no inverse mod p");
  return (t % p + p) % p;
}

}  // namespace

CodeSpec CodeSpec::make(const FieldContext& field, std::int64_t d1) {
  CodeSpec s;
  s.field = field.params();
  s.d1 = d1;
  s.length_full = field.group_order();
  s.length_short = short_length(field);
  s.dimension = 2 * field.n();
  s.beta = field.beta();
  if (((d1 % (field.p() - 1)) + (field.p() - 1)) % (field.p() - 1) != 1 % (field.p() - 1)) {
    throw PreconditionError("d1 must be 1 mod p-1 for the short code");
  }
  return s;
}

std::uint64_t WeightDistribution::total() const {
  std::uint64_t t = 0;
  for (const auto& [w, c] : counts) t += c;
  return t;
}

std::uint64_t WeightDistribution::min_nonzero() const {
  for (const auto& [w, c] : counts) {
    if (w != 0 && c != 0) return w;
  }
  return 0;
}

Codeword codeword(const FieldContext& field, std::int64_t d1, Element u, Element v, CodeVariant variant) {
  if (field.p() > 255) throw SizeError("codewords require p < 256");
  const std::uint64_t len = code_length(field, variant);
  Codeword w;
  w.u = u;
  w.v = v;
  w.coords.resize(len);
  const std::int64_t step = d1 % field.group_order();
  for (std::uint64_t j = 0; j < len; ++j) {
    const auto jj = static_cast<std::int64_t>(j);
    const Element arg = field.add(field.mul(u, field.power_of_psi(jj * step)), field.mul(v, field.power_of_psi(jj)));
    w.coords[j] = static_cast<std::uint8_t>(field.trace(arg));
  }
  return w;
}

std::uint64_t hamming_weight(const Codeword& word) {
  std::uint64_t w = 0;
  for (auto c : word.coords) w += c != 0;
  return w;
}

std::uint64_t weight_via_sum(const FieldContext& field, std::int64_t d1, Element u, Element v, CodeVariant variant) {
  const std::int64_t s = exp_sum(field, d1, u, field.neg(v)).value;
  const std::int64_t p = field.p();
  if (s % p != 0) throw VerificationError("exponential sum not divisible by p");
  const std::int64_t short_w = static_cast<std::int64_t>(pow_u64(p, field.n() - 1)) - s / p;
  const std::int64_t w = variant == CodeVariant::Full ? short_w * (p - 1) : short_w;
  const std::uint64_t direct = hamming_weight(codeword(field, d1, u, v, variant));
  if (w < 0 || static_cast<std::uint64_t>(w) != direct) {
    throw VerificationError("weight from exponential sum " + std::to_string(w) + " != direct weight " +
                            std::to_string(direct));
  }
  return direct;
}

WeightDistribution weights_from_sums(const FieldContext& field, const SumDistribution& sums) {
  const std::int64_t p = field.p();
  const auto base = static_cast<std::int64_t>(pow_u64(p, field.n() - 1));
  WeightDistribution wd;
  for (const auto& [s, count] : sums.counts) {
    if (s % p != 0) throw VerificationError("exponential sum value not divisible by p");
    const std::int64_t w = base - s / p;
    if (w < 0) throw VerificationError("negative weight from exponential sum");
    wd.counts[static_cast<std::uint64_t>(w)] += count;
  }
  if (sums.domain == SumDomain::NonzeroU) {
    wd.counts[0] += 1;
    wd.counts[static_cast<std::uint64_t>(base)] += field.group_order();
  }
  return wd;
}

namespace {

WeightDistribution direct_weights(const FieldContext& field, std::int64_t d1, const Exec& exec) {
  const std::uint64_t len = short_length(field);
  const std::uint32_t qm1 = field.group_order();
  const std::uint32_t p = field.p();
  const auto tr = field.trace_sequence();
  const auto& kt = simd::active_kernels();
  const std::vector<std::uint8_t> zeros(len, 0);
  const std::uint64_t step = static_cast<std::uint64_t>(((d1 % qm1) + qm1) % qm1);

  std::vector<std::vector<std::uint64_t>> partial(chunk_count(exec, field.order()));
  parallel_chunks(exec, field.order(), [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& hist = partial[w];
    hist.assign(len + 1, 0);
    std::vector<std::uint8_t> urow(len), neg_urow(len);
    for (std::size_t us = begin; us < end; ++us) {
      const Element u = field.at_slot(static_cast<std::uint32_t>(us));
      if (u.is_zero()) {
        std::fill(urow.begin(), urow.end(), 0);
      } else {
        std::uint64_t e = u.index();
        for (std::uint64_t j = 0; j < len; ++j) {
          urow[j] = tr[e];
          e += step;
          if (e >= qm1) e -= qm1;
        }
      }
      for (std::uint64_t j = 0; j < len; ++j) neg_urow[j] = static_cast<std::uint8_t>((p - urow[j]) % p);
      // v = 0: the word is the u row itself.
      ++hist[len - kt.count_equal(urow.data(), zeros.data(), len)];
      // v = psi^m: coordinate j vanishes iff Tr(v psi^j) = -Tr(u psi^{j d1}).
      for (std::uint32_t m = 0; m < qm1; ++m) {
        ++hist[len - kt.count_equal(neg_urow.data(), tr.data() + m, len)];
      }
    }
  });
  WeightDistribution wd;
  for (const auto& h : partial) {
    for (std::size_t w = 0; w < h.size(); ++w) {
      if (h[w] != 0) wd.counts[w] += h[w];
    }
  }
  return wd;
}

}  // namespace

WeightDistribution weight_distribution(const FieldContext& field, std::int64_t d1, WeightMethod method,
                                       std::uint64_t pair_budget, const Exec& exec) {
  (void)CodeSpec::make(field, d1);
  switch (method) {
    case WeightMethod::Direct:
      return direct_weights(field, d1, exec);
    case WeightMethod::ViaSums: {
      const unsigned __int128 pairs = static_cast<unsigned __int128>(field.order()) * field.order();
      const SumDistribution sums = pairs <= pair_budget ? distribution_oracle(field, d1, pair_budget, exec)
                                                        : distribution_reduced(field, d1, exec);
      return weights_from_sums(field, sums);
    }
    case WeightMethod::Closed: {
      const Family fam = Family::of_field(field);
      if (d1 != fam.d1()) throw PreconditionError("closed weights exist only for the family exponent d1");
      return weights_from_sums(field, distribution_closed(fam.p, fam.l));
    }
  }
  throw PreconditionError("unknown weight method");
}

WeightDistribution cross_checked_weights(const FieldContext& field, std::int64_t d1,
                                         const std::vector<WeightMethod>& methods, std::uint64_t pair_budget,
                                         const Exec& exec) {
  if (methods.empty()) throw PreconditionError("no weight method requested");
  WeightDistribution first = weight_distribution(field, d1, methods.front(), pair_budget, exec);
  for (std::size_t i = 1; i < methods.size(); ++i) {
    if (weight_distribution(field, d1, methods[i], pair_budget, exec) != first) {
      throw VerificationError("weight distribution methods disagree");
    }
  }
  return first;
}

std::vector<std::uint8_t> constacyclic_shift(const FieldContext& field, const std::vector<std::uint8_t>& word) {
  if (word.empty()) return word;
  const std::uint32_t p = field.p();
  const std::uint32_t beta_inv = field.to_prime_field(field.inv(field.beta()));
  std::vector<std::uint8_t> out(word.size());
  out[0] = static_cast<std::uint8_t>((beta_inv * word.back()) % p);
  std::copy(word.begin(), word.end() - 1, out.begin() + 1);
  return out;
}

ConstacyclicReport constacyclic_check(const FieldContext& field, std::int64_t d1, std::uint64_t samples,
                                      std::uint64_t seed) {
  (void)CodeSpec::make(field, d1);
  const Element psi_inv = field.inv(field.psi());
  const Element psi_neg_d1 = field.pow(field.psi(), -d1);
  auto check = [&](Element u, Element v) {
    const auto word = codeword(field, d1, u, v, CodeVariant::Short);
    const auto expected = codeword(field, d1, field.mul(u, psi_neg_d1), field.mul(v, psi_inv), CodeVariant::Short);
    if (constacyclic_shift(field, word.coords) != expected.coords) {
      throw VerificationError("constacyclic shift of c'(" + field.to_string(u) + ", " + field.to_string(v) +
                              ") is not a codeword of the expected form");
    }
  };
  ConstacyclicReport r;
  const std::uint64_t q = field.order();
  if (q * q <= (std::uint64_t{1} << 16)) {
    r.exhaustive = true;
    for (std::uint32_t us = 0; us < q; ++us) {
      for (std::uint32_t vs = 0; vs < q; ++vs) check(field.at_slot(us), field.at_slot(vs));
    }
    r.tested = q * q;
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> slot(0, static_cast<std::uint32_t>(q - 1));
  check(Element::zero(), Element::zero());
  for (std::uint64_t i = 0; i < samples; ++i) {
    const Element u = field.at_slot(slot(rng));
    check(u, field.at_slot(slot(rng)));
  }
  r.tested = samples + 1;
  return r;
}

std::uint32_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  std::uint32_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const auto inv = static_cast<std::uint64_t>(inverse_mod(rows[rank][c], p));
    for (auto& x : rows[rank]) x = static_cast<std::uint32_t>((x * inv) % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const std::uint64_t f = rows[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        rows[r][k] = static_cast<std::uint32_t>((rows[r][k] + (p - f) * rows[rank][k]) % p);
      }
    }
    ++rank;
  }
  return rank;
}

namespace {

std::vector<Codeword> basis_words(const FieldContext& field, std::int64_t d1) {
  std::vector<Codeword> out;
  for (int half = 0; half < 2; ++half) {
    for (std::uint32_t i = 0; i < field.n(); ++i) {
      std::vector<std::uint32_t> coeffs(field.n(), 0);
      coeffs[i] = 1;
      const Element e = field.from_coefficients(coeffs);
      out.push_back(half == 0 ? codeword(field, d1, e, Element::zero(), CodeVariant::Short)
                              : codeword(field, d1, Element::zero(), e, CodeVariant::Short));
    }
  }
  return out;
}

}  // namespace

std::uint32_t dimension_check(const FieldContext& field, std::int64_t d1) {
  const std::uint64_t q = field.order();
  const std::uint32_t expected = 2 * field.n();
  if (q * q <= (std::uint64_t{1} << 16)) {
    std::set<std::vector<std::uint8_t>> words;
    for (std::uint32_t us = 0; us < q; ++us) {
      for (std::uint32_t vs = 0; vs < q; ++vs) {
        words.insert(codeword(field, d1, field.at_slot(us), field.at_slot(vs), CodeVariant::Short).coords);
      }
    }
    if (words.size() != q * q) {
      throw VerificationError("only " + std::to_string(words.size()) + " distinct codewords");
    }
    return expected;
  }
  std::vector<std::vector<std::uint32_t>> rows;
  for (const auto& w : basis_words(field, d1)) rows.emplace_back(w.coords.begin(), w.coords.end());
  const std::uint32_t rank = rank_mod_p(std::move(rows), field.p());
  if (rank != expected) throw VerificationError("generator rank " + std::to_string(rank) + " < 2n");
  return rank;
}

std::string generator_matrix_csv(const FieldContext& field, std::int64_t d1) {
  std::ostringstream os;
  for (const auto& w : basis_words(field, d1)) {
    for (std::size_t j = 0; j < w.coords.size(); ++j) os << (j ? "," : "") << static_cast<unsigned>(w.coords[j]);
    os << '\n';
  }
  return os.str();
}

std::vector<std::uint32_t> minimal_polynomial(const FieldContext& field, Element a) {
  std::vector<Element> conj{a};
  for (Element c = field.frobenius(a); c != a; c = field.frobenius(c)) conj.push_back(c);
  std::vector<Element> poly{field.one()};
  for (Element c : conj) {
    // poly *= (X - c)
    std::vector<Element> next(poly.size() + 1, Element::zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = field.add(next[i + 1], poly[i]);
      next[i] = field.sub(next[i], field.mul(c, poly[i]));
    }
    poly = std::move(next);
  }
  std::vector<std::uint32_t> out;
  for (Element c : poly) out.push_back(field.to_prime_field(c));
  return out;
}

std::vector<std::uint32_t> parity_check_polynomial(const FieldContext& field, std::int64_t d1) {
  const auto h1 = minimal_polynomial(field, field.inv(field.psi()));
  const auto h2 = minimal_polynomial(field, field.pow(field.psi(), -d1));
  std::vector<std::uint32_t> out(h1.size() + h2.size() - 1, 0);
  for (std::size_t i = 0; i < h1.size(); ++i) {
    for (std::size_t j = 0; j < h2.size(); ++j) out[i + j] = (out[i + j] + h1[i] * h2[j]) % field.p();
  }
  return out;
}

}  // namespace powerspec
