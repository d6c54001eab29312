#include "powerspec/spectrum.hpp"

#include <numeric>

namespace powerspec {

namespace {

std::uint64_t exponent_gcd(std::int64_t d, std::uint64_t group_order) {
  const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
  return std::gcd(ad, group_order);
}

}  // namespace

bool Spectrum::satisfies_identities() const {
  std::uint64_t total = 0;
  std::uint64_t weighted = 0;
  for (const auto& [i, w] : counts) {
    total += w;
    weighted += i * w;
  }
  return total == field_size && weighted == field_size;
}

Spectrum make_spectrum(std::map<std::uint64_t, std::uint64_t> counts, std::uint64_t field_size) {
  Spectrum s;
  std::erase_if(counts, [](const auto& kv) { return kv.second == 0; });
  s.counts = std::move(counts);
  s.delta = s.counts.empty() ? 0 : s.counts.rbegin()->first;
  s.field_size = field_size;
  return s;
}

std::vector<Element> power_table(const FieldContext& field, std::int64_t d) {
  std::vector<Element> out(field.order());
  for (std::uint32_t s = 0; s < field.order(); ++s) out[s] = field.pow(field.at_slot(s), d);
  return out;
}

std::uint64_t delta_b(const FieldContext& field, std::int64_t d, Element b) {
  std::uint64_t n = 0;
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    const Element x = field.at_slot(s);
    const Element lhs = field.sub(field.pow(field.add(x, field.one()), d), field.pow(x, d));
    n += lhs == b;
  }
  return n;
}

std::vector<std::uint64_t> delta_row(const FieldContext& field, std::int64_t d, const Exec& exec) {
  const auto powers = power_table(field, d);
  const std::size_t q = field.order();
  std::vector<std::vector<std::uint64_t>> partial(chunk_count(exec, q));
  parallel_chunks(exec, q, [&](std::size_t w, std::size_t begin, std::size_t end) {
    auto& hist = partial[w];
    hist.assign(q, 0);
    for (std::size_t s = begin; s < end; ++s) {
      const Element x = field.at_slot(static_cast<std::uint32_t>(s));
      const Element x1 = field.add(x, field.one());
      ++hist[field.slot(field.sub(powers[field.slot(x1)], powers[s]))];
    }
  });
  std::vector<std::uint64_t> row(q, 0);
  for (const auto& h : partial) {
    for (std::size_t i = 0; i < h.size(); ++i) row[i] += h[i];
  }
  return row;
}

Spectrum diff_spectrum_oracle(const FieldContext& field, std::int64_t d, const Exec& exec) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t c : delta_row(field, d, exec)) ++counts[c];
  return make_spectrum(std::move(counts), field.order());
}

Spectrum diff_spectrum_full_sweep(const FieldContext& field, std::int64_t d) {
  const auto powers = power_table(field, d);
  const auto base = delta_row(field, d);
  const std::size_t q = field.order();
  std::vector<std::uint64_t> row(q);
  for (std::uint32_t ai = 0; ai < field.group_order(); ++ai) {
    const Element a = Element::from_index(ai);
    const Element ad_inv = field.inv(powers[field.slot(a)]);
    std::fill(row.begin(), row.end(), 0);
    for (std::uint32_t s = 0; s < q; ++s) {
      const Element x = field.at_slot(s);
      ++row[field.slot(field.sub(powers[field.slot(field.add(x, a))], powers[s]))];
    }
    for (std::uint32_t bs = 0; bs < q; ++bs) {
      const Element scaled = field.mul(field.at_slot(bs), ad_inv);
      if (row[bs] != base[field.slot(scaled)]) {
        throw VerificationError("delta(a,b) != delta(1, b/a^d) at a = " + field.to_string(a));
      }
    }
  }
  std::map<std::uint64_t, std::uint64_t> counts;
  for (std::uint64_t c : base) ++counts[c];
  return make_spectrum(std::move(counts), q);
}

Spectrum diff_spectrum_closed(std::uint32_t p, std::uint32_t l) {
  const Family fam{p, l};
  const __int128 q = ipow128(p, fam.n());
  const __int128 p1 = ipow128(p, l);
  const __int128 p2 = ipow128(p, 2 * l);
  const __int128 p3 = ipow128(p, 3 * l);
  const __int128 w0 = (q + p3 - p2 - p1 - 2) / 2;
  const __int128 w2 = (q - p3 + p2 - p1) / 2;
  std::map<std::uint64_t, std::uint64_t> counts;
  counts[0] += static_cast<std::uint64_t>(w0);
  counts[2] += static_cast<std::uint64_t>(w2);
  counts[static_cast<std::uint64_t>(p1)] += 1;
  counts[static_cast<std::uint64_t>(p2 - p1)] += static_cast<std::uint64_t>(p1);
  return make_spectrum(std::move(counts), static_cast<std::uint64_t>(q));
}

DeltaClassification classify_delta(const FieldContext& field, std::int64_t d, const Exec& exec) {
  const Family fam = Family::of_field(field);
  const std::uint64_t pl = fam.pl();
  const auto row = delta_row(field, d, exec);
  DeltaClassification c;
  c.delta_at_one = row[field.slot(field.one())];
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    const Element b = field.at_slot(s);
    if (b == field.one()) continue;
    if (field.in_mu(b, pl + 1)) {
      ++c.mu_members;
      c.mu_matching += row[s] == pl * pl - pl;
    } else {
      ++c.other_members;
      c.other_in_zero_two += row[s] == 0 || row[s] == 2;
    }
  }
  c.holds = c.delta_at_one == pl && c.mu_members == pl && c.mu_matching == c.mu_members &&
            c.other_in_zero_two == c.other_members;
  return c;
}

std::uint64_t c_delta(const FieldContext& field, std::int64_t d, Element c, Element b) {
  std::uint64_t n = 0;
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    const Element x = field.at_slot(s);
    const Element lhs = field.sub(field.pow(field.add(x, field.one()), d), field.mul(c, field.pow(x, d)));
    n += lhs == b;
  }
  return n;
}

namespace {

// Max over b of c_delta(1,b) using a precomputed power table; `hist` is
// scratch space of size p^n.
std::pair<Element, std::uint64_t> max_c_delta(const FieldContext& field, const std::vector<Element>& powers,
                                              Element c, std::vector<std::uint64_t>& hist) {
  std::fill(hist.begin(), hist.end(), 0);
  for (std::uint32_t s = 0; s < field.order(); ++s) {
    const Element x1 = field.add(field.at_slot(s), field.one());
    ++hist[field.slot(field.sub(powers[field.slot(x1)], field.mul(c, powers[s])))];
  }
  std::uint32_t best = 0;
  for (std::uint32_t s = 1; s < hist.size(); ++s) {
    if (hist[s] > hist[best]) best = s;
  }
  return {field.at_slot(best), hist[best]};
}

std::optional<std::uint64_t> family_bound(const FieldContext& field, Element c) {
  if (field.n() % 4 != 0) return std::nullopt;
  const std::uint64_t pl = Family::of_field(field).pl();
  if (field.in_mu(c, pl + 1)) return std::nullopt;
  return (pl + 1) * (pl + 1);
}

}  // namespace

CDiffReport c_diff_uniformity(const FieldContext& field, std::int64_t d, Element c) {
  CDiffReport r;
  r.c = c;
  r.gcd_term = exponent_gcd(d, field.group_order());
  const auto powers = power_table(field, d);
  std::vector<std::uint64_t> hist(field.order());
  const auto [b, count] = max_c_delta(field, powers, c, hist);
  r.witness_b = b;
  r.witness_count = count;
  // c = 1 is the classical uniformity; the a = 0 row is excluded there.
  r.uniformity = c == field.one() ? count : std::max(count, r.gcd_term);
  r.bound = family_bound(field, c);
  r.bound_holds = !r.bound || r.uniformity <= *r.bound;
  return r;
}

CDiffSweep c_diff_sweep(const FieldContext& field, std::int64_t d, const Exec& exec) {
  const Family fam = Family::of_field(field);
  const std::uint64_t pl = fam.pl();
  const auto powers = power_table(field, d);
  const std::size_t q = field.order();

  struct Local {
    std::uint64_t count = 0;
    std::uint64_t max = 0;
    Element worst;
  };
  std::vector<Local> partial(chunk_count(exec, q));
  parallel_chunks(exec, q, [&](std::size_t w, std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t> hist(q);
    Local& local = partial[w];
    for (std::size_t s = begin; s < end; ++s) {
      const Element c = field.at_slot(static_cast<std::uint32_t>(s));
      if (field.in_mu(c, pl + 1)) continue;
      ++local.count;
      const auto best = max_c_delta(field, powers, c, hist);
      if (best.second > local.max || local.count == 1) {
        local.max = best.second;
        local.worst = c;
      }
    }
  });
  CDiffSweep sweep;
  sweep.bound = (pl + 1) * (pl + 1);
  sweep.gcd_term = exponent_gcd(d, field.group_order());
  bool first = true;
  for (const auto& local : partial) {
    if (local.count == 0) continue;
    sweep.c_values += local.count;
    if (first || local.max > sweep.max_uniformity) {
      sweep.max_uniformity = local.max;
      sweep.worst_c = local.worst;
      first = false;
    }
  }
  sweep.max_uniformity = std::max(sweep.max_uniformity, sweep.gcd_term);
  sweep.all_hold = sweep.max_uniformity <= sweep.bound;
  return sweep;
}

}  // namespace powerspec
