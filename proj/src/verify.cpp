#include "powerspec/verify.hpp"

#include <chrono>
#include <functional>
#include <numeric>

#include "powerspec/codes.hpp"
#include "powerspec/curves.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/family.hpp"
#include "powerspec/spectrum.hpp"

namespace powerspec {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

bool VerifyReport::passed() const { return count(CheckStatus::Fail) == 0; }

std::size_t VerifyReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

Json VerifyReport::to_json(bool timings) const {
  Json j;
  j["preset"] = preset;
  j["status"] = passed() ? "pass" : "fail";
  j["summary"] = {{"pass", count(CheckStatus::Pass)},
                  {"fail", count(CheckStatus::Fail)},
                  {"skipped", count(CheckStatus::Skipped)}};
  Json list = Json::array();
  for (const auto& c : checks) {
    Json e;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    e["expected"] = c.expected;
    e["actual"] = c.actual;
    if (!c.detail.empty()) e["detail"] = c.detail;
    if (timings) e["elapsed_ms"] = c.elapsed_ms;
    list.push_back(std::move(e));
  }
  j["checks"] = std::move(list);
  return j;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> preset_families(const std::string& preset) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {2, 3}};
  if (preset == "desk") return out;
  if (preset == "extended") {
    out.emplace_back(11, 1);
    return out;
  }
  throw ValidationError("unknown preset '" + preset + "' (desk, extended)");
}

namespace {

struct Outcome {
  Outcome(Json e, Json a, std::string d = {}) : expected(std::move(e)), actual(std::move(a)), detail(std::move(d)) {}
  Json expected;
  Json actual;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(VerifyReport& report) : report_(report) {}

  void run(const std::string& name, const std::function<Outcome()>& fn) {
    VerifyCheck c;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = fn();
      c.status = o.expected == o.actual ? CheckStatus::Pass : CheckStatus::Fail;
      c.expected = std::move(o.expected);
      c.actual = std::move(o.actual);
      c.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      c.status = CheckStatus::Fail;
      c.detail = e.what();
    }
    c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(c));
  }

  void skip(const std::string& name, const std::string& reason) {
    VerifyCheck c;
    c.name = name;
    c.status = CheckStatus::Skipped;
    c.detail = reason;
    report_.checks.push_back(std::move(c));
  }

 private:
  VerifyReport& report_;
};

Json moments_json(__int128 m1, __int128 m2, __int128 m3) {
  return {{"m1", int128_json(m1)}, {"m2", int128_json(m2)}, {"m3", int128_json(m3)}};
}

void verify_family(Runner& r, const Family& fam, const VerifyOptions& opt) {
  const std::string tag = " p=" + std::to_string(fam.p) + " l=" + std::to_string(fam.l);
  const FieldContext field = fam.field(opt.cap);
  const std::uint64_t q = fam.q();
  const std::uint64_t pl = fam.pl();

  Spectrum oracle_d;
  r.run("diffspec closed-vs-oracle" + tag, [&] {
    oracle_d = diff_spectrum_oracle(field, fam.d(), opt.exec);
    return Outcome{spectrum_json(diff_spectrum_closed(fam.p, fam.l)), spectrum_json(oracle_d)};
  });
  r.run("diffspec d-vs-d1" + tag, [&] {
    return Outcome{spectrum_json(oracle_d), spectrum_json(diff_spectrum_oracle(field, fam.d1(), opt.exec))};
  });
  r.run("delta classification" + tag, [&] {
    const auto c = classify_delta(field, fam.d(), opt.exec);
    Json expected{{"delta_at_one", pl}, {"mu_members", pl}, {"mu_matching", pl}, {"other_in_zero_two", q - 1 - pl}};
    Json actual{{"delta_at_one", c.delta_at_one},
                {"mu_members", c.mu_members},
                {"mu_matching", c.mu_matching},
                {"other_in_zero_two", c.other_in_zero_two}};
    return Outcome{expected, actual};
  });
  r.run("cdiff bound" + tag, [&] {
    const auto s = c_diff_sweep(field, fam.d(), opt.exec);
    Json expected{{"bound_holds", true}, {"gcd_at_most_3", true}};
    Json actual{{"bound_holds", s.all_hold}, {"gcd_at_most_3", s.gcd_term <= 3}};
    return Outcome{expected, actual,
                   "max " + std::to_string(s.max_uniformity) + ", bound " + std::to_string(s.bound) + ", gcd " +
                       std::to_string(s.gcd_term)};
  });

  const CodeSpec code = CodeSpec::make(field, fam.d1());
  r.run("constacyclic closure" + tag, [&] {
    const auto c = constacyclic_check(field, fam.d1());
    const std::uint64_t want = c.exhaustive ? q * q : 10001;
    return Outcome{{{"tested", want}}, {{"tested", c.tested}},
                   c.exhaustive ? "every codeword" : "sampled codewords"};
  });
  r.run("code dimension" + tag, [&] {
    return Outcome{{{"dimension", code.dimension}}, {{"dimension", dimension_check(field, fam.d1())}}};
  });

  const unsigned __int128 pairs = static_cast<unsigned __int128>(q) * q;
  const bool oracle_fits = pairs <= opt.pair_budget;
  if (!fam.mod3_case()) {
    const std::string why = "needs p^l = 2 mod 3";
    for (const char* n : {"expsum oracle-vs-closed", "expsum reduced-vs-closed", "moments", "weights direct-vs-closed",
                          "weights via-sums-vs-closed"}) {
      r.skip(n + tag, why);
    }
  } else {
    const SumDistribution closed = distribution_closed(fam.p, fam.l);
    const WeightDistribution closed_w = weights_from_sums(field, closed);
    SumDistribution oracle;
    if (oracle_fits) {
      r.run("expsum oracle-vs-closed" + tag, [&] {
        oracle = distribution_oracle(field, fam.d1(), opt.pair_budget, opt.exec);
        return Outcome{distribution_json(closed), distribution_json(oracle)};
      });
    } else {
      r.skip("expsum oracle-vs-closed" + tag, "p^{2n} exceeds the pair budget");
    }
    r.run("expsum reduced-vs-closed" + tag, [&] {
      return Outcome{distribution_json(closed), distribution_json(distribution_reduced(field, fam.d1(), opt.exec))};
    });
    if (oracle_fits && !oracle.counts.empty()) {
      r.run("moments" + tag, [&] {
        const __int128 Q = q;
        const __int128 p13 = ipow128(fam.p, 13 * fam.l);
        const __int128 p9 = ipow128(fam.p, 9 * fam.l);
        const Moments m = moments_over_all_pairs(field, oracle);
        return Outcome{moments_json(Q * Q, Q * Q * Q, p13 + Q * Q * Q - p9), moments_json(m.m1, m.m2, m.m3)};
      });
    } else {
      r.skip("moments" + tag, "needs the full exponential-sum oracle");
    }
    if (oracle_fits) {
      r.run("weights direct-vs-closed" + tag, [&] {
        return Outcome{enumerator_json(closed_w),
                       enumerator_json(weight_distribution(field, fam.d1(), WeightMethod::Direct, opt.pair_budget,
                                                           opt.exec))};
      });
    } else {
      r.skip("weights direct-vs-closed" + tag, "p^{2n} exceeds the pair budget");
    }
    r.run("weights via-sums-vs-closed" + tag, [&] {
      const SumDistribution sums =
          oracle.counts.empty() ? distribution_reduced(field, fam.d1(), opt.exec) : oracle;
      return Outcome{enumerator_json(closed_w), enumerator_json(weights_from_sums(field, sums))};
    });
  }

  if (q <= opt.curve_limit) {
    r.run("curve counts" + tag, [&] {
      const auto sweep = curve_sweep(field);
      Json expected{{"mismatched", 0}, {"cases", 5}};
      Json actual{{"mismatched", sweep.mismatched}, {"cases", sweep.matched.size()}};
      std::string detail;
      for (const auto& [c, n] : sweep.matched) detail += c + ":" + std::to_string(n) + " ";
      detail += "uncovered:" + std::to_string(sweep.uncovered);
      if (!sweep.failures.empty()) detail += "; first failure " + sweep.failures.front();
      return Outcome{expected, actual, detail};
    });
  } else {
    r.skip("curve counts" + tag, "field larger than the curve sweep limit");
  }
}

void verify_quadratic(Runner& r, std::uint32_t m, const VerifyOptions& opt) {
  r.run("quad-mu criterion m=" + std::to_string(m), [&] {
    const FieldContext field = build_field_cached(default_field_params(2, 2 * m, opt.cap), opt.cap);
    const auto s = quad_sweep(field);
    return Outcome{{{"mismatched", 0}}, {{"mismatched", s.mismatched}},
                   std::to_string(s.pairs) + " pairs, " + std::to_string(s.positives) + " positive"};
  });
}

}  // namespace

VerifyReport run_verify(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& families,
                        const VerifyOptions& options, const std::string& preset) {
  VerifyReport report;
  report.preset = preset;
  Runner r(report);
  for (const auto& [p, l] : families) {
    const Family fam{p, l};
    try {
      verify_family(r, fam, options);
    } catch (...) {
      r.run("family setup p=" + std::to_string(p) + " l=" + std::to_string(l), [&]() -> Outcome { throw; });
    }
  }
  verify_quadratic(r, 2, options);
  verify_quadratic(r, 3, options);
  return report;
}

VerifyReport run_verify(const std::string& preset, const VerifyOptions& options) {
  return run_verify(preset_families(preset), options, preset);
}

}  // namespace powerspec
