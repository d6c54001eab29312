#include "powerspec/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <numeric>

#include "powerspec/codes.hpp"
#include "powerspec/curves.hpp"
#include "powerspec/errors.hpp"
#include "powerspec/family.hpp"
#include "powerspec/spectrum.hpp"
#include "powerspec/verify.hpp"

namespace powerspec {

namespace {

struct Setup {
  FieldContext field;
  std::optional<Family> family;
  std::optional<std::int64_t> exponent;
};

// `which` picks the family exponent: 0 for d, 1 for d1.
Setup resolve(const RunConfig& cfg, int which, bool needs_exponent) {
  if (!cfg.p) throw ValidationError("--p is required");
  const bool family_mode = cfg.l.has_value();
  const bool explicit_mode = cfg.n.has_value() || cfg.d.has_value();
  if (family_mode == explicit_mode) {
    throw ValidationError("give either --p --l (family mode) or --p --n [--d] (explicit mode), not both");
  }
  std::optional<Family> fam;
  FieldParams params;
  std::optional<std::int64_t> e;
  if (family_mode) {
    if (*cfg.l == 0) throw ValidationError("--l must be positive");
    fam = Family{*cfg.p, *cfg.l};
    params = default_field_params(*cfg.p, fam->n(), cfg.cap);
    e = which == 0 ? fam->d() : fam->d1();
  } else {
    if (!cfg.n) throw ValidationError("explicit mode needs --n");
    if (needs_exponent && !cfg.d) throw ValidationError("explicit mode needs --d");
    params = default_field_params(*cfg.p, *cfg.n, cfg.cap);
    e = cfg.d;
  }
  const std::uint64_t q = static_cast<std::uint64_t>(ipow128(params.p, params.n));
  if (cfg.budget < q) throw ValidationError("--budget must be at least p^n = " + std::to_string(q));
  Setup s{build_field_cached(params, cfg.cap), fam, e};
  if (!s.family && s.field.n() % 4 == 0 && s.exponent) {
    // Explicit parameters that happen to describe the family still get the
    // closed forms.
    const Family f{s.field.p(), s.field.n() / 4};
    if (*s.exponent == f.d() || *s.exponent == f.d1()) s.family = f;
  }
  return s;
}

Exec exec_of(const RunConfig& cfg) { return Exec{std::max(1u, cfg.workers)}; }

struct Result {
  Json report;
  bool ok = true;
};

Result cmd_field_info(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 0, false);
  const FieldContext& f = s.field;
  Json j;
  j["field"] = field_json(f);
  j["order"] = f.order();
  j["psi"] = "psi";
  j["beta"] = f.to_string(f.beta());
  j["minus_one"] = f.to_string(f.minus_one());
  j["psi_minimal_polynomial"] = minimal_polynomial(f, f.psi());
  if (f.n() % 4 == 0) {
    const Family fam{f.p(), f.n() / 4};
    j["family"] = {{"l", fam.l},
                   {"d", fam.d()},
                   {"d1", fam.d1()},
                   {"gcd_d", std::gcd<std::uint64_t>(fam.d(), f.group_order())},
                   {"gcd_d1", std::gcd<std::uint64_t>(fam.d1(), f.group_order())},
                   {"pl_mod_3", fam.pl() % 3}};
  }
  return {j};
}

Result cmd_diffspec(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 0, true);
  const std::string method = cfg.method.empty() ? (s.family ? "both" : "oracle") : cfg.method;
  if (method != "oracle" && method != "closed" && method != "both") {
    throw ValidationError("diffspec --method must be oracle, closed or both");
  }
  if (method != "oracle" && !s.family) throw PreconditionError("the closed form needs the family exponent");
  Json j;
  j["field"] = field_json(s.field);
  j["d"] = *s.exponent;
  j["method"] = method;
  Result r;
  std::optional<Spectrum> oracle, closed;
  if (method != "closed") oracle = diff_spectrum_oracle(s.field, *s.exponent, exec_of(cfg));
  if (method != "oracle") closed = diff_spectrum_closed(s.family->p, s.family->l);
  const Spectrum& shown = oracle ? *oracle : *closed;
  j["spectrum"] = spectrum_json(shown);
  j["delta"] = shown.delta;
  if (oracle && closed) {
    r.ok = *oracle == *closed;
    j["methods_agree"] = r.ok;
  }
  r.report = std::move(j);
  return r;
}

Result cmd_cdiff(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 0, true);
  Result r;
  if (!cfg.c.empty()) {
    const auto rep = c_diff_uniformity(s.field, *s.exponent, parse_element(s.field, cfg.c));
    r.report = cdiff_json(s.field, rep);
    r.report["d"] = *s.exponent;
    r.ok = rep.bound_holds;
  } else {
    const auto sweep = c_diff_sweep(s.field, *s.exponent, exec_of(cfg));
    r.report = cdiff_sweep_json(s.field, sweep);
    r.report["d"] = *s.exponent;
    r.ok = sweep.all_hold;
  }
  return r;
}

Result cmd_expsum(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 1, true);
  if (cfg.u.empty() || cfg.v.empty()) throw ValidationError("expsum needs --u and --v");
  const Element u = parse_element(s.field, cfg.u);
  const Element v = parse_element(s.field, cfg.v);
  const auto counts = trace_counts(s.field, *s.exponent, u, v);
  const SumValue val = evaluate_sum(counts);
  Result r;
  Json j;
  j["field"] = field_json(s.field);
  j["d1"] = *s.exponent;
  j["u"] = s.field.to_string(u);
  j["v"] = s.field.to_string(v);
  j["trace_counts"] = counts.counts;
  j["rational"] = val.rational;
  j["value"] = val.rational ? Json(val.value) : Json(nullptr);
  if (s.family && s.family->mod3_case() && !u.is_zero() && *s.exponent == s.family->d1()) {
    const NTriple t = n_counts(s.field, *s.exponent, u, v);
    const std::int64_t via = sum_from_ntriple(*s.family, t);
    j["n_counts"] = {{"n_inf", t.n_inf}, {"n0", t.n0}, {"n1", t.n1}};
    j["value_via_n_counts"] = via;
    r.ok = val.rational && via == val.value;
    j["methods_agree"] = r.ok;
  }
  r.report = std::move(j);
  return r;
}

std::vector<std::string> split_methods(const std::string& text, const std::vector<std::string>& all) {
  if (text.empty() || text == "all") return all;
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string m = text.substr(start, end - start);
    if (std::find(all.begin(), all.end(), m) == all.end()) throw ValidationError("unknown method '" + m + "'");
    out.push_back(m);
    start = end + 1;
  }
  return out;
}

Result cmd_expsum_dist(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 1, true);
  const std::uint64_t q = s.field.order();
  const bool fits = static_cast<unsigned __int128>(q) * q <= cfg.budget;
  const bool closed_ok = s.family && s.family->mod3_case() && *s.exponent == s.family->d1();
  std::vector<std::string> methods;
  if (cfg.method.empty() || cfg.method == "all") {
    if (fits) methods.push_back("oracle");
    methods.push_back("reduced");
    if (closed_ok) methods.push_back("closed");
  } else {
    methods = split_methods(cfg.method, {"oracle", "reduced", "closed"});
  }
  Result r;
  Json j;
  j["field"] = field_json(s.field);
  j["d1"] = *s.exponent;
  j["method"] = methods.front();
  std::optional<SumDistribution> first;
  Json agree = Json::object();
  for (const auto& m : methods) {
    SumDistribution d;
    if (m == "oracle") {
      d = distribution_oracle(s.field, *s.exponent, cfg.budget, exec_of(cfg));
    } else if (m == "reduced") {
      d = distribution_reduced(s.field, *s.exponent, exec_of(cfg));
    } else {
      if (!closed_ok) throw PreconditionError("the closed form needs the family exponent with p^l = 2 mod 3");
      d = distribution_closed(s.family->p, s.family->l);
    }
    if (!first) {
      first = d;
    } else {
      const bool same = d == *first;
      agree[m] = same;
      r.ok = r.ok && same;
    }
  }
  j["distribution"] = distribution_json(*first);
  const Moments mo = moments_over_all_pairs(s.field, *first);
  j["moments"] = {{"m1", int128_json(mo.m1)}, {"m2", int128_json(mo.m2)}, {"m3", int128_json(mo.m3)}};
  if (closed_ok) {
    const __int128 Q = q;
    const __int128 e3 = ipow128(s.field.p(), 13 * s.family->l) + Q * Q * Q - ipow128(s.field.p(), 9 * s.family->l);
    const bool holds = mo.m1 == Q * Q && mo.m2 == Q * Q * Q && mo.m3 == e3;
    j["moments_expected"] = {{"m1", int128_json(Q * Q)}, {"m2", int128_json(Q * Q * Q)}, {"m3", int128_json(e3)}};
    j["moments_hold"] = holds;
    r.ok = r.ok && holds;
  }
  if (methods.size() > 1) j["agrees_with_" + methods.front()] = agree;
  r.report = std::move(j);
  return r;
}

Result cmd_code_weights(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 1, true);
  const CodeSpec spec = CodeSpec::make(s.field, *s.exponent);
  const std::uint64_t q = s.field.order();
  const bool fits = static_cast<unsigned __int128>(q) * q <= cfg.budget;
  const bool closed_ok = s.family && s.family->mod3_case() && *s.exponent == s.family->d1();
  std::vector<std::string> methods;
  if (cfg.method.empty() || cfg.method == "all") {
    if (fits) methods.push_back("direct");
    if (fits || closed_ok) methods.push_back("via_sums");
    if (closed_ok) methods.push_back("closed");
  } else {
    methods = split_methods(cfg.method, {"direct", "via_sums", "closed"});
  }
  if (methods.empty()) throw SizeError("no weight method fits the budget; raise --budget");
  Result r;
  Json j;
  j["field"] = field_json(s.field);
  j["d1"] = *s.exponent;
  j["method"] = methods.front();
  std::optional<WeightDistribution> first;
  Json agree = Json::object();
  for (const auto& m : methods) {
    if (m == "direct" && !fits) throw SizeError("direct enumeration of p^{2n} codewords exceeds --budget");
    const WeightMethod wm = m == "direct" ? WeightMethod::Direct
                            : m == "via_sums" ? WeightMethod::ViaSums
                                              : WeightMethod::Closed;
    const WeightDistribution w = weight_distribution(s.field, *s.exponent, wm, cfg.budget, exec_of(cfg));
    if (!first) {
      first = w;
    } else {
      agree[m] = w == *first;
      r.ok = r.ok && w == *first;
    }
  }
  j["length"] = spec.length_short;
  j["dimension"] = dimension_check(s.field, *s.exponent);
  j["min_distance"] = first->min_nonzero();
  j["enumerator"] = enumerator_json(*first);
  j["parity_check_polynomial"] = parity_check_polynomial(s.field, *s.exponent);
  if (methods.size() > 1) j["agrees_with_" + methods.front()] = agree;
  r.report = std::move(j);
  return r;
}

Result cmd_curve_count(const RunConfig& cfg) {
  const Setup s = resolve(cfg, 0, false);
  const FieldContext& f = s.field;
  if (f.n() % 2 != 0) throw PreconditionError("n must be even");
  const std::uint32_t sv = cfg.s.value_or(f.n() / 2);
  if (sv == 0 || f.n() % (2 * sv) != 0) throw PreconditionError("2s must divide n");
  CurveSpec spec;
  spec.s = sv;
  spec.k = f.n() / (2 * sv);
  spec.n1 = cfg.n1;
  spec.n2 = cfg.n2;
  spec.r1 = cfg.r1;
  spec.r2 = cfg.r2;
  spec.alpha = cfg.alpha.empty() ? f.power_of_psi(cfg.r1) : parse_element(f, cfg.alpha);
  spec.beta = cfg.beta.empty() ? f.power_of_psi(cfg.r2) : parse_element(f, cfg.beta);
  const ClosedCount closed = count_points_closed(f, spec);
  const std::uint64_t oracle = count_points_oracle(f, spec, cfg.naive);
  Result r;
  r.ok = closed.count >= 0 && static_cast<std::uint64_t>(closed.count) == oracle;
  r.report = {{"curve", curve_json(f, spec)},
              {"oracle", oracle},
              {"closed", closed.count},
              {"case", case_label(closed.which)},
              {"match", r.ok}};
  return r;
}

Result cmd_quad_mu(const RunConfig& cfg) {
  RunConfig c = cfg;
  if (cfg.m) {
    if (cfg.p && *cfg.p != 2) throw ValidationError("quad-mu works over characteristic 2");
    if (cfg.n && *cfg.n != 2 * *cfg.m) throw ValidationError("--n must equal 2m");
    c.p = 2;
    c.n = 2 * *cfg.m;
    c.l.reset();
  }
  const Setup s = resolve(c, 0, false);
  const FieldContext& f = s.field;
  if (f.p() != 2 || f.n() % 2 != 0) throw PreconditionError("quad-mu needs F_{2^{2m}}");
  if (cfg.a.empty() || cfg.b.empty()) throw ValidationError("quad-mu needs --a and --b");
  const QuadInMuQuery query{f.n() / 2, parse_element(f, cfg.a), parse_element(f, cfg.b)};
  const bool crit = quad_roots_in_mu(f, query);
  const bool oracle = quad_roots_in_mu_oracle(f, query);
  Result r;
  r.ok = crit == oracle;
  r.report = {{"field", field_json(f)},
              {"m", query.m},
              {"a", f.to_string(query.a)},
              {"b", f.to_string(query.b)},
              {"criterion", crit},
              {"oracle", oracle},
              {"match", r.ok}};
  return r;
}

Result cmd_verify(const RunConfig& cfg, std::ostream& err) {
  VerifyOptions opt;
  opt.exec = exec_of(cfg);
  opt.pair_budget = cfg.budget;
  opt.cap = cfg.cap;
  VerifyReport rep;
  if (cfg.p || cfg.l) {
    if (!cfg.p || !cfg.l) throw ValidationError("verify takes both --p and --l, or a --preset");
    rep = run_verify({{*cfg.p, *cfg.l}}, opt, "custom");
  } else {
    rep = run_verify(cfg.preset, opt);
  }
  for (const auto& c : rep.checks) {
    err << status_name(c.status) << "  " << c.name;
    if (c.status != CheckStatus::Skipped) err << "  (" << static_cast<long long>(c.elapsed_ms) << " ms)";
    if (!c.detail.empty()) err << "  " << c.detail;
    err << '\n';
  }
  return {rep.to_json(cfg.timings), rep.passed()};
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    Result r;
    if (cfg.command == "field-info") r = cmd_field_info(cfg);
    else if (cfg.command == "diffspec") r = cmd_diffspec(cfg);
    else if (cfg.command == "cdiff") r = cmd_cdiff(cfg);
    else if (cfg.command == "expsum") r = cmd_expsum(cfg);
    else if (cfg.command == "expsum-dist") r = cmd_expsum_dist(cfg);
    else if (cfg.command == "code-weights") r = cmd_code_weights(cfg);
    else if (cfg.command == "curve-count") r = cmd_curve_count(cfg);
    else if (cfg.command == "quad-mu") r = cmd_quad_mu(cfg);
    else if (cfg.command == "verify") r = cmd_verify(cfg, err);
    else throw ValidationError("unknown command '" + cfg.command + "'");

    const std::string text = render(r.report, cfg.format);
    if (cfg.out.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!file) throw ValidationError("cannot write " + cfg.out);
      file << text;
    }
    if (!r.ok) {
      err << "error: verification mismatch\n";
      return kExitMismatch;
    }
    return kExitOk;
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential, exponential-sum and code computations for x^(p^2l - p^l + 1)", "powerspec"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.workers = std::max(1u, std::thread::hardware_concurrency());
  std::uint32_t p = 0, l = 0, n = 0, s = 0, m = 0;
  std::int64_t d = 0;
  std::string format = "json";
  app.add_option("--p", p, "characteristic");
  app.add_option("--l", l, "family parameter, n = 4l");
  app.add_option("--n", n, "extension degree (explicit mode)");
  app.add_option("--d", d, "exponent (explicit mode)");
  app.add_option("--c", cfg.c, "c for c-differentials (element syntax)");
  app.add_option("--u", cfg.u, "u (element syntax: 0, 1, -1, psi, psi^K, poly:c0,c1,...)");
  app.add_option("--v", cfg.v, "v (element syntax)");
  app.add_option("--method", cfg.method, "method selector, comma separated or 'all'");
  app.add_option("--format", format, "json, csv or text");
  app.add_option("--out", cfg.out, "write the report to this file");
  app.add_option("--workers", cfg.workers, "worker threads");
  app.add_option("--budget", cfg.budget, "enumeration budget in (u,v) pairs");
  app.add_option("--cap", cfg.cap, "largest field order to build");
  app.add_option("--preset", cfg.preset, "verify preset: desk or extended");
  app.add_flag("--timings", cfg.timings, "include elapsed times in the verify report");
  app.add_option("--s", s, "curve: n = 2ks");
  app.add_option("--n1", cfg.n1, "curve exponent of x");
  app.add_option("--n2", cfg.n2, "curve exponent of y");
  app.add_option("--r1", cfg.r1, "coset index of alpha");
  app.add_option("--r2", cfg.r2, "coset index of beta");
  app.add_option("--alpha", cfg.alpha, "curve coefficient (default psi^r1)");
  app.add_option("--beta", cfg.beta, "curve coefficient (default psi^r2)");
  app.add_flag("--naive", cfg.naive, "count curve points by the double loop");
  app.add_option("--m", m, "quad-mu: n = 2m over F_2");
  app.add_option("--a", cfg.a, "quad-mu coefficient a");
  app.add_option("--b", cfg.b, "quad-mu coefficient b");

  for (const char* name : {"field-info", "diffspec", "cdiff", "expsum", "expsum-dist", "code-weights",
                           "curve-count", "quad-mu", "verify"}) {
    app.add_subcommand(name);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (app.count("--p")) cfg.p = p;
  if (app.count("--l")) cfg.l = l;
  if (app.count("--n")) cfg.n = n;
  if (app.count("--d")) cfg.d = d;
  if (app.count("--s")) cfg.s = s;
  if (app.count("--m")) cfg.m = m;
  try {
    cfg.format = parse_format(format);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return run_command(cfg, out, err);
}

}  // namespace powerspec
