#include "powerspec/field.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numeric>
#include <sstream>

#include "field_tables.hpp"

namespace powerspec {

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && r > limit / base) {
      throw SizeError("field size " + std::to_string(base) + "^" + std::to_string(exp) +
                      " exceeds cap " + std::to_string(limit));
    }
    r *= base;
  }
  if (r > limit) {
    throw SizeError("field size exceeds cap " + std::to_string(limit));
  }
  return r;
}

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= value; ++d) {
    if (value % d == 0) {
      out.push_back(d);
      while (value % d == 0) value /= d;
    }
  }
  if (value > 1) out.push_back(value);
  return out;
}

namespace {

using Poly = std::vector<std::uint64_t>;

// a * b mod (monic f), all coefficients mod p, degree < n.
Poly mulmod(const Poly& a, const Poly& b, std::span<const std::uint32_t> f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  std::vector<std::uint64_t> r(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  for (std::size_t k = 2 * n - 1; k >= n; --k) {
    const std::uint64_t c = r[k];
    if (c != 0) {
      for (std::size_t i = 0; i <= n; ++i) {
        r[k - n + i] = (r[k - n + i] + (p - c) * f[i]) % p;
      }
    }
    if (k == n) break;
  }
  r.resize(n);
  return r;
}

Poly powmod(Poly base, std::uint64_t e, std::span<const std::uint32_t> f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  Poly r(n, 0);
  r[0] = 1;
  while (e != 0) {
    if (e & 1) r = mulmod(r, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

void check_prime(std::uint32_t p) {
  if (!is_prime(p)) throw ValidationError("p = " + std::to_string(p) + " is not prime");
}

}  // namespace

bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> modulus) {
  if (modulus.size() < 2 || modulus.back() != 1 || modulus.front() == 0) return false;
  for (auto c : modulus) {
    if (c >= p) return false;
  }
  const std::size_t n = modulus.size() - 1;
  const std::uint64_t q = checked_power(p, static_cast<std::uint32_t>(n),
                                        std::numeric_limits<std::uint64_t>::max() / 2);
  Poly x(n, 0);
  if (n == 1) {
    x[0] = (p - modulus[0]) % p;
  } else {
    x[1] = 1;
  }
  Poly one(n, 0);
  one[0] = 1;
  if (powmod(x, q - 1, modulus, p) != one) return false;
  for (std::uint64_t r : prime_factors(q - 1)) {
    if (powmod(x, (q - 1) / r, modulus, p) == one) return false;
  }
  return true;
}

std::vector<std::uint32_t> find_primitive_polynomial(std::uint32_t p, std::uint32_t n,
                                                     std::uint64_t cap) {
  check_prime(p);
  if (n == 0) throw ValidationError("extension degree must be positive");
  const std::uint64_t q = checked_power(p, n, cap);

  // Counter digits map to coefficients with the constant term most
  // significant, so counting upwards walks the lexicographic order.
  std::vector<std::uint32_t> f(n + 1, 0);
  f[n] = 1;
  for (std::uint64_t counter = 0; counter < q; ++counter) {
    std::uint64_t rest = counter;
    for (std::uint32_t i = n; i-- > 0;) {
      f[i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    if (f[0] == 0) continue;
    if (is_primitive_polynomial(p, f)) return f;
  }
  throw ValidationError("no primitive polynomial found");  // unreachable for prime p
}

FieldParams default_field_params(std::uint32_t p, std::uint32_t n, std::uint64_t cap) {
  return FieldParams{p, n, find_primitive_polynomial(p, n, cap)};
}

void finish_tables(FieldTables& t) {
  const std::uint32_t p = t.params.p;
  const std::uint32_t n = t.params.n;
  const std::uint32_t qm1 = t.qm1;

  t.log.assign(t.q, 0);
  for (std::uint32_t i = 0; i < qm1; ++i) t.log[t.exp[i]] = i;

  t.zech.resize(qm1);
  for (std::uint32_t k = 0; k < qm1; ++k) {
    const std::uint32_t c = t.exp[k];
    const std::uint32_t c0 = c % p;
    const std::uint32_t shifted = c - c0 + (c0 + 1) % p;
    t.zech[k] = shifted == 0 ? Element::zero().raw() : t.log[shifted];
  }

  t.minus_one = p == 2 ? Element::from_index(0) : Element::from_index(qm1 / 2);
  t.beta = Element::from_index(static_cast<std::uint32_t>(qm1 / (p - 1)) % qm1);

  // Tr is F_p-linear: evaluate it on the monomial basis with Frobenius sums,
  // then extend digitwise.
  std::vector<std::uint32_t> basis_trace(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t basis_code = static_cast<std::uint32_t>(t.digit_weight[i]);
    const std::uint32_t idx = t.log[basis_code];
    // Sum of psi^(idx * p^j) as code vectors, digitwise mod p.
    std::vector<std::uint32_t> acc(n, 0);
    std::uint64_t e = idx;
    for (std::uint32_t j = 0; j < n; ++j) {
      std::uint32_t c = t.exp[e % qm1];
      for (std::uint32_t k = 0; k < n; ++k) {
        acc[k] = (acc[k] + c % p) % p;
        c /= p;
      }
      e = (e * p) % qm1;
    }
    for (std::uint32_t k = 1; k < n; ++k) {
      if (acc[k] != 0) throw VerificationError("trace left the prime subfield");
    }
    basis_trace[i] = acc[0];
  }
  t.trace.resize(qm1);
  for (std::uint32_t k = 0; k < qm1; ++k) {
    std::uint32_t c = t.exp[k];
    std::uint64_t s = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      s += static_cast<std::uint64_t>(c % p) * basis_trace[i];
      c /= p;
    }
    t.trace[k] = static_cast<std::uint32_t>(s % p);
  }
  t.trace_seq.clear();
  if (p < 256) {
    t.trace_seq.resize(2 * static_cast<std::size_t>(qm1));
    for (std::uint32_t k = 0; k < qm1; ++k) {
      t.trace_seq[k] = t.trace_seq[k + qm1] = static_cast<std::uint8_t>(t.trace[k]);
    }
  }
}

FieldContext build_field(const FieldParams& params, std::uint64_t cap) {
  check_prime(params.p);
  if (params.n == 0) throw ValidationError("extension degree must be positive");
  if (params.modulus.size() != params.n + 1) {
    throw ValidationError("modulus must have n+1 coefficients");
  }
  if (params.modulus.back() != 1) throw ValidationError("modulus must be monic");
  for (auto c : params.modulus) {
    if (c >= params.p) throw ValidationError("modulus coefficient out of range");
  }
  const std::uint64_t q = checked_power(params.p, params.n, cap);
  if (q > std::numeric_limits<std::uint32_t>::max()) throw SizeError("field too large");

  auto t = std::make_shared<FieldTables>();
  t->params = params;
  t->q = q;
  t->qm1 = static_cast<std::uint32_t>(q - 1);
  t->digit_weight.resize(params.n);
  for (std::uint32_t i = 0; i < params.n; ++i) {
    t->digit_weight[i] = i == 0 ? 1 : t->digit_weight[i - 1] * params.p;
  }

  const std::uint32_t p = params.p;
  const std::uint32_t n = params.n;
  const std::uint64_t top_weight = t->digit_weight[n - 1];
  t->exp.resize(t->qm1);
  std::uint32_t code = 1;
  for (std::uint32_t i = 0; i < t->qm1; ++i) {
    if (i > 0 && code == 1) throw ValidationError("modulus is not primitive");
    if (code == 0) throw ValidationError("modulus is not irreducible");
    t->exp[i] = code;
    // Multiply by x: shift digits up and fold the overflow digit back
    // through x^n = -(f_0 + ... + f_{n-1} x^{n-1}).
    const std::uint32_t top = static_cast<std::uint32_t>(code / top_weight);
    std::uint64_t shifted = (code % top_weight) * p;
    std::uint64_t next = 0;
    for (std::uint32_t k = 0; k < n; ++k) {
      const std::uint64_t digit = (shifted / t->digit_weight[k]) % p;
      const std::uint64_t sub = (static_cast<std::uint64_t>(top) * params.modulus[k]) % p;
      next += ((digit + p - sub) % p) * t->digit_weight[k];
    }
    code = static_cast<std::uint32_t>(next);
  }
  if (code != 1) throw ValidationError("modulus is not primitive");

  finish_tables(*t);
  return FieldContext(std::move(t));
}

FieldContext make_field(std::uint32_t p, std::uint32_t n, std::uint64_t cap) {
  return build_field(default_field_params(p, n, cap), cap);
}

FieldContext::FieldContext(std::shared_ptr<const FieldTables> tables) : t_(std::move(tables)) {}

const FieldParams& FieldContext::params() const { return t_->params; }
std::uint32_t FieldContext::p() const { return t_->params.p; }
std::uint32_t FieldContext::n() const { return t_->params.n; }
std::uint64_t FieldContext::order() const { return t_->q; }
std::uint32_t FieldContext::group_order() const { return t_->qm1; }

Element FieldContext::psi() const { return Element::from_index(1 % t_->qm1); }
Element FieldContext::beta() const { return t_->beta; }
Element FieldContext::minus_one() const { return t_->minus_one; }

Element FieldContext::power_of_psi(std::int64_t k) const {
  const std::int64_t m = t_->qm1;
  return Element::from_index(static_cast<std::uint32_t>(((k % m) + m) % m));
}

Element FieldContext::add(Element x, Element y) const {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const std::uint32_t qm1 = t_->qm1;
  std::uint32_t diff = y.index() >= x.index() ? y.index() - x.index() : y.index() + qm1 - x.index();
  const std::uint32_t z = t_->zech[diff];
  if (z == Element::zero().raw()) return Element::zero();
  std::uint64_t s = static_cast<std::uint64_t>(x.index()) + z;
  if (s >= qm1) s -= qm1;
  return Element::from_index(static_cast<std::uint32_t>(s));
}

Element FieldContext::neg(Element x) const {
  if (x.is_zero() || t_->params.p == 2) return x;
  return mul(x, t_->minus_one);
}

Element FieldContext::sub(Element x, Element y) const { return add(x, neg(y)); }

Element FieldContext::mul(Element x, Element y) const {
  if (x.is_zero() || y.is_zero()) return Element::zero();
  std::uint64_t s = static_cast<std::uint64_t>(x.index()) + y.index();
  if (s >= t_->qm1) s -= t_->qm1;
  return Element::from_index(static_cast<std::uint32_t>(s));
}

Element FieldContext::inv(Element x) const {
  if (x.is_zero()) throw DomainError("inverse of zero");
  return Element::from_index(x.index() == 0 ? 0 : t_->qm1 - x.index());
}

Element FieldContext::div(Element x, Element y) const { return mul(x, inv(y)); }

Element FieldContext::pow(Element x, std::int64_t k) const {
  if (x.is_zero()) {
    if (k == 0) return one();
    if (k < 0) throw DomainError("negative power of zero");
    return Element::zero();
  }
  const std::int64_t m = t_->qm1;
  const std::int64_t e = ((k % m) + m) % m;
  const std::uint64_t r = (static_cast<std::uint64_t>(x.index()) * static_cast<std::uint64_t>(e)) % t_->qm1;
  return Element::from_index(static_cast<std::uint32_t>(r));
}

Element FieldContext::frobenius(Element x, std::uint32_t times) const {
  if (x.is_zero()) return x;
  std::uint64_t idx = x.index();
  for (std::uint32_t i = 0; i < times; ++i) idx = (idx * t_->params.p) % t_->qm1;
  return Element::from_index(static_cast<std::uint32_t>(idx));
}

std::uint32_t FieldContext::trace(Element x) const {
  return x.is_zero() ? 0 : t_->trace[x.index()];
}

std::uint32_t FieldContext::ind(Element x) const {
  if (x.is_zero()) throw DomainError("discrete log of zero");
  return x.index();
}

std::uint32_t FieldContext::coset_class(Element x, std::uint64_t m) const {
  if (m == 0 || t_->qm1 % m != 0) {
    throw PreconditionError("coset modulus " + std::to_string(m) + " does not divide p^n-1");
  }
  if (x.is_zero()) throw DomainError("zero has no multiplicative coset");
  return static_cast<std::uint32_t>(x.index() % m);
}

bool FieldContext::in_mu(Element x, std::uint64_t e) const {
  if (x.is_zero()) return false;
  return (static_cast<unsigned __int128>(x.index()) * e) % t_->qm1 == 0;
}

std::uint32_t FieldContext::code(Element x) const { return x.is_zero() ? 0 : t_->exp[x.index()]; }

Element FieldContext::from_code(std::uint32_t code) const {
  if (code >= t_->q) throw DomainError("element code out of range");
  return code == 0 ? Element::zero() : Element::from_index(t_->log[code]);
}

std::vector<std::uint32_t> FieldContext::coefficients(Element x) const {
  std::vector<std::uint32_t> out(t_->params.n, 0);
  std::uint32_t c = code(x);
  for (auto& d : out) {
    d = c % t_->params.p;
    c /= t_->params.p;
  }
  return out;
}

Element FieldContext::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (coeffs.size() > t_->params.n) throw DomainError("too many coefficients");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] >= t_->params.p) throw DomainError("coefficient out of range");
    c += coeffs[i] * t_->digit_weight[i];
  }
  return from_code(static_cast<std::uint32_t>(c));
}

std::uint32_t FieldContext::to_prime_field(Element x) const {
  const std::uint32_t c = code(x);
  if (c >= t_->params.p) throw DomainError("element is not in the prime subfield");
  return c;
}

Element FieldContext::from_prime_field(std::uint32_t value) const {
  return from_code(value % t_->params.p);
}

std::span<const std::uint8_t> FieldContext::trace_sequence() const {
  if (t_->trace_seq.empty()) throw SizeError("trace sequence requires p < 256");
  return t_->trace_seq;
}

std::string FieldContext::to_string(Element x) const {
  if (x.is_zero()) return "0";
  if (x.index() == 0) return "1";
  return "psi^" + std::to_string(x.index());
}

Element parse_element(const FieldContext& field, const std::string& text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw ValidationError("cannot parse element '" + text + "'");
    }
    return v;
  };
  if (text == "0") return Element::zero();
  if (text == "1") return field.one();
  if (text == "-1") return field.minus_one();
  if (text == "psi") return field.psi();
  if (text.rfind("psi^", 0) == 0) return field.power_of_psi(parse_int(std::string_view(text).substr(4)));
  if (text.rfind("poly:", 0) == 0) {
    std::vector<std::uint32_t> coeffs;
    std::stringstream ss(text.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto v = parse_int(item);
      if (v < 0) throw ValidationError("negative coefficient in '" + text + "'");
      coeffs.push_back(static_cast<std::uint32_t>(v));
    }
    return field.from_coefficients(coeffs);
  }
  throw ValidationError("cannot parse element '" + text + "'");
}

}  // namespace powerspec
