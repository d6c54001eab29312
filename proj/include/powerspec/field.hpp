#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "powerspec/errors.hpp"

namespace powerspec {

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 22;

// Prime p, extension degree n and a monic degree-n modulus (constant term
// first, n+1 coefficients in [0, p)).
struct FieldParams {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldParams&) const = default;
};

// Nonzero elements are stored as their discrete log to the base psi; zero is
// a distinguished tag with no index.
class Element {
 public:
  constexpr Element() = default;

  static constexpr Element zero() { return Element(); }
  static constexpr Element from_index(std::uint32_t index) { return Element(index); }

  constexpr bool is_zero() const { return raw_ == kZeroTag; }
  // Undefined for zero; FieldContext::ind performs the checked lookup.
  constexpr std::uint32_t index() const { return raw_; }
  constexpr std::uint32_t raw() const { return raw_; }

  constexpr auto operator<=>(const Element&) const = default;

 private:
  static constexpr std::uint32_t kZeroTag = 0xFFFFFFFFu;
  constexpr explicit Element(std::uint32_t index) : raw_(index) {}
  std::uint32_t raw_ = kZeroTag;
};

std::uint64_t checked_power(std::uint64_t base, std::uint32_t exp, std::uint64_t limit);
bool is_prime(std::uint64_t value);
std::vector<std::uint64_t> prime_factors(std::uint64_t value);

// Lexicographically smallest monic primitive polynomial of degree n over F_p,
// coefficients compared constant term first.
std::vector<std::uint32_t> find_primitive_polynomial(std::uint32_t p, std::uint32_t n,
                                                     std::uint64_t cap = kDefaultFieldCap);

// True when x generates (F_p[x]/modulus)^*; implies irreducibility.
bool is_primitive_polynomial(std::uint32_t p, std::span<const std::uint32_t> modulus);

FieldParams default_field_params(std::uint32_t p, std::uint32_t n, std::uint64_t cap = kDefaultFieldCap);

struct FieldTables;

// Immutable table-driven arithmetic in F_{p^n}. Copies share the tables.
//
// Every element has a "slot" in [0, p^n): slot 0 is zero and slot k+1 is
// psi^k. Dense per-element arrays in the rest of the library are indexed by
// slot. The "code" of an element is its coefficient vector in the polynomial
// basis packed as a base-p integer.
class FieldContext {
 public:
  const FieldParams& params() const;
  std::uint32_t p() const;
  std::uint32_t n() const;
  std::uint64_t order() const;        // p^n
  std::uint32_t group_order() const;  // p^n - 1

  Element one() const { return Element::from_index(0); }
  Element psi() const;
  Element beta() const;
  Element minus_one() const;
  Element power_of_psi(std::int64_t k) const;

  Element add(Element x, Element y) const;
  Element sub(Element x, Element y) const;
  Element mul(Element x, Element y) const;
  Element div(Element x, Element y) const;
  Element neg(Element x) const;
  Element inv(Element x) const;
  // Arbitrary integer exponent; 0^0 = 1, 0^k = 0 for k > 0.
  Element pow(Element x, std::int64_t k) const;
  Element frobenius(Element x, std::uint32_t times = 1) const;

  std::uint32_t trace(Element x) const;
  std::uint32_t ind(Element x) const;
  std::uint32_t coset_class(Element x, std::uint64_t m) const;
  bool in_mu(Element x, std::uint64_t e) const;

  std::uint32_t slot(Element x) const { return x.is_zero() ? 0 : x.index() + 1; }
  Element at_slot(std::uint32_t s) const {
    return s == 0 ? Element::zero() : Element::from_index(s - 1);
  }

  std::uint32_t code(Element x) const;
  Element from_code(std::uint32_t code) const;
  std::vector<std::uint32_t> coefficients(Element x) const;
  Element from_coefficients(std::span<const std::uint32_t> coeffs) const;
  // Prime-subfield elements as residues mod p; throws DomainError otherwise.
  std::uint32_t to_prime_field(Element x) const;
  Element from_prime_field(std::uint32_t value) const;

  // Tr(psi^k) for k in [0, 2(p^n - 1)); the doubled period lets callers take
  // any cyclic window of length p^n - 1 as a contiguous span. Requires p < 256.
  std::span<const std::uint8_t> trace_sequence() const;

  std::string to_string(Element x) const;

 private:
  friend FieldContext build_field(const FieldParams&, std::uint64_t);
  friend FieldContext load_field_tables(const std::string&, const FieldParams&, std::uint64_t);
  explicit FieldContext(std::shared_ptr<const FieldTables> tables);
  std::shared_ptr<const FieldTables> t_;
};

FieldContext build_field(const FieldParams& params, std::uint64_t cap = kDefaultFieldCap);

// Builds the default field (smallest primitive modulus) for p^n.
FieldContext make_field(std::uint32_t p, std::uint32_t n, std::uint64_t cap = kDefaultFieldCap);

// Table cache keyed by (p, n, modulus). The directory comes from the
// POWERSPEC_TABLE_CACHE environment variable when not given explicitly.
std::string table_cache_path(const std::string& dir, const FieldParams& params);
void save_field_tables(const std::string& path, const FieldContext& field);
FieldContext load_field_tables(const std::string& path, const FieldParams& params,
                               std::uint64_t cap = kDefaultFieldCap);
FieldContext build_field_cached(const FieldParams& params, std::uint64_t cap = kDefaultFieldCap);

// Parses "0", "1", "-1", "psi", "psi^K" (K may be negative) or "poly:c0,c1,...".
Element parse_element(const FieldContext& field, const std::string& text);

}  // namespace powerspec
