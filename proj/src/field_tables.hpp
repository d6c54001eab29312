#pragma once

#include <cstdint>
#include <vector>

#include "powerspec/field.hpp"

namespace powerspec {

struct FieldTables {
  FieldParams params;
  std::uint64_t q = 0;
  std::uint32_t qm1 = 0;
  std::vector<std::uint64_t> digit_weight;  // p^i
  std::vector<std::uint32_t> exp;           // index -> code
  std::vector<std::uint32_t> log;           // code -> index (code 0 unused)
  std::vector<std::uint32_t> zech;          // k -> raw Element of 1 + psi^k
  std::vector<std::uint32_t> trace;         // index -> Tr(psi^index)
  std::vector<std::uint8_t> trace_seq;      // doubled period, p < 256 only
  Element beta;
  Element minus_one;
};

// Fills log, zech, trace and derived elements from params and exp.
void finish_tables(FieldTables& t);

}  // namespace powerspec
