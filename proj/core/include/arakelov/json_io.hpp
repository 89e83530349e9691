#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arakelov/matrix.hpp"
#include "arakelov/symmetric_space.hpp"

// Wire format for instances and results. One JSON object describes a cycle
// quadruple at one place; rational entries travel as strings so nothing is
// rounded, complex entries as {re, im} pairs. Parsing is strict: anything
// structurally wrong raises SchemaError and touches no domain code.

namespace arakelov {
namespace jsonio {

struct FiniteDoc {
  int n = 0;
  long prime = 0;
  QMatrix a, b, c, d;
  std::optional<QMatrix> l_a, l_b;

  friend bool operator==(const FiniteDoc&, const FiniteDoc&) = default;
};

struct ArchDoc {
  int n = 0;
  symspace::CMatrix a, b, c, d;
  std::optional<symspace::CMatrix> h_a, h_b, h0;

  friend bool operator==(const ArchDoc& x, const ArchDoc& y);
};

// Exactly one of the two places is engaged.
struct InstanceDocument {
  std::optional<FiniteDoc> finite;
  std::optional<ArchDoc> arch;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const InstanceDocument&, const InstanceDocument&) =
      default;
};

InstanceDocument parse_instance(const std::string& text);
std::string serialize_instance(const InstanceDocument& doc,
                               bool pretty = false);

// Query file for the building subcommands; which fields must be present
// depends on the subcommand, so they are all optional here and checked by
// the caller.
struct BuildingQuery {
  int n = 0;
  long prime = 0;
  std::optional<QMatrix> x, y;        // lattice bases
  std::optional<QMatrix> w, w1, w2;   // subspace bases
  std::optional<long> k_max, m;
};

BuildingQuery parse_building(const std::string& text);

// Flat, fully stringified result: printed in insertion order so identical
// computations serialize to identical bytes. The optional timing field is
// deliberately excluded from that guarantee.
struct ResultDocument {
  std::string place;
  std::vector<std::pair<std::string, std::string>> values;
  bool agree = true;
  std::string mismatch;
  std::vector<std::pair<std::string, std::string>> extras;
  std::optional<double> seconds;
};

std::string serialize_result(const ResultDocument& r, bool pretty = false);

// Lossless double formatting (shortest string that parses back equal).
std::string format_real(double x);

}  // namespace jsonio
}  // namespace arakelov
