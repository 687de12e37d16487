#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "fusion/core.hpp"
#include "fusion/error.hpp"
#include "fusion/grading.hpp"

namespace fusion {

/// Syntax or shape problem in a ring or group document. Line and column are
/// 1-based and point at the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The document is well formed but the ring or grading breaks an axiom.
class AxiomFailure : public Error {
 public:
  AxiomFailure(const std::string& what, AxiomReport report);

  const AxiomReport& report() const noexcept { return report_; }

 private:
  AxiomReport report_;
};

struct RingDocument {
  FusionRing ring;
  std::optional<Grading> grading;
};

/// Parses the line-oriented ring format:
///
///   ring <name> rank=<R> unit=<u>
///   dual <d_0> ... <d_{R-1}>
///   N <i> <j> : <k_0> ... <k_{R-1}>        (R*R lines)
///   group order=<n> identity=<e>          (optional, followed by n row lines)
///   row <...>
///   deg <g_0> ... <g_{R-1}>
///
/// `#` starts a comment. With `validate` set, ring and grading axioms are
/// checked and AxiomFailure is thrown on violation.
RingDocument parse_ring(std::string_view text, bool validate = true);

/// A standalone `group order=<n> identity=<e>` block with its rows.
FiniteGroup parse_group(std::string_view text);

std::string emit_ring(const FusionRing& ring, const std::optional<Grading>& grading = std::nullopt);
std::string emit_group(const FiniteGroup& group);

/// Drops comments and blank lines and collapses runs of whitespace.
std::string canonical_whitespace(std::string_view text);

/// Documents shipped with the library: "ising.ring", "a15.ring",
/// "z2.group" ... "z6.group", "z2xz2.group".
std::optional<std::string_view> bundled_document(std::string_view name);

/// Parses a bundled ring by short name ("ising", "a15").
FusionRing bundled_ring(std::string_view name);
FiniteGroup bundled_group(std::string_view name);

}  // namespace fusion
