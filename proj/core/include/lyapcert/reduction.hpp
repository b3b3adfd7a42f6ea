#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lyapcert/dynamics.hpp"
#include "lyapcert/poly.hpp"

namespace lyapcert {

// ONE-IN-THREE 3SAT instances and their compilation into quartic
// polynomials, quartic forms, and cubic gradient vector fields.

struct Literal {
  int var = 0;  // 1-based
  bool negated = false;
};

struct Clause {
  std::array<Literal, 3> lits;
};

struct CnfInstance {
  int nvars = 0;
  std::vector<Clause> clauses;
};

struct Assignment {
  std::vector<bool> bits;
  bool operator==(const Assignment&) const = default;
};

class CnfParseError : public std::runtime_error {
 public:
  enum class Kind { bad_header, bad_arity, repeated_variable, index_out_of_range, bad_clause };

  CnfParseError(Kind kind, int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        kind_(kind),
        line_(line) {}

  Kind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

// DIMACS-style format: 'c' comment lines, a header "p eot3 <nvars> <nclauses>",
// then one clause per line as three nonzero signed integers terminated by 0.
// A negative integer is a negated literal. Clauses with a repeated variable
// are rejected rather than simplified.
CnfInstance parse_cnf(std::istream& in);
CnfInstance parse_cnf_file(const std::string& path);

// Exhaustive search bound for the Boolean-cube oracles.
inline constexpr int kExhaustiveVarLimit = 30;

// Looks for an assignment giving every clause exactly one true literal.
// Assignments are enumerated with x1 as the least significant bit, so the
// first witness found is returned deterministically.
std::optional<Assignment> exactly_one_true_satisfiable(const CnfInstance& inst);

// The instance's quartic gadget:
//   p = sum_i xi^2 (1-xi)^2 + sum_clauses (l1 + l2 + l3 - 1)^2
// with xi for a positive literal and (1 - xi) for a negated one. A sum of
// squares by construction; vanishes exactly at the exactly-one-true witnesses.
Polynomial build_quartic(const CnfInstance& inst);

// Same, keeping the list of squared polynomials as a structural certificate.
struct QuarticWithSquares {
  Polynomial p;
  std::vector<Polynomial> squares;
};
QuarticWithSquares build_quartic_with_squares(const CnfInstance& inst);

// All Boolean points where p evaluates exactly to zero (exact rational
// arithmetic), in the same enumeration order as the satisfiability oracle.
std::vector<Assignment> zeros_on_cube(const Polynomial& p);

// xdot = -grad V. For a form V of degree d the field is homogeneous of
// degree d-1.
VectorField gradient_system(const Polynomial& V);

}  // namespace lyapcert
