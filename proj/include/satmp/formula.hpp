#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace satmp {

// A literal is a variable index (1-based, DIMACS style) plus a coupling
// J in {-1,+1}: J = -1 for an un-negated occurrence (clause satisfied by
// x = 1), J = +1 for a negated one (satisfied by x = 0).
struct Literal {
  std::int32_t var = 0;
  std::int8_t coupling = -1;

  bool negated() const { return coupling > 0; }
  // Value of the variable that satisfies this literal.
  bool satisfying_value() const { return coupling < 0; }
  bool operator==(const Literal&) const = default;
};

inline Literal from_dimacs_lit(std::int32_t lit) {
  return Literal{lit > 0 ? lit : -lit, static_cast<std::int8_t>(lit > 0 ? -1 : +1)};
}

inline std::int32_t to_dimacs_lit(const Literal& l) {
  return l.coupling < 0 ? l.var : -l.var;
}

struct Clause {
  std::vector<Literal> literals;
  bool operator==(const Clause&) const = default;
};

struct CnfFormula {
  std::int32_t n_vars = 0;
  std::vector<Clause> clauses;

  std::int32_t n_clauses() const { return static_cast<std::int32_t>(clauses.size()); }
  bool operator==(const CnfFormula&) const = default;
};

// Per-variable state. Variables are addressed 0-based internally; DIMACS
// variable v maps to index v-1.
enum class VarState : std::int8_t { Zero = 0, One = 1, Unfixed = 2 };

struct Assignment {
  std::vector<VarState> value;

  Assignment() = default;
  explicit Assignment(std::int32_t n_vars) : value(n_vars, VarState::Unfixed) {}

  std::int32_t n_vars() const { return static_cast<std::int32_t>(value.size()); }
  VarState operator[](std::int32_t var) const { return value[var]; }
  VarState& operator[](std::int32_t var) { return value[var]; }

  bool is_complete() const {
    for (VarState s : value)
      if (s == VarState::Unfixed) return false;
    return true;
  }
  std::int32_t n_unfixed() const {
    std::int32_t k = 0;
    for (VarState s : value) k += (s == VarState::Unfixed);
    return k;
  }
  // "0"/"1"/"*" per variable, in index order.
  std::string to_string() const;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DimacsParseResult {
  CnfFormula formula;
  // Header clause count disagreed with the clauses actually present.
  bool clause_count_mismatch = false;
  // Comment lines, header stripped, in file order. Metadata only.
  std::vector<std::string> comments;
};

// Throws ParseError on malformed header, literal out of range, duplicate
// variable inside a clause, or an explicit zero-length clause.
DimacsParseResult parse_dimacs(std::istream& in);
DimacsParseResult parse_dimacs_file(const std::string& path);
DimacsParseResult parse_dimacs_string(const std::string& text);

void emit_dimacs(const CnfFormula& f, std::ostream& out);
std::string emit_dimacs_string(const CnfFormula& f);

// Number of clauses violated by a complete assignment.
// Throws std::invalid_argument if any clause variable is Unfixed.
std::int64_t cost(const CnfFormula& f, const Assignment& a);

inline bool satisfies(const CnfFormula& f, const Assignment& a) {
  return cost(f, a) == 0;
}

}  // namespace satmp
