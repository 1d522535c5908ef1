#include "satmp/formula.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

namespace satmp {

std::string Assignment::to_string() const {
  std::string s;
  s.reserve(value.size());
  for (VarState v : value)
    s += (v == VarState::Zero ? '0' : v == VarState::One ? '1' : '*');
  return s;
}

namespace {

struct Token {
  std::string text;
  int line;
};

}  // namespace

DimacsParseResult parse_dimacs(std::istream& in) {
  DimacsParseResult res;
  bool header_seen = false;
  std::int64_t declared_clauses = 0;
  std::string line;
  int line_no = 0;
  std::vector<Literal> current;
  std::unordered_set<std::int32_t> seen_vars;
  bool clause_open = false;

  auto fail = [](int ln, const std::string& what) {
    throw ParseError("dimacs line " + std::to_string(ln) + ": " + what);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') {
      std::string text = line.substr(1);
      if (!text.empty() && text[0] == ' ') text.erase(0, 1);
      res.comments.push_back(text);
      continue;
    }
    if (line[0] == 'p') {
      if (header_seen) fail(line_no, "duplicate header");
      std::istringstream hs(line);
      std::string p, fmt;
      std::int64_t nv = -1, nc = -1;
      if (!(hs >> p >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        fail(line_no, "malformed header '" + line + "'");
      std::string extra;
      if (hs >> extra) fail(line_no, "trailing tokens in header");
      res.formula.n_vars = static_cast<std::int32_t>(nv);
      declared_clauses = nc;
      header_seen = true;
      continue;
    }
    if (line[0] == '%') break;  // SATLIB-style trailer
    if (!header_seen) fail(line_no, "clause data before header");

    std::istringstream ls(line);
    std::int64_t lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (!clause_open) fail(line_no, "zero-length clause");
        res.formula.clauses.push_back(Clause{current});
        current.clear();
        seen_vars.clear();
        clause_open = false;
        continue;
      }
      std::int64_t v = lit > 0 ? lit : -lit;
      if (v > res.formula.n_vars)
        fail(line_no, "literal " + std::to_string(lit) + " out of range");
      if (!seen_vars.insert(static_cast<std::int32_t>(v)).second)
        fail(line_no, "duplicate variable " + std::to_string(v) + " in clause");
      current.push_back(from_dimacs_lit(static_cast<std::int32_t>(lit)));
      clause_open = true;
    }
    if (!ls.eof()) {
      std::string bad;
      ls.clear();
      ls >> bad;
      fail(line_no, "unexpected token '" + bad + "'");
    }
  }
  if (clause_open) throw ParseError("dimacs: unterminated final clause");
  if (!header_seen) throw ParseError("dimacs: missing header");
  if (declared_clauses != res.formula.n_clauses()) res.clause_count_mismatch = true;
  return res;
}

DimacsParseResult parse_dimacs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_dimacs(in);
}

DimacsParseResult parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

void emit_dimacs(const CnfFormula& f, std::ostream& out) {
  out << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c.literals) out << to_dimacs_lit(l) << ' ';
    out << "0\n";
  }
}

std::string emit_dimacs_string(const CnfFormula& f) {
  std::ostringstream out;
  emit_dimacs(f, out);
  return out.str();
}

std::int64_t cost(const CnfFormula& f, const Assignment& a) {
  std::int64_t violated = 0;
  for (const Clause& c : f.clauses) {
    bool sat = false;
    for (const Literal& l : c.literals) {
      VarState s = a[l.var - 1];
      if (s == VarState::Unfixed)
        throw std::invalid_argument("cost: variable " + std::to_string(l.var) + " unfixed");
      if ((s == VarState::One) == l.satisfying_value()) {
        sat = true;
        break;
      }
    }
    violated += !sat;
  }
  return violated;
}

}  // namespace satmp
