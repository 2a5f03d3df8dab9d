#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/cost_table.hpp"
#include "stillife/wcsp.hpp"

namespace stillife {

struct Literal {
  VariableId var = 0;  // zero-based
  bool positive = true;

  friend bool operator==(Literal, Literal) = default;
};

// Nonempty, no repeated variable: duplicates within a clause are merged at
// parse time and tautologies are dropped entirely.
struct Clause {
  std::vector<Literal> literals;
};

struct DimacsError : std::runtime_error {
  DimacsError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_no(line) {}
  int line_no;
};

struct CnfFormula {
  int variables = 0;
  std::vector<Clause> clauses;   // normalized
  int declared_clauses = 0;      // header count, before normalization
  int dropped_tautologies = 0;
  int merged_duplicates = 0;     // repeated-literal copies removed
};

// Standard CNF reader: `c` comment lines, one `p cnf V C` header, then
// whitespace-separated literals with a 0 closing each clause. Clauses may
// span lines. Errors carry the offending line number.
inline CnfFormula parse_dimacs(const std::string& text) {
  CnfFormula out;
  bool have_header = false;
  std::vector<long> pending;
  int line_no = 0;
  std::istringstream lines(text);
  std::string line;

  auto close_clause = [&](int at_line) {
    Clause c;
    bool tautology = false;
    for (long lit : pending) {
      VariableId var = static_cast<VariableId>(lit < 0 ? -lit : lit) - 1;
      bool pos = lit > 0;
      bool dup = false;
      for (const Literal& seen : c.literals) {
        if (seen.var != var) continue;
        if (seen.positive == pos) {
          dup = true;
          ++out.merged_duplicates;
          break;
        }
        tautology = true;
        break;
      }
      if (tautology) break;
      if (!dup) c.literals.push_back({var, pos});
    }
    pending.clear();
    if (tautology)
      ++out.dropped_tautologies;
    else if (c.literals.empty())
      throw DimacsError(at_line, "empty clause");
    else
      out.clauses.push_back(std::move(c));
  };

  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream tok(line);
    std::string first;
    if (!(tok >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      if (have_header) throw DimacsError(line_no, "repeated header");
      std::string kind;
      long v = -1, c = -1;
      if (!(tok >> kind >> v >> c) || kind != "cnf" || v < 0 || c < 0)
        throw DimacsError(line_no, "malformed header, expected `p cnf V C`");
      std::string extra;
      if (tok >> extra) throw DimacsError(line_no, "trailing header tokens");
      out.variables = static_cast<int>(v);
      out.declared_clauses = static_cast<int>(c);
      have_header = true;
      continue;
    }
    if (!have_header) throw DimacsError(line_no, "clause before `p cnf` header");
    tok.clear();
    tok.str(line);
    long lit;
    while (tok >> lit) {
      if (lit == 0) {
        close_clause(line_no);
        continue;
      }
      long mag = lit < 0 ? -lit : lit;
      if (mag > out.variables)
        throw DimacsError(line_no, "literal " + std::to_string(lit) +
                                       " out of range");
      pending.push_back(lit);
    }
    if (!tok.eof()) throw DimacsError(line_no, "unexpected token");
  }
  if (!have_header) throw DimacsError(line_no, "missing `p cnf` header");
  if (!pending.empty())
    throw DimacsError(line_no, "unterminated clause at end of input");
  return out;
}

// Normalized text form; parsing the result reproduces the same formula.
inline std::string emit_dimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.variables << " " << f.clauses.size() << "\n";
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c.literals)
      os << (l.positive ? long(l.var) + 1 : -(long(l.var) + 1)) << " ";
    os << "0\n";
  }
  return os.str();
}

// Max-SAT as a WCSP: binary variables, one table per clause charging 1 on
// its unique violating assignment. The optimum is the least number of
// violated clauses, i.e. clause count minus the maximum satisfiable.
inline WcspInstance maxsat_to_wcsp(const CnfFormula& f) {
  WcspInstance p;
  for (int i = 0; i < f.variables; ++i) p.add_variable(2);
  for (const Clause& c : f.clauses) {
    std::vector<VariableId> scope;
    std::vector<Value> dims(c.literals.size(), 2);
    std::vector<Value> violating;
    for (const Literal& l : c.literals) {
      scope.push_back(l.var);
      violating.push_back(l.positive ? 0 : 1);
    }
    CostTable t(scope, dims);
    t[t.index_of(violating)] = CostValue(1);
    p.add_function(std::move(t));
  }
  return p;
}

}  // namespace stillife
