#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "stillife/dimacs.hpp"
#include "stillife/generic_hyb.hpp"
#include "stillife/oracle.hpp"

using namespace stillife;

namespace {

CnfFormula random_cnf(std::mt19937& rng, int max_vars, int max_clauses) {
  CnfFormula f;
  f.variables = 1 + static_cast<int>(rng() % max_vars);
  int nc = 1 + static_cast<int>(rng() % max_clauses);
  for (int i = 0; i < nc; ++i) {
    Clause c;
    int len = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < len; ++k) {
      VariableId var = rng() % f.variables;
      bool pos = rng() % 2;
      bool dup = false;
      for (const Literal& l : c.literals)
        if (l.var == var) dup = true;
      if (!dup) c.literals.push_back({var, pos});
    }
    f.clauses.push_back(std::move(c));
  }
  f.declared_clauses = static_cast<int>(f.clauses.size());
  return f;
}

}  // namespace

TEST_CASE("reader handles the minimal two-clause file", "[dimacs]") {
  CnfFormula f = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n");
  REQUIRE(f.variables == 1);
  REQUIRE(f.declared_clauses == 2);
  REQUIRE(f.clauses.size() == 2);
  REQUIRE(f.clauses[0].literals.size() == 1);
  REQUIRE(f.clauses[0].literals[0] == Literal{0, true});
  REQUIRE(f.clauses[1].literals[0] == Literal{0, false});
}

TEST_CASE("reader accepts comments and clauses spanning lines", "[dimacs]") {
  CnfFormula f = parse_dimacs(
      "c a comment\np cnf 3 2\nc another\n1 -2\n3 0\n-1\n-3 0\n");
  REQUIRE(f.variables == 3);
  REQUIRE(f.clauses.size() == 2);
  REQUIRE(f.clauses[0].literals.size() == 3);
  REQUIRE(f.clauses[1].literals.size() == 2);
}

TEST_CASE("tautologies are dropped and reported", "[dimacs]") {
  CnfFormula f = parse_dimacs("p cnf 2 2\n1 -1 0\n1 2 0\n");
  REQUIRE(f.clauses.size() == 1);
  REQUIRE(f.dropped_tautologies == 1);
  REQUIRE(f.clauses[0].literals.size() == 2);
}

TEST_CASE("repeated literals are merged and reported", "[dimacs]") {
  CnfFormula f = parse_dimacs("p cnf 2 1\n1 1 2 0\n");
  REQUIRE(f.clauses.size() == 1);
  REQUIRE(f.merged_duplicates == 1);
  REQUIRE(f.clauses[0].literals.size() == 2);
}

TEST_CASE("malformed input is rejected with a line number", "[dimacs]") {
  auto line_of = [](const std::string& text) {
    try {
      parse_dimacs(text);
    } catch (const DimacsError& e) {
      return e.line_no;
    }
    return -1;
  };
  REQUIRE(line_of("p cnf x 2\n1 0\n") == 1);          // bad header
  REQUIRE(line_of("p cnf 1 1 9\n1 0\n") == 1);        // trailing tokens
  REQUIRE(line_of("1 0\np cnf 1 1\n") == 1);          // clause before header
  REQUIRE(line_of("p cnf 1 1\np cnf 1 1\n1 0\n") == 2);  // repeated header
  REQUIRE(line_of("p cnf 2 1\n1 3 0\n") == 2);        // literal out of range
  REQUIRE(line_of("p cnf 2 1\n1 2\n") == 2);          // missing terminator
  REQUIRE(line_of("p cnf 2 1\n0\n") == 2);            // empty clause
  REQUIRE(line_of("p cnf 2 1\n1 z 0\n") == 2);        // stray token
  REQUIRE(line_of("c only comments\n") == 1);         // missing header
}

TEST_CASE("normalized round-trip is a fixed point", "[dimacs]") {
  std::mt19937 rng(20260815);
  for (int iter = 0; iter < 50; ++iter) {
    CnfFormula f = random_cnf(rng, 8, 12);
    std::string once = emit_dimacs(f);
    CnfFormula g = parse_dimacs(once);
    std::string twice = emit_dimacs(g);
    REQUIRE(once == twice);
    REQUIRE(g.variables == f.variables);
    REQUIRE(g.clauses.size() == f.clauses.size());
    for (std::size_t i = 0; i < f.clauses.size(); ++i)
      REQUIRE(g.clauses[i].literals == f.clauses[i].literals);
  }
}

TEST_CASE("contradictory units cost exactly one violation", "[dimacs]") {
  WcspInstance p = maxsat_to_wcsp(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));
  REQUIRE(solve_generic(p).optimum == CostValue(1));
  REQUIRE(oracle::brute_force_wcsp(p).optimum == CostValue(1));
}

TEST_CASE("satisfiable formulas cost nothing", "[dimacs]") {
  WcspInstance p = maxsat_to_wcsp(
      parse_dimacs("p cnf 3 4\n1 2 0\n-1 3 0\n-2 -3 0\n1 -3 0\n"));
  REQUIRE(solve_generic(p).optimum == CostValue(0));
}

TEST_CASE("clause tables charge exactly the violating row", "[dimacs]") {
  CnfFormula f = parse_dimacs("p cnf 3 1\n1 -2 3 0\n");
  WcspInstance p = maxsat_to_wcsp(f);
  REQUIRE(p.functions().size() == 1);
  const CostTable& t = p.functions()[0];
  REQUIRE(t.size() == 8);
  int ones = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == CostValue(1)) ++ones;
    REQUIRE((t[i] == CostValue(0) || t[i] == CostValue(1)));
  }
  REQUIRE(ones == 1);
  // The violating assignment falsifies every literal: x1=0, x2=1, x3=0.
  REQUIRE(t.evaluate({0, 1, 0}) == CostValue(1));
}
