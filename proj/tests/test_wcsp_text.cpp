#include <catch2/catch_amalgamated.hpp>

#include "stillife/oracle.hpp"
#include "stillife/wcsp_text.hpp"

using namespace stillife;

namespace {

int line_of(const std::string& text) {
  try {
    parse_wcsp_text(text);
  } catch (const WcspTextError& e) {
    return e.line_no;
  }
  return -1;
}

}  // namespace

TEST_CASE("text instances parse into working problems", "[wcsptext]") {
  WcspInstance p = parse_wcsp_text(
      "# two variables, one unary, one binary\n"
      "wcsp 2\n"
      "dom 0 2\n"
      "dom 1 3   # colors\n"
      "fn 1 0 : 0 4 1 1\n"
      "fn 2 0 1 : 0 2 3 inf 5 1\n");
  REQUIRE(p.variable_ids().size() == 2);
  REQUIRE(p.domain_size(0) == 2);
  REQUIRE(p.domain_size(1) == 3);
  REQUIRE(p.functions().size() == 2);

  const CostTable& u = p.functions()[0];
  CHECK(u.evaluate({0, 0}) == CostValue(4));
  CHECK(u.evaluate({1, 0}) == CostValue(1));
  const CostTable& b = p.functions()[1];
  CHECK(b.evaluate({0, 0}) == CostValue(2));
  CHECK(b.evaluate({0, 1}) == CostValue::zero());  // unlisted entries are 0
  CHECK(b.evaluate({1, 0}) == CostValue::top());
  CHECK(b.evaluate({1, 2}) == CostValue(1));

  oracle::WcspBruteResult brute = oracle::brute_force_wcsp(p);
  CHECK(brute.optimum == CostValue(1));
}

TEST_CASE("empty-scope functions carry constants", "[wcsptext]") {
  WcspInstance p = parse_wcsp_text("wcsp 1\ndom 0 2\nfn 0 : 0 7\nfn 1 0 :\n");
  REQUIRE(p.functions().size() == 2);
  CHECK(p.functions()[0].evaluate({0}) == CostValue(7));
  CHECK(p.functions()[1].evaluate({1}) == CostValue::zero());
  CHECK(oracle::brute_force_wcsp(p).optimum == CostValue(7));
}

TEST_CASE("later sparse entries overwrite earlier ones", "[wcsptext]") {
  WcspInstance p = parse_wcsp_text("wcsp 1\ndom 0 2\nfn 1 0 : 1 5 1 2\n");
  CHECK(p.functions()[0].evaluate({1}) == CostValue(2));
}

TEST_CASE("malformed instances name the offending line", "[wcsptext]") {
  CHECK(line_of("") == 0);                                // no header at all
  CHECK(line_of("dom 0 2\n") == 1);                       // body before header
  CHECK(line_of("wcsp\n") == 1);                          // header without V
  CHECK(line_of("wcsp 1\nwcsp 1\n") == 2);                // repeated header
  CHECK(line_of("wcsp 1\ndom 0 oops\n") == 2);            // unreadable size
  CHECK(line_of("wcsp 1\ndom 0 0\n") == 2);               // empty domain
  CHECK(line_of("wcsp 1\ndom 1 2\n") == 2);               // id out of range
  CHECK(line_of("wcsp 1\ndom 0 2\ndom 0 2\n") == 3);      // repeated domain
  CHECK(line_of("wcsp 1\ndom 0 2\nhm\n") == 3);           // unknown directive
  CHECK(line_of("wcsp 2\ndom 0 2\nfn 1 0 : 0 1\n") == 3); // var 1 undeclared
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 0 : 0 1\ndom 0 2\n") == 4);
  CHECK(line_of("wcsp 1\ndom 0 2\nfn x 0 : 0 1\n") == 3); // bad scope size
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 4 : 0 1\n") == 3); // scope out of range
  CHECK(line_of("wcsp 2\ndom 0 2\ndom 1 2\nfn 2 0 0 : 0 1\n") == 4);
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 0 0 1\n") == 3);   // missing colon
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 0 : x 1\n") == 3); // bad entry index
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 0 : 2 1\n") == 3); // index beyond table
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 0 : 0\n") == 3);   // index without cost
  CHECK(line_of("wcsp 1\ndom 0 2\nfn 1 0 : 0 -3\n") == 3);// negative cost
  CHECK(line_of("wcsp 1\n") == 1);                        // domain never given
}
