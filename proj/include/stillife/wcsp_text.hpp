#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/cost_table.hpp"
#include "stillife/wcsp.hpp"

namespace stillife {

struct WcspTextError : std::runtime_error {
  WcspTextError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_no(line) {}
  int line_no;
};

// Plain text instance format, line oriented:
//   wcsp V                        header, V variables with ids 0..V-1
//   dom <id> <size>               one per variable, any order
//   fn <k> <id...> : <idx> <cost> ...   sparse entries, rest default to 0
// `#` starts a comment; costs are nonnegative integers or `inf`.
inline WcspInstance parse_wcsp_text(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  long nvars = -1;
  std::vector<long> sizes;
  std::vector<CostTable> functions;
  bool doms_done = false;

  auto strip_comment = [](std::string s) {
    std::size_t h = s.find('#');
    if (h != std::string::npos) s.erase(h);
    return s;
  };

  while (std::getline(lines, line)) {
    ++line_no;
    std::istringstream tok(strip_comment(line));
    std::string kind;
    if (!(tok >> kind)) continue;
    if (kind == "wcsp") {
      if (nvars >= 0) throw WcspTextError(line_no, "repeated header");
      if (!(tok >> nvars) || nvars < 0)
        throw WcspTextError(line_no, "malformed header, expected `wcsp V`");
      sizes.assign(static_cast<std::size_t>(nvars), 0);
      continue;
    }
    if (nvars < 0) throw WcspTextError(line_no, "missing `wcsp V` header");
    if (kind == "dom") {
      if (doms_done)
        throw WcspTextError(line_no, "domain after first function");
      long id = -1, size = 0;
      if (!(tok >> id >> size) || id < 0 || id >= nvars || size <= 0)
        throw WcspTextError(line_no, "malformed `dom <id> <size>`");
      if (sizes[id] != 0)
        throw WcspTextError(line_no, "repeated domain for variable " +
                                         std::to_string(id));
      sizes[id] = size;
      continue;
    }
    if (kind != "fn") throw WcspTextError(line_no, "unknown directive " + kind);
    for (long i = 0; i < nvars; ++i)
      if (sizes[i] == 0)
        throw WcspTextError(line_no, "variable " + std::to_string(i) +
                                         " has no domain yet");
    doms_done = true;
    long k = -1;
    if (!(tok >> k) || k < 0) throw WcspTextError(line_no, "bad scope size");
    std::vector<VariableId> scope;
    std::vector<Value> dims;
    std::size_t entries = 1;
    for (long i = 0; i < k; ++i) {
      long id = -1;
      if (!(tok >> id) || id < 0 || id >= nvars)
        throw WcspTextError(line_no, "scope variable out of range");
      for (VariableId seen : scope)
        if (seen == static_cast<VariableId>(id))
          throw WcspTextError(line_no, "repeated scope variable");
      scope.push_back(static_cast<VariableId>(id));
      dims.push_back(static_cast<Value>(sizes[id]));
      entries *= static_cast<std::size_t>(sizes[id]);
    }
    std::string colon;
    if (!(tok >> colon) || colon != ":")
      throw WcspTextError(line_no, "expected `:` after the scope");
    CostTable f(scope, dims);
    std::string idx_s;
    while (tok >> idx_s) {
      long idx = -1;
      try {
        idx = std::stol(idx_s);
      } catch (const std::exception&) {
        throw WcspTextError(line_no, "bad entry index " + idx_s);
      }
      if (idx < 0 || static_cast<std::size_t>(idx) >= entries)
        throw WcspTextError(line_no, "entry index out of range");
      std::string cost_s;
      if (!(tok >> cost_s))
        throw WcspTextError(line_no, "index without a cost");
      if (cost_s == "inf") {
        f[idx] = CostValue::top();
      } else {
        try {
          if (cost_s.empty() || cost_s[0] == '-') throw std::out_of_range("");
          f[idx] = CostValue(std::stoull(cost_s));
        } catch (const std::exception&) {
          throw WcspTextError(line_no, "bad cost " + cost_s);
        }
      }
    }
    functions.push_back(std::move(f));
  }
  if (nvars < 0) throw WcspTextError(line_no, "missing `wcsp V` header");
  for (long i = 0; i < nvars; ++i)
    if (sizes[i] == 0)
      throw WcspTextError(line_no,
                          "variable " + std::to_string(i) + " has no domain");
  WcspInstance p;
  for (long i = 0; i < nvars; ++i)
    p.add_variable(static_cast<Value>(sizes[i]));
  for (CostTable& f : functions) p.add_function(std::move(f));
  return p;
}

}  // namespace stillife
