// Weighted graph coloring as a WCSP: three colors, soft preferences on the
// vertices, a hard inequality on every edge. Solved twice, by full bucket
// elimination and by the degree-bounded search.
#include <iostream>

#include "stillife/generic_hyb.hpp"
#include "stillife/wcsp.hpp"

using namespace stillife;

int main() {
  WcspInstance p;
  const int kVertices = 6;
  for (int i = 0; i < kVertices; ++i) p.add_variable(3);

  // Each vertex mildly prefers one color.
  for (int i = 0; i < kVertices; ++i) {
    CostTable pref({VariableId(i)}, {3});
    for (Value c = 0; c < 3; ++c) pref[c] = CostValue(c == i % 3 ? 0 : 1);
    p.add_function(pref);
  }

  // A cycle plus one chord; endpoints must differ.
  const int edges[][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}, {1, 4}};
  for (auto [a, b] : edges) {
    CostTable ne({VariableId(a), VariableId(b)}, {3, 3});
    for (Value u = 0; u < 3; ++u)
      for (Value v = 0; v < 3; ++v)
        ne[u * 3 + v] = u == v ? CostValue::top() : CostValue::zero();
    p.add_function(ne);
  }

  std::vector<VariableId> order = p.variable_ids();
  BucketEliminationResult exact = bucket_elimination(p, order);
  std::cout << "bucket elimination: optimum " << exact.optimum.raw()
            << ", " << exact.count.value() << " optimal colorings\n";

  GenericResult searched = solve_generic(p, 2);
  std::cout << "degree-bounded search: optimum " << searched.optimum.raw()
            << ", " << searched.branch_events << " branch events\n";
  std::cout << "coloring:";
  for (auto [x, v] : searched.assignment)
    std::cout << " v" << x << "=" << v;
  std::cout << "\n";
  return 0;
}
