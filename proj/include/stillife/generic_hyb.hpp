#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "stillife/cost.hpp"
#include "stillife/cost_table.hpp"
#include "stillife/wcsp.hpp"

namespace stillife {

// Current degree of every live variable: the number of distinct other
// variables sharing at least one live function with it. Rebuilt from the
// live set after each mutation, so consistency is by construction.
struct DegreeIndex {
  std::map<VariableId, int> degree;

  static DegreeIndex of(const WcspInstance& p) {
    DegreeIndex d;
    for (VariableId x : p.variable_ids()) {
      std::vector<VariableId> seen;
      for (const CostTable& f : p.functions()) {
        if (!f.contains(x)) continue;
        for (VariableId y : f.scope())
          if (y != x && std::find(seen.begin(), seen.end(), y) == seen.end())
            seen.push_back(y);
      }
      d.degree[x] = static_cast<int>(seen.size());
    }
    return d;
  }
};

struct GenericResult {
  CostValue optimum = CostValue::top();
  std::map<VariableId, Value> assignment;  // empty when optimum is Top
  std::uint64_t branch_events = 0;         // nodes where search branched
  std::vector<VariableId> branched_variables;  // distinct, ascending
};

// Observation hook, called once per search node after the elimination
// cascade with the remaining subproblem and the bound claimed for it.
using GenericNodeSink =
    std::function<void(const WcspInstance& remaining, CostValue lower_bound)>;

namespace detail {

// Empty-scope constants plus, per live variable, the min entry of its
// summed unary functions. Every term relaxes the true completion cost
// independently, so the total is admissible.
inline CostValue generic_lower_bound(const WcspInstance& p) {
  CostValue lb = CostValue::zero();
  for (const CostTable& f : p.functions())
    if (f.scope().empty()) lb += f[0];
  for (VariableId x : p.variable_ids()) {
    CostValue best = CostValue::top();
    bool any = false;
    Value dx = p.domain_size(x);
    for (Value v = 0; v < dx; ++v) {
      CostValue s = CostValue::zero();
      for (const CostTable& f : p.functions())
        if (f.scope().size() == 1 && f.scope()[0] == x) {
          any = true;
          s += f[v];
        }
      best = std::min(best, s);
    }
    if (any) lb += best;
  }
  return lb;
}

class GenericSearch {
 public:
  GenericSearch(int degree_bound, GenericNodeSink sink)
      : bound_(degree_bound), sink_(std::move(sink)) {}

  GenericResult run(const WcspInstance& root) {
    max_id_ = 0;
    for (VariableId x : root.variable_ids()) max_id_ = std::max(max_id_, x);
    res_ = GenericResult{};
    std::vector<EliminationRecord> records;
    std::vector<Value> branched(max_id_ + 1, 0);
    std::vector<bool> is_branched(max_id_ + 1, false);
    node(root, records, branched, is_branched);
    std::sort(res_.branched_variables.begin(), res_.branched_variables.end());
    return res_;
  }

 private:
  void node(WcspInstance p, std::vector<EliminationRecord>& records,
            std::vector<Value>& branched, std::vector<bool>& is_branched) {
    // Cascade: any variable at or below the degree bound is eliminated
    // exactly, lowest id first, until only high-degree variables remain.
    std::size_t first_record = records.size();
    for (;;) {
      DegreeIndex d = DegreeIndex::of(p);
      VariableId pick = 0;
      bool found = false;
      for (auto& [x, deg] : d.degree)
        if (deg <= bound_) {
          pick = x;
          found = true;
          break;
        }
      if (!found) break;
      EliminationResult e = eliminate_bucket(p, pick);
      p = std::move(e.instance);
      records.push_back(std::move(e.record));
    }

    CostValue lb = generic_lower_bound(p);
    if (sink_) sink_(p, lb);
    if (p.variable_ids().empty()) {
      CostValue total = CostValue::zero();
      for (const CostTable& f : p.functions()) total += f[0];
      if (total < res_.optimum) {
        res_.optimum = total;
        store_assignment(records, branched, is_branched);
      }
    } else if (lb < res_.optimum) {
      branch(p, records, branched, is_branched);
    }
    records.resize(first_record);
  }

  void branch(const WcspInstance& p, std::vector<EliminationRecord>& records,
              std::vector<Value>& branched, std::vector<bool>& is_branched) {
    DegreeIndex d = DegreeIndex::of(p);
    VariableId x = 0;
    int best_deg = -1;
    for (auto& [y, deg] : d.degree)
      if (deg > best_deg) {
        x = y;
        best_deg = deg;
      }
    ++res_.branch_events;
    if (std::find(res_.branched_variables.begin(),
                  res_.branched_variables.end(),
                  x) == res_.branched_variables.end())
      res_.branched_variables.push_back(x);

    // Values ascending by the sum of the variable's unary projections.
    Value dx = p.domain_size(x);
    std::vector<std::pair<CostValue, Value>> order;
    for (Value v = 0; v < dx; ++v) {
      CostValue score = CostValue::zero();
      for (const CostTable& f : p.functions()) {
        if (!f.contains(x)) continue;
        CostTable slice = instantiate(f, x, v);
        CostValue m = CostValue::top();
        for (std::size_t i = 0; i < slice.size(); ++i)
          m = std::min(m, slice[i]);
        score += m;
      }
      order.emplace_back(score, v);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) {
                       return a.first < b.first;
                     });

    for (auto& [score, v] : order) {
      WcspInstance child = instantiate_instance(p, x, v);
      if (generic_lower_bound(child) >= res_.optimum) continue;
      branched[x] = v;
      is_branched[x] = true;
      node(std::move(child), records, branched, is_branched);
      is_branched[x] = false;
    }
  }

  // Leaf: branched values are known; eliminated variables are re-derived
  // in reverse elimination order, each from its recorded bucket, whose
  // scopes only mention later-eliminated or branched variables.
  void store_assignment(const std::vector<EliminationRecord>& records,
                        const std::vector<Value>& branched,
                        const std::vector<bool>& is_branched) {
    res_.assignment.clear();
    if (res_.optimum.is_top()) return;
    std::vector<Value> full(max_id_ + 1, 0);
    for (VariableId x = 0; x <= max_id_; ++x)
      if (is_branched[x]) {
        full[x] = branched[x];
        res_.assignment[x] = branched[x];
      }
    for (std::size_t r = records.size(); r-- > 0;) {
      const EliminationRecord& rec = records[r];
      Value best_v = 0;
      CostValue best = CostValue::top();
      Value dx = rec.bucket.empty()
                     ? 1
                     : rec.bucket[0].dims()[rec.bucket[0].position_of(rec.var)];
      for (Value v = 0; v < dx; ++v) {
        full[rec.var] = v;
        CostValue c = CostValue::zero();
        for (const CostTable& f : rec.bucket) c += f.evaluate(full);
        if (c < best) {
          best = c;
          best_v = v;
        }
      }
      full[rec.var] = best_v;
      res_.assignment[rec.var] = best_v;
    }
  }

  int bound_;
  GenericNodeSink sink_;
  VariableId max_id_ = 0;
  GenericResult res_;
};

}  // namespace detail

// Depth-first branch and bound over an arbitrary extensional instance.
// Variables whose degree stays at or below the bound are removed by exact
// bucket elimination on the fly; only the rest are searched.
inline GenericResult solve_generic(const WcspInstance& p, int degree_bound = 2,
                                   GenericNodeSink sink = {}) {
  if (degree_bound < 0) throw std::invalid_argument("negative degree bound");
  return detail::GenericSearch(degree_bound, std::move(sink)).run(p);
}

}  // namespace stillife
