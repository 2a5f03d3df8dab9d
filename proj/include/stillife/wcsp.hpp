#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "stillife/cost_table.hpp"

namespace stillife {

// A weighted CSP: variables with finite domains plus cost tables combined by
// saturating sum; the objective is the minimum over full assignments.
class WcspInstance {
 public:
  VariableId add_variable(Value domain_size) {
    if (domain_size == 0) throw std::invalid_argument("empty domain");
    VariableId id = next_++;
    domains_.emplace(id, domain_size);
    return id;
  }

  void add_function(CostTable f) {
    validate(f);
    functions_.push_back(std::move(f));
  }

  void replace_functions(std::vector<CostTable> fs) {
    for (const CostTable& f : fs) validate(f);
    functions_ = std::move(fs);
  }

  // Only legal once no live function mentions x.
  void erase_variable(VariableId x) {
    for (const CostTable& f : functions_)
      if (f.contains(x)) throw std::logic_error("erasing a constrained variable");
    if (domains_.erase(x) == 0) throw std::invalid_argument("unknown variable");
  }

  bool has_variable(VariableId x) const { return domains_.count(x) != 0; }
  Value domain_size(VariableId x) const {
    auto it = domains_.find(x);
    if (it == domains_.end()) throw std::invalid_argument("unknown variable");
    return it->second;
  }
  const std::map<VariableId, Value>& domains() const { return domains_; }
  std::vector<VariableId> variable_ids() const {
    std::vector<VariableId> v;
    for (auto& [id, _] : domains_) v.push_back(id);
    return v;
  }
  const std::vector<CostTable>& functions() const { return functions_; }

 private:
  void validate(const CostTable& f) const {
    std::vector<VariableId> seen;
    for (std::size_t k = 0; k < f.scope().size(); ++k) {
      VariableId x = f.scope()[k];
      if (std::find(seen.begin(), seen.end(), x) != seen.end())
        throw std::invalid_argument("duplicate variable in scope");
      seen.push_back(x);
      if (domain_size(x) != f.dims()[k])
        throw std::invalid_argument("table dims disagree with variable domain");
    }
  }

  std::map<VariableId, Value> domains_;
  std::vector<CostTable> functions_;
  VariableId next_ = 0;
};

// Fix x = v everywhere: every function mentioning x is sliced (possibly down
// to an empty-scope constant, which stays live), then x is removed.
inline WcspInstance instantiate_instance(const WcspInstance& p, VariableId x, Value v) {
  if (!p.has_variable(x)) throw std::invalid_argument("unknown variable");
  if (v >= p.domain_size(x)) throw std::out_of_range("value out of domain");
  WcspInstance r = p;
  std::vector<CostTable> fs;
  fs.reserve(p.functions().size());
  for (const CostTable& f : p.functions())
    fs.push_back(f.contains(x) ? instantiate(f, x, v) : f);
  r.replace_functions(std::move(fs));
  r.erase_variable(x);
  return r;
}

struct ClusterResult {
  WcspInstance instance;
  VariableId meta;
};

// Merge the given variables into one meta-variable whose domain is the
// product of theirs (components ordered by ascending id, first component most
// significant in the meta value). Functions touching the cluster are
// re-indexed onto the meta-variable (appended last in their scope); those
// whose re-indexed scopes coincide as sets are summed into one function.
inline ClusterResult cluster(const WcspInstance& p, std::vector<VariableId> xs) {
  if (xs.empty()) throw std::invalid_argument("empty cluster");
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw std::invalid_argument("duplicate variable in cluster");
  std::uint64_t meta_dom = 1;
  for (VariableId x : xs) meta_dom *= p.domain_size(x);

  WcspInstance r = p;
  VariableId meta = r.add_variable(static_cast<Value>(meta_dom));

  auto in_cluster = [&](VariableId x) {
    return std::binary_search(xs.begin(), xs.end(), x);
  };

  std::vector<CostTable> out;
  std::vector<std::vector<VariableId>> out_keys;  // sorted scopes of merged entries
  for (const CostTable& f : p.functions()) {
    bool touched = false;
    for (VariableId x : f.scope())
      if (in_cluster(x)) { touched = true; break; }
    if (!touched) {
      out.push_back(f);
      out_keys.push_back({});
      continue;
    }
    std::vector<VariableId> scope;
    std::vector<Value> dims;
    for (std::size_t k = 0; k < f.scope().size(); ++k) {
      if (in_cluster(f.scope()[k])) continue;
      scope.push_back(f.scope()[k]);
      dims.push_back(f.dims()[k]);
    }
    scope.push_back(meta);
    dims.push_back(static_cast<Value>(meta_dom));
    CostTable g(scope, dims);
    std::vector<Value> asg(std::max(meta, f.scope().empty() ? 0u : *std::max_element(
                               f.scope().begin(), f.scope().end())) + 1, 0);
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      std::vector<Value> dg = g.digits_of(idx);
      for (std::size_t k = 0; k + 1 < scope.size(); ++k) asg[scope[k]] = dg[k];
      // Unpack the meta value into its clustered components.
      Value mv = dg.back();
      for (std::size_t k = xs.size(); k-- > 0;) {
        Value d = p.domain_size(xs[k]);
        asg[xs[k]] = mv % d;
        mv /= d;
      }
      g[idx] = f.evaluate(asg);
    }
    std::vector<VariableId> key = scope;
    std::sort(key.begin(), key.end());
    bool merged = false;
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (!out_keys[j].empty() && out_keys[j] == key) {
        out[j] = sum(out[j], g);
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back(std::move(g));
      out_keys.push_back(std::move(key));
    }
  }
  r.replace_functions(std::move(out));
  for (VariableId x : xs) r.erase_variable(x);
  return {std::move(r), meta};
}

struct EliminationRecord {
  VariableId var;
  std::vector<CostTable> bucket;  // functions that mentioned var
  CostTable g;                    // (sum of bucket) minimized over var
};

struct EliminationResult {
  WcspInstance instance;
  EliminationRecord record;
};

// Replace x and its bucket by g = (sum of bucket) minimized over x. An
// unconstrained variable leaves an empty-scope zero constant.
inline EliminationResult eliminate_bucket(const WcspInstance& p, VariableId x) {
  if (!p.has_variable(x)) throw std::invalid_argument("unknown variable");
  EliminationRecord rec;
  rec.var = x;
  std::vector<CostTable> rest;
  for (const CostTable& f : p.functions())
    (f.contains(x) ? rec.bucket : rest).push_back(f);
  if (rec.bucket.empty()) {
    rec.g = CostTable::constant(CostValue::zero());
  } else {
    CostTable s = rec.bucket[0];
    for (std::size_t j = 1; j < rec.bucket.size(); ++j) s = sum(s, rec.bucket[j]);
    rec.g = eliminate(s, x);
  }
  rest.push_back(rec.g);
  WcspInstance r = p;
  r.replace_functions(std::move(rest));
  r.erase_variable(x);
  return {std::move(r), std::move(rec)};
}

// Simultaneous elimination of a set of variables through one summed table.
inline WcspInstance eliminate_superbucket(const WcspInstance& p,
                                          std::vector<VariableId> ys) {
  if (ys.empty()) throw std::invalid_argument("empty super-bucket");
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(ys.begin(), ys.end()) != ys.end())
    throw std::invalid_argument("duplicate variable in super-bucket");
  for (VariableId y : ys)
    if (!p.has_variable(y)) throw std::invalid_argument("unknown variable");
  auto in_set = [&](VariableId x) {
    return std::binary_search(ys.begin(), ys.end(), x);
  };
  std::vector<CostTable> bucket, rest;
  for (const CostTable& f : p.functions()) {
    bool touched = false;
    for (VariableId x : f.scope())
      if (in_set(x)) { touched = true; break; }
    (touched ? bucket : rest).push_back(f);
  }
  CostTable g = CostTable::constant(CostValue::zero());
  if (!bucket.empty()) {
    g = bucket[0];
    for (std::size_t j = 1; j < bucket.size(); ++j) g = sum(g, bucket[j]);
    for (VariableId y : ys)
      if (g.contains(y)) g = eliminate(g, y);
  }
  rest.push_back(std::move(g));
  WcspInstance r = p;
  r.replace_functions(std::move(rest));
  for (VariableId y : ys) r.erase_variable(y);
  return r;
}

// Split a bucket into parts and eliminate x from each part separately.
// The sum of the results lower-bounds the exact bucket elimination entrywise.
inline std::vector<CostTable> eliminate_minibuckets(
    const std::vector<CostTable>& bucket, VariableId x,
    const std::vector<std::vector<std::size_t>>& partition) {
  std::vector<bool> used(bucket.size(), false);
  for (const auto& part : partition) {
    if (part.empty()) throw std::invalid_argument("empty mini-bucket");
    for (std::size_t j : part) {
      if (j >= bucket.size() || used[j])
        throw std::invalid_argument("partition is not a disjoint cover");
      used[j] = true;
    }
  }
  for (bool u : used)
    if (!u) throw std::invalid_argument("partition is not a disjoint cover");
  for (const CostTable& f : bucket)
    if (!f.contains(x))
      throw std::invalid_argument("bucket member does not mention the variable");
  std::vector<CostTable> out;
  for (const auto& part : partition) {
    CostTable s = bucket[part[0]];
    for (std::size_t j = 1; j < part.size(); ++j) s = sum(s, bucket[part[j]]);
    out.push_back(eliminate(s, x));
  }
  return out;
}

struct BucketEliminationResult {
  CostValue optimum;
  SolutionCount count;                    // optimal full assignments
  std::map<VariableId, Value> assignment; // attains the optimum when finite
};

// Exact two-phase bucket elimination over the given order: eliminate from the
// back, then reconstruct a minimizing assignment from the front. Counts of
// tied optima are carried alongside every derived table (counts multiply
// across independent eliminated blocks and add over tied values).
inline BucketEliminationResult bucket_elimination(const WcspInstance& p,
                                                  const std::vector<VariableId>& order) {
  {
    std::vector<VariableId> a = order, b = p.variable_ids();
    std::sort(a.begin(), a.end());
    if (a != b) throw std::invalid_argument("order is not a permutation of the variables");
  }
  struct Live {
    CostTable cost;
    std::vector<SolutionCount> counts;  // parallel to cost entries
  };
  std::vector<Live> live;
  for (const CostTable& f : p.functions())
    live.push_back({f, std::vector<SolutionCount>(f.size(), SolutionCount(1))});

  VariableId max_id = 0;
  for (VariableId x : order) max_id = std::max(max_id, x);
  std::vector<Value> asg(max_id + 1, 0);

  std::vector<EliminationRecord> recs(order.size());

  for (std::size_t i = order.size(); i-- > 0;) {
    VariableId x = order[i];
    Value dx = p.domain_size(x);
    std::vector<Live> bucket, rest;
    for (Live& t : live)
      (t.cost.contains(x) ? bucket : rest).push_back(std::move(t));

    EliminationRecord& rec = recs[i];
    rec.var = x;
    for (const Live& t : bucket) rec.bucket.push_back(t.cost);

    Live g;
    if (bucket.empty()) {
      g.cost = CostTable::constant(CostValue::zero());
      g.counts = {SolutionCount(dx)};  // every value of x extends optimally
    } else {
      CostTable s = bucket[0].cost;
      for (std::size_t j = 1; j < bucket.size(); ++j) s = sum(s, bucket[j].cost);
      g.cost = eliminate(s, x);
      g.counts.assign(g.cost.size(), SolutionCount(0));
      for (std::size_t t = 0; t < g.cost.size(); ++t) {
        if (g.cost[t].is_top()) continue;
        std::vector<Value> dg = g.cost.digits_of(t);
        for (std::size_t k = 0; k < g.cost.scope().size(); ++k)
          asg[g.cost.scope()[k]] = dg[k];
        for (Value a = 0; a < dx; ++a) {
          asg[x] = a;
          CostValue c = CostValue::zero();
          for (const Live& m : bucket) c += m.cost.evaluate(asg);
          if (c != g.cost[t]) continue;
          SolutionCount prod(1);
          for (const Live& m : bucket) prod *= m.counts[m.cost.index_under(asg)];
          g.counts[t] += prod;
        }
      }
    }
    rec.g = g.cost;
    rest.push_back(std::move(g));
    live = std::move(rest);
  }

  BucketEliminationResult out;
  out.optimum = CostValue::zero();
  out.count = SolutionCount(1);
  for (const Live& t : live) out.optimum += t.cost[0];
  if (out.optimum.is_top()) {
    out.count = SolutionCount(0);
  } else {
    for (const Live& t : live) out.count *= t.counts[0];
  }

  // Phase two: walk the order forward, re-deriving each variable's best value
  // from its recorded bucket under the assignments made so far.
  for (std::size_t i = 0; i < order.size(); ++i) {
    const EliminationRecord& rec = recs[i];
    Value dx = p.domain_size(rec.var);
    CostValue best = CostValue::top();
    Value bestv = 0;
    for (Value a = 0; a < dx; ++a) {
      asg[rec.var] = a;
      CostValue c = CostValue::zero();
      for (const CostTable& m : rec.bucket) c += m.evaluate(asg);
      if (c < best) {
        best = c;
        bestv = a;
      }
    }
    asg[rec.var] = bestv;
    out.assignment[rec.var] = bestv;
  }
  return out;
}

}  // namespace stillife
