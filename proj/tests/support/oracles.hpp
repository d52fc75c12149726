#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the basic graph containers.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/random.hpp"
#include "ldag/scoring.hpp"

namespace ldag::testing {

// ---------------------------------------------------------------- random inputs

inline Dag random_dag(int d, double edge_probability, Rng& rng) {
  std::vector<NodeId> order(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) order[static_cast<std::size_t>(i)] = i;
  shuffle(std::span<NodeId>(order), rng);
  Dag dag(d);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (uniform01(rng) < edge_probability) dag.add_edge(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
  return dag;
}

inline std::vector<int> random_cards(int d, int max_card, Rng& rng) {
  std::vector<int> cards;
  for (int j = 0; j < d; ++j) cards.push_back(2 + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(max_card - 1))));
  return cards;
}

// Every label receives each of its configurations independently.
inline Ldag random_labels(const VariableTable& vars, const Dag& dag, double config_probability, Rng& rng) {
  Ldag out(vars, dag);
  for (const Edge& e : dag.edges()) {
    const std::vector<NodeId> domain = out.label_domain(e);
    if (domain.empty()) continue;
    std::vector<int> cards;
    for (NodeId v : domain) cards.push_back(vars.cardinality(v));
    std::set<Config> configs;
    std::function<void(std::size_t, Config&)> walk = [&](std::size_t k, Config& c) {
      if (k == cards.size()) {
        if (uniform01(rng) < config_probability) configs.insert(c);
        return;
      }
      for (int v = 0; v < cards[k]; ++v) {
        c[k] = v;
        walk(k + 1, c);
      }
    };
    Config c(cards.size(), 0);
    walk(0, c);
    out.set_label(e, std::move(configs));
  }
  return out;
}

inline Dataset random_dataset(const VariableTable& vars, std::size_t n, Rng& rng) {
  Dataset data(vars);
  std::vector<int> row(static_cast<std::size_t>(vars.size()));
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId j = 0; j < vars.size(); ++j)
      row[static_cast<std::size_t>(j)] = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(vars.cardinality(j))));
    data.append(row);
  }
  return data;
}

// ---------------------------------------------------------------- partitions

// Class id per full parent configuration (parents ascending, last parent
// fastest), computed by repeated relabelling.
inline std::vector<int> naive_classes(const Ldag& ldag, NodeId j) {
  const std::vector<NodeId>& parents = ldag.dag().parents(j);
  std::vector<Config> configs(1);
  for (NodeId p : parents) {
    std::vector<Config> next;
    for (const Config& c : configs)
      for (int v = 0; v < ldag.vars().cardinality(p); ++v) {
        Config d = c;
        d.push_back(v);
        next.push_back(d);
      }
    configs = std::move(next);
  }
  std::vector<int> cls(configs.size());
  for (std::size_t i = 0; i < cls.size(); ++i) cls[i] = static_cast<int>(i);
  for (const auto& [edge, label] : ldag.labels()) {
    if (edge.to != j) continue;
    const auto k = static_cast<std::size_t>(std::find(parents.begin(), parents.end(), edge.from) - parents.begin());
    for (const Config& lc : label.configs) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < configs.size(); ++i) {
        Config rest = configs[i];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        if (rest == lc) members.push_back(i);
      }
      for (std::size_t a = 1; a < members.size(); ++a) {
        const int from = cls[members[a]];
        const int to = cls[members[0]];
        for (int& c : cls)
          if (c == from) c = to;
      }
    }
  }
  // Renumber by first occurrence.
  std::map<int, int> renumber;
  for (int& c : cls) {
    const auto it = renumber.emplace(c, static_cast<int>(renumber.size())).first;
    c = it->second;
  }
  return cls;
}

inline std::size_t naive_class_count(const Ldag& ldag, NodeId j) {
  const auto cls = naive_classes(ldag, j);
  return cls.empty() ? 0 : static_cast<std::size_t>(*std::max_element(cls.begin(), cls.end()) + 1);
}

inline std::size_t parent_config_index(const Ldag& ldag, NodeId j, const std::vector<int>& row) {
  std::size_t index = 0;
  for (NodeId p : ldag.dag().parents(j))
    index = index * static_cast<std::size_t>(ldag.vars().cardinality(p)) + static_cast<std::size_t>(row[static_cast<std::size_t>(p)]);
  return index;
}

// ---------------------------------------------------------------- scores

// log p(data | G_L) as a product of one-step-ahead predictive probabilities.
inline double prequential_log_evidence(const Dataset& data, const Ldag& ldag, double ess) {
  double total = 0.0;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const auto cls = naive_classes(ldag, j);
    const int classes = cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
    std::vector<std::size_t> sizes(static_cast<std::size_t>(classes), 0);
    for (int c : cls) ++sizes[static_cast<std::size_t>(c)];
    const int r = ldag.vars().cardinality(j);
    const double q = static_cast<double>(cls.size());
    std::vector<std::vector<double>> seen(static_cast<std::size_t>(classes), std::vector<double>(static_cast<std::size_t>(r), 0.0));
    for (std::size_t i = 0; i < data.row_count(); ++i) {
      const std::vector<int> row = data.row(i);
      const auto l = static_cast<std::size_t>(cls[parent_config_index(ldag, j, row)]);
      const double alpha = ess / (r * q) * static_cast<double>(sizes[l]);
      double n_l = 0.0;
      for (double v : seen[l]) n_l += v;
      const auto x = static_cast<std::size_t>(row[static_cast<std::size_t>(j)]);
      total += std::log((seen[l][x] + alpha) / (n_l + r * alpha));
      seen[l][x] += 1.0;
    }
  }
  return total;
}

// Standard Dirichlet-multinomial DAG score with alpha = N / (r q) per cell.
inline double bdeu_log_score(const Dataset& data, const Dag& dag, double ess) {
  double total = 0.0;
  for (NodeId j = 0; j < dag.node_count(); ++j) {
    const int r = data.vars().cardinality(j);
    std::size_t q = 1;
    for (NodeId p : dag.parents(j)) q *= static_cast<std::size_t>(data.vars().cardinality(p));
    std::map<std::vector<int>, std::vector<long long>> counts;
    for (std::size_t i = 0; i < data.row_count(); ++i) {
      std::vector<int> key;
      for (NodeId p : dag.parents(j)) key.push_back(data.at(i, p));
      auto& c = counts[key];
      c.resize(static_cast<std::size_t>(r), 0);
      ++c[static_cast<std::size_t>(data.at(i, j))];
    }
    const double a = ess / (r * static_cast<double>(q));
    for (const auto& [key, c] : counts) {
      long long n = 0;
      for (long long v : c) {
        n += v;
        total += std::lgamma(v + a) - std::lgamma(a);
      }
      total += std::lgamma(r * a) - std::lgamma(n + r * a);
    }
  }
  return total;
}

// ---------------------------------------------------------------- separation

// d-separation via the moralized ancestral graph.
inline bool moral_d_separated(const Dag& dag, const std::set<NodeId>& a, const std::set<NodeId>& b,
                              const std::set<NodeId>& s) {
  const int d = dag.node_count();
  std::vector<char> keep(static_cast<std::size_t>(d), 0);
  std::vector<NodeId> stack;
  for (const auto* set : {&a, &b, &s}) stack.insert(stack.end(), set->begin(), set->end());
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (keep[static_cast<std::size_t>(v)]) continue;
    keep[static_cast<std::size_t>(v)] = 1;
    for (NodeId p : dag.parents(v)) stack.push_back(p);
  }
  std::vector<std::set<NodeId>> adj(static_cast<std::size_t>(d));
  const auto link = [&](NodeId x, NodeId y) {
    adj[static_cast<std::size_t>(x)].insert(y);
    adj[static_cast<std::size_t>(y)].insert(x);
  };
  for (NodeId v = 0; v < d; ++v) {
    if (!keep[static_cast<std::size_t>(v)]) continue;
    const auto& ps = dag.parents(v);
    for (std::size_t x = 0; x < ps.size(); ++x) {
      link(ps[x], v);
      for (std::size_t y = x + 1; y < ps.size(); ++y) link(ps[x], ps[y]);
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  stack.assign(a.begin(), a.end());
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (seen[static_cast<std::size_t>(v)] || s.count(v)) continue;
    if (b.count(v)) return false;
    seen[static_cast<std::size_t>(v)] = 1;
    for (NodeId w : adj[static_cast<std::size_t>(v)])
      if (keep[static_cast<std::size_t>(w)]) stack.push_back(w);
  }
  return true;
}

// Every DAG on d labelled nodes.
inline std::vector<Dag> all_dags(int d) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < d; ++i)
    for (NodeId j = i + 1; j < d; ++j) pairs.emplace_back(i, j);
  std::vector<Dag> out;
  std::size_t total = 1;
  for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Dag dag(d);
    std::size_t c = code;
    for (const auto& [i, j] : pairs) {
      const std::size_t state = c % 3;
      c /= 3;
      if (state == 1) dag.add_edge(i, j);
      if (state == 2) dag.add_edge(j, i);
    }
    // Acyclic iff a topological sort consumes every node.
    std::vector<int> indegree(static_cast<std::size_t>(d), 0);
    for (NodeId v = 0; v < d; ++v) indegree[static_cast<std::size_t>(v)] = static_cast<int>(dag.parents(v).size());
    std::vector<NodeId> ready;
    for (NodeId v = 0; v < d; ++v)
      if (indegree[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
    int removed = 0;
    while (!ready.empty()) {
      const NodeId v = ready.back();
      ready.pop_back();
      ++removed;
      for (NodeId w : dag.children(v))
        if (--indegree[static_cast<std::size_t>(w)] == 0) ready.push_back(w);
    }
    if (removed == d) out.push_back(std::move(dag));
  }
  return out;
}

// All d-separation statements a _|_ b | S over singletons a < b.
inline std::vector<char> independence_signature(const Dag& dag) {
  const int d = dag.node_count();
  std::vector<char> out;
  for (NodeId a = 0; a < d; ++a)
    for (NodeId b = a + 1; b < d; ++b)
      for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
        if (mask & ((1u << a) | (1u << b))) continue;
        std::set<NodeId> s;
        for (NodeId v = 0; v < d; ++v)
          if (mask & (1u << v)) s.insert(v);
        out.push_back(moral_d_separated(dag, {a}, {b}, s) ? 1 : 0);
      }
  return out;
}

}  // namespace ldag::testing
