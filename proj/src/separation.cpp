#include "ldag/separation.hpp"

#include <array>
#include <deque>
#include <optional>

#include "ldag/error.hpp"
#include "ldag/partition.hpp"
#include "ldag/radix.hpp"

namespace ldag {

namespace {

void check_nodes(const NodeSet& set, int d) {
  for (NodeId v : set)
    if (v < 0 || v >= d) throw InvalidArgument("node id " + std::to_string(v) + " out of range");
}

void check_disjoint(std::initializer_list<const NodeSet*> sets) {
  NodeSet seen;
  for (const NodeSet* s : sets)
    for (NodeId v : *s)
      if (!seen.insert(v).second) throw InvalidArgument("separation query sets must be disjoint");
}

NodeSet keys(const Context& ctx) {
  NodeSet out;
  for (const auto& [node, value] : ctx) out.insert(node);
  return out;
}

void require_regular_maximal(const Ldag& ldag) {
  if (!is_regular(ldag).regular) throw InvariantViolation("csi_equivalent expects a regular LDAG");
  if (!is_maximal(ldag).maximal) throw InvariantViolation("csi_equivalent expects a maximal LDAG");
}

}  // namespace

bool d_separated(const Dag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& s) {
  const int d = dag.node_count();
  check_nodes(a, d);
  check_nodes(b, d);
  check_nodes(s, d);
  check_disjoint({&a, &b, &s});

  std::vector<std::vector<NodeId>> children(static_cast<std::size_t>(d));
  for (NodeId j = 0; j < d; ++j)
    for (NodeId p : dag.parents(j)) children[static_cast<std::size_t>(p)].push_back(j);

  std::vector<char> observed(static_cast<std::size_t>(d), 0);
  for (NodeId v : s) observed[static_cast<std::size_t>(v)] = 1;

  // Nodes with an observed descendant (or observed themselves) open colliders.
  std::vector<char> opens_collider(static_cast<std::size_t>(d), 0);
  std::vector<NodeId> stack(s.begin(), s.end());
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    if (opens_collider[static_cast<std::size_t>(v)]) continue;
    opens_collider[static_cast<std::size_t>(v)] = 1;
    for (NodeId p : dag.parents(v)) stack.push_back(p);
  }

  // Direction: 0 = arrived from a child (moving up), 1 = arrived from a parent.
  std::vector<std::array<char, 2>> visited(static_cast<std::size_t>(d), {0, 0});
  std::deque<std::pair<NodeId, int>> queue;
  for (NodeId v : a) queue.emplace_back(v, 0);
  while (!queue.empty()) {
    const auto [v, dir] = queue.front();
    queue.pop_front();
    auto& seen = visited[static_cast<std::size_t>(v)][static_cast<std::size_t>(dir)];
    if (seen) continue;
    seen = 1;
    const bool is_observed = observed[static_cast<std::size_t>(v)] != 0;
    if (!is_observed && b.count(v)) return false;
    if (dir == 0) {
      if (is_observed) continue;
      for (NodeId p : dag.parents(v)) queue.emplace_back(p, 0);
      for (NodeId c : children[static_cast<std::size_t>(v)]) queue.emplace_back(c, 1);
    } else {
      if (!is_observed)
        for (NodeId c : children[static_cast<std::size_t>(v)]) queue.emplace_back(c, 1);
      if (opens_collider[static_cast<std::size_t>(v)])
        for (NodeId p : dag.parents(v)) queue.emplace_back(p, 0);
    }
  }
  return true;
}

bool csi_separated(const Ldag& ldag, const SeparationQuery& query) {
  validate_context(ldag.vars(), query.ctx);
  const NodeSet c = keys(query.ctx);
  check_disjoint({&query.a, &query.b, &query.s, &c});
  NodeSet separator = query.s;
  separator.insert(c.begin(), c.end());
  return d_separated(context_specific_graph(ldag, query.ctx), query.a, query.b, separator);
}

bool ci_by_cases(const Ldag& ldag, const NodeSet& a, const NodeSet& b, const NodeSet& s, const NodeSet& c,
                 std::size_t max_contexts) {
  check_nodes(c, ldag.node_count());
  check_disjoint({&a, &b, &s, &c});
  const std::vector<NodeId> nodes(c.begin(), c.end());
  std::vector<int> cards;
  for (NodeId v : nodes) cards.push_back(ldag.vars().cardinality(v));
  if (checked_product(cards, max_contexts) > max_contexts)
    throw ContextTooLarge("reasoning by cases needs more than " + std::to_string(max_contexts) + " contexts");
  const MixedRadix radix(cards);
  for (std::size_t index = 0; index < radix.size(); ++index) {
    SeparationQuery query{a, b, s, {}};
    for (std::size_t k = 0; k < nodes.size(); ++k) query.ctx[nodes[k]] = radix.digit(index, k);
    if (!csi_separated(ldag, query)) return false;
  }
  return true;
}

bool markov_equivalent(const Dag& g1, const Dag& g2) {
  if (g1.node_count() != g2.node_count()) return false;
  return skeleton(g1) == skeleton(g2) && immoralities(g1) == immoralities(g2);
}

bool csi_equivalent(const Ldag& l1, const Ldag& l2, std::size_t max_contexts) {
  if (!(l1.vars() == l2.vars())) throw InvalidArgument("csi_equivalent needs identical variable tables");
  require_regular_maximal(l1);
  require_regular_maximal(l2);

  NodeSet relevant;
  for (const Ldag* l : {&l1, &l2})
    for (const auto& [edge, label] : l->labels()) relevant.insert(label.domain.begin(), label.domain.end());
  const std::vector<NodeId> nodes(relevant.begin(), relevant.end());
  std::vector<int> cards;
  for (NodeId v : nodes) cards.push_back(l1.vars().cardinality(v));
  if (checked_product(cards, max_contexts) > max_contexts)
    throw ContextTooLarge("csi_equivalent needs more than " + std::to_string(max_contexts) + " contexts");

  // Contexts satisfying no label in either model all reduce to the
  // underlying graphs, which are compared at most once.
  std::optional<bool> underlying_equivalent;
  const MixedRadix radix(cards);
  Context ctx;
  for (std::size_t index = 0; index < radix.size(); ++index) {
    for (std::size_t k = 0; k < nodes.size(); ++k) ctx[nodes[k]] = radix.digit(index, k);
    const Dag g1 = context_specific_graph(l1, ctx);
    const Dag g2 = context_specific_graph(l2, ctx);
    const bool untouched = g1.edge_count() == l1.dag().edge_count() && g2.edge_count() == l2.dag().edge_count();
    if (untouched) {
      if (!underlying_equivalent) underlying_equivalent = markov_equivalent(g1, g2);
      if (!*underlying_equivalent) return false;
      continue;
    }
    if (!markov_equivalent(g1, g2)) return false;
  }
  return true;
}

}  // namespace ldag
