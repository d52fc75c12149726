#include "ldag/graph.hpp"

#include <algorithm>
#include <queue>

#include "ldag/error.hpp"
#include "ldag/radix.hpp"

namespace ldag {

VariableTable::VariableTable(std::vector<std::string> names, std::vector<int> cardinalities)
    : names_(std::move(names)), cards_(std::move(cardinalities)) {
  if (names_.size() != cards_.size())
    throw InvalidArgument("variable names and cardinalities differ in length");
  std::set<std::string> seen;
  for (std::size_t j = 0; j < names_.size(); ++j) {
    if (names_[j].empty()) throw InvalidArgument("variable name must be non-empty");
    if (!seen.insert(names_[j]).second) throw InvalidArgument("duplicate variable name '" + names_[j] + "'");
    if (cards_[j] < 2)
      throw InvalidArgument("variable '" + names_[j] + "' needs cardinality >= 2, got " + std::to_string(cards_[j]));
  }
}

VariableTable VariableTable::anonymous(std::vector<int> cardinalities) {
  std::vector<std::string> names;
  names.reserve(cardinalities.size());
  for (std::size_t j = 0; j < cardinalities.size(); ++j) names.push_back("X" + std::to_string(j + 1));
  return VariableTable(std::move(names), std::move(cardinalities));
}

std::optional<NodeId> VariableTable::find(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - names_.begin());
}

// ---------------------------------------------------------------- Dag

Dag::Dag(int d) {
  if (d < 0) throw InvalidArgument("node count must be non-negative");
  parents_.resize(static_cast<std::size_t>(d));
}

Dag::Dag(int d, const std::vector<Edge>& edges) : Dag(d) {
  for (const Edge& e : edges) add_edge(e.from, e.to);
}

void Dag::check_node(NodeId j) const {
  if (j < 0 || j >= node_count()) throw InvalidArgument("node id " + std::to_string(j) + " out of range");
}

bool Dag::has_edge(NodeId from, NodeId to) const {
  check_node(from);
  check_node(to);
  const auto& ps = parents_[static_cast<std::size_t>(to)];
  return std::binary_search(ps.begin(), ps.end(), from);
}

void Dag::add_edge(NodeId from, NodeId to) {
  check_node(from);
  check_node(to);
  if (from == to) throw InvalidArgument("self loop on node " + std::to_string(from));
  auto& ps = parents_[static_cast<std::size_t>(to)];
  const auto it = std::lower_bound(ps.begin(), ps.end(), from);
  if (it != ps.end() && *it == from)
    throw InvalidArgument("duplicate edge " + std::to_string(from) + "->" + std::to_string(to));
  ps.insert(it, from);
  ++edge_count_;
}

void Dag::remove_edge(NodeId from, NodeId to) {
  check_node(from);
  check_node(to);
  auto& ps = parents_[static_cast<std::size_t>(to)];
  const auto it = std::lower_bound(ps.begin(), ps.end(), from);
  if (it == ps.end() || *it != from)
    throw InvalidArgument("no edge " + std::to_string(from) + "->" + std::to_string(to));
  ps.erase(it);
  --edge_count_;
}

std::vector<NodeId> Dag::children(NodeId j) const {
  check_node(j);
  std::vector<NodeId> out;
  for (NodeId c = 0; c < node_count(); ++c)
    if (std::binary_search(parents_[static_cast<std::size_t>(c)].begin(),
                           parents_[static_cast<std::size_t>(c)].end(), j))
      out.push_back(c);
  return out;
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId j = 0; j < node_count(); ++j)
    for (NodeId p : parents_[static_cast<std::size_t>(j)]) out.push_back({p, j});
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Dag::parent_mask(NodeId j) const {
  if (node_count() > 64) throw InvalidArgument("parent masks need at most 64 nodes");
  std::uint64_t mask = 0;
  for (NodeId p : parents(j)) mask |= std::uint64_t{1} << p;
  return mask;
}

// ---------------------------------------------------------------- Ldag

Ldag::Ldag(VariableTable vars, Dag dag, std::vector<Label> labels) : vars_(std::move(vars)), dag_(std::move(dag)) {
  if (vars_.size() != dag_.node_count())
    throw InvariantViolation("variable table has " + std::to_string(vars_.size()) + " entries but graph has " +
                             std::to_string(dag_.node_count()) + " nodes");
  validate_acyclic(dag_);
  for (Label& label : labels) {
    if (label.domain.empty() && dag_.node_count() > 0 && label.edge.to >= 0 && label.edge.to < dag_.node_count() &&
        label.edge.from >= 0 && label.edge.from < dag_.node_count() && dag_.has_edge(label.edge.from, label.edge.to))
      label.domain = label_domain(label.edge);
    validate_label(label);
    if (labels_.count(label.edge)) throw InvariantViolation("two labels on the same edge");
    if (!label.configs.empty()) labels_.emplace(label.edge, std::move(label));
  }
}

const Label* Ldag::label(Edge e) const {
  const auto it = labels_.find(e);
  return it == labels_.end() ? nullptr : &it->second;
}

std::vector<NodeId> Ldag::label_domain(Edge e) const {
  if (!dag_.has_edge(e.from, e.to))
    throw InvariantViolation("no edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
  std::vector<NodeId> domain;
  for (NodeId p : dag_.parents(e.to))
    if (p != e.from) domain.push_back(p);
  return domain;
}

void Ldag::validate_label(const Label& label) const {
  const Edge e = label.edge;
  if (e.from < 0 || e.from >= node_count() || e.to < 0 || e.to >= node_count() || !dag_.has_edge(e.from, e.to))
    throw InvariantViolation("label on missing edge " + std::to_string(e.from) + "->" + std::to_string(e.to));
  if (dag_.parents(e.to).size() < 2)
    throw InvariantViolation("label on edge into node " + std::to_string(e.to) + " which has a single parent");
  if (label.domain != label_domain(e)) throw InvariantViolation("label domain does not match the parent set");
  for (const Config& c : label.configs) {
    if (c.size() != label.domain.size())
      throw InvariantViolation("label config arity " + std::to_string(c.size()) + " != domain size " +
                               std::to_string(label.domain.size()));
    for (std::size_t k = 0; k < c.size(); ++k)
      if (c[k] < 0 || c[k] >= vars_.cardinality(label.domain[k]))
        throw InvariantViolation("label config value out of range for variable " + vars_.name(label.domain[k]));
  }
}

void Ldag::set_label(Edge e, std::set<Config> configs) {
  Label label{e, label_domain(e), std::move(configs)};
  validate_label(label);
  if (label.configs.empty())
    labels_.erase(e);
  else
    labels_[e] = std::move(label);
}

void Ldag::clear_labels(NodeId child) {
  for (auto it = labels_.begin(); it != labels_.end();) {
    if (it->first.to == child)
      it = labels_.erase(it);
    else
      ++it;
  }
}

Ldag Ldag::without_labels() const {
  Ldag copy = *this;
  copy.labels_.clear();
  return copy;
}

void Ldag::add_edge(NodeId from, NodeId to) {
  Dag next = dag_;
  next.add_edge(from, to);
  validate_acyclic(next);
  dag_ = std::move(next);
  clear_labels(to);
}

void Ldag::remove_edge(NodeId from, NodeId to) {
  dag_.remove_edge(from, to);
  clear_labels(to);
}

// ---------------------------------------------------------------- algorithms

std::vector<NodeId> validate_acyclic(const Dag& dag) {
  const int d = dag.node_count();
  std::vector<std::vector<NodeId>> children(static_cast<std::size_t>(d));
  std::vector<int> indegree(static_cast<std::size_t>(d), 0);
  for (NodeId j = 0; j < d; ++j) {
    indegree[static_cast<std::size_t>(j)] = static_cast<int>(dag.parents(j).size());
    for (NodeId p : dag.parents(j)) children[static_cast<std::size_t>(p)].push_back(j);
  }
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId j = 0; j < d; ++j)
    if (indegree[static_cast<std::size_t>(j)] == 0) ready.push(j);
  std::vector<NodeId> order;
  order.reserve(static_cast<std::size_t>(d));
  while (!ready.empty()) {
    const NodeId v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeId c : children[static_cast<std::size_t>(v)])
      if (--indegree[static_cast<std::size_t>(c)] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) == d) return order;

  // Extract one cycle by depth-first search among the unsorted nodes.
  enum class Mark { White, Grey, Black };
  std::vector<Mark> mark(static_cast<std::size_t>(d), Mark::White);
  std::vector<NodeId> stack;
  std::vector<NodeId> cycle;
  auto visit = [&](auto&& self, NodeId v) -> bool {
    mark[static_cast<std::size_t>(v)] = Mark::Grey;
    stack.push_back(v);
    for (NodeId c : children[static_cast<std::size_t>(v)]) {
      if (mark[static_cast<std::size_t>(c)] == Mark::Grey) {
        const auto start = std::find(stack.begin(), stack.end(), c);
        cycle.assign(start, stack.end());
        cycle.push_back(c);
        return true;
      }
      if (mark[static_cast<std::size_t>(c)] == Mark::White && self(self, c)) return true;
    }
    stack.pop_back();
    mark[static_cast<std::size_t>(v)] = Mark::Black;
    return false;
  };
  for (NodeId v = 0; v < d; ++v)
    if (mark[static_cast<std::size_t>(v)] == Mark::White && visit(visit, v)) break;
  throw CycleError(std::move(cycle));
}

bool has_directed_path(const Dag& dag, NodeId from, NodeId to) {
  const int d = dag.node_count();
  std::vector<std::vector<NodeId>> children(static_cast<std::size_t>(d));
  for (NodeId j = 0; j < d; ++j)
    for (NodeId p : dag.parents(j)) children[static_cast<std::size_t>(p)].push_back(j);
  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  std::vector<NodeId> frontier{from};
  seen[static_cast<std::size_t>(from)] = 1;
  while (!frontier.empty()) {
    const NodeId v = frontier.back();
    frontier.pop_back();
    if (v == to) return true;
    for (NodeId c : children[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(c)]) {
        seen[static_cast<std::size_t>(c)] = 1;
        frontier.push_back(c);
      }
  }
  return false;
}

std::set<std::pair<NodeId, NodeId>> skeleton(const Dag& dag) {
  std::set<std::pair<NodeId, NodeId>> out;
  for (const Edge& e : dag.edges()) out.emplace(std::min(e.from, e.to), std::max(e.from, e.to));
  return out;
}

std::set<Immorality> immoralities(const Dag& dag) {
  std::set<Immorality> out;
  for (NodeId j = 0; j < dag.node_count(); ++j) {
    const auto& ps = dag.parents(j);
    for (std::size_t a = 0; a < ps.size(); ++a)
      for (std::size_t b = a + 1; b < ps.size(); ++b)
        if (!dag.adjacent(ps[a], ps[b])) out.insert({ps[a], j, ps[b]});
  }
  return out;
}

void validate_context(const VariableTable& vars, const Context& ctx) {
  for (const auto& [node, value] : ctx) {
    if (node < 0 || node >= vars.size()) throw InvalidArgument("context node " + std::to_string(node) + " out of range");
    if (value < 0 || value >= vars.cardinality(node))
      throw ValueOutOfRange("context value " + std::to_string(value) + " out of range for " + vars.name(node));
  }
}

bool label_satisfied(const Label& label, const VariableTable& vars, const Context& ctx) {
  const auto& domain = label.domain;
  std::vector<std::size_t> free_positions;
  std::vector<int> free_cards;
  Config config(domain.size(), 0);
  bool intersects = false;
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto it = ctx.find(domain[k]);
    if (it != ctx.end()) {
      config[k] = it->second;
      intersects = true;
    } else {
      free_positions.push_back(k);
      free_cards.push_back(vars.cardinality(domain[k]));
    }
  }
  if (!intersects) return false;
  const std::size_t slice = checked_product(free_cards, label.configs.size());
  if (slice > label.configs.size()) return false;
  const MixedRadix radix(free_cards);
  for (std::size_t index = 0; index < radix.size(); ++index) {
    for (std::size_t f = 0; f < free_positions.size(); ++f) config[free_positions[f]] = radix.digit(index, f);
    if (!label.configs.count(config)) return false;
  }
  return true;
}

Dag context_specific_graph(const Ldag& ldag, const Context& ctx) {
  Dag out = ldag.dag();
  for (const auto& [edge, label] : ldag.labels())
    if (label_satisfied(label, ldag.vars(), ctx)) out.remove_edge(edge.from, edge.to);
  return out;
}

}  // namespace ldag
