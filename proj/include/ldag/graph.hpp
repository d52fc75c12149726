#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace ldag {

using NodeId = int;

// Names and outcome-space sizes of the variables. Node ids are positions.
class VariableTable {
 public:
  VariableTable() = default;
  VariableTable(std::vector<std::string> names, std::vector<int> cardinalities);

  // Variables named X1..Xd with the given cardinalities.
  static VariableTable anonymous(std::vector<int> cardinalities);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(NodeId j) const { return names_.at(static_cast<std::size_t>(j)); }
  int cardinality(NodeId j) const { return cards_.at(static_cast<std::size_t>(j)); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<int>& cardinalities() const noexcept { return cards_; }
  std::optional<NodeId> find(const std::string& name) const;

  bool operator==(const VariableTable&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> cards_;
};

struct Edge {
  NodeId from = 0;
  NodeId to = 0;

  auto operator<=>(const Edge&) const = default;
};

// Directed graph on nodes 0..d-1 without self loops or parallel edges.
// Acyclicity is checked by validate_acyclic(); Ldag enforces it.
class Dag {
 public:
  Dag() = default;
  explicit Dag(int d);
  Dag(int d, const std::vector<Edge>& edges);

  int node_count() const noexcept { return static_cast<int>(parents_.size()); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  bool has_edge(NodeId from, NodeId to) const;
  bool adjacent(NodeId a, NodeId b) const { return has_edge(a, b) || has_edge(b, a); }
  void add_edge(NodeId from, NodeId to);
  void remove_edge(NodeId from, NodeId to);

  // Sorted ascending.
  const std::vector<NodeId>& parents(NodeId j) const { return parents_.at(static_cast<std::size_t>(j)); }
  std::vector<NodeId> children(NodeId j) const;
  std::vector<Edge> edges() const;

  // Bitmask of the parent set; requires d <= 64.
  std::uint64_t parent_mask(NodeId j) const;

  bool operator==(const Dag&) const = default;

 private:
  void check_node(NodeId j) const;

  std::vector<std::vector<NodeId>> parents_;
  std::size_t edge_count_ = 0;
};

using Config = std::vector<int>;

// Context-specific independence label on edge (from, to). domain lists the
// other parents of `to` in ascending id order; each config assigns them.
struct Label {
  Edge edge;
  std::vector<NodeId> domain;
  std::set<Config> configs;

  bool operator==(const Label&) const = default;
};

// Partial assignment node -> value.
using Context = std::map<NodeId, int>;

class Ldag {
 public:
  Ldag() = default;
  // Validates acyclicity, label domains, arities and value ranges.
  Ldag(VariableTable vars, Dag dag, std::vector<Label> labels = {});

  // Unlabeled model over a Dag.
  static Ldag unlabeled(VariableTable vars, Dag dag) { return Ldag(std::move(vars), std::move(dag)); }

  const VariableTable& vars() const noexcept { return vars_; }
  const Dag& dag() const noexcept { return dag_; }
  int node_count() const noexcept { return dag_.node_count(); }
  const std::map<Edge, Label>& labels() const noexcept { return labels_; }
  const Label* label(Edge e) const;

  // L_(i,j): parents of j other than i, ascending.
  std::vector<NodeId> label_domain(Edge e) const;

  // Replaces the label on e (empty configs erases it).
  void set_label(Edge e, std::set<Config> configs);
  void clear_labels(NodeId child);
  Ldag without_labels() const;

  // Edge edits discard every label into the edited child since label
  // domains are defined by the child's full parent set.
  void add_edge(NodeId from, NodeId to);
  void remove_edge(NodeId from, NodeId to);

  bool operator==(const Ldag&) const = default;

 private:
  void validate_label(const Label& label) const;

  VariableTable vars_;
  Dag dag_;
  std::map<Edge, Label> labels_;
};

// Topological order (parents before children) or CycleError.
std::vector<NodeId> validate_acyclic(const Dag& dag);

// True when `to` is reachable from `from` along directed edges.
bool has_directed_path(const Dag& dag, NodeId from, NodeId to);

// Unordered adjacency pairs with first < second.
std::set<std::pair<NodeId, NodeId>> skeleton(const Dag& dag);

struct Immorality {
  NodeId left;   // smaller id
  NodeId center;
  NodeId right;  // larger id

  auto operator<=>(const Immorality&) const = default;
};

std::set<Immorality> immoralities(const Dag& dag);

void validate_context(const VariableTable& vars, const Context& ctx);

bool label_satisfied(const Label& label, const VariableTable& vars, const Context& ctx);

// Underlying dag with every satisfied edge removed.
Dag context_specific_graph(const Ldag& ldag, const Context& ctx);

}  // namespace ldag
