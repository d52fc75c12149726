#include "ldag/partition.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "ldag/error.hpp"

namespace ldag {

namespace {

std::vector<int> parent_cards(const Ldag& ldag, NodeId j) {
  std::vector<int> cards;
  for (NodeId p : ldag.dag().parents(j)) cards.push_back(ldag.vars().cardinality(p));
  return cards;
}

std::vector<int> without(const std::vector<int>& values, std::size_t k) {
  std::vector<int> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    if (i != k) out.push_back(values[i]);
  return out;
}

// Renumbers arbitrary class ids so classes are ordered by smallest member.
ParentPartition canonical_partition(NodeId node, MixedRadix radix, const std::vector<std::size_t>& raw) {
  ParentPartition out;
  out.node = node;
  out.radix = std::move(radix);
  out.class_of.assign(raw.size(), -1);
  std::vector<int> relabel(raw.size(), -1);
  for (std::size_t c = 0; c < raw.size(); ++c) {
    int& id = relabel[raw[c]];
    if (id < 0) {
      id = static_cast<int>(out.classes.size());
      out.classes.emplace_back();
    }
    out.class_of[c] = id;
    out.classes[static_cast<std::size_t>(id)].push_back(c);
  }
  return out;
}

bool slice_in_one_class(const MixedRadix& radix, const std::vector<int>& class_of, std::size_t k,
                        std::size_t domain_index) {
  const int first = class_of[radix.insert(domain_index, k, 0)];
  for (int v = 1; v < radix.cardinalities()[k]; ++v)
    if (class_of[radix.insert(domain_index, k, v)] != first) return false;
  return true;
}

}  // namespace

LocalStructure::LocalStructure(std::vector<int> parent_cards) : radix_(std::move(parent_cards)) {
  labels_.resize(radix_.arity());
  sizes_.assign(radix_.arity(), 0);
  for (std::size_t k = 0; k < radix_.arity(); ++k) labels_[k].assign(domain_size(k), 0);
}

void LocalStructure::insert(std::size_t k, std::size_t domain_index) {
  if (parent_count() < 2) throw InvariantViolation("labels need at least two parents");
  char& slot = labels_.at(k).at(domain_index);
  if (!slot) {
    slot = 1;
    ++sizes_[k];
  }
}

bool LocalStructure::empty() const noexcept {
  return std::all_of(sizes_.begin(), sizes_.end(), [](std::size_t s) { return s == 0; });
}

ParentPartition partition_of(const LocalStructure& local, NodeId node) {
  const std::size_t q = local.config_count();
  UnionFind sets(q);
  for (std::size_t k = 0; k < local.parent_count(); ++k) {
    if (local.label_size(k) == 0) continue;
    for (std::size_t d = 0; d < local.domain_size(k); ++d) {
      if (!local.contains(k, d)) continue;
      const std::size_t anchor = local.radix().insert(d, k, 0);
      local.for_each_in_slice(k, d, [&](std::size_t c) { sets.unite(anchor, c); });
    }
  }
  std::vector<std::size_t> raw(q);
  for (std::size_t c = 0; c < q; ++c) raw[c] = sets.find(c);
  return canonical_partition(node, local.radix(), raw);
}

std::vector<std::pair<std::size_t, std::size_t>> maximality_witnesses(const LocalStructure& local,
                                                                      const ParentPartition& partition) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (local.parent_count() < 2) return out;
  for (std::size_t k = 0; k < local.parent_count(); ++k)
    for (std::size_t d = 0; d < local.domain_size(k); ++d)
      if (!local.contains(k, d) && slice_in_one_class(local.radix(), partition.class_of, k, d)) out.emplace_back(k, d);
  return out;
}

void close_labels(LocalStructure& local) {
  // Witnesses only depend on the partition, which additions never change,
  // so a single sweep reaches the fixed point; the loop re-checks anyway.
  for (;;) {
    const auto witnesses = maximality_witnesses(local, partition_of(local));
    if (witnesses.empty()) return;
    for (const auto& [k, d] : witnesses) local.insert(k, d);
  }
}

LocalStructure local_structure(const Ldag& ldag, NodeId j) {
  const auto& parents = ldag.dag().parents(j);
  const std::vector<int> cards = parent_cards(ldag, j);
  LocalStructure local(cards);
  for (std::size_t k = 0; k < parents.size(); ++k) {
    const Label* label = ldag.label({parents[k], j});
    if (!label) continue;
    const MixedRadix domain(without(cards, k));
    for (const Config& c : label->configs) local.insert(k, domain.encode(c));
  }
  return local;
}

void assign_local_structure(Ldag& ldag, NodeId j, const LocalStructure& local) {
  const auto& parents = ldag.dag().parents(j);
  if (local.parent_count() != parents.size()) throw InvalidArgument("local structure does not match parent set");
  ldag.clear_labels(j);
  if (parents.size() < 2) return;
  const std::vector<int> cards = parent_cards(ldag, j);
  for (std::size_t k = 0; k < parents.size(); ++k) {
    if (local.label_size(k) == 0) continue;
    const MixedRadix domain(without(cards, k));
    std::set<Config> configs;
    for (std::size_t d = 0; d < local.domain_size(k); ++d)
      if (local.contains(k, d)) configs.insert(domain.decode(d));
    ldag.set_label({parents[k], j}, std::move(configs));
  }
}

ParentPartition build_partition(const Ldag& ldag, NodeId j) { return partition_of(local_structure(ldag, j), j); }

DimensionReport dimensions(const Ldag& ldag) {
  DimensionReport report;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const long long r = ldag.vars().cardinality(j);
    const ParentPartition partition = build_partition(ldag, j);
    const long long dag_dim = (r - 1) * static_cast<long long>(partition.radix.size());
    const long long ldag_dim = (r - 1) * static_cast<long long>(partition.class_count());
    report.dag_dim.push_back(dag_dim);
    report.ldag_dim.push_back(ldag_dim);
    report.total_dag_dim += dag_dim;
    report.total_ldag_dim += ldag_dim;
  }
  return report;
}

MaximalityReport is_maximal(const Ldag& ldag) {
  MaximalityReport report;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const auto& parents = ldag.dag().parents(j);
    if (parents.size() < 2) continue;
    const LocalStructure local = local_structure(ldag, j);
    const ParentPartition partition = partition_of(local, j);
    const std::vector<int> cards = parent_cards(ldag, j);
    for (const auto& [k, d] : maximality_witnesses(local, partition))
      report.witnesses.push_back({{parents[k], j}, MixedRadix(without(cards, k)).decode(d)});
  }
  std::sort(report.witnesses.begin(), report.witnesses.end(),
            [](const MaximalityWitness& a, const MaximalityWitness& b) {
              return std::tie(a.edge, a.config) < std::tie(b.edge, b.config);
            });
  report.maximal = report.witnesses.empty();
  return report;
}

Ldag make_maximal(const Ldag& ldag) {
  Ldag out = ldag;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    if (ldag.dag().parents(j).size() < 2) continue;
    LocalStructure local = local_structure(ldag, j);
    close_labels(local);
    assign_local_structure(out, j, local);
  }
  return out;
}

RegularityReport is_regular(const Ldag& ldag) {
  RegularityReport report;
  for (const auto& [edge, label] : ldag.labels()) {
    std::vector<int> cards;
    for (NodeId p : label.domain) cards.push_back(ldag.vars().cardinality(p));
    if (label.configs.size() == MixedRadix(cards).size()) report.offending.push_back(edge);
  }
  report.regular = report.offending.empty();
  return report;
}

Ldag regularize(const Ldag& ldag) {
  Ldag out = make_maximal(ldag);
  for (NodeId j = 0; j < out.node_count(); ++j) {
    std::vector<NodeId> parents = out.dag().parents(j);
    if (parents.empty()) continue;
    std::vector<int> cards = parent_cards(out, j);
    ParentPartition partition = build_partition(out, j);
    bool changed = false;

    // Drop parents whose every slice lies inside a single class; such a
    // parent never influences X_j. The removed coordinate is marginalized out.
    for (;;) {
      std::optional<std::size_t> vacuous;
      for (std::size_t k = 0; k < parents.size() && !vacuous; ++k) {
        const std::size_t domain = partition.radix.size() / static_cast<std::size_t>(cards[k]);
        bool all = true;
        for (std::size_t d = 0; d < domain && all; ++d) all = slice_in_one_class(partition.radix, partition.class_of, k, d);
        if (all) vacuous = k;
      }
      if (!vacuous) break;
      const std::size_t k = *vacuous;
      out.remove_edge(parents[k], j);
      changed = true;
      MixedRadix reduced(without(cards, k));
      std::vector<std::size_t> raw(reduced.size());
      for (std::size_t d = 0; d < reduced.size(); ++d)
        raw[d] = static_cast<std::size_t>(partition.class_of[partition.radix.insert(d, k, 0)]);
      partition = canonical_partition(j, std::move(reduced), raw);
      parents.erase(parents.begin() + static_cast<std::ptrdiff_t>(k));
      cards = without(cards, k);
    }
    if (!changed) continue;

    // Re-derive labels: a config enters a label iff its slice shares a class.
    LocalStructure local(cards);
    if (parents.size() >= 2)
      for (std::size_t k = 0; k < parents.size(); ++k)
        for (std::size_t d = 0; d < local.domain_size(k); ++d)
          if (slice_in_one_class(partition.radix, partition.class_of, k, d)) local.insert(k, d);
    close_labels(local);
    assign_local_structure(out, j, local);
  }
  return out;
}

}  // namespace ldag
