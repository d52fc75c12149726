#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/radix.hpp"

namespace ldag {

// Disjoint sets over 0..n-1 with path compression and union by size.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) noexcept {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      const std::size_t next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) noexcept {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

// Labels of one node in encoded form. Parent position k refers to the k-th
// parent in ascending id order; label configs of edge k are indices into
// the mixed-radix space of the other parents.
class LocalStructure {
 public:
  LocalStructure() = default;
  explicit LocalStructure(std::vector<int> parent_cards);

  std::size_t parent_count() const noexcept { return radix_.arity(); }
  std::size_t config_count() const noexcept { return radix_.size(); }
  const MixedRadix& radix() const noexcept { return radix_; }
  std::size_t domain_size(std::size_t k) const noexcept { return radix_.size() / static_cast<std::size_t>(radix_.cardinalities()[k]); }

  bool contains(std::size_t k, std::size_t domain_index) const { return labels_[k][domain_index] != 0; }
  void insert(std::size_t k, std::size_t domain_index);
  std::size_t label_size(std::size_t k) const noexcept { return sizes_[k]; }
  bool is_full(std::size_t k) const noexcept { return sizes_[k] == domain_size(k); }
  bool empty() const noexcept;

  // Full parent configurations {x_L} x X_k for the given label config.
  template <class F>
  void for_each_in_slice(std::size_t k, std::size_t domain_index, F&& f) const {
    for (int v = 0; v < radix_.cardinalities()[k]; ++v) f(radix_.insert(domain_index, k, v));
  }

  bool operator==(const LocalStructure&) const = default;

 private:
  MixedRadix radix_;
  std::vector<std::vector<char>> labels_;
  std::vector<std::size_t> sizes_;
};

// CSI-consistent partition of a node's parent outcome space. Classes are
// numbered in order of their smallest member, so equal partitions compare
// equal.
struct ParentPartition {
  NodeId node = 0;
  MixedRadix radix;                         // parent space, ascending id order
  std::vector<int> class_of;                // config index -> class
  std::vector<std::vector<std::size_t>> classes;

  std::size_t class_count() const noexcept { return classes.size(); }
  std::size_t class_size(std::size_t l) const noexcept { return classes[l].size(); }
  Config decode(std::size_t config_index) const { return radix.decode(config_index); }

  bool operator==(const ParentPartition&) const = default;
};

ParentPartition partition_of(const LocalStructure& local, NodeId node = 0);

// Encoded (edge position, label config) pairs that can join a label
// without merging classes.
std::vector<std::pair<std::size_t, std::size_t>> maximality_witnesses(const LocalStructure& local,
                                                                      const ParentPartition& partition);
// Adds every witness; the partition is unchanged.
void close_labels(LocalStructure& local);

LocalStructure local_structure(const Ldag& ldag, NodeId j);
// Replaces the labels of node j by the given local structure.
void assign_local_structure(Ldag& ldag, NodeId j, const LocalStructure& local);

ParentPartition build_partition(const Ldag& ldag, NodeId j);

struct DimensionReport {
  std::vector<long long> dag_dim;   // (r_j - 1) q_j
  std::vector<long long> ldag_dim;  // (r_j - 1) k_j
  long long total_dag_dim = 0;
  long long total_ldag_dim = 0;

  long long csi_complexity() const noexcept { return total_dag_dim - total_ldag_dim; }
};

DimensionReport dimensions(const Ldag& ldag);

struct MaximalityWitness {
  Edge edge;
  Config config;

  bool operator==(const MaximalityWitness&) const = default;
};

struct MaximalityReport {
  bool maximal = true;
  std::vector<MaximalityWitness> witnesses;
};

MaximalityReport is_maximal(const Ldag& ldag);
Ldag make_maximal(const Ldag& ldag);

struct RegularityReport {
  bool regular = true;
  std::vector<Edge> offending;
};

RegularityReport is_regular(const Ldag& ldag);

// Deletes vacuous edges (full labels) while preserving every node's
// partition of its original parent space, re-deriving the remaining labels.
// Expects a maximal input; the result is regular and maximal.
Ldag regularize(const Ldag& ldag);

}  // namespace ldag
