#pragma once

#include <cstddef>
#include <set>

#include "ldag/graph.hpp"

namespace ldag {

using NodeSet = std::set<NodeId>;

// X_A vs X_B given X_S in the context ctx (over C, disjoint from A, B, S).
struct SeparationQuery {
  NodeSet a;
  NodeSet b;
  NodeSet s;
  Context ctx;
};

inline constexpr std::size_t kDefaultContextBound = std::size_t{1} << 20;

// No active trail between A and B given S (ancestor marking + typed BFS).
bool d_separated(const Dag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& s);

// d-separation of A and B by S u C in the context-specific graph.
bool csi_separated(const Ldag& ldag, const SeparationQuery& query);

// Reasoning by cases: csi_separated for every assignment of C. A true
// result certifies X_A _|_ X_B | X_S, X_C; false is inconclusive.
bool ci_by_cases(const Ldag& ldag, const NodeSet& a, const NodeSet& b, const NodeSet& s, const NodeSet& c,
                 std::size_t max_contexts = kDefaultContextBound);

// Equal skeletons and immoralities.
bool markov_equivalent(const Dag& g1, const Dag& g2);

// Context-specific graphs Markov equivalent for every full context. Only
// the variables appearing in some label domain are enumerated. Both inputs
// must be regular and maximal over the same variable table.
bool csi_equivalent(const Ldag& l1, const Ldag& l2, std::size_t max_contexts = kDefaultContextBound);

}  // namespace ldag
