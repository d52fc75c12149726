#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/partition.hpp"
#include "ldag/scoring.hpp"

namespace ldag {

struct NodeCpd {
  ParentPartition partition;
  std::vector<std::vector<double>> theta;  // [class][value]
};

// One probability vector per parent-partition class of every node.
struct CpdSet {
  std::vector<NodeCpd> nodes;

  const std::vector<double>& distribution(NodeId j, std::size_t parent_config) const {
    const NodeCpd& cpd = nodes.at(static_cast<std::size_t>(j));
    return cpd.theta[static_cast<std::size_t>(cpd.partition.class_of[parent_config])];
  }
};

inline constexpr double kCpdSumTolerance = 1e-9;

// Checks shapes against the model's parent spaces and that every vector is
// a distribution.
void validate(const CpdSet& cpds, const Ldag& ldag);

// Posterior mean (theta = (n + alpha) / (n_l + r alpha)) per class.
CpdSet estimate_map_parameters(const Dataset& data, const Ldag& ldag, double ess = 1.0);

double joint_probability(const CpdSet& cpds, const Ldag& ldag, std::span<const int> x);
double log_joint_probability(const CpdSet& cpds, const Ldag& ldag, std::span<const int> x);

// n rows by ancestral sampling.
Dataset sample(const CpdSet& cpds, const Ldag& ldag, std::size_t n, std::uint64_t seed);

inline constexpr std::size_t kDefaultStateBound = std::size_t{1} << 24;

// Exact D(p || p_star) by enumerating the joint outcome space.
double kl_divergence(const CpdSet& p, const Ldag& p_model, const CpdSet& p_star, const Ldag& star_model,
                     std::size_t max_states = kDefaultStateBound);

enum class CpdMode {
  Dag,   // independent Dirichlet(1) draw per parent configuration; labels ignored
  Ldag,  // one Dirichlet(1) draw per partition class
};

CpdSet random_cpds(const Ldag& ldag, CpdMode mode, std::uint64_t seed);

}  // namespace ldag
