#include "ldag/probability.hpp"

#include <algorithm>
#include <cmath>

#include "ldag/error.hpp"
#include "ldag/random.hpp"
#include "ldag/radix.hpp"

namespace ldag {

namespace {

MixedRadix parent_radix(const Ldag& ldag, NodeId j) {
  std::vector<int> cards;
  for (NodeId p : ldag.dag().parents(j)) cards.push_back(ldag.vars().cardinality(p));
  return MixedRadix(cards);
}

std::size_t parent_index(const Ldag& ldag, const MixedRadix& radix, NodeId j, std::span<const int> x) {
  std::size_t index = 0;
  const auto& parents = ldag.dag().parents(j);
  for (std::size_t k = 0; k < parents.size(); ++k)
    index += radix.stride(k) * static_cast<std::size_t>(x[static_cast<std::size_t>(parents[k])]);
  return index;
}

void check_assignment(const Ldag& ldag, std::span<const int> x) {
  if (static_cast<int>(x.size()) != ldag.node_count())
    throw InvalidArgument("assignment has " + std::to_string(x.size()) + " values, expected " +
                          std::to_string(ldag.node_count()));
  for (NodeId j = 0; j < ldag.node_count(); ++j)
    if (x[static_cast<std::size_t>(j)] < 0 || x[static_cast<std::size_t>(j)] >= ldag.vars().cardinality(j))
      throw ValueOutOfRange("value " + std::to_string(x[static_cast<std::size_t>(j)]) + " out of range for " +
                            ldag.vars().name(j));
}

std::vector<double> dirichlet_one(Rng& rng, int r) {
  std::vector<double> out(static_cast<std::size_t>(r));
  double total = 0.0;
  for (auto& value : out) {
    value = -std::log(1.0 - uniform01(rng));  // Gamma(1) via exponential
    total += value;
  }
  if (total <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / r);
    return out;
  }
  for (auto& value : out) value /= total;
  return out;
}

}  // namespace

void validate(const CpdSet& cpds, const Ldag& ldag) {
  if (static_cast<int>(cpds.nodes.size()) != ldag.node_count())
    throw InvalidArgument("parameter set does not match the model's node count");
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const NodeCpd& cpd = cpds.nodes[static_cast<std::size_t>(j)];
    if (!(cpd.partition.radix == parent_radix(ldag, j)))
      throw InvalidArgument("parameters of " + ldag.vars().name(j) + " do not match its parent space");
    if (cpd.partition.class_of.size() != cpd.partition.radix.size() ||
        cpd.theta.size() != cpd.partition.class_count())
      throw InvalidArgument("parameters of " + ldag.vars().name(j) + " do not match its partition");
    for (const auto& theta : cpd.theta) {
      if (static_cast<int>(theta.size()) != ldag.vars().cardinality(j))
        throw InvalidArgument("distribution of " + ldag.vars().name(j) + " has the wrong length");
      double total = 0.0;
      for (double p : theta) {
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("probability outside [0, 1] for " + ldag.vars().name(j));
        total += p;
      }
      if (std::abs(total - 1.0) > kCpdSumTolerance)
        throw InvalidArgument("distribution of " + ldag.vars().name(j) + " does not sum to 1");
    }
  }
}

CpdSet estimate_map_parameters(const Dataset& data, const Ldag& ldag, double ess) {
  if (!(ess > 0.0)) throw InvalidArgument("equivalent sample size must be positive");
  CpdSet out;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    NodeCpd cpd;
    cpd.partition = build_partition(ldag, j);
    const CountTable table = count(data, ldag, j, cpd.partition);
    const int r = ldag.vars().cardinality(j);
    for (std::size_t l = 0; l < cpd.partition.class_count(); ++l) {
      const double alpha = class_pseudocount(ess, r, cpd.partition.radix.size(), cpd.partition.class_size(l));
      const double denom = static_cast<double>(table.class_totals[l]) + r * alpha;
      std::vector<double> theta(static_cast<std::size_t>(r));
      for (int v = 0; v < r; ++v)
        theta[static_cast<std::size_t>(v)] =
            (static_cast<double>(table.value_counts[l][static_cast<std::size_t>(v)]) + alpha) / denom;
      cpd.theta.push_back(std::move(theta));
    }
    out.nodes.push_back(std::move(cpd));
  }
  return out;
}

double log_joint_probability(const CpdSet& cpds, const Ldag& ldag, std::span<const int> x) {
  check_assignment(ldag, x);
  double total = 0.0;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const auto& radix = cpds.nodes.at(static_cast<std::size_t>(j)).partition.radix;
    const double p = cpds.distribution(j, parent_index(ldag, radix, j, x))[static_cast<std::size_t>(x[static_cast<std::size_t>(j)])];
    total += std::log(p);
  }
  return total;
}

double joint_probability(const CpdSet& cpds, const Ldag& ldag, std::span<const int> x) {
  check_assignment(ldag, x);
  double total = 1.0;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const auto& radix = cpds.nodes.at(static_cast<std::size_t>(j)).partition.radix;
    total *= cpds.distribution(j, parent_index(ldag, radix, j, x))[static_cast<std::size_t>(x[static_cast<std::size_t>(j)])];
  }
  return total;
}

Dataset sample(const CpdSet& cpds, const Ldag& ldag, std::size_t n, std::uint64_t seed) {
  validate(cpds, ldag);
  const std::vector<NodeId> order = validate_acyclic(ldag.dag());
  Rng rng = make_rng(seed, 0x5a3b1e);
  Dataset out(ldag.vars());
  std::vector<int> row(static_cast<std::size_t>(ldag.node_count()), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (NodeId j : order) {
      const auto& radix = cpds.nodes[static_cast<std::size_t>(j)].partition.radix;
      row[static_cast<std::size_t>(j)] = categorical(rng, cpds.distribution(j, parent_index(ldag, radix, j, row)));
    }
    out.append(row);
  }
  return out;
}

double kl_divergence(const CpdSet& p, const Ldag& p_model, const CpdSet& p_star, const Ldag& star_model,
                     std::size_t max_states) {
  if (!(p_model.vars() == star_model.vars())) throw InvalidArgument("models have different variable tables");
  validate(p, p_model);
  validate(p_star, star_model);
  const auto& cards = p_model.vars().cardinalities();
  if (checked_product(cards, max_states) > max_states)
    throw StateSpaceTooLarge("joint outcome space exceeds " + std::to_string(max_states) + " states");

  const MixedRadix space(cards);
  std::vector<int> x(cards.size(), 0);
  double total = 0.0;
  for (std::size_t index = 0; index < space.size(); ++index) {
    for (std::size_t k = 0; k < cards.size(); ++k) x[k] = space.digit(index, k);
    const double px = joint_probability(p, p_model, x);
    if (px == 0.0) continue;
    const double qx = joint_probability(p_star, star_model, x);
    if (qx == 0.0) throw SupportError("reference model assigns zero probability to a state of positive probability");
    total += px * (log_joint_probability(p, p_model, x) - log_joint_probability(p_star, star_model, x));
  }
  // Rounding can leave a tiny negative value for (nearly) identical joints.
  return std::max(total, 0.0);
}

CpdSet random_cpds(const Ldag& ldag, CpdMode mode, std::uint64_t seed) {
  Rng rng = make_rng(seed, 0xc9d);
  const Ldag model = mode == CpdMode::Dag ? ldag.without_labels() : ldag;
  CpdSet out;
  for (NodeId j = 0; j < model.node_count(); ++j) {
    NodeCpd cpd;
    cpd.partition = build_partition(model, j);
    for (std::size_t l = 0; l < cpd.partition.class_count(); ++l)
      cpd.theta.push_back(dirichlet_one(rng, model.vars().cardinality(j)));
    out.nodes.push_back(std::move(cpd));
  }
  return out;
}

}  // namespace ldag
