#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/partition.hpp"

namespace ldag {

// Complete matrix of integer-coded observations, stored column-major.
class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(VariableTable vars);
  // Throws ValueOutOfRange for entries outside 0..r_j-1.
  Dataset(VariableTable vars, const std::vector<std::vector<int>>& rows);

  const VariableTable& vars() const noexcept { return vars_; }
  std::size_t row_count() const noexcept { return rows_; }
  int column_count() const noexcept { return vars_.size(); }
  int at(std::size_t row, NodeId column) const { return columns_[static_cast<std::size_t>(column)][row]; }
  std::vector<int> row(std::size_t i) const;
  std::span<const int> column(NodeId j) const { return columns_.at(static_cast<std::size_t>(j)); }

  void append(std::span<const int> row);
  Dataset subset(std::span<const std::size_t> indices) const;
  // Rows of this dataset followed by the rows of other.
  Dataset concat(const Dataset& other) const;

  bool operator==(const Dataset&) const = default;

 private:
  VariableTable vars_;
  std::vector<std::vector<int>> columns_;
  std::size_t rows_ = 0;
};

// n(x_j, x_Pi) for every value and full parent configuration.
struct FamilyCounts {
  NodeId node = 0;
  int cardinality = 0;
  MixedRadix parents;
  std::vector<long long> counts;  // index config * r + value

  long long at(std::size_t config, int value) const {
    return counts[config * static_cast<std::size_t>(cardinality) + static_cast<std::size_t>(value)];
  }
};

FamilyCounts tally(const Dataset& data, NodeId j, std::span<const NodeId> parents);

// n(S_jl) and n(x_ij x S_jl) per partition class.
struct CountTable {
  NodeId node = 0;
  int cardinality = 0;
  std::vector<long long> class_totals;
  std::vector<std::vector<long long>> value_counts;  // [class][value]
};

CountTable aggregate(const FamilyCounts& family, const ParentPartition& partition);
CountTable count(const Dataset& data, const Ldag& ldag, NodeId j, const ParentPartition& partition);

// Dirichlet pseudocount alpha_ijl = N / (r_j q_j) * |S_jl| of class l.
double class_pseudocount(double ess, int r, std::size_t q, std::size_t class_size);

// Log evidence of counts under the class-wise Dirichlet prior; when
// `prior_counts` is given its counts are added to the pseudocounts
// (posterior predictive form).
double local_log_evidence(const CountTable& counts, const ParentPartition& partition, double ess,
                          const CountTable* prior_counts = nullptr);

struct NodeScores {
  std::vector<double> per_node;
  double total = 0.0;
};

NodeScores log_marginal_likelihood(const Dataset& data, const Ldag& ldag, double ess = 1.0);

enum class PriorMode {
  CsiComplexity,     // kappa^(dim G - dim G_L)
  ParameterPenalty,  // kappa^(dim G_L)
};

void check_kappa(double kappa);

// Unnormalized log structure prior of node j with the given class count.
double node_log_prior(int r, std::size_t q, std::size_t classes, double kappa, PriorMode mode);

NodeScores log_prior(const Ldag& ldag, double kappa, PriorMode mode = PriorMode::CsiComplexity);

struct ScoreReport {
  std::vector<double> node_log_likelihood;
  std::vector<double> node_log_prior;
  double log_likelihood = 0.0;
  double log_prior = 0.0;
  double kappa = 1.0;
  double ess = 1.0;
  PriorMode mode = PriorMode::CsiComplexity;
  DimensionReport dims;

  double total() const noexcept { return log_likelihood + log_prior; }
  double node_total(NodeId j) const {
    return node_log_likelihood.at(static_cast<std::size_t>(j)) + node_log_prior.at(static_cast<std::size_t>(j));
  }
};

ScoreReport log_score(const Dataset& data, const Ldag& ldag, double kappa, double ess = 1.0,
                      PriorMode mode = PriorMode::CsiComplexity);

// log p(test | train, G_L).
double log_posterior_predictive(const Dataset& train, const Dataset& test, const Ldag& ldag, double ess = 1.0);

}  // namespace ldag
