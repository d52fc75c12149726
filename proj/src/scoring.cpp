#include "ldag/scoring.hpp"

#include <cmath>

#include "ldag/error.hpp"

namespace ldag {

// ---------------------------------------------------------------- Dataset

Dataset::Dataset(VariableTable vars) : vars_(std::move(vars)), columns_(static_cast<std::size_t>(vars_.size())) {}

Dataset::Dataset(VariableTable vars, const std::vector<std::vector<int>>& rows) : Dataset(std::move(vars)) {
  for (auto& column : columns_) column.reserve(rows.size());
  for (const auto& row : rows) append(row);
}

void Dataset::append(std::span<const int> row) {
  if (row.size() != columns_.size())
    throw InvalidArgument("row has " + std::to_string(row.size()) + " entries, expected " +
                          std::to_string(columns_.size()));
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] < 0 || row[j] >= vars_.cardinality(static_cast<NodeId>(j)))
      throw ValueOutOfRange("row " + std::to_string(rows_) + ": value " + std::to_string(row[j]) +
                            " out of range for variable " + vars_.name(static_cast<NodeId>(j)));
  for (std::size_t j = 0; j < row.size(); ++j) columns_[j].push_back(row[j]);
  ++rows_;
}

std::vector<int> Dataset::row(std::size_t i) const {
  std::vector<int> out(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) out[j] = columns_[j].at(i);
  return out;
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Dataset out(vars_);
  for (auto& column : out.columns_) column.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= rows_) throw InvalidArgument("row index out of range");
    for (std::size_t j = 0; j < columns_.size(); ++j) out.columns_[j].push_back(columns_[j][i]);
  }
  out.rows_ = indices.size();
  return out;
}

Dataset Dataset::concat(const Dataset& other) const {
  if (!(vars_ == other.vars_)) throw InvalidArgument("datasets have different variable tables");
  Dataset out = *this;
  for (std::size_t j = 0; j < columns_.size(); ++j)
    out.columns_[j].insert(out.columns_[j].end(), other.columns_[j].begin(), other.columns_[j].end());
  out.rows_ += other.rows_;
  return out;
}

// ---------------------------------------------------------------- counts

FamilyCounts tally(const Dataset& data, NodeId j, std::span<const NodeId> parents) {
  FamilyCounts family;
  family.node = j;
  family.cardinality = data.vars().cardinality(j);
  std::vector<int> cards;
  for (NodeId p : parents) cards.push_back(data.vars().cardinality(p));
  family.parents = MixedRadix(cards);
  family.counts.assign(family.parents.size() * static_cast<std::size_t>(family.cardinality), 0);

  const std::size_t n = data.row_count();
  std::vector<std::size_t> index(n, 0);
  for (std::size_t k = 0; k < parents.size(); ++k) {
    const auto column = data.column(parents[k]);
    const auto card = static_cast<std::size_t>(cards[k]);
    for (std::size_t i = 0; i < n; ++i) index[i] = index[i] * card + static_cast<std::size_t>(column[i]);
  }
  const auto child = data.column(j);
  const auto r = static_cast<std::size_t>(family.cardinality);
  for (std::size_t i = 0; i < n; ++i) ++family.counts[index[i] * r + static_cast<std::size_t>(child[i])];
  return family;
}

CountTable aggregate(const FamilyCounts& family, const ParentPartition& partition) {
  if (partition.radix.size() != family.parents.size())
    throw InvalidArgument("partition does not match the family's parent space");
  CountTable table;
  table.node = family.node;
  table.cardinality = family.cardinality;
  table.class_totals.assign(partition.class_count(), 0);
  table.value_counts.assign(partition.class_count(), std::vector<long long>(static_cast<std::size_t>(family.cardinality), 0));
  for (std::size_t c = 0; c < family.parents.size(); ++c) {
    const auto l = static_cast<std::size_t>(partition.class_of[c]);
    for (int v = 0; v < family.cardinality; ++v) {
      const long long n = family.at(c, v);
      table.value_counts[l][static_cast<std::size_t>(v)] += n;
      table.class_totals[l] += n;
    }
  }
  return table;
}

CountTable count(const Dataset& data, const Ldag& ldag, NodeId j, const ParentPartition& partition) {
  if (!(data.vars() == ldag.vars())) throw InvalidArgument("dataset and model have different variable tables");
  return aggregate(tally(data, j, ldag.dag().parents(j)), partition);
}

// ---------------------------------------------------------------- evidence

double class_pseudocount(double ess, int r, std::size_t q, std::size_t class_size) {
  return ess / (static_cast<double>(r) * static_cast<double>(q)) * static_cast<double>(class_size);
}

double local_log_evidence(const CountTable& counts, const ParentPartition& partition, double ess,
                          const CountTable* prior_counts) {
  if (!(ess > 0.0)) throw InvalidArgument("equivalent sample size must be positive");
  const int r = counts.cardinality;
  const std::size_t q = partition.radix.size();
  double total = 0.0;
  for (std::size_t l = 0; l < partition.class_count(); ++l) {
    if (counts.class_totals[l] == 0) continue;
    const double alpha = class_pseudocount(ess, r, q, partition.class_size(l));
    double alpha_sum = 0.0;
    double term = 0.0;
    for (int v = 0; v < r; ++v) {
      const double a = alpha + (prior_counts ? static_cast<double>(prior_counts->value_counts[l][static_cast<std::size_t>(v)]) : 0.0);
      alpha_sum += a;
      const long long n = counts.value_counts[l][static_cast<std::size_t>(v)];
      if (n > 0) term += std::lgamma(static_cast<double>(n) + a) - std::lgamma(a);
    }
    term += std::lgamma(alpha_sum) - std::lgamma(static_cast<double>(counts.class_totals[l]) + alpha_sum);
    total += term;
  }
  return total;
}

NodeScores log_marginal_likelihood(const Dataset& data, const Ldag& ldag, double ess) {
  NodeScores scores;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const ParentPartition partition = build_partition(ldag, j);
    const double value = local_log_evidence(count(data, ldag, j, partition), partition, ess);
    scores.per_node.push_back(value);
    scores.total += value;
  }
  return scores;
}

// ---------------------------------------------------------------- priors

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && kappa <= 1.0)) throw KappaOutOfRange(kappa);
}

double node_log_prior(int r, std::size_t q, std::size_t classes, double kappa, PriorMode mode) {
  check_kappa(kappa);
  const double free_per_class = static_cast<double>(r - 1);
  const double exponent = mode == PriorMode::CsiComplexity
                              ? free_per_class * static_cast<double>(q - classes)
                              : free_per_class * static_cast<double>(classes);
  return exponent == 0.0 ? 0.0 : exponent * std::log(kappa);
}

NodeScores log_prior(const Ldag& ldag, double kappa, PriorMode mode) {
  check_kappa(kappa);
  NodeScores scores;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const ParentPartition partition = build_partition(ldag, j);
    const double value =
        node_log_prior(ldag.vars().cardinality(j), partition.radix.size(), partition.class_count(), kappa, mode);
    scores.per_node.push_back(value);
    scores.total += value;
  }
  return scores;
}

ScoreReport log_score(const Dataset& data, const Ldag& ldag, double kappa, double ess, PriorMode mode) {
  check_kappa(kappa);
  ScoreReport report;
  NodeScores likelihood = log_marginal_likelihood(data, ldag, ess);
  NodeScores prior = log_prior(ldag, kappa, mode);
  report.node_log_likelihood = std::move(likelihood.per_node);
  report.node_log_prior = std::move(prior.per_node);
  report.log_likelihood = likelihood.total;
  report.log_prior = prior.total;
  report.kappa = kappa;
  report.ess = ess;
  report.mode = mode;
  report.dims = dimensions(ldag);
  return report;
}

double log_posterior_predictive(const Dataset& train, const Dataset& test, const Ldag& ldag, double ess) {
  if (!(train.vars() == test.vars())) throw InvalidArgument("train and test sets have different variable tables");
  double total = 0.0;
  for (NodeId j = 0; j < ldag.node_count(); ++j) {
    const ParentPartition partition = build_partition(ldag, j);
    const CountTable seen = count(train, ldag, j, partition);
    total += local_log_evidence(count(test, ldag, j, partition), partition, ess, &seen);
  }
  return total;
}

}  // namespace ldag
