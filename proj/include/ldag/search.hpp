#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/partition.hpp"
#include "ldag/random.hpp"
#include "ldag/scoring.hpp"

namespace ldag {

struct SearchConfig {
  double kappa = 0.1;
  double ess = 1.0;
  int chains = 50;
  int iterations = 500;
  std::uint64_t seed = 0;
  std::optional<Dag> initial;       // empty graph when unset
  std::optional<int> max_parents;   // unbounded when unset
  PriorMode prior_mode = PriorMode::CsiComplexity;
  bool optimize_labels = true;      // false: plain DAG search
  int threads = 1;
};

void validate(const SearchConfig& cfg);

// Optimized labels of one node for a fixed parent set, with its local score.
struct LocalResult {
  LocalStructure labels;
  std::size_t classes = 0;
  double log_likelihood = 0.0;
  double log_prior = 0.0;

  double score() const noexcept { return log_likelihood + log_prior; }
};

// Greedy best-improvement label search: each sweep scores every single
// config addition that keeps its label a strict subset of the domain (and
// whose maximal closure stays regular), applies the best one if it raises
// the local score, then closes the labels. Stops when no addition helps.
LocalResult optimize_local_structure(const FamilyCounts& family, double kappa, double ess,
                                     PriorMode mode = PriorMode::CsiComplexity, bool optimize_labels = true);
LocalResult optimize_local_structure(const Dataset& data, NodeId j, std::span<const NodeId> parents, double kappa,
                                     double ess = 1.0, PriorMode mode = PriorMode::CsiComplexity);

// Memoized local optimization keyed by (node, parent set). Results are pure
// functions of the key, so sharing the cache across chains keeps runs
// deterministic. Safe for concurrent use.
class FamilyScorer {
 public:
  FamilyScorer(const Dataset& data, const SearchConfig& cfg);

  const LocalResult& evaluate(NodeId j, const std::vector<NodeId>& parents);
  // The LDAG whose labels are the optimized local structures of dag.
  Ldag materialize(const Dag& dag);
  double score(const Dag& dag);

  const Dataset& data() const noexcept { return data_; }
  std::size_t cache_size() const;

 private:
  const Dataset& data_;
  double kappa_;
  double ess_;
  PriorMode mode_;
  bool optimize_labels_;
  mutable std::mutex mutex_;
  std::vector<std::unordered_map<std::uint64_t, std::unique_ptr<LocalResult>>> cache_;
};

enum class MoveKind { Add, Remove, Reverse };

struct Move {
  MoveKind kind = MoveKind::Add;
  Edge edge;  // the edge as it exists before the move (Add: the new edge)

  bool operator==(const Move&) const = default;
};

// All single-edge additions, removals and reversals that keep the graph
// acyclic and respect the parent bound.
std::vector<Move> legal_moves(const Dag& dag, std::optional<int> max_parents = std::nullopt);
// Uniform draw over legal_moves(); NoLegalMove when there is none.
Move propose(const Dag& dag, Rng& rng, std::optional<int> max_parents = std::nullopt);
Dag apply_move(const Dag& dag, const Move& move);
// Nodes whose parent sets change.
std::vector<NodeId> affected_nodes(const Move& move);

struct ChainState {
  Dag dag;
  std::vector<double> node_scores;
  double score = 0.0;
  Dag best_dag;
  double best_score = 0.0;
  Rng rng;
};

ChainState start_chain(FamilyScorer& scorer, const Dag& initial, Rng rng);

// Accept with probability min(1, exp(delta)).
bool metropolis_accept(double delta_log_score, Rng& rng);

struct StepRecord {
  Move move;
  double delta = 0.0;
  bool accepted = false;
};

StepRecord mcmc_step(ChainState& state, FamilyScorer& scorer, const SearchConfig& cfg);

struct ChainTrace {
  std::vector<double> current;
  std::vector<double> best;
  std::size_t accepted = 0;
};

struct LearnResult {
  Ldag model;
  ScoreReport report;
  std::vector<ChainTrace> traces;
  int best_chain = 0;
};

// Runs cfg.chains independent chains and returns the best visited LDAG.
LearnResult learn(const Dataset& data, const SearchConfig& cfg);

}  // namespace ldag
