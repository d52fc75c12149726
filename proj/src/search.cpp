#include "ldag/search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "ldag/error.hpp"

namespace ldag {

void validate(const SearchConfig& cfg) {
  check_kappa(cfg.kappa);
  if (!(cfg.ess > 0.0)) throw InvalidArgument("equivalent sample size must be positive");
  if (cfg.chains < 1) throw InvalidArgument("chain count must be at least 1");
  if (cfg.iterations < 1) throw InvalidArgument("iteration count must be at least 1");
  if (cfg.max_parents && *cfg.max_parents < 0) throw InvalidArgument("max parents must be non-negative");
  if (cfg.threads < 1) throw InvalidArgument("thread count must be at least 1");
}

// ---------------------------------------------------------------- greedy label optimization

namespace {

// Log evidence of one class; same arithmetic as local_log_evidence().
double class_term(const std::vector<long long>& counts, long long total, std::size_t size, double ess, int r,
                  std::size_t q) {
  if (total == 0) return 0.0;
  const double alpha = class_pseudocount(ess, r, q, size);
  double alpha_sum = 0.0;
  double term = 0.0;
  for (int v = 0; v < r; ++v) {
    alpha_sum += alpha;
    const long long n = counts[static_cast<std::size_t>(v)];
    if (n > 0) term += std::lgamma(static_cast<double>(n) + alpha) - std::lgamma(alpha);
  }
  term += std::lgamma(alpha_sum) - std::lgamma(static_cast<double>(total) + alpha_sum);
  return term;
}

struct LocalState {
  ParentPartition partition;
  CountTable table;
  std::vector<double> terms;
  double log_likelihood = 0.0;
};

LocalState evaluate_state(const FamilyCounts& family, const LocalStructure& local, double ess) {
  LocalState state;
  state.partition = partition_of(local, family.node);
  state.table = aggregate(family, state.partition);
  const std::size_t q = family.parents.size();
  for (std::size_t l = 0; l < state.partition.class_count(); ++l) {
    state.terms.push_back(class_term(state.table.value_counts[l], state.table.class_totals[l],
                                     state.partition.class_size(l), ess, family.cardinality, q));
  }
  state.log_likelihood = local_log_evidence(state.table, state.partition, ess);
  return state;
}

// True when merging the classes in `merged` would leave some edge with every
// slice inside a single class, i.e. its closed label would be full.
bool closure_fills_a_label(const LocalStructure& local, const std::vector<int>& class_of,
                           const std::vector<int>& merged) {
  const auto mapped = [&](std::size_t config) {
    const int l = class_of[config];
    return std::find(merged.begin(), merged.end(), l) != merged.end() ? merged.front() : l;
  };
  const MixedRadix& radix = local.radix();
  for (std::size_t k = 0; k < local.parent_count(); ++k) {
    const int card = radix.cardinalities()[k];
    bool all_single = true;
    for (std::size_t e = 0; e < local.domain_size(k) && all_single; ++e) {
      const int first = mapped(radix.insert(e, k, 0));
      for (int v = 1; v < card; ++v) {
        if (mapped(radix.insert(e, k, v)) != first) {
          all_single = false;
          break;
        }
      }
    }
    if (all_single) return true;
  }
  return false;
}

}  // namespace

LocalResult optimize_local_structure(const FamilyCounts& family, double kappa, double ess, PriorMode mode,
                                     bool optimize_labels) {
  check_kappa(kappa);
  if (!(ess > 0.0)) throw InvalidArgument("equivalent sample size must be positive");
  const int r = family.cardinality;
  const std::size_t q = family.parents.size();

  LocalResult result;
  result.labels = LocalStructure(family.parents.cardinalities());
  LocalState state = evaluate_state(family, result.labels, ess);
  double prior = node_log_prior(r, q, state.partition.class_count(), kappa, mode);
  double score = state.log_likelihood + prior;

  const std::size_t m = family.parents.arity();
  if (optimize_labels && m >= 2) {
    std::vector<long long> merged_counts(static_cast<std::size_t>(r));
    std::vector<int> touched;
    for (;;) {
      double best_score = score;
      std::optional<std::pair<std::size_t, std::size_t>> best;
      const std::size_t classes = state.partition.class_count();
      for (std::size_t k = 0; k < m; ++k) {
        const LocalStructure& local = result.labels;
        if (local.label_size(k) + 1 >= local.domain_size(k)) continue;
        for (std::size_t e = 0; e < local.domain_size(k); ++e) {
          if (local.contains(k, e)) continue;
          touched.clear();
          local.for_each_in_slice(k, e, [&](std::size_t c) {
            const int l = state.partition.class_of[c];
            if (std::find(touched.begin(), touched.end(), l) == touched.end()) touched.push_back(l);
          });
          if (touched.size() < 2) continue;
          std::sort(touched.begin(), touched.end());

          std::fill(merged_counts.begin(), merged_counts.end(), 0);
          long long merged_total = 0;
          std::size_t merged_size = 0;
          double removed = 0.0;
          for (int l : touched) {
            const auto li = static_cast<std::size_t>(l);
            for (int v = 0; v < r; ++v)
              merged_counts[static_cast<std::size_t>(v)] += state.table.value_counts[li][static_cast<std::size_t>(v)];
            merged_total += state.table.class_totals[li];
            merged_size += state.partition.class_size(li);
            removed += state.terms[li];
          }
          const double likelihood =
              state.log_likelihood - removed + class_term(merged_counts, merged_total, merged_size, ess, r, q);
          const double candidate = likelihood + node_log_prior(r, q, classes - touched.size() + 1, kappa, mode);
          if (!(candidate > best_score)) continue;
          if (closure_fills_a_label(local, state.partition.class_of, touched)) continue;
          best_score = candidate;
          best = std::make_pair(k, e);
        }
      }
      if (!best) break;
      result.labels.insert(best->first, best->second);
      close_labels(result.labels);
      state = evaluate_state(family, result.labels, ess);
      prior = node_log_prior(r, q, state.partition.class_count(), kappa, mode);
      score = state.log_likelihood + prior;
    }
  }

  result.classes = state.partition.class_count();
  result.log_likelihood = state.log_likelihood;
  result.log_prior = prior;
  return result;
}

LocalResult optimize_local_structure(const Dataset& data, NodeId j, std::span<const NodeId> parents, double kappa,
                                     double ess, PriorMode mode) {
  std::vector<NodeId> sorted(parents.begin(), parents.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("parent set contains duplicates");
  for (NodeId p : sorted)
    if (p < 0 || p >= data.column_count() || p == j) throw InvalidArgument("invalid parent " + std::to_string(p));
  return optimize_local_structure(tally(data, j, sorted), kappa, ess, mode);
}

// ---------------------------------------------------------------- FamilyScorer

FamilyScorer::FamilyScorer(const Dataset& data, const SearchConfig& cfg)
    : data_(data),
      kappa_(cfg.kappa),
      ess_(cfg.ess),
      mode_(cfg.prior_mode),
      optimize_labels_(cfg.optimize_labels),
      cache_(static_cast<std::size_t>(data.column_count())) {
  check_kappa(kappa_);
  if (data.column_count() > 64) throw InvalidArgument("structure search supports at most 64 variables");
}

const LocalResult& FamilyScorer::evaluate(NodeId j, const std::vector<NodeId>& parents) {
  std::uint64_t key = 0;
  for (NodeId p : parents) key |= std::uint64_t{1} << p;
  auto& table = cache_.at(static_cast<std::size_t>(j));
  {
    std::lock_guard lock(mutex_);
    if (auto it = table.find(key); it != table.end()) return *it->second;
  }
  auto fresh = std::make_unique<LocalResult>(
      optimize_local_structure(tally(data_, j, parents), kappa_, ess_, mode_, optimize_labels_));
  std::lock_guard lock(mutex_);
  auto [it, inserted] = table.emplace(key, std::move(fresh));
  return *it->second;
}

Ldag FamilyScorer::materialize(const Dag& dag) {
  Ldag out(data_.vars(), dag);
  for (NodeId j = 0; j < dag.node_count(); ++j)
    if (dag.parents(j).size() >= 2) assign_local_structure(out, j, evaluate(j, dag.parents(j)).labels);
  return out;
}

double FamilyScorer::score(const Dag& dag) {
  double total = 0.0;
  for (NodeId j = 0; j < dag.node_count(); ++j) total += evaluate(j, dag.parents(j)).score();
  return total;
}

std::size_t FamilyScorer::cache_size() const {
  std::lock_guard lock(mutex_);
  std::size_t n = 0;
  for (const auto& table : cache_) n += table.size();
  return n;
}

// ---------------------------------------------------------------- moves

std::vector<Move> legal_moves(const Dag& dag, std::optional<int> max_parents) {
  const int d = dag.node_count();
  // reach[v]: nodes reachable from v by a non-empty directed path.
  std::vector<std::vector<char>> reach(static_cast<std::size_t>(d), std::vector<char>(static_cast<std::size_t>(d), 0));
  const std::vector<NodeId> order = validate_acyclic(dag);
  std::vector<std::vector<NodeId>> children(static_cast<std::size_t>(d));
  for (NodeId j = 0; j < d; ++j)
    for (NodeId p : dag.parents(j)) children[static_cast<std::size_t>(p)].push_back(j);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& row = reach[static_cast<std::size_t>(*it)];
    for (NodeId c : children[static_cast<std::size_t>(*it)]) {
      row[static_cast<std::size_t>(c)] = 1;
      const auto& sub = reach[static_cast<std::size_t>(c)];
      for (int v = 0; v < d; ++v)
        if (sub[static_cast<std::size_t>(v)]) row[static_cast<std::size_t>(v)] = 1;
    }
  }
  const auto reaches = [&](NodeId from, NodeId to) {
    return reach[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] != 0;
  };
  const auto room = [&](NodeId child) {
    return !max_parents || static_cast<int>(dag.parents(child).size()) < *max_parents;
  };

  std::vector<Move> moves;
  for (NodeId i = 0; i < d; ++i) {
    for (NodeId j = 0; j < d; ++j) {
      if (i == j) continue;
      if (dag.has_edge(i, j)) {
        moves.push_back({MoveKind::Remove, {i, j}});
        // Reversing i->j closes a cycle iff another path i ~> j exists.
        bool other_path = false;
        for (NodeId c : children[static_cast<std::size_t>(i)])
          if (c != j && reaches(c, j)) other_path = true;
        if (!other_path && room(i)) moves.push_back({MoveKind::Reverse, {i, j}});
      } else if (!dag.has_edge(j, i) && !reaches(j, i) && room(j)) {
        moves.push_back({MoveKind::Add, {i, j}});
      }
    }
  }
  return moves;
}

Move propose(const Dag& dag, Rng& rng, std::optional<int> max_parents) {
  const std::vector<Move> moves = legal_moves(dag, max_parents);
  if (moves.empty()) throw NoLegalMove();
  return moves[uniform_index(rng, moves.size())];
}

Dag apply_move(const Dag& dag, const Move& move) {
  Dag out = dag;
  switch (move.kind) {
    case MoveKind::Add:
      out.add_edge(move.edge.from, move.edge.to);
      break;
    case MoveKind::Remove:
      out.remove_edge(move.edge.from, move.edge.to);
      break;
    case MoveKind::Reverse:
      out.remove_edge(move.edge.from, move.edge.to);
      out.add_edge(move.edge.to, move.edge.from);
      break;
  }
  return out;
}

std::vector<NodeId> affected_nodes(const Move& move) {
  if (move.kind == MoveKind::Reverse) return {move.edge.from, move.edge.to};
  return {move.edge.to};
}

// ---------------------------------------------------------------- MCMC

ChainState start_chain(FamilyScorer& scorer, const Dag& initial, Rng rng) {
  validate_acyclic(initial);
  ChainState state;
  state.dag = initial;
  for (NodeId j = 0; j < initial.node_count(); ++j) {
    state.node_scores.push_back(scorer.evaluate(j, initial.parents(j)).score());
    state.score += state.node_scores.back();
  }
  state.best_dag = initial;
  state.best_score = state.score;
  state.rng = std::move(rng);
  return state;
}

bool metropolis_accept(double delta_log_score, Rng& rng) {
  if (delta_log_score >= 0.0) return true;
  return uniform01(rng) < std::exp(delta_log_score);
}

StepRecord mcmc_step(ChainState& state, FamilyScorer& scorer, const SearchConfig& cfg) {
  StepRecord record;
  record.move = propose(state.dag, state.rng, cfg.max_parents);
  Dag candidate = apply_move(state.dag, record.move);
  const std::vector<NodeId> nodes = affected_nodes(record.move);
  std::vector<double> fresh;
  for (NodeId v : nodes) {
    fresh.push_back(scorer.evaluate(v, candidate.parents(v)).score());
    record.delta += fresh.back() - state.node_scores[static_cast<std::size_t>(v)];
  }
  record.accepted = metropolis_accept(record.delta, state.rng);
  if (record.accepted) {
    state.dag = std::move(candidate);
    for (std::size_t k = 0; k < nodes.size(); ++k) state.node_scores[static_cast<std::size_t>(nodes[k])] = fresh[k];
    state.score = 0.0;
    for (double s : state.node_scores) state.score += s;
  }
  if (state.score > state.best_score) {
    state.best_score = state.score;
    state.best_dag = state.dag;
  }
  return record;
}

namespace {

struct ChainOutcome {
  Dag best_dag;
  double best_score = 0.0;
  ChainTrace trace;
};

ChainOutcome run_chain(FamilyScorer& scorer, const Dag& initial, const SearchConfig& cfg, int chain) {
  ChainState state = start_chain(scorer, initial, make_rng(cfg.seed, static_cast<std::uint64_t>(chain)));
  ChainOutcome out;
  out.trace.current.reserve(static_cast<std::size_t>(cfg.iterations));
  out.trace.best.reserve(static_cast<std::size_t>(cfg.iterations));
  // A single variable has no moves; its only graph is reported unchanged.
  const bool frozen = initial.node_count() < 2;
  for (int it = 0; it < cfg.iterations; ++it) {
    if (!frozen && mcmc_step(state, scorer, cfg).accepted) ++out.trace.accepted;
    out.trace.current.push_back(state.score);
    out.trace.best.push_back(state.best_score);
  }
  out.best_dag = std::move(state.best_dag);
  out.best_score = state.best_score;
  return out;
}

}  // namespace

LearnResult learn(const Dataset& data, const SearchConfig& cfg) {
  validate(cfg);
  const int d = data.column_count();
  const Dag initial = cfg.initial ? *cfg.initial : Dag(d);
  if (initial.node_count() != d) throw InvalidArgument("initial graph has the wrong number of nodes");
  validate_acyclic(initial);
  if (cfg.max_parents)
    for (NodeId j = 0; j < d; ++j)
      if (static_cast<int>(initial.parents(j).size()) > *cfg.max_parents)
        throw InvalidArgument("initial graph exceeds the parent bound at node " + std::to_string(j));

  FamilyScorer scorer(data, cfg);
  std::vector<ChainOutcome> outcomes(static_cast<std::size_t>(cfg.chains));
  const int workers = std::min(cfg.threads, cfg.chains);
  if (workers <= 1) {
    for (int c = 0; c < cfg.chains; ++c) outcomes[static_cast<std::size_t>(c)] = run_chain(scorer, initial, cfg, c);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int c = w; c < cfg.chains; c += workers)
            outcomes[static_cast<std::size_t>(c)] = run_chain(scorer, initial, cfg, c);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  LearnResult result;
  for (int c = 1; c < cfg.chains; ++c)
    if (outcomes[static_cast<std::size_t>(c)].best_score > outcomes[static_cast<std::size_t>(result.best_chain)].best_score)
      result.best_chain = c;
  result.model = scorer.materialize(outcomes[static_cast<std::size_t>(result.best_chain)].best_dag);
  result.report = log_score(data, result.model, cfg.kappa, cfg.ess, cfg.prior_mode);
  for (auto& o : outcomes) result.traces.push_back(std::move(o.trace));
  return result;
}

}  // namespace ldag
