#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/scoring.hpp"
#include "ldag/search.hpp"

namespace ldag {

struct CvPlan {
  int folds = 10;
  std::vector<double> kappas = {0.001, 0.1, 0.3, 0.5};
  std::uint64_t seed = 0;  // fold shuffling
  // Search settings for every (kappa, fold) cell; its kappa is overridden.
  SearchConfig search;
  // Also learn on the full dataset with the chosen kappa.
  bool fit_full = false;
};

void validate(const CvPlan& plan);

struct CvCell {
  double kappa = 0.0;
  int fold = 0;
  double log_predictive = 0.0;
  Ldag model;
};

struct CvReport {
  std::vector<double> kappas;
  std::vector<double> rho_pred;                  // per kappa
  std::vector<std::vector<double>> fold_values;  // [kappa][fold]
  std::vector<CvCell> cells;                     // kappa-major
  std::vector<std::vector<std::size_t>> folds;
  double chosen_kappa = 0.0;
  std::size_t chosen_index = 0;
  std::optional<LearnResult> full_fit;
};

// M disjoint test folds covering 0..n-1 after one seeded shuffle; the first
// n mod M folds hold one extra row.
std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int folds, std::uint64_t seed);

// Index of the largest value, ties toward the smaller kappa.
std::size_t choose_kappa(const std::vector<double>& kappas, const std::vector<double>& rho_pred);

CvReport cross_validate(const Dataset& data, const CvPlan& plan);
// Same with caller-supplied test folds (plan.folds and plan.seed are ignored).
CvReport cross_validate(const Dataset& data, const CvPlan& plan, const std::vector<std::vector<std::size_t>>& folds);

}  // namespace ldag
