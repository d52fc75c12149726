#include "ldag/selection.hpp"

#include <algorithm>
#include <numeric>

#include "ldag/error.hpp"
#include "ldag/random.hpp"

namespace ldag {

void validate(const CvPlan& plan) {
  if (plan.folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  if (plan.kappas.empty()) throw InvalidArgument("kappa candidate list is empty");
  for (double kappa : plan.kappas) check_kappa(kappa);
}

std::vector<std::vector<std::size_t>> make_folds(std::size_t n, int folds, std::uint64_t seed) {
  if (folds < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  const auto m = static_cast<std::size_t>(folds);
  if (n < m) throw InvalidArgument("fewer rows (" + std::to_string(n) + ") than folds (" + std::to_string(m) + ")");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng = make_rng(seed, 0xf01d);
  shuffle(std::span<std::size_t>(order), rng);

  std::vector<std::vector<std::size_t>> out(m);
  std::size_t next = 0;
  for (std::size_t f = 0; f < m; ++f) {
    const std::size_t size = n / m + (f < n % m ? 1 : 0);
    out[f].assign(order.begin() + static_cast<std::ptrdiff_t>(next),
                  order.begin() + static_cast<std::ptrdiff_t>(next + size));
    std::sort(out[f].begin(), out[f].end());
    next += size;
  }
  return out;
}

std::size_t choose_kappa(const std::vector<double>& kappas, const std::vector<double>& rho_pred) {
  if (kappas.empty() || kappas.size() != rho_pred.size()) throw InvalidArgument("kappa and score lists differ in size");
  std::size_t best = 0;
  for (std::size_t i = 1; i < kappas.size(); ++i) {
    if (rho_pred[i] > rho_pred[best] || (rho_pred[i] == rho_pred[best] && kappas[i] < kappas[best])) best = i;
  }
  return best;
}

CvReport cross_validate(const Dataset& data, const CvPlan& plan) {
  validate(plan);
  return cross_validate(data, plan, make_folds(data.row_count(), plan.folds, plan.seed));
}

CvReport cross_validate(const Dataset& data, const CvPlan& plan, const std::vector<std::vector<std::size_t>>& folds) {
  if (plan.kappas.empty()) throw InvalidArgument("kappa candidate list is empty");
  for (double kappa : plan.kappas) check_kappa(kappa);
  if (folds.size() < 2) throw InvalidArgument("cross-validation needs at least 2 folds");
  std::vector<char> seen(data.row_count(), 0);
  for (const auto& fold : folds) {
    for (std::size_t i : fold) {
      if (i >= data.row_count()) throw InvalidArgument("fold index out of range");
      if (seen[i]) throw InvalidArgument("folds overlap at row " + std::to_string(i));
      seen[i] = 1;
    }
  }

  // Training sets are the complements of the test folds.
  std::vector<Dataset> train;
  std::vector<Dataset> test;
  for (const auto& fold : folds) {
    std::vector<char> in_test(data.row_count(), 0);
    for (std::size_t i : fold) in_test[i] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < data.row_count(); ++i)
      if (!in_test[i]) rest.push_back(i);
    train.push_back(data.subset(rest));
    test.push_back(data.subset(fold));
  }

  CvReport report;
  report.kappas = plan.kappas;
  report.folds = folds;
  for (double kappa : plan.kappas) {
    SearchConfig cfg = plan.search;
    cfg.kappa = kappa;
    std::vector<double> values;
    for (std::size_t m = 0; m < folds.size(); ++m) {
      LearnResult fit = learn(train[m], cfg);
      const double value = log_posterior_predictive(train[m], test[m], fit.model, cfg.ess);
      values.push_back(value);
      report.cells.push_back({kappa, static_cast<int>(m), value, std::move(fit.model)});
    }
    // Summed in sorted order so the mean does not depend on fold order.
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    report.rho_pred.push_back(std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size()));
    report.fold_values.push_back(std::move(values));
  }
  report.chosen_index = choose_kappa(report.kappas, report.rho_pred);
  report.chosen_kappa = report.kappas[report.chosen_index];
  if (plan.fit_full) {
    SearchConfig cfg = plan.search;
    cfg.kappa = report.chosen_kappa;
    report.full_fit = learn(data, cfg);
  }
  return report;
}

}  // namespace ldag
