#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ldag/error.hpp"
#include "ldag/io.hpp"
#include "ldag/partition.hpp"
#include "ldag/probability.hpp"
#include "ldag/scoring.hpp"
#include "ldag/search.hpp"
#include "ldag/selection.hpp"
#include "ldag/separation.hpp"
#include "ldag/version.hpp"

namespace {

using namespace ldag;

// Exit codes: 0 success, 1 library error, 2 usage error, 3 unexpected failure.
constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

void print_error(const std::string& code, const std::string& message) {
  std::cerr << "error code=" << code << " message=\"" << escape(message) << "\"\n";
}

std::string fixed(double value, int digits = 4) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

std::string edge_name(const VariableTable& vars, Edge e) {
  return "(" + vars.name(e.from) + "," + vars.name(e.to) + ")";
}

PriorMode parse_prior(const std::string& name) {
  if (name == "csi") return PriorMode::CsiComplexity;
  if (name == "penalty") return PriorMode::ParameterPenalty;
  throw InvalidArgument("unknown prior '" + name + "' (expected csi or penalty)");
}

void print_report(std::ostream& out, const Ldag& model, const ScoreReport& report) {
  out << "log_score " << fixed(report.total()) << '\n';
  out << "log_likelihood " << fixed(report.log_likelihood) << '\n';
  out << "log_prior " << fixed(report.log_prior) << '\n';
  out << "kappa " << format_double(report.kappa) << '\n';
  out << "ess " << format_double(report.ess) << '\n';
  out << "edges " << model.dag().edge_count() << '\n';
  out << "labels " << model.labels().size() << '\n';
  out << "dim_dag " << report.dims.total_dag_dim << '\n';
  out << "dim_ldag " << report.dims.total_ldag_dim << '\n';
}

// Collects what a run reads and writes so it can be written as a manifest.
struct Run {
  std::vector<std::string> args;
  RunManifest manifest;
  std::string manifest_path;
  bool write_manifest = true;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void input(const std::string& role, const std::string& path) {
    manifest.inputs.push_back({role, path, sha256_file(path)});
  }
  void output(const std::string& path) { manifest.outputs.push_back(path); }

  void finish() {
    if (!write_manifest) return;
    manifest.args = args;
    manifest.version = kVersion;
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string path = manifest_path;
    if (path.empty())
      path = manifest.outputs.empty() ? "ldag-" + manifest.command + ".manifest" : manifest.outputs.front() + ".manifest";
    save_manifest(path, manifest);
  }
};

void emit_text(Run& run, const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path) {
    std::ofstream out(*out_path, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot open '" + *out_path + "' for writing");
    out << text;
    run.output(*out_path);
  } else {
    std::cout << text;
  }
}

struct SearchFlags {
  double ess = 1.0;
  int chains = 50;
  int iters = 500;
  std::uint64_t seed = 0;
  std::optional<int> max_parents;
  int threads = 1;
  std::string prior = "csi";
  bool no_labels = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--ess", ess, "equivalent sample size")->capture_default_str();
    cmd->add_option("--chains", chains, "independent search chains")->capture_default_str();
    cmd->add_option("--iters", iters, "iterations per chain")->capture_default_str();
    cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    cmd->add_option("--max-parents", max_parents, "parent set size bound");
    cmd->add_option("--threads", threads, "worker threads for chains")->capture_default_str();
    cmd->add_option("--prior", prior, "structure prior: csi or penalty")->capture_default_str();
    cmd->add_flag("--no-labels", no_labels, "search plain DAGs only");
  }

  SearchConfig config(double kappa) const {
    SearchConfig cfg;
    cfg.kappa = kappa;
    cfg.ess = ess;
    cfg.chains = chains;
    cfg.iterations = iters;
    cfg.seed = seed;
    cfg.max_parents = max_parents;
    cfg.threads = threads;
    cfg.prior_mode = parse_prior(prior);
    cfg.optimize_labels = !no_labels;
    return cfg;
  }
};

int run_cli(const std::vector<std::string>& args);

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Learning and analysing labeled DAGs (context-specific Bayesian networks)", "ldag"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Run run;
  run.args = args;
  std::string manifest_path;
  bool no_manifest = false;
  const auto common = [&](CLI::App* cmd) {
    cmd->add_option("--manifest", manifest_path, "manifest path (default: beside the first output)");
    cmd->add_flag("--no-manifest", no_manifest, "do not write a manifest");
  };

  // learn
  auto* learn_cmd = app.add_subcommand("learn", "search for the best-scoring LDAG");
  std::string data_path;
  double kappa = 0.1;
  std::optional<std::string> out_path;
  bool with_params = false;
  SearchFlags search;
  learn_cmd->add_option("--data", data_path, "CSV dataset")->required();
  learn_cmd->add_option("--kappa", kappa, "prior strength in (0, 1]")->capture_default_str();
  learn_cmd->add_option("--out", out_path, "model file to write");
  learn_cmd->add_flag("--with-params", with_params, "also write posterior mean parameters");
  search.attach(learn_cmd);
  common(learn_cmd);

  // cv
  auto* cv_cmd = app.add_subcommand("cv", "choose kappa by cross-validated predictive score");
  std::vector<double> kappas = {0.001, 0.1, 0.3, 0.5};
  int folds = 10;
  std::optional<std::uint64_t> fold_seed;
  cv_cmd->add_option("--data", data_path, "CSV dataset")->required();
  cv_cmd->add_option("--kappas", kappas, "candidate kappas")->delimiter(',')->capture_default_str();
  cv_cmd->add_option("--folds", folds, "number of folds")->capture_default_str();
  cv_cmd->add_option("--fold-seed", fold_seed, "fold shuffling seed (default: --seed)");
  cv_cmd->add_option("--out", out_path, "model for the chosen kappa, learned on all rows");
  cv_cmd->add_flag("--with-params", with_params, "also write posterior mean parameters");
  search.attach(cv_cmd);
  common(cv_cmd);

  // score
  auto* score_cmd = app.add_subcommand("score", "score a model on a dataset");
  std::string model_path;
  double score_kappa = 1.0;
  double score_ess = 1.0;
  std::string score_prior = "csi";
  score_cmd->add_option("--data", data_path, "CSV dataset")->required();
  score_cmd->add_option("--model", model_path, "model file")->required();
  score_cmd->add_option("--kappa", score_kappa, "prior strength in (0, 1]")->capture_default_str();
  score_cmd->add_option("--ess", score_ess, "equivalent sample size")->capture_default_str();
  score_cmd->add_option("--prior", score_prior, "structure prior: csi or penalty")->capture_default_str();
  common(score_cmd);

  // check
  auto* check_cmd = app.add_subcommand("check", "report maximality and regularity");
  bool fix = false;
  check_cmd->add_option("--model", model_path, "model file")->required();
  check_cmd->add_flag("--fix", fix, "write the closed, regularized model");
  check_cmd->add_option("--out", out_path, "where --fix writes (default: stdout)");
  common(check_cmd);

  // equiv
  auto* equiv_cmd = app.add_subcommand("equiv", "test CSI-equivalence of two models");
  std::string model_a;
  std::string model_b;
  equiv_cmd->add_option("--model-a", model_a, "first model")->required();
  equiv_cmd->add_option("--model-b", model_b, "second model")->required();
  common(equiv_cmd);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "draw a dataset from a parameterized model");
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::string random_params;
  sample_cmd->add_option("--model", model_path, "model file")->required();
  sample_cmd->add_option("--n", n, "number of rows")->required();
  sample_cmd->add_option("--seed", seed, "sampling seed")->capture_default_str();
  sample_cmd->add_option("--random-params", random_params,
                         "draw parameters instead of reading them: dag or ldag (uses --seed)");
  sample_cmd->add_option("--out", out_path, "CSV file to write (default: stdout)");
  common(sample_cmd);

  // kl
  auto* kl_cmd = app.add_subcommand("kl", "exact KL divergence between two parameterized models");
  std::string model_true;
  std::string model_est;
  std::optional<std::string> est_data;
  double kl_ess = 1.0;
  kl_cmd->add_option("--model-true", model_true, "generating model with parameters")->required();
  kl_cmd->add_option("--model-est", model_est, "estimated model")->required();
  kl_cmd->add_option("--data", est_data, "estimate the second model's parameters from this dataset");
  kl_cmd->add_option("--ess", kl_ess, "equivalent sample size for --data")->capture_default_str();
  common(kl_cmd);

  // export-dot
  auto* dot_cmd = app.add_subcommand("export-dot", "write the model as a Graphviz digraph");
  dot_cmd->add_option("--model", model_path, "model file")->required();
  dot_cmd->add_option("--out", out_path, "DOT file (default: stdout)");
  common(dot_cmd);

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  std::string replay_path;
  bool ignore_digests = false;
  replay_cmd->add_option("manifest", replay_path, "manifest file")->required();
  replay_cmd->add_flag("--ignore-digests", ignore_digests, "run even if inputs changed");

  std::vector<const char*> argv = {"ldag"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return kExitUsage;
  }

  run.manifest_path = manifest_path;
  run.write_manifest = !no_manifest;

  if (*replay_cmd) {
    const RunManifest recorded = load_manifest(replay_path);
    if (!ignore_digests) {
      for (const auto& input : recorded.inputs)
        if (sha256_file(input.path) != input.sha256)
          throw InvalidArgument("input '" + input.path + "' changed since the recorded run");
    }
    return run_cli(recorded.args);
  }

  if (*learn_cmd) {
    run.manifest.command = "learn";
    run.input("data", data_path);
    const Dataset data = load_dataset(data_path);
    const SearchConfig cfg = search.config(kappa);
    run.manifest.seed = cfg.seed;
    const LearnResult result = learn(data, cfg);
    print_report(std::cout, result.model, result.report);
    run.manifest.best_score = result.report.total();
    std::optional<CpdSet> params;
    if (with_params) params = estimate_map_parameters(data, result.model, cfg.ess);
    emit_text(run, out_path, serialize_model(result.model, params ? &*params : nullptr));
  } else if (*cv_cmd) {
    run.manifest.command = "cv";
    run.input("data", data_path);
    const Dataset data = load_dataset(data_path);
    CvPlan plan;
    plan.folds = folds;
    plan.kappas = kappas;
    plan.seed = fold_seed.value_or(search.seed);
    plan.search = search.config(kappas.empty() ? 0.1 : kappas.front());
    run.manifest.seed = search.seed;
    const CvReport report = cross_validate(data, plan);

    std::cout << "kappa\tlog_score\tedges\tlabels\tdim_dag\tdim_ldag\trho_pred\n";
    std::optional<LearnResult> chosen;
    for (std::size_t k = 0; k < report.kappas.size(); ++k) {
      SearchConfig cfg = plan.search;
      cfg.kappa = report.kappas[k];
      LearnResult fit = learn(data, cfg);
      std::cout << format_double(report.kappas[k]) << '\t' << fixed(fit.report.total(), 2) << '\t'
                << fit.model.dag().edge_count() << '\t' << fit.model.labels().size() << '\t'
                << fit.report.dims.total_dag_dim << '\t' << fit.report.dims.total_ldag_dim << '\t'
                << fixed(report.rho_pred[k], 2) << (k == report.chosen_index ? "\t*" : "") << '\n';
      if (k == report.chosen_index) chosen = std::move(fit);
    }
    std::cout << "chosen_kappa " << format_double(report.chosen_kappa) << '\n';
    run.manifest.best_score = chosen->report.total();
    if (out_path) {
      std::optional<CpdSet> params;
      if (with_params) params = estimate_map_parameters(data, chosen->model, search.ess);
      save_model(*out_path, chosen->model, params ? &*params : nullptr);
      run.output(*out_path);
    }
  } else if (*score_cmd) {
    run.manifest.command = "score";
    run.input("data", data_path);
    run.input("model", model_path);
    const Dataset data = load_dataset(data_path);
    const Ldag model = load_model(model_path).model;
    if (!(data.vars().names() == model.vars().names()))
      throw InvalidArgument("dataset columns do not match the model's variables");
    // Cardinalities come from the model; re-check the data against them.
    const Dataset aligned(model.vars(), [&] {
      std::vector<std::vector<int>> rows;
      for (std::size_t i = 0; i < data.row_count(); ++i) rows.push_back(data.row(i));
      return rows;
    }());
    const ScoreReport report = log_score(aligned, model, score_kappa, score_ess, parse_prior(score_prior));
    print_report(std::cout, model, report);
    run.manifest.best_score = report.total();
  } else if (*check_cmd) {
    run.manifest.command = "check";
    run.input("model", model_path);
    const Ldag model = load_model(model_path).model;
    const auto& vars = model.vars();
    const MaximalityReport maximal = is_maximal(model);
    if (maximal.maximal) {
      std::cout << "MAXIMAL\n";
    } else {
      std::cout << "NOT MAXIMAL";
      for (const auto& w : maximal.witnesses) {
        std::string config;
        for (std::size_t k = 0; k < w.config.size(); ++k) config += (k ? "," : "") + std::to_string(w.config[k]);
        std::cout << "; witness edge " << edge_name(vars, w.edge) << " config (" << config << ")";
      }
      std::cout << '\n';
    }
    const RegularityReport regular = is_regular(model);
    if (regular.regular) {
      std::cout << "REGULAR\n";
    } else {
      std::cout << "NOT REGULAR";
      for (const Edge& e : regular.offending) std::cout << "; vacuous edge " << edge_name(vars, e);
      std::cout << '\n';
    }
    for (NodeId j = 0; j < model.node_count(); ++j)
      std::cout << "classes " << vars.name(j) << ' ' << build_partition(model, j).class_count() << '\n';
    if (fix) emit_text(run, out_path, serialize_model(regularize(make_maximal(model))));
  } else if (*equiv_cmd) {
    run.manifest.command = "equiv";
    run.input("model-a", model_a);
    run.input("model-b", model_b);
    const Ldag a = load_model(model_a).model;
    const Ldag b = load_model(model_b).model;
    std::cout << (csi_equivalent(a, b) ? "CSI-EQUIVALENT" : "NOT CSI-EQUIVALENT") << '\n';
    std::cout << "underlying_markov_equivalent " << (markov_equivalent(a.dag(), b.dag()) ? "yes" : "no") << '\n';
  } else if (*sample_cmd) {
    run.manifest.command = "sample";
    run.input("model", model_path);
    run.manifest.seed = seed;
    const ModelFile file = load_model(model_path);
    CpdSet params;
    if (random_params.empty()) {
      if (!file.params) throw InvalidArgument("model has no parameters; pass --random-params dag|ldag");
      params = *file.params;
    } else if (random_params == "dag") {
      params = random_cpds(file.model, CpdMode::Dag, seed);
    } else if (random_params == "ldag") {
      params = random_cpds(file.model, CpdMode::Ldag, seed);
    } else {
      throw InvalidArgument("--random-params must be dag or ldag");
    }
    // Parameter draws and row draws use separate streams of the same seed.
    const Ldag model = random_params == "dag" ? file.model.without_labels() : file.model;
    const Dataset data = sample(params, model, n, seed);
    std::ostringstream text;
    write_dataset(text, data);
    emit_text(run, out_path, text.str());
  } else if (*kl_cmd) {
    run.manifest.command = "kl";
    run.input("model-true", model_true);
    run.input("model-est", model_est);
    const ModelFile truth = load_model(model_true);
    if (!truth.params) throw InvalidArgument("'" + model_true + "' has no parameters");
    const ModelFile est = load_model(model_est);
    CpdSet est_params;
    if (est_data) {
      run.input("data", *est_data);
      est_params = estimate_map_parameters(load_dataset(*est_data), est.model, kl_ess);
    } else if (est.params) {
      est_params = *est.params;
    } else {
      throw InvalidArgument("'" + model_est + "' has no parameters; pass --data to estimate them");
    }
    std::cout << "kl " << format_double(kl_divergence(*truth.params, truth.model, est_params, est.model)) << '\n';
  } else if (*dot_cmd) {
    run.manifest.command = "export-dot";
    run.input("model", model_path);
    emit_text(run, out_path, export_dot(load_model(model_path).model));
  }
  run.finish();
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const ldag::Error& e) {
    print_error(e.code(), e.what());
    return kExitError;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
