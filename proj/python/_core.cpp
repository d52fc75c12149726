#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ldag/error.hpp"
#include "ldag/io.hpp"
#include "ldag/partition.hpp"
#include "ldag/probability.hpp"
#include "ldag/scoring.hpp"
#include "ldag/search.hpp"
#include "ldag/selection.hpp"
#include "ldag/separation.hpp"
#include "ldag/version.hpp"

namespace py = pybind11;
using namespace ldag;

namespace {

PriorMode parse_prior(const std::string& name) {
  if (name == "csi") return PriorMode::CsiComplexity;
  if (name == "penalty") return PriorMode::ParameterPenalty;
  throw InvalidArgument("prior must be 'csi' or 'penalty', got '" + name + "'");
}

py::dict score_dict(const ScoreReport& r) {
  py::dict d;
  d["log_likelihood"] = r.log_likelihood;
  d["log_prior"] = r.log_prior;
  d["total"] = r.total();
  d["node_log_likelihood"] = r.node_log_likelihood;
  d["node_log_prior"] = r.node_log_prior;
  d["dim_dag"] = r.dims.total_dag_dim;
  d["dim_ldag"] = r.dims.total_ldag_dim;
  return d;
}

std::vector<std::pair<int, int>> edge_list(const Dag& dag) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : dag.edges()) out.emplace_back(e.from, e.to);
  return out;
}

Dag dag_from(int d, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> list;
  for (const auto& [a, b] : edges) list.push_back({a, b});
  return Dag(d, list);
}

SearchConfig search_config(double kappa, double ess, int chains, int iterations, std::uint64_t seed,
                           std::optional<int> max_parents, const std::string& prior, bool labels, int threads) {
  SearchConfig cfg;
  cfg.kappa = kappa;
  cfg.ess = ess;
  cfg.chains = chains;
  cfg.iterations = iterations;
  cfg.seed = seed;
  cfg.max_parents = max_parents;
  cfg.prior_mode = parse_prior(prior);
  cfg.optimize_labels = labels;
  cfg.threads = threads;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Labeled DAG scoring, structure search and CSI reasoning";
  m.attr("__version__") = kVersion;

  // The module attribute keeps the exception type alive.
  static PyObject* error_type = nullptr;
  error_type = py::exception<Error>(m, "LdagError", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type, ("[" + e.code() + "] " + e.what()).c_str());
    }
  });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const std::vector<std::vector<int>>& rows, const std::vector<int>& cardinalities,
                       std::optional<std::vector<std::string>> names) {
             VariableTable vars = names ? VariableTable(*names, cardinalities) : VariableTable::anonymous(cardinalities);
             return Dataset(std::move(vars), rows);
           }),
           py::arg("rows"), py::arg("cardinalities"), py::arg("names") = std::nullopt)
      .def_static("load", &load_dataset, py::arg("path"))
      .def_static("from_csv", [](const std::string& text) {
        std::istringstream in(text);
        return read_dataset(in);
      })
      .def("save", [](const Dataset& d, const std::string& path) { save_dataset(path, d); })
      .def("to_csv", [](const Dataset& d) {
        std::ostringstream out;
        write_dataset(out, d);
        return out.str();
      })
      .def_property_readonly("row_count", &Dataset::row_count)
      .def_property_readonly("column_count", &Dataset::column_count)
      .def_property_readonly("names", [](const Dataset& d) { return d.vars().names(); })
      .def_property_readonly("cardinalities", [](const Dataset& d) { return d.vars().cardinalities(); })
      .def("row", &Dataset::row)
      .def("rows", [](const Dataset& d) {
        std::vector<std::vector<int>> out;
        for (std::size_t i = 0; i < d.row_count(); ++i) out.push_back(d.row(i));
        return out;
      })
      .def("subset", [](const Dataset& d, const std::vector<std::size_t>& idx) { return d.subset(idx); })
      .def("__len__", &Dataset::row_count)
      .def(py::self == py::self);

  py::class_<Ldag>(m, "Ldag")
      .def(py::init([](const std::vector<std::string>& names, const std::vector<int>& cardinalities,
                       const std::vector<std::pair<int, int>>& edges) {
             return Ldag(VariableTable(names, cardinalities), dag_from(static_cast<int>(names.size()), edges));
           }),
           py::arg("names"), py::arg("cardinalities"), py::arg("edges"))
      .def_static("parse", [](const std::string& text, bool strict) { return parse_model(text, {strict}).model; },
                  py::arg("text"), py::arg("strict") = false)
      .def_static("load", [](const std::string& path, bool strict) { return load_model(path, {strict}).model; },
                  py::arg("path"), py::arg("strict") = false)
      .def("serialize", [](const Ldag& l) { return serialize_model(l); })
      .def("save", [](const Ldag& l, const std::string& path) { save_model(path, l); })
      .def("to_dot", &export_dot)
      .def_property_readonly("names", [](const Ldag& l) { return l.vars().names(); })
      .def_property_readonly("cardinalities", [](const Ldag& l) { return l.vars().cardinalities(); })
      .def_property_readonly("node_count", &Ldag::node_count)
      .def_property_readonly("edges", [](const Ldag& l) { return edge_list(l.dag()); })
      .def("parents", [](const Ldag& l, int j) { return l.dag().parents(j); })
      .def_property_readonly("labels",
                             [](const Ldag& l) {
                               std::map<std::pair<int, int>, std::vector<Config>> out;
                               for (const auto& [e, label] : l.labels())
                                 out[{e.from, e.to}] = std::vector<Config>(label.configs.begin(), label.configs.end());
                               return out;
                             })
      .def("set_label",
           [](Ldag& l, int from, int to, const std::vector<Config>& configs) {
             l.set_label({from, to}, std::set<Config>(configs.begin(), configs.end()));
           })
      .def("without_labels", &Ldag::without_labels)
      .def("class_count", [](const Ldag& l, int j) { return build_partition(l, j).class_count(); })
      .def("dimensions",
           [](const Ldag& l) {
             const DimensionReport r = dimensions(l);
             return std::make_pair(r.total_dag_dim, r.total_ldag_dim);
           })
      .def("is_maximal", [](const Ldag& l) { return is_maximal(l).maximal; })
      .def("maximality_witnesses",
           [](const Ldag& l) {
             std::vector<std::pair<std::pair<int, int>, Config>> out;
             for (const auto& w : is_maximal(l).witnesses) out.push_back({{w.edge.from, w.edge.to}, w.config});
             return out;
           })
      .def("make_maximal", &make_maximal)
      .def("is_regular", [](const Ldag& l) { return is_regular(l).regular; })
      .def("regularize", &regularize)
      .def(py::self == py::self)
      .def("__repr__", [](const Ldag& l) {
        return "<Ldag nodes=" + std::to_string(l.node_count()) + " edges=" + std::to_string(l.dag().edge_count()) +
               " labels=" + std::to_string(l.labels().size()) + ">";
      });

  py::class_<CpdSet>(m, "CpdSet")
      .def("distribution", &CpdSet::distribution, py::arg("node"), py::arg("parent_config"))
      .def("theta", [](const CpdSet& c, int j) { return c.nodes.at(static_cast<std::size_t>(j)).theta; });

  m.def(
      "log_score",
      [](const Dataset& data, const Ldag& model, double kappa, double ess, const std::string& prior) {
        return score_dict(log_score(data, model, kappa, ess, parse_prior(prior)));
      },
      py::arg("data"), py::arg("model"), py::arg("kappa"), py::arg("ess") = 1.0, py::arg("prior") = "csi");
  m.def("log_marginal_likelihood",
        [](const Dataset& data, const Ldag& model, double ess) { return log_marginal_likelihood(data, model, ess).total; },
        py::arg("data"), py::arg("model"), py::arg("ess") = 1.0);
  m.def("log_posterior_predictive", &log_posterior_predictive, py::arg("train"), py::arg("test"), py::arg("model"),
        py::arg("ess") = 1.0);

  m.def(
      "learn",
      [](const Dataset& data, double kappa, double ess, int chains, int iterations, std::uint64_t seed,
         std::optional<int> max_parents, const std::string& prior, bool labels, int threads) {
        const SearchConfig cfg = search_config(kappa, ess, chains, iterations, seed, max_parents, prior, labels, threads);
        LearnResult result;
        {
          py::gil_scoped_release release;
          result = learn(data, cfg);
        }
        return py::make_tuple(result.model, score_dict(result.report));
      },
      py::arg("data"), py::arg("kappa") = 0.1, py::arg("ess") = 1.0, py::arg("chains") = 50,
      py::arg("iterations") = 500, py::arg("seed") = 0, py::arg("max_parents") = std::nullopt,
      py::arg("prior") = "csi", py::arg("labels") = true, py::arg("threads") = 1);

  m.def(
      "cross_validate",
      [](const Dataset& data, const std::vector<double>& kappas, int folds, std::uint64_t seed, int chains,
         int iterations, double ess, int threads) {
        CvPlan plan;
        plan.kappas = kappas;
        plan.folds = folds;
        plan.seed = seed;
        plan.search = search_config(0.1, ess, chains, iterations, seed, std::nullopt, "csi", true, threads);
        CvReport report;
        {
          py::gil_scoped_release release;
          report = cross_validate(data, plan);
        }
        py::dict d;
        d["kappas"] = report.kappas;
        d["rho_pred"] = report.rho_pred;
        d["fold_values"] = report.fold_values;
        d["chosen_kappa"] = report.chosen_kappa;
        return d;
      },
      py::arg("data"), py::arg("kappas") = std::vector<double>{0.001, 0.1, 0.3, 0.5}, py::arg("folds") = 10,
      py::arg("seed") = 0, py::arg("chains") = 50, py::arg("iterations") = 500, py::arg("ess") = 1.0,
      py::arg("threads") = 1);

  m.def("d_separated",
        [](const Ldag& model, const NodeSet& a, const NodeSet& b, const NodeSet& s) {
          return d_separated(model.dag(), a, b, s);
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("s") = NodeSet{});
  m.def("csi_separated",
        [](const Ldag& model, const NodeSet& a, const NodeSet& b, const NodeSet& s, const Context& ctx) {
          return csi_separated(model, {a, b, s, ctx});
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("s") = NodeSet{}, py::arg("context") = Context{});
  m.def("ci_by_cases",
        [](const Ldag& model, const NodeSet& a, const NodeSet& b, const NodeSet& s, const NodeSet& c) {
          return ci_by_cases(model, a, b, s, c);
        },
        py::arg("model"), py::arg("a"), py::arg("b"), py::arg("s"), py::arg("c"));
  m.def("csi_equivalent", [](const Ldag& a, const Ldag& b) { return csi_equivalent(a, b); });
  m.def("markov_equivalent", [](const Ldag& a, const Ldag& b) { return markov_equivalent(a.dag(), b.dag()); });

  m.def("estimate_parameters", &estimate_map_parameters, py::arg("data"), py::arg("model"), py::arg("ess") = 1.0);
  m.def(
      "random_parameters",
      [](const Ldag& model, const std::string& mode, std::uint64_t seed) {
        if (mode != "ldag" && mode != "dag") throw InvalidArgument("mode must be 'ldag' or 'dag'");
        return random_cpds(model, mode == "dag" ? CpdMode::Dag : CpdMode::Ldag, seed);
      },
      py::arg("model"), py::arg("mode") = "ldag", py::arg("seed") = 0);
  m.def("sample", &sample, py::arg("params"), py::arg("model"), py::arg("n"), py::arg("seed") = 0);
  m.def("joint_probability",
        [](const CpdSet& params, const Ldag& model, const std::vector<int>& x) { return joint_probability(params, model, x); });
  m.def("kl_divergence",
        [](const CpdSet& p, const Ldag& p_model, const CpdSet& q, const Ldag& q_model) {
          return kl_divergence(p, p_model, q, q_model);
        },
        py::arg("p"), py::arg("p_model"), py::arg("q"), py::arg("q_model"));
}
