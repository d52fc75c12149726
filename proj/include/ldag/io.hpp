#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldag/graph.hpp"
#include "ldag/probability.hpp"
#include "ldag/scoring.hpp"

namespace ldag {

// CSV datasets: optional schema comments `# var <name> <cardinality>`, a
// header row of variable names, then integer-coded rows. Undeclared
// cardinalities are inferred as max(2, largest value + 1).
Dataset read_dataset(std::istream& in, const std::string& source = "<input>");
Dataset load_dataset(const std::string& path);
// Writes the schema comments for every variable so cardinalities round-trip.
void write_dataset(std::ostream& out, const Dataset& data);
void save_dataset(const std::string& path, const Dataset& data);

struct ModelFile {
  Ldag model;
  std::optional<CpdSet> params;
};

struct ParseOptions {
  bool strict = false;  // reject full labels
};

// Text format:
//   ldag v1
//   var <name> <cardinality>
//   edge <parent> <child>
//   label <parent> <child> : (c,...) (c,*) ...
//   param <child> (<parent config>) : p_0 ... p_{r-1}
// Label coordinates follow the other parents of the child in variable
// order; `*` expands to every value. A param line gives the distribution
// of the partition class containing the listed parent configuration.
ModelFile read_model(std::istream& in, const std::string& source = "<input>", ParseOptions options = {});
ModelFile parse_model(const std::string& text, ParseOptions options = {});
ModelFile load_model(const std::string& path, ParseOptions options = {});

void write_model(std::ostream& out, const Ldag& model, const CpdSet* params = nullptr);
std::string serialize_model(const Ldag& model, const CpdSet* params = nullptr);
void save_model(const std::string& path, const Ldag& model, const CpdSet* params = nullptr);

// Label configurations with wildcards for coordinates that take every value
// while the rest agree. Entries equal to -1 stand for `*`.
std::vector<Config> compress_label(const std::set<Config>& configs, const std::vector<int>& domain_cards);
std::string format_config(const Config& pattern);

// Graphviz digraph; labeled edges carry their configurations as edge labels.
std::string export_dot(const Ldag& model);

struct ManifestInput {
  std::string role;
  std::string path;
  std::string sha256;

  bool operator==(const ManifestInput&) const = default;
};

struct RunManifest {
  std::string command;
  std::vector<std::string> args;  // full argument vector after the program name
  std::optional<std::uint64_t> seed;
  std::vector<ManifestInput> inputs;
  std::vector<std::string> outputs;
  std::string version;
  double wall_clock_seconds = 0.0;
  std::optional<double> best_score;

  bool operator==(const RunManifest&) const = default;
};

std::string sha256_file(const std::string& path);
void write_manifest(std::ostream& out, const RunManifest& manifest);
void save_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(std::istream& in, const std::string& source = "<input>");
RunManifest load_manifest(const std::string& path);

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace ldag
