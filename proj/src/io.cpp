#include "ldag/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "ldag/error.hpp"
#include "ldag/radix.hpp"

namespace ldag {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  return out;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <class T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

// Reads one line-oriented record at a time with 1-based column tracking.
class Cursor {
 public:
  Cursor(std::string_view text, std::string source, std::size_t line)
      : text_(text), source_(std::move(source)), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_space();
    return pos_ == text_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::string word(const char* what) {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && std::string_view("(),:").find(text_[pos_]) == std::string_view::npos)
      ++pos_;
    if (start == pos_) fail("expected " + std::string(what), start);
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  void expect_end() {
    if (!at_end()) fail("unexpected trailing text", pos_);
  }

  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw ParseError(source_, line_, at + 1, message);
  }
  [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

 private:
  std::string_view text_;
  std::string source_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

bool valid_token(const std::string& name) {
  if (name.empty()) return false;
  for (char c : name)
    if (is_space(c) || c == '\n' || std::string_view("(),:#*").find(c) != std::string_view::npos) return false;
  return true;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc()) throw InvalidArgument("cannot format number");
  return std::string(buffer.data(), ptr);
}

// ---------------------------------------------------------------- datasets

Dataset read_dataset(std::istream& in, const std::string& source) {
  std::map<std::string, std::pair<int, std::size_t>> declared;  // name -> (card, line)
  std::vector<std::string> names;
  std::vector<std::vector<int>> rows;
  std::vector<std::size_t> row_lines;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      Cursor cur(line, source, line_no);
      cur.expect('#');
      if (cur.at_end()) continue;
      if (cur.word("keyword") != "var") continue;
      if (have_header) cur.fail("schema declarations must precede the header row");
      const std::size_t name_col = cur.column();
      const std::string name = cur.word("variable name");
      const std::size_t card_col = cur.column();
      const auto card = parse_number<int>(cur.word("cardinality"));
      if (!card || *card < 2) cur.fail("cardinality must be an integer >= 2", card_col - 1);
      cur.expect_end();
      if (!declared.emplace(name, std::make_pair(*card, line_no)).second)
        cur.fail("variable '" + name + "' declared twice", name_col - 1);
      continue;
    }

    std::vector<std::pair<std::string_view, std::size_t>> cells;  // text, column
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      const std::size_t end = comma == std::string::npos ? line.size() : comma;
      std::size_t first = start;
      while (first < end && is_space(line[first])) ++first;
      cells.emplace_back(trim(std::string_view(line).substr(start, end - start)), first + 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    if (!have_header) {
      for (const auto& [cell, col] : cells) {
        if (cell.empty()) throw ParseError(source, line_no, col, "empty column name");
        names.emplace_back(cell);
      }
      for (std::size_t a = 0; a < names.size(); ++a)
        for (std::size_t b = a + 1; b < names.size(); ++b)
          if (names[a] == names[b])
            throw ParseError(source, line_no, cells[b].second, "duplicate column name '" + names[b] + "'");
      have_header = true;
      continue;
    }

    if (cells.size() != names.size())
      throw ParseError(source, line_no, 1,
                       "expected " + std::to_string(names.size()) + " values, found " + std::to_string(cells.size()));
    std::vector<int> row;
    for (const auto& [cell, col] : cells) {
      const auto value = parse_number<int>(cell);
      if (!value) throw ParseError(source, line_no, col, "not an integer: '" + std::string(cell) + "'");
      if (*value < 0)
        throw ValueOutOfRange(source + ":" + std::to_string(line_no) + ":" + std::to_string(col) + ": negative value " +
                              std::to_string(*value));
      row.push_back(*value);
    }
    rows.push_back(std::move(row));
    row_lines.push_back(line_no);
  }
  if (!have_header) throw ParseError(source, line_no + 1, 1, "missing header row");

  for (const auto& [name, info] : declared)
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw ParseError(source, info.second, 1, "declared variable '" + name + "' is not a column");

  std::vector<int> cards(names.size(), 2);
  for (std::size_t j = 0; j < names.size(); ++j) {
    const auto it = declared.find(names[j]);
    if (it != declared.end()) {
      cards[j] = it->second.first;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][j] >= cards[j])
          throw ValueOutOfRange(source + ":" + std::to_string(row_lines[i]) + ": value " + std::to_string(rows[i][j]) +
                                " exceeds declared cardinality " + std::to_string(cards[j]) + " of " + names[j]);
    } else {
      for (const auto& row : rows) cards[j] = std::max(cards[j], row[j] + 1);
    }
  }
  return Dataset(VariableTable(names, cards), rows);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_dataset(in, path);
}

void write_dataset(std::ostream& out, const Dataset& data) {
  const VariableTable& vars = data.vars();
  for (NodeId j = 0; j < vars.size(); ++j) out << "# var " << vars.name(j) << ' ' << vars.cardinality(j) << '\n';
  for (NodeId j = 0; j < vars.size(); ++j) out << (j ? "," : "") << vars.name(j);
  out << '\n';
  for (std::size_t i = 0; i < data.row_count(); ++i) {
    for (NodeId j = 0; j < vars.size(); ++j) out << (j ? "," : "") << data.at(i, j);
    out << '\n';
  }
}

void save_dataset(const std::string& path, const Dataset& data) {
  std::ofstream out = open_output(path);
  write_dataset(out, data);
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

// ---------------------------------------------------------------- models

namespace {

// "(" value ("," value)* ")" with `*` allowed when wildcards is true (-1).
Config parse_config(Cursor& cur, bool wildcards) {
  cur.expect('(');
  Config values;
  if (cur.peek() == ')') {
    cur.expect(')');
    return values;
  }
  for (;;) {
    const std::size_t col = cur.column();
    const std::string token = cur.word("value");
    if (token == "*") {
      if (!wildcards) cur.fail("wildcard not allowed here", col - 1);
      values.push_back(-1);
    } else {
      const auto value = parse_number<int>(token);
      if (!value || *value < 0) cur.fail("expected a non-negative integer, got '" + token + "'", col - 1);
      values.push_back(*value);
    }
    if (cur.peek() == ',') {
      cur.expect(',');
      continue;
    }
    cur.expect(')');
    return values;
  }
}

void expand_pattern(const Config& pattern, const std::vector<int>& cards, std::size_t k, Config& current,
                    std::set<Config>& out) {
  if (k == pattern.size()) {
    out.insert(current);
    return;
  }
  if (pattern[k] >= 0) {
    current[k] = pattern[k];
    expand_pattern(pattern, cards, k + 1, current, out);
    return;
  }
  for (int v = 0; v < cards[k]; ++v) {
    current[k] = v;
    expand_pattern(pattern, cards, k + 1, current, out);
  }
}

struct PendingLabel {
  Edge edge;
  std::vector<std::pair<Config, std::size_t>> patterns;  // pattern, column
  std::size_t line;
};

struct PendingParam {
  NodeId child;
  Config config;
  std::vector<double> values;
  std::size_t line;
  std::size_t column;
};

}  // namespace

ModelFile read_model(std::istream& in, const std::string& source, ParseOptions options) {
  std::vector<std::string> names;
  std::vector<int> cards;
  std::vector<Edge> edges;
  std::map<Edge, std::size_t> edge_lines;
  std::vector<PendingLabel> labels;
  std::vector<PendingParam> params;
  bool have_header = false;

  std::string line;
  std::size_t line_no = 0;
  const auto lookup = [&](Cursor& cur) {
    const std::size_t col = cur.column();
    const std::string name = cur.word("variable name");
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) cur.fail("undeclared variable '" + name + "'", col - 1);
    return static_cast<NodeId>(it - names.begin());
  };

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;
    Cursor cur(line, source, line_no);
    const std::size_t keyword_col = cur.column();
    const std::string keyword = cur.word("keyword");
    if (!have_header) {
      if (keyword != "ldag") cur.fail("expected header 'ldag v1'", keyword_col - 1);
      const std::string version = cur.word("version");
      if (version != "v1") cur.fail("unsupported format version '" + version + "'");
      cur.expect_end();
      have_header = true;
      continue;
    }
    if (keyword == "var") {
      if (!edges.empty()) cur.fail("variables must be declared before edges", keyword_col - 1);
      const std::size_t col = cur.column();
      std::string name = cur.word("variable name");
      if (!valid_token(name)) cur.fail("invalid variable name '" + name + "'", col - 1);
      if (std::find(names.begin(), names.end(), name) != names.end())
        cur.fail("variable '" + name + "' declared twice", col - 1);
      const std::size_t card_col = cur.column();
      const auto card = parse_number<int>(cur.word("cardinality"));
      if (!card || *card < 2) cur.fail("cardinality must be an integer >= 2", card_col - 1);
      cur.expect_end();
      names.push_back(std::move(name));
      cards.push_back(*card);
    } else if (keyword == "edge") {
      const std::size_t col = cur.column();
      const NodeId from = lookup(cur);
      const NodeId to = lookup(cur);
      cur.expect_end();
      if (from == to) cur.fail("self loop on '" + names[static_cast<std::size_t>(from)] + "'", col - 1);
      if (!edge_lines.emplace(Edge{from, to}, line_no).second) cur.fail("duplicate edge", col - 1);
      edges.push_back({from, to});
    } else if (keyword == "label") {
      const std::size_t col = cur.column();
      const NodeId from = lookup(cur);
      const NodeId to = lookup(cur);
      if (!edge_lines.count(Edge{from, to})) cur.fail("label on undeclared edge", col - 1);
      for (const auto& pending : labels)
        if (pending.edge == Edge{from, to}) cur.fail("second label on the same edge", col - 1);
      cur.expect(':');
      PendingLabel pending{{from, to}, {}, line_no};
      while (!cur.at_end()) {
        const std::size_t config_col = cur.column();
        pending.patterns.emplace_back(parse_config(cur, true), config_col);
      }
      if (pending.patterns.empty()) cur.fail("label lists no configurations");
      labels.push_back(std::move(pending));
    } else if (keyword == "param") {
      const NodeId child = lookup(cur);
      const std::size_t config_col = cur.column();
      PendingParam pending{child, parse_config(cur, false), {}, line_no, config_col};
      cur.expect(':');
      while (!cur.at_end()) {
        const std::size_t col = cur.column();
        const auto value = parse_number<double>(cur.word("probability"));
        if (!value) cur.fail("expected a probability", col - 1);
        pending.values.push_back(*value);
      }
      params.push_back(std::move(pending));
    } else {
      cur.fail("unknown keyword '" + keyword + "'", keyword_col - 1);
    }
  }
  if (!have_header) throw ParseError(source, line_no + 1, 1, "missing header 'ldag v1'");

  const auto where = [&](std::size_t at) { return source + ":" + std::to_string(at) + ": "; };
  VariableTable vars(names, cards);
  Dag dag(static_cast<int>(names.size()));
  for (const Edge& e : edges) dag.add_edge(e.from, e.to);
  try {
    validate_acyclic(dag);
  } catch (const CycleError& err) {
    std::string path;
    for (NodeId v : err.cycle()) path += (path.empty() ? "" : " -> ") + names[static_cast<std::size_t>(v)];
    throw InvariantViolation("model graph has a directed cycle: " + path);
  }

  Ldag model(vars, dag);
  for (const auto& pending : labels) {
    const std::vector<NodeId> domain = model.label_domain(pending.edge);
    if (domain.empty())
      throw InvariantViolation(where(pending.line) + "label on an edge into a node with a single parent");
    std::vector<int> domain_cards;
    for (NodeId v : domain) domain_cards.push_back(vars.cardinality(v));
    std::set<Config> configs;
    for (const auto& [pattern, col] : pending.patterns) {
      if (pattern.size() != domain.size())
        throw InvariantViolation(where(pending.line) + "label config has " + std::to_string(pattern.size()) +
                                 " coordinates, expected " + std::to_string(domain.size()));
      for (std::size_t k = 0; k < pattern.size(); ++k)
        if (pattern[k] >= domain_cards[k])
          throw InvariantViolation(where(pending.line) + "label value " + std::to_string(pattern[k]) +
                                   " out of range for " + vars.name(domain[k]));
      Config current(pattern.size(), 0);
      expand_pattern(pattern, domain_cards, 0, current, configs);
    }
    const std::size_t domain_size = checked_product(domain_cards, std::size_t{1} << 40);
    if (options.strict && configs.size() == domain_size)
      throw InvariantViolation(where(pending.line) + "label covers its whole domain (vacuous edge)");
    model.set_label(pending.edge, std::move(configs));
  }

  ModelFile file{model, std::nullopt};
  if (!params.empty()) {
    CpdSet cpds;
    std::vector<std::vector<char>> given;
    for (NodeId j = 0; j < model.node_count(); ++j) {
      NodeCpd cpd;
      cpd.partition = build_partition(model, j);
      cpd.theta.assign(cpd.partition.class_count(), {});
      given.emplace_back(cpd.partition.class_count(), 0);
      cpds.nodes.push_back(std::move(cpd));
    }
    for (const auto& p : params) {
      NodeCpd& cpd = cpds.nodes[static_cast<std::size_t>(p.child)];
      const auto& radix = cpd.partition.radix;
      if (p.config.size() != radix.arity())
        throw ParseError(source, p.line, p.column,
                         "parent configuration has " + std::to_string(p.config.size()) + " values, expected " +
                             std::to_string(radix.arity()));
      for (std::size_t k = 0; k < p.config.size(); ++k)
        if (p.config[k] >= radix.cardinalities()[k])
          throw ParseError(source, p.line, p.column, "parent value out of range");
      const auto l = static_cast<std::size_t>(cpd.partition.class_of[radix.encode(p.config)]);
      if (given[static_cast<std::size_t>(p.child)][l])
        throw ParseError(source, p.line, p.column, "parameters for this partition class are already given");
      if (static_cast<int>(p.values.size()) != vars.cardinality(p.child))
        throw ParseError(source, p.line, p.column,
                         "expected " + std::to_string(vars.cardinality(p.child)) + " probabilities");
      given[static_cast<std::size_t>(p.child)][l] = 1;
      cpd.theta[l] = p.values;
    }
    for (NodeId j = 0; j < model.node_count(); ++j)
      for (std::size_t l = 0; l < given[static_cast<std::size_t>(j)].size(); ++l)
        if (!given[static_cast<std::size_t>(j)][l])
          throw ParseError(source, line_no, 1, "missing parameters for a partition class of " + vars.name(j));
    try {
      validate(cpds, model);
    } catch (const InvalidArgument& err) {
      throw InvariantViolation(source + ": " + err.what());
    }
    file.params = std::move(cpds);
  }
  return file;
}

ModelFile parse_model(const std::string& text, ParseOptions options) {
  std::istringstream in(text);
  return read_model(in, "<string>", options);
}

ModelFile load_model(const std::string& path, ParseOptions options) {
  std::ifstream in = open_input(path);
  return read_model(in, path, options);
}

std::vector<Config> compress_label(const std::set<Config>& configs, const std::vector<int>& domain_cards) {
  std::set<Config> patterns = configs;
  for (std::size_t k = domain_cards.size(); k-- > 0;) {
    // Group by everything except coordinate k.
    std::map<Config, std::vector<int>> groups;
    for (const Config& p : patterns) {
      Config key = p;
      key[k] = -2;
      groups[key].push_back(p[k]);
    }
    std::set<Config> next;
    for (auto& [key, values] : groups) {
      const bool complete = static_cast<int>(values.size()) == domain_cards[k] &&
                            std::find(values.begin(), values.end(), -1) == values.end();
      if (complete) {
        Config merged = key;
        merged[k] = -1;
        next.insert(merged);
      } else {
        for (int v : values) {
          Config p = key;
          p[k] = v;
          next.insert(p);
        }
      }
    }
    patterns = std::move(next);
  }
  return {patterns.begin(), patterns.end()};
}

std::string format_config(const Config& pattern) {
  std::string out = "(";
  for (std::size_t k = 0; k < pattern.size(); ++k) {
    if (k) out += ',';
    out += pattern[k] < 0 ? std::string("*") : std::to_string(pattern[k]);
  }
  return out + ")";
}

void write_model(std::ostream& out, const Ldag& model, const CpdSet* params) {
  const VariableTable& vars = model.vars();
  for (const auto& name : vars.names())
    if (!valid_token(name)) throw InvalidArgument("variable name '" + name + "' cannot be written to a model file");
  out << "ldag v1\n";
  for (NodeId j = 0; j < vars.size(); ++j) out << "var " << vars.name(j) << ' ' << vars.cardinality(j) << '\n';
  for (const Edge& e : model.dag().edges()) out << "edge " << vars.name(e.from) << ' ' << vars.name(e.to) << '\n';
  for (const auto& [edge, label] : model.labels()) {
    std::vector<int> cards;
    for (NodeId v : label.domain) cards.push_back(vars.cardinality(v));
    out << "label " << vars.name(edge.from) << ' ' << vars.name(edge.to) << " :";
    for (const Config& pattern : compress_label(label.configs, cards)) out << ' ' << format_config(pattern);
    out << '\n';
  }
  if (params) {
    validate(*params, model);
    for (NodeId j = 0; j < vars.size(); ++j) {
      const NodeCpd& cpd = params->nodes[static_cast<std::size_t>(j)];
      for (std::size_t l = 0; l < cpd.partition.class_count(); ++l) {
        out << "param " << vars.name(j) << ' ' << format_config(cpd.partition.decode(cpd.partition.classes[l].front()))
            << " :";
        for (double p : cpd.theta[l]) out << ' ' << format_double(p);
        out << '\n';
      }
    }
  }
}

std::string serialize_model(const Ldag& model, const CpdSet* params) {
  std::ostringstream out;
  write_model(out, model, params);
  return out.str();
}

void save_model(const std::string& path, const Ldag& model, const CpdSet* params) {
  std::ofstream out = open_output(path);
  write_model(out, model, params);
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

// ---------------------------------------------------------------- DOT

namespace {

std::string dot_quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string export_dot(const Ldag& model) {
  const VariableTable& vars = model.vars();
  std::ostringstream out;
  out << "digraph ldag {\n";
  for (NodeId j = 0; j < vars.size(); ++j) out << "  n" << j << " [label=" << dot_quote(vars.name(j)) << "];\n";
  for (const Edge& e : model.dag().edges()) {
    out << "  n" << e.from << " -> n" << e.to;
    if (const Label* label = model.label(e)) {
      std::vector<int> cards;
      for (NodeId v : label->domain) cards.push_back(vars.cardinality(v));
      std::string text;
      for (const Config& pattern : compress_label(label->configs, cards))
        text += (text.empty() ? "" : " ") + format_config(pattern);
      out << " [label=" << dot_quote(text) << "]";
    }
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

// ---------------------------------------------------------------- manifests

std::string sha256_file(const std::string& path) {
  std::ifstream in = open_input(path);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw InvalidArgument("SHA-256 unavailable");
  }
  std::array<char, 1 << 16> buffer{};
  while (in) {
    in.read(buffer.data(), buffer.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &length);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  out << "ldag-manifest v1\n";
  out << "command " << m.command << '\n';
  for (const auto& arg : m.args) {
    if (arg.find('\n') != std::string::npos) throw InvalidArgument("manifest arguments cannot contain newlines");
    out << "arg " << arg << '\n';
  }
  if (m.seed) out << "seed " << *m.seed << '\n';
  for (const auto& input : m.inputs) out << "input " << input.role << ' ' << input.sha256 << ' ' << input.path << '\n';
  for (const auto& output : m.outputs) out << "output " << output << '\n';
  out << "version " << m.version << '\n';
  out << "wall_clock_seconds " << format_double(m.wall_clock_seconds) << '\n';
  if (m.best_score) out << "best_score " << format_double(*m.best_score) << '\n';
}

void save_manifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream out = open_output(path);
  write_manifest(out, manifest);
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

RunManifest read_manifest(std::istream& in, const std::string& source) {
  RunManifest m;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!have_header) {
      if (line != "ldag-manifest v1") throw ParseError(source, line_no, 1, "expected header 'ldag-manifest v1'");
      have_header = true;
      continue;
    }
    if (line.empty()) continue;
    const std::size_t space = line.find(' ');
    const std::string key = line.substr(0, space);
    const std::string rest = space == std::string::npos ? "" : line.substr(space + 1);
    const std::size_t value_col = space == std::string::npos ? line.size() + 1 : space + 2;
    if (key == "command") {
      m.command = rest;
    } else if (key == "arg") {
      m.args.push_back(rest);
    } else if (key == "seed") {
      const auto seed = parse_number<std::uint64_t>(rest);
      if (!seed) throw ParseError(source, line_no, value_col, "invalid seed");
      m.seed = *seed;
    } else if (key == "input") {
      const std::size_t a = rest.find(' ');
      const std::size_t b = a == std::string::npos ? a : rest.find(' ', a + 1);
      if (b == std::string::npos) throw ParseError(source, line_no, value_col, "expected '<role> <sha256> <path>'");
      m.inputs.push_back({rest.substr(0, a), rest.substr(b + 1), rest.substr(a + 1, b - a - 1)});
    } else if (key == "output") {
      m.outputs.push_back(rest);
    } else if (key == "version") {
      m.version = rest;
    } else if (key == "wall_clock_seconds") {
      const auto value = parse_number<double>(rest);
      if (!value) throw ParseError(source, line_no, value_col, "invalid number");
      m.wall_clock_seconds = *value;
    } else if (key == "best_score") {
      const auto value = parse_number<double>(rest);
      if (!value) throw ParseError(source, line_no, value_col, "invalid number");
      m.best_score = *value;
    } else {
      throw ParseError(source, line_no, 1, "unknown manifest key '" + key + "'");
    }
  }
  if (!have_header) throw ParseError(source, 1, 1, "empty manifest");
  if (m.command.empty()) throw ParseError(source, line_no, 1, "manifest has no command");
  return m;
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_manifest(in, path);
}

}  // namespace ldag
