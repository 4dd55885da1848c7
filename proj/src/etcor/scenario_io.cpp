// Copyright 2026 The etcor Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "etcor/scenario_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <variant>
#include <vector>

#include "etcor/error.hpp"

namespace etcor {

namespace {

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<double, bool, std::string, Array> data;
  std::size_t line = 0;
};

struct Entry {
  Value value;
  std::size_t line = 0;
  bool used = false;
};

struct Table {
  std::string name;
  std::size_t line = 0;
  std::map<std::string, Entry> entries;
};

class Parser {
 public:
  explicit Parser(std::string_view text, std::size_t line)
      : text_(text), line_(line) {}

  Value parse_value() {
    skip_space();
    if (pos_ >= text_.size()) fail("missing value");
    const char c = text_[pos_];
    Value v;
    v.line = line_;
    if (c == '[') {
      ++pos_;
      Array items;
      skip_space();
      if (peek() == ']') {
        ++pos_;
        v.data = std::move(items);
        return v;
      }
      for (;;) {
        items.push_back(parse_value());
        skip_space();
        if (peek() == ',') {
          ++pos_;
          skip_space();
          if (peek() == ']') {
            ++pos_;
            break;
          }
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']' in array");
      }
      v.data = std::move(items);
      return v;
    }
    if (c == '"') {
      ++pos_;
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' || text_[pos_] == '\n') {
          fail("escapes and line breaks are not supported in strings");
        }
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      v.data = std::move(s);
      return v;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    const std::string_view tok = text_.substr(start, pos_ - start);
    if (tok == "true" || tok == "false") {
      v.data = tok == "true";
      return v;
    }
    std::string_view num = tok;
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    double d = 0.0;
    const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), d);
    if (tok.empty() || ec != std::errc() || ptr != num.data() + num.size() ||
        !std::isfinite(d)) {
      fail("invalid value '" + std::string(tok) + "'");
    }
    v.data = d;
    return v;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("unexpected text after value");
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  std::string out;
  for (char c : line) {
    if (c == '"') in_string = !in_string;
    if (c == '#' && !in_string) break;
    out += c;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

int bracket_balance(std::string_view s) {
  int depth = 0;
  bool in_string = false;
  for (char c : s) {
    if (c == '"') in_string = !in_string;
    if (in_string) continue;
    if (c == '[') ++depth;
    if (c == ']') --depth;
  }
  return depth;
}

bool valid_key(std::string_view k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

struct Document {
  Table root;
  std::vector<Table> sections;  // [name]
  std::vector<Table> agents;    // [[agent]]
};

Document tokenize(std::string_view text) {
  Document doc;
  doc.root.name = "";
  Table* current = &doc.root;
  std::set<std::string> seen_sections;

  std::vector<std::string> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) {
        lines.emplace_back(text.substr(start));
        break;
      }
      lines.emplace_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    std::string line = trim(strip_comment(lines[i]));
    if (line.empty()) continue;
    if (line.rfind("[[", 0) == 0) {
      if (line.size() < 4 || line.substr(line.size() - 2) != "]]") {
        throw ParseError("malformed table header", lineno);
      }
      const std::string name = trim(line.substr(2, line.size() - 4));
      if (name != "agent") {
        throw ParseError("unknown table array [[" + name + "]]", lineno);
      }
      doc.agents.push_back(Table{name, lineno, {}});
      current = &doc.agents.back();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("malformed section header", lineno);
      const std::string name = trim(line.substr(1, line.size() - 2));
      static const std::set<std::string> known{
          "exosystem", "internal_model", "topology", "controller", "integrator"};
      if (!known.count(name)) {
        throw ParseError("unknown section [" + name + "]", lineno);
      }
      if (!seen_sections.insert(name).second) {
        throw ParseError("duplicate section [" + name + "]", lineno);
      }
      doc.sections.push_back(Table{name, lineno, {}});
      current = &doc.sections.back();
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", lineno);
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    if (!valid_key(key)) throw ParseError("invalid key '" + key + "'", lineno);
    std::string value = trim(std::string_view(line).substr(eq + 1));
    std::size_t j = i;
    while (bracket_balance(value) > 0 && j + 1 < lines.size()) {
      ++j;
      value += "\n" + trim(strip_comment(lines[j]));
    }
    if (bracket_balance(value) != 0) {
      throw ParseError("unbalanced brackets in value of '" + key + "'", lineno);
    }
    Parser p(value, lineno);
    Value v = p.parse_value();
    p.expect_end();
    if (current->entries.count(key)) {
      throw ParseError("duplicate key '" + key + "'", lineno);
    }
    current->entries.emplace(key, Entry{std::move(v), lineno, false});
    i = j;
  }
  return doc;
}

// Typed access to a table. Every read marks the entry as used so unknown
// keys can be reported afterwards.
class Reader {
 public:
  explicit Reader(Table& t) : t_(t) {}

  bool has(const std::string& key) const { return t_.entries.count(key) > 0; }

  std::size_t line_of(const std::string& key) const {
    auto it = t_.entries.find(key);
    return it == t_.entries.end() ? t_.line : it->second.line;
  }

  std::size_t line() const { return t_.line; }

  const Value& get(const std::string& key) {
    auto it = t_.entries.find(key);
    if (it == t_.entries.end()) {
      throw ParseError(where() + "missing key '" + key + "'", t_.line);
    }
    it->second.used = true;
    return it->second.value;
  }

  double number(const std::string& key) {
    return as_number(get(key), key);
  }

  double number_or(const std::string& key, double def) {
    return has(key) ? number(key) : def;
  }

  bool boolean(const std::string& key) {
    const Value& v = get(key);
    if (auto* b = std::get_if<bool>(&v.data)) return *b;
    throw ParseError(where() + "'" + key + "' must be true or false", v.line);
  }

  std::string string(const std::string& key) {
    const Value& v = get(key);
    if (auto* s = std::get_if<std::string>(&v.data)) return *s;
    throw ParseError(where() + "'" + key + "' must be a string", v.line);
  }

  std::size_t count(const std::string& key) {
    const double d = number(key);
    if (d < 0.0 || d != std::floor(d) || d > 1e12) {
      throw ParseError(where() + "'" + key + "' must be a non-negative integer",
                       line_of(key));
    }
    return static_cast<std::size_t>(d);
  }

  std::vector<double> vector(const std::string& key) {
    const Value& v = get(key);
    const auto* arr = std::get_if<Array>(&v.data);
    if (!arr) throw ParseError(where() + "'" + key + "' must be an array", v.line);
    std::vector<double> out;
    for (const auto& item : *arr) out.push_back(as_number(item, key));
    return out;
  }

  std::vector<bool> bool_vector(const std::string& key) {
    const Value& v = get(key);
    const auto* arr = std::get_if<Array>(&v.data);
    if (!arr) throw ParseError(where() + "'" + key + "' must be an array", v.line);
    std::vector<bool> out;
    for (const auto& item : *arr) {
      const auto* b = std::get_if<bool>(&item.data);
      if (!b) {
        throw ParseError(where() + "'" + key + "' must hold booleans",
                         item.line);
      }
      out.push_back(*b);
    }
    return out;
  }

  Matrix matrix(const std::string& key) {
    const Value& v = get(key);
    const auto* rows = std::get_if<Array>(&v.data);
    if (!rows || rows->empty()) {
      throw ParseError(where() + "'" + key + "' must be a nested array",
                       v.line);
    }
    std::vector<double> data;
    std::size_t cols = 0;
    for (const auto& r : *rows) {
      const auto* row = std::get_if<Array>(&r.data);
      if (!row || row->empty()) {
        throw ParseError(where() + "'" + key + "' rows must be arrays", r.line);
      }
      if (cols == 0) cols = row->size();
      if (row->size() != cols) {
        throw ParseError(where() + "'" + key + "' has ragged rows", r.line);
      }
      for (const auto& item : *row) data.push_back(as_number(item, key));
    }
    return Matrix(rows->size(), cols, std::move(data));
  }

  void reject_unused() const {
    for (const auto& [key, e] : t_.entries) {
      if (!e.used) throw ParseError(where() + "unknown key '" + key + "'", e.line);
    }
  }

 private:
  std::string where() const {
    return t_.name.empty() ? std::string() : "[" + t_.name + "] ";
  }

  double as_number(const Value& v, const std::string& key) const {
    if (auto* d = std::get_if<double>(&v.data)) return *d;
    throw ParseError(where() + "'" + key + "' must hold numbers", v.line);
  }

  Table& t_;
};

// Controller keys shared by [controller] and [[agent]] tables.
struct ControllerDefaults {
  ControllerParams params;
  std::optional<std::vector<double>> psi_hat0;
  double gain0 = 10.0;
  double trigger_var0 = 1.0;
};

void read_controller(Reader& r, ControllerDefaults& c) {
  if (r.has("mode")) {
    const std::string m = r.string("mode");
    auto mode = parse_trigger_mode(m);
    if (!mode) throw ParseError("unknown mode '" + m + "'", r.line_of("mode"));
    c.params.mode = *mode;
  }
  c.params.gamma = r.number_or("gamma", c.params.gamma);
  c.params.delta = r.number_or("delta", c.params.delta);
  c.params.kappa = r.number_or("kappa", c.params.kappa);
  c.params.beta = r.number_or("beta", c.params.beta);
  c.params.alpha = r.number_or("alpha", c.params.alpha);
  c.params.period = r.number_or("period", c.params.period);
  if (r.has("sampled_adaptation")) {
    c.params.sampled_adaptation = r.boolean("sampled_adaptation");
  }
  if (r.has("psi_adapt")) c.params.adapt_mask = r.bool_vector("psi_adapt");
  c.gain0 = r.number_or("K0", c.gain0);
  c.trigger_var0 = r.number_or("h0", c.trigger_var0);
  if (r.has("psi_hat0")) c.psi_hat0 = r.vector("psi_hat0");
}

Table* find_section(Document& doc, const std::string& name) {
  for (auto& t : doc.sections) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

Table& require_section(Document& doc, const std::string& name) {
  Table* t = find_section(doc, name);
  if (!t) throw ParseError("missing section [" + name + "]");
  return *t;
}

template <typename F>
auto at_line(std::size_t line, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
  Document doc = tokenize(text);
  Scenario s;

  Reader root(doc.root);
  const std::string schema = root.string("schema");
  if (schema != kScenarioSchema) {
    throw ParseError("unsupported schema '" + schema + "'",
                     root.line_of("schema"));
  }
  s.name = root.has("name") ? root.string("name") : std::string();
  root.reject_unused();

  {
    Reader r(require_section(doc, "exosystem"));
    at_line(r.line(), [&] {
      if (r.has("S")) {
        s.exosystem.S = r.matrix("S");
        s.exosystem.sigma = r.number_or("sigma", 0.0);
        s.exosystem.F = r.has("F") ? Matrix::row(r.vector("F")) : Matrix();
        if (s.exosystem.F.empty()) {
          throw ParseError("[exosystem] 'F' is required with 'S'", r.line());
        }
      } else {
        s.exosystem = Exosystem::harmonic(r.number("sigma"));
        if (r.has("F")) s.exosystem.F = Matrix::row(r.vector("F"));
      }
      return 0;
    });
    s.v0 = r.vector("v0");
    r.reject_unused();
  }

  {
    Reader r(require_section(doc, "internal_model"));
    at_line(r.line(), [&] {
      s.internal_model =
          InternalModelPair(r.matrix("M"), Matrix::column(r.vector("Q")));
      return 0;
    });
    r.reject_unused();
  }

  {
    Reader r(require_section(doc, "topology"));
    const std::size_t n = r.count("agents");
    const Value& ev = r.get("edges");
    const auto* arr = std::get_if<Array>(&ev.data);
    if (!arr) throw ParseError("[topology] 'edges' must be an array", ev.line);
    std::vector<Edge> edges;
    for (const auto& item : *arr) {
      const auto* pair = std::get_if<Array>(&item.data);
      const double* a = pair && pair->size() == 2
                            ? std::get_if<double>(&(*pair)[0].data)
                            : nullptr;
      const double* b = pair && pair->size() == 2
                            ? std::get_if<double>(&(*pair)[1].data)
                            : nullptr;
      if (!a || !b || *a < 0 || *b < 0 || *a != std::floor(*a) ||
          *b != std::floor(*b)) {
        throw ParseError("[topology] edges must be [from, to] index pairs",
                         item.line);
      }
      edges.push_back(
          {static_cast<std::size_t>(*a), static_cast<std::size_t>(*b)});
    }
    s.topology = at_line(r.line_of("edges"),
                         [&] { return Topology(n, std::move(edges)); });
    r.reject_unused();
  }

  ControllerDefaults defaults;
  if (Table* t = find_section(doc, "controller")) {
    Reader r(*t);
    read_controller(r, defaults);
    r.reject_unused();
  }

  if (Table* t = find_section(doc, "integrator")) {
    Reader r(*t);
    s.integrator.dt = r.number_or("dt", s.integrator.dt);
    s.integrator.horizon = r.number_or("horizon", s.integrator.horizon);
    if (r.has("decimate")) s.integrator.decimate = r.count("decimate");
    r.reject_unused();
  }

  const std::size_t q = s.exosystem.dim();
  const std::size_t l = s.internal_model.dim();
  for (auto& t : doc.agents) {
    Reader r(t);
    AgentSetup a;
    at_line(r.line(), [&] {
      if (r.has("family")) {
        const std::string name = r.string("family");
        auto fam = parse_agent_family(name);
        if (!fam) {
          throw ParseError("unknown agent family '" + name + "'",
                           r.line_of("family"));
        }
        AgentFamilySpec spec;
        spec.family = *fam;
        if (r.has("c_nominal")) {
          const auto c = r.vector("c_nominal");
          if (c.size() != 4) {
            throw ParseError("'c_nominal' needs 4 entries",
                             r.line_of("c_nominal"));
          }
          std::copy(c.begin(), c.end(), spec.nominal.begin());
        }
        const auto w = r.vector("w");
        if (w.size() != 4) throw ParseError("'w' needs 4 entries", r.line_of("w"));
        std::copy(w.begin(), w.end(), spec.w.begin());
        a.plant = make_family_agent(spec.family, spec.nominal, spec.w, q);
        a.family = spec;
      } else {
        Matrix A = r.matrix("A");
        Matrix B = Matrix::column(r.vector("B"));
        const std::size_t n = A.rows();
        Matrix C;
        if (r.has("C")) {
          C = Matrix::row(r.vector("C"));
        } else {
          C = Matrix(1, n, 0.0);
          C(0, n - 1) = 1.0;
        }
        Matrix E = r.has("E") ? r.matrix("E") : Matrix(n, q, 0.0);
        a.plant = AgentPlant(std::move(A), std::move(B), std::move(C),
                             std::move(E));
      }
      return 0;
    });
    ControllerDefaults c = defaults;
    read_controller(r, c);
    a.params = c.params;
    a.init.x0 = r.vector("x0");
    a.init.eta0 = r.has("eta0") ? r.vector("eta0") : std::vector<double>(l, 0.0);
    a.init.psi_hat0 = c.psi_hat0.value_or(std::vector<double>(l, 0.0));
    a.init.gain0 = c.gain0;
    a.init.trigger_var0 = c.trigger_var0;
    r.reject_unused();
    s.agents.push_back(std::move(a));
  }

  try {
    s.validate();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  std::string s(buf, ptr);
  // Keep a decimal point so integers read back as numbers of the same kind.
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace {

std::string fmt_vector(std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return s + "]";
}

std::string fmt_matrix(const Matrix& m) {
  std::string s = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (r) s += ", ";
    s += fmt_vector(m.row_span(r));
  }
  return s + "]";
}

std::string fmt_bools(const std::vector<bool>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i] ? "true" : "false";
  }
  return s + "]";
}

std::string quoted(std::string_view s) { return "\"" + std::string(s) + "\""; }

}  // namespace

std::string to_text(const Scenario& s) {
  std::ostringstream o;
  o << "schema = " << quoted(kScenarioSchema) << "\n";
  o << "name = " << quoted(s.name) << "\n\n";

  o << "[exosystem]\n";
  o << "sigma = " << format_double(s.exosystem.sigma) << "\n";
  if (s.exosystem.S != Exosystem::harmonic(s.exosystem.sigma).S) {
    o << "S = " << fmt_matrix(s.exosystem.S) << "\n";
  }
  o << "F = " << fmt_vector(s.exosystem.F.data()) << "\n";
  o << "v0 = " << fmt_vector(s.v0) << "\n\n";

  o << "[internal_model]\n";
  o << "M = " << fmt_matrix(s.internal_model.M()) << "\n";
  o << "Q = " << fmt_vector(s.internal_model.Q().data()) << "\n\n";

  o << "[topology]\n";
  o << "agents = " << s.topology.agent_count() << "\n";
  o << "edges = [";
  for (std::size_t i = 0; i < s.topology.edges().size(); ++i) {
    const Edge& e = s.topology.edges()[i];
    if (i) o << ", ";
    o << "[" << e.from << ", " << e.to << "]";
  }
  o << "]\n\n";

  o << "[integrator]\n";
  o << "dt = " << format_double(s.integrator.dt) << "\n";
  o << "horizon = " << format_double(s.integrator.horizon) << "\n";
  o << "decimate = " << s.integrator.decimate << "\n";

  for (const auto& a : s.agents) {
    o << "\n[[agent]]\n";
    const bool family =
        a.family && a.plant == make_family_agent(a.family->family,
                                                 a.family->nominal,
                                                 a.family->w, s.exosystem.dim());
    if (family) {
      o << "family = " << quoted(agent_family_name(a.family->family)) << "\n";
      o << "c_nominal = " << fmt_vector(a.family->nominal) << "\n";
      o << "w = " << fmt_vector(a.family->w) << "\n";
    } else {
      o << "A = " << fmt_matrix(a.plant.A()) << "\n";
      o << "B = " << fmt_vector(a.plant.B().data()) << "\n";
      o << "C = " << fmt_vector(a.plant.C().data()) << "\n";
      o << "E = " << fmt_matrix(a.plant.E()) << "\n";
    }
    o << "x0 = " << fmt_vector(a.init.x0) << "\n";
    o << "eta0 = " << fmt_vector(a.init.eta0) << "\n";
    o << "psi_hat0 = " << fmt_vector(a.init.psi_hat0) << "\n";
    o << "K0 = " << format_double(a.init.gain0) << "\n";
    o << "h0 = " << format_double(a.init.trigger_var0) << "\n";
    const auto& p = a.params;
    o << "mode = " << quoted(trigger_mode_name(p.mode)) << "\n";
    o << "gamma = " << format_double(p.gamma) << "\n";
    o << "delta = " << format_double(p.delta) << "\n";
    o << "kappa = " << format_double(p.kappa) << "\n";
    o << "beta = " << format_double(p.beta) << "\n";
    o << "alpha = " << format_double(p.alpha) << "\n";
    o << "period = " << format_double(p.period) << "\n";
    if (!p.adapt_mask.empty()) {
      o << "psi_adapt = " << fmt_bools(p.adapt_mask) << "\n";
    }
    o << "sampled_adaptation = " << (p.sampled_adaptation ? "true" : "false")
      << "\n";
  }
  return o.str();
}

std::uint64_t scenario_hash(const Scenario& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : to_text(s)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace etcor
