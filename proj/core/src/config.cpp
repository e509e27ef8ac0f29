#include "ppa/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ppa/csv.hpp"

namespace ppa {
namespace {

struct Entry {
  std::string value;
  std::size_t line;
};

struct Section {
  std::size_t line = 0;
  std::map<std::string, Entry> entries;
};

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"problem", {"kind", "center", "weight", "radius", "lo", "hi", "matrix", "zero", "target"}},
      {"start", {"u", "z0"}},
      {"schedule", {"lambda", "gamma", "c", "error"}},
      {"moduli", {"a", "c", "Cmaj", "ell", "L", "Gamma", "E", "N1", "N2", "N3", "nu"}},
      {"run", {"horizon", "k", "f", "budget_bits", "budget_calls", "validate"}},
  };
  return s;
}

const std::map<std::string, std::set<std::string>>& kind_keys() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"quadratic_prox", {"center", "weight"}},
      {"ball_projection", {"center", "radius"}},
      {"box_projection", {"lo", "hi"}},
      {"linear_psd", {"matrix"}},
      {"rotation2d", {}},
  };
  return s;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a real number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v))
    throw std::invalid_argument("not a real number: '" + text + "'");
  return v;
}

Point parse_point(const std::string& text) {
  std::vector<double> coords;
  for (const auto& part : split(text, ',')) coords.push_back(parse_real(part));
  return Point(std::move(coords));
}

std::size_t parse_size(const std::string& text) {
  const auto v = to_u64(parse_natural(text));
  if (!v) throw std::invalid_argument("number too large: '" + text + "'");
  return static_cast<std::size_t>(*v);
}

std::vector<std::size_t> parse_k_list(const std::string& text) {
  std::vector<std::size_t> ks;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const std::size_t lo = parse_size(std::string(trim(text.substr(0, dots))));
    const std::size_t hi = parse_size(std::string(trim(text.substr(dots + 2))));
    if (lo > hi) throw std::invalid_argument("empty k range '" + text + "'");
    for (std::size_t k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
  }
  for (const auto& part : split(text, ',')) ks.push_back(parse_size(part));
  return ks;
}

std::string k_list_string(const std::vector<std::size_t>& ks) {
  bool contiguous = ks.size() > 1;
  for (std::size_t i = 1; i < ks.size(); ++i) contiguous = contiguous && ks[i] == ks[i - 1] + 1;
  if (contiguous) return std::to_string(ks.front()) + ".." + std::to_string(ks.back());
  std::string s;
  for (std::size_t i = 0; i < ks.size(); ++i) s += (i ? ", " : "") + std::to_string(ks[i]);
  return s;
}

class Parser {
 public:
  explicit Parser(const std::string& text) { read(text); }

  ExperimentConfig interpret() {
    ExperimentConfig c;
    for (const char* name : {"problem", "start", "schedule", "moduli"})
      if (!sections_.count(name)) error(0, std::string("missing section [") + name + "]");
    if (!diags_.empty()) throw ConfigError(diags_);

    interpret_problem(c);
    interpret_start(c);
    interpret_schedule(c);
    interpret_moduli(c);
    if (sections_.count("run")) interpret_run(c);
    if (!diags_.empty()) throw ConfigError(diags_);
    cross_check(c);
    if (!diags_.empty()) throw ConfigError(diags_);
    return c;
  }

 private:
  void error(std::size_t line, std::string message) { diags_.push_back({line, std::move(message)}); }

  void read(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    Section* current = nullptr;
    std::string current_name;
    for (std::size_t line = 1; std::getline(in, raw); ++line) {
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string t(trim(raw));
      if (t.empty()) continue;
      if (t.front() == '[') {
        if (t.back() != ']') {
          error(line, "malformed section header '" + t + "'");
          current = nullptr;
          continue;
        }
        current_name = std::string(trim(std::string_view(t).substr(1, t.size() - 2)));
        if (!schema().count(current_name)) {
          error(line, "unknown section [" + current_name + "]");
          current = nullptr;
        } else if (sections_.count(current_name)) {
          error(line, "duplicate section [" + current_name + "]");
          current = nullptr;
        } else {
          current = &sections_[current_name];
          current->line = line;
        }
        continue;
      }
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        error(line, "expected 'key = value'");
        continue;
      }
      const std::string key(trim(std::string_view(t).substr(0, eq)));
      const std::string value(trim(std::string_view(t).substr(eq + 1)));
      if (!current) {
        if (current_name.empty()) error(line, "key '" + key + "' outside any section");
        continue;
      }
      if (!schema().at(current_name).count(key)) {
        error(line, "unknown key '" + key + "' in [" + current_name + "]");
        continue;
      }
      if (current->entries.count(key)) {
        error(line, "duplicate key '" + key + "' in [" + current_name + "]");
        continue;
      }
      current->entries[key] = {value, line};
    }
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.entries.find(key);
    return e == s->second.entries.end() ? nullptr : &e->second;
  }

  // Applies fn to the value of a key, recording missing keys and failures.
  template <class Fn>
  void with(const std::string& section, const std::string& key, bool required, Fn&& fn) {
    const Entry* e = find(section, key);
    if (!e) {
      if (required)
        error(sections_.at(section).line, "missing key '" + key + "' in [" + section + "]");
      return;
    }
    try {
      fn(e->value);
    } catch (const std::exception& ex) {
      error(e->line, key + ": " + ex.what());
    }
  }

  std::size_t line_of(const std::string& section, const std::string& key) const {
    const Entry* e = find(section, key);
    return e ? e->line : sections_.at(section).line;
  }

  void interpret_problem(ExperimentConfig& c) {
    std::string kind;
    with("problem", "kind", true, [&](const std::string& v) {
      if (!kind_keys().count(v)) throw std::invalid_argument("unknown operator kind '" + v + "'");
      kind = v;
    });
    with("problem", "zero", true, [&](const std::string& v) { c.zero = parse_point(v); });
    with("problem", "target", false, [&](const std::string& v) { c.target = parse_point(v); });
    if (kind.empty()) return;
    const auto& allowed = kind_keys().at(kind);
    for (const auto& [key, entry] : sections_.at("problem").entries) {
      if (key == "kind" || key == "zero" || key == "target") continue;
      if (!allowed.count(key)) error(entry.line, "key '" + key + "' does not apply to " + kind);
    }
    if (kind == "quadratic_prox") {
      QuadraticProx q;
      with("problem", "center", true, [&](const std::string& v) { q.center = parse_point(v); });
      with("problem", "weight", false, [&](const std::string& v) { q.weight = parse_real(v); });
      c.kind = q;
    } else if (kind == "ball_projection") {
      BallProjection b;
      with("problem", "center", true, [&](const std::string& v) { b.center = parse_point(v); });
      with("problem", "radius", true, [&](const std::string& v) { b.radius = parse_real(v); });
      c.kind = b;
    } else if (kind == "box_projection") {
      BoxProjection b;
      with("problem", "lo", true, [&](const std::string& v) { b.lo = parse_point(v); });
      with("problem", "hi", true, [&](const std::string& v) { b.hi = parse_point(v); });
      c.kind = b;
    } else if (kind == "linear_psd") {
      LinearPSD l;
      with("problem", "matrix", true, [&](const std::string& v) {
        const auto rows = split(v, ';');
        l.dim = rows.size();
        for (const auto& row : rows) {
          const Point p = parse_point(row);
          if (p.dim() != l.dim) throw std::invalid_argument("matrix must be square");
          l.matrix.insert(l.matrix.end(), p.coords().begin(), p.coords().end());
        }
      });
      c.kind = l;
    } else {
      c.kind = Rotation2D{};
    }
  }

  void interpret_start(ExperimentConfig& c) {
    with("start", "u", true, [&](const std::string& v) { c.u = parse_point(v); });
    with("start", "z0", true, [&](const std::string& v) { c.z0 = parse_point(v); });
  }

  void interpret_schedule(ExperimentConfig& c) {
    with("schedule", "lambda", true, [&](const std::string& v) { c.schedule.lambda = RealFamily::parse(v); });
    with("schedule", "gamma", true, [&](const std::string& v) { c.schedule.gamma = RealFamily::parse(v); });
    with("schedule", "c", false, [&](const std::string& v) { c.schedule.c = RealFamily::parse(v); });
    with("schedule", "error", false, [&](const std::string& v) { c.schedule.error = ErrorFamily::parse(v); });
  }

  void interpret_moduli(ExperimentConfig& c) {
    Moduli& m = c.moduli;
    auto natural = [&](const char* key, Natural& out) {
      with("moduli", key, true, [&](const std::string& v) { out = parse_natural(v); });
    };
    auto function = [&](const char* key, CountFn& out, bool required) {
      with("moduli", key, required, [&](const std::string& v) {
        std::vector<std::string> notes;
        out = parse_fspec(v, &notes);
        for (auto& n : notes) c.notices.push_back(std::string(key) + ": " + n);
      });
    };
    natural("a", m.a);
    natural("c", m.c);
    natural("N1", m.N1);
    natural("N2", m.N2);
    natural("N3", m.N3);
    function("Cmaj", m.Cmaj, true);
    function("ell", m.ell, true);
    function("L", m.L, true);
    function("E", m.E, true);
    function("Gamma", m.Gamma, false);
    c.gamma_given = find("moduli", "Gamma") != nullptr;
    with("moduli", "nu", false, [&](const std::string& v) {
      if (v == "constant_c")
        m.nu_form = NuForm::ConstantC;
      else if (v == "general")
        m.nu_form = NuForm::General;
      else
        throw std::invalid_argument("expected constant_c or general");
    });
    if (m.nu_form == NuForm::General && !c.gamma_given)
      error(line_of("moduli", "nu"), "nu = general requires Gamma");
    try {
      m.check();
    } catch (const std::exception& ex) {
      error(sections_.at("moduli").line, ex.what());
    }
  }

  void interpret_run(ExperimentConfig& c) {
    RunSettings& r = c.run;
    with("run", "horizon", false, [&](const std::string& v) { r.horizon = parse_size(v); });
    with("run", "k", false, [&](const std::string& v) { r.ks = parse_k_list(v); });
    with("run", "f", false, [&](const std::string& v) {
      r.fspecs.clear();
      for (const auto& part : split(v, ';')) {
        parse_fspec(part);
        r.fspecs.push_back(part);
      }
    });
    with("run", "budget_bits", false, [&](const std::string& v) {
      r.budget.max_bits = parse_size(v);
      if (r.budget.max_bits == 0) throw std::invalid_argument("must be positive");
    });
    with("run", "budget_calls", false, [&](const std::string& v) { r.budget.max_calls = parse_size(v); });
    with("run", "validate", false, [&](const std::string& v) {
      if (v != "strict" && v != "warn") throw std::invalid_argument("expected strict or warn");
      r.strict = v == "strict";
    });
  }

  void cross_check(ExperimentConfig& c) {
    const std::size_t dim = c.zero.dim();
    if (c.u.dim() != dim) error(line_of("start", "u"), "u has dimension " + std::to_string(c.u.dim()) + ", expected " + std::to_string(dim));
    if (c.z0.dim() != dim) error(line_of("start", "z0"), "z0 has dimension " + std::to_string(c.z0.dim()) + ", expected " + std::to_string(dim));
    if (c.target && c.target->dim() != dim) error(line_of("problem", "target"), "target has the wrong dimension");
    try {
      (void)c.make_operator();
    } catch (const std::exception& ex) {
      error(sections_.at("problem").line, ex.what());
    }
    for (const auto& problem : c.schedule.validate(c.run.horizon, dim))
      error(line_of("schedule", "lambda"), problem);
  }

  std::map<std::string, Section> sections_;
  std::vector<Diagnostic> diags_;
};

std::string join_diagnostics(const std::vector<Diagnostic>& ds) {
  std::string s;
  for (const auto& d : ds) {
    if (!s.empty()) s += '\n';
    if (d.line) s += "line " + std::to_string(d.line) + ": ";
    s += d.message;
  }
  return s;
}

std::string matrix_string(const LinearPSD& l) {
  std::string s;
  for (std::size_t i = 0; i < l.dim; ++i) {
    if (i) s += "; ";
    for (std::size_t j = 0; j < l.dim; ++j) s += (j ? ", " : "") + format_real(l.matrix[i * l.dim + j]);
  }
  return s;
}

std::string point_string(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? ", " : "") + format_real(p[i]);
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(join_diagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ResolventOperator ExperimentConfig::make_operator() const { return ResolventOperator(kind, zero); }

std::vector<CountFn> ExperimentConfig::counterfunctions() const {
  std::vector<CountFn> fs;
  for (const auto& spec : run.fspecs) fs.push_back(parse_fspec(spec));
  return fs;
}

ExperimentConfig parse_config(const std::string& text) { return Parser(text).interpret(); }

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{0, "cannot read config file '" + path + "'"}});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[problem]\n";
  out << "kind = " << kind_name(c.kind) << "\n";
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, QuadraticProx>) {
          out << "center = " << point_string(k.center) << "\n";
          out << "weight = " << format_real(k.weight) << "\n";
        } else if constexpr (std::is_same_v<K, BallProjection>) {
          out << "center = " << point_string(k.center) << "\n";
          out << "radius = " << format_real(k.radius) << "\n";
        } else if constexpr (std::is_same_v<K, BoxProjection>) {
          out << "lo = " << point_string(k.lo) << "\n";
          out << "hi = " << point_string(k.hi) << "\n";
        } else if constexpr (std::is_same_v<K, LinearPSD>) {
          out << "matrix = " << matrix_string(k) << "\n";
        }
      },
      c.kind);
  out << "zero = " << point_string(c.zero) << "\n";
  if (c.target) out << "target = " << point_string(*c.target) << "\n";

  out << "\n[start]\n";
  out << "u = " << point_string(c.u) << "\n";
  out << "z0 = " << point_string(c.z0) << "\n";

  out << "\n[schedule]\n";
  out << "lambda = " << c.schedule.lambda.to_string() << "\n";
  out << "gamma = " << c.schedule.gamma.to_string() << "\n";
  out << "c = " << c.schedule.c.to_string() << "\n";
  out << "error = " << c.schedule.error.to_string() << "\n";

  const Moduli& m = c.moduli;
  out << "\n[moduli]\n";
  out << "a = " << to_string(m.a) << "\n";
  out << "c = " << to_string(m.c) << "\n";
  out << "Cmaj = " << m.Cmaj.describe() << "\n";
  out << "ell = " << m.ell.describe() << "\n";
  out << "L = " << m.L.describe() << "\n";
  if (c.gamma_given) out << "Gamma = " << m.Gamma.describe() << "\n";
  out << "E = " << m.E.describe() << "\n";
  out << "N1 = " << to_string(m.N1) << "\n";
  out << "N2 = " << to_string(m.N2) << "\n";
  out << "N3 = " << to_string(m.N3) << "\n";
  out << "nu = " << (m.nu_form == NuForm::ConstantC ? "constant_c" : "general") << "\n";

  out << "\n[run]\n";
  out << "horizon = " << c.run.horizon << "\n";
  out << "k = " << k_list_string(c.run.ks) << "\n";
  out << "f = ";
  for (std::size_t i = 0; i < c.run.fspecs.size(); ++i) out << (i ? "; " : "") << c.run.fspecs[i];
  out << "\n";
  out << "budget_bits = " << c.run.budget.max_bits << "\n";
  out << "budget_calls = " << c.run.budget.max_calls << "\n";
  out << "validate = " << (c.run.strict ? "strict" : "warn") << "\n";
  return out.str();
}

}  // namespace ppa
