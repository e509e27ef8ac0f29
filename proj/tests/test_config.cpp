#include <doctest.h>

#include <fstream>
#include <sstream>

#include "ppa/config.hpp"

using namespace ppa;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(PPA_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

// message of the first diagnostic, with its line
std::pair<std::size_t, std::string> first_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    REQUIRE_FALSE(e.diagnostics().empty());
    return {e.diagnostics().front().line, e.diagnostics().front().message};
  }
  FAIL("expected a config error");
  return {};
}

}  // namespace

TEST_CASE("fixtures parse") {
  for (const char* name : {"experiment_a.cfg", "experiment_b.cfg", "negative_control.cfg"}) {
    CAPTURE(name);
    const ExperimentConfig c = load_config(std::string(PPA_TEST_DATA) + "/" + name);
    CHECK(c.u.dim() == c.z0.dim());
    CHECK(c.run.horizon > 0);
  }
  const ExperimentConfig a = load_config(std::string(PPA_TEST_DATA) + "/experiment_a.cfg");
  CHECK(kind_name(a.kind) == "quadratic_prox");
  CHECK(a.run.horizon == 10000);
  CHECK(a.run.ks.size() == 10);
  CHECK(a.run.fspecs == std::vector<std::string>{"const 0", "const 10", "id"});
  CHECK(a.moduli.N3 == 4);
  CHECK(a.run.strict);
  CHECK(load_config(std::string(PPA_TEST_DATA) + "/negative_control.cfg").run.strict == false);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg"), ConfigError);
}

TEST_CASE("serialize round trip") {
  for (const char* name : {"experiment_a.cfg", "experiment_b.cfg", "negative_control.cfg"}) {
    CAPTURE(name);
    const ExperimentConfig c = parse_config(slurp(name));
    const std::string text = serialize_config(c);
    const ExperimentConfig d = parse_config(text);
    CHECK(serialize_config(d) == text);
    CHECK(d.schedule == c.schedule);
    CHECK(d.u == c.u);
    CHECK(d.z0 == c.z0);
    CHECK(d.zero == c.zero);
    CHECK(d.target == c.target);
    CHECK(d.run.ks == c.run.ks);
    CHECK(d.run.fspecs == c.run.fspecs);
    CHECK(d.run.horizon == c.run.horizon);
    CHECK(d.moduli.N1 == c.moduli.N1);
    CHECK(d.moduli.L.describe() == c.moduli.L.describe());
  }
}

TEST_CASE("missing sections") {
  const auto [line, msg] = first_error("");
  CHECK(line == 0);
  CHECK(msg == "missing section [problem]");
}

TEST_CASE("unknown and duplicate keys carry lines") {
  const std::string base = slurp("experiment_a.cfg");
  {
    const auto [line, msg] = first_error(replace(base, "weight = 1\n", "weight = 1\nradius = 2\n"));
    CHECK(line == 6);
    CHECK(msg.find("radius") != std::string::npos);
  }
  {
    const auto [line, msg] = first_error(replace(base, "u = 3, 2\n", "u = 3, 2\nu = 1, 1\n"));
    CHECK(line == 11);
    CHECK(msg.find("duplicate key 'u'") != std::string::npos);
  }
  {
    const auto [line, msg] = first_error(replace(base, "N1 = 4\n", "N1 = 4\nbogus = 1\n"));
    CHECK(msg.find("unknown key 'bogus'") != std::string::npos);
    CHECK(line > 0);
  }
}

TEST_CASE("schedule validation names the index") {
  const std::string base = slurp("experiment_a.cfg");
  const auto [line, msg] = first_error(replace(base, "lambda = harmonic 3", "lambda = const 0.6"));
  CHECK(msg.find("index 0") != std::string::npos);
}

TEST_CASE("general nu requires Gamma") {
  std::string text = replace(slurp("experiment_a.cfg"), "Gamma = const 0\n", "");
  text = replace(text, "nu = constant_c", "nu = general");
  const auto [line, msg] = first_error(text);
  CHECK(msg == "nu = general requires Gamma");
  CHECK(line > 0);
}

TEST_CASE("dimension mismatch") {
  const auto [line, msg] = first_error(replace(slurp("experiment_a.cfg"), "u = 3, 2", "u = 3, 2, 1"));
  (void)line;
  CHECK_FALSE(msg.empty());
}

TEST_CASE("non-monotone tables are majorized with a notice") {
  const ExperimentConfig c = parse_config(replace(slurp("experiment_a.cfg"), "ell = id", "ell = table 3,1,4"));
  REQUIRE(c.notices.size() == 1);
  CHECK(c.notices.front().find("majorant") != std::string::npos);
  CHECK(c.moduli.ell.eval(1).value() == 3);
}

TEST_CASE("run keys") {
  std::string text = replace(slurp("experiment_a.cfg"), "k = 0..9", "k = 1, 4, 7");
  text = replace(text, "horizon = 10000", "horizon = 5\nbudget_bits = 64\nbudget_calls = 1000\nvalidate = warn");
  const ExperimentConfig c = parse_config(text);
  CHECK(c.run.ks == std::vector<std::size_t>{1, 4, 7});
  CHECK(c.run.budget.max_bits == 64);
  CHECK(c.run.budget.max_calls == 1000);
  CHECK_FALSE(c.run.strict);
  CHECK_THROWS_AS(parse_config(replace(slurp("experiment_a.cfg"), "k = 0..9", "k = 3..1")), ConfigError);
}
