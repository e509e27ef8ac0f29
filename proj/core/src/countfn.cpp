#include "ppa/countfn.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "ppa/csv.hpp"

namespace ppa {

Budget Budget::from_env() { return Budget{}.with_env(); }

Budget Budget::with_env() const {
  Budget b = *this;
  if (const char* bits = std::getenv("PPA_BUDGET_BITS"); bits && *bits) {
    const Natural v = parse_natural(bits);
    const auto small = to_u64(v);
    if (!small || *small == 0) throw std::invalid_argument("PPA_BUDGET_BITS must be a positive integer");
    b.max_bits = static_cast<std::size_t>(*small);
  }
  return b;
}

BudgetExceededError::BudgetExceededError(std::string stage)
    : std::runtime_error("budget exceeded in " + stage), stage_(std::move(stage)) {}

EvalContext::EvalContext(Budget budget) : budget_(budget) {}

void EvalContext::tick(std::uint64_t n) {
  calls_ += n;
  if (calls_ > budget_.max_calls) exceed();
}

const Natural& EvalContext::bound(const Natural& x) {
  if (bit_length(x) > budget_.max_bits) exceed();
  return x;
}

void EvalContext::exceed() { throw BudgetExceededError(std::string(current_stage())); }

std::uint64_t EvalContext::remaining_calls() const {
  return calls_ >= budget_.max_calls ? 0 : budget_.max_calls - calls_;
}

std::string_view EvalContext::current_stage() const {
  return stages_.empty() ? std::string_view("eval") : stages_.back();
}

EvalContext::StageGuard::StageGuard(EvalContext& cx, std::string_view name) : cx_(cx) {
  cx_.stages_.push_back(name);
}

EvalContext::StageGuard::~StageGuard() { cx_.stages_.pop_back(); }

BoundValue BoundValue::exact(Natural v) {
  if (v < 0) throw std::invalid_argument("bound values are natural numbers");
  return BoundValue(std::move(v));
}

BoundValue BoundValue::exceeded(std::string stage) { return BoundValue(std::move(stage)); }

const Natural& BoundValue::value() const {
  if (!is_exact()) throw std::logic_error("bound value is BUDGET_EXCEEDED");
  return std::get<Natural>(data_);
}

const std::string& BoundValue::stage() const {
  if (is_exact()) throw std::logic_error("bound value is exact");
  return std::get<std::string>(data_);
}

std::string BoundValue::to_string() const {
  if (is_exact()) return ppa::to_string(value());
  return "BUDGET_EXCEEDED(" + stage() + ")";
}

struct CountFn::Node {
  Kind kind;
  Natural a;  // Const value, Affine slope
  Natural b;  // Affine offset
  std::vector<Natural> values;
  std::vector<CountFn> parts;  // Max parts; Compose {outer, inner}
  std::string name;
  std::string spec;
  Body body;
  bool monotone = true;
};

CountFn::CountFn() : CountFn(constant(0)) {}

CountFn CountFn::constant(Natural v) {
  if (v < 0) throw std::invalid_argument("const value must be a natural number");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->a = std::move(v);
  return CountFn(std::move(n));
}

CountFn CountFn::identity() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Identity;
  return CountFn(std::move(n));
}

CountFn CountFn::affine(Natural a, Natural b) {
  if (a < 0 || b < 0) throw std::invalid_argument("affine coefficients must be natural numbers");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Affine;
  n->a = std::move(a);
  n->b = std::move(b);
  return CountFn(std::move(n));
}

CountFn CountFn::table(const std::vector<Natural>& values) {
  if (values.empty()) throw std::invalid_argument("table needs at least one value");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Table;
  Natural running = 0;
  for (const auto& v : values) {
    if (v < 0) throw std::invalid_argument("table values must be natural numbers");
    running = std::max(running, v);
    n->values.push_back(running);
  }
  return CountFn(std::move(n));
}

CountFn CountFn::max(std::vector<CountFn> parts) {
  if (parts.empty()) throw std::invalid_argument("max needs at least one part");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Max;
  n->monotone = std::all_of(parts.begin(), parts.end(), [](const CountFn& f) { return f.monotone(); });
  n->parts = std::move(parts);
  return CountFn(std::move(n));
}

CountFn CountFn::compose(CountFn outer, CountFn inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compose;
  n->monotone = outer.monotone() && inner.monotone();
  n->parts = {std::move(outer), std::move(inner)};
  return CountFn(std::move(n));
}

CountFn CountFn::closure(std::string name, Body body, bool monotone, std::string spec) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Closure;
  n->name = std::move(name);
  n->spec = spec.empty() ? n->name : std::move(spec);
  n->body = std::move(body);
  n->monotone = monotone;
  return CountFn(std::move(n));
}

Natural CountFn::operator()(EvalContext& cx, const Natural& n) const {
  cx.tick();
  const Node& node = *node_;
  switch (node.kind) {
    case Kind::Const:
      return node.a;
    case Kind::Identity:
      return n;
    case Kind::Affine:
      return cx.bound(node.a * n + node.b);
    case Kind::Table: {
      const auto idx = to_u64(n);
      if (!idx || *idx >= node.values.size()) return node.values.back();
      return node.values[static_cast<std::size_t>(*idx)];
    }
    case Kind::Max: {
      Natural best = 0;
      for (const auto& f : node.parts) best = std::max(best, f(cx, n));
      return best;
    }
    case Kind::Compose:
      return node.parts[0](cx, node.parts[1](cx, n));
    case Kind::Closure: {
      if (node.name.empty()) return cx.bound(node.body(cx, n));
      auto guard = cx.stage(node.name);
      return cx.bound(node.body(cx, n));
    }
  }
  throw std::logic_error("unknown CountFn kind");
}

BoundValue CountFn::eval(const Natural& n, const Budget& budget) const {
  return evaluate(budget, [&](EvalContext& cx) { return (*this)(cx, n); });
}

CountFn::Kind CountFn::kind() const { return node_->kind; }

bool CountFn::monotone() const { return node_->monotone; }

const std::vector<Natural>& CountFn::table_values() const { return node_->values; }

std::string CountFn::describe() const {
  const Node& node = *node_;
  switch (node.kind) {
    case Kind::Const:
      return "const " + to_string(node.a);
    case Kind::Identity:
      return "id";
    case Kind::Affine:
      return "affine " + to_string(node.a) + " " + to_string(node.b);
    case Kind::Table: {
      std::string s = "table ";
      for (std::size_t i = 0; i < node.values.size(); ++i) {
        if (i) s += ',';
        s += to_string(node.values[i]);
      }
      return s;
    }
    case Kind::Max: {
      std::string s = "max(";
      for (std::size_t i = 0; i < node.parts.size(); ++i) {
        if (i) s += "; ";
        s += node.parts[i].describe();
      }
      return s + ")";
    }
    case Kind::Compose:
      return "(" + node.parts[0].describe() + ") o (" + node.parts[1].describe() + ")";
    case Kind::Closure:
      return node.spec;
  }
  return {};
}

CountFn iterate(CountFn f, Natural r) {
  if (r < 0) throw std::invalid_argument("iteration count must be a natural number");
  if (r == 0) return CountFn::identity();
  const bool mono = f.monotone();
  std::string spec = "iterate(" + f.describe() + ", " + to_string(r) + ")";
  return CountFn::closure(
      "",
      [f = std::move(f), r = std::move(r)](EvalContext& cx, const Natural& n) {
        Natural y = n;
        for (Natural i = 0; i < r; ++i) {
          Natural next = f(cx, y);
          if (next == y) break;  // fixed point: the remaining iterates agree
          y = std::move(next);
        }
        return y;
      },
      mono, std::move(spec));
}

CountFn majorize(CountFn f) {
  if (f.monotone()) return f;
  const std::string spec = "maj(" + f.describe() + ")";
  return CountFn::closure(
      "",
      [f = std::move(f)](EvalContext& cx, const Natural& n) {
        Natural best = 0;
        for (Natural i = 0; i <= n; ++i) best = std::max(best, f(cx, i));
        return best;
      },
      true, spec);
}

CountFn shifted(CountFn f, Natural s) {
  if (s == 0) return f;
  const bool mono = f.monotone();
  const std::string spec = "(" + f.describe() + ")+" + to_string(s);
  return CountFn::closure(
      "", [f = std::move(f), s](EvalContext& cx, const Natural& n) { return f(cx, n) + s; },
      mono, spec);
}

CountFn parse_fspec(std::string_view text, std::vector<std::string>* notices) {
  const std::string_view t = trim(text);
  const auto space = t.find_first_of(" \t");
  const std::string head(t.substr(0, space));
  const std::string rest(space == std::string_view::npos ? std::string_view{} : trim(t.substr(space)));
  auto words = [&] {
    std::vector<std::string> out;
    std::istringstream in(rest);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
  };
  if (head == "id") {
    if (!rest.empty()) throw std::invalid_argument("fspec 'id' takes no arguments");
    return CountFn::identity();
  }
  if (head == "const") {
    const auto w = words();
    if (w.size() != 1) throw std::invalid_argument("fspec 'const' takes one argument");
    return CountFn::constant(parse_natural(w[0]));
  }
  if (head == "affine") {
    const auto w = words();
    if (w.size() != 2) throw std::invalid_argument("fspec 'affine' takes two arguments");
    return CountFn::affine(parse_natural(w[0]), parse_natural(w[1]));
  }
  if (head == "table") {
    std::vector<Natural> values;
    for (const auto& part : split(rest, ',')) values.push_back(parse_natural(part));
    const bool sorted = std::is_sorted(values.begin(), values.end());
    CountFn f = CountFn::table(values);
    if (!sorted && notices)
      notices->push_back("notice: table '" + rest + "' is not monotone; using its majorant '" +
                         f.describe() + "'");
    return f;
  }
  if (head == "expceil") {
    const auto w = words();
    if (w.size() != 1) throw std::invalid_argument("fspec 'expceil' takes one argument");
    const Natural scale = parse_natural(w[0]);
    return CountFn::closure(
        "expceil",
        [scale](EvalContext& cx, const Natural& n) {
          try {
            return ceil_scaled_exp(scale, n, cx.budget().max_bits);
          } catch (const std::overflow_error&) {
            cx.exceed();
          }
        },
        true, "expceil " + to_string(scale));
  }
  throw std::invalid_argument("unknown fspec '" + std::string(t) + "'");
}

}  // namespace ppa
