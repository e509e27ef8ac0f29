#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ppa/natural.hpp"

namespace ppa {

/// Limits for one bound evaluation.
struct Budget {
  std::size_t max_bits = 4096;
  std::uint64_t max_calls = 10'000'000;

  /// Defaults, with max_bits taken from PPA_BUDGET_BITS when set.
  static Budget from_env();
  /// This budget with max_bits replaced by PPA_BUDGET_BITS when set.
  Budget with_env() const;
};

/// Thrown inside an evaluation when the budget runs out. Public entry
/// points convert it into BoundValue::exceeded.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(std::string stage);
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// Per-evaluation budget accounting. Not shared between evaluations.
class EvalContext {
 public:
  explicit EvalContext(Budget budget = {});

  /// Counts n elementary calls.
  void tick(std::uint64_t n = 1);
  /// Returns x, or throws if x needs more than max_bits bits.
  const Natural& bound(const Natural& x);
  [[noreturn]] void exceed();

  std::uint64_t calls() const { return calls_; }
  std::uint64_t remaining_calls() const;
  const Budget& budget() const { return budget_; }
  std::string_view current_stage() const;

  class StageGuard {
   public:
    StageGuard(EvalContext& cx, std::string_view name);
    ~StageGuard();
    StageGuard(const StageGuard&) = delete;
    StageGuard& operator=(const StageGuard&) = delete;

   private:
    EvalContext& cx_;
  };

  /// Names the formula being evaluated until the guard goes out of scope.
  [[nodiscard]] StageGuard stage(std::string_view name) { return StageGuard(*this, name); }

 private:
  Budget budget_;
  std::uint64_t calls_ = 0;
  std::vector<std::string_view> stages_;
};

/// Result of a bound computation: an exact natural or a budget marker
/// naming the innermost formula that ran out.
class BoundValue {
 public:
  static BoundValue exact(Natural v);
  static BoundValue exceeded(std::string stage);

  bool is_exact() const { return std::holds_alternative<Natural>(data_); }
  const Natural& value() const;
  const std::string& stage() const;
  /// Decimal value, or BUDGET_EXCEEDED(stage).
  std::string to_string() const;

  bool operator==(const BoundValue&) const = default;

 private:
  explicit BoundValue(std::variant<Natural, std::string> d) : data_(std::move(d)) {}
  std::variant<Natural, std::string> data_;
};

/// Runs body(EvalContext&) -> Natural under the budget.
template <class Body>
BoundValue evaluate(const Budget& budget, Body&& body) {
  EvalContext cx(budget);
  try {
    return BoundValue::exact(body(cx));
  } catch (const BudgetExceededError& e) {
    return BoundValue::exceeded(e.stage());
  }
}

/// A monotone function N -> N represented for exact evaluation.
///
/// Const, Identity and Affine are monotone by construction; Table stores
/// its running maximum. Closures carry a monotone flag set by whoever
/// builds them, and majorize() wraps the ones that are not.
class CountFn {
 public:
  enum class Kind { Const, Identity, Affine, Table, Max, Compose, Closure };
  using Body = std::function<Natural(EvalContext&, const Natural&)>;

  /// Const(0).
  CountFn();

  static CountFn constant(Natural v);
  static CountFn identity();
  static CountFn affine(Natural a, Natural b);
  /// Non-empty; stored as the running maximum, last value repeats.
  static CountFn table(const std::vector<Natural>& values);
  static CountFn max(std::vector<CountFn> parts);
  /// n -> outer(inner(n)).
  static CountFn compose(CountFn outer, CountFn inner);
  /// A non-empty name labels budget failures inside body; an empty name
  /// leaves the enclosing formula as the reported stage. spec is the
  /// printable form.
  static CountFn closure(std::string name, Body body, bool monotone = true,
                         std::string spec = {});

  Natural operator()(EvalContext& cx, const Natural& n) const;
  BoundValue eval(const Natural& n, const Budget& budget = {}) const;

  Kind kind() const;
  bool monotone() const;
  /// FSpec text for the basic kinds, a descriptive form otherwise.
  std::string describe() const;

  /// Stored values of a Table (already majorized); empty for other kinds.
  const std::vector<Natural>& table_values() const;

 private:
  struct Node;
  explicit CountFn(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// f^(r): r-fold iteration; f^(0) is the identity.
CountFn iterate(CountFn f, Natural r);

/// f^maj(n) = max_{i <= n} f(i). Returns f itself when f is monotone.
CountFn majorize(CountFn f);

/// n -> f(n) + s.
CountFn shifted(CountFn f, Natural s);

/// Parses `const K`, `id`, `affine A B`, `table v0,v1,...` or `expceil A`
/// (n -> ceil(A * e^n)). A non-monotone table is majorized and a notice is
/// appended to notices when given. Throws std::invalid_argument.
CountFn parse_fspec(std::string_view text, std::vector<std::string>* notices = nullptr);

}  // namespace ppa
