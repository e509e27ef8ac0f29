#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "ppa/point.hpp"

namespace ppa {

/// T = subdifferential of f(z) = weight/2 * |z - center|^2.
struct QuadraticProx {
  Point center;
  double weight = 1.0;
  bool operator==(const QuadraticProx&) const = default;
};

/// T = normal cone of the closed ball; the resolvent is the metric projection.
struct BallProjection {
  Point center;
  double radius = 1.0;
  bool operator==(const BallProjection&) const = default;
};

/// T = normal cone of the box [lo, hi].
struct BoxProjection {
  Point lo;
  Point hi;
  bool operator==(const BoxProjection&) const = default;
};

/// T(x) = A x with <Ax, x> >= 0. Row-major, dim x dim.
struct LinearPSD {
  std::size_t dim = 0;
  std::vector<double> matrix;
  bool operator==(const LinearPSD&) const = default;
};

/// T(x1, x2) = (-x2, x1). Monotone but not a subdifferential; zero set {0}.
struct Rotation2D {
  bool operator==(const Rotation2D&) const = default;
};

using OperatorKind =
    std::variant<QuadraticProx, BallProjection, BoxProjection, LinearPSD, Rotation2D>;

std::string_view kind_name(const OperatorKind& kind);

/// A maximal monotone operator presented through its exact resolvent
/// J_c = (I + cT)^{-1}, together with a known zero s.
///
/// The constructor checks that the declared zero is a fixed point of J_c for
/// c in {0.1, 1, 10} within 1e-9.
class ResolventOperator {
 public:
  ResolventOperator(OperatorKind kind, Point zero_witness);

  Point resolvent(double c, const Point& x) const;

  const OperatorKind& kind() const { return kind_; }
  const Point& zero_witness() const { return zero_; }
  std::size_t dim() const { return zero_.dim(); }
  std::string_view name() const { return kind_name(kind_); }

 private:
  OperatorKind kind_;
  Point zero_;
};

/// |J_a(x) - J_b((b/a) x + (1 - b/a) J_a(x))|.
double check_resolvent_identity(const ResolventOperator& op, double a, double b,
                                const Point& x);

/// Whether |J_a(x) - x| <= 2 |J_b(x) - x| + slack. Requires 0 < a <= b.
bool check_resolvent_scaling(const ResolventOperator& op, double a, double b,
                             const Point& x, double slack = 1e-8);

}  // namespace ppa
