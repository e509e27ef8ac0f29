#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ppa/point.hpp"

namespace ppa {

/// Closed-form real sequence: `const v`, `harmonic q` (1/(n+q)) or
/// `offset_harmonic b q` (b + 1/(n+q)).
struct RealFamily {
  enum class Kind { Constant, Harmonic, OffsetHarmonic };
  Kind kind = Kind::Constant;
  double value = 0.0;  // Constant value, OffsetHarmonic offset
  double q = 1.0;      // Harmonic shift

  static RealFamily constant(double v);
  static RealFamily harmonic(double q);
  static RealFamily offset_harmonic(double b, double q);
  static RealFamily parse(const std::string& text);

  double at(std::size_t n) const;
  std::string to_string() const;
  bool operator==(const RealFamily&) const = default;
};

/// Error term: `zero` or `geometric rho v` (rho^n * v).
struct ErrorFamily {
  enum class Kind { Zero, Geometric };
  Kind kind = Kind::Zero;
  double rho = 0.0;
  Point v;

  static ErrorFamily zero();
  static ErrorFamily geometric(double rho, Point v);
  static ErrorFamily parse(const std::string& text);

  Point at(std::size_t n, std::size_t dim) const;
  double norm_at(std::size_t n) const;
  std::string to_string() const;
  bool operator==(const ErrorFamily&) const = default;
};

struct StepParams {
  double lambda;
  double gamma;
  double delta;
  double c;
  Point e;
};

/// The parameter sequences of the iteration. delta is always derived as
/// 1 - (lambda + gamma).
struct Schedule {
  RealFamily lambda = RealFamily::harmonic(3.0);
  RealFamily gamma = RealFamily::constant(0.5);
  RealFamily c = RealFamily::constant(1.0);
  ErrorFamily error = ErrorFamily::zero();

  StepParams at(std::size_t n, std::size_t dim) const;
  double delta(std::size_t n) const;

  /// Problems for n <= horizon: parameters outside (0,1), c_n <= 0, or an
  /// error vector of the wrong dimension. The first failing index is named.
  std::vector<std::string> validate(std::size_t horizon, std::size_t dim) const;

  bool operator==(const Schedule&) const = default;
};

}  // namespace ppa
