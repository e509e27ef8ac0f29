#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ppa {

/// Raised when two points of different dimension meet in one expression.
class DimensionMismatch : public std::invalid_argument {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs);
};

/// An element of the finite-dimensional Hilbert space R^d.
///
/// Construction rejects empty coordinate lists and non-finite coordinates.
/// Arithmetic does not re-check finiteness; callers that need the invariant
/// after a long computation use is_finite().
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point zeros(std::size_t dim);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  bool is_finite() const;

  Point& operator+=(const Point& rhs);
  Point& operator-=(const Point& rhs);
  Point& operator*=(double s);

  friend Point operator+(Point lhs, const Point& rhs) { return lhs += rhs; }
  friend Point operator-(Point lhs, const Point& rhs) { return lhs -= rhs; }
  friend Point operator*(Point lhs, double s) { return lhs *= s; }
  friend Point operator*(double s, Point rhs) { return rhs *= s; }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

void require_same_dim(const Point& x, const Point& y);

double inner(const Point& x, const Point& y);
double norm(const Point& x);
double distance(const Point& x, const Point& y);

/// Comma-separated coordinates with 17 significant digits.
std::string to_string(const Point& x);

}  // namespace ppa
