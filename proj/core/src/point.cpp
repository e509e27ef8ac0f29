#include "ppa/point.hpp"

#include <cmath>

#include "ppa/csv.hpp"

namespace ppa {

DimensionMismatch::DimensionMismatch(std::size_t lhs, std::size_t rhs)
    : std::invalid_argument("dimension mismatch: " + std::to_string(lhs) +
                            " vs " + std::to_string(rhs)) {}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("point must have dimension >= 1");
  if (!is_finite()) throw std::invalid_argument("point coordinates must be finite");
}

Point::Point(std::initializer_list<double> coords)
    : Point(std::vector<double>(coords)) {}

Point Point::zeros(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

bool Point::is_finite() const {
  for (double v : coords_)
    if (!std::isfinite(v)) return false;
  return true;
}

Point& Point::operator+=(const Point& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

Point& Point::operator-=(const Point& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

Point& Point::operator*=(double s) {
  for (double& v : coords_) v *= s;
  return *this;
}

void require_same_dim(const Point& x, const Point& y) {
  if (x.dim() != y.dim()) throw DimensionMismatch(x.dim(), y.dim());
}

double inner(const Point& x, const Point& y) {
  require_same_dim(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm(const Point& x) { return std::sqrt(inner(x, x)); }

double distance(const Point& x, const Point& y) {
  require_same_dim(x, y);
  double acc = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

std::string to_string(const Point& x) {
  std::string out;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i) out += ',';
    out += format_real(x[i]);
  }
  return out;
}

}  // namespace ppa
