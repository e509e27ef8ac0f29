#include "ppa/schedule.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ppa/csv.hpp"

namespace ppa {
namespace {

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
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

}  // namespace

RealFamily RealFamily::constant(double v) { return {Kind::Constant, v, 1.0}; }

RealFamily RealFamily::harmonic(double q) {
  if (!(q > 0.0)) throw std::invalid_argument("harmonic shift q must be positive");
  return {Kind::Harmonic, 0.0, q};
}

RealFamily RealFamily::offset_harmonic(double b, double q) {
  if (!(q > 0.0)) throw std::invalid_argument("harmonic shift q must be positive");
  return {Kind::OffsetHarmonic, b, q};
}

RealFamily RealFamily::parse(const std::string& text) {
  const auto w = words(text);
  if (w.size() == 2 && w[0] == "const") return constant(parse_real(w[1]));
  if (w.size() == 2 && w[0] == "harmonic") return harmonic(parse_real(w[1]));
  if (w.size() == 3 && w[0] == "offset_harmonic")
    return offset_harmonic(parse_real(w[1]), parse_real(w[2]));
  throw std::invalid_argument("unknown sequence family '" + text + "'");
}

double RealFamily::at(std::size_t n) const {
  switch (kind) {
    case Kind::Constant:
      return value;
    case Kind::Harmonic:
      return 1.0 / (static_cast<double>(n) + q);
    case Kind::OffsetHarmonic:
      return value + 1.0 / (static_cast<double>(n) + q);
  }
  return 0.0;
}

std::string RealFamily::to_string() const {
  switch (kind) {
    case Kind::Constant:
      return "const " + format_real(value);
    case Kind::Harmonic:
      return "harmonic " + format_real(q);
    case Kind::OffsetHarmonic:
      return "offset_harmonic " + format_real(value) + " " + format_real(q);
  }
  return {};
}

ErrorFamily ErrorFamily::zero() { return {}; }

ErrorFamily ErrorFamily::geometric(double rho, Point v) {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("geometric ratio must lie in [0,1)");
  return {Kind::Geometric, rho, std::move(v)};
}

ErrorFamily ErrorFamily::parse(const std::string& text) {
  const auto t = std::string(trim(text));
  if (t == "zero") return zero();
  const auto w = words(t);
  if (w.size() >= 3 && w[0] == "geometric") {
    const auto rest = t.substr(t.find(w[1], w[0].size()) + w[1].size());
    return geometric(parse_real(w[1]), parse_point(std::string(trim(rest))));
  }
  throw std::invalid_argument("unknown error family '" + text + "'");
}

Point ErrorFamily::at(std::size_t n, std::size_t dim) const {
  if (kind == Kind::Zero) return Point::zeros(dim);
  return v * std::pow(rho, static_cast<double>(n));
}

double ErrorFamily::norm_at(std::size_t n) const {
  if (kind == Kind::Zero) return 0.0;
  return norm(v) * std::pow(rho, static_cast<double>(n));
}

std::string ErrorFamily::to_string() const {
  if (kind == Kind::Zero) return "zero";
  return "geometric " + format_real(rho) + " " + ppa::to_string(v);
}

double Schedule::delta(std::size_t n) const { return 1.0 - (lambda.at(n) + gamma.at(n)); }

StepParams Schedule::at(std::size_t n, std::size_t dim) const {
  return {lambda.at(n), gamma.at(n), delta(n), c.at(n), error.at(n, dim)};
}

std::vector<std::string> Schedule::validate(std::size_t horizon, std::size_t dim) const {
  std::vector<std::string> problems;
  if (error.kind == ErrorFamily::Kind::Geometric && error.v.dim() != dim)
    problems.push_back("error vector has dimension " + std::to_string(error.v.dim()) +
                       ", expected " + std::to_string(dim));
  auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  for (std::size_t n = 0; n <= horizon; ++n) {
    const double l = lambda.at(n);
    const double g = gamma.at(n);
    std::string why;
    if (!in_unit(l))
      why = "lambda = " + format_real(l) + " not in (0,1)";
    else if (!in_unit(g))
      why = "gamma = " + format_real(g) + " not in (0,1)";
    else if (l + g >= 1.0)
      why = "lambda + gamma = " + format_real(l + g) + " >= 1, so delta <= 0";
    else if (!(c.at(n) > 0.0))
      why = "c = " + format_real(c.at(n)) + " not positive";
    if (!why.empty()) {
      problems.push_back("schedule invalid at index " + std::to_string(n) + ": " + why);
      break;
    }
  }
  return problems;
}

}  // namespace ppa
