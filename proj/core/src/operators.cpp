#include "ppa/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace ppa {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::MatrixXd as_matrix(const LinearPSD& op) {
  Eigen::MatrixXd a(op.dim, op.dim);
  for (std::size_t i = 0; i < op.dim; ++i)
    for (std::size_t j = 0; j < op.dim; ++j) a(i, j) = op.matrix[i * op.dim + j];
  return a;
}

void validate(const OperatorKind& kind, std::size_t dim) {
  std::visit(
      overloaded{
          [&](const QuadraticProx& q) {
            require_same_dim(q.center, Point::zeros(dim));
            if (!(q.weight > 0.0 && std::isfinite(q.weight)))
              throw std::invalid_argument("quadratic_prox weight must be positive");
          },
          [&](const BallProjection& b) {
            require_same_dim(b.center, Point::zeros(dim));
            if (!(b.radius > 0.0 && std::isfinite(b.radius)))
              throw std::invalid_argument("ball_projection radius must be positive");
          },
          [&](const BoxProjection& b) {
            require_same_dim(b.lo, Point::zeros(dim));
            require_same_dim(b.hi, Point::zeros(dim));
            for (std::size_t i = 0; i < dim; ++i)
              if (b.lo[i] > b.hi[i])
                throw std::invalid_argument("box_projection requires lo <= hi");
          },
          [&](const LinearPSD& l) {
            if (l.dim != dim || l.matrix.size() != dim * dim)
              throw std::invalid_argument("linear_psd matrix must be dim x dim");
            const Eigen::MatrixXd a = as_matrix(l);
            const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
            const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
            if (eig.eigenvalues().minCoeff() < -1e-12 * scale)
              throw std::invalid_argument("linear_psd matrix is not positive semidefinite");
          },
          [&](const Rotation2D&) {
            if (dim != 2) throw std::invalid_argument("rotation2d requires dimension 2");
          },
      },
      kind);
}

}  // namespace

std::string_view kind_name(const OperatorKind& kind) {
  return std::visit(overloaded{
                        [](const QuadraticProx&) { return std::string_view("quadratic_prox"); },
                        [](const BallProjection&) { return std::string_view("ball_projection"); },
                        [](const BoxProjection&) { return std::string_view("box_projection"); },
                        [](const LinearPSD&) { return std::string_view("linear_psd"); },
                        [](const Rotation2D&) { return std::string_view("rotation2d"); },
                    },
                    kind);
}

ResolventOperator::ResolventOperator(OperatorKind kind, Point zero_witness)
    : kind_(std::move(kind)), zero_(std::move(zero_witness)) {
  if (zero_.dim() == 0) throw std::invalid_argument("zero witness must be a point");
  validate(kind_, zero_.dim());
  for (double c : {0.1, 1.0, 10.0}) {
    if (distance(resolvent(c, zero_), zero_) > 1e-9)
      throw std::invalid_argument("declared zero is not a fixed point of the resolvent");
  }
}

Point ResolventOperator::resolvent(double c, const Point& x) const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::invalid_argument("resolvent parameter c must be positive");
  require_same_dim(x, zero_);
  return std::visit(
      overloaded{
          [&](const QuadraticProx& q) {
            // argmin_y weight/2 |y - m|^2 + 1/(2c) |y - x|^2
            return (x + (c * q.weight) * q.center) * (1.0 / (1.0 + c * q.weight));
          },
          [&](const BallProjection& b) {
            Point d = x - b.center;
            const double r = norm(d);
            if (r <= b.radius) return x;
            return b.center + d * (b.radius / r);
          },
          [&](const BoxProjection& b) {
            Point y = x;
            for (std::size_t i = 0; i < y.dim(); ++i) y[i] = std::clamp(y[i], b.lo[i], b.hi[i]);
            return y;
          },
          [&](const LinearPSD& l) {
            const Eigen::MatrixXd a = as_matrix(l);
            const Eigen::MatrixXd m =
                Eigen::MatrixXd::Identity(l.dim, l.dim) + c * a;
            Eigen::VectorXd rhs(l.dim);
            for (std::size_t i = 0; i < l.dim; ++i) rhs(i) = x[i];
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
            // I + cA is invertible for monotone A and c > 0.
            assert(std::abs(lu.determinant()) > 0.0);
            const Eigen::VectorXd y = lu.solve(rhs);
            return Point(std::vector<double>(y.data(), y.data() + y.size()));
          },
          [&](const Rotation2D&) {
            const double det = 1.0 + c * c;
            return Point{(x[0] + c * x[1]) / det, (x[1] - c * x[0]) / det};
          },
      },
      kind_);
}

double check_resolvent_identity(const ResolventOperator& op, double a, double b,
                                const Point& x) {
  const Point ja = op.resolvent(a, x);
  const double ratio = b / a;
  const Point rhs = op.resolvent(b, ratio * x + (1.0 - ratio) * ja);
  return distance(ja, rhs);
}

bool check_resolvent_scaling(const ResolventOperator& op, double a, double b,
                             const Point& x, double slack) {
  if (!(a > 0.0) || a > b)
    throw std::invalid_argument("resolvent scaling requires 0 < a <= b");
  const double lhs = distance(op.resolvent(a, x), x);
  const double rhs = distance(op.resolvent(b, x), x);
  return lhs <= 2.0 * rhs + slack;
}

}  // namespace ppa
