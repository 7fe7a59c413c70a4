#pragma once

#include <Eigen/Dense>

namespace mplank {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  Eigen::VectorXd x;
};

/// maximize <c, x> subject to A x <= b with x free.
///
/// Dense two-phase simplex with Bland-style tie breaking. Sized for the
/// small programs in this library (a handful of columns, a few hundred rows).
LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace mplank
