#include "mplank/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace mplank {
namespace {

// Tableau simplex for: max c'y s.t. M y <= b, y >= 0.
class Simplex {
 public:
  Simplex(const Eigen::MatrixXd& M, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : rows_(static_cast<int>(M.rows())),
        cols_(static_cast<int>(M.cols())),
        nonbasic_(cols_ + 1),
        basic_(rows_),
        D_(rows_ + 2, cols_ + 2) {
    D_.setZero();
    for (int i = 0; i < rows_; ++i) {
      for (int j = 0; j < cols_; ++j) D_(i, j) = M(i, j);
      basic_[i] = cols_ + i;
      D_(i, cols_) = -1.0;
      D_(i, cols_ + 1) = b(i);
    }
    for (int j = 0; j < cols_; ++j) {
      nonbasic_[j] = j;
      D_(rows_, j) = -c(j);
    }
    nonbasic_[cols_] = -1;
    D_(rows_ + 1, cols_) = 1.0;
  }

  LpResult solve() {
    LpResult out;
    int r = 0;
    for (int i = 1; i < rows_; ++i)
      if (D_(i, cols_ + 1) < D_(r, cols_ + 1)) r = i;
    if (rows_ > 0 && D_(r, cols_ + 1) < -kEps) {
      pivot(r, cols_);
      if (!run(2) || D_(rows_ + 1, cols_ + 1) < -kEps) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      for (int i = 0; i < rows_; ++i) {
        if (basic_[i] == -1) {
          int s = 0;
          for (int j = 1; j <= cols_; ++j)
            if (std::make_pair(D_(i, j), nonbasic_[j]) < std::make_pair(D_(i, s), nonbasic_[s])) s = j;
          pivot(i, s);
        }
      }
    }
    const bool bounded = run(1);
    out.x = Eigen::VectorXd::Zero(cols_);
    for (int i = 0; i < rows_; ++i)
      if (basic_[i] >= 0 && basic_[i] < cols_) out.x(basic_[i]) = D_(i, cols_ + 1);
    out.status = bounded ? LpStatus::Optimal : LpStatus::Unbounded;
    out.value = bounded ? D_(rows_, cols_ + 1) : std::numeric_limits<double>::infinity();
    return out;
  }

 private:
  static constexpr double kEps = 1e-11;
  static constexpr double kCostEps = 1e-9;
  static constexpr double kTie = 1e-12;

  void pivot(int r, int s) {
    const double inv = 1.0 / D_(r, s);
    for (int i = 0; i < rows_ + 2; ++i) {
      if (i == r || std::abs(D_(i, s)) <= kEps) continue;
      const double f = D_(i, s) * inv;
      for (int j = 0; j < cols_ + 2; ++j) D_(i, j) -= D_(r, j) * f;
      D_(i, s) = D_(r, s) * f;
    }
    for (int j = 0; j < cols_ + 2; ++j)
      if (j != s) D_(r, j) *= inv;
    for (int i = 0; i < rows_ + 2; ++i)
      if (i != r) D_(i, s) *= -inv;
    D_(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  bool run(int phase) {
    const int obj = rows_ + phase - 1;
    for (int guard = 0; guard < 50000; ++guard) {
      int s = -1;
      for (int j = 0; j <= cols_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || std::make_pair(D_(obj, j), nonbasic_[j]) < std::make_pair(D_(obj, s), nonbasic_[s])) s = j;
      }
      const double noise = 64.0 * std::numeric_limits<double>::epsilon() * D_.cwiseAbs().maxCoeff();
      if (D_(obj, s) >= -std::max(kCostEps, noise)) return true;
      // min ratio; among near-ties take the largest pivot element
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows_; ++i)
        if (D_(i, s) > kEps) best = std::min(best, D_(i, cols_ + 1) / D_(i, s));
      int r = -1;
      for (int i = 0; i < rows_; ++i) {
        if (D_(i, s) <= kEps) continue;
        if (D_(i, cols_ + 1) / D_(i, s) > best + kTie * std::max(1.0, std::abs(best))) continue;
        if (r == -1 || std::make_pair(-D_(i, s), basic_[i]) < std::make_pair(-D_(r, s), basic_[r])) r = i;
      }
      if (r == -1) return false;
      pivot(r, s);
    }
    return true;
  }

  int rows_;
  int cols_;
  std::vector<int> nonbasic_;
  std::vector<int> basic_;
  Eigen::MatrixXd D_;
};

}  // namespace

namespace {

LpResult solve_split(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index n = A.cols();
  // x = y+ - y-, both nonnegative.
  Eigen::MatrixXd M(A.rows(), 2 * n);
  M << A, -A;
  Eigen::VectorXd cc(2 * n);
  cc << c, -c;
  LpResult split = Simplex(M, b, cc).solve();
  LpResult out;
  out.status = split.status;
  out.value = split.value;
  if (split.status != LpStatus::Infeasible) out.x = split.x.head(n) - split.x.tail(n);
  return out;
}

constexpr double kBox = 1e9;

}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  LpResult out = solve_split(A, b, c);
  if (out.status != LpStatus::Unbounded) return out;
  // Badly scaled tableaus can report a spurious ray; a genuine one runs into the box.
  const Eigen::Index n = A.cols();
  Eigen::MatrixXd Ab(A.rows() + 2 * n, n);
  Ab << A, Eigen::MatrixXd::Identity(n, n), -Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd bb(A.rows() + 2 * n);
  bb << b, Eigen::VectorXd::Constant(2 * n, kBox);
  LpResult boxed = solve_split(Ab, bb, c);
  if (boxed.status != LpStatus::Optimal || boxed.x.cwiseAbs().maxCoeff() > 0.5 * kBox) {
    out.x = boxed.x;
    return out;
  }
  return boxed;
}

}  // namespace mplank
