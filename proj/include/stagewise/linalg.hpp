#pragma once

#include <Eigen/Dense>
#include <string>

#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"

namespace stagewise {

constexpr double kRankTolerance = 1e-10;  // relative singular value cutoff

// An n x n linear smoother together with a record of which construction
// produced it.
struct SmootherMatrix {
  enum class Kind { Hat, Boosting, Limiting };

  Matrix M;
  Kind kind = Kind::Hat;
  double nu = 0.0;  // Boosting only
  int m = 0;        // Boosting iteration
  int k = 0;        // Limiting step index

  Index n() const { return M.rows(); }
  double trace() const { return M.trace(); }

  std::string provenance() const {
    switch (kind) {
      case Kind::Hat:
        return "hat";
      case Kind::Boosting:
        return "boosting(nu=" + std::to_string(nu) +
               ",m=" + std::to_string(m) + ")";
      case Kind::Limiting:
        return "limiting(k=" + std::to_string(k) + ")";
    }
    return "?";
  }
};

namespace detail {

inline void check_full_column_rank(const Matrix& Xa, const std::string& ctx) {
  Eigen::JacobiSVD<Matrix> svd(Xa);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= kRankTolerance * sv(0))
    throw RankDeficientError(ctx);
}

}  // namespace detail

// Ordinary least squares via Householder QR. Normal equations are avoided
// on purpose: collinear designs (step-function bases) lose half the digits
// through the Gram matrix.
inline Vector least_squares(const Matrix& Xa, const Vector& y) {
  if (Xa.rows() != y.size())
    throw ValidationError("least_squares: dimension mismatch");
  detail::check_full_column_rank(Xa, "least_squares");
  return Xa.householderQr().solve(y);
}

// Projection onto the column span: M = Xa (Xa'Xa)^-1 Xa', built as Q1 Q1'
// from the thin QR factor so that symmetry and idempotence hold to
// rounding error.
inline SmootherMatrix hat_matrix(const Matrix& Xa) {
  detail::check_full_column_rank(Xa, "hat_matrix");
  Eigen::HouseholderQR<Matrix> qr(Xa);
  Matrix q1 = qr.householderQ() * Matrix::Identity(Xa.rows(), Xa.cols());
  SmootherMatrix out;
  out.M = q1 * q1.transpose();
  out.kind = SmootherMatrix::Kind::Hat;
  return out;
}

// c_j = Xs[:,j]' r for every column.
inline Vector residual_correlations(const Matrix& Xs, const Vector& r) {
  if (Xs.rows() != r.size())
    throw ValidationError("residual_correlations: dimension mismatch");
  return Xs.transpose() * r;
}

inline Vector residual_correlations(const StandardizedDataset& sd,
                                    const Vector& r) {
  return residual_correlations(sd.Xs, r);
}

}  // namespace stagewise
