#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "stagewise/errors.hpp"

namespace stagewise {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Raw regression data: n observations, p named predictor columns.
struct Dataset {
  Matrix X;
  Vector y;
  std::vector<std::string> names;

  Index n() const { return X.rows(); }
  Index p() const { return X.cols(); }

  void validate() const {
    if (X.rows() < 2) throw ValidationError("need at least 2 observations");
    if (y.size() != X.rows())
      throw ValidationError("response length does not match row count");
    if (static_cast<Index>(names.size()) != X.cols())
      throw ValidationError("name count does not match column count");
    if (!X.allFinite() || !y.allFinite())
      throw ValidationError("non-finite values in data");
  }
};

// Column scaling convention. UnitNorm divides each centered column by its
// L2 norm; UnitVariance divides by the sample standard deviation.
enum class ColumnScaling { UnitNorm, UnitVariance };

// Centered response and centered, rescaled predictors. The intercept is
// absorbed into y_mean and never penalized. Original data is recoverable
// as X[:,j] = Xs[:,j] * col_norms[j] + col_means[j].
struct StandardizedDataset {
  Matrix Xs;
  Vector yc;
  double y_mean = 0.0;
  Vector col_means;
  Vector col_norms;  // the divisor applied to each centered column
  std::vector<std::string> names;
  ColumnScaling scaling = ColumnScaling::UnitNorm;

  Index n() const { return Xs.rows(); }
  Index p() const { return Xs.cols(); }

  // Map standardized coefficients back to the original scale; the matching
  // intercept is y_mean - sum_j beta_orig_j * col_means[j].
  Vector unscale_coefficients(const Vector& beta_std) const {
    return beta_std.array() / col_norms.array();
  }

  double intercept_for(const Vector& beta_std) const {
    const Vector b = unscale_coefficients(beta_std);
    return y_mean - b.dot(col_means);
  }
};

inline StandardizedDataset standardize(
    const Dataset& d, ColumnScaling scaling = ColumnScaling::UnitNorm) {
  d.validate();
  const Index n = d.n();
  const Index p = d.p();

  StandardizedDataset out;
  out.names = d.names;
  out.scaling = scaling;
  out.y_mean = d.y.mean();
  out.yc = d.y.array() - out.y_mean;
  out.col_means.resize(p);
  out.col_norms.resize(p);
  out.Xs.resize(n, p);

  for (Index j = 0; j < p; ++j) {
    out.col_means[j] = d.X.col(j).mean();
    Vector centered = d.X.col(j).array() - out.col_means[j];
    const double norm = centered.norm();
    if (norm <= 1e-12) throw ConstantColumnError(static_cast<int>(j));
    out.col_norms[j] = scaling == ColumnScaling::UnitNorm
                           ? norm
                           : norm / std::sqrt(static_cast<double>(n - 1));
    out.Xs.col(j) = centered / out.col_norms[j];
  }
  return out;
}

// Remove zero-variance predictors (they carry no information beyond the
// intercept). Returns the reduced dataset and the kept column indices.
inline std::pair<Dataset, std::vector<int>> drop_constant_columns(
    const Dataset& d, double tol = 1e-12) {
  std::vector<int> keep;
  for (Index j = 0; j < d.p(); ++j) {
    const Vector centered = d.X.col(j).array() - d.X.col(j).mean();
    if (centered.norm() > tol) keep.push_back(static_cast<int>(j));
  }
  Dataset out;
  out.X.resize(d.n(), static_cast<Index>(keep.size()));
  out.y = d.y;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    out.X.col(static_cast<Index>(i)) = d.X.col(keep[i]);
    out.names.push_back(d.names[keep[i]]);
  }
  return {std::move(out), std::move(keep)};
}

}  // namespace stagewise
