#pragma once

#include <Eigen/Dense>
#include <vector>

#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"

namespace stagewise {

// Nonnegative least squares, Lawson-Hanson active set method:
// argmin_{b >= 0} ||r - Z b||^2. Subproblems are solved by QR on the
// passive columns. `tol` bounds both the dual feasibility check and the
// zero threshold on coefficients.
inline Vector nnls(const Matrix& Z, const Vector& r, double tol = 1e-10,
                   int max_iter = 0) {
  const Index p = Z.cols();
  if (max_iter <= 0) max_iter = 3 * static_cast<int>(p) + 30;

  Vector b = Vector::Zero(p);
  std::vector<bool> passive(static_cast<std::size_t>(p), false);
  Vector w = Z.transpose() * r;  // negative gradient at b = 0

  const double scale = w.size() > 0 ? w.cwiseAbs().maxCoeff() : 0.0;
  const double dual_tol = tol * std::max(1.0, scale);

  auto solve_passive = [&](Vector& z) {
    std::vector<Index> idx;
    for (Index j = 0; j < p; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    z = Vector::Zero(p);
    if (idx.empty()) return;
    Matrix Zp(Z.rows(), static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) Zp.col(static_cast<Index>(i)) = Z.col(idx[i]);
    const Vector sol = Zp.colPivHouseholderQr().solve(r);
    for (std::size_t i = 0; i < idx.size(); ++i) z[idx[i]] = sol[static_cast<Index>(i)];
  };

  for (int outer = 0; outer < max_iter; ++outer) {
    // pick the most violated dual coordinate among the active (zero) set
    Index best = -1;
    double best_w = dual_tol;
    for (Index j = 0; j < p; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > best_w) {
        best_w = w[j];
        best = j;
      }
    }
    if (best < 0) break;  // KKT satisfied
    passive[static_cast<std::size_t>(best)] = true;

    Vector z;
    solve_passive(z);
    // inner loop: pull infeasible coordinates back to the boundary
    int inner_guard = 3 * static_cast<int>(p) + 30;
    while (inner_guard-- > 0) {
      double alpha = 1.0;
      bool feasible = true;
      for (Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && z[j] <= tol) {
          feasible = false;
          const double denom = b[j] - z[j];
          if (denom > 0) alpha = std::min(alpha, b[j] / denom);
        }
      }
      if (feasible) break;
      b += alpha * (z - b);
      for (Index j = 0; j < p; ++j) {
        if (passive[static_cast<std::size_t>(j)] && b[j] <= tol) {
          passive[static_cast<std::size_t>(j)] = false;
          b[j] = 0.0;
        }
      }
      solve_passive(z);
    }
    b = z;
    for (Index j = 0; j < p; ++j)
      if (b[j] < 0) b[j] = 0;  // guard against roundoff
    w = Z.transpose() * (r - Z * b);
  }
  return b;
}

}  // namespace stagewise
