#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"
#include "stagewise/linalg.hpp"

namespace stagewise {

enum class UpdateRule {
  CoefficientStep,  // beta_S += nu * <x_S, r>
  SignStep,         // beta_S += nu * sign(<x_S, r>)
};

struct BoostConfig {
  double nu = 0.1;
  UpdateRule rule = UpdateRule::CoefficientStep;
  int m_max = 1000;
  double stop_tol = -1.0;  // < 0: use 1e-10 * ||yc||

  void validate() const {
    if (!(nu > 0.0 && nu <= 1.0))
      throw ValidationError("boost: nu must be in (0, 1]");
    if (m_max < 1) throw ValidationError("boost: m_max must be >= 1");
  }
};

// Per-iteration record of a componentwise boosting run. coefficients[m]
// is the full p-vector after iteration m (coefficients[0] is zero), on
// the standardized scale. arc_lengths[m] is the cumulative L1 length of
// the coefficient polyline through iteration m.
struct BoostTrace {
  BoostConfig config;
  std::vector<int> selections;
  std::vector<Vector> coefficients;
  Vector fitted;
  std::vector<double> arc_lengths;

  int iterations() const { return static_cast<int>(selections.size()); }
};

namespace detail {

inline void require_unit_columns(const StandardizedDataset& sd) {
  for (Index j = 0; j < sd.p(); ++j) {
    if (std::abs(sd.Xs.col(j).norm() - 1.0) > 1e-8)
      throw NotStandardizedError(
          "boost: predictor columns must have unit L2 norm "
          "(standardize with ColumnScaling::UnitNorm)");
  }
}

inline int argmax_abs(const Vector& c) {
  int best = 0;
  double best_abs = std::abs(c[0]);
  for (Index j = 1; j < c.size(); ++j) {
    const double a = std::abs(c[j]);
    if (a > best_abs) {  // ties resolve to the smallest index
      best_abs = a;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace detail

// Componentwise L2-boosting. Each iteration fits the single best-correlated
// column to the current residual and takes a shrunk step along it, either
// by the fitted coefficient itself or by its sign only.
inline BoostTrace l2boost(const StandardizedDataset& sd,
                          const BoostConfig& cfg) {
  cfg.validate();
  detail::require_unit_columns(sd);

  const double stop_tol =
      cfg.stop_tol >= 0.0 ? cfg.stop_tol : 1e-10 * sd.yc.norm();

  BoostTrace trace;
  trace.config = cfg;
  trace.config.stop_tol = stop_tol;

  Vector beta = Vector::Zero(sd.p());
  Vector residual = sd.yc;
  trace.coefficients.push_back(beta);
  trace.arc_lengths.push_back(0.0);

  for (int m = 1; m <= cfg.m_max; ++m) {
    const Vector c = residual_correlations(sd, residual);
    const int sel = detail::argmax_abs(c);
    const double b = c[sel];  // univariate LS coefficient on a unit column
    if (std::abs(b) < stop_tol) break;

    const double step = cfg.rule == UpdateRule::CoefficientStep
                            ? cfg.nu * b
                            : cfg.nu * (b > 0 ? 1.0 : -1.0);
    beta[sel] += step;
    residual -= step * sd.Xs.col(sel);
    trace.selections.push_back(sel);
    trace.coefficients.push_back(beta);
    trace.arc_lengths.push_back(trace.arc_lengths.back() + std::abs(step));
  }
  trace.fitted = sd.yc - residual;
  return trace;
}

// Boosting operator after m iterations with the selection sequence held
// fixed: B_m = I - (I - nu H_{S_m}) ... (I - nu H_{S_1}), where H_S is the
// rank-one projection onto column S. For the coefficient-step rule,
// B_m * yc reproduces the boosted fit exactly; the sign-step fit is not
// linear in y, so no such operator exists for it.
inline SmootherMatrix boosting_smoother(const StandardizedDataset& sd,
                                        const BoostTrace& trace, int m) {
  if (trace.config.rule != UpdateRule::CoefficientStep)
    throw NotLinearSmootherError(
        "boosting_smoother: the sign-step fit is not linear in y");
  if (m < 0 || m > trace.iterations())
    throw OutOfRangeError("boosting_smoother: iteration out of range");

  const Index n = sd.n();
  Matrix prod = Matrix::Identity(n, n);
  for (int i = 0; i < m; ++i) {
    const auto& col = sd.Xs.col(trace.selections[static_cast<std::size_t>(i)]);
    // (I - nu x x') P, done as a rank-one update
    prod -= trace.config.nu * col * (col.transpose() * prod);
  }
  SmootherMatrix out;
  out.M = Matrix::Identity(n, n) - prod;
  out.kind = SmootherMatrix::Kind::Boosting;
  out.nu = trace.config.nu;
  out.m = m;
  return out;
}

// All prefixes B_1..B_M in one sweep (one rank-one update per iteration).
inline std::vector<SmootherMatrix> boosting_smoother_prefixes(
    const StandardizedDataset& sd, const BoostTrace& trace) {
  if (trace.config.rule != UpdateRule::CoefficientStep)
    throw NotLinearSmootherError(
        "boosting_smoother: the sign-step fit is not linear in y");
  const Index n = sd.n();
  std::vector<SmootherMatrix> out;
  Matrix prod = Matrix::Identity(n, n);
  for (int i = 0; i < trace.iterations(); ++i) {
    const auto& col = sd.Xs.col(trace.selections[static_cast<std::size_t>(i)]);
    prod -= trace.config.nu * col * (col.transpose() * prod);
    SmootherMatrix B;
    B.M = Matrix::Identity(n, n) - prod;
    B.kind = SmootherMatrix::Kind::Boosting;
    B.nu = trace.config.nu;
    B.m = i + 1;
    out.push_back(std::move(B));
  }
  return out;
}

// df(m) = trace(B_m) for each smoother in the sequence.
inline std::vector<double> boost_df_trace(
    const std::vector<SmootherMatrix>& smoothers) {
  std::vector<double> out;
  out.reserve(smoothers.size());
  for (const auto& B : smoothers) out.push_back(B.trace());
  return out;
}

}  // namespace stagewise
