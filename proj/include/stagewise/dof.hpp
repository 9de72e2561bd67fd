#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "stagewise/boosting.hpp"
#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"
#include "stagewise/linalg.hpp"
#include "stagewise/path.hpp"
#include "stagewise/rng.hpp"

namespace stagewise {

struct DfRow {
  int index = 0;  // path step k or boosting iteration m
  double df_trace = 0.0;
  double df_active = 0.0;
  std::optional<double> df_bootstrap;
};

struct DfTable {
  std::vector<DfRow> rows;
  std::string dataset_label;
  std::string method;
  bool include_intercept = true;
};

inline double df_trace(const SmootherMatrix& B) {
  if (B.M.rows() != B.M.cols())
    throw ValidationError("df_trace: smoother must be square");
  return B.trace();
}

// Size of the active set at step k, plus one for the intercept. On a path
// where the active set grows by one per step with no drops this is k + 1.
inline int df_exact_active(const Path& path, int k, bool include_intercept) {
  if (k < 0 || k > path.steps())
    throw OutOfRangeError("df_exact_active: step index out of range");
  const int active =
      k == 0 ? 0
             : static_cast<int>(
                   path.segments[static_cast<std::size_t>(k - 1)].active_set.size());
  return active + (include_intercept ? 1 : 0);
}

// A fitting procedure as seen by the bootstrap: response in, fitted values
// out, with X held fixed. Refitting must include any model reselection.
using ResponseFitter = std::function<Vector(const Vector& y)>;

struct BootstrapEstimate {
  double df = 0.0;
  double std_error = 0.0;
  int reps = 0;
};

// Parametric bootstrap estimate of df = (1/sigma^2) sum_i cov(yhat_i, y_i).
// Simulates y* = mu_hat + sigma * eps around the full least-squares fit,
// refits, and averages the empirical covariance. Replicates use indexed
// substreams, so parallel and sequential execution would agree draw for
// draw; sigma <= 0 estimates the noise scale from the full-model residual.
inline BootstrapEstimate df_bootstrap(const StandardizedDataset& sd,
                                      const ResponseFitter& fitter,
                                      double sigma, int reps,
                                      std::uint64_t seed) {
  if (reps < 100) throw ValidationError("df_bootstrap: need reps >= 100");
  const Index n = sd.n();

  const Vector beta_full = least_squares(sd.Xs, sd.yc);
  const Vector mu_hat =
      (sd.Xs * beta_full).array() + sd.y_mean;  // raw-scale fit
  if (sigma <= 0.0) {
    const double rss = (sd.yc - sd.Xs * beta_full).squaredNorm();
    const Index dof = std::max<Index>(1, n - sd.p() - 1);
    sigma = std::sqrt(rss / static_cast<double>(dof));
  }

  Matrix fits(n, reps);
  Matrix noise(n, reps);
  for (int b = 0; b < reps; ++b) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(b));
    Vector eps(n);
    for (Index i = 0; i < n; ++i) eps[i] = rng.normal();
    noise.col(b) = eps;
    fits.col(b) = fitter(mu_hat + sigma * eps);
  }

  const Vector fit_mean = fits.rowwise().mean();
  // Per-replicate statistic T_b = sum_i (yhat_bi - mean_i) eps_bi / sigma;
  // the estimate is the mean of T_b and its spread gives the Monte Carlo
  // standard error.
  std::vector<double> t_stats(static_cast<std::size_t>(reps));
  double mean_t = 0.0;
  for (int b = 0; b < reps; ++b) {
    const double t = (fits.col(b) - fit_mean).dot(noise.col(b)) / sigma;
    t_stats[static_cast<std::size_t>(b)] = t;
    mean_t += t;
  }
  mean_t /= reps;

  double var_t = 0.0;
  for (const double t : t_stats) var_t += (t - mean_t) * (t - mean_t);
  var_t /= (reps - 1);

  BootstrapEstimate out;
  out.df = mean_t * static_cast<double>(reps) / (reps - 1);
  out.std_error = std::sqrt(var_t / reps);
  out.reps = reps;
  return out;
}

// A fitted linear model on the original data scale.
struct LinearModel {
  double intercept = 0.0;
  Vector coefs;

  double predict(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
    return intercept + x.dot(coefs);
  }
};

inline LinearModel to_original_scale(const StandardizedDataset& sd,
                                     const Vector& beta_std) {
  LinearModel m;
  m.coefs = sd.unscale_coefficients(beta_std);
  m.intercept = sd.intercept_for(beta_std);
  return m;
}

// An indexed family of fits (step 0, 1, 2, ...) trained on a dataset.
using ModelFamily =
    std::function<std::vector<LinearModel>(const Dataset& train)>;

struct CvResult {
  int best_index = 0;
  std::vector<double> cv_error;  // mean squared prediction error per index
  std::vector<int> fold_of;      // fold assignment used
};

// K-fold cross-validation over an indexed model family. Folds are a
// seeded permutation dealt round-robin; each fold's models are trained on
// the remaining rows only (the family is expected to re-standardize
// internally), and errors are averaged over all held-out predictions.
inline CvResult cv_select(const Dataset& d, const ModelFamily& family, int K,
                          std::uint64_t seed) {
  d.validate();
  const Index n = d.n();
  if (K < 2) throw InsufficientDataError("cv_select: need K >= 2");
  // K == n is leave-one-out; below that every fold should hold >= 2 rows.
  if (K != n && n < 2 * K)
    throw InsufficientDataError("cv_select: need n >= 2K observations");

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  Rng rng(seed);
  for (Index i = n - 1; i > 0; --i)
    std::swap(order[static_cast<std::size_t>(i)],
              order[rng.below(static_cast<std::uint64_t>(i + 1))]);

  CvResult out;
  out.fold_of.assign(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i)
    out.fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
        static_cast<int>(i % K);

  // Train per fold.
  std::vector<std::vector<LinearModel>> fold_models;
  std::size_t common = std::numeric_limits<std::size_t>::max();
  for (int f = 0; f < K; ++f) {
    std::vector<Index> train_rows;
    for (Index i = 0; i < n; ++i)
      if (out.fold_of[static_cast<std::size_t>(i)] != f) train_rows.push_back(i);
    Dataset train;
    train.X.resize(static_cast<Index>(train_rows.size()), d.p());
    train.y.resize(static_cast<Index>(train_rows.size()));
    train.names = d.names;
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      train.X.row(static_cast<Index>(i)) = d.X.row(train_rows[i]);
      train.y[static_cast<Index>(i)] = d.y[train_rows[i]];
    }
    fold_models.push_back(family(train));
    common = std::min(common, fold_models.back().size());
  }
  if (common == 0 || common == std::numeric_limits<std::size_t>::max())
    throw InsufficientDataError("cv_select: empty model family");

  out.cv_error.assign(common, 0.0);
  for (Index i = 0; i < n; ++i) {
    const auto& models =
        fold_models[static_cast<std::size_t>(out.fold_of[static_cast<std::size_t>(i)])];
    for (std::size_t idx = 0; idx < common; ++idx) {
      const double err = d.y[i] - models[idx].predict(d.X.row(i));
      out.cv_error[idx] += err * err;
    }
  }
  for (auto& e : out.cv_error) e /= static_cast<double>(n);

  out.best_index = 0;
  for (std::size_t idx = 1; idx < common; ++idx)
    if (out.cv_error[idx] < out.cv_error[static_cast<std::size_t>(out.best_index)])
      out.best_index = static_cast<int>(idx);
  return out;
}

// Family of LAR fits at steps 0..max_steps (0 is the intercept-only model).
inline ModelFamily lar_step_family(int max_steps,
                                   PathVariant variant = PathVariant::LAR) {
  return [max_steps, variant](const Dataset& train) {
    const StandardizedDataset sd = standardize(train);
    PathOptions opt;
    opt.max_breakpoints = max_steps;
    const Path path = lars_path(sd, variant, opt);
    std::vector<LinearModel> models;
    models.push_back(to_original_scale(sd, Vector::Zero(sd.p())));
    for (const auto& seg : path.segments)
      models.push_back(to_original_scale(sd, seg.beta_end));
    return models;
  };
}

// Family of boosting fits at iterations 0, stride, 2*stride, ...
inline ModelFamily boost_iteration_family(BoostConfig cfg, int stride = 1) {
  return [cfg, stride](const Dataset& train) {
    const StandardizedDataset sd = standardize(train);
    const BoostTrace trace = l2boost(sd, cfg);
    std::vector<LinearModel> models;
    for (int m = 0; m <= trace.iterations(); m += stride)
      models.push_back(
          to_original_scale(sd, trace.coefficients[static_cast<std::size_t>(m)]));
    return models;
  };
}

}  // namespace stagewise
