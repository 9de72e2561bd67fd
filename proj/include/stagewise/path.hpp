#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "stagewise/dataset.hpp"
#include "stagewise/errors.hpp"
#include "stagewise/linalg.hpp"
#include "stagewise/nnls.hpp"

namespace stagewise {

enum class PathVariant { LAR, Lasso, ForwardStagewise };

inline std::string to_string(PathVariant v) {
  switch (v) {
    case PathVariant::LAR:
      return "lar";
    case PathVariant::Lasso:
      return "lasso";
    case PathVariant::ForwardStagewise:
      return "stagewise";
  }
  return "?";
}

// One linear piece of the coefficient path.
//
// `gamma` is the fraction of the full step traveled: 1 means the segment
// ran all the way to the least-squares fit of its moving variables, smaller
// values mean a new variable tied in correlation (or a coefficient hit
// zero) before that. `direction` holds the actual coefficient increment
// over the segment, so beta_start = beta_end - direction.
struct PathSegment {
  std::vector<int> active_set;  // in order of entry
  Vector direction;
  double gamma = 0.0;
  Vector beta_end;
  double arc_end = 0.0;
};

struct Path {
  PathVariant variant = PathVariant::LAR;
  std::vector<PathSegment> segments;
  Vector final_beta;

  int steps() const { return static_cast<int>(segments.size()); }
  double total_arc() const {
    return segments.empty() ? 0.0 : segments.back().arc_end;
  }
};

struct PathOptions {
  double stop_tol = -1.0;   // < 0: 1e-10 * ||yc||
  double tie_tol = 1e-9;    // relative tolerance on |correlation| ties
  double zero_tol = 1e-12;  // step candidates below this are noise
  double nnls_tol = 1e-10;
  int max_breakpoints = 0;  // 0: run to completion
  int max_segments = 0;     // 0: 50 * p + 50 guard
};

// The LARS family. All three variants walk the same piecewise-linear
// skeleton; they differ only in how the move direction is restricted and
// in whether coefficients may cross zero:
//
//   LAR               move every active variable along the equiangular
//                     least-squares direction.
//   Lasso             like LAR, but end the segment where a coefficient
//                     would cross zero and drop that variable (it may
//                     re-enter later).
//   ForwardStagewise  restrict the direction to the sign-consistent cone
//                     via nonnegative least squares; variables with a zero
//                     NNLS weight stay active but do not move.
//
// Each segment is parameterized by t in [0, 1], where t = 1 is the full
// least-squares step of the moving variables against the current residual.
// With the active correlations tied at C, the moving correlations decay as
// C(1 - t) and an outside variable with correlation c_j and direction
// exposure a_j = x_j' (full-step fit change) ties when
//   (C - c_j)/(C - a_j)  or  (C + c_j)/(C + a_j)
// reaches t. The recorded gamma is exactly this relative t.
inline Path lars_path(const StandardizedDataset& sd,
                      PathVariant variant = PathVariant::LAR,
                      const PathOptions& opt = PathOptions{}) {
  const Index n = sd.n();
  const Index p = sd.p();
  const double stop_tol =
      opt.stop_tol >= 0.0 ? opt.stop_tol : 1e-10 * sd.yc.norm();
  const int max_segments =
      opt.max_segments > 0 ? opt.max_segments : 50 * static_cast<int>(p) + 50;

  Path path;
  path.variant = variant;

  Vector beta = Vector::Zero(p);
  Vector mu = Vector::Zero(n);
  std::vector<int> active;
  std::vector<bool> is_active(static_cast<std::size_t>(p), false);
  bool just_dropped = false;
  double arc = 0.0;

  while (path.steps() < max_segments) {
    if (opt.max_breakpoints > 0 && path.steps() >= opt.max_breakpoints) break;

    const Vector r = sd.yc - mu;
    const Vector c = residual_correlations(sd, r);
    const double cmax = c.cwiseAbs().maxCoeff();
    if (cmax < stop_tol) break;

    // Admit newly tied variables. After a lasso drop the dropped variable
    // is still tied exactly; the standard rule skips admission for one
    // segment so it can fall strictly inside.
    if (!just_dropped) {
      for (Index j = 0; j < p; ++j) {
        if (is_active[static_cast<std::size_t>(j)]) continue;
        if (std::abs(c[j]) >= cmax * (1.0 - opt.tie_tol)) {
          active.push_back(static_cast<int>(j));
          is_active[static_cast<std::size_t>(j)] = true;
        }
      }
    }
    just_dropped = false;
    const Index k = static_cast<Index>(active.size());
    if (k == 0) break;

    // Sign-adjusted active columns.
    Vector signs(k);
    Matrix Z(n, k);
    for (Index i = 0; i < k; ++i) {
      const int j = active[static_cast<std::size_t>(i)];
      signs[i] = c[j] >= 0 ? 1.0 : -1.0;
      Z.col(i) = signs[i] * sd.Xs.col(j);
    }

    // Full-step direction in the sign-adjusted space.
    Eigen::ColPivHouseholderQR<Matrix> qr(Z);
    qr.setThreshold(kRankTolerance);
    if (qr.rank() < k)
      throw RankDeficientError("lars_path: active set at step " +
                               std::to_string(path.steps() + 1));
    Vector delta = qr.solve(r);

    std::vector<bool> moving_coord(static_cast<std::size_t>(p), false);
    for (const int j : active) moving_coord[static_cast<std::size_t>(j)] = true;
    if (variant == PathVariant::ForwardStagewise && delta.minCoeff() < 0.0) {
      delta = nnls(Z, r, opt.nnls_tol);
      bool any = false;
      for (Index i = 0; i < k; ++i) {
        const bool moves = delta[i] > 0.0;
        moving_coord[static_cast<std::size_t>(
            active[static_cast<std::size_t>(i)])] = moves;
        any = any || moves;
      }
      if (!any)
        throw NoProgressError("lars_path: stagewise direction vanished");
    }

    const Vector dmu = Z * delta;   // fitted-value change of the full step
    const Vector a = sd.Xs.transpose() * dmu;

    // Earliest tie among variables that are not moving this segment.
    double t_hat = 1.0;
    for (Index j = 0; j < p; ++j) {
      if (moving_coord[static_cast<std::size_t>(j)]) continue;
      for (const double t : {(cmax - c[j]) / (cmax - a[j]),
                             (cmax + c[j]) / (cmax + a[j])}) {
        if (std::isfinite(t) && t > opt.zero_tol && t < t_hat) t_hat = t;
      }
    }

    // Lasso: a coefficient crossing zero ends the segment early.
    std::vector<int> drops;
    if (variant == PathVariant::Lasso) {
      double t_drop = t_hat;
      for (Index i = 0; i < k; ++i) {
        const int j = active[static_cast<std::size_t>(i)];
        const double step = signs[i] * delta[i];
        if (std::abs(step) < opt.zero_tol) continue;
        const double t = -beta[j] / step;
        if (t > opt.zero_tol && t < t_drop) t_drop = t;
      }
      if (t_drop < t_hat) {
        t_hat = t_drop;
        for (Index i = 0; i < k; ++i) {
          const int j = active[static_cast<std::size_t>(i)];
          const double step = signs[i] * delta[i];
          if (std::abs(step) < opt.zero_tol) continue;
          const double t = -beta[j] / step;
          if (std::abs(t - t_drop) <= opt.zero_tol * std::max(1.0, t_drop))
            drops.push_back(j);
        }
      }
    }

    if (t_hat <= opt.zero_tol)
      throw NoProgressError("lars_path: zero-length segment at step " +
                            std::to_string(path.steps() + 1));

    // Execute the move and record the segment.
    PathSegment seg;
    seg.active_set = active;
    seg.direction = Vector::Zero(p);
    for (Index i = 0; i < k; ++i) {
      const int j = active[static_cast<std::size_t>(i)];
      seg.direction[j] = t_hat * signs[i] * delta[i];
      beta[j] += seg.direction[j];
    }
    mu += t_hat * dmu;
    for (const int j : drops) beta[j] = 0.0;  // exact zero at a crossing
    arc += seg.direction.cwiseAbs().sum();
    seg.gamma = t_hat;
    seg.beta_end = beta;
    seg.arc_end = arc;
    path.segments.push_back(std::move(seg));

    if (!drops.empty()) {
      for (const int j : drops) {
        active.erase(std::find(active.begin(), active.end(), j));
        is_active[static_cast<std::size_t>(j)] = false;
      }
      just_dropped = true;
    }
  }

  if (path.steps() >= max_segments)
    throw NoProgressError("lars_path: segment limit exceeded");
  path.final_beta = beta;
  return path;
}

// Coefficients at L1 arc-length s, linear within segments.
inline Vector coefficients_at(const Path& path, double s) {
  const double total = path.total_arc();
  if (s < -1e-12 || s > total * (1.0 + 1e-12) + 1e-12)
    throw OutOfRangeError("coefficients_at: arc length out of range");
  s = std::clamp(s, 0.0, total);

  Vector beta = Vector::Zero(path.final_beta.size());
  double start = 0.0;
  for (const auto& seg : path.segments) {
    if (s <= seg.arc_end) {
      const double len = seg.arc_end - start;
      const double t = len > 0.0 ? (s - start) / len : 1.0;
      return (seg.beta_end - seg.direction) + t * seg.direction;
    }
    start = seg.arc_end;
    beta = seg.beta_end;
  }
  return beta;
}

// Limiting smoother after k path steps:
//   B_k = I - (I - gamma_k H_k) (I - gamma_{k-1} H_{k-1}) ... (I - gamma_1 H_1)
// where H_j projects onto the span of segment j's active columns. With
// include_intercept the mean projection is composed first (innermost), so
// B_k applies to the raw response and its trace carries the intercept's
// full degree of freedom.
inline SmootherMatrix limiting_hat(const StandardizedDataset& sd,
                                   const Path& path, int k,
                                   bool include_intercept) {
  if (k < 0 || k > path.steps())
    throw OutOfRangeError("limiting_hat: step index out of range");
  const Index n = sd.n();

  Matrix prod = Matrix::Identity(n, n);
  if (include_intercept)
    prod -= Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  for (int j = 0; j < k; ++j) {
    const auto& seg = path.segments[static_cast<std::size_t>(j)];
    Matrix Xa(n, static_cast<Index>(seg.active_set.size()));
    for (std::size_t i = 0; i < seg.active_set.size(); ++i)
      Xa.col(static_cast<Index>(i)) = sd.Xs.col(seg.active_set[i]);
    const Matrix H = hat_matrix(Xa).M;
    prod -= seg.gamma * H * prod;
  }
  SmootherMatrix out;
  out.M = Matrix::Identity(n, n) - prod;
  out.kind = SmootherMatrix::Kind::Limiting;
  out.k = k;
  return out;
}

// B_1..B_K in one sweep, sharing the running product.
inline std::vector<SmootherMatrix> limiting_hat_prefixes(
    const StandardizedDataset& sd, const Path& path, bool include_intercept) {
  const Index n = sd.n();
  std::vector<SmootherMatrix> out;
  Matrix prod = Matrix::Identity(n, n);
  if (include_intercept)
    prod -= Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
  for (int j = 0; j < path.steps(); ++j) {
    const auto& seg = path.segments[static_cast<std::size_t>(j)];
    Matrix Xa(n, static_cast<Index>(seg.active_set.size()));
    for (std::size_t i = 0; i < seg.active_set.size(); ++i)
      Xa.col(static_cast<Index>(i)) = sd.Xs.col(seg.active_set[i]);
    const Matrix H = hat_matrix(Xa).M;
    prod -= seg.gamma * H * prod;
    SmootherMatrix B;
    B.M = Matrix::Identity(n, n) - prod;
    B.kind = SmootherMatrix::Kind::Limiting;
    B.k = j + 1;
    out.push_back(std::move(B));
  }
  return out;
}

// True when every coordinate profile moves away from zero along the whole
// path: no sign change and no decrease in magnitude beyond `tol`.
inline bool is_monotone(const Path& path, double tol = 1e-10) {
  if (path.segments.empty()) return true;
  const Index p = path.final_beta.size();
  for (Index j = 0; j < p; ++j) {
    double prev = 0.0;
    for (const auto& seg : path.segments) {
      const double cur = seg.beta_end[j];
      if (std::abs(cur) < std::abs(prev) - tol) return false;
      if (cur * prev < 0.0 && std::abs(cur) > tol && std::abs(prev) > tol)
        return false;
      prev = cur;
    }
  }
  return true;
}

// Compare two paths on the union of their breakpoints plus midpoints.
inline bool paths_equal(const Path& p1, const Path& p2, double tol) {
  if (p1.final_beta.size() != p2.final_beta.size()) return false;
  const double total1 = p1.total_arc();
  const double total2 = p2.total_arc();
  const double scale = std::max({1.0, total1, total2});
  if (std::abs(total1 - total2) > tol * scale) return false;

  std::vector<double> grid{0.0};
  for (const auto& seg : p1.segments) grid.push_back(seg.arc_end);
  for (const auto& seg : p2.segments) grid.push_back(seg.arc_end);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::vector<double> probe;
  const double cap = std::min(total1, total2);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] > cap) break;
    probe.push_back(grid[i]);
    if (i + 1 < grid.size() && grid[i + 1] <= cap)
      probe.push_back(0.5 * (grid[i] + grid[i + 1]));
  }
  for (const double s : probe) {
    const Vector d = coefficients_at(p1, s) - coefficients_at(p2, s);
    if (d.cwiseAbs().maxCoeff() > tol) return false;
  }
  return true;
}

}  // namespace stagewise
