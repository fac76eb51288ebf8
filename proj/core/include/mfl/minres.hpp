#pragma once

// MINRES for symmetric (possibly indefinite, possibly singular) operators,
// with a projection applied to every new Lanczos vector.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace mfl {

struct MinresOptions {
  double rel_tol = 1e-10;
  int max_iterations = 5000;
  /// Least-squares stop, checked every `lsq_check_every` steps: the true residual r has stagnated
  /// (shrank by less than 1% since the last check) and ||A r|| <= lsq_tol ||A|| ||r||.
  double lsq_tol = 1e-2;
  int lsq_check_every = 10;
};

struct MinresResult {
  Eigen::VectorXd x;
  int iterations = 0;
  /// ||b - A x|| / ||b|| by the recurrence estimate.
  double relative_residual = 0.0;
  bool converged = false;
  /// Stopped at a least-squares solution whose residual is orthogonal to range(A).
  bool least_squares = false;
};

/// Solves A x = b from x = 0. `project` maps vectors onto the complement of a known null
/// space; b must already lie in that complement.
inline MinresResult minres(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
                           const Eigen::VectorXd& b,
                           const std::function<void(Eigen::VectorXd&)>& project, const MinresOptions& opt) {
  MinresResult r;
  const Eigen::Index n = b.size();
  r.x = Eigen::VectorXd::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    r.converged = true;
    return r;
  }
  Eigen::VectorXd v_prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = b / bnorm;
  Eigen::VectorXd w_prev = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd w_prev2 = Eigen::VectorXd::Zero(n);
  double beta = 0.0;  // beta_k couples v_{k-1} and v_k
  double eta = bnorm;
  // Givens rotations of the two previous steps.
  double c_prev = 1.0, s_prev = 0.0, c_prev2 = 1.0, s_prev2 = 0.0;
  // Lower bound on ||A||: one application to a fixed pseudo-random vector, then the max column
  // norm of the Lanczos tridiagonal. Pivots below kBreakdown * anorm mean T_k is singular.
  constexpr double kBreakdown = 1e-10;
  double anorm = 0.0;
  {
    std::mt19937_64 rng(0x6d696e726573ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::VectorXd z(n);
    for (Eigen::Index i = 0; i < n; ++i) z(i) = u(rng);
    project(z);
    const double znorm = z.norm();
    if (znorm > 0.0) anorm = apply(z).norm() / znorm;
  }
  double last_rnorm = bnorm;
  bool breakdown = false;

  for (int k = 1; k <= opt.max_iterations; ++k) {
    Eigen::VectorXd q = apply(v);
    const double alpha = v.dot(q);
    q -= alpha * v + beta * v_prev;
    project(q);
    const double beta_next = q.norm();
    anorm = std::max(anorm, std::sqrt(alpha * alpha + beta * beta + beta_next * beta_next));

    // Apply previous rotations to the new tridiagonal column (beta, alpha, beta_next).
    const double eps = s_prev2 * beta;
    const double delta_bar = c_prev2 * beta;
    const double delta = c_prev * delta_bar + s_prev * alpha;
    const double gamma_bar = -s_prev * delta_bar + c_prev * alpha;
    const double gamma = std::hypot(gamma_bar, beta_next);
    if (gamma <= kBreakdown * anorm) {
      breakdown = true;
      break;
    }
    const double c = gamma_bar / gamma;
    const double s = beta_next / gamma;

    Eigen::VectorXd w = (v - delta * w_prev - eps * w_prev2) / gamma;
    r.x += (c * eta) * w;
    eta = -s * eta;

    w_prev2 = std::move(w_prev);
    w_prev = std::move(w);
    c_prev2 = c_prev;
    s_prev2 = s_prev;
    c_prev = c;
    s_prev = s;
    beta = beta_next;
    r.iterations = k;
    r.relative_residual = std::abs(eta) / bnorm;
    if (r.relative_residual <= opt.rel_tol) {
      r.converged = true;
      break;
    }
    if (opt.lsq_check_every > 0 && k % opt.lsq_check_every == 0) {
      Eigen::VectorXd res = b - apply(r.x);
      project(res);
      const double rnorm = res.norm();
      Eigen::VectorXd ar = apply(res);
      project(ar);
      const bool stagnated = rnorm > 0.99 * last_rnorm;
      last_rnorm = rnorm;
      if (stagnated && ar.norm() <= opt.lsq_tol * anorm * rnorm) {
        r.relative_residual = rnorm / bnorm;
        r.least_squares = true;
        break;
      }
    }
    if (beta_next <= kBreakdown * anorm) {
      breakdown = true;
      break;
    }
    v_prev = std::move(v);
    v = q / beta_next;
  }
  project(r.x);
  if (breakdown && !r.converged) {
    // Krylov space exhausted: x is the least-squares solution over it and b is not in range(A).
    Eigen::VectorXd res = b - apply(r.x);
    project(res);
    r.relative_residual = res.norm() / bnorm;
    r.least_squares = true;
  }
  return r;
}

}  // namespace mfl
