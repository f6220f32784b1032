#pragma once

#include <cstdint>
#include <optional>

#include "qbic/dataset.hpp"

namespace qbic {

// How the Newton iteration is started.
struct FitInit {
  enum class Kind { Zero, Given, UniformAround };
  Kind kind = Kind::Zero;
  Vector value;          // Given: the start point; UniformAround: the center
  double half_width = 1.0;
  std::uint64_t seed = 0;

  static FitInit zero() { return {}; }
  static FitInit given(Vector v);
  static FitInit uniform_around(Vector center, double half_width, std::uint64_t seed);
};

struct FitConfig {
  int max_iter = 100;
  double grad_tol_per_obs = 1e-8;  // tolerance is grad_tol_per_obs * n (sup-norm of score)
  double theta_bound = 50.0;       // box half-width B, Theta = [-B, B]^{p_m}
  FitInit init;

  double grad_tol(Eigen::Index n) const { return grad_tol_per_obs * static_cast<double>(n); }
};

struct FitResult {
  Vector theta_hat;
  double loglik = 0.0;       // H_n(theta_hat)
  double score_norm = 0.0;   // sup-norm of the quasi-score at theta_hat
  Matrix info_hat;           // sum_j d2b(x_j' theta) x_j x_j', un-normalized
  int iterations = 0;
  bool converged = false;
  bool boundary_hit = false;
};

// H_n(theta) = sum_j ( y_j * x_j'theta - b(x_j'theta) ) over the model's columns.
double quasi_loglik(const Dataset& data, const CandidateModel& model, const Vector& theta);

// sum_j ( y_j - db(x_j'theta) ) x_j restricted to the model's columns.
Vector quasi_score(const Dataset& data, const CandidateModel& model, const Vector& theta);

// sum_j d2b(x_j'theta) x_j x_j' (symmetric PSD, p_m x p_m).
Matrix observed_information(const Dataset& data, const CandidateModel& model, const Vector& theta);

// Damped Newton ascent of H_n with step halving, iterates clamped to [-B,B]^{p_m}.
FitResult fit_qmle(const Dataset& data, const CandidateModel& model, const FitConfig& config);

// Sandwich covariance Gamma^-1 Sigma Gamma^-1 / n with Bartlett-kernel long-run Sigma.
// bandwidth 0 is the plain i.i.d. plug-in.
Matrix robust_covariance(const Dataset& data, const CandidateModel& model,
                         const FitResult& fit, int bandwidth);

// log det of a symmetric PSD matrix via Cholesky; eigenvalue fallback with a
// 1e-300 floor. Throws SingularInformation when min eig < 1e-12 * max eig.
double logdet_psd(const Matrix& m);

}  // namespace qbic
