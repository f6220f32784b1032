#pragma once

#include "qbic/glm.hpp"

namespace qbic {

// Prior density pi(theta) on the candidate's parameter space.
struct Prior {
  enum class Kind { UniformBox, Gaussian };
  Kind kind = Kind::UniformBox;
  double half_width = 50.0;  // UniformBox: density (2B)^-p on [-B,B]^p
  Vector mean;               // Gaussian
  Matrix covariance;         // Gaussian, symmetric positive definite

  static Prior uniform_box(double half_width);
  static Prior gaussian(Vector mean, Matrix covariance);

  bool contains(const Vector& theta) const;
  double log_density(const Vector& theta) const;  // -inf outside support
};

struct QuadratureSpec {
  int points_per_dim = 48;
  double radius_in_se = 8.0;  // box half-width per axis, in estimated std errors

  void validate() const;
};

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// log of the tensor Gauss-Legendre approximation to
// int exp(H_n(theta)) pi(theta) dtheta over theta_hat +/- radius_in_se standard
// errors per axis, accumulated in log space. Supports p_m <= 3.
double log_marginal_quadrature(const Dataset& data, const CandidateModel& model,
                               const Prior& prior, const QuadratureSpec& spec,
                               const FitConfig& fit_config = FitConfig{});

// Exact Gaussian-family / Gaussian-prior marginal via completing the square.
double gaussian_log_marginal_closed_form(const Dataset& data, const CandidateModel& model,
                                         const Prior& prior);

// H_n(theta_hat) + (p/2) log 2pi - 1/2 log det(info_hat) + log pi(theta_hat).
double laplace_expansion(const FitResult& fit, const Prior& prior);

}  // namespace qbic
