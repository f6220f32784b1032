#pragma once

#include "qbic/dataset.hpp"
#include "qbic/rng.hpp"

namespace qbic {

enum class Scenario { LogitAR, ProbitAR, LagChain };
enum class Link { Logit, Probit };

Scenario scenario_from_string(const std::string& name);
std::string scenario_to_string(Scenario s);

struct DgpSpec {
  Scenario scenario = Scenario::LogitAR;
  Eigen::Index n = 100;
  Vector theta_star;
  std::uint64_t seed = 0;
  int lag_p = 4;        // LagChain: order of the true model
  int design_cols = 0;  // LagChain: lag columns in the emitted design (0 -> lag_p)

  void validate() const;
};

// Covariates of the AR scenarios: column 1 constant one; columns 2-4 AR(1)
// with coefficients (0.5, -0.7, 0.8), initial values (1, 0, -1), and jointly
// normal innovations with covariance (0.5^{|k-l|}).
Matrix gen_covariates_ar(Eigen::Index n, Rng& rng);
// Same recursion with the innovation rows supplied explicitly ((n-1) x 3).
Matrix gen_covariates_ar_with(Eigen::Index n, const Matrix& innovations);

// Bernoulli responses with success probability sigmoid(x'theta) or Phi(x'theta).
Vector gen_response(const Matrix& X, const Vector& theta_star, Link link, Rng& rng);

// Scalar chain Z with zero pre-history, Z_1 = 1, Z_i = 0.6 Z_{i-1} + eps_i;
// row j of the result is (Z_j, Z_{j-1}, ..., Z_{j-lag_p+1}).
Matrix gen_lag_chain(Eigen::Index n, int lag_p, Rng& rng);
Matrix gen_lag_chain_with(Eigen::Index n, int lag_p, const Vector& innovations);

// Full dataset for one replication of a scenario.
Dataset make_dataset(const DgpSpec& spec);

double probit_cdf(double x);

}  // namespace qbic
