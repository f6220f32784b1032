#include "qbic/simgen.hpp"

#include <cmath>

namespace qbic {

Scenario scenario_from_string(const std::string& name) {
  if (name == "logit_ar" || name == "paper1") return Scenario::LogitAR;
  if (name == "probit_ar" || name == "paper2") return Scenario::ProbitAR;
  if (name == "lag_chain" || name == "paper3") return Scenario::LagChain;
  throw Error("unknown scenario '" + name + "'");
}

std::string scenario_to_string(Scenario s) {
  switch (s) {
    case Scenario::LogitAR: return "logit_ar";
    case Scenario::ProbitAR: return "probit_ar";
    case Scenario::LagChain: return "lag_chain";
  }
  return "?";
}

void DgpSpec::validate() const {
  if (n < 1) throw Error("DgpSpec: n must be >= 1");
  if (scenario == Scenario::LagChain) {
    if (lag_p < 1) throw Error("DgpSpec: lag_p must be >= 1");
    if (theta_star.size() != lag_p)
      throw Error("DgpSpec: LagChain requires len(theta_star) = lag_p");
  } else {
    if (theta_star.size() != 4)
      throw Error("DgpSpec: AR scenarios require len(theta_star) = 4");
  }
}

double probit_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Matrix gen_covariates_ar_with(Eigen::Index n, const Matrix& innovations) {
  if (n < 1) throw Error("gen_covariates_ar: n must be >= 1");
  if (innovations.rows() != n - 1 || (n > 1 && innovations.cols() != 3))
    throw Error("gen_covariates_ar_with: innovations must be (n-1) x 3");
  Matrix x(n, 4);
  x(0, 0) = 1.0;
  x(0, 1) = 1.0;
  x(0, 2) = 0.0;
  x(0, 3) = -1.0;
  static const double coef[3] = {0.5, -0.7, 0.8};
  for (Eigen::Index j = 1; j < n; ++j) {
    x(j, 0) = 1.0;
    for (int k = 0; k < 3; ++k)
      x(j, k + 1) = coef[k] * x(j - 1, k + 1) + innovations(j - 1, k);
  }
  return x;
}

Matrix gen_covariates_ar(Eigen::Index n, Rng& rng) {
  // Cholesky factor of (0.5^{|k-l|}), k,l = 0..2
  Matrix sigma(3, 3);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) sigma(k, l) = std::pow(0.5, std::abs(k - l));
  const Matrix chol = Eigen::LLT<Matrix>(sigma).matrixL();
  Matrix innov(std::max<Eigen::Index>(n - 1, 0), 3);
  for (Eigen::Index j = 0; j + 1 < n; ++j)
    innov.row(j) = (chol * rng.normal_vector(3)).transpose();
  return gen_covariates_ar_with(n, innov);
}

Vector gen_response(const Matrix& X, const Vector& theta_star, Link link, Rng& rng) {
  if (X.cols() != theta_star.size())
    throw Error("gen_response: dimension mismatch");
  const Vector eta = X * theta_star;
  Vector y(X.rows());
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    const double p = (link == Link::Logit) ? sigmoid(eta[j]) : probit_cdf(eta[j]);
    y[j] = rng.bernoulli(p);
  }
  return y;
}

Matrix gen_lag_chain_with(Eigen::Index n, int lag_p, const Vector& innovations) {
  if (n < 1 || lag_p < 1) throw Error("gen_lag_chain: need n >= 1 and lag_p >= 1");
  if (innovations.size() != n - 1)
    throw Error("gen_lag_chain_with: innovations must have length n-1");
  Vector z(n);  // z[i] = Z_{i+1}; pre-history (index <= 0) is zero
  z[0] = 1.0;
  for (Eigen::Index i = 1; i < n; ++i) z[i] = 0.6 * z[i - 1] + innovations[i - 1];
  Matrix x(n, lag_p);
  for (Eigen::Index j = 0; j < n; ++j)
    for (int k = 0; k < lag_p; ++k)
      x(j, k) = (j - k >= 0) ? z[j - k] : 0.0;
  return x;
}

Matrix gen_lag_chain(Eigen::Index n, int lag_p, Rng& rng) {
  Vector innov(std::max<Eigen::Index>(n - 1, 0));
  for (Eigen::Index i = 0; i + 1 < n; ++i) innov[i] = rng.normal();
  return gen_lag_chain_with(n, lag_p, innov);
}

Dataset make_dataset(const DgpSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  Dataset data;
  if (spec.scenario == Scenario::LagChain) {
    const int cols = spec.design_cols > 0 ? spec.design_cols : spec.lag_p;
    const Matrix wide = gen_lag_chain(spec.n, std::max(cols, spec.lag_p), rng);
    data.X = wide.leftCols(cols);
    data.y = gen_response(wide.leftCols(spec.lag_p), spec.theta_star, Link::Logit, rng);
    for (int k = 0; k < cols; ++k)
      data.column_names.push_back("z_lag" + std::to_string(k));
  } else {
    data.X = gen_covariates_ar(spec.n, rng);
    const Link link = spec.scenario == Scenario::LogitAR ? Link::Logit : Link::Probit;
    data.y = gen_response(data.X, spec.theta_star, link, rng);
    data.column_names = {"x1", "x2", "x3", "x4"};
  }
  return data;
}

}  // namespace qbic
