#include "qbic/oracle.hpp"

#include <cmath>
#include <limits>

namespace qbic {

Prior Prior::uniform_box(double half_width) {
  if (!(half_width > 0.0)) throw Error("Prior: half_width must be positive");
  Prior p;
  p.kind = Kind::UniformBox;
  p.half_width = half_width;
  return p;
}

Prior Prior::gaussian(Vector mean, Matrix covariance) {
  Prior p;
  p.kind = Kind::Gaussian;
  p.mean = std::move(mean);
  p.covariance = std::move(covariance);
  if (p.covariance.rows() != p.covariance.cols() ||
      p.covariance.rows() != p.mean.size())
    throw Error("Prior: covariance/mean dimension mismatch");
  Eigen::LLT<Matrix> llt(p.covariance);
  if (llt.info() != Eigen::Success)
    throw Error("Prior: covariance not positive definite");
  return p;
}

bool Prior::contains(const Vector& theta) const {
  if (kind == Kind::UniformBox)
    return theta.cwiseAbs().maxCoeff() <= half_width;
  return true;
}

double Prior::log_density(const Vector& theta) const {
  if (kind == Kind::UniformBox) {
    if (!contains(theta)) return -std::numeric_limits<double>::infinity();
    return -static_cast<double>(theta.size()) * std::log(2.0 * half_width);
  }
  const Eigen::Index p = mean.size();
  if (theta.size() != p) throw Error("Prior: theta dimension mismatch");
  Eigen::LLT<Matrix> llt(covariance);
  const Vector d = theta - mean;
  const Vector z = llt.matrixL().solve(d);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) logdet += std::log(llt.matrixL()(i, i));
  return -0.5 * static_cast<double>(p) * std::log(2.0 * M_PI) - logdet -
         0.5 * z.squaredNorm();
}

void QuadratureSpec::validate() const {
  if (points_per_dim < 15) throw Error("QuadratureSpec: points_per_dim must be >= 15");
  if (radius_in_se < 6.0) throw Error("QuadratureSpec: radius_in_se must be >= 6");
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw Error("gauss_legendre: n must be >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

double log_marginal_quadrature(const Dataset& data, const CandidateModel& model,
                               const Prior& prior, const QuadratureSpec& spec,
                               const FitConfig& fit_config) {
  spec.validate();
  const int p = model.dim();
  if (p > 3)
    throw UnsupportedDimension("tensor quadrature supports p_m <= 3, got " +
                               std::to_string(p));
  const FitResult fit = fit_qmle(data, model, fit_config);
  if (!fit.converged) throw InvalidFit("log_marginal_quadrature: fit did not converge");

  // per-axis standard errors from the inverse information at theta_hat
  const Matrix cov = fit.info_hat.inverse();
  Vector se(p);
  for (int i = 0; i < p; ++i) se[i] = std::sqrt(cov(i, i));

  std::vector<double> nodes, weights;
  gauss_legendre(spec.points_per_dim, nodes, weights);

  const double h_ref = fit.loglik;  // factored out of every exponent
  std::vector<double> terms;
  const int q = spec.points_per_dim;
  std::vector<int> idx(p, 0);
  Vector theta(p);
  double log_jacobian = 0.0;
  for (int i = 0; i < p; ++i) log_jacobian += std::log(spec.radius_in_se * se[i]);

  while (true) {
    double logw = log_jacobian;
    for (int i = 0; i < p; ++i) {
      theta[i] = fit.theta_hat[i] + spec.radius_in_se * se[i] * nodes[idx[i]];
      logw += std::log(weights[idx[i]]);
    }
    const double lp = prior.log_density(theta);
    if (std::isfinite(lp)) {
      const double h = quasi_loglik(data, model, theta);
      terms.push_back(h - h_ref + lp + logw);
    }
    int d = 0;
    while (d < p && ++idx[d] == q) idx[d++] = 0;
    if (d == p) break;
  }
  if (terms.empty()) throw Error("log_marginal_quadrature: integration box misses prior support");

  double mx = -std::numeric_limits<double>::infinity();
  for (double t : terms) mx = std::max(mx, t);
  double s = 0.0;
  for (double t : terms) s += std::exp(t - mx);
  return h_ref + mx + std::log(s);
}

double gaussian_log_marginal_closed_form(const Dataset& data, const CandidateModel& model,
                                         const Prior& prior) {
  if (model.family != Family::Gaussian)
    throw Error("gaussian_log_marginal_closed_form: Gaussian family only");
  if (prior.kind != Prior::Kind::Gaussian)
    throw Error("gaussian_log_marginal_closed_form: Gaussian prior only");
  data.validate();
  const Matrix xm = model.design(data);
  const Matrix a = xm.transpose() * xm;              // sum x x'
  const Vector v = xm.transpose() * data.y;          // sum y x
  const Matrix lam_inv = prior.covariance.inverse();
  const Matrix precision = a + lam_inv;

  Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success)
    throw SingularInformation("gaussian_log_marginal_closed_form: singular A + Lambda0^-1");
  double logdet_prec = 0.0;
  for (Eigen::Index i = 0; i < precision.rows(); ++i)
    logdet_prec += 2.0 * std::log(llt.matrixL()(i, i));

  const Vector b = v + lam_inv * prior.mean;
  const Vector m = llt.solve(b);

  Eigen::LLT<Matrix> lltp(prior.covariance);
  double logdet_prior = 0.0;
  for (Eigen::Index i = 0; i < prior.covariance.rows(); ++i)
    logdet_prior += 2.0 * std::log(lltp.matrixL()(i, i));

  // The (2 pi)^{p/2} of the Gaussian integral cancels the prior normalizer.
  return -0.5 * logdet_prec - 0.5 * logdet_prior + 0.5 * b.dot(m) -
         0.5 * prior.mean.dot(lam_inv * prior.mean);
}

double laplace_expansion(const FitResult& fit, const Prior& prior) {
  if (!fit.converged) throw InvalidFit("laplace_expansion: fit has not converged");
  if (!prior.contains(fit.theta_hat))
    throw PriorSupportError("laplace_expansion: theta_hat outside prior support");
  const double p = static_cast<double>(fit.theta_hat.size());
  return fit.loglik + 0.5 * p * std::log(2.0 * M_PI) - 0.5 * logdet_psd(fit.info_hat) +
         prior.log_density(fit.theta_hat);
}

}  // namespace qbic
