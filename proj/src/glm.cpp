#include "qbic/glm.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "qbic/rng.hpp"

namespace qbic {

void Dataset::validate() const {
  if (y.size() < 1 || X.cols() < 1) throw Error("Dataset: need n >= 1 and p >= 1");
  if (X.rows() != y.size()) throw Error("Dataset: y length and X rows disagree");
  if (!y.allFinite() || !X.allFinite()) throw Error("Dataset: non-finite entries");
  if (!column_names.empty()) {
    if (static_cast<Eigen::Index>(column_names.size()) != X.cols())
      throw Error("Dataset: column_names size and X columns disagree");
    std::set<std::string> seen(column_names.begin(), column_names.end());
    if (seen.size() != column_names.size()) throw Error("Dataset: duplicate column names");
  }
}

void CandidateModel::validate(Eigen::Index p) const {
  if (columns.empty()) throw Error("CandidateModel: needs at least one column");
  std::set<int> seen;
  for (int c : columns) {
    if (c < 0 || c >= p) throw Error("CandidateModel: column index out of range");
    if (!seen.insert(c).second) throw Error("CandidateModel: duplicate column index");
  }
}

Matrix CandidateModel::design(const Dataset& data) const {
  validate(data.p());
  Matrix xm(data.n(), dim());
  for (int k = 0; k < dim(); ++k) xm.col(k) = data.X.col(columns[k]);
  return xm;
}

namespace {

void check_theta(const CandidateModel& model, const Vector& theta) {
  if (theta.size() != model.dim())
    throw Error("theta length does not match model dimension");
  if (!theta.allFinite()) throw Error("theta has non-finite entries");
}

std::string model_label(const CandidateModel& model) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < model.columns.size(); ++i)
    os << (i ? "," : "") << model.columns[i] + 1;
  os << "}";
  return os.str();
}

}  // namespace

double quasi_loglik(const Dataset& data, const CandidateModel& model, const Vector& theta) {
  check_theta(model, theta);
  const Matrix xm = model.design(data);
  const Vector eta = xm * theta;
  double h = 0.0;
  for (Eigen::Index j = 0; j < data.n(); ++j)
    h += data.y[j] * eta[j] - cumulant(model.family, eta[j]);
  return h;
}

Vector quasi_score(const Dataset& data, const CandidateModel& model, const Vector& theta) {
  check_theta(model, theta);
  const Matrix xm = model.design(data);
  const Vector eta = xm * theta;
  Vector resid(data.n());
  for (Eigen::Index j = 0; j < data.n(); ++j)
    resid[j] = data.y[j] - cumulant_deriv(model.family, eta[j], 1);
  return xm.transpose() * resid;
}

Matrix observed_information(const Dataset& data, const CandidateModel& model, const Vector& theta) {
  check_theta(model, theta);
  const Matrix xm = model.design(data);
  const Vector eta = xm * theta;
  Vector w(data.n());
  for (Eigen::Index j = 0; j < data.n(); ++j)
    w[j] = cumulant_deriv(model.family, eta[j], 2);
  Matrix info = xm.transpose() * w.asDiagonal() * xm;
  return 0.5 * (info + info.transpose());  // enforce exact symmetry
}

double logdet_psd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() == Eigen::Success) {
    double ld = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      ld += std::log(llt.matrixL()(i, i));
    return 2.0 * ld;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  const Vector ev = es.eigenvalues();
  double ld = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < 1e-300)
      throw SingularInformation("logdet: eigenvalue below floor");
    ld += std::log(ev[i]);
  }
  return ld;
}

namespace {

// min-eigenvalue relative singularity gate used at every Newton iterate.
void check_information(const Matrix& info, const CandidateModel& model) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(info);
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  if (!(emin >= 1e-12 * std::max(emax, 0.0)) || !(emax > 0.0))
    throw SingularInformation("singular quasi-observed information for candidate " +
                              model_label(model));
}

Vector initial_point(const FitConfig& config, int p_m) {
  switch (config.init.kind) {
    case FitInit::Kind::Zero:
      return Vector::Zero(p_m);
    case FitInit::Kind::Given:
      if (config.init.value.size() != p_m)
        throw Error("FitInit::Given: wrong dimension");
      return config.init.value;
    case FitInit::Kind::UniformAround: {
      if (config.init.value.size() != p_m)
        throw Error("FitInit::UniformAround: wrong center dimension");
      Rng rng(config.init.seed);
      Vector v(p_m);
      for (int i = 0; i < p_m; ++i)
        v[i] = config.init.value[i] +
               rng.uniform(-config.init.half_width, config.init.half_width);
      return v;
    }
  }
  return Vector::Zero(p_m);
}

}  // namespace

FitInit FitInit::given(Vector v) {
  FitInit init;
  init.kind = Kind::Given;
  init.value = std::move(v);
  return init;
}

FitInit FitInit::uniform_around(Vector center, double half_width, std::uint64_t seed) {
  FitInit init;
  init.kind = Kind::UniformAround;
  init.value = std::move(center);
  init.half_width = half_width;
  init.seed = seed;
  return init;
}

FitResult fit_qmle(const Dataset& data, const CandidateModel& model, const FitConfig& config) {
  data.validate();
  model.validate(data.p());
  if (config.max_iter < 1 || config.grad_tol_per_obs <= 0.0 || config.theta_bound <= 0.0)
    throw Error("FitConfig: invalid settings");

  const int p_m = model.dim();
  const double B = config.theta_bound;
  const double tol = config.grad_tol(data.n());

  Vector theta = initial_point(config, p_m).cwiseMax(-B).cwiseMin(B);
  double h = quasi_loglik(data, model, theta);
  if (!std::isfinite(h))
    throw InitializationError("quasi-log-likelihood not finite at the starting point for candidate " +
                              model_label(model));

  FitResult out;
  out.iterations = 0;
  Vector score = quasi_score(data, model, theta);

  for (int it = 0; it < config.max_iter && score.lpNorm<Eigen::Infinity>() > tol; ++it) {
    Matrix info = observed_information(data, model, theta);
    check_information(info, model);
    Vector step = info.ldlt().solve(score);

    // step halving: accept only if H_n does not decrease. The slack covers
    // floating-point summation noise once the true gain is below rounding,
    // so the iteration can still walk the score below a tight tolerance.
    const double slack = 1e-12 * (1.0 + std::fabs(h));
    double scale = 1.0;
    Vector trial;
    double h_trial = -std::numeric_limits<double>::infinity();
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      trial = (theta + scale * step).cwiseMax(-B).cwiseMin(B);
      h_trial = quasi_loglik(data, model, trial);
      if (std::isfinite(h_trial) && h_trial >= h - slack) {
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    out.iterations = it + 1;
    if (!accepted) break;  // no admissible step; report current point
    theta = trial;
    h = h_trial;
    score = quasi_score(data, model, theta);
  }

  out.theta_hat = theta;
  out.loglik = h;
  out.score_norm = score.lpNorm<Eigen::Infinity>();
  out.info_hat = observed_information(data, model, theta);
  out.boundary_hit = (theta.cwiseAbs().maxCoeff() >= B);
  out.converged = (out.score_norm <= tol) && !out.boundary_hit;
  return out;
}

Matrix robust_covariance(const Dataset& data, const CandidateModel& model,
                         const FitResult& fit, int bandwidth) {
  if (!fit.converged) throw InvalidFit("robust_covariance: fit has not converged");
  if (bandwidth < 0) throw Error("robust_covariance: bandwidth must be >= 0");
  const Matrix xm = model.design(data);
  const Vector eta = xm * fit.theta_hat;
  const Eigen::Index n = data.n();
  const int p_m = model.dim();

  Matrix psi(n, p_m);  // row j = (y_j - db(x_j'theta)) x_j
  for (Eigen::Index j = 0; j < n; ++j)
    psi.row(j) = (data.y[j] - cumulant_deriv(model.family, eta[j], 1)) * xm.row(j);

  Matrix sigma = psi.transpose() * psi / static_cast<double>(n);
  for (int l = 1; l <= bandwidth; ++l) {
    if (l >= n) break;
    const double w = 1.0 - static_cast<double>(l) / (bandwidth + 1.0);
    Matrix gamma_l = psi.topRows(n - l).transpose() * psi.bottomRows(n - l) /
                     static_cast<double>(n);
    sigma += w * (gamma_l + gamma_l.transpose());
  }
  sigma = 0.5 * (sigma + sigma.transpose());

  Matrix gamma = fit.info_hat / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Matrix> es(gamma);
  if (es.eigenvalues().minCoeff() < 1e-12 * std::max(es.eigenvalues().maxCoeff(), 0.0))
    throw SingularInformation("robust_covariance: singular information");
  Matrix ginv = gamma.inverse();
  Matrix cov = ginv * sigma * ginv / static_cast<double>(n);
  return 0.5 * (cov + cov.transpose());
}

}  // namespace qbic
