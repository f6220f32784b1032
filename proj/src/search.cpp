#include "qbic/search.hpp"

#include <algorithm>

#include "qbic/rng.hpp"

namespace qbic {

namespace {

void subsets_of_size(int p, int k, std::vector<CandidateModel>& out, Family family) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    CandidateModel m;
    m.columns = idx;
    m.family = family;
    out.push_back(m);
    int i = k - 1;
    while (i >= 0 && idx[i] == p - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Adapt a fit config to one candidate: project a full-dimension init center
// onto the candidate's columns and give each candidate its own init stream.
FitConfig config_for(const FitConfig& base, const CandidateModel& model, int full_p,
                     int model_id) {
  FitConfig cfg = base;
  if (cfg.init.kind != FitInit::Kind::Zero &&
      cfg.init.value.size() != model.dim()) {
    if (cfg.init.value.size() == full_p) {
      Vector center(model.dim());
      for (int k = 0; k < model.dim(); ++k) center[k] = cfg.init.value[model.columns[k]];
      cfg.init.value = center;
    } else if (cfg.init.kind == FitInit::Kind::UniformAround) {
      // center unavailable for this dimension; fall back to zero center
      cfg.init.value = Vector::Zero(model.dim());
    } else {
      throw Error("fit init dimension matches neither the candidate nor the full design");
    }
  }
  if (cfg.init.kind == FitInit::Kind::UniformAround)
    cfg.init.seed = mix_seed(base.init.seed, static_cast<std::uint64_t>(model_id));
  return cfg;
}

}  // namespace

std::vector<CandidateModel> enumerate_candidates(int p, SearchMode mode, Family family,
                                                 int max_order) {
  if (p < 1) throw Error("enumerate_candidates: p must be >= 1");
  std::vector<CandidateModel> out;
  if (mode == SearchMode::ExhaustiveSubsets) {
    if (p > 20) throw TooManyCandidates("exhaustive enumeration refused for p > 20");
    for (int k = p; k >= 1; --k) subsets_of_size(p, k, out, family);
  } else {
    if (max_order < 1) throw Error("enumerate_candidates: max_order must be >= 1");
    const int cap = std::min(max_order, p);
    for (int k = 1; k <= cap; ++k) {
      CandidateModel m;
      m.family = family;
      for (int i = 0; i < k; ++i) m.columns.push_back(i);
      out.push_back(m);
    }
  }
  return out;
}

int forward_stop_index(const std::vector<double>& values) {
  if (values.empty()) throw Error("forward_stop_index: empty sequence");
  for (size_t k = 0; k + 1 < values.size(); ++k)
    if (values[k] < values[k + 1]) return static_cast<int>(k);
  return static_cast<int>(values.size()) - 1;
}

SelectionResult select_exhaustive(const Dataset& data, const SearchSpec& spec) {
  if (spec.mode != SearchMode::ExhaustiveSubsets)
    throw Error("select_exhaustive: spec.mode is not exhaustive");
  data.validate();
  const auto candidates =
      enumerate_candidates(static_cast<int>(data.p()), spec.mode, spec.family);
  SelectionResult out;
  out.reports.reserve(candidates.size());
  out.fits.resize(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const FitConfig cfg =
        config_for(spec.fit_config, candidates[i], static_cast<int>(data.p()), id);
    try {
      FitResult fit = fit_qmle(data, candidates[i], cfg);
      out.reports.push_back(make_report(id, fit, data.n()));
      out.fits[i] = std::move(fit);
    } catch (const Error& e) {
      CriterionReport r;
      r.model_id = id;
      r.p_m = candidates[i].dim();
      r.excluded = true;
      r.note = e.what();
      out.reports.push_back(r);
    }
  }
  out.winner = select_best(out.reports, spec.criterion);
  return out;
}

SelectionResult select_forward(const Dataset& data, const SearchSpec& spec) {
  if (spec.mode != SearchMode::HierarchicalForward)
    throw Error("select_forward: spec.mode is not hierarchical");
  data.validate();
  const auto candidates = enumerate_candidates(static_cast<int>(data.p()), spec.mode,
                                               spec.family, spec.max_order);
  SelectionResult out;
  std::vector<double> values;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    const FitConfig cfg =
        config_for(spec.fit_config, candidates[i], static_cast<int>(data.p()), id);
    FitResult fit = fit_qmle(data, candidates[i], cfg);
    out.reports.push_back(make_report(id, fit, data.n()));
    out.fits.push_back(std::move(fit));
    if (out.reports.back().excluded)
      throw SingularInformation(out.reports.back().note);
    values.push_back(out.reports.back().value(spec.criterion));
    // stop at the first rise; strict inequality, equality continues
    if (values.size() >= 2 && values[values.size() - 2] < values.back()) break;
  }
  out.winner = forward_stop_index(values) + 1;
  return out;
}

}  // namespace qbic
