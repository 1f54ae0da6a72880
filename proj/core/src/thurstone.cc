// Copyright 2026 The topkduel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "topkduel/thurstone.h"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace topkduel {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;  // log(2 pi) / 2
constexpr double kFloorVar = kSigmaFloor * kSigmaFloor;

void check_shapes(const ThurstoneParams& params, const StatsTable& table) {
  const int k = table.size();
  if (params.size() != k || params.sigma.size() != num_pairs(k)) {
    throw std::invalid_argument(
        "parameter dimensions do not match a table of " + std::to_string(k) +
        " alternatives");
  }
}

void check_finite(const ThurstoneParams& params) {
  for (int i = 0; i < params.size(); ++i) {
    if (!std::isfinite(params.gamma[i])) {
      throw FitError("gamma[" + std::to_string(i) + "]",
                     "non-finite log-likelihood");
    }
  }
  for (std::size_t p = 0; p < params.sigma.size(); ++p) {
    if (!std::isfinite(params.sigma[p]) || params.sigma[p] <= 0.0) {
      throw FitError("sigma[" + std::to_string(p) + "]",
                     "non-finite log-likelihood");
    }
  }
}

// A sampled canonical pair, flattened for the optimizer.
struct PairTerm {
  int i;
  int j;
  std::size_t index;
  double n;
  double mean;
  double m2;
};

std::vector<PairTerm> sampled_terms(const StatsTable& table) {
  std::vector<PairTerm> terms;
  const int k = table.size();
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::size_t idx = pair_index(i, j, k);
      const PairStats& s = table.at(idx);
      if (s.n == 0) continue;
      terms.push_back({i, j, idx, static_cast<double>(s.n), s.mean, s.m2});
    }
  }
  return terms;
}

// Likelihood-maximizing variance of one pair for residual r.
double profile_var(const PairTerm& t, double r) {
  return std::max(t.m2 / t.n + r * r, kFloorVar);
}

// Negative log-likelihood of one pair with sigma profiled out, dropping the
// constant log(2 pi) term.
double pair_cost(const PairTerm& t, double r) {
  const double v = profile_var(t, r);
  return 0.5 * t.n * std::log(v) + (t.m2 + t.n * r * r) / (2.0 * v);
}

// pair_cost(r1) - pair_cost(r0) without cancellation when r1 ~ r0.
// dr = r1 - r0, taken from the step itself rather than by subtraction.
double pair_cost_change(const PairTerm& t, double r0, double dr) {
  const double r1 = r0 + dr;
  const double v0 = t.m2 / t.n + r0 * r0;
  const double v1 = t.m2 / t.n + r1 * r1;
  if (v0 >= kFloorVar && v1 >= kFloorVar) {
    return 0.5 * t.n * std::log1p(dr * (2.0 * r0 + dr) / v0);
  }
  return pair_cost(t, r1) - pair_cost(t, r0);
}

// Negative profile log-likelihood over the free qualities x = gamma[1..K-1].
class ProfileObjective {
 public:
  ProfileObjective(const StatsTable& table)
      : k_(table.size()), terms_(sampled_terms(table)) {}

  int dim() const { return k_ - 1; }
  const std::vector<PairTerm>& terms() const { return terms_; }

  static double gamma(const Eigen::VectorXd& x, int i) {
    return i == 0 ? 0.0 : x[i - 1];
  }
  static double residual(const PairTerm& t, const Eigen::VectorXd& x) {
    return t.mean - (gamma(x, t.i) - gamma(x, t.j));
  }

  double value(const Eigen::VectorXd& x) const {
    double f = 0.0;
    for (const PairTerm& t : terms_) f += pair_cost(t, residual(t, x));
    return f;
  }

  // Cost difference between x and x + delta.
  double change(const Eigen::VectorXd& x, const Eigen::VectorXd& delta) const {
    double df = 0.0;
    for (const PairTerm& t : terms_) {
      const double dr = -(gamma(delta, t.i) - gamma(delta, t.j));
      df += pair_cost_change(t, residual(t, x), dr);
    }
    return df;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim());
    for (const PairTerm& t : terms_) {
      const double r = residual(t, x);
      const double w = t.n * r / profile_var(t, r);
      if (t.i > 0) g[t.i - 1] -= w;
      if (t.j > 0) g[t.j - 1] += w;
    }
    return g;
  }

  // Inverse of the weighted graph Laplacian with gamma[0] removed; the
  // Gauss-Newton curvature for fixed sigma.
  Eigen::MatrixXd initial_inverse_hessian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(dim(), dim());
    for (const PairTerm& t : terms_) {
      const double w = t.n / profile_var(t, residual(t, x));
      if (t.i > 0) lap(t.i - 1, t.i - 1) += w;
      if (t.j > 0) lap(t.j - 1, t.j - 1) += w;
      if (t.i > 0 && t.j > 0) {
        lap(t.i - 1, t.j - 1) -= w;
        lap(t.j - 1, t.i - 1) -= w;
      }
    }
    Eigen::LLT<Eigen::MatrixXd> llt(lap);
    if (llt.info() == Eigen::Success) {
      return llt.solve(Eigen::MatrixXd::Identity(dim(), dim()));
    }
    Eigen::MatrixXd diag = Eigen::MatrixXd::Identity(dim(), dim());
    for (int d = 0; d < dim(); ++d) {
      if (lap(d, d) > 0.0) diag(d, d) = 1.0 / lap(d, d);
    }
    return diag;
  }

 private:
  int k_;
  std::vector<PairTerm> terms_;
};

ThurstoneParams params_from_profile(const ProfileObjective& objective,
                                    const Eigen::VectorXd& x,
                                    const ThurstoneParams& init) {
  ThurstoneParams out = init;
  out.gamma[0] = 0.0;
  for (int i = 1; i < out.size(); ++i) out.gamma[i] = x[i - 1];
  for (const PairTerm& t : objective.terms()) {
    out.sigma[t.index] =
        std::sqrt(profile_var(t, ProfileObjective::residual(t, x)));
  }
  return out;
}

}  // namespace

double ThurstoneParams::pair_sigma(int i, int j) const {
  const int k = size();
  return i < j ? sigma[pair_index(i, j, k)] : sigma[pair_index(j, i, k)];
}

ThurstoneParams init_params(const StatsTable& table) {
  const int k = table.size();
  ThurstoneParams params;
  params.gamma.resize(k);
  params.sigma.resize(num_pairs(k));

  const std::vector<double> borda = table.borda_estimates();
  for (int i = 0; i < k; ++i) {
    params.gamma[i] = (borda[i] - borda[0]) / static_cast<double>(k);
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      params.sigma[pair_index(i, j, k)] = table.stddev(i, j);
    }
  }
  return params;
}

double log_likelihood(const ThurstoneParams& params, const StatsTable& table) {
  check_shapes(params, table);
  const int k = table.size();
  double ll = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::size_t idx = pair_index(i, j, k);
      const PairStats& s = table.at(idx);
      if (s.n == 0) continue;
      const double n = static_cast<double>(s.n);
      const double sigma = params.sigma[idx];
      const double r = s.mean - (params.gamma[i] - params.gamma[j]);
      ll += -n * kHalfLog2Pi - n * std::log(sigma) -
            (s.m2 + n * r * r) / (2.0 * sigma * sigma);
    }
  }
  return ll;
}

LikelihoodGradient ll_gradient(const ThurstoneParams& params,
                               const StatsTable& table) {
  check_shapes(params, table);
  const int k = table.size();
  LikelihoodGradient grad;
  grad.gamma.assign(k, 0.0);
  grad.sigma.assign(num_pairs(k), 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      const std::size_t idx = pair_index(i, j, k);
      const PairStats& s = table.at(idx);
      if (s.n == 0) continue;
      const double n = static_cast<double>(s.n);
      const double sigma = params.sigma[idx];
      const double var = sigma * sigma;
      const double r = s.mean - (params.gamma[i] - params.gamma[j]);
      grad.gamma[i] += n * r / var;
      grad.gamma[j] -= n * r / var;
      grad.sigma[idx] = -n / sigma + (s.m2 + n * r * r) / (var * sigma);
    }
  }
  return grad;
}

double free_gradient_norm(const LikelihoodGradient& grad,
                          const ThurstoneParams& params,
                          const StatsTable& table) {
  double norm = 0.0;
  for (std::size_t i = 1; i < grad.gamma.size(); ++i) {
    norm = std::max(norm, std::abs(grad.gamma[i]));
  }
  for (std::size_t p = 0; p < grad.sigma.size(); ++p) {
    if (table.at(p).n == 0) continue;
    const bool pinned = params.sigma[p] <= kSigmaFloor * (1.0 + 1e-12) &&
                        grad.sigma[p] < 0.0;
    if (!pinned) norm = std::max(norm, std::abs(grad.sigma[p]));
  }
  return norm;
}

// Quasi-Newton (BFGS) ascent on the likelihood with sigma profiled out: for
// fixed gamma each sigma has the closed-form optimum
// sigma^2 = max(m2/n + residual^2, floor^2), so the search runs over the K-1
// free qualities and the returned point is stationary in sigma as well.
FitResult fit_mle(const StatsTable& table, const ThurstoneParams& init,
                  const FitConfig& config) {
  check_shapes(init, table);
  check_finite(init);
  const int k = table.size();

  FitResult result;
  result.params = init;
  result.params.gamma[0] = 0.0;
  for (int i = 1; i < k; ++i) result.params.gamma[i] -= init.gamma[0];
  FitReport& report = result.report;

  double ll = log_likelihood(result.params, table);
  if (!std::isfinite(ll)) throw FitError("gamma", "non-finite log-likelihood");
  report.trace.push_back(ll);

  double norm = free_gradient_norm(ll_gradient(result.params, table),
                                   result.params, table);
  if (norm <= config.gradient_tolerance) {
    report.converged = true;
    report.final_gradient_norm = norm;
    report.log_likelihood = ll;
    return result;
  }

  const ProfileObjective objective(table);
  const int dim = objective.dim();
  Eigen::VectorXd x(dim);
  for (int i = 1; i < k; ++i) x[i - 1] = result.params.gamma[i];

  // Moving sigma to its optimum for the starting gamma never lowers the
  // likelihood.
  {
    double gain = 0.0;
    for (const PairTerm& t : objective.terms()) {
      const double r = ProfileObjective::residual(t, x);
      const double a = t.m2 + t.n * r * r;
      const double s0 = result.params.sigma[t.index];
      const double v1 = profile_var(t, r);
      const double step = t.n * std::log(s0 / std::sqrt(v1)) +
                          0.5 * a * (1.0 / (s0 * s0) - 1.0 / v1);
      gain += std::max(step, 0.0);
    }
    ll += gain;
  }

  Eigen::VectorXd g = objective.gradient(x);
  const Eigen::MatrixXd h0 = objective.initial_inverse_hessian(x);
  Eigen::MatrixXd h = h0;

  while (g.lpNorm<Eigen::Infinity>() > config.gradient_tolerance &&
         report.iterations < config.max_iterations) {
    Eigen::VectorXd dir = -h * g;
    double slope = g.dot(dir);
    if (!(slope < 0.0)) {
      h = h0;
      dir = -h * g;
      slope = g.dot(dir);
      if (!(slope < 0.0)) break;
    }

    double step = 1.0;
    double df = 0.0;
    Eigen::VectorXd trial;
    Eigen::VectorXd delta;
    bool accepted = false;
    for (int tries = 0; tries < 80; ++tries) {
      delta = step * dir;
      trial = x + delta;
      df = objective.change(x, delta);
      if (std::isfinite(df) &&
          df <= config.sufficient_increase * step * slope) {
        accepted = true;
        break;
      }
      step *= config.shrink;
    }
    if (!accepted) break;

    const Eigen::VectorXd g_new = objective.gradient(trial);
    const Eigen::VectorXd& s = delta;
    const Eigen::VectorXd y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Eigen::VectorXd hy = h * y;
      const double yhy = y.dot(hy);
      h += (rho * rho * yhy + rho) * (s * s.transpose()) -
           rho * (hy * s.transpose() + s * hy.transpose());
    }

    x = trial;
    g = g_new;
    ll -= df;
    ++report.iterations;
    report.trace.push_back(ll);
  }

  result.params = params_from_profile(objective, x, init);
  const double final_ll = log_likelihood(result.params, table);
  if (!std::isfinite(final_ll)) {
    throw FitError("gamma", "non-finite log-likelihood after fit");
  }
  norm = free_gradient_norm(ll_gradient(result.params, table), result.params,
                            table);
  report.final_gradient_norm = norm;
  report.converged = norm <= config.gradient_tolerance;
  report.log_likelihood = final_ll;
  return result;
}

ScorePosterior score_posterior_model(const ThurstoneParams& params,
                                     const StatsTable& table) {
  check_shapes(params, table);
  const int k = table.size();
  ScorePosterior post;
  post.mean.assign(k, 0.0);
  post.var.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const std::int64_t n = table.count(i, j);
      if (n == 0) {
        throw std::domain_error("no samples for pair (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
      }
      const double sigma = params.pair_sigma(i, j);
      post.mean[i] += params.gamma[i] - params.gamma[j];
      post.var[i] += sigma * sigma / static_cast<double>(n);
    }
  }
  return post;
}

ScorePosterior score_posterior_independent(const StatsTable& table) {
  const int k = table.size();
  ScorePosterior post;
  post.mean.assign(k, 0.0);
  post.var.assign(k, 0.0);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      const double sd = table.stddev(i, j);
      post.mean[i] += table.mean(i, j);
      post.var[i] += sd * sd / static_cast<double>(table.count(i, j));
    }
  }
  return post;
}

double gaussian_kl(double p_mean, double p_var, double q_mean, double q_var) {
  if (!(p_var > 0.0) || !(q_var > 0.0)) {
    throw std::invalid_argument("gaussian_kl needs positive variances");
  }
  // log(s2/s1) + (s1^2 + dm^2)/(2 s2^2) - 1/2, arranged so the variance part
  // is x - log1p(x) >= 0.
  const double x = p_var / q_var - 1.0;
  const double dm = p_mean - q_mean;
  const double kl = 0.5 * (x - std::log1p(x)) + dm * dm / (2.0 * q_var);
  return std::max(kl, 0.0);
}

double intransitivity_index(const ScorePosterior& observed,
                            const ScorePosterior& predicted) {
  const int k = observed.size();
  if (k == 0 || predicted.size() != k ||
      observed.var.size() != static_cast<std::size_t>(k) ||
      predicted.var.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("posterior dimension mismatch");
  }
  double total = 0.0;
  for (int i = 0; i < k; ++i) {
    total += gaussian_kl(observed.mean[i], observed.var[i], predicted.mean[i],
                         predicted.var[i]);
    total += gaussian_kl(predicted.mean[i], predicted.var[i],
                         observed.mean[i], observed.var[i]);
  }
  const double ii = -std::expm1(-total / (2.0 * k));
  // The index never reaches 1; cap at the largest double below it.
  return std::min(ii, std::nextafter(1.0, 0.0));
}

}  // namespace topkduel
