#include "bsc/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "bsc/error.hpp"

namespace bsc {
namespace {

double softplus(double eta) {
  return eta > 0.0 ? eta + std::log1p(std::exp(-eta)) : std::log1p(std::exp(eta));
}

double sigmoid(double eta) {
  if (eta >= 0.0) return 1.0 / (1.0 + std::exp(-eta));
  const double e = std::exp(eta);
  return e / (1.0 + e);
}

/// Design matrix [1 | z] over the given rows and features.
Eigen::MatrixXd design(const CostedDataset& data, std::span<const std::size_t> rows,
                       const std::vector<int>& features, const std::vector<double>& mean,
                       const std::vector<double>& scale) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(features.size()) + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto row = data.row(rows[r]);
    const auto i = static_cast<Eigen::Index>(r);
    x(i, 0) = 1.0;
    for (std::size_t j = 0; j < features.size(); ++j) {
      const double v = row[static_cast<std::size_t>(features[j])];
      if (!std::isfinite(v)) throw DataError("non-finite feature value in training rows");
      x(i, static_cast<Eigen::Index>(j) + 1) = (v - mean[j]) / scale[j];
    }
  }
  return x;
}

struct Fit {
  Eigen::VectorXd theta;
  int iterations = 0;
  double gradient_norm = 0.0;
};

Fit fit_binary(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda,
               const SolverOptions& opt) {
  const Eigen::Index p = x.cols();
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(p, lambda);
  penalty(0) = 0.0;

  auto objective = [&](const Eigen::VectorXd& theta) {
    const Eigen::VectorXd eta = x * theta;
    double loss = 0.0;
    for (Eigen::Index i = 0; i < eta.size(); ++i) loss += softplus(eta(i)) - y(i) * eta(i);
    return loss + 0.5 * theta.cwiseProduct(penalty).dot(theta);
  };

  Fit fit;
  fit.theta = Eigen::VectorXd::Zero(p);
  double loss = objective(fit.theta);
  for (fit.iterations = 0; fit.iterations < opt.max_iterations; ++fit.iterations) {
    const Eigen::VectorXd eta = x * fit.theta;
    Eigen::VectorXd prob(eta.size());
    Eigen::VectorXd w(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
      prob(i) = sigmoid(eta(i));
      w(i) = prob(i) * (1.0 - prob(i));
    }
    const Eigen::VectorXd grad = x.transpose() * (prob - y) + penalty.cwiseProduct(fit.theta);
    fit.gradient_norm = grad.norm();
    if (fit.gradient_norm <= opt.gradient_tolerance) break;

    Eigen::MatrixXd hess = x.transpose() * w.asDiagonal() * x;
    hess.diagonal() += penalty + Eigen::VectorXd::Constant(p, 1e-12);
    const Eigen::VectorXd step = hess.ldlt().solve(grad);

    double t = 1.0;
    const double slope = grad.dot(step);
    Eigen::VectorXd candidate = fit.theta - step;
    double next = objective(candidate);
    if (slope <= 1e-10 * (1.0 + std::abs(loss))) {
      // the predicted decrease is below the loss's rounding noise; inside
      // the quadratic region the full step is safe
      fit.theta = candidate;
      loss = next;
      continue;
    }
    while (next > loss - 1e-4 * t * slope && t > 1e-10) {
      t *= 0.5;
      candidate = fit.theta - t * step;
      next = objective(candidate);
    }
    if (next >= loss && t <= 1e-10) break; // no further progress in floating point
    fit.theta = candidate;
    loss = next;
  }
  return fit;
}

/// Multinomial fit; theta stacks one (d+1)-block per class.
Fit fit_multinomial(const Eigen::MatrixXd& x, const std::vector<int>& labels, int classes,
                    double lambda, const SolverOptions& opt) {
  const Eigen::Index m = x.rows();
  const Eigen::Index p = x.cols();
  const Eigen::Index kp = p * classes;
  Eigen::VectorXd penalty = Eigen::VectorXd::Constant(kp, lambda);
  for (int c = 0; c < classes; ++c) penalty(c * p) = 0.0;

  auto scores = [&](const Eigen::VectorXd& theta) {
    Eigen::MatrixXd s(m, classes);
    for (int c = 0; c < classes; ++c) s.col(c) = x * theta.segment(c * p, p);
    return s;
  };
  auto softmax_rows = [&](Eigen::MatrixXd& s, Eigen::VectorXd& log_norm) {
    log_norm.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double mx = s.row(i).maxCoeff();
      double total = 0.0;
      for (int c = 0; c < classes; ++c) total += std::exp(s(i, c) - mx);
      log_norm(i) = mx + std::log(total);
      for (int c = 0; c < classes; ++c) s(i, c) = std::exp(s(i, c) - log_norm(i));
    }
  };
  auto objective = [&](const Eigen::VectorXd& theta) {
    Eigen::MatrixXd s = scores(theta);
    double loss = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double mx = s.row(i).maxCoeff();
      double total = 0.0;
      for (int c = 0; c < classes; ++c) total += std::exp(s(i, c) - mx);
      loss += mx + std::log(total) - s(i, labels[static_cast<std::size_t>(i)]);
    }
    return loss + 0.5 * theta.cwiseProduct(penalty).dot(theta);
  };

  Fit fit;
  fit.theta = Eigen::VectorXd::Zero(kp);
  double loss = objective(fit.theta);
  for (fit.iterations = 0; fit.iterations < opt.max_iterations; ++fit.iterations) {
    Eigen::MatrixXd prob = scores(fit.theta);
    Eigen::VectorXd log_norm;
    softmax_rows(prob, log_norm);
    Eigen::VectorXd grad(kp);
    for (int c = 0; c < classes; ++c) {
      Eigen::VectorXd resid = prob.col(c);
      for (Eigen::Index i = 0; i < m; ++i) {
        if (labels[static_cast<std::size_t>(i)] == c) resid(i) -= 1.0;
      }
      grad.segment(c * p, p) = x.transpose() * resid;
    }
    grad += penalty.cwiseProduct(fit.theta);
    fit.gradient_norm = grad.norm();
    if (fit.gradient_norm <= opt.gradient_tolerance) break;

    Eigen::MatrixXd hess(kp, kp);
    for (int a = 0; a < classes; ++a) {
      for (int b = a; b < classes; ++b) {
        Eigen::VectorXd w(m);
        for (Eigen::Index i = 0; i < m; ++i) {
          w(i) = prob(i, a) * ((a == b ? 1.0 : 0.0) - prob(i, b));
        }
        const Eigen::MatrixXd block = x.transpose() * w.asDiagonal() * x;
        hess.block(a * p, b * p, p, p) = block;
        hess.block(b * p, a * p, p, p) = block.transpose();
      }
    }
    // the intercepts share one flat direction; a tiny ridge keeps the solve well posed
    hess.diagonal() += penalty + Eigen::VectorXd::Constant(kp, 1e-9);
    const Eigen::VectorXd step = hess.ldlt().solve(grad);

    double t = 1.0;
    const double slope = grad.dot(step);
    Eigen::VectorXd candidate = fit.theta - step;
    double next = objective(candidate);
    if (slope <= 1e-10 * (1.0 + std::abs(loss))) {
      // the predicted decrease is below the loss's rounding noise; inside
      // the quadratic region the full step is safe
      fit.theta = candidate;
      loss = next;
      continue;
    }
    while (next > loss - 1e-4 * t * slope && t > 1e-10) {
      t *= 0.5;
      candidate = fit.theta - t * step;
      next = objective(candidate);
    }
    if (next >= loss && t <= 1e-10) break;
    fit.theta = candidate;
    loss = next;
  }
  return fit;
}

} // namespace

Standardizer Standardizer::fit(const CostedDataset& data, std::span<const std::size_t> rows) {
  if (rows.empty()) throw DataError("cannot standardise on an empty split");
  const std::size_t n = data.n_features();
  Standardizer s;
  s.mean.assign(n, 0.0);
  s.scale.assign(n, 0.0);
  for (auto r : rows) {
    const auto row = data.row(r);
    for (std::size_t f = 0; f < n; ++f) s.mean[f] += row[f];
  }
  for (auto& m : s.mean) m /= static_cast<double>(rows.size());
  for (auto r : rows) {
    const auto row = data.row(r);
    for (std::size_t f = 0; f < n; ++f) {
      const double d = row[f] - s.mean[f];
      s.scale[f] += d * d;
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (!std::isfinite(s.mean[f])) throw DataError("non-finite feature value in training rows");
    const double sd = std::sqrt(s.scale[f] / static_cast<double>(rows.size()));
    s.scale[f] = sd > 1e-12 ? sd : 1.0;
  }
  return s;
}

LogisticModel LogisticModel::train(const CostedDataset& data, std::span<const std::size_t> rows,
                                   const Standardizer& standardizer, std::vector<int> features,
                                   double lambda, const SolverOptions& options) {
  if (features.empty()) throw DomainError("a stage model needs at least one feature");
  if (!(lambda >= 0.0)) throw DomainError("regularisation strength must be non-negative");
  std::vector<bool> present(static_cast<std::size_t>(std::max(data.num_classes, 1)), false);
  for (auto r : rows) present[static_cast<std::size_t>(data.labels[r])] = true;
  if (std::count(present.begin(), present.end(), true) < 2) {
    throw DegenerateLabels("training split contains a single class");
  }

  LogisticModel model;
  model.features_ = std::move(features);
  model.num_classes_ = data.num_classes;
  for (int f : model.features_) {
    model.mean_.push_back(standardizer.mean[static_cast<std::size_t>(f)]);
    model.scale_.push_back(standardizer.scale[static_cast<std::size_t>(f)]);
  }
  const Eigen::MatrixXd x = design(data, rows, model.features_, model.mean_, model.scale_);
  const auto p = x.cols();
  if (data.num_classes == 2) {
    Eigen::VectorXd y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) y(static_cast<Eigen::Index>(i)) = data.labels[rows[i]];
    const Fit fit = fit_binary(x, y, lambda, options);
    model.intercepts_ = Eigen::VectorXd::Constant(1, fit.theta(0));
    model.weights_ = fit.theta.tail(p - 1).transpose();
    model.iterations_ = fit.iterations;
    model.gradient_norm_ = fit.gradient_norm;
  } else {
    std::vector<int> y;
    for (auto r : rows) y.push_back(data.labels[r]);
    const Fit fit = fit_multinomial(x, y, data.num_classes, lambda, options);
    model.weights_.resize(data.num_classes, p - 1);
    model.intercepts_.resize(data.num_classes);
    for (int c = 0; c < data.num_classes; ++c) {
      model.intercepts_(c) = fit.theta(c * p);
      model.weights_.row(c) = fit.theta.segment(c * p + 1, p - 1).transpose();
    }
    model.iterations_ = fit.iterations;
    model.gradient_norm_ = fit.gradient_norm;
  }
  return model;
}

LogisticModel LogisticModel::from_parameters(std::vector<int> features, int num_classes,
                                             Eigen::MatrixXd weights, Eigen::VectorXd intercepts,
                                             std::vector<double> mean, std::vector<double> scale) {
  if (num_classes < 2) throw DomainError("a classifier needs at least two classes");
  const Eigen::Index rows = num_classes == 2 ? 1 : num_classes;
  if (weights.rows() != rows || intercepts.size() != rows ||
      weights.cols() != static_cast<Eigen::Index>(features.size())) {
    throw DomainError("logistic parameter shapes do not match the feature list");
  }
  if (mean.empty()) mean.assign(features.size(), 0.0);
  if (scale.empty()) scale.assign(features.size(), 1.0);
  LogisticModel model;
  model.features_ = std::move(features);
  model.num_classes_ = num_classes;
  model.weights_ = std::move(weights);
  model.intercepts_ = std::move(intercepts);
  model.mean_ = std::move(mean);
  model.scale_ = std::move(scale);
  return model;
}

void LogisticModel::predict_proba(std::span<const double> row, std::span<double> out) const {
  const auto k = static_cast<std::size_t>(num_classes_);
  if (out.size() != k) throw DomainError("probability buffer has the wrong size");
  auto standardized = [&](std::size_t j) {
    const auto f = static_cast<std::size_t>(features_[j]);
    if (f >= row.size()) throw DataError("feature row is shorter than the model expects");
    const double v = row[f];
    if (!std::isfinite(v)) throw DataError("missing feature value at evaluation");
    return (v - mean_[j]) / scale_[j];
  };
  if (num_classes_ == 2) {
    double eta = intercepts_(0);
    for (std::size_t j = 0; j < features_.size(); ++j) {
      eta += weights_(0, static_cast<Eigen::Index>(j)) * standardized(j);
    }
    const double p1 = sigmoid(eta);
    out[0] = 1.0 - p1;
    out[1] = p1;
    return;
  }
  std::vector<double> z(features_.size());
  for (std::size_t j = 0; j < z.size(); ++j) z[j] = standardized(j);
  double mx = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < k; ++c) {
    double s = intercepts_(static_cast<Eigen::Index>(c));
    for (std::size_t j = 0; j < z.size(); ++j) {
      s += weights_(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(j)) * z[j];
    }
    out[c] = s;
    mx = std::max(mx, s);
  }
  double total = 0.0;
  for (auto& v : out) {
    v = std::exp(v - mx);
    total += v;
  }
  for (auto& v : out) v /= total;
}

Prediction LogisticModel::predict(std::span<const double> row) const {
  double buf[2];
  std::vector<double> heap;
  std::span<double> probs;
  if (num_classes_ == 2) {
    probs = std::span<double>(buf, 2);
  } else {
    heap.resize(static_cast<std::size_t>(num_classes_));
    probs = heap;
  }
  predict_proba(row, probs);
  Prediction p;
  p.label = 0;
  p.confidence = probs[0];
  for (std::size_t c = 1; c < probs.size(); ++c) {
    if (probs[c] > p.confidence) {
      p.confidence = probs[c];
      p.label = static_cast<int>(c);
    }
  }
  return p;
}

} // namespace bsc
