#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "bsc/dataset.hpp"

namespace bsc {

/// Per-feature z-score statistics fitted on training rows.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const CostedDataset& data, std::span<const std::size_t> rows);
};

struct SolverOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
};

struct Prediction {
  int label = 0;
  double confidence = 0.0;
};

/// L2-regularised logistic regression over a fixed subset of features.
/// Binary problems use a single sigmoid; three or more classes use a
/// multinomial softmax. The intercept is not penalised.
class LogisticModel {
public:
  /// Minimises sum_i loss_i + (lambda / 2) * ||w||^2 with damped Newton steps.
  static LogisticModel train(const CostedDataset& data, std::span<const std::size_t> rows,
                             const Standardizer& standardizer, std::vector<int> features,
                             double lambda, const SolverOptions& options = {});

  /// Builds a model from explicit parameters. For binary models `weights`
  /// holds one row (class 1 versus class 0); otherwise one row per class.
  static LogisticModel from_parameters(std::vector<int> features, int num_classes,
                                       Eigen::MatrixXd weights, Eigen::VectorXd intercepts,
                                       std::vector<double> mean = {}, std::vector<double> scale = {});

  /// Class probabilities for a full raw feature row; `out` has num_classes() entries.
  void predict_proba(std::span<const double> row, std::span<double> out) const;

  /// argmax label (lowest index on ties) and its probability.
  Prediction predict(std::span<const double> row) const;

  const std::vector<int>& features() const noexcept { return features_; }
  int num_classes() const noexcept { return num_classes_; }
  const Eigen::MatrixXd& weights() const noexcept { return weights_; }
  const Eigen::VectorXd& intercepts() const noexcept { return intercepts_; }
  int iterations() const noexcept { return iterations_; }
  double gradient_norm() const noexcept { return gradient_norm_; }

private:
  std::vector<int> features_;
  std::vector<double> mean_;
  std::vector<double> scale_;
  int num_classes_ = 2;
  Eigen::MatrixXd weights_;
  Eigen::VectorXd intercepts_;
  int iterations_ = 0;
  double gradient_norm_ = 0.0;
};

} // namespace bsc
