#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "propaganda/features.hpp"
#include "propaganda/labels.hpp"

namespace propaganda {

enum class Algorithm { kRidge, kSgdHinge };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);  // "ridge" | "sgd_hinge"

struct TrainConfig {
  Algorithm algorithm = Algorithm::kRidge;
  double ridge_alpha = 1.0;
  double cg_tolerance = 1e-8;  // on the Euclidean norm of the CG residual
  std::size_t cg_max_iterations = 0;  // 0: 10 * (dim + 1) + 100
  std::size_t sgd_epochs = 5;
  double sgd_eta0 = 0.5;     // eta_t = eta0 / (1 + lambda * t)
  double sgd_lambda = 1e-4;  // L2 strength
  bool fit_intercept = true;  // bias as a constant feature, never penalized
  std::uint64_t seed = 0;
};

// One-vs-rest linear scorer; row k of `weights` belongs to labels[k].
struct LinearModel {
  Algorithm algorithm = Algorithm::kRidge;
  std::vector<TechniqueLabel> labels;
  std::size_t dim = 0;
  std::vector<double> weights;  // labels.size() x dim, row-major
  std::vector<double> biases;

  std::span<const double> weight_row(std::size_t k) const {
    return std::span<const double>(weights).subspan(k * dim, dim);
  }

  // Versioned TSV dump: header lines, then `label\tbias\tw_0\t...\tw_{dim-1}`.
  std::string to_tsv() const;
  static LinearModel from_tsv(std::string_view tsv);
};

struct ScoreMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

// Label order of the model is the set of labels present in `y`, sorted by
// canonical label index. Throws ShapeError on size mismatch or fewer than
// two rows, DegenerateLabelsError when `y` has a single distinct label.
LinearModel train(const SparseMatrix& x, std::span<const TechniqueLabel> y,
                  const TrainConfig& config = {});

ScoreMatrix decision_scores(const LinearModel& model, const SparseMatrix& x);

// Argmax per row; ties go to the earliest label in model order.
std::vector<TechniqueLabel> predict(const LinearModel& model, const SparseMatrix& x);

// Solves (Z^T Z + alpha D) theta = Z^T t with conjugate gradient, where Z is
// `x` optionally augmented by a constant column and D penalizes only the
// non-bias coordinates. Returns theta (dim weights, then the bias if any).
std::vector<double> solve_ridge(const SparseMatrix& x, std::span<const double> targets,
                                double alpha, bool fit_intercept, double tolerance,
                                std::size_t max_iterations);

// || Z^T Z theta + alpha D theta - Z^T t ||_inf for a solution from solve_ridge.
double ridge_gradient_residual(const SparseMatrix& x, std::span<const double> targets,
                               double alpha, bool fit_intercept, std::span<const double> theta);

}  // namespace propaganda
