#include "propaganda/linmod.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "propaganda/errors.hpp"
#include "propaganda/rng.hpp"

namespace propaganda {

namespace {

// A v for the ridge normal equations, v = [w; b].
void apply_normal_operator(const SparseMatrix& x, double alpha, bool fit_intercept,
                           std::span<const double> v, std::span<double> out,
                           std::vector<double>& scratch) {
  const std::size_t d = x.cols();
  scratch.resize(x.rows());
  x.multiply(v.first(d), scratch);
  if (fit_intercept) {
    for (auto& s : scratch) s += v[d];
  }
  x.multiply_transposed(scratch, out.first(d));
  for (std::size_t j = 0; j < d; ++j) out[j] += alpha * v[j];
  if (fit_intercept) out[d] = std::accumulate(scratch.begin(), scratch.end(), 0.0);
}

void normal_rhs(const SparseMatrix& x, std::span<const double> targets, bool fit_intercept,
                std::span<double> out) {
  const std::size_t d = x.cols();
  x.multiply_transposed(targets, out.first(d));
  if (fit_intercept) out[d] = std::accumulate(targets.begin(), targets.end(), 0.0);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<TechniqueLabel> label_order(std::span<const TechniqueLabel> y) {
  std::vector<bool> present(kNumLabels, false);
  for (auto l : y) present[label_index(l)] = true;
  std::vector<TechniqueLabel> labels;
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    if (present[i]) labels.push_back(label_from_index(i));
  }
  return labels;
}

// One-vs-rest hinge loss SGD for a single label; writes weights and bias.
void train_hinge(const SparseMatrix& x, std::span<const double> targets, const TrainConfig& config,
                 std::span<double> w, double& b) {
  const std::size_t n = x.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);

  // w = scale * v keeps the L2 shrink O(1) per step.
  std::vector<double> v(w.size(), 0.0);
  double scale = 1.0;
  double bias = 0.0;
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < config.sgd_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      const double eta = config.sgd_eta0 / (1.0 + config.sgd_lambda * static_cast<double>(t));
      const auto& row = x.row(i);
      const double margin = targets[i] * (scale * row.dot(v) + bias);
      scale *= 1.0 - eta * config.sgd_lambda;
      if (margin < 1.0) {
        const double step = eta * targets[i] / scale;
        for (const auto& e : row.entries()) v[e.index] += step * e.value;
        if (config.fit_intercept) bias += eta * targets[i];
      }
      if (scale < 1e-9) {
        for (auto& vj : v) vj *= scale;
        scale = 1.0;
      }
      ++t;
    }
  }
  for (std::size_t j = 0; j < w.size(); ++j) w[j] = scale * v[j];
  b = bias;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kRidge ? "ridge" : "sgd_hinge";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "ridge") return Algorithm::kRidge;
  if (name == "sgd_hinge" || name == "sgd" || name == "linear_svc") return Algorithm::kSgdHinge;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::vector<double> solve_ridge(const SparseMatrix& x, std::span<const double> targets,
                                double alpha, bool fit_intercept, double tolerance,
                                std::size_t max_iterations) {
  const std::size_t m = x.cols() + (fit_intercept ? 1 : 0);
  if (max_iterations == 0) max_iterations = 10 * m + 100;
  std::vector<double> theta(m, 0.0), r(m), p(m), ap(m), scratch;
  normal_rhs(x, targets, fit_intercept, r);
  p = r;
  double rr = dot(r, r);
  for (std::size_t it = 0; it < max_iterations && std::sqrt(rr) > tolerance; ++it) {
    apply_normal_operator(x, alpha, fit_intercept, p, ap, scratch);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;
    const double step = rr / pap;
    for (std::size_t j = 0; j < m; ++j) {
      theta[j] += step * p[j];
      r[j] -= step * ap[j];
    }
    const double rr_next = dot(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
    for (std::size_t j = 0; j < m; ++j) p[j] = r[j] + beta * p[j];
  }
  return theta;
}

double ridge_gradient_residual(const SparseMatrix& x, std::span<const double> targets,
                               double alpha, bool fit_intercept, std::span<const double> theta) {
  const std::size_t m = x.cols() + (fit_intercept ? 1 : 0);
  std::vector<double> lhs(m), rhs(m), scratch;
  apply_normal_operator(x, alpha, fit_intercept, theta, lhs, scratch);
  normal_rhs(x, targets, fit_intercept, rhs);
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, std::abs(lhs[j] - rhs[j]));
  return worst;
}

LinearModel train(const SparseMatrix& x, std::span<const TechniqueLabel> y,
                  const TrainConfig& config) {
  if (x.rows() != y.size()) {
    throw ShapeError("X has " + std::to_string(x.rows()) + " rows but y has " +
                     std::to_string(y.size()) + " labels");
  }
  if (y.size() < 2) throw ShapeError("training needs at least two examples");
  if (!(config.ridge_alpha > 0.0) || !(config.sgd_eta0 > 0.0) || config.sgd_lambda < 0.0) {
    throw ConfigError("training hyperparameters must be positive");
  }

  LinearModel model;
  model.algorithm = config.algorithm;
  model.labels = label_order(y);
  if (model.labels.size() < 2) {
    throw DegenerateLabelsError("training labels contain a single class: " +
                                std::string(to_string(model.labels.front())));
  }
  model.dim = x.cols();
  model.weights.assign(model.labels.size() * model.dim, 0.0);
  model.biases.assign(model.labels.size(), 0.0);

  std::vector<double> targets(y.size());
  for (std::size_t k = 0; k < model.labels.size(); ++k) {
    for (std::size_t i = 0; i < y.size(); ++i) targets[i] = y[i] == model.labels[k] ? 1.0 : -1.0;
    std::span<double> w(model.weights.data() + k * model.dim, model.dim);
    if (config.algorithm == Algorithm::kRidge) {
      auto theta = solve_ridge(x, targets, config.ridge_alpha, config.fit_intercept,
                               config.cg_tolerance, config.cg_max_iterations);
      std::copy_n(theta.begin(), model.dim, w.begin());
      model.biases[k] = config.fit_intercept ? theta[model.dim] : 0.0;
    } else {
      train_hinge(x, targets, config, w, model.biases[k]);
    }
  }
  return model;
}

ScoreMatrix decision_scores(const LinearModel& model, const SparseMatrix& x) {
  if (x.cols() != model.dim) {
    throw ShapeError("X has " + std::to_string(x.cols()) + " columns, model expects " +
                     std::to_string(model.dim));
  }
  ScoreMatrix scores{x.rows(), model.labels.size(), {}};
  scores.values.resize(scores.rows * scores.cols);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t k = 0; k < model.labels.size(); ++k) {
      scores.values[i * scores.cols + k] = x.row(i).dot(model.weight_row(k)) + model.biases[k];
    }
  }
  return scores;
}

std::vector<TechniqueLabel> predict(const LinearModel& model, const SparseMatrix& x) {
  const auto scores = decision_scores(model, x);
  std::vector<TechniqueLabel> out;
  out.reserve(scores.rows);
  for (std::size_t i = 0; i < scores.rows; ++i) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < scores.cols; ++k) {
      if (scores(i, k) > scores(i, best)) best = k;
    }
    out.push_back(model.labels[best]);
  }
  return out;
}

namespace {

constexpr std::string_view kModelMagic = "#propaganda-linear-model";
constexpr int kModelVersion = 1;

std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

double parse_double(std::string_view s, std::size_t line) {
  // from_chars for double is not available on every supported toolchain.
  std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(v)) {
    throw FormatError("bad number '" + tmp + "'", line);
  }
  return v;
}

}  // namespace

std::string LinearModel::to_tsv() const {
  std::string out;
  out += kModelMagic;
  out += "\t" + std::to_string(kModelVersion) + "\n";
  out += "algorithm\t" + std::string(propaganda::to_string(algorithm)) + "\n";
  out += "dim\t" + std::to_string(dim) + "\n";
  out += "labels\t" + std::to_string(labels.size()) + "\n";
  for (std::size_t k = 0; k < labels.size(); ++k) {
    out += propaganda::to_string(labels[k]);
    out += '\t';
    out += format_double(biases[k]);
    for (double w : weight_row(k)) {
      out += '\t';
      out += format_double(w);
    }
    out += '\n';
  }
  return out;
}

LinearModel LinearModel::from_tsv(std::string_view tsv) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < tsv.size()) {
    auto eol = tsv.find('\n', pos);
    if (eol == std::string_view::npos) eol = tsv.size();
    lines.push_back(tsv.substr(pos, eol - pos));
    pos = eol + 1;
  }
  if (lines.size() < 4) throw FormatError("model file truncated");
  auto header = [&](std::size_t i, std::string_view key) {
    auto cols = split_tabs(lines[i]);
    if (cols.size() != 2 || cols[0] != key) {
      throw FormatError("expected '" + std::string(key) + "' header", i + 1);
    }
    return cols[1];
  };
  if (header(0, kModelMagic) != std::to_string(kModelVersion)) {
    throw FormatError("unsupported model format version", 1);
  }
  LinearModel model;
  model.algorithm = parse_algorithm(header(1, "algorithm"));
  auto to_size = [](std::string_view s, std::size_t line) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      throw FormatError("bad integer '" + std::string(s) + "'", line);
    }
    return v;
  };
  model.dim = to_size(header(2, "dim"), 3);
  const std::size_t n_labels = to_size(header(3, "labels"), 4);
  if (lines.size() < 4 + n_labels) throw FormatError("model file truncated");
  model.weights.reserve(n_labels * model.dim);
  for (std::size_t k = 0; k < n_labels; ++k) {
    const std::size_t line_no = 5 + k;
    auto cols = split_tabs(lines[4 + k]);
    if (cols.size() != model.dim + 2) {
      throw FormatError("expected " + std::to_string(model.dim + 2) + " columns", line_no);
    }
    model.labels.push_back(parse_label(cols[0]));
    model.biases.push_back(parse_double(cols[1], line_no));
    for (std::size_t j = 0; j < model.dim; ++j) {
      model.weights.push_back(parse_double(cols[2 + j], line_no));
    }
  }
  return model;
}

}  // namespace propaganda
