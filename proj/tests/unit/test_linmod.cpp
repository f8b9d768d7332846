#include <gtest/gtest.h>

#include <cmath>

#include "propaganda/errors.hpp"
#include "propaganda/linmod.hpp"
#include "propaganda/rng.hpp"

using namespace propaganda;

namespace {

constexpr auto kA = TechniqueLabel::kDoubt;
constexpr auto kB = TechniqueLabel::kSlogans;

SparseMatrix dense_rows(const std::vector<std::vector<double>>& rows) {
  SparseMatrix m(rows.at(0).size());
  for (const auto& r : rows) {
    std::vector<SparseVector::Entry> e;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (r[j] != 0.0) e.push_back({j, r[j]});
    }
    m.push_back(SparseVector(r.size(), std::move(e)));
  }
  return m;
}

TrainConfig with(Algorithm a) {
  TrainConfig c;
  c.algorithm = a;
  return c;
}

double weight_norm(const LinearModel& m) {
  double s = 0;
  for (double w : m.weights) s += w * w;
  return std::sqrt(s);
}

}  // namespace

class BothTrainers : public ::testing::TestWithParam<Algorithm> {};

TEST_P(BothTrainers, OrthogonalOneHotDocs) {
  const auto x = dense_rows({{1, 0}, {0, 1}});
  const std::vector<TechniqueLabel> y{kA, kB};
  EXPECT_EQ(predict(train(x, y, with(GetParam())), x), y);
}

TEST_P(BothTrainers, SeparableTwoD) {
  const auto x = dense_rows({{2, 1}, {1, 2}, {-1, -2}, {-2, -1}});
  const std::vector<TechniqueLabel> y{kA, kA, kB, kB};
  const auto model = train(x, y, with(GetParam()));
  EXPECT_EQ(predict(model, x), y);
  const auto s = decision_scores(model, x);
  for (std::size_t i = 0; i < y.size(); ++i) {
    const std::size_t want = y[i] == kA ? 0 : 1;
    EXPECT_GT(s(i, want), s(i, 1 - want));
  }
}

TEST_P(BothTrainers, SeparableManyClasses) {
  // Each class owns a block of features; documents mix in shared noise.
  Rng rng(4);
  const std::size_t k = 6, per = 8, dim = 3 * k + 5;
  SparseMatrix x(dim);
  std::vector<TechniqueLabel> y;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t r = 0; r < per; ++r) {
      std::vector<SparseVector::Entry> e;
      for (std::size_t j = 0; j < dim; ++j) {
        const bool own = j / 3 == c;
        const bool noise = j >= 3 * k && rng.below(2) == 0;
        if (own || noise) e.push_back({j, own ? 1.0 + rng.uniform() : 0.3 * rng.uniform() + 0.01});
      }
      x.push_back(SparseVector(dim, std::move(e)));
      y.push_back(label_from_index(c));
    }
  }
  EXPECT_EQ(predict(train(x, y, with(GetParam())), x), y);
}

TEST_P(BothTrainers, Deterministic) {
  const auto x = dense_rows({{2, 1, 0}, {1, 2, 1}, {-1, -2, 1}, {-2, -1, 0}, {0, 1, 1}});
  const std::vector<TechniqueLabel> y{kA, kA, kB, kB, kA};
  auto c = with(GetParam());
  c.seed = 42;
  const auto a = train(x, y, c);
  const auto b = train(x, y, c);
  EXPECT_EQ(a.weights, b.weights);
  EXPECT_EQ(a.biases, b.biases);
}

INSTANTIATE_TEST_SUITE_P(Linmod, BothTrainers,
                         ::testing::Values(Algorithm::kRidge, Algorithm::kSgdHinge),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(Train, ShapeAndLabelErrors) {
  const auto x = dense_rows({{1, 0}, {0, 1}, {1, 1}});
  const std::vector<TechniqueLabel> two{kA, kB};
  EXPECT_THROW(train(x, two), ShapeError);
  const std::vector<TechniqueLabel> same{kA, kA, kA};
  EXPECT_THROW(train(x, same), DegenerateLabelsError);
  TrainConfig bad;
  bad.ridge_alpha = -1;
  EXPECT_THROW(train(x, std::vector<TechniqueLabel>{kA, kB, kA}, bad), ConfigError);
}

TEST(Train, LabelOrderIsCanonical) {
  const auto x = dense_rows({{1, 0}, {0, 1}});
  const std::vector<TechniqueLabel> y{kB, kA};
  EXPECT_EQ(train(x, y).labels, (std::vector<TechniqueLabel>{kA, kB}));
}

TEST(DecisionScores, ZeroInputGivesBiases) {
  const auto x = dense_rows({{2, 1}, {1, 2}, {-1, -2}, {-2, -1}});
  const auto model = train(x, std::vector<TechniqueLabel>{kA, kA, kB, kB});
  SparseMatrix zero(2);
  zero.push_back(SparseVector(2));
  const auto s = decision_scores(model, zero);
  EXPECT_EQ(s(0, 0), model.biases[0]);
  EXPECT_EQ(s(0, 1), model.biases[1]);
  SparseMatrix wrong(3);
  wrong.push_back(SparseVector(3));
  EXPECT_THROW(decision_scores(model, wrong), ShapeError);
}

TEST(Predict, TiesGoToFirstLabel) {
  LinearModel m;
  m.labels = {kA, kB};
  m.dim = 2;
  m.weights.assign(4, 0.0);
  m.biases.assign(2, 0.0);
  const auto p = predict(m, dense_rows({{1, 2}}));
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0], kA);
}

TEST(Ridge, ResidualOnRandomInstances) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 5 + rng.below(30), d = 1 + rng.below(40);
    SparseMatrix x(d);
    std::vector<double> targets;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<SparseVector::Entry> e;
      for (std::size_t j = 0; j < d; ++j) {
        if (rng.below(3) == 0) e.push_back({j, rng.uniform() * 2 - 1 + 1e-3});
      }
      x.push_back(SparseVector(d, std::move(e)));
      targets.push_back(rng.below(2) ? 1.0 : -1.0);
    }
    for (double alpha : {0.1, 1.0, 10.0}) {
      for (bool intercept : {false, true}) {
        const auto theta = solve_ridge(x, targets, alpha, intercept, 1e-10, 0);
        EXPECT_LE(ridge_gradient_residual(x, targets, alpha, intercept, theta), 1e-6);
      }
    }
  }
}

TEST(Ridge, WeightNormShrinksWithAlpha) {
  const auto x = dense_rows({{2, 1, 0}, {1, 2, 1}, {-1, -2, 1}, {-2, -1, 0}, {0, 1, 1}});
  const std::vector<TechniqueLabel> y{kA, kA, kB, kB, kA};
  double prev = INFINITY;
  for (double alpha : {1.0, 10.0, 100.0}) {
    TrainConfig c;
    c.ridge_alpha = alpha;
    const double n = weight_norm(train(x, y, c));
    EXPECT_LT(n, prev);
    prev = n;
  }
}

TEST(LinearModel, TsvRoundTripIsExact) {
  const auto x = dense_rows({{2, 1}, {1, 2}, {-1, -2}, {-2, -1}});
  const auto m = train(x, std::vector<TechniqueLabel>{kA, kA, kB, kB}, with(Algorithm::kSgdHinge));
  const auto back = LinearModel::from_tsv(m.to_tsv());
  EXPECT_EQ(back.algorithm, m.algorithm);
  EXPECT_EQ(back.labels, m.labels);
  EXPECT_EQ(back.weights, m.weights);
  EXPECT_EQ(back.biases, m.biases);
  EXPECT_THROW(LinearModel::from_tsv("nope\n"), FormatError);
}

TEST(Algorithm, Names) {
  EXPECT_EQ(parse_algorithm("ridge"), Algorithm::kRidge);
  EXPECT_EQ(parse_algorithm("sgd_hinge"), Algorithm::kSgdHinge);
  EXPECT_THROW(parse_algorithm("svm-rbf"), ConfigError);
}
