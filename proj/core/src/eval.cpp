#include "propaganda/eval.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

namespace propaganda {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", 100.0 * v);
  return buf;
}

struct Row {
  std::string label;
  std::string precision;
  std::string recall;
  std::string f1;
  std::string support;
};

std::vector<Row> rows_of(const ScoreReport& report) {
  std::vector<Row> rows;
  for (const auto& [label, s] : report.per_label) {
    rows.push_back({std::string(to_string(label)), pct(s.precision), pct(s.recall), pct(s.f1),
                    std::to_string(s.support)});
  }
  rows.push_back({"Overall", pct(report.micro_precision), pct(report.micro_recall),
                  pct(report.overall_micro_f1), std::to_string(report.n_instances)});
  return rows;
}

}  // namespace

SplitIndices split_2_1_indices(std::size_t n, std::uint64_t seed) {
  if (n < 3) throw SplitError("need at least 3 fragments to split, got " + std::to_string(n));
  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(std::span<std::size_t>(order));
  const std::size_t cut = 2 * n / 3;
  SplitIndices out;
  out.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut));
  out.dev.assign(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end());
  rng.shuffle(std::span<std::size_t>(out.train));
  return out;
}

ScoreReport micro_f1(std::span<const TechniqueLabel> gold, std::span<const TechniqueLabel> pred) {
  if (gold.size() != pred.size()) {
    throw ShapeError("gold has " + std::to_string(gold.size()) + " labels, predictions " +
                     std::to_string(pred.size()));
  }
  if (gold.empty()) throw ShapeError("cannot score zero instances");

  std::array<std::size_t, kNumLabels> tp{}, fp{}, fn{}, seen{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto g = label_index(gold[i]);
    const auto p = label_index(pred[i]);
    seen[g] = seen[p] = 1;
    if (g == p) {
      ++tp[g];
    } else {
      ++fp[p];
      ++fn[g];
    }
  }

  ScoreReport report;
  report.n_instances = gold.size();
  std::size_t sum_tp = 0, sum_fp = 0, sum_fn = 0;
  for (std::size_t k = 0; k < kNumLabels; ++k) {
    sum_tp += tp[k];
    sum_fp += fp[k];
    sum_fn += fn[k];
    if (!seen[k]) continue;
    LabelScore s;
    s.precision = ratio(tp[k], tp[k] + fp[k]);
    s.recall = ratio(tp[k], tp[k] + fn[k]);
    s.f1 = ratio(2 * tp[k], 2 * tp[k] + fp[k] + fn[k]);
    s.support = tp[k] + fn[k];
    report.per_label.emplace(label_from_index(k), s);
  }
  report.micro_precision = ratio(sum_tp, sum_tp + sum_fp);
  report.micro_recall = ratio(sum_tp, sum_tp + sum_fn);
  report.overall_micro_f1 = ratio(2 * sum_tp, 2 * sum_tp + sum_fp + sum_fn);
  return report;
}

std::string report_tsv(const ScoreReport& report) {
  std::string out = "label\tprecision\trecall\tf1\tsupport\n";
  for (const auto& r : rows_of(report)) {
    out += r.label + '\t' + r.precision + '\t' + r.recall + '\t' + r.f1 + '\t' + r.support + '\n';
  }
  return out;
}

std::string report_text(const RunMetadata& meta, const ScoreReport& report) {
  std::string out;
  if (!meta.name.empty()) out += "run:   " + meta.name + "\n";
  if (!meta.split.empty()) out += "split: " + meta.split + "\n";
  for (const auto& [k, v] : meta.extra) out += k + ": " + v + "\n";

  const auto rows = rows_of(report);
  std::size_t w = 5;
  for (const auto& r : rows) w = std::max(w, r.label.size());
  auto line = [&](const std::string& a, const std::string& b, const std::string& c,
                  const std::string& d, const std::string& e) {
    char buf[64];
    std::string s = a + std::string(w - a.size(), ' ');
    std::snprintf(buf, sizeof buf, "  %9s  %9s  %9s  %7s\n", b.c_str(), c.c_str(), d.c_str(),
                  e.c_str());
    return s + buf;
  };
  out += line("label", "precision", "recall", "f1", "support");
  out += std::string(w + 44, '-') + "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i + 1 == rows.size()) out += std::string(w + 44, '-') + "\n";
    const auto& r = rows[i];
    out += line(r.label, r.precision, r.recall, r.f1, r.support);
  }
  return out;
}

}  // namespace propaganda
