#pragma once

// Test-side oracles, kept independent of the library's backward pass and of
// the analysis implementations they check. Plain loops over raw doubles.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "agt/rng.hpp"
#include "agt/tensor.hpp"

namespace oracles {

// Central finite difference of f with respect to leaf[i].
inline double fd_gradient(const std::function<double()>& f, agt::Tensor leaf, std::size_t i,
                          double h = 1e-4) {
  auto v = leaf.values_mut();
  const double orig = v[i];
  v[i] = orig + h;
  const double plus = f();
  v[i] = orig - h;
  const double minus = f();
  v[i] = orig;
  return (plus - minus) / (2.0 * h);
}

// Backpropagates build()'s loss once, then compares every leaf gradient to
// the central-difference quotient. Returns the worst relative error.
inline double max_fd_error(const std::function<agt::Tensor()>& build,
                           const std::vector<agt::Tensor>& leaves, double h = 1e-4) {
  std::vector<std::vector<double>> analytic;
  {
    agt::GradientTape tape;
    agt::Tensor loss = build();
    tape.backward(loss);
    for (const agt::Tensor& leaf : leaves) {
      auto g = leaf.grad();
      analytic.emplace_back(g.empty() ? std::vector<double>(leaf.size(), 0.0)
                                      : std::vector<double>(g.begin(), g.end()));
    }
  }
  auto f = [&build] { return build().item(); };
  double worst = 0.0;
  for (std::size_t l = 0; l < leaves.size(); ++l) {
    for (std::size_t i = 0; i < analytic[l].size(); ++i) {
      const double numeric = fd_gradient(f, leaves[l], i, h);
      const double a = analytic[l][i];
      const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-8});
      worst = std::max(worst, rel);
    }
  }
  return worst;
}

inline agt::Tensor random_tensor(std::vector<int> shape, agt::Rng& rng, bool requires_grad,
                                 double lo = -1.0, double hi = 1.0) {
  std::int64_t n = 1;
  for (int e : shape) n *= e;
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (double& v : vals) v = rng.uniform(lo, hi);
  return agt::Tensor::from(std::move(shape), std::move(vals), requires_grad);
}

// Independent softmax-attention over one instance: scores via
// w . tanh(W x), exp-normalized, then the weighted sum of word vectors.
// words is n x d row-major, score_matrix d x d (input-major, x W layout),
// score_vector length d.
struct AttendOracle {
  std::vector<double> attention;  // n
  std::vector<double> selection;  // d
};

inline AttendOracle attend_oracle(const std::vector<double>& words, int n, int d,
                                  const std::vector<double>& score_matrix,
                                  const std::vector<double>& score_vector) {
  std::vector<double> scores(n, 0.0);
  for (int t = 0; t < n; ++t) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) {
      double h = 0.0;
      for (int i = 0; i < d; ++i) h += words[t * d + i] * score_matrix[i * d + j];
      s += std::tanh(h) * score_vector[j];
    }
    scores[t] = s;
  }
  const double max_s = *std::max_element(scores.begin(), scores.end());
  double total = 0.0;
  AttendOracle out;
  out.attention.resize(n);
  for (int t = 0; t < n; ++t) {
    out.attention[t] = std::exp(scores[t] - max_s);
    total += out.attention[t];
  }
  for (int t = 0; t < n; ++t) out.attention[t] /= total;
  out.selection.assign(d, 0.0);
  for (int t = 0; t < n; ++t)
    for (int j = 0; j < d; ++j) out.selection[j] += out.attention[t] * words[t * d + j];
  return out;
}

// Scalar-loop gated combine: y = tanh([y_prev; s] W + b) * gate
//                              + y_prev * (1 - gate), all length-d rows.
inline std::vector<double> layer_step_oracle(const std::vector<double>& y_prev,
                                             const std::vector<double>& selection,
                                             const std::vector<double>& gate,
                                             const std::vector<double>& weight,  // 2d x d
                                             const std::vector<double>& bias, int d) {
  std::vector<double> y(d);
  for (int j = 0; j < d; ++j) {
    double h = bias[j];
    for (int i = 0; i < d; ++i) h += y_prev[i] * weight[i * d + j];
    for (int i = 0; i < d; ++i) h += selection[i] * weight[(d + i) * d + j];
    y[j] = std::tanh(h) * gate[j] + y_prev[j] * (1.0 - gate[j]);
  }
  return y;
}

// Brute-force phrase composer: a span [s,e) is reported iff every token in
// it clears the threshold and both boundaries do not.
struct SimpleSpan {
  int start = 0;
  int end = 0;
  bool operator==(const SimpleSpan&) const = default;
};

inline std::vector<SimpleSpan> spans_oracle(const std::vector<double>& row, double threshold) {
  const int n = static_cast<int>(row.size());
  std::vector<bool> sel(n);
  for (int i = 0; i < n; ++i) sel[i] = row[i] > threshold;
  std::vector<SimpleSpan> spans;
  for (int s = 0; s < n; ++s) {
    for (int e = s + 1; e <= n; ++e) {
      bool all = true;
      for (int i = s; i < e; ++i) all = all && sel[i];
      const bool maximal = all && (s == 0 || !sel[s - 1]) && (e == n || !sel[e]);
      if (maximal) spans.push_back({s, e});
    }
  }
  return spans;
}

// Median by full sort; even rows take the mean of the two central order
// statistics. Selection is strictly above the median.
inline std::vector<int> median_select_oracle(const std::vector<double>& row) {
  std::vector<double> sorted(row);
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median =
      n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  std::vector<int> picked;
  for (std::size_t i = 0; i < n; ++i)
    if (row[i] > median) picked.push_back(static_cast<int>(i));
  return picked;
}

}  // namespace oracles
