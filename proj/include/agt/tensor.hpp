#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "agt/rng.hpp"

namespace agt {

// Dense row-major tensor of doubles. A Tensor is a cheap handle onto a
// shared node; copying a Tensor aliases the same storage. Ops on tensors
// record themselves on the active GradientTape (if any) when at least one
// input requires gradients, so a later backward() can fill in grads.
//
// Everything is double precision: the finite-difference gradient checker
// works at 1e-4 relative tolerance, which float cannot support.
struct TensorNode {
  std::vector<int> shape;
  std::vector<double> values;
  std::vector<double> grad;  // empty until backward touches this tensor
  bool requires_grad = false;
};

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<int> shape, bool requires_grad = false);
  static Tensor full(std::vector<int> shape, double value, bool requires_grad = false);
  static Tensor from(std::vector<int> shape, std::vector<double> values,
                     bool requires_grad = false);
  static Tensor scalar(double value, bool requires_grad = false);

  bool defined() const { return node_ != nullptr; }
  const std::vector<int>& shape() const { return node_->shape; }
  int rank() const { return static_cast<int>(node_->shape.size()); }
  std::int64_t size() const { return static_cast<std::int64_t>(node_->values.size()); }
  bool requires_grad() const { return node_->requires_grad; }

  std::span<const double> values() const { return node_->values; }
  std::span<double> values_mut() { return node_->values; }

  // Gradient accumulated by the last backward(); empty if this tensor was
  // not part of that graph.
  std::span<const double> grad() const { return node_->grad; }
  void zero_grad();

  double item() const;  // scalar tensors only
  double at(std::initializer_list<int> index) const;

  const std::shared_ptr<TensorNode>& node() const { return node_; }

 private:
  explicit Tensor(std::shared_ptr<TensorNode> node) : node_(std::move(node)) {}
  std::shared_ptr<TensorNode> node_;
};

enum class Activation { kTanh, kSigmoid };

// --- forward ops (all record backward rules on the active tape) ---

Tensor matmul(const Tensor& a, const Tensor& b);          // [m,k] x [k,n] -> [m,n]
Tensor add(const Tensor& a, const Tensor& b);             // elementwise, same shape
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor add_bias(const Tensor& m, const Tensor& bias);     // [r,c] + [c] broadcast over rows
Tensor one_minus(const Tensor& x);                        // 1 - x
Tensor activation(const Tensor& x, Activation kind);
Tensor tanh(const Tensor& x);
Tensor sigmoid(const Tensor& x);

// Exp-normalizes each row over its unmasked positions (max-subtracted for
// stability); masked positions come out exactly 0. Accepts rank-1 [n] with an
// n-mask or rank-2 [rows,n] with a row-major rows*n mask. Throws if any row
// is fully masked.
Tensor masked_softmax(const Tensor& scores, const std::vector<std::uint8_t>& mask);
Tensor softmax(const Tensor& scores);                     // all positions unmasked

// Rank-1: [p] ++ [q] -> [p+q]. Rank-2: [r,p] ++ [r,q] -> [r,p+q].
Tensor concat(const Tensor& a, const Tensor& b);
Tensor reshape(const Tensor& x, std::vector<int> shape);

// out[i,:] = sum_n weights[i,n] * values[i,n,:]   ([b,n,d], [b,n] -> [b,d])
Tensor weighted_sum(const Tensor& values, const Tensor& weights);

// Inverted dropout: kept entries are scaled by 1/(1-rate) so eval needs no
// rescale. rate == 0 returns x unchanged.
Tensor dropout(const Tensor& x, double rate, Rng& rng);

// -log(max(p[target], 1e-12)) per row. Rows must already sum to 1 (1e-6).
Tensor cross_entropy(const Tensor& probs, std::span<const int> targets);  // [b,c] -> [b]
Tensor cross_entropy(const Tensor& probs, int target);                    // [c] -> scalar

Tensor sum(const Tensor& x);   // -> scalar
Tensor mean(const Tensor& x);  // -> scalar

// --- reverse-mode tape ---

enum class OpKind {
  kMatmul,
  kAdd,
  kSub,
  kMul,
  kAddBias,
  kOneMinus,
  kActivation,
  kMaskedSoftmax,
  kConcat,
  kReshape,
  kWeightedSum,
  kDropout,
  kCrossEntropy,
  kSum,
  kMean,
};

struct TapeNode {
  OpKind op;
  std::vector<std::shared_ptr<TensorNode>> inputs;
  std::shared_ptr<TensorNode> output;
  std::function<void()> backprop;  // adds into the inputs' grads
};

// Records ops in creation order while alive; one tape per training step.
// backward() zeroes the grads of every participating tensor, seeds the loss
// with 1 and replays the tape once in reverse, so grads accumulate across
// fan-out within the graph but not across backward() calls.
class GradientTape {
 public:
  GradientTape();
  ~GradientTape();
  GradientTape(const GradientTape&) = delete;
  GradientTape& operator=(const GradientTape&) = delete;

  void backward(const Tensor& loss);
  std::size_t node_count() const { return nodes_.size(); }

  static GradientTape* active();
  void record(OpKind op, std::vector<std::shared_ptr<TensorNode>> inputs,
              std::shared_ptr<TensorNode> output, std::function<void()> backprop);

 private:
  std::vector<TapeNode> nodes_;
  GradientTape* prev_ = nullptr;
};

// --- finite-difference gradient checking ---

struct GradCheckEntry {
  std::string name;
  double max_rel_error = 0.0;
  bool pass = true;
};

struct GradCheckReport {
  std::vector<GradCheckEntry> entries;
  double max_rel_error = 0.0;
  bool pass = true;
};

// Compares tape gradients of loss_fn against central finite differences,
// perturbing every scalar of every listed parameter in place. loss_fn must
// be deterministic; it is evaluated twice up front and must reproduce the
// same loss bitwise, else this throws. Relative error is
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-8).
GradCheckReport gradcheck(const std::function<Tensor()>& loss_fn,
                          const std::vector<std::pair<std::string, Tensor>>& params,
                          double step = 1e-4, double tolerance = 1e-4);

}  // namespace agt
