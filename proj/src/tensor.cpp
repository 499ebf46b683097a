#include "agt/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace agt {

namespace {

std::string shape_str(const std::vector<int>& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

std::int64_t shape_size(const std::vector<int>& shape) {
  std::int64_t n = 1;
  for (int e : shape) {
    if (e < 0) throw std::invalid_argument("tensor: negative extent in shape " + shape_str(shape));
    n *= e;
  }
  return n;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Finalizes an op result: propagates requires_grad and records the backward
// rule on the active tape. Each closure guards every input with its own
// requires_grad check before accumulating.
void finish(OpKind op, std::initializer_list<Tensor> inputs, const Tensor& out,
            std::function<void()> backprop) {
  bool needs = false;
  for (const Tensor& t : inputs) needs = needs || t.requires_grad();
  out.node()->requires_grad = needs;
  if (!needs) return;
  if (GradientTape* tape = GradientTape::active()) {
    std::vector<std::shared_ptr<TensorNode>> in_nodes;
    in_nodes.reserve(inputs.size());
    for (const Tensor& t : inputs) in_nodes.push_back(t.node());
    tape->record(op, std::move(in_nodes), out.node(), std::move(backprop));
  }
}

void ensure_grad(TensorNode* n) {
  if (n->grad.size() != n->values.size()) n->grad.assign(n->values.size(), 0.0);
}

}  // namespace

// --- Tensor ---

Tensor Tensor::zeros(std::vector<int> shape, bool requires_grad) {
  return full(std::move(shape), 0.0, requires_grad);
}

Tensor Tensor::full(std::vector<int> shape, double value, bool requires_grad) {
  auto node = std::make_shared<TensorNode>();
  std::int64_t n = shape_size(shape);
  node->shape = std::move(shape);
  node->values.assign(static_cast<std::size_t>(n), value);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::from(std::vector<int> shape, std::vector<double> values, bool requires_grad) {
  std::int64_t n = shape_size(shape);
  require(n == static_cast<std::int64_t>(values.size()),
          "tensor: shape " + shape_str(shape) + " does not match " +
              std::to_string(values.size()) + " values");
  auto node = std::make_shared<TensorNode>();
  node->shape = std::move(shape);
  node->values = std::move(values);
  node->requires_grad = requires_grad;
  return Tensor(std::move(node));
}

Tensor Tensor::scalar(double value, bool requires_grad) {
  return from({1}, {value}, requires_grad);
}

void Tensor::zero_grad() { node_->grad.assign(node_->values.size(), 0.0); }

double Tensor::item() const {
  require(size() == 1, "tensor: item() on non-scalar shape " + shape_str(shape()));
  return node_->values[0];
}

double Tensor::at(std::initializer_list<int> index) const {
  require(static_cast<int>(index.size()) == rank(), "tensor: wrong index rank");
  std::int64_t flat = 0;
  int axis = 0;
  for (int i : index) {
    require(i >= 0 && i < node_->shape[axis], "tensor: index out of range");
    flat = flat * node_->shape[axis] + i;
    ++axis;
  }
  return node_->values[static_cast<std::size_t>(flat)];
}

// --- ops ---

Tensor matmul(const Tensor& a, const Tensor& b) {
  require(a.rank() == 2 && b.rank() == 2 && a.shape()[1] == b.shape()[0],
          "matmul: incompatible shapes " + shape_str(a.shape()) + " and " + shape_str(b.shape()));
  const int m = a.shape()[0], k = a.shape()[1], n = b.shape()[1];
  Tensor out = Tensor::zeros({m, n});
  const double* av = a.values().data();
  const double* bv = b.values().data();
  double* ov = out.values_mut().data();
  for (int i = 0; i < m; ++i) {
    for (int p = 0; p < k; ++p) {
      const double av_ip = av[i * k + p];
      if (av_ip == 0.0) continue;
      const double* brow = bv + p * n;
      double* orow = ov + i * n;
      for (int j = 0; j < n; ++j) orow[j] += av_ip * brow[j];
    }
  }
  finish(OpKind::kMatmul, {a, b}, out, [an = a.node(), bn = b.node(), on = out.node(), m, k, n] {
    const double* g = on->grad.data();
    if (an->requires_grad) {
      ensure_grad(an.get());
      for (int i = 0; i < m; ++i)
        for (int p = 0; p < k; ++p) {
          double acc = 0.0;
          for (int j = 0; j < n; ++j) acc += g[i * n + j] * bn->values[p * n + j];
          an->grad[i * k + p] += acc;
        }
    }
    if (bn->requires_grad) {
      ensure_grad(bn.get());
      for (int p = 0; p < k; ++p)
        for (int j = 0; j < n; ++j) {
          double acc = 0.0;
          for (int i = 0; i < m; ++i) acc += an->values[i * k + p] * g[i * n + j];
          bn->grad[p * n + j] += acc;
        }
    }
  });
  return out;
}

namespace {

Tensor elementwise(OpKind op, const Tensor& a, const Tensor& b, const char* name) {
  require(a.shape() == b.shape(), std::string(name) + ": shape mismatch " + shape_str(a.shape()) +
                                      " vs " + shape_str(b.shape()));
  const std::size_t n = a.values().size();
  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (op) {
      case OpKind::kAdd: vals[i] = a.values()[i] + b.values()[i]; break;
      case OpKind::kSub: vals[i] = a.values()[i] - b.values()[i]; break;
      default: vals[i] = a.values()[i] * b.values()[i]; break;
    }
  }
  Tensor out = Tensor::from(a.shape(), std::move(vals));
  finish(op, {a, b}, out, [op, an = a.node(), bn = b.node(), on = out.node(), n] {
    const double* g = on->grad.data();
    if (an->requires_grad) {
      ensure_grad(an.get());
      for (std::size_t i = 0; i < n; ++i)
        an->grad[i] += op == OpKind::kMul ? g[i] * bn->values[i] : g[i];
    }
    if (bn->requires_grad) {
      ensure_grad(bn.get());
      for (std::size_t i = 0; i < n; ++i) {
        if (op == OpKind::kAdd) bn->grad[i] += g[i];
        else if (op == OpKind::kSub) bn->grad[i] -= g[i];
        else bn->grad[i] += g[i] * an->values[i];
      }
    }
  });
  return out;
}

}  // namespace

Tensor add(const Tensor& a, const Tensor& b) { return elementwise(OpKind::kAdd, a, b, "add"); }
Tensor sub(const Tensor& a, const Tensor& b) { return elementwise(OpKind::kSub, a, b, "sub"); }
Tensor mul(const Tensor& a, const Tensor& b) { return elementwise(OpKind::kMul, a, b, "mul"); }

Tensor add_bias(const Tensor& m, const Tensor& bias) {
  require(m.rank() == 2 && bias.rank() == 1 && m.shape()[1] == bias.shape()[0],
          "add_bias: incompatible shapes " + shape_str(m.shape()) + " and " +
              shape_str(bias.shape()));
  const int rows = m.shape()[0], cols = m.shape()[1];
  std::vector<double> vals(m.values().begin(), m.values().end());
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) vals[i * cols + j] += bias.values()[j];
  Tensor out = Tensor::from(m.shape(), std::move(vals));
  finish(OpKind::kAddBias, {m, bias}, out,
         [mn = m.node(), bn = bias.node(), on = out.node(), rows, cols] {
           const double* g = on->grad.data();
           if (mn->requires_grad) {
             ensure_grad(mn.get());
             for (std::size_t i = 0; i < mn->grad.size(); ++i) mn->grad[i] += g[i];
           }
           if (bn->requires_grad) {
             ensure_grad(bn.get());
             for (int i = 0; i < rows; ++i)
               for (int j = 0; j < cols; ++j) bn->grad[j] += g[i * cols + j];
           }
         });
  return out;
}

Tensor one_minus(const Tensor& x) {
  std::vector<double> vals(x.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = 1.0 - x.values()[i];
  Tensor out = Tensor::from(x.shape(), std::move(vals));
  finish(OpKind::kOneMinus, {x}, out, [xn = x.node(), on = out.node()] {
    if (!xn->requires_grad) return;
    ensure_grad(xn.get());
    for (std::size_t i = 0; i < xn->grad.size(); ++i) xn->grad[i] -= on->grad[i];
  });
  return out;
}

Tensor activation(const Tensor& x, Activation kind) {
  std::vector<double> vals(x.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const double v = x.values()[i];
    vals[i] = kind == Activation::kTanh ? std::tanh(v) : 1.0 / (1.0 + std::exp(-v));
  }
  Tensor out = Tensor::from(x.shape(), std::move(vals));
  // Both derivatives come from the saved output: 1 - t^2 and s(1 - s).
  finish(OpKind::kActivation, {x}, out, [kind, xn = x.node(), on = out.node()] {
    if (!xn->requires_grad) return;
    ensure_grad(xn.get());
    for (std::size_t i = 0; i < xn->grad.size(); ++i) {
      const double t = on->values[i];
      const double d = kind == Activation::kTanh ? 1.0 - t * t : t * (1.0 - t);
      xn->grad[i] += on->grad[i] * d;
    }
  });
  return out;
}

Tensor tanh(const Tensor& x) { return activation(x, Activation::kTanh); }
Tensor sigmoid(const Tensor& x) { return activation(x, Activation::kSigmoid); }

Tensor masked_softmax(const Tensor& scores, const std::vector<std::uint8_t>& mask) {
  require(scores.rank() == 1 || scores.rank() == 2,
          "masked_softmax: expected rank 1 or 2, got shape " + shape_str(scores.shape()));
  const int rows = scores.rank() == 2 ? scores.shape()[0] : 1;
  const int n = scores.rank() == 2 ? scores.shape()[1] : scores.shape()[0];
  require(mask.size() == static_cast<std::size_t>(rows) * n,
          "masked_softmax: mask size " + std::to_string(mask.size()) + " does not cover shape " +
              shape_str(scores.shape()));
  std::vector<double> vals(scores.values().size(), 0.0);
  for (int r = 0; r < rows; ++r) {
    const double* in = scores.values().data() + static_cast<std::size_t>(r) * n;
    const std::uint8_t* mk = mask.data() + static_cast<std::size_t>(r) * n;
    double max_v = -HUGE_VAL;
    for (int j = 0; j < n; ++j)
      if (mk[j]) max_v = std::max(max_v, in[j]);
    if (max_v == -HUGE_VAL)
      throw std::invalid_argument("masked_softmax: all positions masked in row " +
                                  std::to_string(r));
    double total = 0.0;
    double* ot = vals.data() + static_cast<std::size_t>(r) * n;
    for (int j = 0; j < n; ++j) {
      if (!mk[j]) continue;
      ot[j] = std::exp(in[j] - max_v);
      total += ot[j];
    }
    for (int j = 0; j < n; ++j)
      if (mk[j]) ot[j] /= total;
  }
  Tensor out = Tensor::from(scores.shape(), std::move(vals));
  finish(OpKind::kMaskedSoftmax, {scores}, out,
         [sn = scores.node(), on = out.node(), mask, rows, n] {
           if (!sn->requires_grad) return;
           ensure_grad(sn.get());
           for (int r = 0; r < rows; ++r) {
             const std::size_t base = static_cast<std::size_t>(r) * n;
             double dot = 0.0;
             for (int j = 0; j < n; ++j)
               if (mask[base + j]) dot += on->grad[base + j] * on->values[base + j];
             for (int j = 0; j < n; ++j)
               if (mask[base + j])
                 sn->grad[base + j] += on->values[base + j] * (on->grad[base + j] - dot);
           }
         });
  return out;
}

Tensor softmax(const Tensor& scores) {
  return masked_softmax(scores, std::vector<std::uint8_t>(scores.values().size(), 1));
}

Tensor concat(const Tensor& a, const Tensor& b) {
  require(a.rank() == b.rank(), "concat: rank mismatch " + shape_str(a.shape()) + " vs " +
                                    shape_str(b.shape()));
  require(a.rank() == 1 || a.rank() == 2,
          "concat: expected rank 1 or 2, got shape " + shape_str(a.shape()));
  Tensor out;
  if (a.rank() == 1) {
    std::vector<double> vals;
    vals.reserve(a.size() + b.size());
    vals.insert(vals.end(), a.values().begin(), a.values().end());
    vals.insert(vals.end(), b.values().begin(), b.values().end());
    out = Tensor::from({a.shape()[0] + b.shape()[0]}, std::move(vals));
  } else {
    require(a.shape()[0] == b.shape()[0], "concat: row count mismatch " + shape_str(a.shape()) +
                                              " vs " + shape_str(b.shape()));
    const int rows = a.shape()[0], p = a.shape()[1], q = b.shape()[1];
    std::vector<double> vals(static_cast<std::size_t>(rows) * (p + q));
    for (int r = 0; r < rows; ++r) {
      std::copy_n(a.values().data() + static_cast<std::size_t>(r) * p, p,
                  vals.data() + static_cast<std::size_t>(r) * (p + q));
      std::copy_n(b.values().data() + static_cast<std::size_t>(r) * q, q,
                  vals.data() + static_cast<std::size_t>(r) * (p + q) + p);
    }
    out = Tensor::from({rows, p + q}, std::move(vals));
  }
  finish(OpKind::kConcat, {a, b}, out, [an = a.node(), bn = b.node(), on = out.node()] {
    const bool rank1 = an->shape.size() == 1;
    const int rows = rank1 ? 1 : an->shape[0];
    const int p = rank1 ? an->shape[0] : an->shape[1];
    const int q = rank1 ? bn->shape[0] : bn->shape[1];
    for (int r = 0; r < rows; ++r) {
      const double* g = on->grad.data() + static_cast<std::size_t>(r) * (p + q);
      if (an->requires_grad) {
        ensure_grad(an.get());
        for (int j = 0; j < p; ++j) an->grad[static_cast<std::size_t>(r) * p + j] += g[j];
      }
      if (bn->requires_grad) {
        ensure_grad(bn.get());
        for (int j = 0; j < q; ++j) bn->grad[static_cast<std::size_t>(r) * q + j] += g[p + j];
      }
    }
  });
  return out;
}

Tensor reshape(const Tensor& x, std::vector<int> shape) {
  std::int64_t n = 1;
  for (int e : shape) n *= e;
  require(n == x.size(), "reshape: cannot view " + shape_str(x.shape()) + " as " +
                             shape_str(shape));
  Tensor out = Tensor::from(std::move(shape),
                            std::vector<double>(x.values().begin(), x.values().end()));
  finish(OpKind::kReshape, {x}, out, [xn = x.node(), on = out.node()] {
    if (!xn->requires_grad) return;
    ensure_grad(xn.get());
    for (std::size_t i = 0; i < xn->grad.size(); ++i) xn->grad[i] += on->grad[i];
  });
  return out;
}

Tensor weighted_sum(const Tensor& values, const Tensor& weights) {
  require(values.rank() == 3 && weights.rank() == 2 && values.shape()[0] == weights.shape()[0] &&
              values.shape()[1] == weights.shape()[1],
          "weighted_sum: incompatible shapes " + shape_str(values.shape()) + " and " +
              shape_str(weights.shape()));
  const int b = values.shape()[0], n = values.shape()[1], d = values.shape()[2];
  std::vector<double> vals(static_cast<std::size_t>(b) * d, 0.0);
  for (int i = 0; i < b; ++i)
    for (int t = 0; t < n; ++t) {
      const double w = weights.values()[static_cast<std::size_t>(i) * n + t];
      if (w == 0.0) continue;
      const double* row = values.values().data() + (static_cast<std::size_t>(i) * n + t) * d;
      double* ot = vals.data() + static_cast<std::size_t>(i) * d;
      for (int j = 0; j < d; ++j) ot[j] += w * row[j];
    }
  Tensor out = Tensor::from({b, d}, std::move(vals));
  finish(OpKind::kWeightedSum, {values, weights}, out,
         [vn = values.node(), wn = weights.node(), on = out.node(), b, n, d] {
           for (int i = 0; i < b; ++i) {
             const double* g = on->grad.data() + static_cast<std::size_t>(i) * d;
             for (int t = 0; t < n; ++t) {
               const std::size_t vbase = (static_cast<std::size_t>(i) * n + t) * d;
               const double w = wn->values[static_cast<std::size_t>(i) * n + t];
               if (vn->requires_grad) {
                 ensure_grad(vn.get());
                 for (int j = 0; j < d; ++j) vn->grad[vbase + j] += w * g[j];
               }
               if (wn->requires_grad) {
                 ensure_grad(wn.get());
                 double acc = 0.0;
                 for (int j = 0; j < d; ++j) acc += g[j] * vn->values[vbase + j];
                 wn->grad[static_cast<std::size_t>(i) * n + t] += acc;
               }
             }
           }
         });
  return out;
}

Tensor dropout(const Tensor& x, double rate, Rng& rng) {
  require(rate >= 0.0 && rate < 1.0, "dropout: rate must lie in [0,1), got " +
                                         std::to_string(rate));
  if (rate == 0.0) return x;
  const double keep_scale = 1.0 / (1.0 - rate);
  std::vector<double> mask(x.values().size());
  std::vector<double> vals(x.values().size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    mask[i] = rng.uniform() >= rate ? keep_scale : 0.0;
    vals[i] = x.values()[i] * mask[i];
  }
  Tensor out = Tensor::from(x.shape(), std::move(vals));
  finish(OpKind::kDropout, {x}, out, [xn = x.node(), on = out.node(), mask = std::move(mask)] {
    if (!xn->requires_grad) return;
    ensure_grad(xn.get());
    for (std::size_t i = 0; i < xn->grad.size(); ++i) xn->grad[i] += on->grad[i] * mask[i];
  });
  return out;
}

namespace {
constexpr double kLogFloor = 1e-12;
}

Tensor cross_entropy(const Tensor& probs, std::span<const int> targets) {
  require(probs.rank() == 2, "cross_entropy: expected rank-2 probabilities, got shape " +
                                 shape_str(probs.shape()));
  const int b = probs.shape()[0], c = probs.shape()[1];
  require(targets.size() == static_cast<std::size_t>(b),
          "cross_entropy: " + std::to_string(targets.size()) + " targets for " +
              std::to_string(b) + " rows");
  for (int i = 0; i < b; ++i) {
    if (targets[i] < 0 || targets[i] >= c)
      throw std::out_of_range("cross_entropy: target " + std::to_string(targets[i]) +
                              " outside [0," + std::to_string(c) + ") in row " +
                              std::to_string(i));
    double total = 0.0;
    for (int j = 0; j < c; ++j) total += probs.values()[static_cast<std::size_t>(i) * c + j];
    require(std::abs(total - 1.0) <= 1e-6, "cross_entropy: row " + std::to_string(i) +
                                               " sums to " + std::to_string(total));
  }
  std::vector<double> vals(b);
  for (int i = 0; i < b; ++i) {
    const double p = probs.values()[static_cast<std::size_t>(i) * c + targets[i]];
    vals[i] = -std::log(std::max(p, kLogFloor));
  }
  Tensor out = Tensor::from({b}, std::move(vals));
  std::vector<int> tgt(targets.begin(), targets.end());
  finish(OpKind::kCrossEntropy, {probs}, out,
         [pn = probs.node(), on = out.node(), tgt = std::move(tgt), c] {
           if (!pn->requires_grad) return;
           ensure_grad(pn.get());
           for (std::size_t i = 0; i < tgt.size(); ++i) {
             const std::size_t at = i * c + tgt[i];
             // Inside the clamp the loss is constant, so no gradient flows.
             if (pn->values[at] > kLogFloor)
               pn->grad[at] -= on->grad[i] / pn->values[at];
           }
         });
  return out;
}

Tensor cross_entropy(const Tensor& probs, int target) {
  require(probs.rank() == 1, "cross_entropy: expected rank-1 probabilities, got shape " +
                                 shape_str(probs.shape()));
  Tensor wide = reshape(probs, {1, probs.shape()[0]});
  const int t[1] = {target};
  return reshape(cross_entropy(wide, std::span<const int>(t, 1)), {1});
}

namespace {

Tensor reduce(const Tensor& x, bool take_mean) {
  double total = 0.0;
  for (double v : x.values()) total += v;
  const double denom = take_mean ? static_cast<double>(x.size()) : 1.0;
  Tensor out = Tensor::scalar(total / denom);
  finish(take_mean ? OpKind::kMean : OpKind::kSum, {x}, out,
         [xn = x.node(), on = out.node(), denom] {
           if (!xn->requires_grad) return;
           ensure_grad(xn.get());
           const double g = on->grad[0] / denom;
           for (std::size_t i = 0; i < xn->grad.size(); ++i) xn->grad[i] += g;
         });
  return out;
}

}  // namespace

Tensor sum(const Tensor& x) { return reduce(x, false); }
Tensor mean(const Tensor& x) { return reduce(x, true); }

// --- GradientTape ---

namespace {
thread_local GradientTape* g_active_tape = nullptr;
}

GradientTape::GradientTape() {
  prev_ = g_active_tape;
  g_active_tape = this;
}

GradientTape::~GradientTape() { g_active_tape = prev_; }

GradientTape* GradientTape::active() { return g_active_tape; }

void GradientTape::record(OpKind op, std::vector<std::shared_ptr<TensorNode>> inputs,
                          std::shared_ptr<TensorNode> output, std::function<void()> backprop) {
  nodes_.push_back(TapeNode{op, std::move(inputs), std::move(output), std::move(backprop)});
}

void GradientTape::backward(const Tensor& loss) {
  require(loss.size() == 1, "backward: loss must be a scalar, got shape " +
                                shape_str(loss.shape()));
  if (!loss.requires_grad()) return;  // nothing reachable requires gradients
  std::unordered_set<TensorNode*> participants;
  for (const TapeNode& node : nodes_) {
    for (const auto& in : node.inputs)
      if (in->requires_grad) participants.insert(in.get());
    participants.insert(node.output.get());
  }
  for (TensorNode* n : participants) n->grad.assign(n->values.size(), 0.0);
  TensorNode* ln = loss.node().get();
  ensure_grad(ln);
  ln->grad[0] = 1.0;
  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) it->backprop();
}

// --- gradcheck ---

GradCheckReport gradcheck(const std::function<Tensor()>& loss_fn,
                          const std::vector<std::pair<std::string, Tensor>>& params,
                          double step, double tolerance) {
  auto eval_loss = [&loss_fn] { return loss_fn().item(); };

  const double probe1 = eval_loss();
  const double probe2 = eval_loss();
  if (std::memcmp(&probe1, &probe2, sizeof(double)) != 0)
    throw std::runtime_error("gradcheck: closure is not deterministic (losses " +
                             std::to_string(probe1) + " vs " + std::to_string(probe2) + ")");

  std::vector<std::vector<double>> analytic(params.size());
  {
    GradientTape tape;
    Tensor loss = loss_fn();
    tape.backward(loss);
    for (std::size_t p = 0; p < params.size(); ++p) {
      std::span<const double> g = params[p].second.grad();
      analytic[p] = g.empty() ? std::vector<double>(params[p].second.size(), 0.0)
                              : std::vector<double>(g.begin(), g.end());
    }
  }

  GradCheckReport report;
  for (std::size_t p = 0; p < params.size(); ++p) {
    Tensor param = params[p].second;
    GradCheckEntry entry;
    entry.name = params[p].first;
    std::span<double> v = param.values_mut();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double orig = v[i];
      v[i] = orig + step;
      const double plus = eval_loss();
      v[i] = orig - step;
      const double minus = eval_loss();
      v[i] = orig;
      const double numeric = (plus - minus) / (2.0 * step);
      const double a = analytic[p][i];
      const double rel =
          std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-8});
      entry.max_rel_error = std::max(entry.max_rel_error, rel);
    }
    entry.pass = entry.max_rel_error <= tolerance;
    report.max_rel_error = std::max(report.max_rel_error, entry.max_rel_error);
    report.pass = report.pass && entry.pass;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace agt
