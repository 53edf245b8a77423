#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "uts/tensor.hpp"

namespace uts {

class Tape;

// Handle to a recorded tensor. Cheap to copy; valid while its Tape lives.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  bool valid() const { return tape != nullptr && id >= 0; }
  const Tensor& value() const;
  const Tensor& grad() const;
};

// Reverse-mode tape. Operations append nodes in topological order; backward()
// runs the recorded rules once, newest to oldest, then marks the tape spent.
class Tape {
 public:
  struct Node {
    Tensor value;
    Tensor grad;  // allocated lazily during backward
    bool requires_grad = false;
    bool grad_ready = false;
    std::string param_name;  // nonempty marks a trainable leaf
    std::function<void(Tape&)> backward;
  };

  explicit Tape(bool grad_enabled = true) : grad_enabled_(grad_enabled) {
    nodes_.reserve(1024);
  }

  bool grad_enabled() const { return grad_enabled_; }

  Var input(Tensor value) { return push(std::move(value), false, {}); }

  Var constant(double v) { return input(Tensor::scalar(v)); }

  // Trainable leaf; memoized per name so one parameter maps to one node.
  Var leaf(Tensor value, const std::string& param_name) {
    auto it = param_vars_.find(param_name);
    if (it != param_vars_.end()) return it->second;
    Var v = push(std::move(value), grad_enabled_, param_name);
    param_vars_.emplace(param_name, v);
    return v;
  }

  Var push(Tensor value, bool requires_grad, std::string param_name) {
    value.check_finite(param_name.empty() ? "op output" : param_name.c_str());
    Node n;
    n.value = std::move(value);
    n.requires_grad = grad_enabled_ && requires_grad;
    n.param_name = std::move(param_name);
    nodes_.push_back(std::move(n));
    return Var{this, static_cast<int>(nodes_.size()) - 1};
  }

  Node& node(int id) { return nodes_[static_cast<size_t>(id)]; }
  const Node& node(int id) const { return nodes_[static_cast<size_t>(id)]; }
  size_t size() const { return nodes_.size(); }

  Tensor& grad_buffer(int id) {
    Node& n = nodes_[static_cast<size_t>(id)];
    if (!n.grad_ready) {
      n.grad = Tensor::zeros(n.value.shape);
      n.grad_ready = true;
    }
    return n.grad;
  }

  // Seeds d(loss)/d(loss)=1 and sweeps the tape in reverse. The tape is
  // spent afterwards; a fresh forward pass needs a fresh Tape.
  void backward(Var loss);

  // Adds every trainable leaf's gradient into `sink[name]` (created if absent).
  void accumulate_param_grads(std::map<std::string, Tensor>& sink) const;

  bool spent() const { return spent_; }

 private:
  std::vector<Node> nodes_;
  std::map<std::string, Var> param_vars_;
  bool grad_enabled_ = true;
  bool spent_ = false;
};

inline const Tensor& Var::value() const { return tape->node(id).value; }
inline const Tensor& Var::grad() const { return tape->node(id).grad; }

}  // namespace uts
