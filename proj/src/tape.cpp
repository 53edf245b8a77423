#include "uts/tape.hpp"

#include "uts/errors.hpp"

namespace uts {

void Tape::backward(Var loss) {
  if (loss.tape != this) throw ShapeError("backward: loss from another tape");
  if (spent_) throw NumericError("backward called twice without a new forward pass");
  const Node& ln = node(loss.id);
  if (!ln.value.is_scalar()) throw ShapeError("backward: loss must be scalar");
  spent_ = true;
  if (!grad_enabled_) return;
  grad_buffer(loss.id).data[0] = 1.0;
  for (int i = loss.id; i >= 0; --i) {
    Node& n = nodes_[static_cast<size_t>(i)];
    if (n.requires_grad && n.grad_ready && n.backward) n.backward(*this);
  }
}

void Tape::accumulate_param_grads(std::map<std::string, Tensor>& sink) const {
  for (const auto& [name, var] : param_vars_) {
    const Node& n = node(var.id);
    auto it = sink.find(name);
    if (it == sink.end()) {
      it = sink.emplace(name, Tensor::zeros(n.value.shape)).first;
    } else if (it->second.shape != n.value.shape) {
      throw ShapeError("gradient shape mismatch for " + name);
    }
    if (n.grad_ready) it->second.data += n.grad.data;
  }
}

}  // namespace uts
