#pragma once

#include <map>
#include <string>

#include "uts/rng.hpp"
#include "uts/tensor.hpp"

namespace uts {

using GradStore = std::map<std::string, Tensor>;

// Named parameter tensors plus their Adagrad accumulators. Accumulator keys
// always mirror the entry keys and stay elementwise nonnegative.
class ParamStore {
 public:
  Tensor& add(const std::string& name, Tensor t);
  Tensor& at(const std::string& name);
  const Tensor& at(const std::string& name) const;
  bool has(const std::string& name) const { return entries_.count(name) > 0; }

  Tensor& accumulator(const std::string& name);
  const Tensor& accumulator(const std::string& name) const;

  const std::map<std::string, Tensor>& entries() const { return entries_; }
  std::map<std::string, Tensor>& entries() { return entries_; }
  const std::map<std::string, Tensor>& accumulators() const { return accumulators_; }
  std::map<std::string, Tensor>& accumulators() { return accumulators_; }

  long total_size() const;
  void check_invariants() const;

  // Uniform [-range, range] fill of every entry, in name order.
  void init_uniform(Rng& rng, double range);

 private:
  std::map<std::string, Tensor> entries_;
  std::map<std::string, Tensor> accumulators_;
};

}  // namespace uts
