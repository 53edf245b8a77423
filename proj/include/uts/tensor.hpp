#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "uts/errors.hpp"

namespace uts {

// Flat dense tensor over a scalar type. Storage is row-major; rank-2 views
// are exposed through Eigen maps so everything above can stay expression-based.
template <class S>
struct TensorT {
  using Scalar = S;
  using Flat = Eigen::Array<S, Eigen::Dynamic, 1>;
  using MatMap =
      Eigen::Map<Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using ConstMatMap = Eigen::Map<
      const Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  using VecMap = Eigen::Map<Eigen::Matrix<S, Eigen::Dynamic, 1>>;
  using ConstVecMap = Eigen::Map<const Eigen::Matrix<S, Eigen::Dynamic, 1>>;

  std::vector<long> shape;
  Flat data;
  bool requires_grad = false;

  TensorT() = default;

  static TensorT zeros(std::vector<long> shp) {
    TensorT t;
    t.shape = std::move(shp);
    t.data = Flat::Zero(count(t.shape));
    return t;
  }

  static TensorT scalar(S v) {
    TensorT t;
    t.shape = {1};
    t.data = Flat::Constant(1, v);
    return t;
  }

  static TensorT vector(std::initializer_list<S> vals) {
    TensorT t;
    t.shape = {static_cast<long>(vals.size())};
    t.data.resize(static_cast<long>(vals.size()));
    long i = 0;
    for (S v : vals) t.data[i++] = v;
    return t;
  }

  static TensorT from_flat(std::vector<long> shp, Flat values) {
    TensorT t;
    t.shape = std::move(shp);
    t.data = std::move(values);
    if (count(t.shape) != t.data.size())
      throw ShapeError("from_flat: shape does not match data length");
    return t;
  }

  static long count(const std::vector<long>& shp) {
    long n = 1;
    for (long d : shp) {
      if (d <= 0) throw ShapeError("tensor dimensions must be positive");
      n *= d;
    }
    return shp.empty() ? 0 : n;
  }

  long size() const { return data.size(); }
  int rank() const { return static_cast<int>(shape.size()); }
  bool is_scalar() const { return rank() == 1 && shape[0] == 1; }

  long rows() const {
    if (rank() == 2) return shape[0];
    if (rank() == 1) return shape[0];
    throw ShapeError("rows(): rank > 2");
  }
  long cols() const {
    if (rank() == 2) return shape[1];
    if (rank() == 1) return 1;
    throw ShapeError("cols(): rank > 2");
  }

  MatMap mat() { return MatMap(data.data(), rows(), cols()); }
  ConstMatMap mat() const { return ConstMatMap(data.data(), rows(), cols()); }
  VecMap vec() { return VecMap(data.data(), size()); }
  ConstVecMap vec() const { return ConstVecMap(data.data(), size()); }

  S value() const {
    if (!is_scalar()) throw ShapeError("value(): tensor is not scalar");
    return data[0];
  }

  S& at(long i) { return data[i]; }
  S at(long i) const { return data[i]; }
  S& operator()(long r, long c) { return data[r * cols() + c]; }
  S operator()(long r, long c) const { return data[r * cols() + c]; }

  bool same_shape(const TensorT& o) const { return shape == o.shape; }

  std::string shape_str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
    os << "]";
    return os.str();
  }

  void check_finite(const char* what) const {
    if (!data.isFinite().all())
      throw NumericError(std::string("non-finite values in ") + what);
  }
};

using Tensor = TensorT<double>;
using Tensorf = TensorT<float>;

}  // namespace uts
