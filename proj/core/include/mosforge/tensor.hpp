// Copyright 2026 The mosforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MOSFORGE_TENSOR_HPP_
#define MOSFORGE_TENSOR_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mosforge/errors.hpp"

namespace mosforge::nn {

// Dense row-major tensor with a gradient buffer of the same shape. Values
// are written once by the producing op; gradients accumulate during the
// backward sweep. S is float for training, double for gradient checks.
template <class S>
struct Tensor {
  std::vector<int64_t> shape;
  std::vector<S> v;
  std::vector<S> g;
  bool needs_grad = true;

  int64_t numel() const {
    int64_t n = 1;
    for (int64_t d : shape) n *= d;
    return n;
  }

  int64_t dim(size_t i) const { return shape[i]; }

  void zero_grad() { std::fill(g.begin(), g.end(), S(0)); }
};

template <class S>
using TensorPtr = std::shared_ptr<Tensor<S>>;

template <class S>
TensorPtr<S> make_tensor(std::vector<int64_t> shape, bool needs_grad = true) {
  auto t = std::make_shared<Tensor<S>>();
  t->shape = std::move(shape);
  int64_t n = t->numel();
  if (n < 0) throw ValidationError("negative tensor extent");
  t->v.assign(static_cast<size_t>(n), S(0));
  t->g.assign(static_cast<size_t>(n), S(0));
  t->needs_grad = needs_grad;
  return t;
}

template <class S>
TensorPtr<S> make_tensor(std::vector<int64_t> shape, std::vector<S> values,
                         bool needs_grad = true) {
  auto t = make_tensor<S>(std::move(shape), needs_grad);
  if (static_cast<int64_t>(values.size()) != t->numel())
    throw ValidationError("value count does not match tensor shape");
  t->v = std::move(values);
  return t;
}

template <class S>
TensorPtr<S> make_scalar(S value, bool needs_grad = true) {
  return make_tensor<S>({1}, {value}, needs_grad);
}

// Reverse-mode tape: ops append backward closures in execution order and
// backward() runs them in exact reverse. One tape per training step; a tape
// is single-threaded by contract.
template <class S>
class Tape {
 public:
  bool recording = true;

  void record(std::function<void()> backward_fn) {
    if (recording) nodes_.push_back(std::move(backward_fn));
  }

  void backward(const TensorPtr<S>& loss) {
    if (!recording)
      throw ValidationError("backward on a non-recording tape");
    if (loss->numel() != 1)
      throw ValidationError("backward requires a scalar loss");
    loss->g[0] += S(1);
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) (*it)();
  }

  void clear() { nodes_.clear(); }
  size_t size() const { return nodes_.size(); }

 private:
  std::vector<std::function<void()>> nodes_;
};

}  // namespace mosforge::nn

#endif  // MOSFORGE_TENSOR_HPP_
