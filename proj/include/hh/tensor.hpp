#pragma once
/// @file tensor.hpp
/// @brief Mixed-radix index arithmetic for tensor-product bases.
///
/// Tensor factors are enumerated row-major with the rightmost factor varying
/// fastest; this single convention is used for every tensor basis in the
/// engine so that golden values are stable.

#include <cstddef>
#include <vector>

#include "hh/errors.hpp"

namespace hh {

struct TensorShape {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> stride;
  std::size_t total = 1;

  TensorShape() = default;
  explicit TensorShape(std::vector<std::size_t> d) : dims(std::move(d)) {
    stride.assign(dims.size(), 1);
    total = 1;
    for (std::size_t k = dims.size(); k-- > 0;) {
      stride[k] = total;
      total *= dims[k];
    }
  }

  std::size_t index(const std::vector<std::size_t>& tuple) const {
    if (tuple.size() != dims.size()) throw ShapeError("tensor tuple arity mismatch");
    std::size_t idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (tuple[k] >= dims[k]) throw ShapeError("tensor tuple entry out of range");
      idx += tuple[k] * stride[k];
    }
    return idx;
  }

  void decode(std::size_t idx, std::vector<std::size_t>& out) const {
    out.resize(dims.size());
    for (std::size_t k = 0; k < dims.size(); ++k) {
      out[k] = dims[k] ? (idx / stride[k]) % dims[k] : 0;
    }
  }
};

}  // namespace hh
