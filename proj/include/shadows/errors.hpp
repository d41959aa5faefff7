// Copyright 2026 The paulishadow developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef SHADOWS_ERRORS_HPP_
#define SHADOWS_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace shadows {

/// Requested an exhaustive enumeration of an ensemble that has no finite
/// (or practically enumerable) element list.
struct NotEnumerableError : std::runtime_error {
  explicit NotEnumerableError(const std::string& what) : std::runtime_error(what) {}
};

/// A shadow-channel coefficient sits at or below the inversion floor.
/// `label_indices` lists the offending Pauli labels in canonical order.
struct NonInvertibleError : std::runtime_error {
  NonInvertibleError(const std::string& what, int n_qubits, std::vector<std::uint64_t> labels)
      : std::runtime_error(what), n(n_qubits), label_indices(std::move(labels)) {}
  int n;
  std::vector<std::uint64_t> label_indices;
};

/// A dense 2^n-dimensional object was requested beyond the configured limit.
struct DenseLimitError : std::runtime_error {
  explicit DenseLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Default cap on n for operations that materialize 2^n-dimensional objects.
inline constexpr int kDefaultDenseLimit = 12;

}  // namespace shadows

#endif  // SHADOWS_ERRORS_HPP_
