#pragma once

// Dense pure-state algebra over small tensor-product spaces.
//
// Amplitude layout is row-major over the subsystem list: subsystem 0 varies
// slowest. For the eraser this is (slit path, s polarization, p polarization).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "eraser/tolerance.hpp"

namespace eraser {

using Complex = std::complex<double>;

class StateVector {
 public:
  StateVector(std::vector<Complex> amplitudes, std::vector<std::size_t> dims);

  /// Computational basis state |index> over the given dimensions.
  static StateVector basis(std::vector<std::size_t> dims, std::size_t index);

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const noexcept;
  double norm() const noexcept;
  bool is_normalized(double tol = tol::algebraic) const noexcept;

  /// Throws zero-probability-branch when the norm is below the zero threshold.
  StateVector normalized() const;
  StateVector scaled(Complex factor) const;

 private:
  std::vector<Complex> amplitudes_;
  std::vector<std::size_t> dims_;
};

/// <a|b>; dims must match.
Complex inner(const StateVector& a, const StateVector& b);

/// Largest element-wise modulus of a - b.
double max_abs_diff(const StateVector& a, const StateVector& b);

StateVector operator+(const StateVector& a, const StateVector& b);

/// Kronecker product; the result's dims are a.dims followed by b.dims.
StateVector tensor(const StateVector& a, const StateVector& b);

enum class OperatorKind { general, unitary, projector };

class LinearOperator {
 public:
  /// Row-major square matrix; no structural tag.
  LinearOperator(std::vector<Complex> entries, std::size_t dim);

  /// Validated constructors: throw invalid-argument when the tag does not hold.
  static LinearOperator unitary(std::vector<Complex> entries, std::size_t dim);
  static LinearOperator projector(std::vector<Complex> entries, std::size_t dim);

  static LinearOperator identity(std::size_t dim);
  /// |v><v| / <v|v> for a single-subsystem vector.
  static LinearOperator projector_onto(const StateVector& v);

  std::size_t dim() const noexcept { return dim_; }
  OperatorKind kind() const noexcept { return kind_; }
  Complex operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::span<const Complex> entries() const noexcept { return entries_; }

  LinearOperator adjoint() const;

  /// Induced infinity norm (max absolute row sum).
  double inf_norm() const noexcept;

  bool is_unitary(double tol = tol::algebraic) const;
  bool is_hermitian(double tol = tol::algebraic) const;
  bool is_idempotent(double tol = tol::algebraic) const;

  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
  friend LinearOperator operator*(Complex s, const LinearOperator& a);

 private:
  LinearOperator(std::vector<Complex> entries, std::size_t dim, OperatorKind kind);

  std::vector<Complex> entries_;
  std::size_t dim_;
  OperatorKind kind_ = OperatorKind::general;
};

/// (I x ... x op x ... x I) |state>, with op acting on subsystem `target`.
StateVector apply(const LinearOperator& op, const StateVector& state, std::size_t target);

struct Projection {
  StateVector branch;  // P|state>, not renormalized
  double probability;  // ||P state||^2 / ||state||^2

  /// branch / sqrt(probability); throws zero-probability-branch below 1e-14.
  StateVector conditional() const;
};

/// Requires a Hermitian idempotent projector (checked, invalid-argument otherwise).
Projection project(const StateVector& state, const LinearOperator& projector, std::size_t target);

}  // namespace eraser
