#include "eraser/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "eraser/error.hpp"

namespace eraser {

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

void require_same_dims(const StateVector& a, const StateVector& b) {
  if (a.dims() != b.dims()) {
    throw Error(ErrorCode::dimension_mismatch, "state dimensions differ");
  }
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes, std::vector<std::size_t> dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (dims_.empty() || std::find(dims_.begin(), dims_.end(), 0u) != dims_.end()) {
    throw Error(ErrorCode::dimension_mismatch, "subsystem dimensions must be positive");
  }
  if (product(dims_) != amplitudes_.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "product of dims (" + std::to_string(product(dims_)) + ") != amplitude count (" +
                    std::to_string(amplitudes_.size()) + ")");
  }
}

StateVector StateVector::basis(std::vector<std::size_t> dims, std::size_t index) {
  std::vector<Complex> amps(product(dims), Complex{0.0, 0.0});
  if (index >= amps.size()) {
    throw Error(ErrorCode::invalid_argument, "basis index out of range");
  }
  amps[index] = 1.0;
  return StateVector(std::move(amps), std::move(dims));
}

double StateVector::norm_squared() const noexcept {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return sum;
}

double StateVector::norm() const noexcept { return std::sqrt(norm_squared()); }

bool StateVector::is_normalized(double tol) const noexcept {
  return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
  const double n2 = norm_squared();
  if (n2 < tol::zero_probability) {
    throw Error(ErrorCode::zero_probability_branch, "cannot normalize a vanishing state");
  }
  return scaled(1.0 / std::sqrt(n2));
}

StateVector StateVector::scaled(Complex factor) const {
  std::vector<Complex> out(amplitudes_);
  for (auto& a : out) a *= factor;
  return StateVector(std::move(out), dims_);
}

Complex inner(const StateVector& a, const StateVector& b) {
  require_same_dims(a, b);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum;
}

double max_abs_diff(const StateVector& a, const StateVector& b) {
  require_same_dims(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

StateVector operator+(const StateVector& a, const StateVector& b) {
  require_same_dims(a, b);
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return StateVector(std::move(out), a.dims());
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  std::vector<Complex> out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a.amplitudes()) {
    for (const auto& y : b.amplitudes()) out.push_back(x * y);
  }
  std::vector<std::size_t> dims(a.dims());
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return StateVector(std::move(out), std::move(dims));
}

LinearOperator::LinearOperator(std::vector<Complex> entries, std::size_t dim)
    : LinearOperator(std::move(entries), dim, OperatorKind::general) {}

LinearOperator::LinearOperator(std::vector<Complex> entries, std::size_t dim, OperatorKind kind)
    : entries_(std::move(entries)), dim_(dim), kind_(kind) {
  if (dim_ == 0 || entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::dimension_mismatch, "operator must be a non-empty square matrix");
  }
}

LinearOperator LinearOperator::unitary(std::vector<Complex> entries, std::size_t dim) {
  LinearOperator op(std::move(entries), dim, OperatorKind::unitary);
  if (!op.is_unitary()) throw Error(ErrorCode::invalid_argument, "operator is not unitary");
  return op;
}

LinearOperator LinearOperator::projector(std::vector<Complex> entries, std::size_t dim) {
  LinearOperator op(std::move(entries), dim, OperatorKind::projector);
  if (!op.is_hermitian() || !op.is_idempotent()) {
    throw Error(ErrorCode::invalid_argument, "operator is not an orthogonal projector");
  }
  return op;
}

LinearOperator LinearOperator::identity(std::size_t dim) {
  std::vector<Complex> e(dim * dim, Complex{0.0, 0.0});
  for (std::size_t i = 0; i < dim; ++i) e[i * dim + i] = 1.0;
  return LinearOperator(std::move(e), dim, OperatorKind::unitary);
}

LinearOperator LinearOperator::projector_onto(const StateVector& v) {
  if (v.dims().size() != 1) {
    throw Error(ErrorCode::dimension_mismatch, "projector_onto expects a single-subsystem vector");
  }
  const double n2 = v.norm_squared();
  if (n2 < tol::zero_probability) {
    throw Error(ErrorCode::invalid_argument, "cannot project onto a zero vector");
  }
  const std::size_t d = v.size();
  std::vector<Complex> e(d * d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) e[r * d + c] = v[r] * std::conj(v[c]) / n2;
  }
  return LinearOperator(std::move(e), d, OperatorKind::projector);
}

LinearOperator LinearOperator::adjoint() const {
  std::vector<Complex> e(entries_.size());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) e[c * dim_ + r] = std::conj(entries_[r * dim_ + c]);
  }
  return LinearOperator(std::move(e), dim_, kind_);
}

double LinearOperator::inf_norm() const noexcept {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < dim_; ++c) row += std::abs(entries_[r * dim_ + c]);
    worst = std::max(worst, row);
  }
  return worst;
}

bool LinearOperator::is_unitary(double tol) const {
  return (adjoint() * (*this) - identity(dim_)).inf_norm() <= tol;
}

bool LinearOperator::is_hermitian(double tol) const { return (adjoint() - *this).inf_norm() <= tol; }

bool LinearOperator::is_idempotent(double tol) const {
  return ((*this) * (*this) - *this).inf_norm() <= tol;
}

LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::dimension_mismatch, "operator product dims differ");
  const std::size_t d = a.dim_;
  std::vector<Complex> e(d * d, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      const Complex ark = a.entries_[r * d + k];
      for (std::size_t c = 0; c < d; ++c) e[r * d + c] += ark * b.entries_[k * d + c];
    }
  }
  return LinearOperator(std::move(e), d);
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::dimension_mismatch, "operator sum dims differ");
  std::vector<Complex> e(a.entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.entries_[i];
  return LinearOperator(std::move(e), a.dim_);
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  return a + Complex{-1.0, 0.0} * b;
}

LinearOperator operator*(Complex s, const LinearOperator& a) {
  std::vector<Complex> e(a.entries_);
  for (auto& x : e) x *= s;
  return LinearOperator(std::move(e), a.dim_);
}

StateVector apply(const LinearOperator& op, const StateVector& state, std::size_t target) {
  const auto& dims = state.dims();
  if (target >= dims.size()) {
    throw Error(ErrorCode::dimension_mismatch, "target subsystem " + std::to_string(target) +
                                                   " out of range for " +
                                                   std::to_string(dims.size()) + " subsystems");
  }
  const std::size_t d = dims[target];
  if (op.dim() != d) {
    throw Error(ErrorCode::dimension_mismatch,
                "operator dim " + std::to_string(op.dim()) + " does not match subsystem " +
                    std::to_string(target) + " dim " + std::to_string(d));
  }
  std::size_t inner_stride = 1;
  for (std::size_t i = target + 1; i < dims.size(); ++i) inner_stride *= dims[i];
  const std::size_t outer = state.size() / (d * inner_stride);

  const auto in = state.amplitudes();
  std::vector<Complex> out(state.size(), Complex{0.0, 0.0});
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * d * inner_stride;
    for (std::size_t k = 0; k < inner_stride; ++k) {
      for (std::size_t r = 0; r < d; ++r) {
        Complex acc{0.0, 0.0};
        for (std::size_t c = 0; c < d; ++c) acc += op(r, c) * in[base + c * inner_stride + k];
        out[base + r * inner_stride + k] = acc;
      }
    }
  }
  return StateVector(std::move(out), dims);
}

StateVector Projection::conditional() const {
  if (probability < tol::zero_probability) {
    throw Error(ErrorCode::zero_probability_branch,
                "branch probability " + std::to_string(probability) + " is below threshold");
  }
  return branch.scaled(1.0 / std::sqrt(branch.norm_squared()));
}

Projection project(const StateVector& state, const LinearOperator& projector, std::size_t target) {
  if (projector.kind() != OperatorKind::projector &&
      !(projector.is_hermitian() && projector.is_idempotent())) {
    throw Error(ErrorCode::invalid_argument, "projection requires a Hermitian idempotent operator");
  }
  const double total = state.norm_squared();
  if (total < tol::zero_probability) {
    throw Error(ErrorCode::zero_probability_branch, "cannot project a vanishing state");
  }
  StateVector branch = apply(projector, state, target);
  const double p = std::clamp(branch.norm_squared() / total, 0.0, 1.0);
  return Projection{std::move(branch), p};
}

}  // namespace eraser
