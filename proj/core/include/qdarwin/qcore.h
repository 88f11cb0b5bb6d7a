// Copyright 2026 The qdarwin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense quantum-state primitives over an ordered tensor-factor layout.
//
// Factor 0 is the most significant index: for a layout (S, E_1, ..., E_n)
// the basis index of |s e_1 ... e_n> is s·d_1···d_n + ... + e_n, which is the
// ordering produced by Kronecker products a ⊗ b.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qdarwin {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::vector<int> dims, std::vector<std::string> labels);

  /// Qubit factors with the given labels.
  static SubsystemLayout qubits(std::vector<std::string> labels);
  /// S, E1, ..., En.
  static SubsystemLayout system_environment(int n);

  std::size_t size() const { return dims_.size(); }
  int dim(std::size_t factor) const { return dims_[factor]; }
  const std::string& label(std::size_t factor) const { return labels_[factor]; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t total_dim() const;

  std::optional<std::size_t> index_of(std::string_view label) const;
  /// Factor indices for `labels`, sorted in layout order. Throws on unknown
  /// or repeated labels.
  std::vector<std::size_t> indices_of(std::span<const std::string> labels) const;

  SubsystemLayout concat(const SubsystemLayout& other) const;
  /// Sub-layout of the given factors (kept in the order given).
  SubsystemLayout select(std::span<const std::size_t> factors) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<int> dims_;
  std::vector<std::string> labels_;
};

namespace detail {
/// Passkey for constructing states whose invariants hold by construction.
struct Trusted {};
}  // namespace detail

class StateVector {
 public:
  /// Validates length against the layout and normalization within tol::kNorm.
  StateVector(Vector amplitudes, SubsystemLayout layout);
  StateVector(detail::Trusted, Vector amplitudes, SubsystemLayout layout)
      : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {}

  /// Single qubit a0|0> + a1|1>, normalized here.
  static StateVector qubit(Complex a0, Complex a1, std::string label = "S");
  /// |k> in the given layout.
  static StateVector basis(std::size_t k, SubsystemLayout layout);

  const Vector& amplitudes() const { return amplitudes_; }
  const SubsystemLayout& layout() const { return layout_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  Complex operator[](Eigen::Index k) const { return amplitudes_[k]; }

 private:
  Vector amplitudes_;
  SubsystemLayout layout_;
};

class DensityMatrix {
 public:
  /// Validates shape, Hermiticity, unit trace and positivity.
  DensityMatrix(Matrix matrix, SubsystemLayout layout);
  DensityMatrix(detail::Trusted, Matrix matrix, SubsystemLayout layout)
      : matrix_(std::move(matrix)), layout_(std::move(layout)) {}

  static DensityMatrix from_pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(SubsystemLayout layout);

  const Matrix& matrix() const { return matrix_; }
  const SubsystemLayout& layout() const { return layout_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return matrix_(i, j); }

 private:
  Matrix matrix_;
  SubsystemLayout layout_;
};

struct HermitianEig {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // columns
};

StateVector tensor(const StateVector& a, const StateVector& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state over the factors named in `keep`, in layout order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep);
/// Same, by factor index (sorted, unique, nonempty).
DensityMatrix partial_trace_factors(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Reduced state of a pure state, computed as M M† from its bipartite reshaping.
DensityMatrix reduced_state(const StateVector& psi, std::span<const std::size_t> keep);

/// Amplitudes reshaped into a (kept × traced) matrix; kept and traced factors
/// each retain layout order.
Matrix bipartite_matrix(const StateVector& psi, std::span<const std::size_t> keep);

/// Eigendecomposition of a Hermitian matrix (symmetrized first).
HermitianEig herm_eig(const Matrix& h);
/// Eigenvalues only, ascending.
RealVector herm_eigenvalues(const Matrix& h);

/// exp(−iHt).
Matrix propagator(const Matrix& h, double t);
Matrix propagator(const HermitianEig& eig, double t);

/// Von Neumann entropy in bits.
double entropy(const DensityMatrix& rho);
/// −Σ λ log2 λ over a spectrum, each λ clamped into [0, 1]; 0 log 0 = 0.
double entropy_of_spectrum(const RealVector& eigenvalues);
/// Entropy of h / Tr h for a positive semidefinite Hermitian h with Tr h > 0.
double entropy_of_unnormalized(const Matrix& h);
/// Binary entropy h2(x) in bits.
double binary_entropy(double x);

double purity(const DensityMatrix& rho);

/// |<psi|phi>|².
double fidelity_pure(const StateVector& psi, const StateVector& phi);
/// ½ Σ |eig(ρ − σ)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
/// (Tr √(√ρ σ √ρ))².
double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Pauli matrices and identity of size d.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix identity(Eigen::Index d);
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace qdarwin
