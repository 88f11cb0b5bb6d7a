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

#include "qdarwin/qcore.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "qdarwin/tolerances.h"

namespace qdarwin {

namespace {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
  }
}

// Splits every full basis index into (kept index, traced index).
struct IndexSplit {
  std::vector<Eigen::Index> kept;
  std::vector<Eigen::Index> traced;
  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
};

IndexSplit split_indices(const SubsystemLayout& layout, std::span<const std::size_t> keep) {
  const std::size_t nf = layout.size();
  std::vector<bool> is_kept(nf, false);
  for (std::size_t f : keep) {
    if (f >= nf) {
      throw std::invalid_argument("factor index out of range");
    }
    if (is_kept[f]) {
      throw std::invalid_argument("repeated factor index");
    }
    is_kept[f] = true;
  }
  IndexSplit out;
  // Per-factor strides inside the kept and traced sub-indices.
  std::vector<Eigen::Index> kept_stride(nf, 0);
  std::vector<Eigen::Index> traced_stride(nf, 0);
  for (std::size_t f = nf; f-- > 0;) {
    if (is_kept[f]) {
      kept_stride[f] = out.kept_dim;
      out.kept_dim *= layout.dim(f);
    } else {
      traced_stride[f] = out.traced_dim;
      out.traced_dim *= layout.dim(f);
    }
  }
  const auto total = static_cast<Eigen::Index>(layout.total_dim());
  out.kept.resize(total);
  out.traced.resize(total);
  std::vector<int> digit(nf, 0);
  for (Eigen::Index x = 0; x < total; ++x) {
    Eigen::Index k = 0;
    Eigen::Index t = 0;
    for (std::size_t f = 0; f < nf; ++f) {
      if (is_kept[f]) {
        k += digit[f] * kept_stride[f];
      } else {
        t += digit[f] * traced_stride[f];
      }
    }
    out.kept[x] = k;
    out.traced[x] = t;
    for (std::size_t f = nf; f-- > 0;) {
      if (++digit[f] < layout.dim(f)) {
        break;
      }
      digit[f] = 0;
    }
  }
  return out;
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<int> dims, std::vector<std::string> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) {
    throw std::invalid_argument("SubsystemLayout: dims and labels differ in length");
  }
  std::set<std::string> seen;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (dims_[k] <= 0) {
      throw std::invalid_argument("SubsystemLayout: nonpositive dimension for " + labels_[k]);
    }
    if (!seen.insert(labels_[k]).second) {
      throw std::invalid_argument("SubsystemLayout: duplicate label " + labels_[k]);
    }
  }
}

SubsystemLayout SubsystemLayout::qubits(std::vector<std::string> labels) {
  std::vector<int> dims(labels.size(), 2);
  return SubsystemLayout(std::move(dims), std::move(labels));
}

SubsystemLayout SubsystemLayout::system_environment(int n) {
  if (n < 0) {
    throw std::invalid_argument("system_environment: negative environment size");
  }
  std::vector<std::string> labels{"S"};
  for (int i = 1; i <= n; ++i) {
    labels.push_back("E" + std::to_string(i));
  }
  return qubits(std::move(labels));
}

std::size_t SubsystemLayout::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

std::optional<std::size_t> SubsystemLayout::index_of(std::string_view label) const {
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (labels_[k] == label) {
      return k;
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> SubsystemLayout::indices_of(std::span<const std::string> labels) const {
  std::vector<std::size_t> out;
  for (const auto& l : labels) {
    auto k = index_of(l);
    if (!k) {
      throw std::invalid_argument("unknown subsystem label: " + l);
    }
    out.push_back(*k);
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument("repeated subsystem label");
  }
  return out;
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  auto dims = dims_;
  auto labels = labels_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return SubsystemLayout(std::move(dims), std::move(labels));
}

SubsystemLayout SubsystemLayout::select(std::span<const std::size_t> factors) const {
  std::vector<int> dims;
  std::vector<std::string> labels;
  for (std::size_t f : factors) {
    dims.push_back(dims_.at(f));
    labels.push_back(labels_.at(f));
  }
  return SubsystemLayout(std::move(dims), std::move(labels));
}

StateVector::StateVector(Vector amplitudes, SubsystemLayout layout)
    : amplitudes_(std::move(amplitudes)), layout_(std::move(layout)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != layout_.total_dim()) {
    throw std::invalid_argument("StateVector: length does not match layout dimension");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol::kNorm) {
    throw std::invalid_argument("StateVector: not normalized");
  }
}

StateVector StateVector::qubit(Complex a0, Complex a1, std::string label) {
  Vector v(2);
  v << a0, a1;
  const double norm = v.norm();
  if (norm == 0.0) {
    throw std::invalid_argument("StateVector::qubit: zero vector");
  }
  v /= norm;
  return StateVector(detail::Trusted{}, std::move(v), SubsystemLayout::qubits({std::move(label)}));
}

StateVector StateVector::basis(std::size_t k, SubsystemLayout layout) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(layout.total_dim()));
  if (k >= layout.total_dim()) {
    throw std::invalid_argument("StateVector::basis: index out of range");
  }
  v[static_cast<Eigen::Index>(k)] = 1.0;
  return StateVector(detail::Trusted{}, std::move(v), std::move(layout));
}

DensityMatrix::DensityMatrix(Matrix matrix, SubsystemLayout layout)
    : matrix_(std::move(matrix)), layout_(std::move(layout)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("DensityMatrix: not square");
  }
  if (static_cast<std::size_t>(matrix_.rows()) != layout_.total_dim()) {
    throw std::invalid_argument("DensityMatrix: size does not match layout dimension");
  }
  if (max_abs(matrix_ - matrix_.adjoint()) > tol::kHermitian) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(matrix_.trace().real() - 1.0) > tol::kTrace) {
    throw std::invalid_argument("DensityMatrix: trace is not one");
  }
  if (herm_eigenvalues(matrix_)[0] < -tol::kNegativeEigenvalue) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(detail::Trusted{}, psi.amplitudes() * psi.amplitudes().adjoint(),
                       psi.layout());
}

DensityMatrix DensityMatrix::maximally_mixed(SubsystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  return DensityMatrix(detail::Trusted{}, identity(d) / static_cast<double>(d), std::move(layout));
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  const Eigen::Index db = b.dim();
  Vector out(a.dim() * db);
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    out.segment(i * db, db) = a[i] * b.amplitudes();
  }
  return StateVector(detail::Trusted{}, std::move(out), a.layout().concat(b.layout()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(detail::Trusted{}, kron(a.matrix(), b.matrix()),
                       a.layout().concat(b.layout()));
}

DensityMatrix partial_trace_factors(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: empty keep set");
  }
  if (!std::is_sorted(keep.begin(), keep.end())) {
    throw std::invalid_argument("partial_trace: factor indices must be sorted");
  }
  const IndexSplit split = split_indices(rho.layout(), keep);
  // Full indices grouped by traced index, ordered by kept index.
  std::vector<Eigen::Index> by_trace(static_cast<std::size_t>(split.kept_dim * split.traced_dim));
  for (std::size_t x = 0; x < split.kept.size(); ++x) {
    by_trace[static_cast<std::size_t>(split.traced[x] * split.kept_dim + split.kept[x])] =
        static_cast<Eigen::Index>(x);
  }
  Matrix out = Matrix::Zero(split.kept_dim, split.kept_dim);
  const Matrix& m = rho.matrix();
  for (Eigen::Index t = 0; t < split.traced_dim; ++t) {
    const Eigen::Index* idx = &by_trace[static_cast<std::size_t>(t * split.kept_dim)];
    for (Eigen::Index j = 0; j < split.kept_dim; ++j) {
      for (Eigen::Index i = 0; i < split.kept_dim; ++i) {
        out(i, j) += m(idx[i], idx[j]);
      }
    }
  }
  return DensityMatrix(detail::Trusted{}, std::move(out), rho.layout().select(keep));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace: empty keep set");
  }
  const auto factors = rho.layout().indices_of(keep);
  return partial_trace_factors(rho, factors);
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep) {
  return partial_trace(rho, std::span<const std::string>(keep.begin(), keep.size()));
}

Matrix bipartite_matrix(const StateVector& psi, std::span<const std::size_t> keep) {
  const IndexSplit split = split_indices(psi.layout(), keep);
  Matrix m(split.kept_dim, split.traced_dim);
  for (std::size_t x = 0; x < split.kept.size(); ++x) {
    m(split.kept[x], split.traced[x]) = psi[static_cast<Eigen::Index>(x)];
  }
  return m;
}

DensityMatrix reduced_state(const StateVector& psi, std::span<const std::size_t> keep) {
  if (keep.empty()) {
    throw std::invalid_argument("reduced_state: empty keep set");
  }
  if (!std::is_sorted(keep.begin(), keep.end())) {
    throw std::invalid_argument("reduced_state: factor indices must be sorted");
  }
  const Matrix m = bipartite_matrix(psi, keep);
  Matrix rho = m * m.adjoint();
  return DensityMatrix(detail::Trusted{}, std::move(rho), psi.layout().select(keep));
}

HermitianEig herm_eig(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("herm_eig: matrix is not square");
  }
  if (max_abs(h - h.adjoint()) > tol::kHermitianInput) {
    throw std::invalid_argument("herm_eig: matrix is not Hermitian");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("herm_eig: eigensolver did not converge");
  }
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector herm_eigenvalues(const Matrix& h) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("herm_eigenvalues: matrix is not square");
  }
  if (h.rows() == 1) {
    return RealVector::Constant(1, h(0, 0).real());
  }
  if (h.rows() == 2) {
    // Closed form; dominant cost in the basis search over qubit fractions.
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    RealVector out(2);
    out << mean - radius, mean + radius;
    return out;
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix propagator(const HermitianEig& eig, double t) {
  if (!std::isfinite(t)) {
    throw std::invalid_argument("propagator: time must be finite");
  }
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k) {
    phases[k] = std::polar(1.0, -eig.eigenvalues[k] * t);
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Matrix propagator(const Matrix& h, double t) { return propagator(herm_eig(h), t); }

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    const double x = std::clamp(l, 0.0, 1.0);
    if (x > 0.0) {
      s -= x * std::log2(x);
    }
  }
  return s;
}

double entropy(const DensityMatrix& rho) { return entropy_of_spectrum(herm_eigenvalues(rho.matrix())); }

double entropy_of_unnormalized(const Matrix& h) {
  const double tr = h.trace().real();
  if (!(tr > 0.0)) {
    throw std::invalid_argument("entropy_of_unnormalized: nonpositive trace");
  }
  return entropy_of_spectrum(herm_eigenvalues(h) / tr);
}

double binary_entropy(double x) {
  RealVector v(2);
  v << x, 1.0 - x;
  return entropy_of_spectrum(v);
}

double purity(const DensityMatrix& rho) {
  // Tr ρ² = Σ |ρ_ij|² for Hermitian ρ.
  return rho.matrix().squaredNorm();
}

double fidelity_pure(const StateVector& psi, const StateVector& phi) {
  require_same_dim(psi.dim(), phi.dim(), "fidelity_pure");
  return std::norm(psi.amplitudes().dot(phi.amplitudes()));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "trace_distance");
  const RealVector ev = herm_eigenvalues(rho.matrix() - sigma.matrix());
  return std::clamp(0.5 * ev.cwiseAbs().sum(), 0.0, 1.0);
}

double uhlmann_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho.dim(), sigma.dim(), "uhlmann_fidelity");
  // F = ||√ρ √σ||_1². Singular values keep near-zero modes at round-off size
  // instead of the √ε an eigenvalue square root would give them.
  auto matrix_sqrt = [](const Matrix& m) {
    const HermitianEig e = herm_eig(m);
    const RealVector root = e.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    return Matrix(e.eigenvectors * root.cast<Complex>().asDiagonal() * e.eigenvectors.adjoint());
  };
  const Matrix product = matrix_sqrt(rho.matrix()) * matrix_sqrt(sigma.matrix());
  const double tr = Eigen::JacobiSVD<Matrix>(product).singularValues().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace qdarwin
