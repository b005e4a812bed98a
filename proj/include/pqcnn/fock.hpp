/**
 * Copyright 2026 The PQCNN Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Fock-basis combinatorics and state containers restricted to a fixed
// photon number. Everything here is immutable once built, so bases are
// shared between states through std::shared_ptr<const SubspaceBasis>.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "pqcnn/errors.hpp"

namespace pqcnn {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr std::size_t kDefaultStateCap = 1'000'000;

/// Occupation-number vector over m modes.
struct FockState {
  std::vector<int> occupations;

  int modes() const { return static_cast<int>(occupations.size()); }
  int photons() const {
    return std::accumulate(occupations.begin(), occupations.end(), 0);
  }
  int operator[](std::size_t mode) const { return occupations[mode]; }

  auto operator<=>(const FockState&) const = default;
  bool operator==(const FockState&) const = default;
};

inline std::string to_string(const FockState& s);

struct FockStateHash {
  std::size_t operator()(const FockState& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int n : s.occupations) {
      h ^= static_cast<std::size_t>(n) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// binomial(n, r) with saturation at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= r; ++i) {
    const std::uint64_t num = n - r + i;
    // result * num / i is exact at every step; guard the multiplication.
    if (result > UINT64_MAX / num) return UINT64_MAX;
    result = result * num / i;
  }
  return result;
}

/// Number of Fock states with m modes and k photons.
inline std::uint64_t subspace_dimension(int m, int k) {
  return binomial(static_cast<std::uint64_t>(m + k - 1), static_cast<std::uint64_t>(k));
}

/// Ordered enumeration of every FockState with m modes and k photons.
///
/// States are sorted lexicographically descending on the occupation vector,
/// so (k,0,...,0) comes first and (0,...,0,k) last.
class SubspaceBasis {
 public:
  SubspaceBasis(int modes, int photons, std::size_t cap = kDefaultStateCap)
      : modes_(modes), photons_(photons) {
    if (modes < 1) throw DimensionError("basis needs at least one mode");
    if (photons < 0) throw DimensionError("photon number must be non-negative");
    const auto dim = subspace_dimension(modes, photons);
    if (dim > cap) {
      throw CapacityError("basis (m=" + std::to_string(modes) + ", k=" +
                          std::to_string(photons) + ") has " + std::to_string(dim) +
                          " states, above the cap of " + std::to_string(cap));
    }
    states_.reserve(static_cast<std::size_t>(dim));
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    fill(occ, 0, photons);
    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i], i);
  }

  int modes() const { return modes_; }
  int photons() const { return photons_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<FockState>& states() const { return states_; }
  const FockState& operator[](std::size_t i) const { return states_[i]; }

  bool contains(const FockState& s) const { return index_.count(s) != 0; }

  /// Position of a state; throws DimensionError for a foreign state.
  std::size_t index(const FockState& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) {
      throw DimensionError("state " + to_string(s) + " is not in the (m=" +
                           std::to_string(modes_) + ", k=" + std::to_string(photons_) +
                           ") basis");
    }
    return it->second;
  }

  bool operator==(const SubspaceBasis& o) const {
    return modes_ == o.modes_ && photons_ == o.photons_;
  }

 private:
  void fill(std::vector<int>& occ, std::size_t mode, int remaining) {
    if (mode + 1 == occ.size()) {
      occ[mode] = remaining;
      states_.push_back(FockState{occ});
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      occ[mode] = n;
      fill(occ, mode + 1, remaining - n);
    }
    occ[mode] = 0;
  }

  int modes_;
  int photons_;
  std::vector<FockState> states_;
  std::unordered_map<FockState, std::size_t, FockStateHash> index_;
};

using BasisPtr = std::shared_ptr<const SubspaceBasis>;

inline BasisPtr enumerate_basis(int modes, int photons, std::size_t cap = kDefaultStateCap) {
  return std::make_shared<const SubspaceBasis>(modes, photons, cap);
}

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a && b && (a == b || *a == *b);
}

/// Normalized amplitude vector over a basis.
struct PureState {
  BasisPtr basis;
  CVector amplitudes;

  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes.size()); }
  double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Density operator over a basis.
struct MixedState {
  BasisPtr basis;
  CMatrix rho;

  std::size_t dimension() const { return static_cast<std::size_t>(rho.rows()); }
  cplx trace() const { return rho.trace(); }
};

/// Checks the PureState invariant (unit norm within tol).
inline bool is_normalized(const PureState& psi, double tol = 1e-10) {
  return std::abs(psi.norm_squared() - 1.0) <= tol;
}

/// Checks the MixedState invariants: Hermitian, unit trace, PSD.
inline bool is_valid_density(const MixedState& s, double tol = 1e-10, double eig_tol = 1e-9) {
  if (s.rho.rows() != s.rho.cols()) return false;
  if ((s.rho - s.rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(s.rho.trace() - cplx(1.0, 0.0)) > tol) return false;
  const CMatrix herm = 0.5 * (s.rho + s.rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_tol;
}

/// Dense row-major real tensor.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape)
      : shape_(std::move(shape)), data_(count(shape_), 0.0) {}
  Tensor(std::vector<std::size_t> shape, std::vector<double> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (data_.size() != count(shape_)) throw DimensionError("tensor data does not match shape");
  }

  /// Builds a 2-D tensor from an Eigen matrix.
  static Tensor from_matrix(const RMatrix& m) {
    Tensor t({static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols())});
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) t.at({std::size_t(i), std::size_t(j)}) = m(i, j);
    return t;
  }

  RMatrix to_matrix() const {
    if (rank() != 2) throw DimensionError("tensor is not 2-D");
    RMatrix m(shape_[0], shape_[1]);
    for (std::size_t i = 0; i < shape_[0]; ++i)
      for (std::size_t j = 0; j < shape_[1]; ++j) m(i, j) = data_[i * shape_[1] + j];
    return m;
  }

  const std::vector<std::size_t>& shape() const { return shape_; }
  std::size_t rank() const { return shape_.size(); }
  std::size_t size() const { return data_.size(); }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  double& at(std::initializer_list<std::size_t> idx) { return data_[offset(idx)]; }
  double at(std::initializer_list<std::size_t> idx) const { return data_[offset(idx)]; }

  double norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  bool operator==(const Tensor&) const = default;

 private:
  static std::size_t count(const std::vector<std::size_t>& shape) {
    return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
  }
  std::size_t offset(std::initializer_list<std::size_t> idx) const {
    if (idx.size() != shape_.size()) throw DimensionError("tensor index rank mismatch");
    std::size_t off = 0;
    std::size_t axis = 0;
    for (std::size_t i : idx) {
      if (i >= shape_[axis]) throw DimensionError("tensor index out of range");
      off = off * shape_[axis] + i;
      ++axis;
    }
    return off;
  }

  std::vector<std::size_t> shape_;
  std::vector<double> data_;
};

/// Fock state with exactly one photon per register at the given positions.
inline FockState register_state(std::span<const int> registers, std::span<const std::size_t> positions) {
  int m = std::accumulate(registers.begin(), registers.end(), 0);
  FockState s{std::vector<int>(static_cast<std::size_t>(m), 0)};
  int offset = 0;
  for (std::size_t r = 0; r < registers.size(); ++r) {
    s.occupations[static_cast<std::size_t>(offset) + positions[r]] = 1;
    offset += registers[r];
  }
  return s;
}

/// True when every register holds exactly one photon.
inline bool one_photon_per_register(const FockState& s, std::span<const int> registers) {
  std::size_t mode = 0;
  for (int d : registers) {
    int count = 0;
    for (int i = 0; i < d; ++i) count += s.occupations[mode++];
    if (count != 1) return false;
  }
  return mode == s.occupations.size();
}

/// Amplitude-encodes a real tensor onto one-photon-per-register Fock states.
///
/// The register sizes must equal the tensor shape and sum to the basis mode
/// count; the basis must carry one photon per register.
inline PureState tensor_encode(const Tensor& x, const BasisPtr& basis, std::span<const int> registers) {
  if (registers.size() != x.rank()) {
    throw DimensionError("tensor rank " + std::to_string(x.rank()) + " does not match " +
                         std::to_string(registers.size()) + " registers");
  }
  int m = 0;
  for (std::size_t r = 0; r < registers.size(); ++r) {
    if (registers[r] < 1 || static_cast<std::size_t>(registers[r]) != x.shape()[r]) {
      throw DimensionError("register " + std::to_string(r) + " size does not match tensor axis");
    }
    m += registers[r];
  }
  if (m != basis->modes() || static_cast<int>(registers.size()) != basis->photons()) {
    throw DimensionError("registers do not partition the basis modes with one photon each");
  }
  const double nrm = x.norm();
  if (!(nrm > 0.0)) throw NormalizationError("cannot encode a zero tensor");

  PureState psi{basis, CVector::Zero(static_cast<Eigen::Index>(basis->size()))};
  std::vector<std::size_t> pos(registers.size(), 0);
  const auto values = x.data();
  for (std::size_t flat = 0; flat < x.size(); ++flat) {
    std::size_t rem = flat;
    for (std::size_t r = registers.size(); r-- > 0;) {
      pos[r] = rem % x.shape()[r];
      rem /= x.shape()[r];
    }
    const auto idx = basis->index(register_state(registers, pos));
    psi.amplitudes[static_cast<Eigen::Index>(idx)] = values[flat] / nrm;
  }
  return psi;
}

inline MixedState pure_to_mixed(const PureState& psi) {
  return MixedState{psi.basis, psi.amplitudes * psi.amplitudes.adjoint()};
}

/// Basis-state projector |e_i><e_i| as a PureState.
inline PureState basis_state(const BasisPtr& basis, std::size_t i) {
  PureState psi{basis, CVector::Zero(static_cast<Eigen::Index>(basis->size()))};
  psi.amplitudes[static_cast<Eigen::Index>(i)] = 1.0;
  return psi;
}

inline std::string to_string(const FockState& s) {
  std::string out = "|";
  for (std::size_t i = 0; i < s.occupations.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s.occupations[i]);
  }
  return out + ">";
}

}  // namespace pqcnn
