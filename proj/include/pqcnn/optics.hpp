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

// Beam-splitter circuits, their m-mode unitaries, and the lift of an m-mode
// unitary to the k-photon subspace through matrix permanents.

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pqcnn/fock.hpp"

namespace pqcnn {

/// W_BS(theta, phi) = [[cos, e^{i phi} sin], [-e^{-i phi} sin, cos]].
inline Eigen::Matrix2cd bs_matrix(double theta, double phi = 0.0) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const cplx e = std::polar(1.0, phi);
  Eigen::Matrix2cd m;
  m << c, e * s, -std::conj(e) * s, c;
  return m;
}

/// d/dtheta of bs_matrix; equals generator * bs_matrix with
/// generator = [[0, e^{i phi}], [-e^{-i phi}, 0]].
inline Eigen::Matrix2cd bs_generator(double phi = 0.0) {
  const cplx e = std::polar(1.0, phi);
  Eigen::Matrix2cd g;
  g << 0.0, e, -std::conj(e), 0.0;
  return g;
}

struct BeamSplitterGate {
  std::pair<int, int> modes;
  double theta = 0.0;
  double phi = 0.0;
};

/// Ordered beam-splitter placements over m modes.
///
/// A gate either carries a literal angle or reads it from a slot of a shared
/// parameter vector; several gates bound to the same slot are weight-tied.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int modes) : modes_(modes) {
    if (modes < 1) throw DimensionError("circuit needs at least one mode");
  }

  /// Appends a gate whose angle is read from `slot`.
  void add(int p, int q, std::size_t slot, double phi = 0.0) {
    check_modes(p, q);
    gates_.push_back({{p, q}, 0.0, phi});
    bindings_.push_back(slot);
    num_slots_ = std::max(num_slots_, slot + 1);
  }

  /// Appends a gate with a fixed literal angle.
  void add_fixed(int p, int q, double theta, double phi = 0.0) {
    check_modes(p, q);
    gates_.push_back({{p, q}, theta, phi});
    bindings_.push_back(std::nullopt);
  }

  int modes() const { return modes_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t num_slots() const { return num_slots_; }
  const std::vector<BeamSplitterGate>& gates() const { return gates_; }
  const std::vector<std::optional<std::size_t>>& bindings() const { return bindings_; }

  /// Every slot below num_slots() is read by at least one gate.
  bool slots_dense() const {
    std::vector<bool> seen(num_slots_, false);
    for (const auto& b : bindings_)
      if (b) seen[*b] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool v) { return v; });
  }

  /// Resolved angle of gate g under `params`.
  double angle(std::size_t g, std::span<const double> params) const {
    const auto& b = bindings_[g];
    if (!b) return gates_[g].theta;
    if (*b >= params.size()) {
      throw ParameterError("gate " + std::to_string(g) + " reads slot " + std::to_string(*b) +
                           " but only " + std::to_string(params.size()) + " parameters given");
    }
    return params[*b];
  }

  /// Copy with every gate moved by `offset` modes on a circuit of `modes` modes
  /// and every slot moved by `slot_offset`.
  Circuit shifted(int offset, int modes, std::size_t slot_offset = 0) const {
    Circuit out(modes);
    for (std::size_t g = 0; g < gates_.size(); ++g) {
      const auto& gate = gates_[g];
      if (bindings_[g]) {
        out.add(gate.modes.first + offset, gate.modes.second + offset, *bindings_[g] + slot_offset, gate.phi);
      } else {
        out.add_fixed(gate.modes.first + offset, gate.modes.second + offset, gate.theta, gate.phi);
      }
    }
    return out;
  }

  /// Appends all gates of `other` (same mode count).
  void append(const Circuit& other) {
    if (other.modes_ != modes_) throw DimensionError("cannot append circuits of different widths");
    for (std::size_t g = 0; g < other.gates_.size(); ++g) {
      gates_.push_back(other.gates_[g]);
      bindings_.push_back(other.bindings_[g]);
      if (other.bindings_[g]) num_slots_ = std::max(num_slots_, *other.bindings_[g] + 1);
    }
  }

  /// Overrides the phase of gate g.
  void set_phase(std::size_t g, double phi) { gates_.at(g).phi = phi; }

 private:
  void check_modes(int p, int q) const {
    if (p == q || p < 0 || q < 0 || p >= modes_ || q >= modes_) {
      throw DimensionError("beam splitter modes (" + std::to_string(p) + "," + std::to_string(q) +
                           ") invalid on " + std::to_string(modes_) + " modes");
    }
  }

  int modes_ = 0;
  std::vector<BeamSplitterGate> gates_;
  std::vector<std::optional<std::size_t>> bindings_;
  std::size_t num_slots_ = 0;
};

/// Single-particle m x m unitary.
struct ModeUnitary {
  int modes = 0;
  CMatrix matrix;
};

/// Unitary acting on the k-photon subspace of some basis.
struct SubspaceUnitary {
  BasisPtr basis;
  CMatrix matrix;
};

inline bool is_unitary(const CMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const CMatrix err = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
  return err.cwiseAbs().maxCoeff() <= tol;
}

/// Product of embedded 2x2 blocks, first gate applied first.
inline ModeUnitary compose(const Circuit& circuit, std::span<const double> params) {
  if (params.size() < circuit.num_slots()) {
    throw ParameterError("circuit needs " + std::to_string(circuit.num_slots()) + " parameters, got " +
                         std::to_string(params.size()));
  }
  const int m = circuit.modes();
  CMatrix u = CMatrix::Identity(m, m);
  for (std::size_t g = 0; g < circuit.size(); ++g) {
    const auto& gate = circuit.gates()[g];
    const Eigen::Matrix2cd b = bs_matrix(circuit.angle(g, params), gate.phi);
    const auto [p, q] = gate.modes;
    const Eigen::RowVectorXcd rp = u.row(p);
    const Eigen::RowVectorXcd rq = u.row(q);
    u.row(p) = b(0, 0) * rp + b(0, 1) * rq;
    u.row(q) = b(1, 0) * rp + b(1, 1) * rq;
  }
  return ModeUnitary{m, std::move(u)};
}

/// Permanent via Ryser's formula with Gray-code subset iteration, O(2^n n).
inline cplx permanent(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw DimensionError("permanent needs a square matrix, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  const int n = static_cast<int>(a.rows());
  if (n > 20) throw DimensionError("permanent limited to n <= 20");
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  if (n == 2) return a(0, 0) * a(1, 1) + a(0, 1) * a(1, 0);

  // row_sums[i] = sum over columns j in the current subset of a(i, j). Extended precision keeps the
  // incremental Gray-code updates from drifting.
  using wide = std::complex<long double>;
  std::vector<wide> row_sums(static_cast<std::size_t>(n), 0.0L);
  wide total = 0.0L;
  std::uint64_t gray = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t flipped = next ^ gray;
    const int col = std::countr_zero(flipped);
    const long double sign = (next & flipped) ? 1.0L : -1.0L;
    for (int i = 0; i < n; ++i) row_sums[static_cast<std::size_t>(i)] += sign * wide(a(i, col));
    gray = next;
    wide prod = 1.0L;
    for (const auto& s : row_sums) prod *= s;
    const int popcount = std::popcount(gray);
    total += ((n - popcount) % 2 == 0) ? prod : -prod;
  }
  return cplx(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

namespace detail {

inline double factorial(int n) {
  static const std::array<double, 32> table = [] {
    std::array<double, 32> t{};
    t[0] = 1.0;
    for (std::size_t i = 1; i < t.size(); ++i) t[i] = t[i - 1] * static_cast<double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

/// Mode list with mode i repeated occupations[i] times.
inline std::vector<int> repeated_modes(const FockState& s) {
  std::vector<int> out;
  for (int i = 0; i < s.modes(); ++i)
    for (int c = 0; c < s.occupations[static_cast<std::size_t>(i)]; ++c) out.push_back(i);
  return out;
}

inline double occupation_norm(const FockState& s) {
  double f = 1.0;
  for (int n : s.occupations) f *= factorial(n);
  return f;
}

}  // namespace detail

/// Matrix of the k-photon subspace unitary induced by an m x m matrix.
///
/// Entry (S, T) is Per(U[S, T]) / sqrt(prod s_i! prod t_j!), where U[S, T]
/// repeats row i s_i times and column j t_j times.
inline CMatrix lift_matrix(const CMatrix& u, const SubspaceBasis& basis) {
  if (u.rows() != basis.modes() || u.cols() != basis.modes()) {
    throw DimensionError("mode matrix is " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                         " but basis has " + std::to_string(basis.modes()) + " modes");
  }
  const auto n = static_cast<Eigen::Index>(basis.size());
  const int k = basis.photons();
  CMatrix out(n, n);
  std::vector<std::vector<int>> reps(basis.size());
  std::vector<double> norms(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    reps[i] = detail::repeated_modes(basis[i]);
    norms[i] = detail::occupation_norm(basis[i]);
  }
  CMatrix sub(k, k);
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto& rows = reps[static_cast<std::size_t>(s)];
    for (Eigen::Index t = 0; t < n; ++t) {
      const auto& cols = reps[static_cast<std::size_t>(t)];
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = u(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
      out(s, t) = permanent(sub) / std::sqrt(norms[static_cast<std::size_t>(s)] * norms[static_cast<std::size_t>(t)]);
    }
  }
  return out;
}

inline SubspaceUnitary lift(const ModeUnitary& u, int photons, std::size_t cap = kDefaultStateCap) {
  auto basis = enumerate_basis(u.modes, photons, cap);
  CMatrix w = lift_matrix(u.matrix, *basis);
  return SubspaceUnitary{std::move(basis), std::move(w)};
}

inline SubspaceUnitary lift(const ModeUnitary& u, const BasisPtr& basis) {
  return SubspaceUnitary{basis, lift_matrix(u.matrix, *basis)};
}

/// Second-quantized image sum_ij A_ij a_i^dagger a_j of a mode matrix.
///
/// This is the derivative of the lift: d/dt lift(exp(tA)) at t=0.
inline CMatrix second_quantized(const CMatrix& a, const SubspaceBasis& basis) {
  const int m = basis.modes();
  if (a.rows() != m || a.cols() != m) throw DimensionError("generator size does not match basis modes");
  const auto n = static_cast<Eigen::Index>(basis.size());
  CMatrix out = CMatrix::Zero(n, n);
  for (std::size_t t = 0; t < basis.size(); ++t) {
    const FockState& in = basis[t];
    for (int j = 0; j < m; ++j) {
      const int tj = in.occupations[static_cast<std::size_t>(j)];
      if (tj == 0) continue;
      FockState moved = in;
      moved.occupations[static_cast<std::size_t>(j)] -= 1;
      for (int i = 0; i < m; ++i) {
        if (a(i, j) == cplx(0.0)) continue;
        FockState target = moved;
        const int ni = target.occupations[static_cast<std::size_t>(i)] + 1;
        target.occupations[static_cast<std::size_t>(i)] = ni;
        const auto s = basis.index(target);
        out(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) +=
            a(i, j) * std::sqrt(static_cast<double>(tj) * static_cast<double>(ni));
      }
    }
  }
  return out;
}

inline PureState apply(const SubspaceUnitary& u, const PureState& psi) {
  if (!same_basis(u.basis, psi.basis)) throw DimensionError("unitary and state live on different bases");
  return PureState{psi.basis, u.matrix * psi.amplitudes};
}

inline MixedState apply(const SubspaceUnitary& u, const MixedState& rho) {
  if (!same_basis(u.basis, rho.basis)) throw DimensionError("unitary and state live on different bases");
  return MixedState{rho.basis, u.matrix * rho.rho * u.matrix.adjoint()};
}

/// Gate layout of a rectangular nearest-neighbour mesh: layer l couples
/// (p, p+1) for p = l mod 2, l mod 2 + 2, ...; the first `count` gates are kept.
inline std::vector<std::pair<int, int>> rectangular_layout(int modes, std::size_t count) {
  std::vector<std::pair<int, int>> out;
  if (modes < 2) return out;
  for (int layer = 0; out.size() < count; ++layer) {
    for (int p = layer % 2; p + 1 < modes && out.size() < count; p += 2) out.emplace_back(p, p + 1);
  }
  return out;
}

/// Rectangular mesh of `count` independently parameterized beam splitters.
inline Circuit mesh_rectangular(int modes, std::size_t count) {
  if (modes < 2) throw DimensionError("mesh needs at least two modes");
  Circuit c(modes);
  std::size_t slot = 0;
  for (auto [p, q] : rectangular_layout(modes, count)) c.add(p, q, slot++);
  return c;
}

/// Universal rectangular mesh: m alternating layers, m(m-1)/2 gates.
inline Circuit mesh_universal(int modes) {
  if (modes < 2) throw DimensionError("mesh needs at least two modes");
  const auto m = static_cast<std::size_t>(modes);
  return mesh_rectangular(modes, m * (m - 1) / 2);
}

/// Number of nearest-neighbour layers the first `count` gates occupy.
inline int mesh_depth(int modes, std::size_t count) {
  std::size_t placed = 0;
  int depth = 0;
  while (placed < count) {
    const int start = depth % 2;
    const std::size_t in_layer = static_cast<std::size_t>((modes - start) / 2);
    placed += in_layer;
    ++depth;
  }
  return depth;
}

/// A beam splitter lifted to a k-photon basis, stored sparsely.
///
/// A two-mode gate only mixes basis states that differ in how n = n_p + n_q
/// photons split between its modes, so the basis falls apart into orbits of
/// n + 1 states each acted on by the same (n+1)x(n+1) block.
class LiftedGate {
 public:
  LiftedGate(const SubspaceBasis& basis, int p, int q, double theta, double phi) : p_(p), q_(q), phi_(phi) {
    const int k = basis.photons();
    const Eigen::Matrix2cd g = bs_generator(phi);
    for (int n = 0; n <= k; ++n) {
      pair_bases_.emplace_back(2, n);
      generators_.push_back(second_quantized(CMatrix(g), pair_bases_.back()));
    }
    set_angle(theta);
    std::map<FockState, std::size_t> orbit_of;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      FockState key = basis[i];
      const int np = key.occupations[static_cast<std::size_t>(p)];
      const int n = np + key.occupations[static_cast<std::size_t>(q)];
      if (n == 0) continue;
      key.occupations[static_cast<std::size_t>(p)] = 0;
      key.occupations[static_cast<std::size_t>(q)] = n;
      auto [it, inserted] = orbit_of.emplace(key, orbits_.size());
      if (inserted) orbits_.push_back(Orbit{n, std::vector<Eigen::Index>(static_cast<std::size_t>(n) + 1)});
      // Orbit position follows the 2-mode basis order: photons in p descending.
      orbits_[it->second].members[static_cast<std::size_t>(n - np)] = static_cast<Eigen::Index>(i);
    }
  }

  /// Recomputes the per-orbit blocks for a new angle; the orbit structure is kept.
  void set_angle(double theta) {
    theta_ = theta;
    const CMatrix b = bs_matrix(theta, phi_);
    blocks_.clear();
    for (const auto& pair : pair_bases_) blocks_.push_back(lift_matrix(b, pair));
  }

  std::pair<int, int> modes() const { return {p_, q_}; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// x <- L x, column-wise.
  void apply(CMatrix& x) const { transform(x, blocks_, false); }
  /// x <- L^dagger x, column-wise.
  void apply_adjoint(CMatrix& x) const { transform(x, blocks_, true); }
  /// Returns G x where G is the second-quantized generator (dL/dtheta = G L).
  CMatrix generator_times(const CMatrix& x) const {
    CMatrix y = CMatrix::Zero(x.rows(), x.cols());
    for (const auto& orbit : orbits_) {
      const auto& blk = generators_[static_cast<std::size_t>(orbit.photons)];
      const auto sz = static_cast<Eigen::Index>(orbit.members.size());
      for (Eigen::Index a = 0; a < sz; ++a)
        for (Eigen::Index b = 0; b < sz; ++b) {
          const cplx v = blk(a, b);
          if (v == cplx(0.0)) continue;
          y.row(orbit.members[static_cast<std::size_t>(a)]) += v * x.row(orbit.members[static_cast<std::size_t>(b)]);
        }
    }
    return y;
  }

 private:
  struct Orbit {
    int photons;
    std::vector<Eigen::Index> members;
  };

  void transform(CMatrix& x, const std::vector<CMatrix>& blocks, bool adjoint) const {
    CMatrix tmp;
    for (const auto& orbit : orbits_) {
      const auto sz = static_cast<Eigen::Index>(orbit.members.size());
      const CMatrix& blk = blocks[static_cast<std::size_t>(orbit.photons)];
      tmp.resize(sz, x.cols());
      for (Eigen::Index a = 0; a < sz; ++a) tmp.row(a) = x.row(orbit.members[static_cast<std::size_t>(a)]);
      for (Eigen::Index a = 0; a < sz; ++a) {
        Eigen::RowVectorXcd acc = Eigen::RowVectorXcd::Zero(x.cols());
        for (Eigen::Index b = 0; b < sz; ++b) {
          const cplx v = adjoint ? std::conj(blk(b, a)) : blk(a, b);
          acc += v * tmp.row(b);
        }
        x.row(orbit.members[static_cast<std::size_t>(a)]) = acc;
      }
    }
  }

  int p_;
  int q_;
  double theta_;
  double phi_;
  std::vector<SubspaceBasis> pair_bases_;
  std::vector<CMatrix> blocks_;
  std::vector<CMatrix> generators_;
  std::vector<Orbit> orbits_;
};

/// A circuit lifted gate by gate onto a basis, with an adjoint sweep for
/// reverse-mode gradients.
class LiftedCircuit {
 public:
  LiftedCircuit(const Circuit& circuit, std::span<const double> params, const BasisPtr& basis)
      : basis_(basis), bindings_(circuit.bindings()) {
    if (circuit.modes() != basis->modes()) throw DimensionError("circuit and basis mode counts differ");
    if (params.size() < circuit.num_slots()) throw ParameterError("not enough parameters for circuit");
    gates_.reserve(circuit.size());
    for (std::size_t g = 0; g < circuit.size(); ++g) {
      const auto& gate = circuit.gates()[g];
      gates_.emplace_back(*basis, gate.modes.first, gate.modes.second, circuit.angle(g, params), gate.phi);
    }
  }

  const BasisPtr& basis() const { return basis_; }
  std::size_t size() const { return gates_.size(); }

  /// Re-reads every bound gate angle from `params`.
  void set_params(std::span<const double> params) {
    for (std::size_t g = 0; g < gates_.size(); ++g) {
      if (!bindings_[g]) continue;
      if (*bindings_[g] >= params.size()) throw ParameterError("not enough parameters for circuit");
      gates_[g].set_angle(params[*bindings_[g]]);
    }
  }

  void apply(CMatrix& x) const {
    for (const auto& g : gates_) g.apply(x);
  }

  void apply_adjoint(CMatrix& x) const {
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) it->apply_adjoint(x);
  }

  /// Reverse sweep. On entry `psi` holds output columns and `lam` the
  /// cotangents so that dLoss = 2 Re <lam, d psi>. Accumulates dLoss/dslot
  /// into `grad` and leaves both matrices pulled back to the circuit input.
  void backprop(CMatrix& psi, CMatrix& lam, std::span<double> grad) const {
    for (std::size_t g = gates_.size(); g-- > 0;) {
      const auto& gate = gates_[g];
      if (bindings_[g]) {
        const CMatrix d = gate.generator_times(psi);
        grad[*bindings_[g]] += 2.0 * (lam.conjugate().cwiseProduct(d)).sum().real();
      }
      gate.apply_adjoint(psi);
      gate.apply_adjoint(lam);
    }
  }

 private:
  BasisPtr basis_;
  std::vector<std::optional<std::size_t>> bindings_;
  std::vector<LiftedGate> gates_;
};

}  // namespace pqcnn
