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

// The four network stages as composable transformations: data loading,
// convolution, state-injection pooling, dense layer plus readout.

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/SVD>

#include "pqcnn/fock.hpp"
#include "pqcnn/optics.hpp"

namespace pqcnn {

/// Register sizes d_1..d_k; each register carries one photon.
struct RegisterLayout {
  std::vector<int> sizes;

  RegisterLayout() = default;
  explicit RegisterLayout(std::vector<int> s) : sizes(std::move(s)) {
    if (sizes.empty()) throw ShapeError("layout needs at least one register");
    for (int d : sizes)
      if (d < 2) throw ShapeError("register sizes must be at least 2");
  }

  int modes() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }
  int photons() const { return static_cast<int>(sizes.size()); }
  int offset(std::size_t r) const {
    return std::accumulate(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(r), 0);
  }
  bool operator==(const RegisterLayout&) const = default;
};

// ---------------------------------------------------------------------------
// Data loading

/// Angles of a d-1 beam-splitter cascade that loads v/||v|| onto one photon.
///
/// Gate j couples modes j and j+1 and the photon enters mode 0. With
/// bs_matrix(theta) the cascade produces amplitudes
/// (c_0, -s_0 c_1, s_0 s_1 c_2, ...), so each angle is chosen to give the
/// remaining tail a non-negative weight and the last one fixes both signs.
inline std::vector<double> qdl_loader_angles(std::span<const double> v) {
  if (v.size() < 2) throw DimensionError("loader needs at least two modes");
  double total = 0.0;
  for (double x : v) total += x * x;
  if (!(total > 0.0)) throw NormalizationError("cannot load a zero vector");

  const std::size_t d = v.size();
  std::vector<double> tail(d + 1, 0.0);  // tail[j] = ||v[j:]||
  for (std::size_t j = d; j-- > 0;) tail[j] = std::hypot(tail[j + 1], v[j]);

  std::vector<double> angles(d - 1, 0.0);
  for (std::size_t j = 0; j + 1 < d; ++j) {
    const double rest = (j + 2 == d) ? v[d - 1] : tail[j + 1];
    angles[j] = std::atan2(-rest, v[j]);
  }
  return angles;
}

/// Cascade circuit on d modes with literal angles.
inline Circuit qdl_loader_circuit(std::span<const double> angles) {
  Circuit c(static_cast<int>(angles.size()) + 1);
  for (std::size_t j = 0; j < angles.size(); ++j)
    c.add_fixed(static_cast<int>(j), static_cast<int>(j) + 1, angles[j]);
  return c;
}

/// Single-photon amplitudes produced by a loader cascade from mode 0.
inline RVector simulate_loader(std::span<const double> angles) {
  const ModeUnitary u = compose(qdl_loader_circuit(angles), {});
  return u.matrix.col(0).real();
}

struct RankOneFactors {
  RVector rows;
  RVector cols;
  double residual = 0.0;  ///< sigma_2 / sigma_1
};

/// Leading singular pair of an image, signed so that its largest-magnitude
/// entries are positive.
inline RankOneFactors rank_one_factors(const RMatrix& image) {
  Eigen::JacobiSVD<RMatrix> svd(image, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (!(s(0) > 0.0)) throw NormalizationError("cannot load an all-zero image");
  RVector u = svd.matrixU().col(0) * std::sqrt(s(0));
  RVector v = svd.matrixV().col(0) * std::sqrt(s(0));
  Eigen::Index iu = 0;
  u.cwiseAbs().maxCoeff(&iu);
  if (u(iu) < 0) {
    u = -u;
    v = -v;
  }
  const double residual = s.size() > 1 ? s(1) / s(0) : 0.0;
  return {u, v, residual};
}

inline constexpr double kRankOneTolerance = 1e-9;

/// Loads one photon per register through cascades with the given angles.
inline PureState qdl_encode_angles(const std::vector<std::vector<double>>& angles, const RegisterLayout& layout) {
  if (angles.size() != layout.sizes.size()) throw DimensionError("one angle vector per register expected");
  auto basis = enumerate_basis(layout.modes(), layout.photons());
  Circuit loader(layout.modes());
  FockState input{std::vector<int>(static_cast<std::size_t>(layout.modes()), 0)};
  for (std::size_t r = 0; r < angles.size(); ++r) {
    if (static_cast<int>(angles[r].size()) + 1 != layout.sizes[r]) throw DimensionError("loader angles do not match register size");
    loader.append(qdl_loader_circuit(angles[r]).shifted(layout.offset(r), layout.modes()));
    input.occupations[static_cast<std::size_t>(layout.offset(r))] = 1;
  }
  CMatrix x = CMatrix::Zero(static_cast<Eigen::Index>(basis->size()), 1);
  x(static_cast<Eigen::Index>(basis->index(input)), 0) = 1.0;
  LiftedCircuit(loader, {}, basis).apply(x);
  return PureState{basis, x.col(0)};
}

/// Loader angles for both registers of a 2-D image.
///
/// The separable loader reaches only rank-1 images. Others raise RankError
/// unless `nearest_rank1` is set, in which case the leading singular pair is
/// loaded instead.
inline std::vector<std::vector<double>> qdl_image_angles(const Tensor& image, const RegisterLayout& layout,
                                                         bool nearest_rank1 = false) {
  if (image.rank() != 2 || layout.sizes.size() != 2) throw DimensionError("loader expects a 2-D image and two registers");
  if (static_cast<int>(image.shape()[0]) != layout.sizes[0] || static_cast<int>(image.shape()[1]) != layout.sizes[1]) {
    throw DimensionError("image shape does not match register sizes");
  }
  const RankOneFactors f = rank_one_factors(image.to_matrix());
  if (f.residual > kRankOneTolerance && !nearest_rank1) {
    throw RankError("image has rank > 1 (sigma2/sigma1 = " + std::to_string(f.residual) +
                    "); use nearest-rank1 loading");
  }
  std::vector<std::vector<double>> angles;
  for (const RVector* vec : {&f.rows, &f.cols}) {
    angles.push_back(qdl_loader_angles(std::span<const double>(vec->data(), static_cast<std::size_t>(vec->size()))));
  }
  return angles;
}

/// Loads a 2-D image through one cascade per register.
inline PureState qdl_encode(const Tensor& image, const RegisterLayout& layout, bool nearest_rank1 = false) {
  return qdl_encode_angles(qdl_image_angles(image, layout, nearest_rank1), layout);
}

// ---------------------------------------------------------------------------
// Convolution

/// K(K-1)/2 angles per register.
inline std::size_t conv_params_per_register(int kernel) {
  return static_cast<std::size_t>(kernel) * static_cast<std::size_t>(kernel - 1) / 2;
}

/// The same K-mode universal mesh on every consecutive K-mode window of each
/// register, tied within a register and independent across registers.
inline Circuit conv_circuit(const RegisterLayout& layout, int kernel) {
  if (kernel < 2) throw ShapeError("filter size must be at least 2");
  for (int d : layout.sizes) {
    if (d % kernel != 0) {
      throw ShapeError("filter size " + std::to_string(kernel) + " does not divide register size " + std::to_string(d));
    }
  }
  const Circuit window = mesh_universal(kernel);
  const std::size_t per_register = conv_params_per_register(kernel);
  Circuit c(layout.modes());
  for (std::size_t r = 0; r < layout.sizes.size(); ++r) {
    for (int w = 0; w < layout.sizes[r]; w += kernel) {
      c.append(window.shifted(layout.offset(r) + w, layout.modes(), r * per_register));
    }
  }
  return c;
}

inline PureState conv_layer(const PureState& state, int kernel, std::span<const double> theta, const RegisterLayout& layout) {
  const Circuit c = conv_circuit(layout, kernel);
  if (theta.size() != c.num_slots()) {
    throw ParameterError("convolution needs " + std::to_string(c.num_slots()) + " angles, got " + std::to_string(theta.size()));
  }
  if (state.basis->modes() != layout.modes()) throw DimensionError("state does not match layout");
  CMatrix x = state.amplitudes;
  LiftedCircuit(c, theta, state.basis).apply(x);
  return PureState{state.basis, x.col(0)};
}

// ---------------------------------------------------------------------------
// Pooling

/// Measured modes and their injection targets, per register (local indices).
struct RegisterPooling {
  std::vector<int> measured;
  std::vector<int> targets;
};

class PoolingSpec {
 public:
  PoolingSpec(RegisterLayout layout, std::vector<RegisterPooling> registers)
      : layout_(std::move(layout)), registers_(std::move(registers)) {
    validate();
  }

  /// Halving pooling: measure modes 0, 2, 4, ... of each listed register and
  /// inject into the following mode. Default: every register.
  static PoolingSpec halving(const RegisterLayout& layout, std::vector<bool> pooled = {}) {
    if (pooled.empty()) pooled.assign(layout.sizes.size(), true);
    if (pooled.size() != layout.sizes.size()) throw ShapeError("pooled flags do not match layout");
    std::vector<RegisterPooling> regs(layout.sizes.size());
    for (std::size_t r = 0; r < regs.size(); ++r) {
      if (!pooled[r]) continue;
      for (int j = 0; j < layout.sizes[r]; j += 2) {
        regs[r].measured.push_back(j);
        regs[r].targets.push_back(j + 1);
      }
    }
    return PoolingSpec(layout, std::move(regs));
  }

  const RegisterLayout& layout() const { return layout_; }
  const std::vector<RegisterPooling>& registers() const { return registers_; }

  /// Register sizes after pooling.
  RegisterLayout output_layout() const {
    std::vector<int> sizes;
    for (std::size_t r = 0; r < registers_.size(); ++r)
      sizes.push_back(layout_.sizes[r] - static_cast<int>(registers_[r].measured.size()));
    RegisterLayout out;
    out.sizes = std::move(sizes);
    return out;
  }

  /// Global indices of measured modes, in register order.
  std::vector<int> measured_modes() const {
    std::vector<int> out;
    for (std::size_t r = 0; r < registers_.size(); ++r)
      for (int j : registers_[r].measured) out.push_back(layout_.offset(r) + j);
    return out;
  }

  /// Global injection target paired with each entry of measured_modes().
  std::vector<int> target_modes() const {
    std::vector<int> out;
    for (std::size_t r = 0; r < registers_.size(); ++r)
      for (int j : registers_[r].targets) out.push_back(layout_.offset(r) + j);
    return out;
  }

  /// Output position of every input mode, or -1 for measured modes.
  std::vector<int> surviving_index() const {
    std::vector<int> out(static_cast<std::size_t>(layout_.modes()), -1);
    int next = 0;
    for (std::size_t r = 0; r < registers_.size(); ++r) {
      const auto& meas = registers_[r].measured;
      for (int j = 0; j < layout_.sizes[r]; ++j) {
        if (std::find(meas.begin(), meas.end(), j) != meas.end()) continue;
        out[static_cast<std::size_t>(layout_.offset(r) + j)] = next++;
      }
    }
    return out;
  }

 private:
  void validate() const {
    if (registers_.size() != layout_.sizes.size()) throw ShapeError("pooling spec does not match register count");
    for (std::size_t r = 0; r < registers_.size(); ++r) {
      const auto& reg = registers_[r];
      const int d = layout_.sizes[r];
      if (reg.measured.size() != reg.targets.size()) throw ShapeError("each measured mode needs one target");
      if (reg.measured.empty()) continue;
      if (d % 2 != 0 || static_cast<int>(reg.measured.size()) * 2 != d) {
        throw ShapeError("pooled register " + std::to_string(r) + " must measure exactly half of its modes");
      }
      for (std::size_t i = 0; i < reg.measured.size(); ++i) {
        const int m = reg.measured[i];
        const int t = reg.targets[i];
        if (m < 0 || m >= d || t != m + 1 || t >= d) {
          throw ShapeError("target of measured mode " + std::to_string(m) + " must be the following mode");
        }
        if (std::find(reg.measured.begin(), reg.measured.end(), t) != reg.measured.end()) {
          throw ShapeError("measured and target modes overlap");
        }
      }
    }
  }

  RegisterLayout layout_;
  std::vector<RegisterPooling> registers_;
};

/// Precomputed Kraus structure of the pooling channel on a fixed basis.
///
/// Every outcome (photon counts on the measured modes) maps each compatible
/// input basis state to one output basis state: measured photons are removed
/// and the same number are injected into the paired targets. Each outcome's
/// Kraus operator is therefore a partial permutation.
class PoolingMap {
 public:
  struct Outcome {
    std::vector<int> counts;  ///< photons seen on each measured mode
    std::vector<std::pair<Eigen::Index, Eigen::Index>> pairs;  ///< (input, output) indices
  };

  PoolingMap(const PoolingSpec& spec, const BasisPtr& input) : spec_(spec), input_(input) {
    if (input->modes() != spec.layout().modes()) throw DimensionError("pooling spec and state use different mode counts");
    const auto measured = spec.measured_modes();
    const auto targets = spec.target_modes();
    const auto survive = spec.surviving_index();
    const int out_modes = spec.output_layout().modes();
    output_ = enumerate_basis(out_modes, input->photons());

    std::map<std::vector<int>, std::size_t> lookup;
    for (std::size_t i = 0; i < input->size(); ++i) {
      const FockState& s = (*input)[i];
      std::vector<int> counts(measured.size());
      FockState out{std::vector<int>(static_cast<std::size_t>(out_modes), 0)};
      for (int mode = 0; mode < s.modes(); ++mode) {
        const int pos = survive[static_cast<std::size_t>(mode)];
        if (pos >= 0) out.occupations[static_cast<std::size_t>(pos)] += s.occupations[static_cast<std::size_t>(mode)];
      }
      for (std::size_t j = 0; j < measured.size(); ++j) {
        counts[j] = s.occupations[static_cast<std::size_t>(measured[j])];
        out.occupations[static_cast<std::size_t>(survive[static_cast<std::size_t>(targets[j])])] += counts[j];
      }
      auto [it, inserted] = lookup.emplace(counts, outcomes_.size());
      if (inserted) outcomes_.push_back(Outcome{counts, {}});
      outcomes_[it->second].pairs.emplace_back(static_cast<Eigen::Index>(i),
                                               static_cast<Eigen::Index>(output_->index(out)));
    }
  }

  const PoolingSpec& spec() const { return spec_; }
  const BasisPtr& input_basis() const { return input_; }
  const BasisPtr& output_basis() const { return output_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }

 private:
  PoolingSpec spec_;
  BasisPtr input_;
  BasisPtr output_;
  std::vector<Outcome> outcomes_;
};

/// One measurement branch of the pooling layer.
struct PoolingBranch {
  std::vector<int> counts;                  ///< photons on each measured mode
  std::vector<std::optional<int>> detected;  ///< per register: local measured mode that clicked
  double probability = 0.0;
  PureState conditional_state;
};

namespace detail {

inline std::vector<std::optional<int>> per_register_detection(const PoolingSpec& spec, const std::vector<int>& counts) {
  std::vector<std::optional<int>> out(spec.registers().size());
  std::size_t j = 0;
  for (std::size_t r = 0; r < spec.registers().size(); ++r) {
    for (int mode : spec.registers()[r].measured) {
      if (counts[j++] > 0 && !out[r]) out[r] = mode;
    }
  }
  return out;
}

}  // namespace detail

/// All outcomes with non-zero probability, each with its renormalized state.
inline std::vector<PoolingBranch> pooling_branches(const PureState& state, const PoolingMap& map) {
  if (!same_basis(state.basis, map.input_basis())) throw DimensionError("state basis does not match pooling map");
  std::vector<PoolingBranch> out;
  const auto dim = static_cast<Eigen::Index>(map.output_basis()->size());
  for (const auto& o : map.outcomes()) {
    CVector phi = CVector::Zero(dim);
    for (auto [in, dst] : o.pairs) phi[dst] += state.amplitudes[in];
    const double p = phi.squaredNorm();
    if (!(p > 0.0)) continue;
    out.push_back(PoolingBranch{o.counts, detail::per_register_detection(map.spec(), o.counts), p,
                                PureState{map.output_basis(), phi / std::sqrt(p)}});
  }
  return out;
}

inline std::vector<PoolingBranch> pooling_branches(const PureState& state, const PoolingSpec& spec) {
  return pooling_branches(state, PoolingMap(spec, state.basis));
}

inline MixedState pooling_channel(const PureState& state, const PoolingMap& map) {
  if (!same_basis(state.basis, map.input_basis())) throw DimensionError("state basis does not match pooling map");
  const auto dim = static_cast<Eigen::Index>(map.output_basis()->size());
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (const auto& o : map.outcomes()) {
    CVector phi = CVector::Zero(dim);
    for (auto [in, dst] : o.pairs) phi[dst] += state.amplitudes[in];
    rho.noalias() += phi * phi.adjoint();
  }
  return MixedState{map.output_basis(), std::move(rho)};
}

inline MixedState pooling_channel(const MixedState& state, const PoolingMap& map) {
  if (!same_basis(state.basis, map.input_basis())) throw DimensionError("state basis does not match pooling map");
  const auto dim = static_cast<Eigen::Index>(map.output_basis()->size());
  CMatrix rho = CMatrix::Zero(dim, dim);
  for (const auto& o : map.outcomes()) {
    for (auto [a_in, a_out] : o.pairs)
      for (auto [b_in, b_out] : o.pairs) rho(a_out, b_out) += state.rho(a_in, b_in);
  }
  return MixedState{map.output_basis(), std::move(rho)};
}

inline MixedState pooling_channel(const PureState& state, const PoolingSpec& spec) {
  return pooling_channel(state, PoolingMap(spec, state.basis));
}

inline MixedState pooling_channel(const MixedState& state, const PoolingSpec& spec) {
  return pooling_channel(state, PoolingMap(spec, state.basis));
}

// ---------------------------------------------------------------------------
// Dense layer

/// Index of each basis state after appending `extra` vacuum modes.
inline std::vector<Eigen::Index> padding_map(const SubspaceBasis& from, const SubspaceBasis& to) {
  if (to.photons() != from.photons() || to.modes() < from.modes()) throw DimensionError("cannot pad onto a smaller basis");
  std::vector<Eigen::Index> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    FockState s = from[i];
    s.occupations.resize(static_cast<std::size_t>(to.modes()), 0);
    out[i] = static_cast<Eigen::Index>(to.index(s));
  }
  return out;
}

inline MixedState pad_vacuum(const MixedState& rho, int extra) {
  if (extra < 0) throw DimensionError("extra mode count must be non-negative");
  auto to = enumerate_basis(rho.basis->modes() + extra, rho.basis->photons());
  const auto map = padding_map(*rho.basis, *to);
  const auto dim = static_cast<Eigen::Index>(to->size());
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t a = 0; a < map.size(); ++a)
    for (std::size_t b = 0; b < map.size(); ++b)
      out(map[a], map[b]) = rho.rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return MixedState{to, std::move(out)};
}

/// rho -> W rho W^dagger with W the k-photon lift of the dense circuit,
/// after padding `alpha` vacuum modes.
inline MixedState dense_layer(const MixedState& rho, const Circuit& circuit, std::span<const double> params, int alpha) {
  if (circuit.modes() != rho.basis->modes() + alpha) {
    throw DimensionError("dense circuit spans " + std::to_string(circuit.modes()) + " modes, expected " +
                         std::to_string(rho.basis->modes() + alpha));
  }
  MixedState padded = pad_vacuum(rho, alpha);
  const SubspaceUnitary w = lift(compose(circuit, params), padded.basis);
  return apply(w, padded);
}

inline RVector measure_distribution(const MixedState& rho) { return rho.rho.diagonal().real(); }

inline RVector measure_distribution(const PureState& psi) { return psi.amplitudes.cwiseAbs2(); }

// ---------------------------------------------------------------------------
// Readout

/// Fock states of the basis with at most one photon per mode, in basis order.
inline std::vector<FockState> collision_free_configurations(int modes, int photons) {
  std::vector<FockState> out;
  const SubspaceBasis basis(modes, photons);
  for (const auto& s : basis.states()) {
    if (std::all_of(s.occupations.begin(), s.occupations.end(), [](int n) { return n <= 1; })) out.push_back(s);
  }
  return out;
}

enum class ReadoutStrategy { Cluster, ModeGroup };

inline std::string to_string(ReadoutStrategy s) { return s == ReadoutStrategy::Cluster ? "cluster" : "mode_group"; }

/// Assignment of collision-free detection events to class labels 0/1.
struct ReadoutBinning {
  ReadoutStrategy strategy = ReadoutStrategy::Cluster;
  int modes = 0;
  int photons = 0;
  std::vector<FockState> events;
  std::vector<int> labels;      ///< one per event
  std::vector<int> group;       ///< mode-group strategy: the grouped modes
  int group_label = 0;          ///< mode-group strategy: label of events touching the group

  /// Events whose index is listed go to label 0, the rest to label 1.
  static ReadoutBinning cluster(int modes, int photons, std::span<const std::size_t> label0) {
    ReadoutBinning b;
    b.strategy = ReadoutStrategy::Cluster;
    b.modes = modes;
    b.photons = photons;
    b.events = collision_free_configurations(modes, photons);
    b.labels.assign(b.events.size(), 1);
    for (std::size_t i : label0) {
      if (i >= b.events.size()) throw ShapeError("cluster event index out of range");
      b.labels[i] = 0;
    }
    return b;
  }

  /// Events with at least one photon in `group` get `label`, others the other label.
  static ReadoutBinning mode_group(int modes, int photons, std::vector<int> group, int label = 0) {
    ReadoutBinning b;
    b.strategy = ReadoutStrategy::ModeGroup;
    b.modes = modes;
    b.photons = photons;
    b.group = std::move(group);
    b.group_label = label;
    for (int g : b.group)
      if (g < 0 || g >= modes) throw ShapeError("group mode out of range");
    b.events = collision_free_configurations(modes, photons);
    for (const auto& e : b.events) {
      const bool touches = std::any_of(b.group.begin(), b.group.end(),
                                       [&](int g) { return e.occupations[static_cast<std::size_t>(g)] > 0; });
      b.labels.push_back(touches ? label : 1 - label);
    }
    return b;
  }

  /// Binning used during gradient training: label 1 when any photon reaches
  /// the second half of the output modes, label 0 when all stay in the first half.
  static ReadoutBinning canonical(int modes, int photons) {
    std::vector<int> second_half;
    for (int g = modes / 2; g < modes; ++g) second_half.push_back(g);
    return mode_group(modes, photons, std::move(second_half), 1);
  }
};

/// Class probabilities from a distribution over the dense-layer basis.
///
/// Only the binning's events count; their mass is renormalized. Returns
/// (0.5, 0.5) when none of the events has any probability.
inline std::array<double, 2> readout(const RVector& dist, const SubspaceBasis& basis, const ReadoutBinning& binning) {
  if (basis.modes() != binning.modes || basis.photons() != binning.photons) {
    throw DimensionError("readout binning does not match the output basis");
  }
  if (static_cast<std::size_t>(dist.size()) != basis.size()) throw DimensionError("distribution length does not match basis");
  bool has0 = false;
  bool has1 = false;
  std::array<double, 2> mass{0.0, 0.0};
  for (std::size_t e = 0; e < binning.events.size(); ++e) {
    const int label = binning.labels[e];
    (label == 0 ? has0 : has1) = true;
    mass[static_cast<std::size_t>(label)] += dist[static_cast<Eigen::Index>(basis.index(binning.events[e]))];
  }
  if (!has0 || !has1) throw ShapeError("readout binning leaves a class without events");
  const double total = mass[0] + mass[1];
  if (!(total > 0.0)) return {0.5, 0.5};
  return {mass[0] / total, mass[1] / total};
}

}  // namespace pqcnn
