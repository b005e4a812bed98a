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

#pragma once

#include <array>
#include <cmath>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pqcnn/layers.hpp"

namespace pqcnn {

/// Layer stack of a PQCNN with its flat parameter vector.
///
/// params = [conv angles (K(K-1)/2 per register), dense angles].
struct PQCNNModel {
  RegisterLayout layout;
  int kernel = 2;
  Circuit conv;
  PoolingSpec pooling{RegisterLayout({2}), {RegisterPooling{}}};
  Circuit dense;
  int alpha = 0;
  ReadoutBinning readout;
  std::vector<double> params;

  std::size_t conv_param_count() const { return conv.num_slots(); }
  std::size_t dense_param_count() const { return dense.num_slots(); }
  std::size_t param_count() const { return conv_param_count() + dense_param_count(); }

  std::span<const double> conv_params() const { return std::span<const double>(params).first(conv_param_count()); }
  std::span<const double> dense_params() const { return std::span<const double>(params).subspan(conv_param_count()); }

  int dense_modes() const { return dense.modes(); }

  /// "conv 2 + dense 8 = 10"
  std::string accounting() const {
    return "conv " + std::to_string(conv_param_count()) + " + dense " + std::to_string(dense_param_count()) + " = " +
           std::to_string(param_count());
  }
};

/// Builds a model: K-window convolution on every register, halving pooling on
/// every register, and a dense rectangular mesh on the surviving modes plus
/// `alpha` vacuum modes. `dense_gates == 0` selects the universal mesh.
inline PQCNNModel make_model(const RegisterLayout& layout, int kernel, int alpha, std::size_t dense_gates = 0) {
  if (alpha < 0) throw ShapeError("alpha must be non-negative");
  PQCNNModel model;
  model.layout = layout;
  model.kernel = kernel;
  model.alpha = alpha;
  model.conv = conv_circuit(layout, kernel);
  model.pooling = PoolingSpec::halving(layout);
  const int dense_modes = model.pooling.output_layout().modes() + alpha;
  model.dense = dense_gates == 0 ? mesh_universal(dense_modes) : mesh_rectangular(dense_modes, dense_gates);
  model.readout = ReadoutBinning::canonical(dense_modes, layout.photons());
  model.params.assign(model.param_count(), 0.0);
  return model;
}

/// 4x4 images on an 8-mode circuit, 2+8 parameters, 6-mode dense layer.
inline PQCNNModel bas_model() { return make_model(RegisterLayout({4, 4}), 2, 2, 8); }

/// 8x8 images on a 16-mode circuit, 2+28 parameters, 8-mode universal dense layer.
inline PQCNNModel mnist_model() { return make_model(RegisterLayout({8, 8}), 2, 0, 0); }

/// Draws each angle uniformly in [low, high).
template <class Rng>
void initialize_params(PQCNNModel& model, Rng& rng, double low = 0.0, double high = M_PI / 2) {
  std::uniform_real_distribution<double> dist(low, high);
  for (auto& p : model.params) p = dist(rng);
}

/// Sets frozen random phases on every dense gate.
template <class Rng>
void randomize_dense_phases(PQCNNModel& model, Rng& rng) {
  std::uniform_real_distribution<double> dist(0.0, 2.0 * M_PI);
  for (std::size_t g = 0; g < model.dense.size(); ++g) model.dense.set_phase(g, dist(rng));
}

inline double mse_loss(const std::array<double, 2>& pred, int label) {
  double loss = 0.0;
  for (int c = 0; c < 2; ++c) {
    const double d = pred[static_cast<std::size_t>(c)] - (c == label ? 1.0 : 0.0);
    loss += d * d;
  }
  return loss;
}

inline int predicted_label(const std::array<double, 2>& probs) { return probs[1] > probs[0] ? 1 : 0; }

/// Layer outputs of one forward pass, for inspection.
struct StageOutputs {
  RVector qdl;      ///< distribution over the input basis after loading
  RVector conv;     ///< distribution after the convolution
  RVector pooling;  ///< diagonal of the pooled density operator
  RVector dense;    ///< distribution over the dense-layer basis
  std::array<double, 2> readout{};
};

/// Compiled pipeline for a model: lifted gates, pooling Kraus structure and
/// readout indices, reused across samples and parameter updates.
///
/// The pooled state is kept as its unnormalized pure branches phi_o, so the
/// dense layer acts on each branch and p(n) = sum_o |(W phi_o)_n|^2.
class Pipeline {
 public:
  explicit Pipeline(const PQCNNModel& model)
      : model_(model),
        input_(enumerate_basis(model.layout.modes(), model.layout.photons())),
        pooling_(model.pooling, input_),
        dense_basis_(enumerate_basis(model.dense.modes(), model.layout.photons())),
        conv_(model.conv, model.conv_params(), input_),
        dense_(model.dense, model.dense_params(), dense_basis_) {
    if (model.params.size() != model.param_count()) throw ParameterError("parameter vector does not match model");
    if (pooling_.output_basis()->modes() + model.alpha != model.dense.modes()) {
      throw DimensionError("dense layer width does not match pooled modes + alpha");
    }
    pad_ = padding_map(*pooling_.output_basis(), *dense_basis_);
    // Keep only outcomes reachable from one-photon-per-register inputs; the
    // convolution never leaves that sector, so the others carry no amplitude.
    for (std::size_t o = 0; o < pooling_.outcomes().size(); ++o) {
      const auto& pairs = pooling_.outcomes()[o].pairs;
      const bool reachable = std::any_of(pairs.begin(), pairs.end(), [&](const auto& pr) {
        return one_photon_per_register((*input_)[static_cast<std::size_t>(pr.first)], model.layout.sizes);
      });
      if (reachable) outcomes_.push_back(o);
    }
    for (std::size_t e = 0; e < model.readout.events.size(); ++e) {
      event_index_.push_back(static_cast<Eigen::Index>(dense_basis_->index(model.readout.events[e])));
      event_label_.push_back(model.readout.labels[e]);
    }
  }

  const BasisPtr& input_basis() const { return input_; }
  const BasisPtr& pooled_basis() const { return pooling_.output_basis(); }
  const BasisPtr& dense_basis() const { return dense_basis_; }
  const PoolingMap& pooling_map() const { return pooling_; }

  /// Updates the angles without rebuilding the structure.
  void set_params(std::span<const double> params) {
    if (params.size() != model_.param_count()) throw ParameterError("parameter vector does not match model");
    model_.params.assign(params.begin(), params.end());
    conv_.set_params(model_.conv_params());
    dense_.set_params(model_.dense_params());
  }

  /// Distribution over the dense basis for a loaded input state.
  RVector distribution(const PureState& encoded) const {
    CMatrix v = dense_outputs(conv_output(encoded));
    return v.cwiseAbs2().rowwise().sum();
  }

  std::array<double, 2> forward(const PureState& encoded) const { return class_probs(distribution(encoded)); }

  std::array<double, 2> class_probs(const RVector& dist) const {
    std::array<double, 2> mass{0.0, 0.0};
    for (std::size_t e = 0; e < event_index_.size(); ++e)
      mass[static_cast<std::size_t>(event_label_[e])] += dist[event_index_[e]];
    const double total = mass[0] + mass[1];
    if (!(total > 0.0)) return {0.5, 0.5};
    return {mass[0] / total, mass[1] / total};
  }

  /// Loss of one sample; accumulates d loss / d params into `grad`.
  double loss_and_gradient(const PureState& encoded, int label, std::span<double> grad) const {
    const CMatrix psi_conv = conv_output(encoded);
    CMatrix v = dense_outputs(psi_conv);
    const RVector dist = v.cwiseAbs2().rowwise().sum();

    std::array<double, 2> mass{0.0, 0.0};
    for (std::size_t e = 0; e < event_index_.size(); ++e)
      mass[static_cast<std::size_t>(event_label_[e])] += dist[event_index_[e]];
    const double total = mass[0] + mass[1];
    if (!(total > 0.0)) return mse_loss({0.5, 0.5}, label);
    const std::array<double, 2> probs{mass[0] / total, mass[1] / total};
    const double loss = mse_loss(probs, label);

    // dloss/dmass_c = sum_a 2 (P_a - y_a) (delta_ac - P_a) / total
    std::array<double, 2> dmass{};
    for (int c = 0; c < 2; ++c) {
      double acc = 0.0;
      for (int a = 0; a < 2; ++a) {
        const double y = a == label ? 1.0 : 0.0;
        acc += 2.0 * (probs[static_cast<std::size_t>(a)] - y) * ((a == c ? 1.0 : 0.0) - probs[static_cast<std::size_t>(a)]);
      }
      dmass[static_cast<std::size_t>(c)] = acc / total;
    }
    // p(n) = sum_o |v_no|^2, so dloss = sum_o 2 Re <g_n v_no, dv_no>.
    CMatrix lam = CMatrix::Zero(v.rows(), v.cols());
    for (std::size_t e = 0; e < event_index_.size(); ++e) {
      const Eigen::Index n = event_index_[e];
      lam.row(n) = dmass[static_cast<std::size_t>(event_label_[e])] * v.row(n);
    }
    const std::size_t nconv = model_.conv_param_count();
    dense_.backprop(v, lam, grad.subspan(nconv));

    // Pull the branch cotangents back through the pooling selection.
    CMatrix gamma = CMatrix::Zero(psi_conv.rows(), 1);
    for (std::size_t b = 0; b < outcomes_.size(); ++b) {
      for (auto [in, out] : pooling_.outcomes()[outcomes_[b]].pairs) {
        gamma(in, 0) += lam(pad_[static_cast<std::size_t>(out)], static_cast<Eigen::Index>(b));
      }
    }
    CMatrix psi = psi_conv;
    conv_.backprop(psi, gamma, grad.first(nconv));
    return loss;
  }

  StageOutputs stages(const PureState& encoded) const {
    StageOutputs s;
    s.qdl = encoded.amplitudes.cwiseAbs2();
    const CMatrix psi = conv_output(encoded);
    s.conv = psi.col(0).cwiseAbs2();
    const CMatrix phi = branches(psi);
    RVector pooled = RVector::Zero(static_cast<Eigen::Index>(pooled_basis()->size()));
    const auto padded = phi.cwiseAbs2().rowwise().sum().eval();
    for (std::size_t i = 0; i < pad_.size(); ++i) pooled[static_cast<Eigen::Index>(i)] = padded[pad_[i]];
    s.pooling = pooled;
    CMatrix v = phi;
    dense_.apply(v);
    s.dense = v.cwiseAbs2().rowwise().sum();
    s.readout = class_probs(s.dense);
    return s;
  }

 private:
  CMatrix conv_output(const PureState& encoded) const {
    if (!same_basis(encoded.basis, input_)) throw DimensionError("encoded state does not match model layout");
    CMatrix x = encoded.amplitudes;
    conv_.apply(x);
    return x;
  }

  /// Unnormalized branch states, padded onto the dense basis, one per column.
  CMatrix branches(const CMatrix& psi) const {
    CMatrix phi = CMatrix::Zero(static_cast<Eigen::Index>(dense_basis_->size()), static_cast<Eigen::Index>(outcomes_.size()));
    for (std::size_t b = 0; b < outcomes_.size(); ++b) {
      for (auto [in, out] : pooling_.outcomes()[outcomes_[b]].pairs) {
        phi(pad_[static_cast<std::size_t>(out)], static_cast<Eigen::Index>(b)) += psi(in, 0);
      }
    }
    return phi;
  }

  CMatrix dense_outputs(const CMatrix& psi) const {
    CMatrix v = branches(psi);
    dense_.apply(v);
    return v;
  }

  PQCNNModel model_;
  BasisPtr input_;
  PoolingMap pooling_;
  BasisPtr dense_basis_;
  LiftedCircuit conv_;
  LiftedCircuit dense_;
  std::vector<Eigen::Index> pad_;
  std::vector<std::size_t> outcomes_;
  std::vector<Eigen::Index> event_index_;
  std::vector<int> event_label_;
};

/// Image -> class probabilities through loader, convolution, pooling,
/// dense layer, measurement and readout.
inline std::array<double, 2> forward(const PQCNNModel& model, const Tensor& image, bool nearest_rank1 = false) {
  return Pipeline(model).forward(qdl_encode(image, model.layout, nearest_rank1));
}

/// Mean loss over a batch and its gradient with respect to model.params.
inline double gradient(const PQCNNModel& model, std::span<const PureState> inputs, std::span<const int> labels,
                       std::vector<double>& grad) {
  if (inputs.empty() || inputs.size() != labels.size()) throw DataError("gradient needs a non-empty labelled batch");
  const Pipeline pipe(model);
  grad.assign(model.param_count(), 0.0);
  double loss = 0.0;
  for (std::size_t i = 0; i < inputs.size(); ++i) loss += pipe.loss_and_gradient(inputs[i], labels[i], grad);
  const double scale = 1.0 / static_cast<double>(inputs.size());
  for (auto& g : grad) g *= scale;
  return loss * scale;
}

}  // namespace pqcnn
