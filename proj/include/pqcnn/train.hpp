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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pqcnn/datasets.hpp"
#include "pqcnn/model.hpp"

namespace pqcnn {

struct TrainConfig {
  int epochs = 30;
  double learning_rate = 1e-3;
  double weight_decay = 1e-4;
  int seeds = 5;
  std::uint64_t base_seed = 0;  ///< seed s trains with base_seed + s
  std::size_t batch_size = 1;   ///< 0 = full batch
  std::string gradient_method = "adjoint";
  double init_low = 0.0;
  double init_high = M_PI / 2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  bool random_dense_phases = false;  ///< frozen random phases on the dense gates, one draw per seed

  void validate() const {
    if (epochs < 0) throw ConfigError("epochs must be >= 0");
    if (seeds < 1) throw ConfigError("seeds must be >= 1");
    if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) throw ConfigError("learning_rate must be finite and >= 0");
    if (!(weight_decay >= 0.0) || !std::isfinite(weight_decay)) throw ConfigError("weight_decay must be finite and >= 0");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("ADAM betas must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be > 0");
    if (!(init_low <= init_high)) throw ConfigError("init range is empty");
    if (gradient_method != "adjoint" && gradient_method != "finite_difference") {
      throw ConfigError("gradient_method must be adjoint or finite_difference");
    }
  }
};

/// ADAM with decoupled weight decay.
class Adam {
 public:
  Adam(std::size_t n, double lr, double weight_decay, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), wd_(weight_decay), b1_(beta1), b2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

  void step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) throw DimensionError("optimizer size mismatch");
    ++t_;
    const double c1 = 1.0 - std::pow(b1_, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(b2_, static_cast<double>(t_));
    for (std::size_t i = 0; i < params.size(); ++i) {
      m_[i] = b1_ * m_[i] + (1.0 - b1_) * grad[i];
      v_[i] = b2_ * v_[i] + (1.0 - b2_) * grad[i] * grad[i];
      const double mhat = m_[i] / c1;
      const double vhat = v_[i] / c2;
      params[i] -= lr_ * (mhat / (std::sqrt(vhat) + eps_) + wd_ * params[i]);
    }
  }

 private:
  double lr_, wd_, b1_, b2_, eps_;
  std::vector<double> m_, v_;
  long t_ = 0;
};

struct EpochMetrics {
  int epoch = 0;
  double train_loss = 0.0;
  double train_acc = 0.0;
  double test_loss = 0.0;
  double test_acc = 0.0;
};

struct SeedRun {
  std::uint64_t seed = 0;
  std::vector<double> initial_params;
  std::vector<double> params;
  std::vector<double> dense_phases;
  std::vector<EpochMetrics> history;  ///< epoch 0 is the initialization
  bool diverged = false;
  std::string diagnostic;
};

struct TrainResult {
  std::vector<SeedRun> runs;
  double mean_train_acc = 0.0;
  double std_train_acc = 0.0;
  double mean_test_acc = 0.0;
  double std_test_acc = 0.0;
  std::size_t best_run = 0;  ///< highest final test accuracy, lowest index on ties
};

/// Loaded states and labels of a sample list.
struct EncodedSet {
  std::vector<PureState> states;
  std::vector<int> labels;
};

inline EncodedSet encode_set(const std::vector<Sample>& samples, const RegisterLayout& layout, bool nearest_rank1 = false) {
  EncodedSet e;
  e.states.reserve(samples.size());
  for (const auto& s : samples) {
    e.states.push_back(encode_sample(s, layout, nearest_rank1));
    e.labels.push_back(s.label);
  }
  return e;
}

/// Mean loss and accuracy of the pipeline's current parameters.
inline std::pair<double, double> evaluate(const Pipeline& pipe, const EncodedSet& data) {
  if (data.states.empty()) return {0.0, 0.0};
  double loss = 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.states.size(); ++i) {
    const auto probs = pipe.forward(data.states[i]);
    loss += mse_loss(probs, data.labels[i]);
    correct += predicted_label(probs) == data.labels[i] ? 1 : 0;
  }
  const double n = static_cast<double>(data.states.size());
  return {loss / n, static_cast<double>(correct) / n};
}

namespace detail {

/// Mean loss of a batch; writes the gradient of the mean into `grad`.
inline double batch_gradient(Pipeline& pipe, const PQCNNModel& model, const EncodedSet& data,
                             std::span<const std::size_t> batch, const std::string& method, std::vector<double>& grad) {
  grad.assign(model.param_count(), 0.0);
  const double scale = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  if (method == "adjoint") {
    for (std::size_t i : batch) loss += pipe.loss_and_gradient(data.states[i], data.labels[i], grad);
    for (auto& g : grad) g *= scale;
    return loss * scale;
  }
  auto batch_loss = [&](std::span<const double> p) {
    pipe.set_params(p);
    double l = 0.0;
    for (std::size_t i : batch) l += mse_loss(pipe.forward(data.states[i]), data.labels[i]);
    return l * scale;
  };
  std::vector<double> p = model.params;
  constexpr double h = 1e-5;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double keep = p[k];
    p[k] = keep + h;
    const double up = batch_loss(p);
    p[k] = keep - h;
    const double down = batch_loss(p);
    p[k] = keep;
    grad[k] = (up - down) / (2 * h);
  }
  loss = batch_loss(p);
  return loss;
}

}  // namespace detail

/// Trains one initialization. `model.params` is overwritten by the
/// initialization drawn from `seed`.
inline SeedRun train_seed(PQCNNModel model, const EncodedSet& train, const EncodedSet& test, const TrainConfig& cfg,
                          std::uint64_t seed) {
  cfg.validate();
  if (train.states.empty()) throw DataError("training set is empty");
  SeedRun run;
  run.seed = seed;
  std::mt19937_64 rng(seed);
  initialize_params(model, rng, cfg.init_low, cfg.init_high);
  if (cfg.random_dense_phases) randomize_dense_phases(model, rng);
  for (const auto& g : model.dense.gates()) run.dense_phases.push_back(g.phi);
  run.initial_params = model.params;

  Pipeline pipe(model);
  auto record = [&](int epoch) {
    pipe.set_params(model.params);
    const auto [trl, tra] = evaluate(pipe, train);
    const auto [tel, tea] = evaluate(pipe, test);
    run.history.push_back({epoch, trl, tra, tel, tea});
    return std::isfinite(trl) && std::isfinite(tel);
  };
  if (!record(0)) {
    run.diverged = true;
    run.diagnostic = "non-finite loss at initialization";
  }

  Adam opt(model.param_count(), cfg.learning_rate, cfg.weight_decay, cfg.beta1, cfg.beta2, cfg.epsilon);
  std::vector<std::size_t> order(train.states.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t bs = cfg.batch_size == 0 ? order.size() : std::min(cfg.batch_size, order.size());
  std::vector<double> grad;
  for (int epoch = 1; epoch <= cfg.epochs && !run.diverged; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t end = std::min(order.size(), start + bs);
      pipe.set_params(model.params);
      const double loss = detail::batch_gradient(pipe, model, train, std::span(order).subspan(start, end - start),
                                                 cfg.gradient_method, grad);
      const bool finite = std::isfinite(loss) && std::all_of(grad.begin(), grad.end(), [](double g) { return std::isfinite(g); });
      if (!finite) {
        run.diverged = true;
        run.diagnostic = "non-finite loss or gradient in epoch " + std::to_string(epoch);
        break;
      }
      opt.step(model.params, grad);
    }
    if (!run.diverged && !record(epoch)) {
      run.diverged = true;
      run.diagnostic = "non-finite loss after epoch " + std::to_string(epoch);
    }
  }
  run.params = model.params;
  return run;
}

inline std::pair<double, double> mean_std(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

/// Trains cfg.seeds initializations and summarizes their final accuracies.
/// Diverged seeds count with the metrics of their last finite record.
inline TrainResult train(const PQCNNModel& model, const EncodedSet& train_set, const EncodedSet& test_set,
                         const TrainConfig& cfg, const std::function<void(const SeedRun&)>& on_seed = {}) {
  cfg.validate();
  TrainResult r;
  std::vector<double> tr, te;
  for (int s = 0; s < cfg.seeds; ++s) {
    r.runs.push_back(train_seed(model, train_set, test_set, cfg, cfg.base_seed + static_cast<std::uint64_t>(s)));
    const auto& last = r.runs.back().history.back();
    tr.push_back(last.train_acc);
    te.push_back(last.test_acc);
    if (on_seed) on_seed(r.runs.back());
  }
  std::tie(r.mean_train_acc, r.std_train_acc) = mean_std(tr);
  std::tie(r.mean_test_acc, r.std_test_acc) = mean_std(te);
  r.best_run = static_cast<std::size_t>(std::max_element(te.begin(), te.end()) - te.begin());
  return r;
}

// ---------------------------------------------------------------------------
// Readout training

struct ReadoutSearch {
  ReadoutBinning binning;
  double train_accuracy = 0.0;
  std::size_t candidates = 0;
};

/// Per-event probabilities of each distribution, in binning event order.
inline std::vector<std::vector<double>> event_probabilities(const std::vector<RVector>& dists, const SubspaceBasis& basis) {
  const auto events = collision_free_configurations(basis.modes(), basis.photons());
  std::vector<std::vector<double>> out;
  out.reserve(dists.size());
  for (const auto& d : dists) {
    if (static_cast<std::size_t>(d.size()) != basis.size()) throw DimensionError("distribution length does not match basis");
    std::vector<double> e;
    e.reserve(events.size());
    for (const auto& ev : events) e.push_back(d[static_cast<Eigen::Index>(basis.index(ev))]);
    out.push_back(std::move(e));
  }
  return out;
}

inline constexpr std::size_t kMaxClusterCandidates = 2'000'000;

/// Searches the binning that maximizes training accuracy.
///
/// Cluster: every assignment of floor(E/2) or ceil(E/2) of the E
/// collision-free events to label 0. Mode group: every pair of modes whose
/// detection means label 0. Ties keep the first candidate in enumeration order.
inline ReadoutSearch train_readout(const std::vector<RVector>& dists, const std::vector<int>& labels,
                                   const SubspaceBasis& basis, ReadoutStrategy strategy) {
  if (dists.size() != labels.size() || dists.empty()) throw DataError("readout training needs labelled distributions");
  const auto probs = event_probabilities(dists, basis);
  const std::size_t n_events = probs.front().size();

  auto accuracy = [&](const std::vector<int>& event_labels) {
    std::size_t correct = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      std::array<double, 2> mass{0.0, 0.0};
      for (std::size_t e = 0; e < n_events; ++e) mass[static_cast<std::size_t>(event_labels[e])] += probs[i][e];
      correct += predicted_label(mass) == labels[i] ? 1 : 0;
    }
    return static_cast<double>(correct) / static_cast<double>(probs.size());
  };

  ReadoutSearch best;
  best.train_accuracy = -1.0;
  if (strategy == ReadoutStrategy::Cluster) {
    const std::size_t lo = n_events / 2;
    const std::size_t hi = n_events - lo;
    std::size_t total = static_cast<std::size_t>(binomial(static_cast<int>(n_events), static_cast<int>(lo)));
    if (hi != lo) total += static_cast<std::size_t>(binomial(static_cast<int>(n_events), static_cast<int>(hi)));
    if (total > kMaxClusterCandidates) throw ShapeError("cluster search over " + std::to_string(total) + " candidates is too large");
    std::vector<std::size_t> best_set;
    for (std::size_t k : {lo, hi}) {
      if (k == hi && hi == lo && best.candidates > 0) break;
      std::vector<std::size_t> idx(k);
      std::iota(idx.begin(), idx.end(), 0);
      while (true) {
        std::vector<int> ev(n_events, 1);
        for (std::size_t i : idx) ev[i] = 0;
        ++best.candidates;
        const double acc = accuracy(ev);
        if (acc > best.train_accuracy) {
          best.train_accuracy = acc;
          best_set = idx;
        }
        // next k-combination in lexicographic order
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == n_events - k + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    best.binning = ReadoutBinning::cluster(basis.modes(), basis.photons(), best_set);
  } else {
    for (int a = 0; a < basis.modes(); ++a)
      for (int b = a + 1; b < basis.modes(); ++b) {
        auto binning = ReadoutBinning::mode_group(basis.modes(), basis.photons(), {a, b}, 0);
        ++best.candidates;
        const double acc = accuracy(binning.labels);
        if (acc > best.train_accuracy) {
          best.train_accuracy = acc;
          best.binning = std::move(binning);
        }
      }
  }
  return best;
}

/// Accuracy of a fixed binning on precomputed distributions.
inline double readout_accuracy(const std::vector<RVector>& dists, const std::vector<int>& labels, const SubspaceBasis& basis,
                               const ReadoutBinning& binning) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < dists.size(); ++i)
    correct += predicted_label(readout(dists[i], basis, binning)) == labels[i] ? 1 : 0;
  return dists.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(dists.size());
}

// ---------------------------------------------------------------------------
// Metrics

/// Overlap sum_x sqrt(p(x) q(x)).
inline double similarity(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw DimensionError("similarity needs distributions of equal length");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::sqrt(std::max(0.0, p[i]) * std::max(0.0, q[i]));
  return s;
}

/// counts[predicted][true]; each column of `normalized` divides by the
/// number of samples of that true class.
struct Confusion {
  std::array<std::array<std::size_t, 2>, 2> counts{};
  std::array<std::array<double, 2>, 2> normalized{};
  double accuracy = 0.0;
};

inline Confusion confusion(std::span<const int> predictions, std::span<const int> labels) {
  if (predictions.size() != labels.size()) throw DimensionError("predictions and labels differ in length");
  Confusion c;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if ((predictions[i] != 0 && predictions[i] != 1) || (labels[i] != 0 && labels[i] != 1)) throw DataError("labels must be 0 or 1");
    ++c.counts[static_cast<std::size_t>(predictions[i])][static_cast<std::size_t>(labels[i])];
  }
  for (std::size_t t = 0; t < 2; ++t) {
    const std::size_t col = c.counts[0][t] + c.counts[1][t];
    for (std::size_t p = 0; p < 2; ++p)
      c.normalized[p][t] = col == 0 ? 0.0 : static_cast<double>(c.counts[p][t]) / static_cast<double>(col);
  }
  c.accuracy = labels.empty() ? 0.0 : static_cast<double>(c.counts[0][0] + c.counts[1][1]) / static_cast<double>(labels.size());
  return c;
}

}  // namespace pqcnn
