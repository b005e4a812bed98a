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

#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "pqcnn/train.hpp"

using namespace pqcnn;

namespace {

struct SmallBas {
  PQCNNModel model = bas_model();
  EncodedSet train, test;
  SmallBas() {
    const auto sp = split(gen_bas(4, 4, 60, 1), 40, 20, 1);
    train = encode_set(sp.train, model.layout);
    test = encode_set(sp.test, model.layout);
  }
};

}  // namespace

TEST_CASE("ADAM with zero gradient and no decay leaves parameters alone") {
  Adam opt(3, 0.1, 0.0);
  std::vector<double> p{0.1, -2.0, 3.0};
  const auto before = p;
  const std::vector<double> g(3, 0.0);
  for (int i = 0; i < 5; ++i) opt.step(p, g);
  CHECK(p == before);
}

TEST_CASE("ADAM first step moves by the learning rate against the gradient sign") {
  Adam opt(2, 0.01, 0.0);
  std::vector<double> p{1.0, 1.0};
  const std::vector<double> g{3.0, -0.5};
  opt.step(p, g);
  CHECK(std::abs(p[0] - (1.0 - 0.01)) < 1e-9);
  CHECK(std::abs(p[1] - (1.0 + 0.01)) < 1e-9);
}

TEST_CASE("decoupled weight decay shrinks parameters without a gradient") {
  Adam opt(1, 0.1, 0.5);
  std::vector<double> p{2.0};
  const std::vector<double> g{0.0};
  opt.step(p, g);
  CHECK(std::abs(p[0] - (2.0 - 0.1 * 0.5 * 2.0)) < 1e-15);
}

TEST_CASE("zero learning rate keeps the initialization") {
  SmallBas d;
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.seeds = 1;
  cfg.learning_rate = 0.0;
  const SeedRun run = train_seed(d.model, d.train, d.test, cfg, 3);
  CHECK(run.params == run.initial_params);
  CHECK(run.history.size() == 3);
  CHECK(run.history.front().train_loss == run.history.back().train_loss);
}

TEST_CASE("training is deterministic and improves on bars and stripes") {
  SmallBas d;
  TrainConfig cfg;
  cfg.epochs = 5;
  cfg.seeds = 2;
  const auto a = train(d.model, d.train, d.test, cfg);
  const auto b = train(d.model, d.train, d.test, cfg);
  REQUIRE(a.runs.size() == 2);
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(a.runs[s].params == b.runs[s].params);
    CHECK(a.runs[s].history.size() == 6);
    CHECK(a.runs[s].history.back().train_loss < a.runs[s].history.front().train_loss);
    for (const auto& m : a.runs[s].history) {
      CHECK(m.train_acc >= 0.0);
      CHECK(m.test_acc <= 1.0);
    }
  }
  CHECK(a.runs[0].initial_params != a.runs[1].initial_params);
}

TEST_CASE("finite-difference and adjoint training agree") {
  SmallBas d;
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.seeds = 1;
  cfg.batch_size = 8;
  const auto adj = train_seed(d.model, d.train, d.test, cfg, 0);
  cfg.gradient_method = "finite_difference";
  const auto fd = train_seed(d.model, d.train, d.test, cfg, 0);
  for (std::size_t i = 0; i < adj.params.size(); ++i) CHECK(std::abs(adj.params[i] - fd.params[i]) < 1e-5);
}

TEST_CASE("train config validation") {
  TrainConfig cfg;
  cfg.learning_rate = -1;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.seeds = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = TrainConfig{};
  cfg.gradient_method = "shift";
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("cluster readout search finds a perfect binning when one exists") {
  const SubspaceBasis basis(6, 2);
  const auto events = collision_free_configurations(6, 2);
  const std::vector<std::size_t> truth{1, 3, 4, 7, 9, 11, 14};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<RVector> dists;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    const int label = i % 2;
    RVector d = RVector::Zero(Eigen::Index(basis.size()));
    for (std::size_t e = 0; e < events.size(); ++e) {
      const bool in0 = std::find(truth.begin(), truth.end(), e) != truth.end();
      if (in0 == (label == 0)) d[Eigen::Index(basis.index(events[e]))] = u(rng);
    }
    dists.push_back(d / d.sum());
    labels.push_back(label);
  }
  const auto r = train_readout(dists, labels, basis, ReadoutStrategy::Cluster);
  CHECK(r.candidates == 6435 + 6435);
  CHECK(r.train_accuracy == 1.0);
  CHECK(readout_accuracy(dists, labels, basis, r.binning) == 1.0);
}

TEST_CASE("mode-pair readout search takes the lowest index on ties") {
  const SubspaceBasis basis(6, 2);
  std::vector<RVector> dists;
  std::vector<int> labels;
  // Uninformative distributions: every pair ties.
  for (int i = 0; i < 10; ++i) {
    dists.push_back(RVector::Constant(Eigen::Index(basis.size()), 1.0 / double(basis.size())));
    labels.push_back(i % 2);
  }
  const auto r = train_readout(dists, labels, basis, ReadoutStrategy::ModeGroup);
  CHECK(r.candidates == 15);
  CHECK(r.binning.group == std::vector<int>{0, 1});

  // Label 0 iff a photon reaches modes 2 or 4.
  dists.clear();
  labels.clear();
  const auto events = collision_free_configurations(6, 2);
  for (int i = 0; i < 10; ++i) {
    RVector d = RVector::Zero(Eigen::Index(basis.size()));
    const FockState& e = i % 2 == 0 ? events[std::size_t(7)] : events[std::size_t(0)];
    d[Eigen::Index(basis.index(e))] = 1.0;
    dists.push_back(d);
    labels.push_back(i % 2);
  }
  const auto s = train_readout(dists, labels, basis, ReadoutStrategy::ModeGroup);
  CHECK(s.train_accuracy == 1.0);
}

TEST_CASE("similarity") {
  const std::vector<double> p{0.5, 0.5}, q{1.0, 0.0}, r{0.0, 1.0};
  CHECK(std::abs(similarity(p, p) - 1.0) < 1e-15);
  CHECK(similarity(q, r) == 0.0);
  CHECK(std::abs(similarity(p, q) - std::sqrt(0.5)) < 1e-15);
  const std::vector<double> three{0.2, 0.3, 0.5};
  CHECK_THROWS_AS(similarity(p, three), DimensionError);
}

TEST_CASE("confusion matrix") {
  const std::vector<int> labels{0, 0, 1, 1, 1};
  const auto perfect = confusion(labels, labels);
  CHECK(perfect.counts[0][0] == 2);
  CHECK(perfect.counts[1][1] == 3);
  CHECK(perfect.counts[0][1] == 0);
  CHECK(perfect.counts[1][0] == 0);
  CHECK(perfect.accuracy == 1.0);

  const std::vector<int> zeros(5, 0);
  const auto all0 = confusion(zeros, labels);
  CHECK(all0.counts[0][0] + all0.counts[0][1] == 5);
  CHECK(all0.counts[1][0] + all0.counts[1][1] == 0);
  CHECK(all0.normalized[0][0] == 1.0);
  CHECK(all0.normalized[0][1] == 1.0);

  std::mt19937_64 rng(9);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> y(200), p(200);
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = coin(rng);
    p[i] = coin(rng);
  }
  const auto c = confusion(p, y);
  std::size_t n01 = 0, n1 = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    n01 += p[i] == 0 && y[i] == 1;
    n1 += y[i] == 1;
  }
  CHECK(c.counts[0][1] == n01);
  CHECK(c.counts[0][1] + c.counts[1][1] == n1);
  CHECK(std::abs(c.normalized[0][1] + c.normalized[1][1] - 1.0) < 1e-15);
}
