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
#include "pqcnn/model.hpp"

using namespace pqcnn;

TEST_CASE("parameter accounting of the preset architectures") {
  const auto bas = bas_model();
  CHECK(bas.param_count() == 10);
  CHECK(bas.conv_param_count() == 2);
  CHECK(bas.dense_param_count() == 8);
  CHECK(bas.dense_modes() == 6);
  CHECK(bas.accounting() == "conv 2 + dense 8 = 10");
  const auto mnist = mnist_model();
  CHECK(mnist.param_count() == 30);
  CHECK(mnist.dense_param_count() == binomial(8, 2));
  CHECK(mnist.dense_modes() == 8);
  CHECK(mnist.accounting() == "conv 2 + dense 28 = 30");
}

TEST_CASE("mse loss") {
  CHECK(mse_loss({1.0, 0.0}, 0) == 0.0);
  CHECK(mse_loss({0.5, 0.5}, 0) == 0.5);
  CHECK(mse_loss({0.5, 0.5}, 1) == 0.5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 20; ++i) {
    const double p = u(rng);
    const int y = i % 2;
    const double expected = y == 0 ? 2 * (1 - p) * (1 - p) : 2 * p * p;
    CHECK(std::abs(mse_loss({p, 1 - p}, y) - expected) < 1e-15);
  }
}

TEST_CASE("identity layers on a one-hot image are deterministic") {
  auto model = bas_model();
  RMatrix img = RMatrix::Zero(4, 4);
  img(1, 1) = 1.0;
  const auto p = forward(model, Tensor::from_matrix(img));
  CHECK(p[0] == 1.0);
  CHECK(p[1] == 0.0);
}

TEST_CASE("class probabilities sum to one") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> a(0, 2 * M_PI);
  auto model = bas_model();
  for (auto& p : model.params) p = a(rng);
  const Pipeline pipe(model);
  for (int i = 0; i < 100; ++i) {
    const RMatrix img = oracle::random_rank1(4, 4, rng);
    const auto p = pipe.forward(qdl_encode(Tensor::from_matrix(img), model.layout));
    CHECK(std::abs(p[0] + p[1] - 1.0) < 1e-12);
    CHECK(p[0] >= 0.0);
    CHECK(p[1] >= 0.0);
  }
}

TEST_CASE("forward agrees with the monolithic oracle") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> a(0, 2 * M_PI);
  for (int which = 0; which < 2; ++which) {
    for (int trial = 0; trial < 10; ++trial) {
      auto model = which == 0 ? bas_model() : mnist_model();
      for (auto& p : model.params) p = a(rng);
      if (trial % 2) randomize_dense_phases(model, rng);
      const int d = model.layout.sizes[0];
      const RMatrix img = oracle::random_rank1(d, d, rng);
      const auto got = forward(model, Tensor::from_matrix(img));
      const auto want = oracle::monolithic_forward(model, img);
      CHECK(std::abs(got[0] - want[0]) < 1e-10);
      CHECK(std::abs(got[1] - want[1]) < 1e-10);
    }
  }
}

TEST_CASE("pipeline stages are consistent with the layer functions") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> a(0, 2 * M_PI);
  auto model = bas_model();
  for (auto& p : model.params) p = a(rng);
  const Pipeline pipe(model);
  const RMatrix img = oracle::random_rank1(4, 4, rng);
  const PureState enc = qdl_encode(Tensor::from_matrix(img), model.layout);
  const StageOutputs s = pipe.stages(enc);
  const PureState conv = conv_layer(enc, 2, model.conv_params(), model.layout);
  CHECK((s.conv - measure_distribution(conv)).cwiseAbs().maxCoeff() < 1e-12);
  const MixedState pooled = pooling_channel(conv, model.pooling);
  CHECK((s.pooling - measure_distribution(pooled)).cwiseAbs().maxCoeff() < 1e-12);
  const MixedState dense = dense_layer(pooled, model.dense, model.dense_params(), model.alpha);
  CHECK((s.dense - measure_distribution(dense)).cwiseAbs().maxCoeff() < 1e-12);
  const auto r = readout(s.dense, *dense.basis, model.readout);
  CHECK(std::abs(r[0] - s.readout[0]) < 1e-12);
  for (const RVector* v : {&s.qdl, &s.conv, &s.pooling, &s.dense}) CHECK(std::abs(v->sum() - 1.0) < 1e-10);
}

TEST_CASE("reverse-mode gradient matches finite differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a(0, 2 * M_PI);
  for (int which = 0; which < 2; ++which) {
    for (int point = 0; point < 5; ++point) {
      auto model = which == 0 ? bas_model() : mnist_model();
      for (auto& p : model.params) p = a(rng);
      std::vector<PureState> xs;
      std::vector<int> ys;
      const int d = model.layout.sizes[0];
      for (int i = 0; i < 3; ++i) {
        xs.push_back(qdl_encode(Tensor::from_matrix(oracle::random_rank1(d, d, rng)), model.layout));
        ys.push_back(i % 2);
      }
      std::vector<double> g;
      gradient(model, xs, ys, g);
      const auto fd = oracle::fd_gradient(model, xs, ys);
      for (std::size_t i = 0; i < g.size(); ++i) CHECK(oracle::rel_err(g[i], fd[i]) < 1e-4);
    }
  }
}

TEST_CASE("gradient vanishes where the loss is constant") {
  // Two-mode registers: pooling always leaves one photon per register in
  // the single surviving mode, and the only coincidence event carries label 1.
  auto model = make_model(RegisterLayout({2, 2}), 2, 0, 1);
  REQUIRE(model.param_count() == 3);
  std::mt19937_64 rng(6);
  initialize_params(model, rng);
  const PureState x = qdl_encode(Tensor::from_matrix(oracle::random_rank1(2, 2, rng)), model.layout);
  std::vector<double> g;
  const std::vector<PureState> xs{x};
  const std::vector<int> ys{0};
  const double loss = gradient(model, xs, ys, g);
  CHECK(std::abs(loss - 2.0) < 1e-12);
  for (double v : g) CHECK(std::abs(v) < 1e-14);
}

TEST_CASE("loss is 2pi-periodic in every angle") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a(0, 2 * M_PI);
  auto model = bas_model();
  for (auto& p : model.params) p = a(rng);
  const PureState x = qdl_encode(Tensor::from_matrix(oracle::random_rank1(4, 4, rng)), model.layout);
  Pipeline pipe(model);
  const double base = mse_loss(pipe.forward(x), 1);
  for (std::size_t i = 0; i < model.params.size(); ++i) {
    auto p = model.params;
    p[i] += 2 * M_PI;
    pipe.set_params(p);
    CHECK(std::abs(mse_loss(pipe.forward(x), 1) - base) < 1e-12);
  }
}

TEST_CASE("pipeline rejects mismatched inputs") {
  auto model = bas_model();
  Pipeline pipe(model);
  const std::vector<double> short_params(3, 0.0);
  CHECK_THROWS_AS(pipe.set_params(short_params), ParameterError);
  const RegisterLayout other({2, 2});
  const PureState x = qdl_encode(Tensor::from_matrix(RMatrix::Ones(2, 2)), other);
  CHECK_THROWS_AS(pipe.forward(x), DimensionError);
  CHECK_THROWS_AS(make_model(RegisterLayout({4, 4}), 3, 2, 8), ShapeError);
}
