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

// pqcnn generate|train|eval|inspect --config <file> [--seed N] [--out DIR] [--nearest-rank1]

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "pqcnn/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Photonic quantum convolutional neural network simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  bool nearest_rank1 = false;
  std::optional<int> epochs;
  std::string model_path;
  std::size_t index = 0;
  std::string stage = "qdl";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "Base seed for parameter initialization");
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_flag("--nearest-rank1", nearest_rank1, "Load non-rank-1 images through their leading singular pair");
  };
  auto* gen = app.add_subcommand("generate", "Write the configured dataset");
  common(gen);
  auto* tr = app.add_subcommand("train", "Train all seeds and write metrics");
  common(tr);
  tr->add_option("--epochs", epochs, "Override train.epochs (0 evaluates the initialization)");
  auto* ev = app.add_subcommand("eval", "Evaluate a model file on the test split");
  common(ev);
  ev->add_option("--model", model_path, "Model file written by train")->required();
  auto* in = app.add_subcommand("inspect", "Dump one sample's distribution after a layer");
  common(in);
  in->add_option("--index", index, "Sample index in the dataset");
  in->add_option("--stage", stage, "qdl, conv, pooling, dense or readout");
  in->add_option("--model", model_path, "Model file (defaults to the seed's initialization)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : pqcnn::kExitConfig;
  }

  pqcnn::ExperimentConfig cfg;
  const int rc = pqcnn::guarded([&] {
    cfg = pqcnn::load_config(config_path);
    if (seed) cfg.train.base_seed = *seed;
    if (out_dir) cfg.output_dir = *out_dir;
    if (nearest_rank1) cfg.dataset.nearest_rank1 = true;
    if (epochs) cfg.train.epochs = *epochs;
    return int{pqcnn::kExitOk};
  });
  if (rc != 0) return rc;

  if (*gen) return pqcnn::cmd_generate(cfg);
  if (*tr) return pqcnn::cmd_train(cfg);
  if (*ev) return pqcnn::cmd_eval(cfg, model_path);
  return pqcnn::cmd_inspect(cfg, index, stage, model_path);
}
