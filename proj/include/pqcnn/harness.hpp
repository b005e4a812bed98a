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

// Config-driven experiment commands. Each returns a process exit code:
// 0 success, 2 configuration error, 3 data error, 4 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pqcnn/datasets.hpp"
#include "pqcnn/train.hpp"

namespace pqcnn {

using ojson = nlohmann::ordered_json;

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitData = 3, kExitNumerical = 4 };

struct DatasetSpec {
  std::string kind = "bas";  ///< bas | custom_bas | mnist8
  int d1 = 4;
  int d2 = 4;
  std::size_t n = 600;
  std::size_t train_n = 400;
  std::size_t test_n = 200;
  double sigma = 0.1;
  std::pair<int, int> digits{0, 1};
  std::uint64_t seed = 0;
  std::string path;  ///< mnist8 source, or a CSV written by `generate`
  bool nearest_rank1 = false;
};

struct ArchitectureSpec {
  std::vector<int> registers{4, 4};
  int kernel = 2;
  int alpha = 2;
  std::size_t dense_gates = 8;  ///< 0 = universal mesh
  std::string readout = "canonical";  ///< canonical | cluster | mode_group
  std::optional<std::size_t> params_count;
};

struct ExperimentConfig {
  DatasetSpec dataset;
  ArchitectureSpec architecture;
  TrainConfig train;
  std::string output_dir = "runs/out";
};

// ---------------------------------------------------------------------------
// Config parsing

namespace detail {

template <class T>
void read_key(const nlohmann::json& obj, const char* key, T& out, const std::string& where) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

inline void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [k, _] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; })) {
      throw ConfigError("unknown key " + where + "." + k);
    }
  }
}

}  // namespace detail

inline void validate(const ExperimentConfig& c) {
  const auto& d = c.dataset;
  if (d.kind != "bas" && d.kind != "custom_bas" && d.kind != "mnist8") throw ConfigError("dataset.kind must be bas, custom_bas or mnist8");
  if (d.n == 0 && d.path.empty()) throw ConfigError("dataset.n must be at least 1");
  if (d.kind == "mnist8" && d.path.empty()) throw ConfigError("dataset.path is required for mnist8");
  if (d.kind == "mnist8" && (d.d1 != 8 || d.d2 != 8)) throw ConfigError("mnist8 images are 8x8");
  if (d.kind == "custom_bas" && d.d1 != d.d2) throw ConfigError("custom_bas images are square");
  if (!(d.sigma >= 0.0) || !std::isfinite(d.sigma)) throw ConfigError("dataset.sigma must be finite and >= 0");
  const auto& a = c.architecture;
  if (a.registers.size() != 2) throw ConfigError("architecture.registers must list two register sizes");
  if (a.registers[0] != d.d1 || a.registers[1] != d.d2) throw ConfigError("architecture.registers must match the image shape");
  if (a.readout != "canonical" && a.readout != "cluster" && a.readout != "mode_group") {
    throw ConfigError("architecture.readout must be canonical, cluster or mode_group");
  }
  c.train.validate();
}

inline ExperimentConfig parse_config(const nlohmann::json& j) {
  ExperimentConfig c;
  detail::reject_unknown(j, {"dataset", "architecture", "train", "output_dir"}, "config");
  if (j.contains("dataset")) {
    const auto& d = j["dataset"];
    detail::reject_unknown(d, {"kind", "d1", "d2", "n", "train_n", "test_n", "sigma", "digits", "seed", "path", "nearest_rank1"},
                           "dataset");
    detail::read_key(d, "kind", c.dataset.kind, "dataset");
    detail::read_key(d, "d1", c.dataset.d1, "dataset");
    detail::read_key(d, "d2", c.dataset.d2, "dataset");
    detail::read_key(d, "n", c.dataset.n, "dataset");
    detail::read_key(d, "train_n", c.dataset.train_n, "dataset");
    detail::read_key(d, "test_n", c.dataset.test_n, "dataset");
    detail::read_key(d, "sigma", c.dataset.sigma, "dataset");
    detail::read_key(d, "digits", c.dataset.digits, "dataset");
    detail::read_key(d, "seed", c.dataset.seed, "dataset");
    detail::read_key(d, "path", c.dataset.path, "dataset");
    detail::read_key(d, "nearest_rank1", c.dataset.nearest_rank1, "dataset");
  }
  if (j.contains("architecture")) {
    const auto& a = j["architecture"];
    detail::reject_unknown(a, {"registers", "kernel", "alpha", "dense_gates", "readout", "params_count"}, "architecture");
    detail::read_key(a, "registers", c.architecture.registers, "architecture");
    detail::read_key(a, "kernel", c.architecture.kernel, "architecture");
    detail::read_key(a, "alpha", c.architecture.alpha, "architecture");
    detail::read_key(a, "dense_gates", c.architecture.dense_gates, "architecture");
    detail::read_key(a, "readout", c.architecture.readout, "architecture");
    if (a.contains("params_count")) {
      std::size_t n = 0;
      detail::read_key(a, "params_count", n, "architecture");
      c.architecture.params_count = n;
    }
  }
  if (j.contains("train")) {
    const auto& t = j["train"];
    detail::reject_unknown(t, {"epochs", "learning_rate", "weight_decay", "seeds", "base_seed", "batch_size", "gradient_method",
                               "init_low", "init_high", "beta1", "beta2", "epsilon", "random_dense_phases"},
                           "train");
    auto& tc = c.train;
    detail::read_key(t, "epochs", tc.epochs, "train");
    detail::read_key(t, "learning_rate", tc.learning_rate, "train");
    detail::read_key(t, "weight_decay", tc.weight_decay, "train");
    detail::read_key(t, "seeds", tc.seeds, "train");
    detail::read_key(t, "base_seed", tc.base_seed, "train");
    detail::read_key(t, "batch_size", tc.batch_size, "train");
    detail::read_key(t, "gradient_method", tc.gradient_method, "train");
    detail::read_key(t, "init_low", tc.init_low, "train");
    detail::read_key(t, "init_high", tc.init_high, "train");
    detail::read_key(t, "beta1", tc.beta1, "train");
    detail::read_key(t, "beta2", tc.beta2, "train");
    detail::read_key(t, "epsilon", tc.epsilon, "train");
    detail::read_key(t, "random_dense_phases", tc.random_dense_phases, "train");
  }
  detail::read_key(j, "output_dir", c.output_dir, "config");
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return parse_config(j);
}

/// All effective settings, defaults included.
inline ojson to_json(const ExperimentConfig& c) {
  ojson j;
  const auto& d = c.dataset;
  j["dataset"] = {{"kind", d.kind},   {"d1", d.d1},         {"d2", d.d2},
                  {"n", d.n},         {"train_n", d.train_n}, {"test_n", d.test_n},
                  {"sigma", d.sigma}, {"digits", {d.digits.first, d.digits.second}},
                  {"seed", d.seed},   {"path", d.path},     {"nearest_rank1", d.nearest_rank1}};
  const auto& a = c.architecture;
  j["architecture"] = {{"registers", a.registers}, {"kernel", a.kernel}, {"alpha", a.alpha},
                       {"dense_gates", a.dense_gates}, {"readout", a.readout}};
  if (a.params_count) j["architecture"]["params_count"] = *a.params_count;
  const auto& t = c.train;
  j["train"] = {{"epochs", t.epochs},
                {"learning_rate", t.learning_rate},
                {"weight_decay", t.weight_decay},
                {"seeds", t.seeds},
                {"base_seed", t.base_seed},
                {"batch_size", t.batch_size},
                {"gradient_method", t.gradient_method},
                {"init_low", t.init_low},
                {"init_high", t.init_high},
                {"beta1", t.beta1},
                {"beta2", t.beta2},
                {"epsilon", t.epsilon},
                {"random_dense_phases", t.random_dense_phases}};
  j["output_dir"] = c.output_dir;
  return j;
}

// ---------------------------------------------------------------------------
// Shared steps

inline PQCNNModel build_model(const ArchitectureSpec& a) {
  PQCNNModel m = make_model(RegisterLayout(a.registers), a.kernel, a.alpha, a.dense_gates);
  if (a.params_count && *a.params_count != m.param_count()) {
    throw ConfigError("architecture has " + m.accounting() + " parameters, config expects " + std::to_string(*a.params_count));
  }
  return m;
}

/// The full sample list described by the dataset spec.
inline std::vector<Sample> load_samples(const DatasetSpec& d) {
  if (d.kind == "mnist8") return load_mnist8(d.path, d.digits);
  if (!d.path.empty()) {
    auto samples = read_dataset_csv(d.path, d.d1, d.d2);
    if (d.kind == "custom_bas") {
      const auto sidecar = std::filesystem::path(d.path).replace_extension(".angles.json");
      if (std::filesystem::exists(sidecar)) read_angles_json(sidecar.string(), samples);
    }
    return samples;
  }
  if (d.kind == "custom_bas") return gen_custom_bas(d.n, d.sigma, d.seed, d.d1);
  return gen_bas(d.d1, d.d2, d.n, d.seed);
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + p.string());
  out << text;
  if (!out) throw DataError("write failed: " + p.string());
}

inline std::filesystem::path prepare_out(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory " + dir + ": " + ec.message());
  return std::filesystem::path(dir);
}

inline std::string metrics_csv(const SeedRun& run) {
  std::string s = "epoch,train_loss,train_acc,test_loss,test_acc\n";
  for (const auto& m : run.history) {
    s += std::to_string(m.epoch) + "," + detail::format_double(m.train_loss) + "," + detail::format_double(m.train_acc) + "," +
         detail::format_double(m.test_loss) + "," + detail::format_double(m.test_acc) + "\n";
  }
  return s;
}

inline std::string confusion_csv(const Confusion& c) {
  std::string s = "predicted,true_0,true_1,true_0_normalized,true_1_normalized\n";
  for (std::size_t p = 0; p < 2; ++p) {
    s += std::to_string(p) + "," + std::to_string(c.counts[p][0]) + "," + std::to_string(c.counts[p][1]) + "," +
         detail::format_double(c.normalized[p][0]) + "," + detail::format_double(c.normalized[p][1]) + "\n";
  }
  return s;
}

inline ojson binning_json(const ReadoutBinning& b) {
  ojson j{{"strategy", to_string(b.strategy)}};
  if (b.strategy == ReadoutStrategy::ModeGroup) {
    j["group"] = b.group;
    j["group_label"] = b.group_label;
  } else {
    std::vector<std::size_t> label0;
    for (std::size_t e = 0; e < b.labels.size(); ++e)
      if (b.labels[e] == 0) label0.push_back(e);
    j["label0_events"] = label0;
  }
  return j;
}

inline ReadoutBinning binning_from_json(const nlohmann::json& j, int modes, int photons) {
  const auto strategy = j.at("strategy").get<std::string>();
  if (strategy == "mode_group") return ReadoutBinning::mode_group(modes, photons, j.at("group").get<std::vector<int>>(), j.at("group_label").get<int>());
  if (strategy == "cluster") {
    const auto label0 = j.at("label0_events").get<std::vector<std::size_t>>();
    return ReadoutBinning::cluster(modes, photons, label0);
  }
  throw ParseError("unknown readout strategy " + strategy);
}

inline ojson model_json(const ArchitectureSpec& a, const PQCNNModel& m, const SeedRun& run) {
  return ojson{{"format", "pqcnn-model/1"},
               {"registers", a.registers},
               {"kernel", a.kernel},
               {"alpha", a.alpha},
               {"dense_gates", a.dense_gates},
               {"seed", run.seed},
               {"params", run.params},
               {"dense_phases", run.dense_phases},
               {"readout", binning_json(m.readout)}};
}

/// Model described by a model file.
inline PQCNNModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open model " + path);
  try {
    nlohmann::json j;
    in >> j;
    if (j.value("format", "") != "pqcnn-model/1") throw ParseError(path + ": not a pqcnn model file");
    ArchitectureSpec a;
    a.registers = j.at("registers").get<std::vector<int>>();
    a.kernel = j.at("kernel").get<int>();
    a.alpha = j.at("alpha").get<int>();
    a.dense_gates = j.at("dense_gates").get<std::size_t>();
    PQCNNModel m = build_model(a);
    const auto params = j.at("params").get<std::vector<double>>();
    if (params.size() != m.param_count()) throw ParseError(path + ": parameter count does not match the architecture");
    m.params = params;
    const auto phases = j.at("dense_phases").get<std::vector<double>>();
    if (phases.size() != m.dense.size()) throw ParseError(path + ": dense phase count does not match the architecture");
    for (std::size_t g = 0; g < phases.size(); ++g) m.dense.set_phase(g, phases[g]);
    m.readout = binning_from_json(j.at("readout"), m.dense_modes(), m.layout.photons());
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Confusion confusion_of(const Pipeline& pipe, const EncodedSet& data) {
  std::vector<int> preds;
  for (const auto& s : data.states) preds.push_back(predicted_label(pipe.forward(s)));
  return confusion(preds, data.labels);
}

inline ojson confusion_json(const Confusion& c) {
  return ojson{{"counts", {{c.counts[0][0], c.counts[0][1]}, {c.counts[1][0], c.counts[1][1]}}},
               {"normalized", {{c.normalized[0][0], c.normalized[0][1]}, {c.normalized[1][0], c.normalized[1][1]}}},
               {"layout", "rows = predicted label, columns = true label"}};
}

/// Maps library errors to exit codes, printing the message.
template <class F>
int guarded(F&& body, std::ostream& err = std::cerr) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ShapeError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ParseError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const RankError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NormalizationError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

// ---------------------------------------------------------------------------
// Commands

/// Writes dataset.csv (and dataset.angles.json for custom_bas) to the output
/// directory and prints the class counts.
inline int cmd_generate(ExperimentConfig cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        validate(cfg);
        if (cfg.dataset.kind != "mnist8") cfg.dataset.path.clear();
        const auto samples = load_samples(cfg.dataset);
        const auto dir = prepare_out(cfg.output_dir);
        write_text(dir / "config.echo.json", to_json(cfg).dump(2) + "\n");
        write_dataset_csv((dir / "dataset.csv").string(), samples);
        if (cfg.dataset.kind == "custom_bas") write_angles_json((dir / "dataset.angles.json").string(), samples);
        const auto counts = class_counts(samples);
        out << "wrote " << samples.size() << " samples to " << (dir / "dataset.csv").string() << " (label 0: " << counts[0]
            << ", label 1: " << counts[1] << ")\n";
        return int{kExitOk};
      },
      err);
}

/// Trains every seed and writes metrics, summary, best model and confusion.
inline int cmd_train(const ExperimentConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        validate(cfg);
        const PQCNNModel model = build_model(cfg.architecture);
        out << "parameters: " << model.accounting() << "\n";
        const auto samples = load_samples(cfg.dataset);
        const auto sp = split(samples, cfg.dataset.train_n, cfg.dataset.test_n, cfg.dataset.seed);
        const auto train_set = encode_set(sp.train, model.layout, cfg.dataset.nearest_rank1);
        const auto test_set = encode_set(sp.test, model.layout, cfg.dataset.nearest_rank1);
        const auto dir = prepare_out(cfg.output_dir);
        write_text(dir / "config.echo.json", to_json(cfg).dump(2) + "\n");

        const TrainResult result = train(model, train_set, test_set, cfg.train, [&](const SeedRun& run) {
          write_text(dir / ("metrics_seed" + std::to_string(run.seed) + ".csv"), metrics_csv(run));
          const auto& last = run.history.back();
          out << "seed " << run.seed << ": train_acc " << last.train_acc << " test_acc " << last.test_acc
              << (run.diverged ? " DIVERGED" : "") << "\n";
        });

        const SeedRun& best = result.runs[result.best_run];
        PQCNNModel trained = model;
        trained.params = best.params;
        for (std::size_t g = 0; g < best.dense_phases.size(); ++g) trained.dense.set_phase(g, best.dense_phases[g]);
        Pipeline pipe(trained);

        ojson summary;
        summary["dataset"] = {{"kind", cfg.dataset.kind},
                              {"train_n", sp.train.size()},
                              {"test_n", sp.test.size()},
                              {"train_class_counts", sp.train_counts},
                              {"test_class_counts", sp.test_counts}};
        if (cfg.dataset.kind == "custom_bas") summary["dataset"]["sigma"] = cfg.dataset.sigma;
        if (cfg.dataset.kind == "mnist8") summary["dataset"]["digits"] = {cfg.dataset.digits.first, cfg.dataset.digits.second};
        summary["params_count"] = model.param_count();
        summary["params_decomposition"] = {{"conv", model.conv_param_count()}, {"dense", model.dense_param_count()}};
        ojson seeds = ojson::array();
        bool diverged = false;
        for (const auto& run : result.runs) {
          const auto& last = run.history.back();
          seeds.push_back({{"seed", run.seed},
                           {"final_train_loss", last.train_loss},
                           {"final_train_acc", last.train_acc},
                           {"final_test_loss", last.test_loss},
                           {"final_test_acc", last.test_acc},
                           {"diverged", run.diverged},
                           {"diagnostic", run.diagnostic},
                           {"params", run.params}});
          diverged = diverged || run.diverged;
        }
        summary["seeds"] = seeds;
        summary["mean_train_acc"] = result.mean_train_acc;
        summary["std_train_acc"] = result.std_train_acc;
        summary["mean_test_acc"] = result.mean_test_acc;
        summary["std_test_acc"] = result.std_test_acc;
        summary["best_seed"] = best.seed;

        if (cfg.architecture.readout != "canonical") {
          std::vector<RVector> train_d, test_d;
          for (const auto& s : train_set.states) train_d.push_back(pipe.distribution(s));
          for (const auto& s : test_set.states) test_d.push_back(pipe.distribution(s));
          const auto strategy = cfg.architecture.readout == "cluster" ? ReadoutStrategy::Cluster : ReadoutStrategy::ModeGroup;
          const auto search = train_readout(train_d, train_set.labels, *pipe.dense_basis(), strategy);
          summary["readout_search"] = {{"strategy", cfg.architecture.readout},
                                       {"candidates", search.candidates},
                                       {"train_acc", search.train_accuracy},
                                       {"test_acc", readout_accuracy(test_d, test_set.labels, *pipe.dense_basis(), search.binning)},
                                       {"binning", binning_json(search.binning)}};
        }
        write_text(dir / "run_summary.json", summary.dump(2) + "\n");
        write_text(dir / "model.json", model_json(cfg.architecture, trained, best).dump(2) + "\n");
        write_text(dir / "confusion.csv", confusion_csv(confusion_of(pipe, test_set)));
        out << "mean test accuracy " << result.mean_test_acc << " +- " << result.std_test_acc << " over " << result.runs.size()
            << " seeds; artifacts in " << dir.string() << "\n";
        if (diverged) throw NumericalError("at least one seed produced a non-finite loss; see run_summary.json");
        return int{kExitOk};
      },
      err);
}

/// Evaluates a model file on the configured test split.
inline int cmd_eval(const ExperimentConfig& cfg, const std::string& model_path, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        validate(cfg);
        const PQCNNModel model = load_model(model_path);
        if (model.layout.sizes != cfg.architecture.registers) throw ConfigError("model register sizes do not match the config");
        const auto sp = split(load_samples(cfg.dataset), cfg.dataset.train_n, cfg.dataset.test_n, cfg.dataset.seed);
        const auto test_set = encode_set(sp.test, model.layout, cfg.dataset.nearest_rank1);
        const Pipeline pipe(model);
        const auto [loss, acc] = evaluate(pipe, test_set);
        const Confusion c = confusion_of(pipe, test_set);
        const auto dir = prepare_out(cfg.output_dir);
        write_text(dir / "config.echo.json", to_json(cfg).dump(2) + "\n");
        ojson j{{"model", model_path}, {"test_n", sp.test.size()}, {"loss", loss}, {"accuracy", acc}, {"confusion", confusion_json(c)}};
        write_text(dir / "eval.json", j.dump(2) + "\n");
        write_text(dir / "confusion.csv", confusion_csv(c));
        out << "accuracy " << acc << " on " << sp.test.size() << " test samples\n";
        return int{kExitOk};
      },
      err);
}

inline const std::vector<std::string>& inspect_stages() {
  static const std::vector<std::string> stages{"qdl", "conv", "pooling", "dense", "readout"};
  return stages;
}

/// Dumps the distribution after one layer for sample `index` of the dataset.
/// Without a model file the parameters come from the seed's initialization.
inline int cmd_inspect(const ExperimentConfig& cfg, std::size_t index, const std::string& stage, const std::string& model_path,
                       std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return guarded(
      [&] {
        validate(cfg);
        const auto& stages = inspect_stages();
        if (std::find(stages.begin(), stages.end(), stage) == stages.end()) {
          throw ConfigError("stage must be one of qdl, conv, pooling, dense, readout");
        }
        PQCNNModel model = model_path.empty() ? build_model(cfg.architecture) : load_model(model_path);
        if (model_path.empty()) {
          std::mt19937_64 rng(cfg.train.base_seed);
          initialize_params(model, rng, cfg.train.init_low, cfg.train.init_high);
          if (cfg.train.random_dense_phases) randomize_dense_phases(model, rng);
        }
        const auto samples = load_samples(cfg.dataset);
        if (index >= samples.size()) throw ConfigError("index " + std::to_string(index) + " is out of range");
        const Pipeline pipe(model);
        const StageOutputs s = pipe.stages(encode_sample(samples[index], model.layout, cfg.dataset.nearest_rank1));

        ojson j{{"stage", stage}, {"index", index}, {"label", samples[index].label}};
        auto dump = [&](const RVector& p, const SubspaceBasis& basis) {
          ojson states = ojson::array();
          for (const auto& st : basis.states()) states.push_back(st.occupations);
          j["basis"] = states;
          j["probabilities"] = std::vector<double>(p.data(), p.data() + p.size());
          j["sum"] = p.sum();
        };
        if (stage == "qdl") dump(s.qdl, *pipe.input_basis());
        if (stage == "conv") dump(s.conv, *pipe.input_basis());
        if (stage == "pooling") {
          dump(s.pooling, *pipe.pooled_basis());
          j["density_diagonal"] = j["probabilities"];
        }
        if (stage == "dense") dump(s.dense, *pipe.dense_basis());
        if (stage == "readout") {
          j["probabilities"] = s.readout;
          j["sum"] = s.readout[0] + s.readout[1];
          j["predicted"] = predicted_label(s.readout);
        }
        const auto dir = prepare_out(cfg.output_dir);
        write_text(dir / "config.echo.json", to_json(cfg).dump(2) + "\n");
        const auto file = dir / ("inspect_" + std::to_string(index) + "_" + stage + ".json");
        write_text(file, j.dump(2) + "\n");
        out << "wrote " << file.string() << "\n";
        return int{kExitOk};
      },
      err);
}

}  // namespace pqcnn
