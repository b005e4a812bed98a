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

// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pqcnn/harness.hpp"

using namespace pqcnn;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s  %-4s %-44s %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kRuns = fs::current_path() / "acceptance_runs";

ExperimentConfig recipe(const std::string& name, const std::string& out) {
  auto c = load_config(std::string(PQCNN_SOURCE_DIR) + "/configs/" + name);
  if (!c.dataset.path.empty()) c.dataset.path = std::string(PQCNN_SOURCE_DIR) + "/" + c.dataset.path;
  c.output_dir = (kRuns / out).string();
  fs::remove_all(c.output_dir);
  return c;
}

/// Trains a recipe and returns (mean test accuracy, std, seconds).
struct Trained {
  int rc = -1;
  double mean = 0.0, std = 0.0, secs = 0.0;
  std::string log;
};

Trained train_recipe(const std::string& name, const std::string& out) {
  const auto cfg = recipe(name, out);
  std::ostringstream log, err;
  const auto t0 = std::chrono::steady_clock::now();
  Trained t;
  t.rc = cmd_train(cfg, log, err);
  t.secs = elapsed(t0);
  t.log = log.str() + err.str();
  if (t.rc == kExitOk) {
    const auto s = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "run_summary.json"));
    t.mean = s["mean_test_acc"];
    t.std = s["std_test_acc"];
  }
  return t;
}

Outcome accuracy_gate(const Trained& t, double threshold, double limit_secs) {
  if (t.rc != kExitOk) return {false, "train exited with " + std::to_string(t.rc) + ": " + t.log};
  const bool ok = t.mean >= threshold && t.secs < limit_secs;
  return {ok, fmt("mean test acc %.4f +- %.4f (>= %.2f), %.1fs (< %.0fs)", t.mean, t.std, threshold, t.secs, limit_secs)};
}

}  // namespace

int main() {
  fs::create_directories(kRuns);
  std::printf("acceptance criteria\n");

  run("C1", "permanent vs permutation sum", [] {
    std::mt19937_64 rng(101);
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const CMatrix a = oracle::random_complex(1 + i % 6, rng);
      worst = std::max(worst, std::abs(permanent(a) - oracle::naive_permanent(a)));
    }
    const double s = elapsed(t0);
    return Outcome{worst <= 1e-12 && s < 1.0, fmt("200 matrices n<=6, max |diff| %.2e (<= 1e-12), %.3fs (< 1s)", worst, s)};
  });

  run("C2", "lift unitarity and homomorphism", [] {
    std::mt19937_64 rng(102);
    const auto t0 = std::chrono::steady_clock::now();
    double unit = 0.0, hom = 0.0;
    for (int i = 0; i < 50; ++i) {
      const int m = 1 + i % 5;
      const int k = 1 + (i / 5) % 3;
      const CMatrix u = oracle::random_unitary(m, rng);
      const CMatrix v = oracle::random_unitary(m, rng);
      const auto lu = lift(ModeUnitary{m, u}, k);
      const auto lv = lift(ModeUnitary{m, v}, k);
      const auto luv = lift(ModeUnitary{m, u * v}, k);
      const auto n = lu.matrix.rows();
      unit = std::max(unit, (lu.matrix.adjoint() * lu.matrix - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
      hom = std::max(hom, (luv.matrix - lu.matrix * lv.matrix).cwiseAbs().maxCoeff());
    }
    const double s = elapsed(t0);
    return Outcome{unit <= 1e-8 && hom <= 1e-8 && s < 10.0,
                   fmt("50 unitaries m<=5 k<=3, unitarity %.1e, homomorphism %.1e (<= 1e-8), %.3fs", unit, hom, s)};
  });

  run("C3", "two-photon interference dip", [] {
    Circuit c(2);
    c.add_fixed(0, 1, M_PI / 4);
    const auto l = lift(compose(c, {}), 2);
    const auto i11 = Eigen::Index(l.basis->index(FockState{{1, 1}}));
    const double p = std::norm(l.matrix(i11, i11));
    return Outcome{p <= 1e-12, fmt("P(|1,1>) = %.2e (<= 1e-12)", p)};
  });

  run("C4", "pooling channel vs projector oracle", [] {
    std::mt19937_64 rng(104);
    std::normal_distribution<double> g;
    const RegisterLayout layout({4, 4});
    const auto spec = PoolingSpec::halving(layout);
    auto basis = enumerate_basis(8, 2);
    const PoolingMap map(spec, basis);
    const std::vector<int> regs{4, 4};
    double chan = 0.0, branch_sum = 0.0, pattern = 0.0, window11 = 0.0, printed11 = 0.0;
    for (int t = 0; t < 100; ++t) {
      RMatrix x(4, 4);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) x(i, j) = g(rng);
      x /= x.norm();
      const PureState psi = tensor_encode(Tensor::from_matrix(x), basis, regs);
      const MixedState rho = pooling_channel(psi, map);
      const CMatrix ref = oracle::pooling_projector_sum(pure_to_mixed(psi).rho, *basis, regs, *map.output_basis());
      chan = std::max(chan, (rho.rho - ref).cwiseAbs().maxCoeff());
      double total = 0.0;
      for (const auto& b : pooling_branches(psi, map)) total += b.probability;
      branch_sum = std::max(branch_sum, std::abs(total - 1.0));

      const auto& out = *map.output_basis();
      auto idx = [&](int a) {
        std::vector<int> occ(4, 0);
        occ[std::size_t(a / 2)] = 1;
        occ[std::size_t(2 + a % 2)] = 1;
        return Eigen::Index(out.index(FockState{occ}));
      };
      auto R = [&](int a, int b) { return rho.rho(idx(a - 1), idx(b - 1)).real(); };
      auto X = [&](int i, int j) { return x(i - 1, j - 1); };
      auto sq = [](double v) { return v * v; };
      const double expected[][3] = {
          {2, 2, sq(X(1, 3)) + sq(X(1, 4)) + sq(X(2, 3)) + sq(X(2, 4))},
          {3, 3, sq(X(3, 1)) + sq(X(3, 2)) + sq(X(4, 1)) + sq(X(4, 2))},
          {4, 4, sq(X(3, 3)) + sq(X(3, 4)) + sq(X(4, 3)) + sq(X(4, 4))},
          {1, 2, X(1, 2) * X(1, 4) + X(2, 2) * X(2, 4)},
          {1, 3, X(2, 1) * X(4, 1) + X(2, 2) * X(4, 2)},
          {1, 4, X(2, 2) * X(4, 4)},
          {2, 3, X(2, 4) * X(4, 2)},
          {2, 4, X(2, 3) * X(4, 3) + X(2, 4) * X(4, 4)},
          {3, 4, X(3, 2) * X(3, 4) + X(4, 2) * X(4, 4)},
      };
      for (const auto& e : expected) {
        pattern = std::max(pattern, std::abs(R(int(e[0]), int(e[1])) - e[2]));
        pattern = std::max(pattern, std::abs(R(int(e[1]), int(e[0])) - e[2]));
      }
      window11 = std::max(window11, std::abs(R(1, 1) - (sq(X(1, 1)) + sq(X(1, 2)) + sq(X(2, 1)) + sq(X(2, 2)))));
      printed11 = std::max(printed11, std::abs(R(1, 1) - (sq(X(1, 1)) + sq(X(1, 2)) + sq(X(1, 3)) + sq(X(1, 4)))));
    }
    const bool ok = chan <= 1e-12 && branch_sum <= 1e-10 && pattern <= 1e-12;
    return Outcome{ok, fmt("100 inputs, channel %.1e, branch sum %.1e, 15 pattern entries %.1e; entry (1,1): "
                           "oracle equals x11^2+x12^2+x21^2+x22^2 (%.1e) and deviates from x11^2+..+x14^2 by up to %.3f",
                           chan, branch_sum, pattern, window11, printed11)};
  });

  run("C5", "reverse-mode gradient vs finite differences", [] {
    std::mt19937_64 rng(105);
    std::uniform_real_distribution<double> a(0, 2 * M_PI);
    const auto t0 = std::chrono::steady_clock::now();
    double worst[2] = {0.0, 0.0};
    for (int which = 0; which < 2; ++which) {
      for (int point = 0; point < 20; ++point) {
        auto model = which == 0 ? bas_model() : mnist_model();
        for (auto& p : model.params) p = a(rng);
        std::vector<PureState> xs;
        std::vector<int> ys;
        const int d = model.layout.sizes[0];
        for (int i = 0; i < 4; ++i) {
          xs.push_back(qdl_encode(Tensor::from_matrix(oracle::random_rank1(d, d, rng)), model.layout));
          ys.push_back(i % 2);
        }
        std::vector<double> g;
        gradient(model, xs, ys, g);
        const auto fd = oracle::fd_gradient(model, xs, ys, 1e-5);
        for (std::size_t i = 0; i < g.size(); ++i) worst[which] = std::max(worst[which], oracle::rel_err(g[i], fd[i]));
      }
    }
    const double s = elapsed(t0);
    return Outcome{worst[0] < 1e-4 && worst[1] < 1e-4 && s < 60.0,
                   fmt("20 points each, max rel err 10-param %.1e, 30-param %.1e (< 1e-4), %.1fs (< 60s)", worst[0], worst[1], s)};
  });

  run("C6", "parameter accounting", [] {
    std::string printed;
    bool ok = true;
    for (const auto& [name, expect, count] : {std::tuple{"bas.json", "conv 2 + dense 8 = 10", 10},
                                             std::tuple{"custom_bas.json", "conv 2 + dense 8 = 10", 10},
                                             std::tuple{"mnist8.json", "conv 2 + dense 28 = 30", 30}}) {
      auto cfg = recipe(name, std::string("accounting_") + name);
      cfg.train.epochs = 0;
      cfg.train.seeds = 1;
      std::ostringstream log, err;
      const int rc = cmd_train(cfg, log, err);
      const auto summary = nlohmann::json::parse(slurp(fs::path(cfg.output_dir) / "run_summary.json"));
      ok = ok && rc == kExitOk && log.str().find(expect) != std::string::npos && summary["params_count"] == count;
      printed += std::string(name) + ": " + expect + "; ";
    }
    return Outcome{ok, printed};
  });

  Trained bas;
  run("C7", "bars and stripes 4x4 end-to-end", [&] {
    bas = train_recipe("bas.json", "bas");
    return accuracy_gate(bas, 0.89, 600.0);
  });

  run("C8", "custom bars and stripes end-to-end", [] { return accuracy_gate(train_recipe("custom_bas.json", "custom_bas"), 0.86, 600.0); });

  run("C9", "8x8 digits (0 vs 1) end-to-end", [] { return accuracy_gate(train_recipe("mnist8.json", "mnist8"), 0.85, 3600.0); });

  run("C10", "exhaustive readout search", [] {
    const SubspaceBasis basis(6, 2);
    const auto events = collision_free_configurations(6, 2);
    const std::vector<std::size_t> truth{0, 2, 5, 6, 9, 12, 13, 14};
    std::mt19937_64 rng(110);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<RVector> dists;
    std::vector<int> labels;
    for (int i = 0; i < 200; ++i) {
      const int label = i % 2;
      RVector d = RVector::Zero(Eigen::Index(basis.size()));
      for (std::size_t e = 0; e < events.size(); ++e) {
        const bool in0 = std::find(truth.begin(), truth.end(), e) != truth.end();
        d[Eigen::Index(basis.index(events[e]))] = in0 == (label == 0) ? u(rng) : 0.02 * u(rng);
      }
      // bunched outcomes carry mass too; the readout discards them
      d[0] = u(rng);
      dists.push_back(d / d.sum());
      labels.push_back(label);
    }
    const auto r = train_readout(dists, labels, basis, ReadoutStrategy::Cluster);
    return Outcome{r.candidates == 12870 && r.train_accuracy == 1.0,
                   fmt("%zu candidates (expected 12870), best training accuracy %.3f", r.candidates, r.train_accuracy)};
  });

  run("C11", "pooling nonlinearity witness", [] {
    std::mt19937_64 rng(111);
    std::normal_distribution<double> g;
    const RegisterLayout layout({4, 4});
    auto basis = enumerate_basis(8, 2);
    const std::vector<int> regs{4, 4};
    RMatrix x(4, 4), y(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        x(i, j) = g(rng);
        y(i, j) = g(rng);
      }
    auto enc = [&](const RMatrix& t) { return tensor_encode(Tensor::from_matrix(t), basis, regs); };
    const auto spec = PoolingSpec::halving(layout);
    const double lam = 0.3;
    const CMatrix of_mix = pooling_channel(enc(lam * x + (1 - lam) * y), spec).rho;
    const CMatrix mix_of = lam * pooling_channel(enc(x), spec).rho + (1 - lam) * pooling_channel(enc(y), spec).rho;
    const double gap = (of_mix - mix_of).cwiseAbs().maxCoeff();
    const double purity = std::abs((of_mix * of_mix).trace());
    return Outcome{gap > 1e-3 && purity < 1.0 - 1e-3,
                   fmt("lambda=0.3: max |rho(mix) - mix(rho)| = %.3f; output purity %.3f < 1 (no unitary maps a pure "
                       "state to a mixed one)",
                       gap, purity)};
  });

  run("C12", "determinism of metrics", [&] {
    if (bas.rc != kExitOk) return Outcome{false, "first bars-and-stripes run did not complete"};
    const auto again = train_recipe("bas.json", "bas_repeat");
    if (again.rc != kExitOk) return Outcome{false, "second run exited with " + std::to_string(again.rc)};
    int same = 0;
    for (int s = 0; s < 5; ++s) {
      const auto name = "metrics_seed" + std::to_string(s) + ".csv";
      const auto a = slurp(kRuns / "bas" / name);
      same += !a.empty() && a == slurp(kRuns / "bas_repeat" / name);
    }
    return Outcome{same == 5, fmt("%d/5 metrics CSV files byte-identical across two runs", same)};
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
