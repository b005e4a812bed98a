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
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pqcnn/layers.hpp"

namespace pqcnn {

/// One labelled image. For the bars-and-stripes family label 0 means
/// stripes (active rows) and label 1 means bars (active columns).
struct Sample {
  Tensor pixels;
  int label = 0;
  /// Loader angles per register, when the image was produced from them.
  std::optional<std::vector<std::vector<double>>> qdl_params;
};

struct DatasetSplit {
  std::vector<Sample> train;
  std::vector<Sample> test;
  std::uint64_t seed = 0;
  std::array<std::size_t, 2> train_counts{};
  std::array<std::size_t, 2> test_counts{};
};

inline std::array<std::size_t, 2> class_counts(const std::vector<Sample>& samples) {
  std::array<std::size_t, 2> c{0, 0};
  for (const auto& s : samples) ++c[static_cast<std::size_t>(s.label)];
  return c;
}

namespace detail {

/// Uniform mask over {0,1}^d with at least one 0 and one 1.
template <class Rng>
std::vector<int> random_partial_mask(int d, Rng& rng) {
  const std::uint64_t full = (std::uint64_t{1} << d) - 1;
  std::uniform_int_distribution<std::uint64_t> pick(1, full - 1);
  const std::uint64_t bits = pick(rng);
  std::vector<int> mask(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) mask[static_cast<std::size_t>(i)] = static_cast<int>((bits >> i) & 1U);
  return mask;
}

inline Tensor bas_image(int d1, int d2, int label, const std::vector<int>& mask) {
  Tensor t({static_cast<std::size_t>(d1), static_cast<std::size_t>(d2)});
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d2; ++j) {
      const bool on = label == 0 ? mask[static_cast<std::size_t>(i)] : mask[static_cast<std::size_t>(j)];
      t.at({std::size_t(i), std::size_t(j)}) = on ? 1.0 : 0.0;
    }
  return t;
}

}  // namespace detail

/// Bars-and-stripes images with alternating labels, shuffled.
inline std::vector<Sample> gen_bas(int d1, int d2, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw DataError("dataset size must be at least 1");
  if (d1 < 2 || d2 < 2 || d1 > 62 || d2 > 62) throw ShapeError("image sides must lie in [2, 62]");
  std::mt19937_64 rng(seed);
  std::vector<Sample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const auto mask = detail::random_partial_mask(label == 0 ? d1 : d2, rng);
    out.push_back(Sample{detail::bas_image(d1, d2, label, mask), label, std::nullopt});
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

/// Image produced by loader angles: outer product of the per-register
/// amplitude magnitudes, scaled so the brightest pixel is 1.
inline Tensor custom_bas_image(const std::vector<std::vector<double>>& angles) {
  const RVector a = simulate_loader(angles[0]).cwiseAbs();
  const RVector b = simulate_loader(angles[1]).cwiseAbs();
  RMatrix img = a * b.transpose();
  img /= img.maxCoeff();
  // cos(pi/2) residue from exact angles
  img = img.unaryExpr([](double x) { return x < 1e-12 ? 0.0 : (std::abs(x - 1.0) < 1e-12 ? 1.0 : x); });
  return Tensor::from_matrix(img);
}

/// Bars and stripes generated in loader-angle space: exact angles of a plain
/// pattern perturbed by Gaussian noise of standard deviation `sigma`.
inline std::vector<Sample> gen_custom_bas(std::size_t n, double sigma, std::uint64_t seed, int d = 4) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("sigma must be finite and non-negative");
  const auto plain = gen_bas(d, d, n, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Sample> out;
  out.reserve(n);
  for (const auto& s : plain) {
    const RankOneFactors f = rank_one_factors(s.pixels.to_matrix());
    std::vector<std::vector<double>> angles;
    for (const RVector* v : {&f.rows, &f.cols}) {
      auto a = qdl_loader_angles(std::span<const double>(v->data(), static_cast<std::size_t>(v->size())));
      for (auto& x : a) x += sigma * noise(rng);
      angles.push_back(std::move(a));
    }
    out.push_back(Sample{custom_bas_image(angles), s.label, angles});
  }
  return out;
}

/// Loader state of a sample: stored angles are replayed exactly, otherwise
/// the pixels go through the rank-1 loader.
inline PureState encode_sample(const Sample& s, const RegisterLayout& layout, bool nearest_rank1 = false) {
  if (s.qdl_params) return qdl_encode_angles(*s.qdl_params, layout);
  return qdl_encode(s.pixels, layout, nearest_rank1);
}

// ---------------------------------------------------------------------------
// Files

namespace detail {

struct CsvRow {
  std::size_t line = 0;
  std::vector<double> values;
};

inline bool parse_double(std::string_view tok, double& out) {
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) tok.remove_suffix(1);
  if (tok.empty()) return false;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size() && std::isfinite(out);
}

/// Numeric rows of a CSV file. Lines starting with '#', blank lines and a
/// non-numeric first line are skipped.
inline std::vector<CsvRow> read_csv(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<CsvRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool seen_data = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r" || line.front() == '#') continue;
    std::vector<double> vals;
    bool ok = true;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      double v = 0.0;
      const std::string_view tok(line.data() + start, (comma == std::string::npos ? line.size() : comma) - start);
      if (!parse_double(tok, v)) {
        ok = false;
        break;
      }
      vals.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!ok && !seen_data && rows.empty()) {
      seen_data = true;  // column-name header
      continue;
    }
    seen_data = true;
    if (!ok) throw ParseError(path + ":" + std::to_string(lineno) + ": malformed value");
    if (vals.size() != columns) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(columns) + " columns, got " +
                       std::to_string(vals.size()));
    }
    rows.push_back(CsvRow{lineno, std::move(vals)});
  }
  return rows;
}

inline std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

/// Writes `p1,...,p(d1*d2),label` rows behind a '#' header line.
inline void write_dataset_csv(const std::string& path, const std::vector<Sample>& samples) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  if (samples.empty()) throw DataError("refusing to write an empty dataset");
  const auto& shape = samples.front().pixels.shape();
  out << "# pqcnn dataset d1=" << shape[0] << " d2=" << shape[1] << " rows=" << samples.size() << "\n";
  for (const auto& s : samples) {
    for (double p : s.pixels.data()) out << detail::format_double(p) << ',';
    out << s.label << '\n';
  }
  if (!out) throw ParseError("write failed: " + path);
}

/// Reads a dataset written by write_dataset_csv with images of d1 x d2.
inline std::vector<Sample> read_dataset_csv(const std::string& path, int d1, int d2) {
  const std::size_t npix = static_cast<std::size_t>(d1) * static_cast<std::size_t>(d2);
  std::vector<Sample> out;
  for (auto& row : detail::read_csv(path, npix + 1)) {
    const double label = row.values.back();
    if (label != 0.0 && label != 1.0) throw ParseError(path + ":" + std::to_string(row.line) + ": label must be 0 or 1");
    row.values.pop_back();
    out.push_back(Sample{Tensor({std::size_t(d1), std::size_t(d2)}, std::move(row.values)), static_cast<int>(label), std::nullopt});
  }
  if (out.empty()) throw DataError(path + ": no samples");
  return out;
}

/// Writes the per-sample loader angles as a JSON array.
inline void write_angles_json(const std::string& path, const std::vector<Sample>& samples) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : samples) {
    if (!s.qdl_params) throw DataError("sample has no loader angles");
    j.push_back(*s.qdl_params);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump() << '\n';
}

/// Attaches angles from a sidecar written by write_angles_json.
inline void read_angles_json(const std::string& path, std::vector<Sample>& samples) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!j.is_array() || j.size() != samples.size()) throw ParseError(path + ": expected one angle entry per sample");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    try {
      samples[i].qdl_params = j[i].get<std::vector<std::vector<double>>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": entry " + std::to_string(i) + ": " + e.what());
    }
  }
}

/// 8x8 digits file: 64 pixels in [0,16] row-major, then the digit.
/// Keeps the two requested digits, mapped to labels 0 and 1.
inline std::vector<Sample> load_mnist8(const std::string& path, std::pair<int, int> digits) {
  if (digits.first == digits.second) throw ConfigError("digit pair must name two different digits");
  std::vector<Sample> out;
  for (const auto& row : detail::read_csv(path, 65)) {
    const std::string where = path + ":" + std::to_string(row.line);
    const double digit = row.values[64];
    if (digit != std::floor(digit) || digit < 0 || digit > 9) throw ParseError(where + ": digit must be an integer in [0, 9]");
    const int dg = static_cast<int>(digit);
    if (dg != digits.first && dg != digits.second) continue;
    std::vector<double> pix(row.values.begin(), row.values.begin() + 64);
    double peak = 0.0;
    for (double& p : pix) {
      if (p < 0.0 || p > 16.0) throw ParseError(where + ": pixel outside [0, 16]");
      p /= 16.0;
      peak = std::max(peak, p);
    }
    if (peak == 0.0) throw DataError(where + ": all-zero image cannot be loaded");
    out.push_back(Sample{Tensor({8, 8}, std::move(pix)), dg == digits.first ? 0 : 1, std::nullopt});
  }
  const auto counts = class_counts(out);
  if (counts[0] == 0 || counts[1] == 0) {
    throw DataError(path + ": digit " + std::to_string(counts[0] == 0 ? digits.first : digits.second) + " has no samples");
  }
  return out;
}

/// Shuffles with `seed`, then takes the first train_n and the next test_n.
inline DatasetSplit split(std::vector<Sample> samples, std::size_t train_n, std::size_t test_n, std::uint64_t seed) {
  if (train_n + test_n > samples.size()) {
    throw DataError("split needs " + std::to_string(train_n + test_n) + " samples, have " + std::to_string(samples.size()));
  }
  std::mt19937_64 rng(seed);
  std::shuffle(samples.begin(), samples.end(), rng);
  DatasetSplit s;
  s.seed = seed;
  s.train.assign(std::make_move_iterator(samples.begin()), std::make_move_iterator(samples.begin() + static_cast<std::ptrdiff_t>(train_n)));
  s.test.assign(std::make_move_iterator(samples.begin() + static_cast<std::ptrdiff_t>(train_n)),
                std::make_move_iterator(samples.begin() + static_cast<std::ptrdiff_t>(train_n + test_n)));
  s.train_counts = class_counts(s.train);
  s.test_counts = class_counts(s.test);
  return s;
}

}  // namespace pqcnn
