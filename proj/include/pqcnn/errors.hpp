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

#include <stdexcept>
#include <string>

namespace pqcnn {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A basis would exceed the configured state cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Sizes of vectors, matrices, bases or registers do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Zero vector or tensor where a normalizable one is required.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Parameter vector does not cover a circuit's slots, or a value is not finite.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Layer geometry is inconsistent (filter size, pooling pattern, ...).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Image is not rank-1 and cannot be loaded by the separable data loader.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Malformed dataset, model or config file.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Dataset content is unusable (empty class, too few samples, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite loss or other numerical breakdown.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pqcnn
