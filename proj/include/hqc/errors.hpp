// Copyright 2026 The hqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace hqc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotUnitary : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Raised when an eigenvalue gap sits too close to the clustering threshold
/// to decide whether two eigenvalues belong to the same level.
class ClusteringAmbiguity : public Error {
 public:
  ClusteringAmbiguity(const std::string& what, double gap, double threshold)
      : Error(what), gap_(gap), threshold_(threshold) {}
  double gap() const { return gap_; }
  double threshold() const { return threshold_; }

 private:
  double gap_;
  double threshold_;
};

class DiscontinuousJoin : public Error {
 public:
  DiscontinuousJoin(const std::string& what, std::size_t left, double jump)
      : Error(what), left_(left), jump_(jump) {}
  /// Index of the path (or segment) on the left of the offending join.
  std::size_t left_index() const { return left_; }
  double jump() const { return jump_; }

 private:
  std::size_t left_;
  double jump_;
};

/// Level correspondence between neighbouring samples could not be established,
/// or the sampling is too coarse for the overlap to stay well conditioned.
class TrackingError : public Error {
 public:
  using Error::Error;
};

class AdiabaticityFailure : public Error {
 public:
  AdiabaticityFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class SpectralCollision : public Error {
 public:
  using Error::Error;
};

class FactorizationFailure : public Error {
 public:
  FactorizationFailure(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace hqc
