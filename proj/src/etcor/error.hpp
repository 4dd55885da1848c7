// Copyright 2026 The etcor Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etcor {

enum class ErrorKind {
  kDimension,
  kDomain,
  kSingularity,
  kConvergence,
  kSynthesis,
  kParse,
  kDiverged,
  kNumeric,
  kCertificate,
  kIo,
};

/// Base of every exception thrown by the library. The kind maps one-to-one
/// onto the status codes of the C interface.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorKind::kDimension, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::kDomain, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what)
      : Error(ErrorKind::kSingularity, what) {}
};

class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what)
      : Error(ErrorKind::kConvergence, what) {}
};

class SynthesisError : public Error {
 public:
  explicit SynthesisError(const std::string& what)
      : Error(ErrorKind::kSynthesis, what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(ErrorKind::kParse,
              line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Thrown when the divergence guard trips. `agent` is 1-based; 0 denotes the
/// exosystem block of the state.
class DivergedError : public Error {
 public:
  DivergedError(double time, std::size_t agent)
      : Error(ErrorKind::kDiverged,
              "state diverged at t=" + std::to_string(time) + " (agent " +
                  std::to_string(agent) + ")"),
        time_(time),
        agent_(agent) {}

  double time() const noexcept { return time_; }
  std::size_t agent() const noexcept { return agent_; }

 private:
  double time_;
  std::size_t agent_;
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

class CertificateError : public Error {
 public:
  explicit CertificateError(const std::string& what)
      : Error(ErrorKind::kCertificate, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace etcor
