// Copyright 2026 The BGL Authors.
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

#ifndef BGL_ERROR_HPP_
#define BGL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace bgl {

// Error categories. The C API and the CLI map these onto status codes and
// process exit codes, so the set is closed.
enum class ErrorKind {
  kConfig,              // malformed configuration, dimension mismatch
  kDomain,              // infeasible strategy, invalid belief, bad argument
  kNumeric,             // non-finite values
  kSolver,              // inner solver exceeded its iteration budget
  kImpossibleEvidence,  // every posterior weight is -inf
  kInvariant,           // internal invariant violated (e.g. theta(s*) == 0)
  kUndefinedRate,       // decay rate requested for an equivalent parameter
  kIo,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Configuration error that remembers where in the source document it came
// from. `line` is 1-based; 0 means unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0);
  const std::string& field() const { return field_; }
  // The message without the field and line prefix.
  const std::string& message() const { return message_; }
  int line() const { return line_; }

 private:
  std::string field_;
  std::string message_;
  int line_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace bgl

#endif  // BGL_ERROR_HPP_
