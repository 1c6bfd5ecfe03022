// Copyright 2026 The longsent Authors.
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

namespace longsent {

// Error classes map 1:1 onto CLI exit statuses.
enum class ErrorClass {
  kUsage,     // bad arguments or configuration, exit 2
  kIo,        // unreadable/unwritable file or malformed file layout, exit 3
  kProtocol,  // remote classifier failure or malformed response, exit 4
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorClass kind() const noexcept { return kind_; }

 private:
  ErrorClass kind_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorClass::kUsage, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorClass::kIo, what) {}
};

// Response did not follow the wire protocol (wrong length, out-of-range score).
class ProtocolError : public Error {
 public:
  explicit ProtocolError(const std::string& what) : Error(ErrorClass::kProtocol, what) {}
};

// Endpoint kept failing after all retry attempts.
class RemoteError : public Error {
 public:
  explicit RemoteError(const std::string& what) : Error(ErrorClass::kProtocol, what) {}
};

int exit_status(ErrorClass kind) noexcept;
const char* error_class_name(ErrorClass kind) noexcept;

}  // namespace longsent
