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

#include "longsent/error.hpp"

namespace longsent {

int exit_status(ErrorClass kind) noexcept {
  switch (kind) {
    case ErrorClass::kUsage:
      return 2;
    case ErrorClass::kIo:
      return 3;
    case ErrorClass::kProtocol:
      return 4;
  }
  return 1;
}

const char* error_class_name(ErrorClass kind) noexcept {
  switch (kind) {
    case ErrorClass::kUsage:
      return "config";
    case ErrorClass::kIo:
      return "io";
    case ErrorClass::kProtocol:
      return "remote";
  }
  return "internal";
}

}  // namespace longsent
