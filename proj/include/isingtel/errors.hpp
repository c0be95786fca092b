// Copyright 2026 The isingtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace isingtel {

/// Caller supplied something outside an operation's domain (bad shape,
/// out-of-range index, invalid configuration). The CLI maps these to exit 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class InvalidConfig : public InputError {
 public:
  using InputError::InputError;
};

/// An operator that was expected to live in S*_h has entries outside the
/// block template of its direction.
class PatternViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No Z^a X^b (optionally followed by H) restores the teleported state.
/// Means an upstream gate or basis transcription is wrong.
class ProtocolBreakage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace isingtel
