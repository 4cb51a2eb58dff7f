// SPDX-License-Identifier: Apache-2.0
//
// ambientsim - mmWave ambient perception and channel reconstruction simulator
// Copyright (C) 2026 The ambientsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>

namespace ambient
{

// Invalid configuration or input file.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A simulation step could not produce a result (e.g. rejection sampling ran out).
class SimulationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ambient
