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

#include "ambient/reconstruction.hpp"
#include "ambient/scene.hpp"

#include <vector>

namespace ambient
{

struct TruthChannel
{
    ComplexMatrix h;
    std::vector<Path> paths;

    bool is_zero() const { return h.squaredNorm() == 0.0; }
};

// Benchmark channel: every true face, including object backs, at the true UE
// position with the true materials, through the reconstruction path formulas.
TruthChannel ground_truth_channel(const SurfaceSet& true_surfaces, const UeTruth& ue, const ChannelContext& ctx);
TruthChannel ground_truth_channel(const Scene& scene, const UeTruth& ue, const ChannelContext& ctx);

} // namespace ambient
