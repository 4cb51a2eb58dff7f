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

#include "ambient/oracle.hpp"

namespace ambient
{

TruthChannel ground_truth_channel(const SurfaceSet& true_surfaces, const UeTruth& ue, const ChannelContext& ctx)
{
    const UeEstimate exact{ue.position, ue.position, ue.n_antennas, ue.orientation};
    TruthChannel out;
    out.paths = enumerate_paths(true_surfaces, exact, ctx);
    for (auto& p : out.paths)
        p.feedback = p.exists;
    const UlaSpec ue_array{ue.n_antennas, ctx.wavelength(), ue.orientation};
    out.h = reconstruct_channel(out.paths, ue_array, ctx.array, FlagMode::Indicator);
    return out;
}

TruthChannel ground_truth_channel(const Scene& scene, const UeTruth& ue, const ChannelContext& ctx)
{
    return ground_truth_channel(SurfaceSet(true_front_surfaces(scene)), ue, ctx);
}

} // namespace ambient
