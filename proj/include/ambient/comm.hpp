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

#include "ambient/arrays.hpp"
#include "ambient/reconstruction.hpp"

#include <optional>
#include <vector>

namespace ambient
{

struct LinkBudget
{
    double tx_power = 1.0;
    double noise_variance = 1.0;
    double bandwidth = 1e9;
};

// argmax |flag * alpha| with the lowest index winning ties; empty if all are zero.
std::optional<std::size_t> strongest_path(const std::vector<Path>& paths, FlagMode mode);

struct Beamformers
{
    ComplexVector tx;
    ComplexRowVector rx;
};

// f = a_T(AoD) / sqrt(N_T), w = a_ue^H(AoA) / sqrt(N_ue).
Beamformers design_beamformers(const Path& path, const UcaSpec& ap_array, const UlaSpec& ue_array);

// Power-independent link quantities for one UE.
struct LinkGains
{
    std::optional<std::size_t> selected;
    // |w_m H_m f_m|^2
    double signal = 0.0;
    // sum over other served UEs i of |w_m H_m f_i|^2
    double interference = 0.0;
    // |alpha_hat|^2 N_T N_ue of the selected reconstructed path
    double approx_signal = 0.0;
};

struct LinkResult
{
    std::optional<std::size_t> selected;
    double signal_power = 0.0;
    double interference_power = 0.0;
    double sinr = 0.0;
    double rate = 0.0;
    // Rate with the single-path signal term in place of |w H f|^2.
    double approx_rate = 0.0;
};

// One entry per UE; the true channels carry signal and interference.
// Throws ConfigError on mismatched sizes.
std::vector<LinkGains> link_gains(const std::vector<std::vector<Path>>& reconstructed,
                                  const std::vector<ComplexMatrix>& truth, const std::vector<UlaSpec>& ue_arrays,
                                  const UcaSpec& ap_array, FlagMode mode);

LinkResult evaluate_link(const LinkGains& gains, const LinkBudget& budget);

std::vector<LinkResult> evaluate_links(const std::vector<std::vector<Path>>& reconstructed,
                                       const std::vector<ComplexMatrix>& truth,
                                       const std::vector<UlaSpec>& ue_arrays, const UcaSpec& ap_array,
                                       FlagMode mode, const LinkBudget& budget);

} // namespace ambient
