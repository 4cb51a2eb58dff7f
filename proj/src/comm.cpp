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

#include "ambient/comm.hpp"

#include "ambient/errors.hpp"

#include <cmath>

namespace ambient
{

std::optional<std::size_t> strongest_path(const std::vector<Path>& paths, FlagMode mode)
{
    std::optional<std::size_t> best;
    double best_mag = 0.0;
    for (std::size_t i = 0; i < paths.size(); ++i)
    {
        const double mag = path_flag(paths[i], mode) ? std::abs(paths[i].gain) : 0.0;
        if (mag > best_mag)
        {
            best = i;
            best_mag = mag;
        }
    }
    return best;
}

Beamformers design_beamformers(const Path& path, const UcaSpec& ap_array, const UlaSpec& ue_array)
{
    return {conjugate_tx_beamformer(path.aod, ap_array), ula_combiner(path.aoa, ue_array)};
}

std::vector<LinkGains> link_gains(const std::vector<std::vector<Path>>& reconstructed,
                                  const std::vector<ComplexMatrix>& truth, const std::vector<UlaSpec>& ue_arrays,
                                  const UcaSpec& ap_array, FlagMode mode)
{
    const std::size_t m = reconstructed.size();
    if (truth.size() != m || ue_arrays.size() != m)
        throw ConfigError("link_gains: one path list, channel and array per UE required");
    for (std::size_t i = 0; i < m; ++i)
        if (truth[i].rows() != ue_arrays[i].n_antennas || truth[i].cols() != ap_array.n_antennas)
            throw ConfigError("link_gains: channel dimensions do not match the arrays");

    std::vector<LinkGains> gains(m);
    std::vector<std::optional<Beamformers>> beams(m);
    for (std::size_t i = 0; i < m; ++i)
    {
        gains[i].selected = strongest_path(reconstructed[i], mode);
        if (!gains[i].selected)
            continue;
        const Path& p = reconstructed[i][*gains[i].selected];
        beams[i] = design_beamformers(p, ap_array, ue_arrays[i]);
        gains[i].approx_signal =
            std::norm(p.gain) * ap_array.n_antennas * static_cast<double>(ue_arrays[i].n_antennas);
    }

    for (std::size_t i = 0; i < m; ++i)
    {
        if (!beams[i])
            continue;
        const ComplexRowVector wh = beams[i]->rx * truth[i];
        for (std::size_t j = 0; j < m; ++j)
        {
            if (!beams[j])
                continue;
            const double g = std::norm((wh * beams[j]->tx)(0, 0));
            if (j == i)
                gains[i].signal = g;
            else
                gains[i].interference += g;
        }
    }
    return gains;
}

LinkResult evaluate_link(const LinkGains& gains, const LinkBudget& budget)
{
    LinkResult r;
    r.selected = gains.selected;
    if (!gains.selected)
        return r;
    r.signal_power = budget.tx_power * gains.signal;
    r.interference_power = budget.tx_power * gains.interference;
    const double denom = r.interference_power + budget.noise_variance;
    r.sinr = r.signal_power / denom;
    r.rate = budget.bandwidth * std::log2(1.0 + r.sinr);
    r.approx_rate = budget.bandwidth * std::log2(1.0 + budget.tx_power * gains.approx_signal / denom);
    return r;
}

std::vector<LinkResult> evaluate_links(const std::vector<std::vector<Path>>& reconstructed,
                                       const std::vector<ComplexMatrix>& truth,
                                       const std::vector<UlaSpec>& ue_arrays, const UcaSpec& ap_array,
                                       FlagMode mode, const LinkBudget& budget)
{
    if (!(budget.tx_power > 0.0) || !(budget.noise_variance > 0.0) || !(budget.bandwidth > 0.0))
        throw ConfigError("link budget entries must be positive");
    std::vector<LinkResult> out;
    for (const auto& g : link_gains(reconstructed, truth, ue_arrays, ap_array, mode))
        out.push_back(evaluate_link(g, budget));
    return out;
}

} // namespace ambient
