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

#include "ambient/scene.hpp"
#include "ambient/sensing.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ambient
{

enum class Scheme
{
    ApCr,
    ApCrf,
    ICr
};

std::string scheme_name(Scheme s);
// Accepts AP-CR, AP-CRF and I-CR; throws ConfigError otherwise.
Scheme parse_scheme(const std::string& name);

// Defaults reproduce the reference simulation table.
struct ExperimentConfig
{
    SceneConfig scene;
    FmcwParams fmcw;
    double bandwidth = 1e9;
    std::vector<int> beams{256, 512, 1024};
    std::vector<int> antennas{64, 96, 128, 160, 192, 224, 256};
    double eta = 0.25;
    double zeta = 5e-7;
    int num_ues = 10;
    int ue_antennas = 32;
    std::vector<double> sigma_e_sq{0.0, 0.0004, 0.0008, 0.0012, 0.0016, 0.002,
                                   0.0024, 0.0028, 0.0032, 0.0036, 0.004};
    double tx_power = 1.0;
    std::vector<Scheme> schemes{Scheme::ApCr, Scheme::ApCrf};
    std::vector<double> snr_db{-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
    int trials = 200;
    std::uint64_t seed = 1;
    // 0 selects the hardware concurrency.
    int threads = 0;
    double orthogonality_eps = 1e-3;
    bool least_squares = false;

    double wavelength() const { return fmcw.wavelength(); }

    // Throws ConfigError on any out-of-range entry.
    void validate() const;
};

// Flat key=value file with '#' comments. Unknown keys are errors. Relative
// material_table paths resolve against `base_dir`.
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Writes every key so the file can be read back by parse_config.
void write_config(std::ostream& out, const ExperimentConfig& cfg);

} // namespace ambient
