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

#include <Eigen/Dense>

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

namespace ambient
{

using ComplexVector = Eigen::VectorXcd;
using ComplexRowVector = Eigen::RowVectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Uniform circular array at the access point.
struct UcaSpec
{
    int n_antennas = 64;
    double radius = 0.0;
    double wavelength = 0.005;

    // Radius chosen so that the aperture 2r equals n * wavelength / pi.
    static UcaSpec standard(int n_antennas, double wavelength);

    double aperture() const { return 2.0 * radius; }
};

// Uniform linear array with elements spaced one wavelength apart.
struct UlaSpec
{
    int n_antennas = 32;
    double wavelength = 0.005;
    double orientation = 0.0;
};

ComplexVector uca_steering(double theta, const UcaSpec& spec);

// Entry n is exp(-j 2 pi n cos(theta)); theta is measured from the array axis.
ComplexVector ula_steering(double theta, const UlaSpec& spec);

// Normalized beam pattern |a^H(steer) a(theta) / N|^2.
double uca_beam_gain(double steer, double theta, const UcaSpec& spec);
double ula_beam_gain(double steer, double theta, const UlaSpec& spec);

// Angular extent of the main lobe on each side of the steering direction
// where the normalized pattern stays at or above one half.
struct LobeExtent
{
    double below = 0.0;
    double above = 0.0;

    double width() const { return below + above; }
    bool contains_offset(double offset) const { return offset >= -below && offset <= above; }
};

LobeExtent uca_half_power_lobe(double theta_k, const UcaSpec& spec);
LobeExtent ula_half_power_lobe(double theta_k, const UlaSpec& spec);

// Half-power beamwidth W(theta_k, N) of the circular array.
double half_power_beamwidth(double theta_k, const UcaSpec& spec);

// f = a_T(theta) / sqrt(N).
ComplexVector conjugate_tx_beamformer(double theta, const UcaSpec& spec);
// w = a_R^H(theta) / sqrt(N).
ComplexRowVector conjugate_rx_combiner(double theta, const UcaSpec& spec);
// w = a_ue^H(theta) / sqrt(N_ue).
ComplexRowVector ula_combiner(double theta, const UlaSpec& spec);

// Beamwidth of a circular array at arbitrary steering angles.
//
// The UCA pattern is invariant under rotation by 2*pi/N and under reflection,
// so W(theta) is tabulated over [0, pi/N] and linearly interpolated.
class BeamwidthTable
{
  public:
    explicit BeamwidthTable(const UcaSpec& spec, int samples = 32);

    double at(double theta) const;
    const UcaSpec& spec() const { return spec_; }

  private:
    UcaSpec spec_;
    double half_period_ = 0.0;
    std::vector<double> widths_;
};

// Per-direction beamwidths W(theta_k, N) for the K probing beams, plus
// arbitrary-angle tables, built lazily and shared read-only afterwards.
class BeamwidthCache
{
  public:
    const std::vector<double>& probe_widths(const UcaSpec& spec, int n_beams);
    const BeamwidthTable& table(const UcaSpec& spec);

  private:
    using ArrayKey = std::tuple<int, double, double>;

    static ArrayKey key_of(const UcaSpec& spec) { return {spec.n_antennas, spec.radius, spec.wavelength}; }

    std::mutex mutex_;
    std::map<std::pair<ArrayKey, int>, std::unique_ptr<std::vector<double>>> probes_;
    std::map<ArrayKey, std::unique_ptr<BeamwidthTable>> tables_;
};

} // namespace ambient
