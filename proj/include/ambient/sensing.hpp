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
#include "ambient/geometry.hpp"
#include "ambient/surface.hpp"

#include <complex>
#include <iosfwd>
#include <limits>
#include <vector>

namespace ambient
{

inline constexpr double kSpeedOfLight = 299792458.0;

struct FmcwParams
{
    double carrier = 60e9;
    // 1 GHz swept over 100 us.
    double chirp_rate = 1e13;
    double chirp_duration = 1e-4;
    double tx_power = 1.0;

    double wavelength() const { return kSpeedOfLight / carrier; }

    // Throws ConfigError unless f_c, f' > 0 and the sweep stays below 10% of f_c.
    void validate() const;
};

// theta_k = 2*pi*k/K for k = 1..K.
std::vector<double> probe_directions(int n_beams);

// Tau from a measured beat frequency: f_b / (2 f').
double beat_to_delay(double beat_hz, double chirp_rate);
// Inverse of beat_to_delay.
double delay_to_beat(double delay_s, double chirp_rate);

// Single-bounce reflection geometry. phi_re = -phi_in is implied.
struct ReflectionGeometry
{
    double phi_in = 0.0;
    double phi_r = 0.0;
    double d_t = 0.0;
    double d_r = 0.0;
    double beamwidth = 0.0;
    double aperture = 0.0;
    double eta = 0.25;
};

// Collocated transmitter and receiver: phi_R = phi_in, D_R = D_T = c*tau, A = 2r.
ReflectionGeometry monostatic_geometry(double tau, double phi_in, double beamwidth, double radius, double eta);

// Share of the illuminated strip captured by the receive aperture, in [0, 1].
double specular_overlap(const ReflectionGeometry& g);
// cos(phi_in) cos(phi_R) A / sqrt(4 D_R^2 + A^2).
double diffuse_capture(const ReflectionGeometry& g);

// P_re,s / P_in and P_re,d / P_in.
double specular_power_fraction(const ReflectionGeometry& g, const Material& m);
double diffuse_power_fraction(const ReflectionGeometry& g, const Material& m);

// Complex reflection coefficient; |alpha|^2 is the sum of both fractions.
// Throws SimulationError on a non-finite result.
std::complex<double> reflection_coefficient(const ReflectionGeometry& g, const Material& m, double wavelength);

struct Target
{
    int k = 0;
    double theta = 0.0;
    double tau = std::numeric_limits<double>::infinity();
    std::complex<double> alpha{0.0, 0.0};
    bool valid = false;

    // Reflection point at c*tau along theta.
    Point2 position() const;
};

struct SensingSetup
{
    UcaSpec array;
    int n_beams = 512;
    double eta = 0.25;
    double wavelength = kSpeedOfLight / 60e9;
};

// One probing beam. The centre ray and the two half-power edge rays must all
// hit the same surface first, otherwise the discarded sentinel is returned.
// Throws SimulationError when the centre ray escapes.
Target simulate_probe(const std::vector<ReflectiveSurface>& surfaces, int k, double beamwidth,
                      const SensingSetup& setup);

// Full sweep k = 1..K with per-beam widths from the cache.
std::vector<Target> sense_room(const std::vector<ReflectiveSurface>& surfaces, const SensingSetup& setup,
                               BeamwidthCache& cache);

// CSV with header k,theta_rad,tau_s,alpha_re,alpha_im,valid.
void write_targets_csv(std::ostream& out, const std::vector<Target>& targets);
std::vector<Target> read_targets_csv(std::istream& in);

} // namespace ambient
