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

#include "ambient/arrays.hpp"

#include "ambient/geometry.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace ambient
{
namespace
{

using cd = std::complex<double>;

constexpr double kHalfPower = 0.5;
constexpr double kBisectTol = 1e-9;

// Distance from the steering direction to the first half-power crossing on
// one side. `gain` takes an angular offset.
template <typename Gain>
double half_power_offset(Gain&& gain, double step, double limit)
{
    double inside = 0.0;
    double outside = step;
    while (gain(outside) >= kHalfPower)
    {
        inside = outside;
        if (outside >= limit)
            return limit;
        outside = std::min(outside + step, limit);
    }
    while (outside - inside > kBisectTol)
    {
        const double mid = 0.5 * (inside + outside);
        if (gain(mid) >= kHalfPower)
            inside = mid;
        else
            outside = mid;
    }
    return 0.5 * (inside + outside);
}

} // namespace

UcaSpec UcaSpec::standard(int n_antennas, double wavelength)
{
    if (n_antennas < 1 || !(wavelength > 0.0))
        throw std::invalid_argument("UcaSpec: need n_antennas >= 1 and wavelength > 0");
    return UcaSpec{n_antennas, n_antennas * wavelength / kTwoPi, wavelength};
}

ComplexVector uca_steering(double theta, const UcaSpec& spec)
{
    const int n = spec.n_antennas;
    const double kr = kTwoPi / spec.wavelength * spec.radius;
    ComplexVector a(n);
    for (int i = 0; i < n; ++i)
        a(i) = std::polar(1.0, kr * std::cos(theta - kTwoPi * i / n));
    return a;
}

ComplexVector ula_steering(double theta, const UlaSpec& spec)
{
    const int n = spec.n_antennas;
    const double c = std::cos(theta);
    ComplexVector a(n);
    for (int i = 0; i < n; ++i)
        a(i) = std::polar(1.0, -kTwoPi * i * c);
    return a;
}

double uca_beam_gain(double steer, double theta, const UcaSpec& spec)
{
    const int n = spec.n_antennas;
    const double kr = kTwoPi / spec.wavelength * spec.radius;
    cd sum = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double phi = kTwoPi * i / n;
        sum += std::polar(1.0, kr * (std::cos(theta - phi) - std::cos(steer - phi)));
    }
    return std::norm(sum / static_cast<double>(n));
}

double ula_beam_gain(double steer, double theta, const UlaSpec& spec)
{
    const int n = spec.n_antennas;
    const double u = std::cos(theta) - std::cos(steer);
    cd sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += std::polar(1.0, -kTwoPi * i * u);
    return std::norm(sum / static_cast<double>(n));
}

LobeExtent uca_half_power_lobe(double theta_k, const UcaSpec& spec)
{
    const double step = std::min(kPi / 2.0, 0.1 / spec.n_antennas);
    auto above = [&](double d) { return uca_beam_gain(theta_k, theta_k + d, spec); };
    auto below = [&](double d) { return uca_beam_gain(theta_k, theta_k - d, spec); };
    return {half_power_offset(below, step, kPi / 2.0), half_power_offset(above, step, kPi / 2.0)};
}

LobeExtent ula_half_power_lobe(double theta_k, const UlaSpec& spec)
{
    const double step = 0.02 / spec.n_antennas;
    auto above = [&](double d) { return ula_beam_gain(theta_k, theta_k + d, spec); };
    auto below = [&](double d) { return ula_beam_gain(theta_k, theta_k - d, spec); };
    return {half_power_offset(below, step, kPi), half_power_offset(above, step, kPi)};
}

double half_power_beamwidth(double theta_k, const UcaSpec& spec)
{
    return uca_half_power_lobe(theta_k, spec).width();
}

ComplexVector conjugate_tx_beamformer(double theta, const UcaSpec& spec)
{
    return uca_steering(theta, spec) / std::sqrt(static_cast<double>(spec.n_antennas));
}

ComplexRowVector conjugate_rx_combiner(double theta, const UcaSpec& spec)
{
    return uca_steering(theta, spec).adjoint() / std::sqrt(static_cast<double>(spec.n_antennas));
}

ComplexRowVector ula_combiner(double theta, const UlaSpec& spec)
{
    return ula_steering(theta, spec).adjoint() / std::sqrt(static_cast<double>(spec.n_antennas));
}

BeamwidthTable::BeamwidthTable(const UcaSpec& spec, int samples)
    : spec_(spec), half_period_(kPi / spec.n_antennas)
{
    if (samples < 1)
        throw std::invalid_argument("BeamwidthTable: samples must be positive");
    widths_.resize(samples + 1);
    for (int i = 0; i <= samples; ++i)
        widths_[i] = half_power_beamwidth(half_period_ * i / samples, spec_);
}

double BeamwidthTable::at(double theta) const
{
    double folded = std::fmod(wrap_two_pi(theta), 2.0 * half_period_);
    if (folded > half_period_)
        folded = 2.0 * half_period_ - folded;
    const double pos = folded / half_period_ * static_cast<double>(widths_.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), widths_.size() - 2);
    const double frac = pos - static_cast<double>(i);
    return widths_[i] + frac * (widths_[i + 1] - widths_[i]);
}

const std::vector<double>& BeamwidthCache::probe_widths(const UcaSpec& spec, int n_beams)
{
    std::lock_guard lock(mutex_);
    auto& slot = probes_[{key_of(spec), n_beams}];
    if (!slot)
    {
        auto widths = std::make_unique<std::vector<double>>(n_beams);
        for (int k = 1; k <= n_beams; ++k)
            (*widths)[k - 1] = half_power_beamwidth(kTwoPi * k / n_beams, spec);
        slot = std::move(widths);
    }
    return *slot;
}

const BeamwidthTable& BeamwidthCache::table(const UcaSpec& spec)
{
    std::lock_guard lock(mutex_);
    auto& slot = tables_[key_of(spec)];
    if (!slot)
        slot = std::make_unique<BeamwidthTable>(spec);
    return *slot;
}

} // namespace ambient
