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

#include "ambient/sensing.hpp"

#include "ambient/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

namespace ambient
{
namespace
{

struct FirstHit
{
    std::size_t surface;
    RayHit hit;
};

std::optional<FirstHit> first_hit(const std::vector<ReflectiveSurface>& surfaces, double angle)
{
    std::optional<FirstHit> best;
    for (std::size_t i = 0; i < surfaces.size(); ++i)
    {
        const auto hit = ray_hits_segment({0.0, 0.0}, angle, surfaces[i].segment);
        if (hit && (!best || hit->distance < best->hit.distance))
            best = FirstHit{i, *hit};
    }
    return best;
}

// Unsigned angle between the ray and the surface normal, in [0, pi/2].
double incidence_angle(double ray_angle, const Segment2& s)
{
    const Point2 d{std::cos(ray_angle), std::sin(ray_angle)};
    const Point2 edge = s.p2 - s.p1;
    const double len = edge.norm();
    const double along = std::abs(d.dot(edge)) / len;
    const double across = std::abs(d.cross(edge)) / len;
    return std::atan2(along, across);
}

} // namespace

void FmcwParams::validate() const
{
    if (!(carrier > 0.0) || !(chirp_rate > 0.0) || !(chirp_duration > 0.0))
        throw ConfigError("FMCW carrier, chirp rate and chirp duration must be positive");
    if (chirp_rate * chirp_duration > 0.1 * carrier)
        throw ConfigError("FMCW sweep bandwidth must stay well below the carrier");
    if (!(tx_power > 0.0))
        throw ConfigError("transmit power must be positive");
}

std::vector<double> probe_directions(int n_beams)
{
    if (n_beams < 3)
        throw ConfigError("at least three probing beams are required");
    std::vector<double> theta(n_beams);
    for (int k = 1; k <= n_beams; ++k)
        theta[k - 1] = kTwoPi * k / n_beams;
    return theta;
}

double beat_to_delay(double beat_hz, double chirp_rate)
{
    if (!(chirp_rate > 0.0))
        throw DomainError("beat_to_delay: chirp rate must be positive");
    return beat_hz / (2.0 * chirp_rate);
}

double delay_to_beat(double delay_s, double chirp_rate) { return 2.0 * chirp_rate * delay_s; }

ReflectionGeometry monostatic_geometry(double tau, double phi_in, double beamwidth, double radius, double eta)
{
    const double d = kSpeedOfLight * tau;
    return ReflectionGeometry{phi_in, phi_in, d, d, beamwidth, 2.0 * radius, eta};
}

double specular_overlap(const ReflectionGeometry& g)
{
    const double spread = g.beamwidth * (g.d_t + g.d_r);
    const double d1 = (g.aperture - spread) / (2.0 * g.d_r);
    const double d2 = (g.aperture + spread) / (2.0 * g.d_r);
    const double offset = std::tan(std::min(std::abs(g.phi_in + g.phi_r), std::atan(d2)));
    // Rounding in tan(atan(d2)) can push the numerator an ulp below zero.
    return std::clamp((d2 - std::max(offset, std::abs(d1))) / (d2 - d1), 0.0, 1.0);
}

double diffuse_capture(const ReflectionGeometry& g)
{
    return std::cos(g.phi_in) * std::cos(g.phi_r) * g.aperture /
           std::sqrt(4.0 * g.d_r * g.d_r + g.aperture * g.aperture);
}

double specular_power_fraction(const ReflectionGeometry& g, const Material& m)
{
    return g.eta * specular_overlap(g) * m.specular;
}

double diffuse_power_fraction(const ReflectionGeometry& g, const Material& m)
{
    return g.eta * diffuse_capture(g) * m.diffuse;
}

std::complex<double> reflection_coefficient(const ReflectionGeometry& g, const Material& m, double wavelength)
{
    const double power = specular_power_fraction(g, m) + diffuse_power_fraction(g, m);
    const double phase = -(m.phase - kTwoPi * (g.d_t + g.d_r) / wavelength);
    if (!std::isfinite(power) || !std::isfinite(phase) || power < 0.0)
        throw SimulationError("reflection_coefficient: non-finite result");
    return std::polar(std::sqrt(power), phase);
}

Point2 Target::position() const
{
    const double d = kSpeedOfLight * tau;
    return {d * std::cos(theta), d * std::sin(theta)};
}

Target simulate_probe(const std::vector<ReflectiveSurface>& surfaces, int k, double beamwidth,
                      const SensingSetup& setup)
{
    Target target;
    target.k = k;
    target.theta = kTwoPi * k / setup.n_beams;

    const auto centre = first_hit(surfaces, target.theta);
    if (!centre)
        throw SimulationError("simulate_probe: beam " + std::to_string(k) + " hits no surface");
    const auto lower = first_hit(surfaces, target.theta - 0.5 * beamwidth);
    const auto upper = first_hit(surfaces, target.theta + 0.5 * beamwidth);
    if (!lower || !upper || lower->surface != centre->surface || upper->surface != centre->surface)
        return target;

    const ReflectiveSurface& s = surfaces[centre->surface];
    target.tau = centre->hit.distance / kSpeedOfLight;
    const double phi_in = incidence_angle(target.theta, s.segment);
    const auto g = monostatic_geometry(target.tau, phi_in, beamwidth, setup.array.radius, setup.eta);
    target.alpha = reflection_coefficient(g, s.material, setup.wavelength);
    target.valid = true;
    return target;
}

std::vector<Target> sense_room(const std::vector<ReflectiveSurface>& surfaces, const SensingSetup& setup,
                               BeamwidthCache& cache)
{
    const auto& widths = cache.probe_widths(setup.array, setup.n_beams);
    std::vector<Target> targets;
    targets.reserve(setup.n_beams);
    for (int k = 1; k <= setup.n_beams; ++k)
        targets.push_back(simulate_probe(surfaces, k, widths[k - 1], setup));
    return targets;
}

void write_targets_csv(std::ostream& out, const std::vector<Target>& targets)
{
    out << "k,theta_rad,tau_s,alpha_re,alpha_im,valid\n" << std::setprecision(17);
    for (const auto& t : targets)
        out << t.k << ',' << t.theta << ',' << t.tau << ',' << t.alpha.real() << ',' << t.alpha.imag() << ','
            << (t.valid ? 1 : 0) << '\n';
}

std::vector<Target> read_targets_csv(std::istream& in)
{
    std::vector<Target> targets;
    std::string line;
    if (!std::getline(in, line) || line.rfind("k,theta_rad", 0) != 0)
        throw ConfigError("targets CSV: missing header");
    int line_no = 1;
    while (std::getline(in, line))
    {
        ++line_no;
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::stringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');)
            cells.push_back(cell);
        if (cells.size() != 6)
            throw ConfigError("targets CSV line " + std::to_string(line_no) + ": expected 6 columns");
        try
        {
            Target t;
            t.k = std::stoi(cells[0]);
            t.theta = std::stod(cells[1]);
            t.tau = std::stod(cells[2]);
            t.alpha = {std::stod(cells[3]), std::stod(cells[4])};
            t.valid = std::stoi(cells[5]) != 0;
            targets.push_back(t);
        }
        catch (const std::logic_error&)
        {
            throw ConfigError("targets CSV line " + std::to_string(line_no) + ": malformed number");
        }
    }
    return targets;
}

} // namespace ambient
