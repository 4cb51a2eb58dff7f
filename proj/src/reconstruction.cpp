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

#include "ambient/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <optional>
#include <ostream>

namespace ambient
{
namespace
{

// Blockage of the ray origin -> p by surface s, as an intercept ratio test.
bool blocks_from_origin(const SurfaceSet& set, std::size_t i, Point2 p)
{
    if (!set.covers(i, p))
        return false;
    const Line2& line = set[i].segment.line;
    const double den = line.normal().dot(p);
    if (den == 0.0)
        return false;
    return std::abs(line.offset() / den) < 1.0;
}

// Blockage of the leg ue -> re by surface s: the crossing of the two lines is
// inside Omega_s and strictly between both ends.
bool blocks_leg(const SurfaceSet& set, std::size_t i, Point2 ue, Point2 re)
{
    const Line2& line = set[i].segment.line;
    const Point2 n = line.normal();
    const double den = n.dot(re - ue);
    if (den == 0.0)
        return false;
    const double c = line.offset();
    const double from_ue = (c - n.dot(ue)) / den;
    const double from_re = (c - n.dot(re)) / den;
    if (!(std::abs(from_re) < 1.0 && std::abs(from_ue) < 1.0))
        return false;
    return set.covers(i, ue + from_ue * (re - ue));
}

// Reflection point t * mirror on surface l, with t = offset / (normal . mirror).
std::optional<Point2> reflection_point(const Line2& line, Point2 mirror)
{
    const double den = line.normal().dot(mirror);
    if (den == 0.0)
        return std::nullopt;
    return (line.offset() / den) * mirror;
}

} // namespace

SurfaceSet::SurfaceSet(std::vector<ReflectiveSurface> surfaces) : surfaces_(std::move(surfaces))
{
    ranges_.reserve(surfaces_.size());
    for (const auto& s : surfaces_)
        ranges_.push_back(angular_range(s.segment));
}

bool SurfaceSet::covers(std::size_t i, Point2 p) const
{
    if (p.x == 0.0 && p.y == 0.0)
        return false;
    return ranges_[i].contains(theta_of(p));
}

double effective_ue_aperture(double aoa, int n_antennas, double wavelength)
{
    return wavelength + (n_antennas - 1) * wavelength * std::abs(std::sin(aoa));
}

bool los_existence(const SurfaceSet& surfaces, Point2 ue)
{
    for (std::size_t i = 0; i < surfaces.size(); ++i)
        if (surfaces[i].kind == SurfaceKind::Visible && blocks_from_origin(surfaces, i, ue))
            return false;
    return true;
}

Path los_path(const UeEstimate& ue, const ChannelContext& ctx)
{
    Path p;
    p.kind = PathKind::LoS;
    p.exists = true;
    p.aod = theta_of(ue.estimate);
    p.aoa = wrap_two_pi(p.aod - ue.orientation + kPi);
    p.ue_aperture = effective_ue_aperture(p.aoa, ue.n_antennas, ctx.wavelength());
    p.d_t = ue.truth.norm();
    const double power = std::min(p.ue_aperture / (ctx.beamwidth(p.aod) * p.d_t), 1.0);
    p.gain = std::polar(std::sqrt(power), kTwoPi * p.d_t / ctx.wavelength());
    return p;
}

bool nlos_existence(const SurfaceSet& surfaces, std::size_t l, Point2 ue)
{
    const Line2& line = surfaces[l].segment.line;
    const Point2 mirror = mirror_point(ue, line);
    if (!surfaces.covers(l, mirror))
        return false;
    const auto re = reflection_point(line, mirror);
    if (!re || !(std::abs(line.offset() / line.normal().dot(mirror)) < 1.0))
        return false;
    for (std::size_t n = 0; n < surfaces.size(); ++n)
    {
        if (n == l)
            continue;
        if (blocks_leg(surfaces, n, ue, *re) || blocks_from_origin(surfaces, n, *re))
            return false;
    }
    return true;
}

Path nlos_path(const SurfaceSet& surfaces, std::size_t l, const UeEstimate& ue, const ChannelContext& ctx)
{
    const ReflectiveSurface& s = surfaces[l];
    const Line2& line = s.segment.line;
    const Point2 mirror = mirror_point(ue.estimate, line);
    const double chi = line.direction_angle();

    Path p;
    p.kind = PathKind::NLoS;
    p.surface = static_cast<int>(l);
    p.exists = true;
    p.aod = theta_of(mirror);
    p.aoa = wrap_two_pi(2.0 * chi - p.aod - ue.orientation + kPi);
    p.ue_aperture = effective_ue_aperture(p.aoa, ue.n_antennas, ctx.wavelength());
    p.reflection_point = reflection_point(line, mirror).value_or(mirror);
    p.d_t = p.reflection_point.norm();
    p.d_r = distance(p.reflection_point, ue.truth);

    const double travel = p.d_t + p.d_r;
    const double specular = std::min(p.ue_aperture / (ctx.beamwidth(p.aod) * travel), 1.0) * s.material.specular;
    const double grazing = std::sin(chi - p.aod);
    const double diffuse = grazing * grazing * p.ue_aperture /
                           std::sqrt(4.0 * p.d_r * p.d_r + p.ue_aperture * p.ue_aperture) * s.material.diffuse;
    const double phase = -(s.material.phase - kTwoPi * travel / ctx.wavelength());
    p.gain = std::polar(std::sqrt(ctx.eta * (specular + diffuse)), phase);
    return p;
}

std::vector<Path> enumerate_paths(const SurfaceSet& surfaces, const UeEstimate& ue, const ChannelContext& ctx)
{
    std::vector<Path> paths;
    if (los_existence(surfaces, ue.estimate))
        paths.push_back(los_path(ue, ctx));
    else
        paths.push_back(Path{});

    for (std::size_t l = 0; l < surfaces.size(); ++l)
    {
        if (surfaces[l].kind != SurfaceKind::Visible)
            continue;
        if (nlos_existence(surfaces, l, ue.estimate))
        {
            paths.push_back(nlos_path(surfaces, l, ue, ctx));
        }
        else
        {
            Path blocked;
            blocked.kind = PathKind::NLoS;
            blocked.surface = static_cast<int>(l);
            paths.push_back(blocked);
        }
    }
    return paths;
}

ComplexMatrix reconstruct_channel(const std::vector<Path>& paths, const UlaSpec& ue_array, const UcaSpec& ap_array,
                                  FlagMode mode)
{
    ComplexMatrix h = ComplexMatrix::Zero(ue_array.n_antennas, ap_array.n_antennas);
    for (const auto& p : paths)
    {
        if (!path_flag(p, mode))
            continue;
        h.noalias() += p.gain * ula_steering(p.aoa, ue_array) * uca_steering(p.aod, ap_array).adjoint();
    }
    return h;
}

void compute_feedback(std::vector<Path>& paths, const std::vector<Path>& truth, const UlaSpec& ue_array)
{
    for (auto& p : paths)
    {
        p.feedback = false;
        if (!p.exists)
            continue;
        const LobeExtent lobe = ula_half_power_lobe(p.aoa, ue_array);
        p.feedback = std::any_of(truth.begin(), truth.end(), [&](const Path& t) {
            return t.exists && lobe.contains_offset(std::remainder(t.aoa - p.aoa, kTwoPi));
        });
    }
}

void write_paths_csv(std::ostream& out, const std::vector<Path>& paths)
{
    out << "kind,l,I,F,aod_rad,aoa_rad,abs_alpha,arg_alpha,d_t_m,d_r_m\n" << std::setprecision(17);
    for (std::size_t i = 0; i < paths.size(); ++i)
    {
        const Path& p = paths[i];
        out << (p.kind == PathKind::LoS ? "LoS" : "NLoS") << ',' << i << ',' << (p.exists ? 1 : 0) << ','
            << (p.feedback ? 1 : 0) << ',' << p.aod << ',' << p.aoa << ',' << std::abs(p.gain) << ','
            << std::arg(p.gain) << ',' << p.d_t << ',' << p.d_r << '\n';
    }
}

} // namespace ambient
