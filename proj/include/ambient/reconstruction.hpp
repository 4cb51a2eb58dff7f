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
#include <vector>

namespace ambient
{

// UE as seen by the AP. Angles and existence use `estimate`; path distances
// in the gain formulas use `truth`.
struct UeEstimate
{
    Point2 estimate;
    Point2 truth;
    int n_antennas = 32;
    double orientation = 0.0;
};

// Surfaces with their angular ranges precomputed.
class SurfaceSet
{
  public:
    SurfaceSet() = default;
    explicit SurfaceSet(std::vector<ReflectiveSurface> surfaces);

    std::size_t size() const { return surfaces_.size(); }
    const ReflectiveSurface& operator[](std::size_t i) const { return surfaces_[i]; }
    const AngularRange& range(std::size_t i) const { return ranges_[i]; }
    const std::vector<ReflectiveSurface>& surfaces() const { return surfaces_; }

    // True iff Theta(p) lies in the range of surface i; false at the origin.
    bool covers(std::size_t i, Point2 p) const;

  private:
    std::vector<ReflectiveSurface> surfaces_;
    std::vector<AngularRange> ranges_;
};

enum class PathKind
{
    LoS,
    NLoS
};

struct Path
{
    PathKind kind = PathKind::LoS;
    // Index into the SurfaceSet for NLoS paths, -1 for LoS.
    int surface = -1;
    bool exists = false;
    bool feedback = false;
    double aod = 0.0;
    double aoa = 0.0;
    std::complex<double> gain{0.0, 0.0};
    double ue_aperture = 0.0;
    // LoS: d_t is the AP-UE distance and d_r is 0.
    double d_t = 0.0;
    double d_r = 0.0;
    Point2 reflection_point;
};

// Shared inputs of the path gain formulas.
struct ChannelContext
{
    UcaSpec array;
    const BeamwidthTable* widths = nullptr;
    double eta = 0.25;

    double wavelength() const { return array.wavelength; }
    double beamwidth(double aod) const { return widths->at(aod); }
};

// Effective 2-D aperture lambda + (N-1) lambda |sin(aoa)|.
double effective_ue_aperture(double aoa, int n_antennas, double wavelength);

// LoS exists iff no visible surface covers Theta(ue) with |b/(y - a x)| < 1.
bool los_existence(const SurfaceSet& surfaces, Point2 ue);

Path los_path(const UeEstimate& ue, const ChannelContext& ctx);

// Mirror-image clause on surface l, then blockage of the UE -> reflection
// point leg and of the AP -> reflection point leg by every other surface.
bool nlos_existence(const SurfaceSet& surfaces, std::size_t l, Point2 ue);

Path nlos_path(const SurfaceSet& surfaces, std::size_t l, const UeEstimate& ue, const ChannelContext& ctx);

// Path 0 is LoS; path i >= 1 goes through the (i-1)-th visible surface.
std::vector<Path> enumerate_paths(const SurfaceSet& surfaces, const UeEstimate& ue, const ChannelContext& ctx);

enum class FlagMode
{
    Indicator,
    Feedback
};

inline bool path_flag(const Path& p, FlagMode mode) { return mode == FlagMode::Indicator ? p.exists : p.feedback; }

// Sum of flag * gain * a_ue(AoA) a_T^H(AoD); n_ue x n_T.
ComplexMatrix reconstruct_channel(const std::vector<Path>& paths, const UlaSpec& ue_array, const UcaSpec& ap_array,
                                  FlagMode mode);

// F = I and some existing true path arrives inside the UE's half-power lobe
// around the reconstructed AoA.
void compute_feedback(std::vector<Path>& paths, const std::vector<Path>& truth, const UlaSpec& ue_array);

// CSV header kind,l,I,F,aod_rad,aoa_rad,abs_alpha,arg_alpha,d_t_m,d_r_m.
void write_paths_csv(std::ostream& out, const std::vector<Path>& paths);

} // namespace ambient
