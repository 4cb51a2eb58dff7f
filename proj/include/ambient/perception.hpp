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

#include "ambient/sensing.hpp"
#include "ambient/surface.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace ambient
{

// Angle at target k between the beam back to the AP and the line to target
// k+1. Empty when a delay is not finite and positive or the triangle degenerates.
std::optional<double> included_angle(double tau_k, double tau_next, double delta_theta);

struct ReflectanceMatch
{
    std::size_t row = 0;
    double residual = 0.0;
};

// Table row minimizing | |alpha|^2 - eta (beta Rs + gamma Rd) | for the
// monostatic geometry at (tau, phi_in); ties go to the lowest row. Empty when
// the minimum exceeds zeta. Throws ConfigError for an empty table.
std::optional<ReflectanceMatch> estimate_reflectance(double tau, double phi_in, double alpha_sq,
                                                     const MaterialTable& table, double eta, double zeta,
                                                     double beamwidth, double radius);

struct PerceptionParams
{
    double eta = 0.25;
    double zeta = 5e-7;
    double radius = 0.0;
    // Tolerance on |u_l . u_{l+1}| for unit face directions.
    double orthogonality_eps = 1e-3;
    bool least_squares = false;
};

struct Cluster
{
    // Zero-based positions in the target list, consecutive modulo K.
    std::vector<std::size_t> members;
    // Table row of the first member's estimate.
    std::size_t label = 0;
};

struct ClusterDiagnostics
{
    std::vector<std::optional<double>> included;
    std::vector<std::optional<std::size_t>> estimate;
};

// Target clustering: reflectance pass, link-and-extend pass over k = 1..K-1, then the
// tail-to-head link. Clusters are ordered by their first member.
std::vector<Cluster> cluster_targets(const std::vector<Target>& targets, const std::vector<double>& beamwidths,
                                     const MaterialTable& table, const PerceptionParams& params,
                                     ClusterDiagnostics* diagnostics = nullptr);

struct PerceptionResult
{
    std::vector<ReflectiveSurface> visible;
    std::vector<ReflectiveSurface> supplementary;
    std::vector<Cluster> clusters;
    // Number of corner pairs that produced supplementary faces.
    int corners = 0;

    // Visible surfaces followed by supplementary ones.
    std::vector<ReflectiveSurface> all_surfaces() const;
};

// Lines through the first and last member of each cluster, corner snapping of
// orthogonal convex neighbours and the two supplementary faces per corner.
PerceptionResult form_surfaces(const std::vector<Cluster>& clusters, const std::vector<Target>& targets,
                               const MaterialTable& table, const PerceptionParams& params);

PerceptionResult perceive(const std::vector<Target>& targets, const std::vector<double>& beamwidths,
                          const MaterialTable& table, const PerceptionParams& params);

// One surface per line: kind a b vertical x0 x1 y1 x2 y2 material.
void write_perception(std::ostream& out, const PerceptionResult& result);
PerceptionResult read_perception(std::istream& in, const MaterialTable& table);

} // namespace ambient
