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

#include "ambient/geometry.hpp"
#include "ambient/surface.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace ambient
{

struct SceneConfig
{
    double room_length = 20.0;
    double room_width = 15.0;
    // AP offset from the room's left and bottom walls.
    double ap_from_left = 12.5;
    double ap_from_bottom = 5.0;
    double lambda_ppp = 0.015;
    double max_object_length = 5.0;
    double max_object_width = 5.0;
    // Objects may not come closer than this to the AP.
    double ap_clearance = 0.1;
    MaterialTable materials = MaterialTable::reference();
    std::vector<int> object_materials{1, 2, 3, 4, 5};
    int wall_material = 6;

    void validate() const;
};

// Rectangular object; length runs along the tilt direction.
struct RectObject
{
    Point2 center;
    double length = 0.0;
    double width = 0.0;
    double tilt = 0.0;
    int material = 0;

    // Counter-clockwise corners.
    std::array<Point2, 4> corners() const;
    bool contains(Point2 p, double margin = 0.0) const;
};

// Ground-truth room in AP-centred coordinates.
struct Scene
{
    double room_length = 0.0;
    double room_width = 0.0;
    double ap_from_left = 0.0;
    double ap_from_bottom = 0.0;
    std::vector<RectObject> objects;
    int wall_material = 0;
    std::uint64_t seed = 0;
    MaterialTable materials;

    Point2 room_min() const { return {-ap_from_left, -ap_from_bottom}; }
    Point2 room_max() const { return {room_length - ap_from_left, room_width - ap_from_bottom}; }
    double diagonal() const;
    bool inside_room(Point2 p) const;
    bool inside_any_object(Point2 p) const;
};

struct UeTruth
{
    Point2 position;
    int n_antennas = 32;
    double orientation = 0.0;
};

// Poisson number of tilted rectangles with uniform centres, sizes and tilts.
// Throws ConfigError on an invalid configuration.
Scene generate_scene(const SceneConfig& config, std::uint64_t seed);

// Four sides of every object followed by the four walls.
std::vector<ReflectiveSurface> true_front_surfaces(const Scene& scene);

// Uniform position in the room outside every object, orientation U(0, pi).
// Throws SimulationError after 1000 rejected draws.
UeTruth place_ue(const Scene& scene, int n_antennas, std::mt19937_64& rng, double ap_clearance = 0.1);

// Scene replay file: a header block of key=value lines followed by one
// `object cx cy length width tilt material` record per object.
void write_scene(std::ostream& out, const Scene& scene);
Scene read_scene(std::istream& in, const MaterialTable& materials);

} // namespace ambient
