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

#include "ambient/scene.hpp"

#include "ambient/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ambient
{
namespace
{

constexpr int kMaxRedraws = 1000;

// Uniform on (0, hi].
double open_uniform(std::mt19937_64& rng, double hi)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    return hi * (1.0 - unit(rng));
}

} // namespace

MaterialTable::MaterialTable(std::vector<Material> rows) : rows_(std::move(rows)) {}

MaterialTable MaterialTable::reference()
{
    return MaterialTable({{1, 0.6606, 0.6781, 2.6134},
                          {2, 0.3286, 0.6464, 2.2530},
                          {3, 0.5233, 0.9288, 1.1897},
                          {4, 0.2865, 0.2412, 4.3408},
                          {5, 0.8745, 0.3547, 4.7810},
                          {6, 0.5736, 0.3262, 2.4454}});
}

const Material& MaterialTable::by_index(int index) const
{
    auto it = std::find_if(rows_.begin(), rows_.end(), [index](const Material& m) { return m.index == index; });
    if (it == rows_.end())
        throw ConfigError("material index " + std::to_string(index) + " not in table");
    return *it;
}

void SceneConfig::validate() const
{
    if (!(room_length > 0.0) || !(room_width > 0.0))
        throw ConfigError("room dimensions must be positive");
    if (!(ap_from_left > 0.0 && ap_from_left < room_length && ap_from_bottom > 0.0 && ap_from_bottom < room_width))
        throw ConfigError("AP must lie strictly inside the room");
    if (!(lambda_ppp > 0.0))
        throw ConfigError("lambda_ppp must be positive");
    if (!(max_object_length > 0.0) || !(max_object_width > 0.0))
        throw ConfigError("maximum object dimensions must be positive");
    if (object_materials.empty())
        throw ConfigError("no object materials configured");
    for (int index : object_materials)
        materials.by_index(index);
    materials.by_index(wall_material);
}

std::array<Point2, 4> RectObject::corners() const
{
    const Point2 u{std::cos(tilt), std::sin(tilt)};
    const Point2 v{-u.y, u.x};
    const double hl = 0.5 * length;
    const double hw = 0.5 * width;
    return {center - hl * u - hw * v, center + hl * u - hw * v, center + hl * u + hw * v, center - hl * u + hw * v};
}

bool RectObject::contains(Point2 p, double margin) const
{
    const Point2 d = p - center;
    const double along = d.x * std::cos(tilt) + d.y * std::sin(tilt);
    const double across = -d.x * std::sin(tilt) + d.y * std::cos(tilt);
    return std::abs(along) < 0.5 * length + margin && std::abs(across) < 0.5 * width + margin;
}

double Scene::diagonal() const { return std::hypot(room_length, room_width); }

bool Scene::inside_room(Point2 p) const
{
    const Point2 lo = room_min();
    const Point2 hi = room_max();
    return p.x > lo.x && p.x < hi.x && p.y > lo.y && p.y < hi.y;
}

bool Scene::inside_any_object(Point2 p) const
{
    return std::any_of(objects.begin(), objects.end(), [p](const RectObject& o) { return o.contains(p); });
}

Scene generate_scene(const SceneConfig& config, std::uint64_t seed)
{
    config.validate();

    Scene scene;
    scene.room_length = config.room_length;
    scene.room_width = config.room_width;
    scene.ap_from_left = config.ap_from_left;
    scene.ap_from_bottom = config.ap_from_bottom;
    scene.wall_material = config.wall_material;
    scene.seed = seed;
    scene.materials = config.materials;

    std::mt19937_64 rng(seed);
    const double mean_count = config.lambda_ppp * config.room_length * config.room_width;
    int count = 0;
    if (mean_count > 0.0)
        count = std::poisson_distribution<int>(mean_count)(rng);

    const Point2 lo = scene.room_min();
    const Point2 hi = scene.room_max();
    std::uniform_real_distribution<double> ux(lo.x, hi.x);
    std::uniform_real_distribution<double> uy(lo.y, hi.y);
    std::uniform_real_distribution<double> utilt(0.0, kPi);
    std::uniform_int_distribution<std::size_t> umat(0, config.object_materials.size() - 1);

    for (int i = 0; i < count; ++i)
    {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxRedraws && !placed; ++attempt)
        {
            RectObject obj;
            obj.center = {ux(rng), uy(rng)};
            obj.length = open_uniform(rng, config.max_object_length);
            obj.width = open_uniform(rng, config.max_object_width);
            obj.tilt = utilt(rng);
            obj.material = config.object_materials[umat(rng)];

            const auto corners = obj.corners();
            const bool inside = std::all_of(corners.begin(), corners.end(), [&](Point2 c) {
                return c.x > lo.x && c.x < hi.x && c.y > lo.y && c.y < hi.y;
            });
            if (!inside || obj.contains({0.0, 0.0}, config.ap_clearance))
                continue;
            scene.objects.push_back(obj);
            placed = true;
        }
        if (!placed)
            throw SimulationError("generate_scene: could not place object " + std::to_string(i));
    }
    return scene;
}

std::vector<ReflectiveSurface> true_front_surfaces(const Scene& scene)
{
    std::vector<ReflectiveSurface> surfaces;
    surfaces.reserve(4 * scene.objects.size() + 4);
    for (const auto& obj : scene.objects)
    {
        const Material& material = scene.materials.by_index(obj.material);
        const auto c = obj.corners();
        for (int i = 0; i < 4; ++i)
            surfaces.push_back({Segment2::make(c[i], c[(i + 1) % 4]), material, SurfaceKind::Visible});
    }
    const Material& wall = scene.materials.by_index(scene.wall_material);
    const Point2 lo = scene.room_min();
    const Point2 hi = scene.room_max();
    const std::array<Point2, 4> room{lo, Point2{hi.x, lo.y}, hi, Point2{lo.x, hi.y}};
    for (int i = 0; i < 4; ++i)
        surfaces.push_back({Segment2::make(room[i], room[(i + 1) % 4]), wall, SurfaceKind::Visible});
    return surfaces;
}

UeTruth place_ue(const Scene& scene, int n_antennas, std::mt19937_64& rng, double ap_clearance)
{
    const Point2 lo = scene.room_min();
    const Point2 hi = scene.room_max();
    std::uniform_real_distribution<double> ux(lo.x, hi.x);
    std::uniform_real_distribution<double> uy(lo.y, hi.y);
    std::uniform_real_distribution<double> uphi(0.0, kPi);
    for (int attempt = 0; attempt < kMaxRedraws; ++attempt)
    {
        const Point2 p{ux(rng), uy(rng)};
        const double orientation = uphi(rng);
        if (!scene.inside_room(p) || scene.inside_any_object(p) || p.norm() < ap_clearance)
            continue;
        return UeTruth{p, n_antennas, orientation};
    }
    throw SimulationError("place_ue: no free position after 1000 draws");
}

} // namespace ambient
