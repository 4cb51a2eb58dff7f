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

#include "ambient/errors.hpp"
#include "ambient/scene.hpp"

#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace ambient
{
namespace
{

// Strips a trailing '#' comment and surrounding whitespace.
std::string strip(const std::string& line)
{
    std::string s = line.substr(0, line.find('#'));
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(const std::string& text, const std::string& what)
{
    std::istringstream in(text);
    T value{};
    in >> value;
    if (!in || !(in >> std::ws).eof())
        throw ConfigError("cannot parse " + what + " from '" + text + "'");
    return value;
}

} // namespace

MaterialTable MaterialTable::read(std::istream& in)
{
    std::vector<Material> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty())
            continue;
        std::istringstream fields(body);
        Material m;
        if (!(fields >> m.index >> m.specular >> m.diffuse >> m.phase) || !(fields >> std::ws).eof())
            throw ConfigError("material table line " + std::to_string(line_no) + ": expected 'index Rs Rd Phi'");
        if (!(m.specular > 0.0 && m.specular < 1.0 && m.diffuse > 0.0 && m.diffuse < 1.0))
            throw ConfigError("material table line " + std::to_string(line_no) + ": reflectance outside (0, 1)");
        for (const auto& other : rows)
            if (other.index == m.index)
                throw ConfigError("material table: duplicate index " + std::to_string(m.index));
        rows.push_back(m);
    }
    if (rows.empty())
        throw ConfigError("material table is empty");
    return MaterialTable(std::move(rows));
}

void MaterialTable::write(std::ostream& out) const
{
    out << "# index Rs Rd Phi\n" << std::setprecision(17);
    for (const auto& m : rows_)
        out << m.index << ' ' << m.specular << ' ' << m.diffuse << ' ' << m.phase << '\n';
}

void write_scene(std::ostream& out, const Scene& scene)
{
    out << std::setprecision(17);
    out << "room_length=" << scene.room_length << '\n'
        << "room_width=" << scene.room_width << '\n'
        << "ap_from_left=" << scene.ap_from_left << '\n'
        << "ap_from_bottom=" << scene.ap_from_bottom << '\n'
        << "wall_material=" << scene.wall_material << '\n'
        << "seed=" << scene.seed << '\n'
        << "backface_blockage=1\n";
    out << "# object cx cy length width tilt material\n";
    for (const auto& o : scene.objects)
        out << "object " << o.center.x << ' ' << o.center.y << ' ' << o.length << ' ' << o.width << ' ' << o.tilt
            << ' ' << o.material << '\n';
}

Scene read_scene(std::istream& in, const MaterialTable& materials)
{
    Scene scene;
    scene.materials = materials;
    bool have[4] = {false, false, false, false};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty())
            continue;
        const std::string where = "scene line " + std::to_string(line_no);
        if (body.rfind("object", 0) == 0)
        {
            std::istringstream fields(body.substr(6));
            RectObject o;
            if (!(fields >> o.center.x >> o.center.y >> o.length >> o.width >> o.tilt >> o.material) ||
                !(fields >> std::ws).eof())
                throw ConfigError(where + ": malformed object record");
            if (!(o.length > 0.0) || !(o.width > 0.0))
                throw ConfigError(where + ": object dimensions must be positive");
            materials.by_index(o.material);
            scene.objects.push_back(o);
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key=value");
        const std::string key = strip(body.substr(0, eq));
        const std::string value = strip(body.substr(eq + 1));
        if (key == "room_length")
            scene.room_length = parse_number<double>(value, key), have[0] = true;
        else if (key == "room_width")
            scene.room_width = parse_number<double>(value, key), have[1] = true;
        else if (key == "ap_from_left")
            scene.ap_from_left = parse_number<double>(value, key), have[2] = true;
        else if (key == "ap_from_bottom")
            scene.ap_from_bottom = parse_number<double>(value, key), have[3] = true;
        else if (key == "wall_material")
            scene.wall_material = parse_number<int>(value, key);
        else if (key == "seed")
            scene.seed = parse_number<std::uint64_t>(value, key);
        else if (key == "backface_blockage")
            continue;
        else
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
    for (bool h : have)
        if (!h)
            throw ConfigError("scene file: missing room geometry keys");
    materials.by_index(scene.wall_material);
    return scene;
}

} // namespace ambient
