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

#include <iosfwd>
#include <optional>
#include <vector>

namespace ambient
{

// Reflection property of one material: specular and diffuse reflectance and
// the phase shift applied on reflection.
struct Material
{
    int index = 0;
    double specular = 0.0;
    double diffuse = 0.0;
    double phase = 0.0;
};

class MaterialTable
{
  public:
    MaterialTable() = default;
    explicit MaterialTable(std::vector<Material> rows);

    // The six-row reference table; rows 1-5 are object materials, row 6 is the wall.
    static MaterialTable reference();

    const std::vector<Material>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    bool empty() const { return rows_.empty(); }

    // Throws ConfigError when the index is unknown.
    const Material& by_index(int index) const;

    // Plain text, one row per line: index R_s R_d Phi_re. '#' starts a comment.
    static MaterialTable read(std::istream& in);
    void write(std::ostream& out) const;

  private:
    std::vector<Material> rows_;
};

enum class SurfaceKind
{
    Visible,
    Supplementary
};

// A flat reflector used for path enumeration: ground truth or perceived.
struct ReflectiveSurface
{
    Segment2 segment;
    Material material;
    SurfaceKind kind = SurfaceKind::Visible;
};

} // namespace ambient
