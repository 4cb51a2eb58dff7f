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

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambient
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Absolute tolerance for geometric predicates (meters).
inline constexpr double kGeomTol = 1e-9;
// Tolerance for angle equality (radians).
inline constexpr double kAngleTol = 1e-12;

// Raised when a geometric function is evaluated outside its domain.
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

struct Point2
{
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;

    double dot(Point2 o) const { return x * o.x + y * o.y; }
    double cross(Point2 o) const { return x * o.y - y * o.x; }
    double norm() const;
};

double distance(Point2 a, Point2 b);

// Infinite line, y = a*x + b, or x = x0 when vertical.
//
// The slope-intercept form is kept because the path formulas are written in
// it; vertical lines carry their own branch everywhere.
struct Line2
{
    double a = 0.0;
    double b = 0.0;
    bool vertical = false;
    double x0 = 0.0;

    static Line2 slope_intercept(double slope, double intercept);
    static Line2 vertical_at(double x);

    // Line through two distinct points. Points whose x-coordinates differ by
    // less than kGeomTol produce a vertical line.
    static Line2 through(Point2 p, Point2 q);

    // Line with the same direction passing through p.
    Line2 parallel_through(Point2 p) const;

    // Normal-form coefficients: normal().dot(p) == offset() on the line.
    // The normal is (-a, 1) for slanted lines and (1, 0) for vertical ones.
    Point2 normal() const { return vertical ? Point2{1.0, 0.0} : Point2{-a, 1.0}; }
    double offset() const { return vertical ? x0 : b; }

    // Signed residual normal().dot(p) - offset().
    double residual(Point2 p) const { return normal().dot(p) - offset(); }

    // Angle of the line's direction in [0, pi).
    double direction_angle() const;

    // Unit direction vector at direction_angle().
    Point2 unit_direction() const;
};

struct Segment2
{
    Point2 p1;
    Point2 p2;
    Line2 line;

    // Throws DomainError when p1 == p2.
    static Segment2 make(Point2 p1, Point2 p2);

    double length() const { return distance(p1, p2); }
    Point2 midpoint() const { return 0.5 * (p1 + p2); }
};

// Union of half-open arcs [lo, hi) on [0, 2*pi).
class AngularRange
{
  public:
    struct Arc
    {
        double lo;
        double hi;
    };

    AngularRange() = default;
    explicit AngularRange(std::vector<Arc> arcs) : arcs_(std::move(arcs)) {}

    bool contains(double angle) const;
    bool empty() const { return arcs_.empty(); }
    const std::vector<Arc>& arcs() const { return arcs_; }

  private:
    std::vector<Arc> arcs_;
};

// Wraps an angle to [0, 2*pi).
double wrap_two_pi(double angle);

// Smallest absolute difference between two angles, in [0, pi].
double angular_distance(double a, double b);

// Azimuth of p seen from the origin, in [0, 2*pi). Evaluates the three-branch
// arctangent definition (x > 0, x < 0, x == 0). Throws DomainError at the origin.
double theta_of(Point2 p);

// Angular range subtended by a segment seen from the origin. Endpoints are
// taken in counter-clockwise order; a segment collinear with the origin yields
// an empty (degenerate) range. Throws DomainError if an endpoint is the origin.
AngularRange angular_range(const Segment2& s);

// Mirror image of p across l.
Point2 mirror_point(Point2 p, const Line2& l);

// Intersection of two lines, or nullopt when they are parallel.
std::optional<Point2> line_intersection(const Line2& l1, const Line2& l2);

struct RayHit
{
    Point2 point;
    double distance;
};

// Nearest intersection of the half-line origin + t*(cos, sin), t > 0, with the
// closed segment s.
std::optional<RayHit> ray_hits_segment(Point2 origin, double dir_angle, const Segment2& s);

// True iff the open segment (p, q) crosses the closed segment s.
bool segment_blocks(Point2 p, Point2 q, const Segment2& s);

} // namespace ambient
