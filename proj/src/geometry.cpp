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

#include "ambient/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ambient
{

double Point2::norm() const { return std::hypot(x, y); }

double distance(Point2 a, Point2 b) { return (a - b).norm(); }

Line2 Line2::slope_intercept(double slope, double intercept)
{
    if (!std::isfinite(slope) || !std::isfinite(intercept))
        throw DomainError("Line2: non-finite slope or intercept");
    return Line2{slope, intercept, false, 0.0};
}

Line2 Line2::vertical_at(double x)
{
    if (!std::isfinite(x))
        throw DomainError("Line2: non-finite x-intercept");
    return Line2{0.0, 0.0, true, x};
}

Line2 Line2::through(Point2 p, Point2 q)
{
    if (p == q)
        throw DomainError("Line2::through: coincident points");
    const double dx = q.x - p.x;
    if (std::abs(dx) < kGeomTol)
        return vertical_at(0.5 * (p.x + q.x));
    const double slope = (q.y - p.y) / dx;
    return slope_intercept(slope, -slope * p.x + p.y);
}

Line2 Line2::parallel_through(Point2 p) const
{
    if (vertical)
        return vertical_at(p.x);
    return slope_intercept(a, -a * p.x + p.y);
}

double Line2::direction_angle() const
{
    if (vertical)
        return kPi / 2.0;
    // Equals Theta(1/a, 1) for a != 0 and its limit (mod pi) at a == 0.
    const double angle = std::atan(a);
    return angle < 0.0 ? angle + kPi : angle;
}

Point2 Line2::unit_direction() const
{
    const double angle = direction_angle();
    return {std::cos(angle), std::sin(angle)};
}

Segment2 Segment2::make(Point2 p1, Point2 p2)
{
    if (p1 == p2)
        throw DomainError("Segment2: degenerate segment");
    return Segment2{p1, p2, Line2::through(p1, p2)};
}

bool AngularRange::contains(double angle) const
{
    return std::any_of(arcs_.begin(), arcs_.end(),
                       [angle](const Arc& arc) { return angle >= arc.lo && angle < arc.hi; });
}

double wrap_two_pi(double angle)
{
    double wrapped = std::fmod(angle, kTwoPi);
    if (wrapped < 0.0)
        wrapped += kTwoPi;
    if (wrapped >= kTwoPi)
        wrapped = 0.0;
    return wrapped;
}

double angular_distance(double a, double b)
{
    const double d = wrap_two_pi(a - b);
    return d > kPi ? kTwoPi - d : d;
}

double theta_of(Point2 p)
{
    if (p.x > 0.0)
        return wrap_two_pi(std::atan(p.y / p.x));
    if (p.x < 0.0)
        return std::atan(p.y / p.x) + kPi;
    if (p.y == 0.0)
        throw DomainError("theta_of: point at the origin");
    return kPi - (p.y / (2.0 * std::abs(p.y))) * kPi;
}

AngularRange angular_range(const Segment2& s)
{
    if ((s.p1.x == 0.0 && s.p1.y == 0.0) || (s.p2.x == 0.0 && s.p2.y == 0.0))
        throw DomainError("angular_range: endpoint at the origin");

    Point2 first = s.p1;
    Point2 last = s.p2;
    const double turn = first.cross(last);
    if (turn == 0.0)
        return {};
    if (turn < 0.0)
        std::swap(first, last);

    const double lo = theta_of(first);
    const double hi = theta_of(last);
    if (angular_distance(lo, hi) < kAngleTol)
        return {};
    if (lo < hi)
        return AngularRange({{lo, hi}});
    return AngularRange({{lo, kTwoPi}, {0.0, hi}});
}

Point2 mirror_point(Point2 p, const Line2& l)
{
    if (l.vertical)
        return {2.0 * l.x0 - p.x, p.y};
    const double a = l.a;
    const double b = l.b;
    const double scale = a * a + 1.0;
    return {((1.0 - a * a) * p.x - 2.0 * a * b + 2.0 * a * p.y) / scale,
            (2.0 * a * p.x + 2.0 * b - (1.0 - a * a) * p.y) / scale};
}

std::optional<Point2> line_intersection(const Line2& l1, const Line2& l2)
{
    if (l1.vertical && l2.vertical)
        return std::nullopt;
    if (l1.vertical)
        return Point2{l1.x0, l2.a * l1.x0 + l2.b};
    if (l2.vertical)
        return Point2{l2.x0, l1.a * l2.x0 + l1.b};
    if (l1.a == l2.a)
        return std::nullopt;
    const double den = l1.a - l2.a;
    return Point2{(-l1.b + l2.b) / den, (l1.a * l2.b - l2.a * l1.b) / den};
}

std::optional<RayHit> ray_hits_segment(Point2 origin, double dir_angle, const Segment2& s)
{
    const Point2 dir{std::cos(dir_angle), std::sin(dir_angle)};
    const Point2 edge = s.p2 - s.p1;
    const double den = dir.cross(edge);
    if (den == 0.0)
        return std::nullopt;
    const Point2 w = s.p1 - origin;
    const double t = w.cross(edge) / den;
    const double u = w.cross(dir) / den;
    if (t <= 0.0 || u < 0.0 || u > 1.0)
        return std::nullopt;
    return RayHit{origin + t * dir, t};
}

bool segment_blocks(Point2 p, Point2 q, const Segment2& s)
{
    const Point2 span = q - p;
    const Point2 edge = s.p2 - s.p1;
    const double den = span.cross(edge);
    if (den == 0.0)
        return false;
    const Point2 w = s.p1 - p;
    const double t = w.cross(edge) / den;
    const double u = w.cross(span) / den;
    return t > 0.0 && t < 1.0 && u >= 0.0 && u <= 1.0;
}

} // namespace ambient
