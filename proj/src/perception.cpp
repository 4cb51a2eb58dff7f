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

#include "ambient/perception.hpp"

#include "ambient/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace ambient
{
namespace
{

bool usable_delay(double tau) { return std::isfinite(tau) && tau > 0.0; }

Point2 unit(Point2 v) { return (1.0 / v.norm()) * v; }

// Total least-squares line through the member targets; endpoints are the
// projections of the first and last member.
Segment2 fitted_segment(const std::vector<Point2>& pts)
{
    Point2 mean{0.0, 0.0};
    for (const auto& p : pts)
        mean = mean + p;
    mean = (1.0 / static_cast<double>(pts.size())) * mean;
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (const auto& p : pts)
    {
        const Eigen::Vector2d d(p.x - mean.x, p.y - mean.y);
        cov += d * d.transpose();
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(cov);
    const Eigen::Vector2d dir = solver.eigenvectors().col(1);
    const Point2 u{dir.x(), dir.y()};
    auto project = [&](Point2 p) { return mean + (p - mean).dot(u) * u; };
    return Segment2::make(project(pts.front()), project(pts.back()));
}

} // namespace

std::optional<double> included_angle(double tau_k, double tau_next, double delta_theta)
{
    if (!usable_delay(tau_k) || !usable_delay(tau_next))
        return std::nullopt;
    const double c = std::cos(delta_theta);
    const double den = std::sqrt(tau_k * tau_k + tau_next * tau_next - 2.0 * tau_k * tau_next * c);
    if (!(den > 0.0))
        return std::nullopt;
    const double ratio = std::clamp((tau_k - tau_next * c) / den, -1.0, 1.0);
    return std::acos(ratio);
}

std::optional<ReflectanceMatch> estimate_reflectance(double tau, double phi_in, double alpha_sq,
                                                     const MaterialTable& table, double eta, double zeta,
                                                     double beamwidth, double radius)
{
    if (table.empty())
        throw ConfigError("estimate_reflectance: empty material table");
    if (!usable_delay(tau))
        return std::nullopt;
    const auto g = monostatic_geometry(tau, phi_in, beamwidth, radius, eta);
    const double beta = specular_overlap(g);
    const double gamma = diffuse_capture(g);
    std::optional<ReflectanceMatch> best;
    const auto& rows = table.rows();
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const double residual = std::abs(alpha_sq - eta * (beta * rows[i].specular + gamma * rows[i].diffuse));
        if (!best || residual < best->residual)
            best = ReflectanceMatch{i, residual};
    }
    if (!best || !(best->residual <= zeta))
        return std::nullopt;
    return best;
}

std::vector<Cluster> cluster_targets(const std::vector<Target>& targets, const std::vector<double>& beamwidths,
                                     const MaterialTable& table, const PerceptionParams& params,
                                     ClusterDiagnostics* diagnostics)
{
    const std::size_t n = targets.size();
    if (beamwidths.size() != n)
        throw ConfigError("cluster_targets: one beamwidth per target required");
    if (n < 3)
        return {};
    const double delta = kTwoPi / static_cast<double>(n);

    auto lookup = [&](std::size_t k, double phi_in) -> std::optional<std::size_t> {
        const Target& t = targets[k];
        if (!t.valid)
            return std::nullopt;
        const auto match = estimate_reflectance(t.tau, phi_in, std::norm(t.alpha), table, params.eta, params.zeta,
                                                beamwidths[k], params.radius);
        if (!match)
            return std::nullopt;
        return match->row;
    };

    std::vector<std::optional<double>> vartheta(n);
    std::vector<std::optional<std::size_t>> estimate(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        const std::size_t next = (k + 1) % n;
        if (targets[k].valid && targets[next].valid)
            vartheta[k] = included_angle(targets[k].tau, targets[next].tau, delta);
        if (vartheta[k])
            estimate[k] = lookup(k, *vartheta[k] - kPi / 2.0);
    }

    // Compares T_k's estimate with T_{k+1}'s own and re-estimated reflectance.
    auto flag = [&](std::size_t k, std::size_t next) {
        if (!estimate[k])
            return false;
        if (estimate[next] == estimate[k])
            return true;
        if (!vartheta[k])
            return false;
        return lookup(next, *vartheta[k] + delta - kPi / 2.0) == estimate[k];
    };

    std::vector<Cluster> clusters;
    std::vector<std::optional<std::size_t>> owner(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (!flag(k, k + 1))
            continue;
        if (owner[k])
        {
            clusters[*owner[k]].members.push_back(k + 1);
        }
        else
        {
            owner[k] = clusters.size();
            clusters.push_back(Cluster{{k, k + 1}, *estimate[k]});
        }
        owner[k + 1] = owner[k];
    }

    const std::size_t tail = n - 1;
    if (flag(tail, 0))
    {
        if (owner[tail] && owner[0])
        {
            const std::size_t a = *owner[tail];
            const std::size_t b = *owner[0];
            if (a != b)
            {
                auto& dst = clusters[a].members;
                for (std::size_t k : clusters[b].members)
                {
                    dst.push_back(k);
                    owner[k] = a;
                }
                clusters[b].members.clear();
            }
        }
        else if (owner[tail])
        {
            clusters[*owner[tail]].members.push_back(0);
            owner[0] = owner[tail];
        }
        else if (owner[0])
        {
            auto& dst = clusters[*owner[0]];
            dst.members.insert(dst.members.begin(), tail);
            dst.label = *estimate[tail];
            owner[tail] = owner[0];
        }
        else
        {
            owner[tail] = owner[0] = clusters.size();
            clusters.push_back(Cluster{{tail, 0}, *estimate[tail]});
        }
    }

    std::erase_if(clusters, [](const Cluster& c) { return c.members.empty(); });
    std::stable_sort(clusters.begin(), clusters.end(),
                     [](const Cluster& x, const Cluster& y) { return x.members.front() < y.members.front(); });

    if (diagnostics)
    {
        diagnostics->included = std::move(vartheta);
        diagnostics->estimate = std::move(estimate);
    }
    return clusters;
}

std::vector<ReflectiveSurface> PerceptionResult::all_surfaces() const
{
    std::vector<ReflectiveSurface> all = visible;
    all.insert(all.end(), supplementary.begin(), supplementary.end());
    return all;
}

PerceptionResult form_surfaces(const std::vector<Cluster>& clusters, const std::vector<Target>& targets,
                               const MaterialTable& table, const PerceptionParams& params)
{
    PerceptionResult result;
    result.clusters = clusters;

    for (const auto& c : clusters)
    {
        std::vector<Point2> pts;
        pts.reserve(c.members.size());
        for (std::size_t k : c.members)
            pts.push_back(targets.at(k).position());
        const Segment2 seg =
            params.least_squares && pts.size() > 2 ? fitted_segment(pts) : Segment2::make(pts.front(), pts.back());
        result.visible.push_back({seg, table.rows().at(c.label), SurfaceKind::Visible});
    }

    const std::size_t count = result.visible.size();
    // Unsnapped endpoints; supplementary faces are anchored on these.
    std::vector<Segment2> original;
    for (const auto& s : result.visible)
        original.push_back(s.segment);

    const std::size_t n_pairs = count >= 3 ? count : (count == 2 ? 1 : 0);
    for (std::size_t l = 0; l < n_pairs; ++l)
    {
        const std::size_t m = (l + 1) % count;
        const Segment2& sl = original[l];
        const Segment2& sm = original[m];
        const Point2 span_l = sl.p2 - sl.p1;
        if (std::abs(unit(span_l).dot(unit(sm.p2 - sm.p1))) >= params.orthogonality_eps)
            continue;
        const auto ip = line_intersection(sl.line, sm.line);
        if (!ip || !(ip->dot(span_l) < 0.0))
            continue;

        const Line2 far_l = sl.line.parallel_through(sm.p2);
        const Line2 far_m = sm.line.parallel_through(sl.p1);
        const auto ip2 = line_intersection(far_l, far_m);
        if (!ip2)
            continue;

        Segment2& vis_l = result.visible[l].segment;
        Segment2& vis_m = result.visible[m].segment;
        const bool degenerate = distance(vis_l.p1, *ip) < kGeomTol || distance(*ip, vis_m.p2) < kGeomTol ||
                                distance(sl.p1, *ip2) < kGeomTol || distance(*ip2, sm.p2) < kGeomTol;
        if (degenerate)
            continue;

        vis_l = Segment2{vis_l.p1, *ip, vis_l.line};
        vis_m = Segment2{*ip, vis_m.p2, vis_m.line};
        result.supplementary.push_back(
            {Segment2{sl.p1, *ip2, far_m}, result.visible[m].material, SurfaceKind::Supplementary});
        result.supplementary.push_back(
            {Segment2{*ip2, sm.p2, far_l}, result.visible[l].material, SurfaceKind::Supplementary});
        ++result.corners;
    }
    return result;
}

PerceptionResult perceive(const std::vector<Target>& targets, const std::vector<double>& beamwidths,
                          const MaterialTable& table, const PerceptionParams& params)
{
    return form_surfaces(cluster_targets(targets, beamwidths, table, params), targets, table, params);
}

void write_perception(std::ostream& out, const PerceptionResult& result)
{
    out << "# kind a b vertical x0 x1 y1 x2 y2 material\n" << std::setprecision(17);
    for (const auto& s : result.all_surfaces())
    {
        const Segment2& g = s.segment;
        out << (s.kind == SurfaceKind::Visible ? "visible" : "supplementary") << ' ' << g.line.a << ' ' << g.line.b
            << ' ' << (g.line.vertical ? 1 : 0) << ' ' << g.line.x0 << ' ' << g.p1.x << ' ' << g.p1.y << ' '
            << g.p2.x << ' ' << g.p2.y << ' ' << s.material.index << '\n';
    }
}

PerceptionResult read_perception(std::istream& in, const MaterialTable& table)
{
    PerceptionResult result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        line = line.substr(0, line.find('#'));
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream fields(line);
        std::string kind;
        Line2 l;
        int vertical = 0;
        Point2 p1, p2;
        int material = 0;
        if (!(fields >> kind >> l.a >> l.b >> vertical >> l.x0 >> p1.x >> p1.y >> p2.x >> p2.y >> material) ||
            !(fields >> std::ws).eof())
            throw ConfigError("perception line " + std::to_string(line_no) + ": malformed record");
        if (p1 == p2)
            throw ConfigError("perception line " + std::to_string(line_no) + ": degenerate surface");
        l.vertical = vertical != 0;
        ReflectiveSurface s{Segment2{p1, p2, l}, table.by_index(material), SurfaceKind::Visible};
        if (kind == "visible")
            result.visible.push_back(s);
        else if (kind == "supplementary")
        {
            s.kind = SurfaceKind::Supplementary;
            result.supplementary.push_back(s);
        }
        else
            throw ConfigError("perception line " + std::to_string(line_no) + ": unknown kind '" + kind + "'");
    }
    result.corners = static_cast<int>(result.supplementary.size() / 2);
    return result;
}

} // namespace ambient
