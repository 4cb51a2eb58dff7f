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

#include "ambient/oracle.hpp"
#include "ambient/reconstruction.hpp"
#include "ambient/scene.hpp"
#include "oracles.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace ambient;
using Catch::Approx;

namespace
{
constexpr double kLambda = 299792458.0 / 60e9;

ReflectiveSurface face(Point2 a, Point2 b, int material = 6)
{
    return {Segment2::make(a, b), MaterialTable::reference().by_index(material), SurfaceKind::Visible};
}

struct Fixture
{
    UcaSpec array = UcaSpec::standard(64, kLambda);
    BeamwidthTable widths{array};
    ChannelContext ctx{array, &widths, 0.25};
};

UeEstimate exact(Point2 p, double orientation = 0.3) { return UeEstimate{p, p, 32, orientation}; }
} // namespace

TEST_CASE("LoS existence")
{
    CHECK(los_existence(SurfaceSet{}, {3.0, 4.0}));
    const SurfaceSet crossing({face({2.0, -1.0}, {2.0, 1.0})});
    CHECK_FALSE(los_existence(crossing, {4.0, 0.0}));
    CHECK(los_existence(crossing, {1.0, 0.0}));
    // Same direction, but the surface lies beyond the UE.
    const SurfaceSet beyond({face({5.0, 7.0}, {7.0, 5.0})});
    CHECK(los_existence(beyond, {3.0, 3.0}));
    CHECK_FALSE(los_existence(beyond, {8.0, 8.0}));
    // Supplementary faces never block LoS.
    SurfaceSet supp({ReflectiveSurface{Segment2::make({2.0, -1.0}, {2.0, 1.0}), {}, SurfaceKind::Supplementary}});
    CHECK(los_existence(supp, {4.0, 0.0}));
}

TEST_CASE("LoS path parameters")
{
    Fixture f;
    // Broadside at close range saturates the clamp.
    const UeEstimate close = exact({0.2, 0.0}, kPi / 2.0);
    const Path p = los_path(close, f.ctx);
    CHECK(p.aod == 0.0);
    CHECK(p.aoa == Approx(kPi / 2.0));
    CHECK(std::abs(p.gain) == Approx(1.0));

    // Endfire: the aperture collapses to one wavelength.
    const Path end = los_path(exact({3.0, 0.0}, kPi), f.ctx);
    CHECK(angular_distance(end.aoa, 0.0) < 1e-12);
    CHECK(end.ue_aperture == Approx(kLambda));

    // Scalar re-evaluation at a generic geometry with a position error.
    const UeEstimate ue{{4.1, -2.9}, {4.0, -3.0}, 32, 1.1};
    const Path g = los_path(ue, f.ctx);
    const double aod = oracle::wrap(std::atan2(-2.9, 4.1));
    const double aoa = oracle::wrap(aod - 1.1 + kPi);
    const double a = kLambda * (1.0 + 31.0 * std::abs(std::sin(aoa)));
    const double power = std::min(a / (f.widths.at(aod) * 5.0), 1.0);
    CHECK(g.aod == Approx(aod).epsilon(1e-14));
    CHECK(g.aoa == Approx(aoa).epsilon(1e-14));
    CHECK(std::abs(g.gain) == Approx(std::sqrt(power)).epsilon(1e-12));
    CHECK(angular_distance(oracle::wrap(std::arg(g.gain)), oracle::wrap(kTwoPi * 5.0 / kLambda)) < 1e-6);
}

TEST_CASE("NLoS existence examples")
{
    const SurfaceSet wall({face({-5.0, 3.0}, {5.0, 3.0})});
    CHECK(nlos_existence(wall, 0, {1.0, 1.0}));
    // Mirror image projects past the end of a short wall.
    const SurfaceSet short_wall({face({-1.0, 3.0}, {0.5, 3.0})});
    CHECK_FALSE(nlos_existence(short_wall, 0, {4.0, 1.0}));
    // A second surface between the UE and the reflection point.
    const SurfaceSet blocked({face({-5.0, 3.0}, {5.0, 3.0}), face({0.5, 2.0}, {1.5, 2.0})});
    CHECK_FALSE(nlos_existence(blocked, 0, {1.0, 1.0}));
    // A surface on the AP leg blocks as well.
    const SurfaceSet ap_leg({face({-5.0, 3.0}, {5.0, 3.0}), face({0.0, 1.0}, {1.0, 1.0})});
    CHECK_FALSE(nlos_existence(ap_leg, 0, {2.0, 0.0}));
    // UE behind the wall.
    CHECK_FALSE(nlos_existence(wall, 0, {1.0, 4.0}));
}

TEST_CASE("LoS and NLoS indicators agree with the segment oracle")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    std::uniform_int_distribution<int> count(1, 6);
    int los_true = 0;
    int nlos_true = 0;
    for (int trial = 0; trial < 3000; ++trial)
    {
        std::vector<ReflectiveSurface> surfaces;
        const int n = count(rng);
        for (int i = 0; i < n; ++i)
        {
            const Point2 a{u(rng), u(rng)};
            const Point2 b{u(rng), u(rng)};
            if (distance(a, b) < 0.1 || std::abs(oracle::cross(b - a, a)) / distance(a, b) < 0.05)
                continue;
            surfaces.push_back(face(a, b));
        }
        const SurfaceSet set(surfaces);
        for (int j = 0; j < 5; ++j)
        {
            const Point2 ue{u(rng), u(rng)};
            if (ue.norm() < 0.1)
                continue;
            const bool got = los_existence(set, ue);
            REQUIRE(got == oracle::los(surfaces, ue));
            los_true += got;
            for (std::size_t l = 0; l < surfaces.size(); ++l)
            {
                const bool n_got = nlos_existence(set, l, ue);
                REQUIRE(n_got == oracle::nlos(surfaces, l, ue));
                nlos_true += n_got;
            }
        }
    }
    CHECK(los_true > 1000);
    CHECK(nlos_true > 1000);
}

TEST_CASE("NLoS path parameters")
{
    Fixture f;
    const Material wall_m = MaterialTable::reference().by_index(6);

    // On the mirror normal, close enough for full specular capture.
    const SurfaceSet wall({face({-5.0, 2.0}, {5.0, 2.0})});
    const Path p = nlos_path(wall, 0, exact({0.0, 1.0}, 0.0), f.ctx);
    CHECK(p.aod == Approx(kPi / 2.0));
    CHECK(p.aoa == Approx(kPi / 2.0));
    REQUIRE(f.widths.at(p.aod) * (p.d_t + p.d_r) <= p.ue_aperture);
    const double a = p.ue_aperture;
    const double diffuse = a / std::sqrt(4.0 + a * a) * wall_m.diffuse;
    CHECK(std::norm(p.gain) == Approx(0.25 * (wall_m.specular + diffuse)).epsilon(1e-12));
    CHECK(p.reflection_point.x == Approx(0.0).margin(1e-12));
    CHECK(p.reflection_point.y == Approx(2.0));

    // Grazing: the diffuse part vanishes.
    const SurfaceSet flat({face({1.0, 0.05}, {100.0, 0.05})});
    const Path g = nlos_path(flat, 0, exact({50.0, 0.04}, 1.0), f.ctx);
    const double spec_only = 0.25 * std::min(g.ue_aperture / (f.widths.at(g.aod) * (g.d_t + g.d_r)), 1.0) *
                             wall_m.specular;
    CHECK(std::abs(std::norm(g.gain) - spec_only) < 1e-5 * spec_only);

    // Vertical surface: the direction angle is pi/2.
    const SurfaceSet vertical({face({3.0, -5.0}, {3.0, 5.0})});
    const Path v = nlos_path(vertical, 0, exact({1.0, 1.0}, 0.2), f.ctx);
    const double aod = oracle::wrap(std::atan2(1.0, 5.0));
    CHECK(v.aod == Approx(aod));
    CHECK(angular_distance(v.aoa, oracle::wrap(kPi - aod - 0.2 + kPi)) < 1e-12);
}

TEST_CASE("reflection obeys equal angles")
{
    Fixture f;
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-6.0, 6.0);
    int checked = 0;
    while (checked < 2000)
    {
        const Point2 a{u(rng), u(rng)};
        const Point2 b{u(rng), u(rng)};
        if (distance(a, b) < 0.5 || std::abs(oracle::cross(b - a, a)) / distance(a, b) < 0.2)
            continue;
        const SurfaceSet set({face(a, b)});
        const Point2 ue{u(rng), u(rng)};
        if (ue.norm() < 0.1 || !nlos_existence(set, 0, ue))
            continue;
        const Path p = nlos_path(set, 0, exact(ue), f.ctx);
        const Point2 t = (1.0 / distance(a, b)) * (b - a);
        const Point2 in = (1.0 / p.reflection_point.norm()) * p.reflection_point;
        const Point2 out = (1.0 / distance(ue, p.reflection_point)) * (ue - p.reflection_point);
        CHECK(std::abs(std::acos(std::clamp(in.dot(t), -1.0, 1.0)) - std::acos(std::clamp(out.dot(t), -1.0, 1.0))) <
              1e-9);
        ++checked;
    }
}

TEST_CASE("channel assembly")
{
    Fixture f;
    const UlaSpec ula{32, kLambda, 0.4};
    CHECK(reconstruct_channel({Path{}}, ula, f.array, FlagMode::Indicator).squaredNorm() == 0.0);

    Path one;
    one.exists = true;
    one.aod = 1.0;
    one.aoa = 2.0;
    one.gain = std::polar(0.3, 0.7);
    const ComplexMatrix h1 = reconstruct_channel({one}, ula, f.array, FlagMode::Indicator);
    CHECK(h1.norm() == Approx(0.3 * std::sqrt(32.0 * 64.0)));
    const Eigen::JacobiSVD<ComplexMatrix> svd(h1);
    CHECK(svd.singularValues()(1) < 1e-9 * svd.singularValues()(0));
    // Feedback mode drops a path whose F is zero.
    CHECK(reconstruct_channel({one}, ula, f.array, FlagMode::Feedback).squaredNorm() == 0.0);

    Path two = one;
    two.aod = 3.0;
    two.aoa = 0.5;
    two.gain = std::polar(0.2, -1.0);
    const ComplexMatrix h2 = reconstruct_channel({two}, ula, f.array, FlagMode::Indicator);
    const ComplexMatrix both = reconstruct_channel({one, two}, ula, f.array, FlagMode::Indicator);
    CHECK((both - h1 - h2).norm() < 1e-12);
    CHECK(both.norm() <= (0.3 + 0.2) * std::sqrt(32.0 * 64.0));
}

TEST_CASE("feedback flags")
{
    Fixture f;
    // True room: a wall and a small face that blocks the UE leg of the wall path.
    const std::vector<ReflectiveSurface> truth_faces{face({-10.0, 3.0}, {10.0, 3.0}), face({1.3, 1.5}, {1.7, 1.5})};
    const SurfaceSet truth(truth_faces);
    const SurfaceSet perceived({truth_faces[0]});
    const UeEstimate ue = exact({2.0, 0.0}, kPi / 2.0);
    const UlaSpec ula{32, kLambda, ue.orientation};

    const std::vector<Path> true_paths = enumerate_paths(truth, ue, f.ctx);
    REQUIRE(true_paths[0].exists);
    REQUIRE_FALSE(true_paths[1].exists);

    std::vector<Path> paths = enumerate_paths(perceived, ue, f.ctx);
    REQUIRE(paths.size() == 2);
    REQUIRE(paths[1].exists);
    compute_feedback(paths, true_paths, ula);
    CHECK(paths[0].feedback);
    CHECK_FALSE(paths[1].feedback);

    // F never exceeds I.
    Path absent;
    std::vector<Path> with_absent{absent};
    compute_feedback(with_absent, true_paths, ula);
    CHECK_FALSE(with_absent[0].feedback);
}

TEST_CASE("perfect perception reproduces the benchmark channel")
{
    Fixture f;
    const SceneConfig cfg;
    std::mt19937_64 rng(33);
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const Scene scene = generate_scene(cfg, seed);
        const SurfaceSet truth(true_front_surfaces(scene));
        const UeTruth ue = place_ue(scene, 32, rng);
        const UlaSpec ula{32, kLambda, ue.orientation};
        const TruthChannel t = ground_truth_channel(truth, ue, f.ctx);
        std::vector<Path> paths = enumerate_paths(truth, exact(ue.position, ue.orientation), f.ctx);
        compute_feedback(paths, t.paths, ula);
        double bound = 0.0;
        for (const auto& p : paths)
        {
            CHECK((!p.feedback || p.exists));
            if (p.exists)
                bound += std::abs(p.gain) * std::sqrt(32.0 * 64.0);
            if (p.exists && p.kind == PathKind::LoS)
                CHECK(std::abs(p.gain) <= 1.0 + 1e-12);
            if (p.exists && p.kind == PathKind::NLoS)
                CHECK(std::norm(p.gain) <= 0.25 + 1e-12);
        }
        const ComplexMatrix h = reconstruct_channel(paths, ula, f.array, FlagMode::Feedback);
        CHECK((h - t.h).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(h.norm() <= bound + 1e-9);
        const Eigen::MatrixXcd ref = oracle::channel(truth.surfaces(), ue.position, ue.orientation, 32, f.widths, 0.25);
        CHECK((h - ref).norm() <= 1e-8 * (1.0 + ref.norm()));
    }
}

TEST_CASE("paths CSV layout")
{
    Fixture f;
    const SurfaceSet wall({face({-5.0, 3.0}, {5.0, 3.0})});
    const auto paths = enumerate_paths(wall, exact({1.0, 1.0}), f.ctx);
    std::ostringstream out;
    write_paths_csv(out, paths);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "kind,l,I,F,aod_rad,aoa_rad,abs_alpha,arg_alpha,d_t_m,d_r_m");
    std::getline(in, line);
    CHECK(line.rfind("LoS,0,1,0,", 0) == 0);
    std::getline(in, line);
    CHECK(line.rfind("NLoS,1,1,0,", 0) == 0);
}
