// SPDX-License-Identifier: Apache-2.0
//
// dimrad - radar staircase dimensioning toolkit
// Copyright (C) 2026 The dimrad authors
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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "dimrad/chirp_sim.hpp"
#include "dimrad/dimension.hpp"
#include "dimrad/errors.hpp"

// Covered tests:
// - Coordinate correction examples
// - Isometry and rotation equivariance of the correction
// - Pair acceptance and rejection by the standards
// - Spurious target between two true corners
// - Exact recovery of every grid staircase from exact detections
// - Estimates from simulated noiseless and noisy frames
// - Median aggregation

using namespace dimrad;

namespace
{
    CorrectedTarget at(double x, double y, double mag = 1.0)
    {
        CorrectedTarget t;
        t.position = {x, y};
        t.range_m = std::hypot(x, y);
        t.magnitude = mag;
        return t;
    }

    // Exact detections of world points as seen from `f`, one entry per point, sorted by range.
    TargetList exact_list(const GaitFrame &f, const std::vector<Point2> &points)
    {
        TargetList list;
        list.inclination_rad = f.inclination_rad;
        for (const auto &p : points)
        {
            const auto o = observe(f, p);
            list.entries.push_back({o.range_m, 0, {o.angle_rad}, {1.0}, 1.0});
        }
        std::sort(list.entries.begin(), list.entries.end(),
                  [](const TargetEntry &a, const TargetEntry &b) { return a.range_m < b.range_m; });
        return list;
    }

    GaitFrame frame_at(double x, double y, double gamma)
    {
        GaitFrame f;
        f.radar_origin = {x, y};
        f.true_inclination_rad = f.inclination_rad = gamma;
        return f;
    }
}

TEST_CASE("Coordinate correction examples")
{
    TargetList list;
    list.entries.push_back({1.0, 0, {0.0}, {1.0}, 2.0});
    auto t = correct_coordinates(list, 0.0);
    REQUIRE(t.size() == 1);
    CHECK(t[0].true_angle_rad == 0.0);
    CHECK(t[0].position.x == Catch::Approx(1.0));
    CHECK(t[0].position.y == Catch::Approx(0.0).margin(1e-15));
    CHECK(t[0].magnitude == 2.0);

    list.entries[0] = {2.0, 0, {deg2rad(-10.0)}, {1.0}, 1.0};
    t = correct_coordinates(list, deg2rad(-20.0));
    REQUIRE(t.size() == 1);
    CHECK(t[0].true_angle_rad == Catch::Approx(deg2rad(-30.0)));
    CHECK(t[0].position.x == Catch::Approx(1.7321).margin(1e-4));
    CHECK(t[0].position.y == Catch::Approx(-1.0).margin(1e-12));

    list.entries[0].angles_rad = {0.1, -0.2, 0.3};
    list.entries[0].angle_magnitude = {1.0, 1.0, 1.0};
    CHECK(correct_coordinates(list, 0.0).size() == 3);
    CHECK(correct_coordinates(TargetList{}, 0.3).empty());
}

TEST_CASE("Correction is an isometry and rotation equivariant")
{
    Rng rng(2024);
    for (int i = 0; i < 2000; ++i)
    {
        TargetList list;
        list.entries.push_back({rng.uniform(0.01, 6.0), 0, {rng.uniform(-kPi / 2, kPi / 2)}, {1.0}, 1.0});
        const double g1 = rng.uniform(-kPi, kPi), g2 = rng.uniform(-kPi, kPi);
        const auto a = correct_coordinates(list, g1)[0];
        const auto b = correct_coordinates(list, g2)[0];
        const double r = list.entries[0].range_m;
        CHECK(std::abs(std::hypot(a.position.x, a.position.y) - r) <= 1e-9 * r);

        const double c = std::cos(g2 - g1), s = std::sin(g2 - g1);
        const Point2 rot{c * a.position.x - s * a.position.y, s * a.position.x + c * a.position.y};
        CHECK(std::abs(rot.x - b.position.x) <= 1e-9);
        CHECK(std::abs(rot.y - b.position.y) <= 1e-9);
    }
}

TEST_CASE("Pair selection by the standards")
{
    const auto code = StairStandards::building_code();
    {
        const std::vector<CorrectedTarget> t{at(1.00, -0.40), at(1.30, -0.25)};
        const auto est = find_consecutive_corners(t, code);
        REQUIRE(est);
        CHECK(est->depth_m == Catch::Approx(0.30));
        CHECK(est->height_m == Catch::Approx(0.15));
        CHECK(est->corner_pair[0].position.x == 1.00);
        CHECK(est->corner_pair[1].position.x == 1.30);
    }
    {
        const std::vector<CorrectedTarget> t{at(1.00, -0.40), at(1.10, -0.38)};
        CHECK_FALSE(find_consecutive_corners(t, code));
    }
    // Input order does not matter; the nearest admissible partner of the lowest x wins.
    {
        const std::vector<CorrectedTarget> t{at(1.60, -0.10), at(1.30, -0.25), at(1.00, -0.40)};
        const auto est = find_consecutive_corners(t, code);
        REQUIRE(est);
        CHECK(est->corner_pair[0].position.x == 1.00);
        CHECK(est->corner_pair[1].position.x == 1.30);
    }
    // Equal x: the stronger near corner is tried first.
    {
        const std::vector<CorrectedTarget> t{at(1.00, -0.40, 1.0), at(1.00, -0.38, 5.0), at(1.30, -0.25)};
        const auto est = find_consecutive_corners(t, code);
        REQUIRE(est);
        CHECK(est->corner_pair[0].magnitude == 5.0);
        CHECK(est->height_m == Catch::Approx(0.13));
    }
    CHECK_FALSE(find_consecutive_corners(std::vector<CorrectedTarget>{}, code));
    CHECK_THROWS_AS(find_consecutive_corners(std::vector<CorrectedTarget>{}, StairStandards{0.3, 0.2, 0.1, 0.2}),
                    ConfigError);
    CHECK(StairStandards{}.admits(0.38, 0.18));
    CHECK_FALSE(code.admits(0.38, 0.18));
}

TEST_CASE("Spurious target between true corners")
{
    const StaircaseSpec spec{0.30, 0.15, 3, 2.0};
    const auto corners = corners_of(spec).corners;
    Rng rng(31);
    for (int trial = 0; trial < 100; ++trial)
    {
        const double t = rng.uniform(0.1, 0.6);
        const Point2 spurious{corners[0].x + t * spec.depth_m, corners[0].y + t * spec.height_m};
        const auto f = frame_at(0.8, 0.45, rng.uniform(deg2rad(-30.0), deg2rad(-10.0)));
        auto pts = corners;
        pts.push_back(spurious);
        const auto est = estimate_initial(exact_list(f, pts), f.inclination_rad, StairStandards::building_code());
        REQUIRE(est);
        CHECK(est->depth_m == Catch::Approx(0.30).margin(1e-9));
        CHECK(est->height_m == Catch::Approx(0.15).margin(1e-9));
    }
}

TEST_CASE("Exact detections recover every grid staircase")
{
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 5; ++j)
        {
            const double d = 0.26 + 0.02 * i, h = 0.10 + 0.02 * j;
            const StaircaseSpec spec{d, h, 4, 4.5};
            const auto f = frame_at(spec.foot_x_m - 1.5, 0.43, deg2rad(-17.0));
            const auto est = estimate_initial(exact_list(f, corners_of(spec).corners), f.inclination_rad, StairStandards{});
            REQUIRE(est);
            CHECK(std::abs(est->depth_m - d) < 1e-6);
            CHECK(std::abs(est->height_m - h) < 1e-6);
        }
}

TEST_CASE("Estimates from simulated frames")
{
    const RadarConfig cfg;
    const auto attrs = derive_attributes(cfg);
    const StaircaseSpec spec{0.30, 0.15, 3, 2.0};
    const auto scatterers = stair_scatterers(corners_of(spec));

    SECTION("noiseless frame")
    {
        SynthesisConfig quiet;
        quiet.noise.enabled = false;
        const auto f = frame_at(0.5, 0.45, deg2rad(-20.0));
        const auto list = process_frame(synthesize_frame(cfg, f, scatterers, quiet, 1));
        const auto est = estimate_initial(list, f.inclination_rad, StairStandards{});
        REQUIRE(est);
        CHECK(std::abs(est->depth_m - 0.30) <= attrs.range_resolution_m);
        CHECK(std::abs(est->height_m - 0.15) <= attrs.range_resolution_m);
        CHECK_FALSE(estimate_initial(TargetList{}, 0.0, StairStandards{}));
    }

    SECTION("closer standoff is at least as accurate on average")
    {
        const StaircaseSpec far_spec{0.30, 0.15, 4, 4.5};
        const auto sc = stair_scatterers(corners_of(far_spec));
        const StairStandards standards;
        double err_near = 0.0, err_far = 0.0;
        int both = 0;
        Rng rng(5);
        for (std::uint64_t seed = 1; seed <= 100; ++seed)
        {
            const double gamma = deg2rad(-20.0) + rng.uniform(-deg2rad(5.0), deg2rad(5.0));
            const auto near_f = frame_at(far_spec.foot_x_m - 1.0, 0.45, gamma);
            const auto far_f = frame_at(far_spec.foot_x_m - 4.0, 0.45, gamma);
            const auto en = estimate_initial(process_frame(synthesize_frame(cfg, near_f, sc, SynthesisConfig{}, seed)),
                                             gamma, standards);
            const auto ef = estimate_initial(
                process_frame(synthesize_frame(cfg, far_f, sc, SynthesisConfig{}, 1000 + seed)), gamma, standards);
            for (const auto &e : {en, ef})
                if (e)
                    CHECK(standards.admits(e->depth_m, e->height_m));
            if (en && ef)
            {
                ++both;
                err_near += std::hypot(en->depth_m - 0.30, en->height_m - 0.15);
                err_far += std::hypot(ef->depth_m - 0.30, ef->height_m - 0.15);
            }
        }
        REQUIRE(both >= 50);
        CHECK(err_near / both <= err_far / both);
    }
}

TEST_CASE("Acquisition median")
{
    auto est = [](double d, double h) {
        DimensionEstimate e;
        e.depth_m = d;
        e.height_m = h;
        return std::optional<DimensionEstimate>(e);
    };
    const std::vector<std::optional<DimensionEstimate>> frames{est(0.30, 0.15), est(0.32, 0.12), std::nullopt,
                                                                 est(0.28, 0.20), est(0.40, 0.14)};
    const auto agg = aggregate_acquisition(frames);
    REQUIRE(agg);
    CHECK(agg->frames_used == 4);
    CHECK(agg->depth_m == Catch::Approx(0.31));
    CHECK(agg->height_m == Catch::Approx(0.145));

    const std::vector<std::optional<DimensionEstimate>> none{std::nullopt, std::nullopt};
    CHECK_FALSE(aggregate_acquisition(none));
}
