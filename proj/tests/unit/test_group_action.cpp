#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include <gtest/gtest.h>

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/group_action.hpp"

namespace sojourn_lab {
namespace {

double dot(std::vector<double> const& a, std::vector<double> const& b)
{
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

double four_sigma(double p, double n)
{
    return 4 * std::sqrt(p * (1 - p) / n);
}

TEST(GroupSpec, Compatibility)
{
    EXPECT_NO_THROW(GroupSpec(Space::sphere(3), GroupFamily::special_orthogonal));
    EXPECT_THROW(GroupSpec(Space::sphere(3), GroupFamily::cyclic_shifts), DomainError);
    EXPECT_THROW(GroupSpec(Space::grid(2, 2), GroupFamily::circle_rotations), DomainError);
    EXPECT_EQ(GroupSpec::for_space(Space::circle()).family(), GroupFamily::circle_rotations);
    EXPECT_TRUE(GroupSpec::for_space(Space::grid(2, 2)).is_finite());
    EXPECT_FALSE(GroupSpec::for_space(Space::sphere(4)).is_finite());
}

TEST(SampleNu, RotationsAreSpecialOrthogonal)
{
    CounterRng rng{1, 0};
    for (int d : {2, 3, 4, 6})
    {
        auto const group = GroupSpec::for_space(Space::sphere(d));
        for (int i = 0; i < 500; ++i)
        {
            auto const g = std::get<SphereRotation>(sample_nu(group, rng));
            ASSERT_EQ(g.dim, d);
            ASSERT_LE(orthogonality_error(g), kOrthogonalityTolerance);
            ASSERT_NEAR(determinant(g), 1.0, kOrthogonalityTolerance);
            ASSERT_TRUE(is_valid(group.space(), Transform{g}));
        }
    }
}

TEST(SampleNu, ShiftsUniformOnTwoByTwo)
{
    auto const group = GroupSpec::for_space(Space::grid(2, 2));
    CounterRng rng{2, 0};
    constexpr int n = 40'000;
    int hits[2][2] = {};
    for (int i = 0; i < n; ++i)
    {
        auto const g = std::get<GridShift>(sample_nu(group, rng));
        ASSERT_TRUE(g.row_shift >= 0 && g.row_shift < 2 && g.col_shift >= 0 && g.col_shift < 2);
        ++hits[g.row_shift][g.col_shift];
    }
    for (auto const& row : hits)
        for (int h : row)
            EXPECT_NEAR(h / double(n), 0.25, four_sigma(0.25, n));
}

// Haar image of a fixed point is uniform on S^2, so its z coordinate is
// uniform on (-1, 1). KS distance against that CDF, computed here directly.
TEST(SampleNu, HaarImageOfPoleHasUniformHeight)
{
    auto const group = GroupSpec::for_space(Space::sphere(3));
    Point const pole = north_pole(3);
    CounterRng rng{3, 0};
    constexpr std::size_t n = 100'000;
    std::vector<double> z(n);
    for (auto& value : z)
        value = std::get<SpherePoint>(sojourn_lab::apply(sample_nu(group, rng), pole)).v[2];
    std::sort(z.begin(), z.end());
    double d = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double const cdf = (z[i] + 1) / 2;
        d = std::max({d, double(i + 1) / n - cdf, cdf - double(i) / n});
    }
    EXPECT_LT(d, 0.0163);
}

TEST(SampleNu, HaarInSixDimensionsMovesPoleUniformly)
{
    // Cap {t_6 > 0} has measure 1/2 in any dimension.
    auto const group = GroupSpec::for_space(Space::sphere(6));
    Point const pole = north_pole(6);
    CounterRng rng{4, 0};
    constexpr int n = 20'000;
    int upper = 0;
    for (int i = 0; i < n; ++i)
        upper += std::get<SpherePoint>(sojourn_lab::apply(sample_nu(group, rng), pole)).v[5] > 0;
    EXPECT_NEAR(upper / double(n), 0.5, four_sigma(0.5, n));
}

TEST(Apply, Examples)
{
    auto const sphere = Space::sphere(3);
    CounterRng rng{5, 0};
    for (int i = 0; i < 100; ++i)
    {
        Point const p = sample_mu(sphere, rng);
        auto const q = std::get<SpherePoint>(sojourn_lab::apply(identity_rotation(3), p));
        auto const& v = std::get<SpherePoint>(p).v;
        for (std::size_t j = 0; j < 3; ++j)
            EXPECT_NEAR(q.v[j], v[j], 1e-15);
    }

    auto const quarter = plane_rotation(3, 0, 1, std::numbers::pi / 2);
    auto const y = std::get<SpherePoint>(sojourn_lab::apply(quarter, Point{SpherePoint{{1, 0, 0}}}));
    EXPECT_NEAR(y.v[0], 0, 1e-12);
    EXPECT_NEAR(y.v[1], 1, 1e-12);
    EXPECT_NEAR(y.v[2], 0, 1e-12);

    // Same rotation written as a quaternion about z.
    double const h = std::numbers::sqrt2 / 2;
    auto const qz = rotation_from_quaternion(h, 0, 0, h);
    auto const yq = std::get<SpherePoint>(sojourn_lab::apply(qz, Point{SpherePoint{{1, 0, 0}}}));
    EXPECT_NEAR(yq.v[1], 1, 1e-12);

    auto const shifted = std::get<GridPoint>(sojourn_lab::apply(GridShift{2, 2, 1, 1}, Point{GridPoint{1, 1}}));
    EXPECT_EQ(shifted, (GridPoint{2, 2}));
    auto const wrapped = std::get<GridPoint>(sojourn_lab::apply(GridShift{3, 4, 2, 3}, Point{GridPoint{3, 4}}));
    EXPECT_EQ(wrapped, (GridPoint{2, 3}));

    auto const c = std::get<CirclePoint>(sojourn_lab::apply(CircleRotation{0.75}, Point{circle_point(0.5)}));
    EXPECT_DOUBLE_EQ(c.u, 0.25);
}

TEST(Apply, SpaceMismatch)
{
    EXPECT_THROW(sojourn_lab::apply(CircleRotation{0.1}, Point{GridPoint{1, 1}}), SpaceMismatchError);
    EXPECT_THROW(sojourn_lab::apply(identity_rotation(4), Point{north_pole(3)}), SpaceMismatchError);
    EXPECT_THROW(sojourn_lab::apply(GridShift{2, 2, 0, 0}, Point{GridPoint{3, 1}}), SpaceMismatchError);
}

TEST(Apply, PreservesPointInvariantsAndInnerProducts)
{
    auto const sphere = Space::sphere(3);
    auto const group = GroupSpec::for_space(sphere);
    CounterRng rng{6, 0};
    for (int i = 0; i < 2000; ++i)
    {
        Transform const g = sample_nu(group, rng);
        Point const v = sample_mu(sphere, rng);
        Point const w = sample_mu(sphere, rng);
        Point const gv = sojourn_lab::apply(g, v);
        Point const gw = sojourn_lab::apply(g, w);
        ASSERT_TRUE(is_valid(sphere, gv));
        EXPECT_NEAR(dot(std::get<SpherePoint>(gv).v, std::get<SpherePoint>(gw).v),
                    dot(std::get<SpherePoint>(v).v, std::get<SpherePoint>(w).v), 1e-10);
    }

    // Repeated application does not drift off the sphere.
    Point p = north_pole(3);
    Transform const g = sample_nu(group, rng);
    for (int i = 0; i < 100'000; ++i)
        p = sojourn_lab::apply(g, p);
    EXPECT_TRUE(is_valid(sphere, p));

    auto const grid = Space::grid(3, 5);
    auto const shifts = GroupSpec::for_space(grid);
    for (int i = 0; i < 1000; ++i)
        ASSERT_TRUE(is_valid(grid, sojourn_lab::apply(sample_nu(shifts, rng), sample_mu(grid, rng))));
}

TEST(Apply, FixedRotationPreservesMu)
{
    auto const sphere = Space::sphere(3);
    CounterRng rng{7, 0};
    Transform const g = sample_nu(GroupSpec::for_space(sphere), rng);
    TestSet const cap = SphereCap{0.5};
    constexpr int n = 100'000;
    int hits = 0;
    for (int i = 0; i < n; ++i)
        hits += contains(cap, sojourn_lab::apply(g, sample_mu(sphere, rng)));
    EXPECT_NEAR(hits / double(n), 0.25, four_sigma(0.25, n));
}

TEST(EnumerateGroup, Sizes)
{
    EXPECT_EQ(enumerate_group(GroupSpec::for_space(Space::grid(2, 2))).size(), 4u);
    auto const one = enumerate_group(GroupSpec::for_space(Space::grid(1, 1)));
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(std::get<GridShift>(one[0]), (GridShift{1, 1, 0, 0}));

    auto const twelve = enumerate_group(GroupSpec::for_space(Space::grid(3, 4)));
    EXPECT_EQ(twelve.size(), 12u);
    std::set<std::pair<int, int>> distinct;
    for (auto const& g : twelve)
        distinct.emplace(std::get<GridShift>(g).row_shift, std::get<GridShift>(g).col_shift);
    EXPECT_EQ(distinct.size(), 12u);

    EXPECT_THROW(enumerate_group(GroupSpec::for_space(Space::sphere(3))), UnsupportedSpaceError);
    EXPECT_THROW(enumerate_group(GroupSpec::for_space(Space::circle())), UnsupportedSpaceError);
}

TEST(TestSets, Measures)
{
    EXPECT_DOUBLE_EQ(exact_measure(Space::sphere(3), SphereCap{0.0}), 0.5);
    EXPECT_DOUBLE_EQ(exact_measure(Space::sphere(3), SphereCap{0.8}), 0.1);
    EXPECT_DOUBLE_EQ(exact_measure(Space::sphere(3), SphereCap{1.0}), 0.0);
    EXPECT_DOUBLE_EQ(exact_measure(Space::circle(), CircleArc{0.0, 0.3}), 0.3);
    EXPECT_EQ(exact_cell_measure(Space::grid(2, 3), CellSet{{{1, 1}, {2, 3}, {1, 1}}}), Rational(1, 3));
    EXPECT_THROW(exact_measure(Space::circle(), SphereCap{0.0}), SpaceMismatchError);

    // On S^1 the cap {y > c} is an arc of angle 2 acos(c): measure acos(c)/pi.
    EXPECT_NEAR(exact_measure(Space::sphere(2), SphereCap{0.5}), std::acos(0.5) / std::numbers::pi, 1e-12);
    // On S^3 (d = 4) the last coordinate has density (2/pi) sqrt(1 - z^2).
    double const c = 0.3;
    double const s4 = (std::acos(c) - c * std::sqrt(1 - c * c)) / std::numbers::pi;
    EXPECT_NEAR(exact_measure(Space::sphere(4), SphereCap{c}), s4, 1e-12);
}

TEST(TestSets, CapThresholds)
{
    for (double p : {0.1, 0.25, 0.5, 0.9})
        EXPECT_NEAR(cap_threshold_for_measure(3, p), 1 - 2 * p, 1e-14);
    EXPECT_NEAR(cap_threshold_for_measure(2, 0.25), std::sin(std::numbers::pi / 4), 1e-10);
    for (int d : {4, 5, 8})
    {
        double const c = cap_threshold_for_measure(d, 0.2);
        EXPECT_NEAR(exact_measure(Space::sphere(d), SphereCap{c}), 0.2, 1e-10);
    }
    EXPECT_THROW(cap_threshold_for_measure(3, 1.5), DomainError);
}

TEST(Pushforward, ExhaustiveShiftsAreExact)
{
    auto const group = GroupSpec::for_space(Space::grid(3, 4));
    std::vector<TestSet> const sets{CellSet{{{1, 1}}}, CellSet{{{2, 3}}}, CellSet{{{1, 1}, {3, 4}, {2, 2}}},
                                    CellSet{}};
    for (auto const& a : {GridPoint{1, 1}, GridPoint{3, 2}})
    {
        auto const checks = check_pushforward_exhaustive(group, Point{a}, sets);
        ASSERT_EQ(checks.size(), sets.size());
        for (auto const& c : checks)
        {
            EXPECT_TRUE(c.exhaustive);
            EXPECT_EQ(c.samples, 12u);
            EXPECT_EQ(c.deviation, 0.0);
            EXPECT_FALSE(c.flagged);
        }
        EXPECT_DOUBLE_EQ(checks[0].frequency, 1.0 / 12);
        EXPECT_DOUBLE_EQ(checks[3].frequency, 0.0);
    }
}

TEST(Pushforward, RotationsNorthPole)
{
    auto const group = GroupSpec::for_space(Space::sphere(3));
    CounterRng rng{8, 0};
    std::vector<TestSet> const sets{SphereCap{0.0}, SphereCap{0.8}, SphereCap{1.0}};
    auto const checks = check_pushforward(group, Point{north_pole(3)}, sets, 100'000, rng);
    EXPECT_NEAR(checks[0].frequency, 0.5, 4 * std::sqrt(0.25 / 1e5));
    EXPECT_NEAR(checks[1].frequency, 0.1, four_sigma(0.1, 1e5));
    EXPECT_EQ(checks[2].frequency, 0.0);
    for (auto const& c : checks)
        EXPECT_FALSE(c.flagged) << c.set;
}

TEST(Pushforward, CircleArc)
{
    auto const group = GroupSpec::for_space(Space::circle());
    CounterRng rng{9, 0};
    std::vector<TestSet> const sets{CircleArc{0.0, 0.3}, CircleArc{0.6, 0.65}};
    auto const checks = check_pushforward(group, Point{circle_point(0)}, sets, 100'000, rng);
    EXPECT_NEAR(checks[0].frequency, 0.3, four_sigma(0.3, 1e5));
    EXPECT_FALSE(checks[0].flagged);
    EXPECT_FALSE(checks[1].flagged);
}

}  // namespace
}  // namespace sojourn_lab
