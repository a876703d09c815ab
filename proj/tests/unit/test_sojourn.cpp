#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/fields.hpp"
#include "sojourn_lab/group_action.hpp"
#include "sojourn_lab/sojourn.hpp"
#include "sojourn_lab/stats.hpp"

namespace sojourn_lab {
namespace {

FieldRealization two_by_two()
{
    return make_matrix_field(2, 2, {1, 2, 3, 4});
}

// Rank by counting pairwise comparisons, independent of the library's sort.
std::size_t pairwise_rank(FieldRealization const& field, GridPoint const& a)
{
    double const level = field.evaluate(Point{a});
    std::size_t count = 0;
    for (double v : field.grid_values())
        count += v <= level;
    return count;
}

TEST(ExactDiscrete, Examples)
{
    auto const field = two_by_two();
    auto const a = sojourn_exact_discrete(field, {1, 1});
    EXPECT_EQ(a.value, 0.25);
    EXPECT_EQ(a.method, SojournMethod::exact);
    EXPECT_EQ(a.eval_points, 0u);
    EXPECT_EQ(a.anchor_value, 1.0);
    EXPECT_EQ(sojourn_exact_discrete(field, {2, 2}).value, 1.0);
    EXPECT_EQ(sojourn_exact_discrete(field, {2, 1}).value, 0.75);
    EXPECT_THROW(sojourn_exact_discrete(make_matrix_field(1, 3, {1, 2, 1}), {1, 2}), TieError);
    EXPECT_THROW(sojourn_exact_discrete(make_circle_grid_field({1, 2}), {1, 1}), SpaceMismatchError);
}

TEST(ExactDiscrete, AgreesWithPairwiseRank)
{
    CounterRng rng{1, 0};
    for (int trial = 0; trial < 200; ++trial)
    {
        auto const field = gen_matrix_field(1 + trial % 6, 1 + (trial / 6) % 6, rng);
        auto const n = double(field.space().size());
        for (auto const& t : all_grid_points(field.space()))
        {
            auto const& a = std::get<GridPoint>(t);
            auto const est = sojourn_exact_discrete(field, a);
            ASSERT_EQ(est.value, double(pairwise_rank(field, a)) / n);
            ASSERT_GE(est.value, 1.0 / n);
            ASSERT_LE(est.value, 1.0);
        }
    }
}

TEST(ExactDiscrete, ShiftEquivariance)
{
    CounterRng rng{2, 0};
    for (int trial = 0; trial < 20; ++trial)
    {
        auto const field = gen_matrix_field(4, 4, rng);
        for (auto const& g : enumerate_group(GroupSpec::for_space(field.space())))
        {
            auto const composed = compose(field, g);
            for (auto const& t : all_grid_points(field.space()))
            {
                auto const image = std::get<GridPoint>(sojourn_lab::apply(g, t));
                ASSERT_EQ(sojourn_exact_discrete(composed, std::get<GridPoint>(t)).value,
                          sojourn_exact_discrete(field, image).value);
            }
        }
    }
}

TEST(GridCircle, Examples)
{
    EXPECT_EQ(sojourn_grid_circle(make_circle_grid_field(std::vector<double>(8, 0.0)), 0.0).value, 1.0);
    EXPECT_EQ(sojourn_grid_circle(make_circle_grid_field({-1, 1, -1, 1, -1, 1}), 0.0).value, 0.5);
    CounterRng rng{3, 0};
    auto const bridge = gen_bridge_field(1000, rng);
    auto const values = bridge.grid_values();
    EXPECT_EQ(sojourn_grid_circle(bridge, *std::ranges::max_element(values)).value, 1.0);
    EXPECT_EQ(sojourn_grid_circle(bridge, *std::ranges::min_element(values) - 1).value, 0.0);
    EXPECT_EQ(sojourn_grid_circle(bridge, 0.0).method, SojournMethod::grid);
}

TEST(MonteCarlo, ConstantField)
{
    CounterRng rng{4, 0};
    auto const flat = gen_kernel_field(3, 0, {}, rng);
    for (bool anti : {false, true})
        for (std::size_t k : {2u, 10u, 100u})
            EXPECT_EQ(sojourn_mc(flat, sample_mu(flat.space(), rng), k, anti, rng).value, 1.0);
    auto const circle = make_circle_grid_field(std::vector<double>(5, 1.0));
    EXPECT_EQ(sojourn_mc(circle, Point{circle_point(0.3)}, 6, true, rng).value, 1.0);
}

TEST(MonteCarlo, LatticeValues)
{
    CounterRng rng{5, 0};
    for (int i = 0; i < 200; ++i)
    {
        auto const field = gen_kernel_field(3, 20, {}, rng);
        auto const est = sojourn_mc(field, Point{north_pole(3)}, 100, true, rng);
        EXPECT_EQ(est.method, SojournMethod::mc_antithetic);
        EXPECT_EQ(est.eval_points, 100u);
        EXPECT_EQ(est.value, double(est.count) / 100);
        EXPECT_LE(est.count, 100u);
        auto const plain = sojourn_mc(field, Point{north_pole(3)}, 7, false, rng);
        EXPECT_EQ(plain.method, SojournMethod::mc_plain);
        EXPECT_EQ(plain.value, double(plain.count) / 7);
    }
}

TEST(MonteCarlo, Preconditions)
{
    CounterRng rng{6, 0};
    auto const field = gen_kernel_field(3, 5, {}, rng);
    Point const a = north_pole(3);
    EXPECT_THROW(sojourn_mc(field, a, 1, false, rng), DomainError);
    EXPECT_THROW(sojourn_mc(field, a, 7, true, rng), DomainError);
    EXPECT_THROW(sojourn_mc(two_by_two(), Point{GridPoint{1, 1}}, 4, false, rng), UnsupportedSpaceError);
    EXPECT_THROW(sojourn_mc(field, Point{GridPoint{1, 1}}, 4, false, rng), SpaceMismatchError);
}

TEST(MonteCarlo, KernelFastPathMatchesGenericEvaluation)
{
    // Replays the stream: k/2 uniform points followed by their antipodes.
    CounterRng rng{7, 0};
    auto const field = gen_kernel_field(3, 20, {}, rng);
    Point const a = north_pole(3);
    double const level = field.evaluate(a);
    for (int i = 0; i < 50; ++i)
    {
        CounterRng draw{8, std::uint64_t(i)};
        CounterRng replay{8, std::uint64_t(i)};
        auto const est = sojourn_mc(field, a, 20, true, draw);
        auto const batch = sample_antithetic_batch(field.space(), 10, replay);
        std::size_t count = 0;
        for (auto const& t : batch)
            count += field.evaluate(t) <= level;
        EXPECT_EQ(est.count, count);
    }
}

// P(count = j) = C(k, j) int_0^1 F^j (1 - F)^{k - j} dF = 1/(k + 1),
// evaluated by composite Simpson quadrature.
TEST(MonteCarlo, BetaIntegralIdentity)
{
    for (int k = 1; k <= 10; ++k)
    {
        for (int j = 0; j <= k; ++j)
        {
            constexpr int panels = 2000;
            double const h = 1.0 / panels;
            auto f = [&](double x) { return std::pow(x, j) * std::pow(1 - x, k - j); };
            double sum = f(0) + f(1);
            for (int i = 1; i < panels; ++i)
                sum += (i % 2 ? 4 : 2) * f(i * h);
            double const binom = std::tgamma(k + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(k - j + 1.0));
            EXPECT_NEAR(binom * sum * h / 3, 1.0 / (k + 1), 1e-10) << "k=" << k << " j=" << j;
        }
    }
}

TEST(MonteCarlo, PlainEstimatorIsDiscreteUniform)
{
    constexpr std::size_t k = 10;
    constexpr int n = 22'000;
    std::vector<std::size_t> counts(k + 1, 0);
    for (int r = 0; r < n; ++r)
    {
        auto rng = replication_stream(9, std::uint64_t(r));
        auto const field = gen_kernel_field(3, 20, {}, rng);
        ++counts[sojourn_mc(field, Point{north_pole(3)}, k, false, rng).count];
    }
    // Pearson statistic against 1/(k+1), compared to the chi-square(10)
    // upper 0.1% point 29.588.
    double const expected = double(n) / (k + 1);
    double stat = 0;
    for (auto c : counts)
        stat += (double(c) - expected) * (double(c) - expected) / expected;
    EXPECT_LT(stat, 29.588);
}

TEST(MonteCarlo, UnbiasedOnCircleGridField)
{
    // On a grid field, evaluation at a uniform u reads the value of a
    // uniformly chosen cell, so E[estimate] is the exact grid fraction.
    CounterRng rng{10, 0};
    auto const bridge = gen_bridge_field(1000, rng);
    Point const a = circle_point(0.37);
    double const exact = sojourn_grid_circle(bridge, bridge.evaluate(a)).value;
    for (bool anti : {false, true})
    {
        constexpr int reps = 4000;
        constexpr std::size_t k = 50;
        double sum = 0;
        double sum_sq = 0;
        for (int r = 0; r < reps; ++r)
        {
            double const v = sojourn_mc(bridge, a, k, anti, rng).value;
            sum += v;
            sum_sq += v * v;
        }
        double const mean = sum / reps;
        double const se = std::sqrt((sum_sq / reps - mean * mean) / reps);
        EXPECT_NEAR(mean, exact, 4 * se) << (anti ? "antithetic" : "plain");
    }
}

TEST(MonteCarlo, AntitheticAndPlainAgreeOnSphere)
{
    CounterRng rng{11, 0};
    auto const field = gen_kernel_field(3, 20, {}, rng);
    Point const a = north_pole(3);
    double means[2] = {};
    double vars[2] = {};
    constexpr int reps = 4000;
    for (int anti = 0; anti < 2; ++anti)
    {
        double sum = 0;
        double sum_sq = 0;
        for (int r = 0; r < reps; ++r)
        {
            double const v = sojourn_mc(field, a, 100, anti == 1, rng).value;
            sum += v;
            sum_sq += v * v;
        }
        means[anti] = sum / reps;
        vars[anti] = (sum_sq / reps - means[anti] * means[anti]) / reps;
    }
    EXPECT_NEAR(means[0], means[1], 4 * std::sqrt(vars[0] + vars[1]));
}

TEST(EmpiricalF, Examples)
{
    std::vector<double> entries(101);
    std::iota(entries.begin(), entries.end(), 1.0);
    auto const field = make_matrix_field(1, 101, entries);
    auto const points = all_grid_points(field.space());
    EXPECT_EQ(empirical_F(field, 0.0, points), 0.0);
    EXPECT_EQ(empirical_F(field, -std::numeric_limits<double>::infinity(), points), 0.0);
    EXPECT_EQ(empirical_F(field, 101.0, points), 1.0);
    EXPECT_EQ(empirical_F(field, 1e9, points), 1.0);
    EXPECT_EQ(empirical_F(field, 51.0, points), 51.0 / 101);
    EXPECT_THROW(empirical_F(field, 0.0, {}), DomainError);
}

TEST(EmpiricalF, Monotone)
{
    CounterRng rng{12, 0};
    auto const field = gen_kernel_field(3, 20, {}, rng);
    auto const points = sample_antithetic_batch(field.space(), 500, rng);
    double previous = 0;
    for (double x = -1; x <= 25; x += 0.01)
    {
        double const f = empirical_F(field, x, points);
        ASSERT_GE(f, previous);
        previous = f;
    }
    EXPECT_EQ(previous, 1.0);
}

TEST(Quantile, Examples)
{
    std::vector<double> entries(100);
    std::iota(entries.begin(), entries.end(), 1.0);
    auto const field = make_matrix_field(10, 10, entries);
    auto const points = all_grid_points(field.space());
    EXPECT_EQ(empirical_quantile(field, 0.3, points), 30.0);
    EXPECT_EQ(empirical_F(field, 30.0, points), 0.3);
    for (int j = 1; j <= 100; ++j)
    {
        double const just_above = std::nextafter((j - 1) / 100.0, 1.0);
        EXPECT_EQ(empirical_quantile(field, just_above, points), double(j));
        EXPECT_EQ(empirical_quantile(field, j / 100.0, points), double(j));
    }
    EXPECT_EQ(empirical_quantile(field, 1.0, points), 100.0);
    EXPECT_THROW(empirical_quantile(field, 0.0, points), DomainError);
    EXPECT_THROW(empirical_quantile(field, 1.5, points), DomainError);
}

TEST(Quantile, LevelSetIdentityOnMatrices)
{
    CounterRng rng{13, 0};
    for (int trial = 0; trial < 50; ++trial)
    {
        auto const field = gen_matrix_field(4, 4, rng);
        auto const points = all_grid_points(field.space());
        for (int j = 1; j <= 16; ++j)
        {
            double const p = j / 16.0;
            for (auto const& t : points)
            {
                bool const low_rank = sojourn_exact_discrete(field, std::get<GridPoint>(t)).value <= p;
                ASSERT_EQ(in_level_set(field, p, points, t), low_rank);
            }
        }
    }
}

TEST(Quantile, SampledFixedPointOnSphere)
{
    CounterRng rng{14, 0};
    auto const field = gen_kernel_field(3, 20, {}, rng);
    auto const points = sample_antithetic_batch(field.space(), 5000, rng);
    for (double p : {0.001, 0.1, 0.25, 0.5, 0.77, 0.999})
    {
        double const q = empirical_quantile(field, p, points);
        EXPECT_LE(std::abs(empirical_F(field, q, points) - p), 1.0 / 10'000);
    }
}

}  // namespace
}  // namespace sojourn_lab
