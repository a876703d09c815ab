#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/group_action.hpp"
#include "sojourn_lab/oracle.hpp"
#include "sojourn_lab/sojourn.hpp"

namespace sojourn_lab {
namespace {

std::vector<Rational> uniform_pmf(std::size_t n)
{
    return std::vector<Rational>(n, Rational(1, static_cast<std::int64_t>(n)));
}

TEST(OrbitLaw, TwoByTwo)
{
    auto const base = make_matrix_field(2, 2, {1, 2, 3, 4});
    auto const law = enumerate_orbit_law(base, {1, 1});
    EXPECT_EQ(law.atoms, 4u);
    EXPECT_EQ(law.pmf, uniform_pmf(4));
    EXPECT_TRUE(law.is_uniform());
    EXPECT_EQ(law.total(), Rational{1});
    EXPECT_EQ(law.pmf_strings(), (std::vector<std::string>{"1/4", "1/4", "1/4", "1/4"}));
    EXPECT_EQ(law.counts(4), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(OrbitLaw, TwoByTwoRanksPerShift)
{
    // Ranks at (1,1) over the four shifts are 1, 2, 3, 4 in some order.
    auto const base = make_matrix_field(2, 2, {1, 2, 3, 4});
    std::vector<int> seen(5, 0);
    for (auto const& g : enumerate_group(GroupSpec::for_space(base.space())))
    {
        auto const rank = sojourn_exact_discrete(compose(base, g), {1, 1}).value * 4;
        ++seen[static_cast<std::size_t>(rank)];
    }
    EXPECT_EQ(seen, (std::vector<int>{0, 1, 1, 1, 1}));
}

TEST(OrbitLaw, SingleRow)
{
    for (int n : {1, 2, 5, 9})
    {
        std::vector<double> row(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            row[static_cast<std::size_t>(i)] = std::sin(1.0 + i);
        auto const law = enumerate_orbit_law(make_matrix_field(1, n, row), {1, 1});
        EXPECT_EQ(law.pmf, uniform_pmf(static_cast<std::size_t>(n)));
    }
    auto const single = enumerate_orbit_law(make_matrix_field(1, 1, {7.0}), {1, 1});
    EXPECT_EQ(single.pmf, std::vector<Rational>{Rational{1}});
}

TEST(OrbitLaw, UniformForEveryAnchor)
{
    CounterRng rng{1, 0};
    for (int m = 1; m <= 6; ++m)
    {
        for (int n = 1; n <= 6; ++n)
        {
            auto const base = gen_matrix_field(m, n, rng);
            auto const expected = uniform_pmf(base.space().size());
            for (auto const& t : all_grid_points(base.space()))
            {
                auto const law = enumerate_orbit_law(base, std::get<GridPoint>(t));
                ASSERT_EQ(law.pmf, expected) << m << "x" << n;
            }
        }
    }
}

TEST(OrbitLaw, Ties)
{
    EXPECT_THROW(enumerate_orbit_law(make_matrix_field(2, 2, {1, 2, 2, 4}), {1, 1}), TieError);
    std::vector<double> const tied{1, 1};
    EXPECT_THROW(circle_shift_orbit_law(tied), TieError);
    EXPECT_THROW(enumerate_orbit_law(make_circle_grid_field({1, 2}), {1, 1}), SpaceMismatchError);
}

TEST(OrbitLaw, SamplingConvergesToEnumeratedLaw)
{
    CounterRng rng{2, 0};
    auto const base = gen_matrix_field(3, 4, rng);
    auto const group = GroupSpec::for_space(base.space());
    auto const law = enumerate_orbit_law(base, {2, 3});
    constexpr int n = 60'000;
    std::vector<int> hits(12, 0);
    for (int i = 0; i < n; ++i)
    {
        auto const shifted = compose(base, sample_nu(group, rng));
        auto const rank = static_cast<std::size_t>(sojourn_exact_discrete(shifted, {2, 3}).value * 12 + 0.5);
        ++hits[rank - 1];
    }
    for (std::size_t r = 0; r < 12; ++r)
    {
        double const p = boost::rational_cast<double>(law.pmf[r]);
        EXPECT_NEAR(hits[r] / double(n), p, 4 * std::sqrt(p * (1 - p) / n));
    }
}

TEST(CircleOrbit, Examples)
{
    std::vector<double> const three{3, 1, 2};
    EXPECT_EQ(circle_shift_orbit_law(three).pmf, uniform_pmf(3));
    std::vector<double> const two{1, 2};
    EXPECT_EQ(circle_shift_orbit_law(two).pmf, uniform_pmf(2));
    std::vector<double> const one{0.5};
    EXPECT_EQ(circle_shift_orbit_law(one).pmf, uniform_pmf(1));
    EXPECT_THROW(circle_shift_orbit_law({}), DomainError);

    CounterRng rng{3, 0};
    auto const bridge = gen_bridge_field(257, rng);
    auto const values = bridge.grid_values();
    EXPECT_TRUE(circle_shift_orbit_law(values.subspan(1)).is_uniform());
}

TEST(OrbitLaw, NonUniformPmfDetected)
{
    OrbitLaw law;
    law.atoms = 2;
    law.pmf = {Rational(1, 3), Rational(2, 3)};
    EXPECT_FALSE(law.is_uniform());
    EXPECT_EQ(law.total(), Rational{1});
    EXPECT_EQ(law.counts(3), (std::vector<std::size_t>{1, 2}));
    EXPECT_THROW(law.counts(4), InvariantViolation);
}

}  // namespace
}  // namespace sojourn_lab
