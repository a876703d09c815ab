#include "sojourn_lab/sojourn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sojourn_lab/errors.hpp"

namespace sojourn_lab {
namespace {

std::vector<double> evaluate_all(FieldRealization const& field, std::span<Point const> points)
{
    std::vector<double> values;
    values.reserve(points.size());
    for (auto const& p : points)
        values.push_back(field.evaluate(p));
    return values;
}

std::size_t order_statistic_index(double p, std::size_t k)
{
    // Smallest j with j/k >= p, comparing the correctly rounded quotient j/k
    // so that p = j/k given as a double selects exactly j.
    auto const kd = static_cast<double>(k);
    auto j = static_cast<std::size_t>(std::ceil(p * kd));
    j = std::clamp<std::size_t>(j, 1, k);
    while (j > 1 && static_cast<double>(j - 1) / kd >= p)
        --j;
    while (j < k && static_cast<double>(j) / kd < p)
        ++j;
    return j;
}

}  // namespace

std::string to_string(SojournMethod method)
{
    switch (method)
    {
        case SojournMethod::exact:
            return "exact";
        case SojournMethod::grid:
            return "grid";
        case SojournMethod::mc_plain:
            return "mc-plain";
        case SojournMethod::mc_antithetic:
            return "mc-antithetic";
    }
    return "unknown";
}

SojournEstimate sojourn_exact_discrete(FieldRealization const& field, GridPoint const& a)
{
    auto const* matrix = std::get_if<MatrixPayload>(&field.payload());
    if (!matrix)
        throw SpaceMismatchError("exact discrete sojourn needs a matrix field");
    require_point(field.space(), a);

    std::vector<double> sorted = matrix->entries;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw TieError("matrix entries are not pairwise distinct");

    double const level = matrix->at(a.row, a.col);
    auto const count = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), level) - sorted.begin());

    SojournEstimate est;
    est.method = SojournMethod::exact;
    est.count = count;
    est.value = static_cast<double>(count) / static_cast<double>(sorted.size());
    est.anchor = a;
    est.anchor_value = level;
    est.ties = 1;  // the anchor itself
    return est;
}

SojournEstimate sojourn_grid_circle(FieldRealization const& field, double level)
{
    auto const* grid = std::get_if<CircleGridPayload>(&field.payload());
    if (!grid)
        throw SpaceMismatchError("grid sojourn needs a circle grid field");
    SojournEstimate est;
    est.method = SojournMethod::grid;
    est.eval_points = grid->values.size();
    for (double v : grid->values)
    {
        est.count += v <= level ? 1 : 0;
        est.ties += v == level ? 1 : 0;
    }
    est.value = static_cast<double>(est.count) / static_cast<double>(grid->values.size());
    est.anchor_value = level;
    return est;
}

SojournEstimate sojourn_mc(FieldRealization const& field, Point const& a, std::size_t k,
                           bool antithetic, CounterRng& rng)
{
    Space const& space = field.space();
    if (!space.is_continuous())
        throw UnsupportedSpaceError("Monte Carlo sojourn needs a continuous space");
    if (k < 2)
        throw DomainError("Monte Carlo sojourn needs at least 2 evaluation points");
    if (antithetic && k % 2 != 0)
        throw DomainError("antithetic Monte Carlo needs an even number of points");

    SojournEstimate est;
    est.method = antithetic ? SojournMethod::mc_antithetic : SojournMethod::mc_plain;
    est.eval_points = k;
    est.anchor = a;
    est.anchor_value = field.evaluate(a);
    double const level = est.anchor_value;

    auto tally = [&](double v) {
        est.count += v <= level ? 1 : 0;
        est.ties += v == level ? 1 : 0;
    };

    std::size_t const draws = antithetic ? k / 2 : k;
    if (std::holds_alternative<KernelPayload>(field.payload()))
    {
        std::vector<double> point(static_cast<std::size_t>(space.dim()));
        for (std::size_t i = 0; i < draws; ++i)
        {
            sample_sphere_into(point, rng);
            tally(field.evaluate_sphere(point));
            if (antithetic)
            {
                for (auto& x : point)
                    x = -x;
                tally(field.evaluate_sphere(point));
            }
        }
    }
    else
    {
        auto const points = antithetic ? sample_antithetic_batch(space, draws, rng) : [&] {
            std::vector<Point> out;
            out.reserve(k);
            for (std::size_t i = 0; i < k; ++i)
                out.push_back(sample_mu(space, rng));
            return out;
        }();
        for (auto const& p : points)
            tally(field.evaluate(p));
    }
    est.value = static_cast<double>(est.count) / static_cast<double>(k);
    return est;
}

double empirical_F(FieldRealization const& field, double x, std::span<Point const> eval_points)
{
    if (eval_points.empty())
        throw DomainError("empirical_F needs at least one evaluation point");
    std::size_t count = 0;
    for (auto const& p : eval_points)
        count += field.evaluate(p) <= x ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(eval_points.size());
}

double empirical_quantile(FieldRealization const& field, double p, std::span<Point const> eval_points)
{
    if (!(p > 0 && p <= 1))
        throw DomainError("quantile level must lie in (0, 1]");
    if (eval_points.empty())
        throw DomainError("empirical_quantile needs at least one evaluation point");

    auto values = evaluate_all(field, eval_points);
    std::size_t const k = values.size();
    std::size_t const j = order_statistic_index(p, k);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(j - 1), values.end());
    double const q = values[j - 1];

    double const mass = static_cast<double>(std::count_if(values.begin(), values.end(),
                                                          [q](double v) { return v <= q; }))
                        / static_cast<double>(k);
    if (std::abs(mass - p) > 1.0 / static_cast<double>(k) + 1e-12)
        throw InvariantViolation("level set mass " + std::to_string(mass) + " is farther than 1/k from "
                                 + std::to_string(p) + " (tied field values)");
    return q;
}

bool in_level_set(FieldRealization const& field, double p, std::span<Point const> eval_points,
                  Point const& t)
{
    return field.evaluate(t) <= empirical_quantile(field, p, eval_points);
}

std::vector<Point> all_grid_points(Space const& space)
{
    if (space.kind() != SpaceKind::grid)
        throw UnsupportedSpaceError("only grids have finitely many points");
    std::vector<Point> out;
    out.reserve(space.size());
    for (int i = 1; i <= space.rows(); ++i)
        for (int j = 1; j <= space.cols(); ++j)
            out.emplace_back(GridPoint{i, j});
    return out;
}

}  // namespace sojourn_lab
