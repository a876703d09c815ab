#include "sojourn_lab/param_space.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "sojourn_lab/errors.hpp"

namespace sojourn_lab {
namespace {

double squared_norm(std::span<double const> v) noexcept
{
    return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};

}  // namespace

Space Space::sphere(int dim)
{
    if (dim < 2)
        throw DomainError("sphere dimension must be at least 2, got " + std::to_string(dim));
    return Space{SpaceKind::sphere, dim, 0, 0};
}

Space Space::grid(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw DomainError("grid must have at least one row and column, got "
                          + std::to_string(rows) + "x" + std::to_string(cols));
    return Space{SpaceKind::grid, 0, rows, cols};
}

std::string Space::describe() const
{
    switch (kind_)
    {
        case SpaceKind::circle:
            return "circle";
        case SpaceKind::sphere:
            return "sphere(d=" + std::to_string(dim_) + ")";
        case SpaceKind::grid:
            return "grid(" + std::to_string(rows_) + "x" + std::to_string(cols_) + ")";
    }
    return "unknown";
}

CirclePoint circle_point(double u)
{
    if (!std::isfinite(u))
        throw DomainError("circle coordinate must be finite");
    double r = u - std::floor(u);
    if (r >= 1.0)
        r = 0.0;
    return CirclePoint{r};
}

SpherePoint sphere_point(std::vector<double> v)
{
    if (v.size() < 2)
        throw DomainError("sphere point needs at least 2 coordinates");
    if (std::abs(std::sqrt(squared_norm(v)) - 1.0) > kUnitNormTolerance)
        throw DomainError("sphere point is not of unit norm");
    return SpherePoint{std::move(v)};
}

SpherePoint normalized_point(std::vector<double> v)
{
    double const norm = std::sqrt(squared_norm(v));
    if (!(norm > 0) || !std::isfinite(norm))
        throw DomainError("cannot normalize a zero or non-finite vector");
    for (auto& x : v)
        x /= norm;
    return SpherePoint{std::move(v)};
}

GridPoint grid_point(Space const& space, int row, int col)
{
    if (space.kind() != SpaceKind::grid)
        throw SpaceMismatchError("grid point requested on " + space.describe());
    if (row < 1 || row > space.rows() || col < 1 || col > space.cols())
        throw DomainError("grid point (" + std::to_string(row) + "," + std::to_string(col)
                          + ") outside " + space.describe());
    return GridPoint{row, col};
}

SpherePoint north_pole(int dim)
{
    if (dim < 2)
        throw DomainError("sphere dimension must be at least 2");
    std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
    v.back() = 1.0;
    return SpherePoint{std::move(v)};
}

bool is_valid(Space const& space, Point const& p) noexcept
{
    return std::visit(
        Overloaded{
            [&](CirclePoint const& c) {
                return space.kind() == SpaceKind::circle && c.u >= 0.0 && c.u < 1.0;
            },
            [&](SpherePoint const& s) {
                return space.kind() == SpaceKind::sphere
                       && s.v.size() == static_cast<std::size_t>(space.dim())
                       && std::abs(std::sqrt(squared_norm(s.v)) - 1.0) <= kUnitNormTolerance;
            },
            [&](GridPoint const& g) {
                return space.kind() == SpaceKind::grid && g.row >= 1 && g.row <= space.rows()
                       && g.col >= 1 && g.col <= space.cols();
            }},
        p);
}

void require_point(Space const& space, Point const& p)
{
    if (!is_valid(space, p))
        throw SpaceMismatchError("point " + describe(p) + " is not a valid point of "
                                 + space.describe());
}

std::string describe(Point const& p)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{[&](CirclePoint const& c) { os << "u=" << c.u; },
                          [&](SpherePoint const& s) {
                              os << '(';
                              for (std::size_t i = 0; i < s.v.size(); ++i)
                                  os << (i ? "," : "") << s.v[i];
                              os << ')';
                          },
                          [&](GridPoint const& g) { os << '(' << g.row << ',' << g.col << ')'; }},
               p);
    return os.str();
}

void sample_sphere_into(std::span<double> out, CounterRng& rng)
{
    std::normal_distribution<double> normal;
    double norm2 = 0;
    do
    {
        for (auto& x : out)
            x = normal(rng);
        norm2 = squared_norm(out);
    } while (!(norm2 > 0));
    double const inv = 1.0 / std::sqrt(norm2);
    for (auto& x : out)
        x *= inv;
}

Point sample_mu(Space const& space, CounterRng& rng)
{
    switch (space.kind())
    {
        case SpaceKind::circle:
            return circle_point(uniform01(rng));
        case SpaceKind::sphere: {
            std::vector<double> v(static_cast<std::size_t>(space.dim()));
            sample_sphere_into(v, rng);
            return SpherePoint{std::move(v)};
        }
        case SpaceKind::grid: {
            std::uniform_int_distribution<int> row(1, space.rows());
            std::uniform_int_distribution<int> col(1, space.cols());
            int const r = row(rng);
            return GridPoint{r, col(rng)};
        }
    }
    throw UnsupportedSpaceError("unknown space kind");
}

Point antipode(Space const& space, Point const& p)
{
    if (space.kind() == SpaceKind::grid)
        throw UnsupportedSpaceError("antipode is undefined on " + space.describe());
    require_point(space, p);
    if (auto const* c = std::get_if<CirclePoint>(&p))
        return circle_point(c->u + 0.5);
    auto v = std::get<SpherePoint>(p).v;
    for (auto& x : v)
        x = -x;
    return SpherePoint{std::move(v)};
}

std::vector<Point> sample_antithetic_batch(Space const& space, std::size_t half_k, CounterRng& rng)
{
    if (space.kind() == SpaceKind::grid)
        throw UnsupportedSpaceError("antithetic sampling is undefined on " + space.describe());
    if (half_k < 1)
        throw DomainError("antithetic batch needs half_k >= 1");
    std::vector<Point> batch;
    batch.reserve(2 * half_k);
    for (std::size_t i = 0; i < half_k; ++i)
        batch.push_back(sample_mu(space, rng));
    for (std::size_t i = 0; i < half_k; ++i)
        batch.push_back(antipode(space, batch[i]));
    return batch;
}

Rational grid_atom_mass(Space const& space)
{
    if (space.kind() != SpaceKind::grid)
        throw UnsupportedSpaceError("atom mass is only defined on grids");
    return Rational{1, static_cast<std::int64_t>(space.size())};
}

std::size_t lattice_floor(double x, std::size_t cells) noexcept
{
    if (cells == 0 || !(x > 0.0))
        return 0;
    auto const denom = static_cast<double>(cells);
    auto b = static_cast<std::size_t>(std::min(std::floor(x * denom), denom - 1.0));
    while (b + 1 < cells && static_cast<double>(b + 1) / denom <= x)
        ++b;
    while (b > 0 && static_cast<double>(b) / denom > x)
        --b;
    return b;
}

}  // namespace sojourn_lab
