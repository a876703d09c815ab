#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "random.hpp"

namespace sojourn_lab {

using Rational = boost::rational<std::int64_t>;

enum class SpaceKind
{
    circle,
    sphere,
    grid
};

/*!
 * Parameter set of a random field together with its normalized measure.
 *
 * Circle carries Lebesgue measure on [0,1); Sphere(d) the uniform surface
 * measure on the unit sphere in R^d; Grid(m, n) the uniform measure on the
 * m*n cells, each of mass 1/N.
 */
class Space
{
  public:
    static Space circle() { return Space{SpaceKind::circle, 0, 0, 0}; }
    static Space sphere(int dim);
    static Space grid(int rows, int cols);

    SpaceKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    //! Number of atoms; only meaningful for Grid.
    std::size_t size() const noexcept
    {
        return static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_);
    }
    bool is_continuous() const noexcept { return kind_ != SpaceKind::grid; }

    std::string describe() const;

    friend bool operator==(Space const&, Space const&) = default;

  private:
    Space(SpaceKind kind, int dim, int rows, int cols)
        : kind_{kind}, dim_{dim}, rows_{rows}, cols_{cols}
    {
    }

    SpaceKind kind_;
    int dim_;
    int rows_;
    int cols_;
};

struct CirclePoint
{
    double u = 0;  //!< in [0, 1)
    friend bool operator==(CirclePoint const&, CirclePoint const&) = default;
};

struct SpherePoint
{
    std::vector<double> v;  //!< unit vector in R^d
    friend bool operator==(SpherePoint const&, SpherePoint const&) = default;
};

struct GridPoint
{
    int row = 1;  //!< 1-based
    int col = 1;  //!< 1-based
    friend bool operator==(GridPoint const&, GridPoint const&) = default;
};

using Point = std::variant<CirclePoint, SpherePoint, GridPoint>;

inline constexpr double kUnitNormTolerance = 1e-12;

//! Circle point with u reduced mod 1 into [0, 1).
CirclePoint circle_point(double u);
//! Sphere point from a vector already of unit norm (within tolerance).
SpherePoint sphere_point(std::vector<double> v);
//! Sphere point by normalizing a nonzero vector.
SpherePoint normalized_point(std::vector<double> v);
//! Grid point, range-checked against the space.
GridPoint grid_point(Space const& space, int row, int col);
//! (0, ..., 0, 1) in R^d.
SpherePoint north_pole(int dim);

bool is_valid(Space const& space, Point const& p) noexcept;
//! Throws SpaceMismatchError unless p is a valid point of space.
void require_point(Space const& space, Point const& p);

std::string describe(Point const& p);

//! Draw one point from the normalized measure of `space`.
Point sample_mu(Space const& space, CounterRng& rng);

//! Uniform point on the sphere written into `out` (normalized Gaussians).
void sample_sphere_into(std::span<double> out, CounterRng& rng);

//! Circle: u + 1/2 mod 1; Sphere: -v. Grid is unsupported.
Point antipode(Space const& space, Point const& p);

//! half_k independent draws followed by their antipodes, in the same order.
std::vector<Point> sample_antithetic_batch(Space const& space, std::size_t half_k, CounterRng& rng);

//! Exact mass of one grid cell, 1/N.
Rational grid_atom_mass(Space const& space);

/*!
 * Largest b in [0, cells) with b / cells <= x, for x in [0, 1].
 *
 * Equal rationals computed by correctly rounded division compare equal, so
 * a value produced as j / k lands in the cell whose left edge it equals.
 */
std::size_t lattice_floor(double x, std::size_t cells) noexcept;

}  // namespace sojourn_lab
