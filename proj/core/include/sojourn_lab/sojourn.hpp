#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

#include "fields.hpp"
#include "param_space.hpp"
#include "random.hpp"

namespace sojourn_lab {

enum class SojournMethod
{
    exact,
    grid,
    mc_plain,
    mc_antithetic
};

std::string to_string(SojournMethod method);

/// Estimate of F(X, x) = mu{t : X(t) <= x}.
struct SojournEstimate
{
    double value = 0;  //!< in [0, 1]
    SojournMethod method = SojournMethod::exact;
    std::size_t eval_points = 0;  //!< 0 for exact
    std::size_t count = 0;        //!< numerator: points at or below the level
    std::optional<Point> anchor;
    double anchor_value = 0;
    std::size_t ties = 0;  //!< evaluation points whose value equals the level exactly
};

/*!
 * card{t : X(t) <= X(a)} / N on a matrix field.
 *
 * Ranks by sorting. Throws TieError when entries are not pairwise distinct.
 */
SojournEstimate sojourn_exact_discrete(FieldRealization const& field, GridPoint const& a);

//! Fraction of the m circle grid values at or below `level`.
SojournEstimate sojourn_grid_circle(FieldRealization const& field, double level);

/*!
 * Monte Carlo estimate of F(X, X(a)) on a circle or sphere.
 *
 * Plain: k i.i.d. mu-points. Antithetic: k/2 i.i.d. points and their
 * antipodes. Requires k >= 2, and k even when antithetic.
 */
SojournEstimate sojourn_mc(FieldRealization const& field, Point const& a, std::size_t k,
                           bool antithetic, CounterRng& rng);

//! Fraction of eval_points with X(t) <= x.
double empirical_F(FieldRealization const& field, double x, std::span<Point const> eval_points);

/*!
 * ceil(p k)-th order statistic of the field values at eval_points.
 *
 * For p in ((j-1)/k, j/k] this is the j-th smallest value, so the level set
 * {t : X(t) <= q} holds exactly j points when values are distinct. Checks
 * |empirical_F(q) - p| <= 1/k and throws InvariantViolation otherwise.
 * Accepts p in (0, 1].
 */
double empirical_quantile(FieldRealization const& field, double p, std::span<Point const> eval_points);

//! t in Q_X(p), i.e. X(t) <= empirical_quantile(field, p, eval_points).
bool in_level_set(FieldRealization const& field, double p, std::span<Point const> eval_points,
                  Point const& t);

//! All cells of a grid space in row-major order.
std::vector<Point> all_grid_points(Space const& space);

}  // namespace sojourn_lab
