#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fields.hpp"
#include "param_space.hpp"

namespace sojourn_lab {

/// Exact law of a rank statistic: pmf[r - 1] = P(rank = r), r = 1..N.
struct OrbitLaw
{
    std::size_t atoms = 0;
    std::vector<Rational> pmf;

    //! Every atom has probability exactly 1/N.
    bool is_uniform() const;
    Rational total() const;
    std::vector<std::string> pmf_strings() const;
    //! Number of group elements producing each rank (pmf times group order).
    std::vector<std::size_t> counts(std::size_t group_order) const;
};

/*!
 * Law of card{t : X(t) <= X(a)} when X is `base` composed with a uniformly
 * drawn cyclic row/column shift.
 *
 * Every one of the m*n shifts is enumerated and the rank of the shifted
 * matrix at `a` is found by counting pairwise comparisons. Throws TieError
 * when base has repeated entries.
 */
OrbitLaw enumerate_orbit_law(FieldRealization const& base, GridPoint const& a);

/*!
 * Circle analogue: law of card{i : v_{(i+s) mod N} <= v_s} for a uniform
 * rotation s of the sequence, anchored at index 0.
 */
OrbitLaw circle_shift_orbit_law(std::span<double const> values);

}  // namespace sojourn_lab
