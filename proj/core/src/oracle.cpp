#include "sojourn_lab/oracle.hpp"

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/group_action.hpp"

namespace sojourn_lab {
namespace {

void require_distinct(std::span<double const> values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j])
                throw TieError("orbit oracle needs pairwise distinct values");
}

OrbitLaw law_from_rank_counts(std::vector<std::int64_t> const& rank_counts, std::int64_t order)
{
    OrbitLaw law;
    law.atoms = rank_counts.size();
    law.pmf.reserve(rank_counts.size());
    for (auto c : rank_counts)
        law.pmf.emplace_back(c, order);
    return law;
}

}  // namespace

bool OrbitLaw::is_uniform() const
{
    Rational const expected{1, static_cast<std::int64_t>(atoms)};
    for (auto const& p : pmf)
        if (p != expected)
            return false;
    return !pmf.empty();
}

Rational OrbitLaw::total() const
{
    Rational sum{0};
    for (auto const& p : pmf)
        sum += p;
    return sum;
}

std::vector<std::string> OrbitLaw::pmf_strings() const
{
    std::vector<std::string> out;
    out.reserve(pmf.size());
    for (auto const& p : pmf)
        out.push_back(std::to_string(p.numerator()) + "/" + std::to_string(p.denominator()));
    return out;
}

std::vector<std::size_t> OrbitLaw::counts(std::size_t group_order) const
{
    std::vector<std::size_t> out;
    out.reserve(pmf.size());
    for (auto const& p : pmf)
    {
        Rational const c = p * static_cast<std::int64_t>(group_order);
        if (c.denominator() != 1)
            throw InvariantViolation("pmf is not a multiple of 1/group order");
        out.push_back(static_cast<std::size_t>(c.numerator()));
    }
    return out;
}

OrbitLaw enumerate_orbit_law(FieldRealization const& base, GridPoint const& a)
{
    auto const* matrix = std::get_if<MatrixPayload>(&base.payload());
    if (!matrix)
        throw SpaceMismatchError("orbit oracle needs a matrix field");
    require_point(base.space(), a);
    require_distinct(matrix->entries);

    GroupSpec const group{base.space(), GroupFamily::cyclic_shifts};
    auto const shifts = enumerate_group(group);
    std::size_t const n = base.space().size();
    std::vector<std::int64_t> rank_counts(n, 0);

    for (auto const& g : shifts)
    {
        auto const shifted = compose(base, g);
        auto const& entries = std::get<MatrixPayload>(shifted.payload());
        double const level = entries.at(a.row, a.col);
        std::size_t rank = 0;
        for (double v : entries.entries)
            rank += v <= level ? 1 : 0;
        ++rank_counts[rank - 1];
    }
    return law_from_rank_counts(rank_counts, static_cast<std::int64_t>(shifts.size()));
}

OrbitLaw circle_shift_orbit_law(std::span<double const> values)
{
    if (values.empty())
        throw DomainError("circle orbit oracle needs at least one value");
    require_distinct(values);
    std::size_t const n = values.size();
    std::vector<std::int64_t> rank_counts(n, 0);
    for (std::size_t s = 0; s < n; ++s)
    {
        double const level = values[s];
        std::size_t rank = 0;
        for (std::size_t i = 0; i < n; ++i)
            rank += values[(i + s) % n] <= level ? 1 : 0;
        ++rank_counts[rank - 1];
    }
    return law_from_rank_counts(rank_counts, static_cast<std::int64_t>(n));
}

}  // namespace sojourn_lab
