#include "sojourn_lab/group_action.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include "sojourn_lab/errors.hpp"

namespace sojourn_lab {
namespace {

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<RowMajor const> as_matrix(SphereRotation const& r)
{
    return Eigen::Map<RowMajor const>(r.matrix.data(), r.dim, r.dim);
}

SphereRotation from_matrix(RowMajor const& m)
{
    SphereRotation r;
    r.dim = static_cast<int>(m.rows());
    r.matrix.assign(m.data(), m.data() + m.size());
    return r;
}

SphereRotation haar_so3(CounterRng& rng)
{
    // Shoemake's subgroup algorithm for a uniform unit quaternion.
    double const x0 = uniform01(rng);
    double const x1 = uniform01(rng);
    double const x2 = uniform01(rng);
    double const r1 = std::sqrt(1.0 - x0);
    double const r2 = std::sqrt(x0);
    double const t1 = 2.0 * std::numbers::pi * x1;
    double const t2 = 2.0 * std::numbers::pi * x2;
    return rotation_from_quaternion(std::cos(t2) * r2, std::sin(t1) * r1, std::cos(t1) * r1,
                                    std::sin(t2) * r2);
}

SphereRotation haar_so_d(int dim, CounterRng& rng)
{
    std::normal_distribution<double> normal;
    RowMajor gauss(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            gauss(i, j) = normal(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gauss);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd const r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < dim; ++j)
    {
        if (r(j, j) < 0)
            q.col(j) = -q.col(j);
    }
    if (q.determinant() < 0)
        q.col(0) = -q.col(0);
    return from_matrix(q);
}

double sphere_cap_measure(int dim, double c)
{
    if (c >= 1.0)
        return 0.0;
    if (c <= -1.0)
        return 1.0;
    if (dim == 3)
        return 0.5 * (1.0 - c);
    double const a = 0.5 * (dim - 1);
    double const upper = 0.5 * boost::math::ibeta(a, 0.5, 1.0 - c * c);
    return c >= 0 ? upper : 1.0 - upper;
}

}  // namespace

std::string to_string(GroupFamily family)
{
    switch (family)
    {
        case GroupFamily::circle_rotations:
            return "circle-rotations";
        case GroupFamily::special_orthogonal:
            return "special-orthogonal";
        case GroupFamily::cyclic_shifts:
            return "cyclic-shifts";
    }
    return "unknown";
}

GroupSpec GroupSpec::for_space(Space const& space)
{
    switch (space.kind())
    {
        case SpaceKind::circle:
            return GroupSpec{space, GroupFamily::circle_rotations};
        case SpaceKind::sphere:
            return GroupSpec{space, GroupFamily::special_orthogonal};
        case SpaceKind::grid:
            return GroupSpec{space, GroupFamily::cyclic_shifts};
    }
    throw UnsupportedSpaceError("unknown space kind");
}

GroupSpec::GroupSpec(Space space, GroupFamily family) : space_{space}, family_{family}
{
    bool const ok = (family == GroupFamily::circle_rotations && space.kind() == SpaceKind::circle)
                    || (family == GroupFamily::special_orthogonal && space.kind() == SpaceKind::sphere)
                    || (family == GroupFamily::cyclic_shifts && space.kind() == SpaceKind::grid);
    if (!ok)
        throw DomainError(to_string(family) + " does not act on " + space.describe());
}

SphereRotation identity_rotation(int dim)
{
    return from_matrix(RowMajor::Identity(dim, dim));
}

SphereRotation rotation_from_quaternion(double w, double x, double y, double z)
{
    double const n = std::sqrt(w * w + x * x + y * y + z * z);
    if (!(n > 0))
        throw DomainError("zero quaternion");
    w /= n;
    x /= n;
    y /= n;
    z /= n;
    SphereRotation r;
    r.dim = 3;
    r.matrix = {1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
                2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
                2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y)};
    return r;
}

SphereRotation plane_rotation(int dim, int first, int second, double angle)
{
    if (first == second || first < 0 || second < 0 || first >= dim || second >= dim)
        throw DomainError("invalid rotation plane");
    RowMajor m = RowMajor::Identity(dim, dim);
    double const c = std::cos(angle);
    double const s = std::sin(angle);
    m(first, first) = c;
    m(second, second) = c;
    m(first, second) = -s;
    m(second, first) = s;
    return from_matrix(m);
}

double orthogonality_error(SphereRotation const& r)
{
    auto const m = as_matrix(r);
    RowMajor const gram = m.transpose() * m;
    return (gram - RowMajor::Identity(r.dim, r.dim)).cwiseAbs().maxCoeff();
}

double determinant(SphereRotation const& r)
{
    return as_matrix(r).determinant();
}

SphereRotation transpose(SphereRotation const& r)
{
    return from_matrix(as_matrix(r).transpose());
}

bool is_valid(Space const& space, Transform const& g) noexcept
{
    return std::visit(
        Overloaded{
            [&](CircleRotation const& c) {
                return space.kind() == SpaceKind::circle && c.u >= 0 && c.u < 1;
            },
            [&](SphereRotation const& r) {
                return space.kind() == SpaceKind::sphere && r.dim == space.dim()
                       && r.matrix.size() == static_cast<std::size_t>(r.dim * r.dim)
                       && orthogonality_error(r) <= kOrthogonalityTolerance
                       && std::abs(determinant(r) - 1.0) <= kOrthogonalityTolerance;
            },
            [&](GridShift const& s) {
                return space.kind() == SpaceKind::grid && s.rows == space.rows()
                       && s.cols == space.cols() && s.row_shift >= 0 && s.row_shift < s.rows
                       && s.col_shift >= 0 && s.col_shift < s.cols;
            }},
        g);
}

Transform sample_nu(GroupSpec const& group, CounterRng& rng)
{
    Space const& space = group.space();
    switch (group.family())
    {
        case GroupFamily::circle_rotations:
            return CircleRotation{circle_point(uniform01(rng)).u};
        case GroupFamily::special_orthogonal:
            if (space.dim() == 3)
                return haar_so3(rng);
            return haar_so_d(space.dim(), rng);
        case GroupFamily::cyclic_shifts: {
            std::uniform_int_distribution<int> row(0, space.rows() - 1);
            std::uniform_int_distribution<int> col(0, space.cols() - 1);
            int const r = row(rng);
            return GridShift{space.rows(), space.cols(), r, col(rng)};
        }
    }
    throw UnsupportedSpaceError("unknown group family");
}

Point apply(Transform const& g, Point const& p)
{
    return std::visit(
        Overloaded{
            [](CircleRotation const& rot, CirclePoint const& c) -> Point {
                return circle_point(c.u + rot.u);
            },
            [](SphereRotation const& rot, SpherePoint const& s) -> Point {
                if (s.v.size() != static_cast<std::size_t>(rot.dim))
                    throw SpaceMismatchError("rotation and point dimensions differ");
                std::vector<double> out(s.v.size(), 0.0);
                for (int i = 0; i < rot.dim; ++i)
                {
                    double acc = 0;
                    for (int j = 0; j < rot.dim; ++j)
                        acc += rot(i, j) * s.v[static_cast<std::size_t>(j)];
                    out[static_cast<std::size_t>(i)] = acc;
                }
                return normalized_point(std::move(out));
            },
            [](GridShift const& shift, GridPoint const& cell) -> Point {
                if (cell.row < 1 || cell.row > shift.rows || cell.col < 1 || cell.col > shift.cols)
                    throw SpaceMismatchError("grid point outside the shifted grid");
                return GridPoint{(cell.row - 1 + shift.row_shift) % shift.rows + 1,
                                 (cell.col - 1 + shift.col_shift) % shift.cols + 1};
            },
            [](auto const&, auto const&) -> Point {
                throw SpaceMismatchError("transform and point belong to different spaces");
            }},
        g, p);
}

std::vector<Transform> enumerate_group(GroupSpec const& group)
{
    if (!group.is_finite())
        throw UnsupportedSpaceError("cannot enumerate the continuous family "
                                    + to_string(group.family()));
    Space const& space = group.space();
    std::vector<Transform> out;
    out.reserve(space.size());
    for (int r = 0; r < space.rows(); ++r)
        for (int c = 0; c < space.cols(); ++c)
            out.emplace_back(GridShift{space.rows(), space.cols(), r, c});
    return out;
}

bool contains(TestSet const& set, Point const& p)
{
    return std::visit(
        Overloaded{[](SphereCap const& cap, SpherePoint const& s) { return s.v.back() > cap.threshold; },
                   [](CircleArc const& arc, CirclePoint const& c) {
                       return c.u >= arc.begin && c.u < arc.end;
                   },
                   [](CellSet const& cells, GridPoint const& g) {
                       return std::find(cells.cells.begin(), cells.cells.end(), g) != cells.cells.end();
                   },
                   [](auto const&, auto const&) -> bool {
                       throw SpaceMismatchError("test set and point belong to different spaces");
                   }},
        set, p);
}

Rational exact_cell_measure(Space const& space, CellSet const& set)
{
    if (space.kind() != SpaceKind::grid)
        throw SpaceMismatchError("cell set on " + space.describe());
    std::set<std::pair<int, int>> unique;
    for (auto const& cell : set.cells)
    {
        require_point(space, cell);
        unique.emplace(cell.row, cell.col);
    }
    return Rational{static_cast<std::int64_t>(unique.size()), static_cast<std::int64_t>(space.size())};
}

double exact_measure(Space const& space, TestSet const& set)
{
    return std::visit(
        Overloaded{[&](SphereCap const& cap) {
                       if (space.kind() != SpaceKind::sphere)
                           throw SpaceMismatchError("sphere cap on " + space.describe());
                       return sphere_cap_measure(space.dim(), cap.threshold);
                   },
                   [&](CircleArc const& arc) {
                       if (space.kind() != SpaceKind::circle)
                           throw SpaceMismatchError("circle arc on " + space.describe());
                       if (!(arc.begin >= 0 && arc.begin <= arc.end && arc.end <= 1))
                           throw DomainError("arc must satisfy 0 <= begin <= end <= 1");
                       return arc.end - arc.begin;
                   },
                   [&](CellSet const& cells) {
                       return boost::rational_cast<double>(exact_cell_measure(space, cells));
                   }},
        set);
}

double cap_threshold_for_measure(int dim, double p)
{
    if (!(p >= 0 && p <= 1))
        throw DomainError("cap measure must lie in [0, 1]");
    if (dim == 3)
        return 1.0 - 2.0 * p;
    double lo = -1.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter)
    {
        double const mid = 0.5 * (lo + hi);
        if (sphere_cap_measure(dim, mid) > p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string describe(TestSet const& set)
{
    std::ostringstream os;
    os.precision(17);
    std::visit(Overloaded{[&](SphereCap const& cap) { os << "cap{t_d > " << cap.threshold << "}"; },
                          [&](CircleArc const& arc) { os << "arc[" << arc.begin << "," << arc.end << ")"; },
                          [&](CellSet const& cells) {
                              os << "cells{";
                              for (std::size_t i = 0; i < cells.cells.size(); ++i)
                                  os << (i ? "," : "") << '(' << cells.cells[i].row << ','
                                     << cells.cells[i].col << ')';
                              os << '}';
                          }},
               set);
    return os.str();
}

std::vector<PushforwardCheck> check_pushforward(GroupSpec const& group, Point const& a,
                                                std::span<TestSet const> sets,
                                                std::size_t n_samples, CounterRng& rng)
{
    require_point(group.space(), a);
    if (n_samples == 0)
        throw DomainError("check_pushforward needs at least one sample");
    std::vector<std::size_t> hits(sets.size(), 0);
    for (std::size_t i = 0; i < n_samples; ++i)
    {
        Point const image = sojourn_lab::apply(sample_nu(group, rng), a);
        for (std::size_t s = 0; s < sets.size(); ++s)
            hits[s] += contains(sets[s], image) ? 1 : 0;
    }

    std::vector<PushforwardCheck> out;
    out.reserve(sets.size());
    auto const n = static_cast<double>(n_samples);
    for (std::size_t s = 0; s < sets.size(); ++s)
    {
        PushforwardCheck check;
        check.set = describe(sets[s]);
        check.exact_measure = exact_measure(group.space(), sets[s]);
        check.frequency = static_cast<double>(hits[s]) / n;
        check.std_error = std::sqrt(check.exact_measure * (1.0 - check.exact_measure) / n);
        check.deviation = check.frequency - check.exact_measure;
        check.samples = n_samples;
        check.flagged = check.std_error > 0
                            ? std::abs(check.deviation) > kFlagSigmas * check.std_error
                            : check.deviation != 0.0;
        out.push_back(std::move(check));
    }
    return out;
}

std::vector<PushforwardCheck> check_pushforward_exhaustive(GroupSpec const& group, Point const& a,
                                                           std::span<TestSet const> sets)
{
    require_point(group.space(), a);
    auto const elements = enumerate_group(group);
    auto const order = static_cast<std::int64_t>(elements.size());

    std::vector<PushforwardCheck> out;
    out.reserve(sets.size());
    for (auto const& set : sets)
    {
        auto const* cells = std::get_if<CellSet>(&set);
        if (!cells)
            throw SpaceMismatchError("exhaustive checks take cell sets");
        std::int64_t hits = 0;
        for (auto const& g : elements)
            hits += contains(set, sojourn_lab::apply(g, a)) ? 1 : 0;
        Rational const frequency{hits, order};
        Rational const measure = exact_cell_measure(group.space(), *cells);

        PushforwardCheck check;
        check.set = describe(set);
        check.exact_measure = boost::rational_cast<double>(measure);
        check.frequency = boost::rational_cast<double>(frequency);
        check.deviation = boost::rational_cast<double>(frequency - measure);
        check.samples = elements.size();
        check.exhaustive = true;
        check.flagged = frequency != measure;
        out.push_back(std::move(check));
    }
    return out;
}

}  // namespace sojourn_lab
