#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "param_space.hpp"
#include "random.hpp"

namespace sojourn_lab {

//! Rotation of the circle by u turns.
struct CircleRotation
{
    double u = 0;
};

//! Element of SO(d), stored row-major.
struct SphereRotation
{
    int dim = 3;
    std::vector<double> matrix;

    double operator()(int row, int col) const
    {
        return matrix[static_cast<std::size_t>(row * dim + col)];
    }
};

//! Cyclic shift of rows by row_shift and columns by col_shift.
struct GridShift
{
    int rows = 1;
    int cols = 1;
    int row_shift = 0;
    int col_shift = 0;
    friend bool operator==(GridShift const&, GridShift const&) = default;
};

using Transform = std::variant<CircleRotation, SphereRotation, GridShift>;

enum class GroupFamily
{
    circle_rotations,
    special_orthogonal,
    cyclic_shifts
};

std::string to_string(GroupFamily family);

/// Transformation family G together with its sampling law nu.
class GroupSpec
{
  public:
    //! Natural family for a space: rotations, SO(d), or cyclic shifts.
    static GroupSpec for_space(Space const& space);
    //! Throws DomainError if `family` does not act on `space`.
    GroupSpec(Space space, GroupFamily family);

    Space const& space() const noexcept { return space_; }
    GroupFamily family() const noexcept { return family_; }
    bool is_finite() const noexcept { return family_ == GroupFamily::cyclic_shifts; }

  private:
    Space space_;
    GroupFamily family_;
};

inline constexpr double kOrthogonalityTolerance = 1e-10;

SphereRotation identity_rotation(int dim);
//! Rotation matrix of the unit quaternion (w, x, y, z).
SphereRotation rotation_from_quaternion(double w, double x, double y, double z);
//! Rotation by `angle` radians in the plane of coordinates (first, second).
SphereRotation plane_rotation(int dim, int first, int second, double angle);
//! max |R^T R - I| entrywise.
double orthogonality_error(SphereRotation const& r);
double determinant(SphereRotation const& r);
SphereRotation transpose(SphereRotation const& r);

bool is_valid(Space const& space, Transform const& g) noexcept;

//! Draw g ~ nu: Haar on rotation groups, uniform on cyclic shifts.
Transform sample_nu(GroupSpec const& group, CounterRng& rng);

//! g(p). Sphere images are renormalized to unit length.
Point apply(Transform const& g, Point const& p);

//! Every element of a finite family, each exactly once.
std::vector<Transform> enumerate_group(GroupSpec const& group);

//! Spherical cap {t : t_d > threshold} (last coordinate).
struct SphereCap
{
    double threshold = 0;
};

//! Half-open arc [begin, end) with 0 <= begin <= end <= 1.
struct CircleArc
{
    double begin = 0;
    double end = 0;
};

//! Set of grid cells (duplicates are ignored).
struct CellSet
{
    std::vector<GridPoint> cells;
};

using TestSet = std::variant<SphereCap, CircleArc, CellSet>;

bool contains(TestSet const& set, Point const& p);
//! Closed-form mu(B) for a test set on `space`.
double exact_measure(Space const& space, TestSet const& set);
//! Exact mu(B) for a cell set.
Rational exact_cell_measure(Space const& space, CellSet const& set);
//! Threshold c such that the cap {t_d > c} on S^{d-1} has measure p.
double cap_threshold_for_measure(int dim, double p);
std::string describe(TestSet const& set);

struct PushforwardCheck
{
    std::string set;
    double exact_measure = 0;
    double frequency = 0;
    double std_error = 0;
    double deviation = 0;  //!< frequency - exact_measure
    std::size_t samples = 0;
    bool exhaustive = false;
    bool flagged = false;
};

inline constexpr double kFlagSigmas = 4.0;

/*!
 * Empirical check of nu(g : g(a) in B) = mu(B) for each test set.
 *
 * Flags a set when |frequency - mu(B)| exceeds 4 binomial standard errors
 * (or any nonzero deviation when the standard error is zero).
 */
std::vector<PushforwardCheck> check_pushforward(GroupSpec const& group, Point const& a,
                                                std::span<TestSet const> sets,
                                                std::size_t n_samples, CounterRng& rng);

//! Exact version for finite groups: enumerates every g once, compares in rationals.
std::vector<PushforwardCheck> check_pushforward_exhaustive(GroupSpec const& group, Point const& a,
                                                           std::span<TestSet const> sets);

}  // namespace sojourn_lab
