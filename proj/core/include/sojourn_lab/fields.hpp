#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "group_action.hpp"
#include "param_space.hpp"
#include "random.hpp"

namespace sojourn_lab {

inline constexpr double kDefaultKernelExponent = 0.1;

//! K(x) = 1 - (x / 2)^beta on chordal distances x in [0, 2].
double kernel_default(double x_norm, double exponent = kDefaultKernelExponent);

struct PowerKernel
{
    double exponent = kDefaultKernelExponent;

    double operator()(double x_norm) const { return kernel_default(x_norm, exponent); }
};

/*!
 * Sum of kernel bumps centred at summits on S^{d-1}.
 *
 * An optional deterministic bias term bump * K(|t - bias_center|) breaks
 * rotation invariance of the law; it is absent when bump == 0.
 */
struct KernelPayload
{
    int dim = 3;
    std::vector<double> summits;  //!< row-major, one summit per row
    PowerKernel kernel;
    double bump = 0;
    std::vector<double> bias_center;

    std::size_t summit_count() const noexcept
    {
        return dim > 0 ? summits.size() / static_cast<std::size_t>(dim) : 0;
    }
};

//! Values at the m circle grid points u_i = i / m, i = 0..m-1.
struct CircleGridPayload
{
    std::vector<double> values;
};

//! m x n real array, row-major.
struct MatrixPayload
{
    int rows = 1;
    int cols = 1;
    std::vector<double> entries;

    double at(int row, int col) const  // 1-based
    {
        return entries[static_cast<std::size_t>((row - 1) * cols + (col - 1))];
    }
};

struct Provenance
{
    std::string generator;
    std::vector<std::pair<std::string, double>> parameters;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// One realized sample path of a random field, immutable after construction.
class FieldRealization
{
  public:
    using Payload = std::variant<KernelPayload, CircleGridPayload, MatrixPayload>;

    FieldRealization(Space space, Payload payload, Provenance provenance);

    Space const& space() const noexcept { return space_; }
    Payload const& payload() const noexcept { return payload_; }
    Provenance const& provenance() const noexcept { return provenance_; }

    //! Throws SpaceMismatchError if t is not a point of space().
    double evaluate(Point const& t) const;

    //! Unchecked kernel-field evaluation at a unit vector.
    double evaluate_sphere(std::span<double const> t) const noexcept;

    //! Circle-grid and matrix values in storage order.
    std::span<double const> grid_values() const;

  private:
    Space space_;
    Payload payload_;
    Provenance provenance_;
};

inline double evaluate(FieldRealization const& field, Point const& t)
{
    return field.evaluate(t);
}

FieldRealization gen_kernel_field(int dim, std::size_t summits, PowerKernel kernel, CounterRng& rng);

//! Kernel field plus bump * K(|t - a|); bump == 0 yields the plain kernel field.
FieldRealization gen_biased_field(int dim, std::size_t summits, double bump, SpherePoint const& a,
                                  PowerKernel kernel, CounterRng& rng);

//! Kernel field with the given summits (one unit vector each).
FieldRealization make_kernel_field(int dim, std::vector<double> summits, PowerKernel kernel = {});

/*!
 * Discretized Gaussian bridge on m circle grid points.
 *
 * B_i = (S_i - (i/m) S_m) / sqrt(m) for a Gaussian walk S; B_0 = B_m = 0
 * and the increments are exchangeable.
 */
FieldRealization gen_bridge_field(std::size_t m, CounterRng& rng);

inline constexpr std::size_t kDefaultBridgeGrid = 1000;

FieldRealization make_circle_grid_field(std::vector<double> values);

//! t -> X(u + t mod 1) - X(u) + X(0). u must be a multiple of 1/m.
FieldRealization shift_field(FieldRealization const& field, double u);

//! Subtracts the grid mean.
FieldRealization center_field(FieldRealization const& field);

//! i.i.d. standard Gaussian entries, pairwise distinct.
FieldRealization gen_matrix_field(int rows, int cols, CounterRng& rng);

//! Matrix field with the given row-major entries (ties allowed here).
FieldRealization make_matrix_field(int rows, int cols, std::vector<double> entries);

/*!
 * Composition X_g(t) = X(g(t)).
 *
 * Supported for matrix fields under grid shifts, kernel fields under
 * rotations (summits move by R^T), and circle grid fields under rotations
 * by a multiple of 1/m.
 */
FieldRealization compose(FieldRealization const& field, Transform const& g);

//! True if any two grid values compare equal.
bool has_ties(std::span<double const> values);

}  // namespace sojourn_lab
