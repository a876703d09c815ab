#include "sojourn_lab/fields.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sojourn_lab/errors.hpp"

namespace sojourn_lab {
namespace {

template<class... Ts>
struct Overloaded : Ts...
{
    using Ts::operator()...;
};

inline double kernel_from_squared(double dist2, double exponent) noexcept
{
    // (|x|/2)^beta == (|x|^2/4)^(beta/2)
    return 1.0 - std::pow(0.25 * dist2, 0.5 * exponent);
}

inline double squared_distance(double const* a, double const* b, int dim) noexcept
{
    double acc = 0;
    for (int i = 0; i < dim; ++i)
    {
        double const diff = a[i] - b[i];
        acc += diff * diff;
    }
    return acc;
}

std::size_t grid_steps(double u, std::size_t m)
{
    double const scaled = u * static_cast<double>(m);
    double const steps = std::round(scaled);
    if (!std::isfinite(u) || std::abs(scaled - steps) > 1e-9)
        throw DomainError("shift is not a multiple of 1/m");
    auto const s = static_cast<long long>(steps) % static_cast<long long>(m);
    return static_cast<std::size_t>(s < 0 ? s + static_cast<long long>(m) : s);
}

std::vector<double> rotate_values(std::span<double const> values, std::size_t steps)
{
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        out[i] = values[(i + steps) % values.size()];
    return out;
}

void check_kernel(PowerKernel const& kernel)
{
    if (!(kernel.exponent > 0) || !std::isfinite(kernel.exponent))
        throw DomainError("kernel exponent must be positive");
}

CircleGridPayload const& circle_payload(FieldRealization const& field)
{
    auto const* grid = std::get_if<CircleGridPayload>(&field.payload());
    if (!grid)
        throw SpaceMismatchError("operation needs a circle grid field");
    return *grid;
}

std::vector<double> draw_summits(int dim, std::size_t count, CounterRng& rng)
{
    auto const d = static_cast<std::size_t>(dim);
    std::vector<double> summits(count * d);
    for (std::size_t k = 0; k < count; ++k)
        sample_sphere_into(std::span<double>{summits.data() + k * d, d}, rng);
    return summits;
}

}  // namespace

double kernel_default(double x_norm, double exponent)
{
    if (!(x_norm >= 0))
        throw DomainError("kernel argument must be a nonnegative norm");
    return 1.0 - std::pow(0.5 * x_norm, exponent);
}

FieldRealization::FieldRealization(Space space, Payload payload, Provenance provenance)
    : space_{space}, payload_{std::move(payload)}, provenance_{std::move(provenance)}
{
    std::visit(
        Overloaded{
            [&](KernelPayload const& k) {
                if (space_.kind() != SpaceKind::sphere || k.dim != space_.dim())
                    throw SpaceMismatchError("kernel field needs a sphere of matching dimension");
                if (k.summits.size() % static_cast<std::size_t>(k.dim) != 0)
                    throw DomainError("summit array is not a multiple of the dimension");
                if (k.bump != 0 && k.bias_center.size() != static_cast<std::size_t>(k.dim))
                    throw DomainError("biased kernel field needs a bias center");
            },
            [&](CircleGridPayload const& c) {
                if (space_.kind() != SpaceKind::circle)
                    throw SpaceMismatchError("circle grid field needs the circle");
                if (c.values.empty())
                    throw DomainError("circle grid field needs at least one value");
            },
            [&](MatrixPayload const& m) {
                if (space_.kind() != SpaceKind::grid || m.rows != space_.rows() || m.cols != space_.cols())
                    throw SpaceMismatchError("matrix field needs a grid of matching shape");
                if (m.entries.size() != space_.size())
                    throw DomainError("matrix entry count does not match its shape");
            }},
        payload_);
}

double FieldRealization::evaluate_sphere(std::span<double const> t) const noexcept
{
    auto const& k = std::get<KernelPayload>(payload_);
    double value = 0;
    std::size_t const count = k.summit_count();
    double const* summit = k.summits.data();
    for (std::size_t i = 0; i < count; ++i, summit += k.dim)
        value += kernel_from_squared(squared_distance(t.data(), summit, k.dim), k.kernel.exponent);
    if (k.bump != 0)
        value += k.bump * kernel_from_squared(squared_distance(t.data(), k.bias_center.data(), k.dim),
                                              k.kernel.exponent);
    return value;
}

double FieldRealization::evaluate(Point const& t) const
{
    require_point(space_, t);
    return std::visit(
        Overloaded{[&](KernelPayload const&) { return evaluate_sphere(std::get<SpherePoint>(t).v); },
                   [&](CircleGridPayload const& c) {
                       auto const i = lattice_floor(std::get<CirclePoint>(t).u, c.values.size());
                       return c.values[i];
                   },
                   [&](MatrixPayload const& m) {
                       auto const& cell = std::get<GridPoint>(t);
                       return m.at(cell.row, cell.col);
                   }},
        payload_);
}

std::span<double const> FieldRealization::grid_values() const
{
    if (auto const* c = std::get_if<CircleGridPayload>(&payload_))
        return c->values;
    if (auto const* m = std::get_if<MatrixPayload>(&payload_))
        return m->entries;
    throw UnsupportedSpaceError("kernel fields have no grid values");
}

FieldRealization gen_kernel_field(int dim, std::size_t summits, PowerKernel kernel, CounterRng& rng)
{
    check_kernel(kernel);
    Space const space = Space::sphere(dim);
    KernelPayload payload;
    payload.dim = dim;
    payload.kernel = kernel;
    payload.summits = draw_summits(dim, summits, rng);
    Provenance prov{"kernel",
                    {{"dim", dim}, {"summits", static_cast<double>(summits)}, {"kernel_exp", kernel.exponent}},
                    rng.key(),
                    rng.stream_id()};
    return FieldRealization{space, std::move(payload), std::move(prov)};
}

FieldRealization gen_biased_field(int dim, std::size_t summits, double bump, SpherePoint const& a,
                                  PowerKernel kernel, CounterRng& rng)
{
    if (!std::isfinite(bump))
        throw DomainError("bias amplitude must be finite");
    Space const space = Space::sphere(dim);
    require_point(space, a);
    auto base = gen_kernel_field(dim, summits, kernel, rng);
    if (bump == 0)
        return base;
    auto payload = std::get<KernelPayload>(base.payload());
    payload.bump = bump;
    payload.bias_center = a.v;
    Provenance prov = base.provenance();
    prov.generator = "biased-kernel";
    prov.parameters.emplace_back("bump", bump);
    return FieldRealization{space, std::move(payload), std::move(prov)};
}

FieldRealization make_kernel_field(int dim, std::vector<double> summits, PowerKernel kernel)
{
    check_kernel(kernel);
    Space const space = Space::sphere(dim);
    KernelPayload payload;
    payload.dim = dim;
    payload.kernel = kernel;
    payload.summits = std::move(summits);
    auto const count = static_cast<double>(payload.summit_count());
    return FieldRealization{
        space, std::move(payload),
        Provenance{"kernel", {{"dim", dim}, {"summits", count}, {"kernel_exp", kernel.exponent}}, 0, 0}};
}

FieldRealization gen_bridge_field(std::size_t m, CounterRng& rng)
{
    if (m < 2)
        throw DomainError("bridge needs at least 2 grid points");
    std::normal_distribution<double> normal;
    std::vector<double> walk(m + 1, 0.0);
    for (std::size_t i = 1; i <= m; ++i)
        walk[i] = walk[i - 1] + normal(rng);

    auto const md = static_cast<double>(m);
    double const scale = 1.0 / std::sqrt(md);
    double const total = walk[m];
    std::vector<double> values(m);
    for (std::size_t i = 0; i < m; ++i)
        values[i] = (walk[i] - (static_cast<double>(i) / md) * total) * scale;
    double const endpoint = (walk[m] - (md / md) * total) * scale;
    if (values[0] != 0.0 || endpoint != 0.0)
        throw GenerationError("bridge endpoints are not pinned at zero");

    return FieldRealization{Space::circle(), CircleGridPayload{std::move(values)},
                            Provenance{"bridge", {{"grid", md}}, rng.key(), rng.stream_id()}};
}

FieldRealization make_circle_grid_field(std::vector<double> values)
{
    auto const m = static_cast<double>(values.size());
    return FieldRealization{Space::circle(), CircleGridPayload{std::move(values)},
                            Provenance{"circle-grid", {{"grid", m}}, 0, 0}};
}

FieldRealization shift_field(FieldRealization const& field, double u)
{
    auto const& grid = circle_payload(field);
    std::size_t const m = grid.values.size();
    std::size_t const steps = grid_steps(u, m);
    double const offset = grid.values[0] - grid.values[steps];
    auto values = rotate_values(grid.values, steps);
    for (auto& v : values)
        v += offset;
    Provenance prov = field.provenance();
    prov.parameters.emplace_back("shift", u);
    return FieldRealization{field.space(), CircleGridPayload{std::move(values)}, std::move(prov)};
}

FieldRealization center_field(FieldRealization const& field)
{
    auto const& grid = circle_payload(field);
    double const mean = std::accumulate(grid.values.begin(), grid.values.end(), 0.0)
                        / static_cast<double>(grid.values.size());
    auto values = grid.values;
    for (auto& v : values)
        v -= mean;
    Provenance prov = field.provenance();
    prov.parameters.emplace_back("centered", 1.0);
    return FieldRealization{field.space(), CircleGridPayload{std::move(values)}, std::move(prov)};
}

FieldRealization gen_matrix_field(int rows, int cols, CounterRng& rng)
{
    Space const space = Space::grid(rows, cols);
    std::normal_distribution<double> normal;
    constexpr int max_attempts = 8;
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        std::vector<double> entries(space.size());
        for (auto& e : entries)
            e = normal(rng);
        if (has_ties(entries))
            continue;
        return FieldRealization{
            space, MatrixPayload{rows, cols, std::move(entries)},
            Provenance{"matrix", {{"rows", rows}, {"cols", cols}}, rng.key(), rng.stream_id()}};
    }
    throw GenerationError("matrix entries kept tying after retries");
}

FieldRealization make_matrix_field(int rows, int cols, std::vector<double> entries)
{
    Space const space = Space::grid(rows, cols);
    return FieldRealization{space, MatrixPayload{rows, cols, std::move(entries)},
                            Provenance{"matrix", {{"rows", rows}, {"cols", cols}}, 0, 0}};
}

FieldRealization compose(FieldRealization const& field, Transform const& g)
{
    if (!is_valid(field.space(), g))
        throw SpaceMismatchError("transform does not act on " + field.space().describe());
    Provenance prov = field.provenance();
    prov.generator += "+composed";

    if (auto const* m = std::get_if<MatrixPayload>(&field.payload()))
    {
        MatrixPayload out{m->rows, m->cols, std::vector<double>(m->entries.size())};
        for (int i = 1; i <= m->rows; ++i)
            for (int j = 1; j <= m->cols; ++j)
            {
                auto const image = std::get<GridPoint>(sojourn_lab::apply(g, GridPoint{i, j}));
                out.entries[static_cast<std::size_t>((i - 1) * m->cols + (j - 1))]
                    = m->at(image.row, image.col);
            }
        return FieldRealization{field.space(), std::move(out), std::move(prov)};
    }
    if (auto const* k = std::get_if<KernelPayload>(&field.payload()))
    {
        // X(R t) = sum K(|R t - U|) = sum K(|t - R^T U|)
        auto const inverse = transpose(std::get<SphereRotation>(g));
        auto move_point = [&](std::span<double const> v) {
            auto image = std::get<SpherePoint>(sojourn_lab::apply(inverse, SpherePoint{{v.begin(), v.end()}}));
            return image.v;
        };
        KernelPayload out = *k;
        auto const d = static_cast<std::size_t>(k->dim);
        for (std::size_t s = 0; s < k->summit_count(); ++s)
        {
            auto moved = move_point(std::span<double const>{k->summits.data() + s * d, d});
            std::copy(moved.begin(), moved.end(), out.summits.begin() + static_cast<std::ptrdiff_t>(s * d));
        }
        if (k->bump != 0)
            out.bias_center = move_point(k->bias_center);
        return FieldRealization{field.space(), std::move(out), std::move(prov)};
    }
    auto const& grid = std::get<CircleGridPayload>(field.payload());
    auto const steps = grid_steps(std::get<CircleRotation>(g).u, grid.values.size());
    return FieldRealization{field.space(), CircleGridPayload{rotate_values(grid.values, steps)},
                            std::move(prov)};
}

bool has_ties(std::span<double const> values)
{
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

}  // namespace sojourn_lab
