#include "sojourn_lab/experiment.hpp"

#include <cmath>
#include <sstream>

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/fields.hpp"
#include "sojourn_lab/parallel.hpp"
#include "sojourn_lab/report_io.hpp"
#include "sojourn_lab/sojourn.hpp"

namespace sojourn_lab {
namespace {

using json = nlohmann::ordered_json;

constexpr char const* kToolName = "sojourn-lab";
constexpr char const* kToolVersion = "0.1.0";

struct ReplicationOutput
{
    double value = 0;
    std::size_t count = 0;
    std::size_t ties = 0;
};

//! Runs body(rng) -> ReplicationOutput for every replication, stored by index.
template<class Body>
std::vector<ReplicationOutput> replicate(ExperimentConfig const& config, Body const& body)
{
    std::vector<ReplicationOutput> out(config.replications);
    parallel_for(config.replications, config.workers, [&](std::size_t r) {
        auto rng = replication_stream(config.seed, r);
        out[r] = body(rng);
    });
    return out;
}

std::vector<double> values_of(std::vector<ReplicationOutput> const& reps)
{
    std::vector<double> out;
    out.reserve(reps.size());
    for (auto const& r : reps)
        out.push_back(r.value);
    return out;
}

//! Histogram of the integer numerators over atoms lowest..lowest+atoms-1.
std::vector<std::size_t> atom_counts(std::vector<ReplicationOutput> const& reps, std::size_t lowest,
                                     std::size_t atoms)
{
    std::vector<std::size_t> counts(atoms, 0);
    for (auto const& r : reps)
    {
        if (r.count < lowest || r.count - lowest >= atoms)
            throw InvariantViolation("sojourn count outside its atom range");
        ++counts[r.count - lowest];
    }
    return counts;
}

std::size_t total_ties(std::vector<ReplicationOutput> const& reps)
{
    std::size_t ties = 0;
    for (auto const& r : reps)
        ties += r.ties;
    return ties;
}

json histogram_json(Histogram const& h)
{
    json out;
    out["bins"] = h.bins();
    out["edges"] = h.edges;
    out["counts"] = h.counts;
    out["density"] = h.density;
    return out;
}

json uniformity_json(UniformityReport const& r)
{
    json out;
    out["sample_size"] = r.sample_size;
    out["histogram"] = histogram_json(r.histogram);
    out["ks"] = {{"D", r.ks_D}, {"p", r.ks_p}};
    if (r.verdict_test == VerdictTest::ks_resolution)
        out["ks"]["critical_D"] = r.ks_critical;
    out["chi_square"] = {{"cells", r.chi2_cells}, {"stat", r.chi2_stat}, {"df", r.chi2_df}, {"p", r.chi2_p}};
    out["alpha"] = r.alpha;
    out["verdict_test"] = to_string(r.verdict_test);
    out["verdict"] = r.pass ? "pass" : "fail";
    out["metadata"] = {{"generator", r.generator}, {"seed", r.seed}, {"estimator", r.method}};
    return out;
}

json pushforward_json(std::vector<PushforwardCheck> const& checks)
{
    json out = json::array();
    for (auto const& c : checks)
    {
        json item;
        item["set"] = c.set;
        item["exact_measure"] = c.exact_measure;
        item["frequency"] = c.frequency;
        item["std_error"] = c.std_error;
        item["deviation"] = c.deviation;
        item["samples"] = c.samples;
        item["exhaustive"] = c.exhaustive;
        item["flagged"] = c.flagged;
        out.push_back(std::move(item));
    }
    return out;
}

json base_report(ExperimentConfig const& config)
{
    json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["experiment"] = to_string(config.experiment);
    doc["config"] = config_to_json(config);
    return doc;
}

void finish_uniformity(ExperimentResult& result, UniformityReport report, std::string generator,
                       std::string method)
{
    report.generator = std::move(generator);
    report.seed = result.config.seed;
    report.method = std::move(method);
    result.pass = report.pass;
    result.report["result"] = uniformity_json(report);
    result.report["monitoring"] = {{"tied_evaluations", result.tied_evaluations}};
    result.uniformity = std::move(report);
}

void run_planet(ExperimentResult& result, bool biased)
{
    auto const& cfg = result.config;
    PowerKernel const kernel{cfg.kernel_exp};
    SpherePoint const anchor = north_pole(cfg.dim);

    auto const reps = replicate(cfg, [&](CounterRng& rng) {
        auto const field = biased ? gen_biased_field(cfg.dim, cfg.summits, cfg.bump, anchor, kernel, rng)
                                  : gen_kernel_field(cfg.dim, cfg.summits, kernel, rng);
        auto const est = sojourn_mc(field, anchor, cfg.eval_points, cfg.antithetic, rng);
        return ReplicationOutput{est.value, est.count, est.ties};
    });

    result.samples = values_of(reps);
    result.tied_evaluations = total_ties(reps);
    std::string const method = to_string(cfg.antithetic ? SojournMethod::mc_antithetic : SojournMethod::mc_plain);
    std::string const generator = biased ? "biased-kernel" : "kernel";

    if (!cfg.antithetic && !biased)
    {
        // Plain MC on a field with uniform sojourn law: count is uniform on {0..k}.
        auto const counts = atom_counts(reps, 0, cfg.eval_points + 1);
        auto report = summarize_uniformity(result.samples, cfg.bins, cfg.alpha, VerdictTest::chi_square,
                                           std::span<std::size_t const>{counts});
        finish_uniformity(result, std::move(report), generator, method);
        return;
    }
    auto report = summarize_uniformity(result.samples, cfg.bins, cfg.alpha, VerdictTest::ks_resolution,
                                       std::nullopt, 1.0 / static_cast<double>(cfg.eval_points));
    finish_uniformity(result, std::move(report), generator, method);
}

void run_bridge(ExperimentResult& result)
{
    auto const& cfg = result.config;
    auto const reps = replicate(cfg, [&](CounterRng& rng) {
        auto const field = gen_bridge_field(cfg.grid_size, rng);
        auto const est = sojourn_grid_circle(field, 0.0);
        return ReplicationOutput{est.value, est.count, 0};
    });
    result.samples = values_of(reps);
    auto report = summarize_uniformity(result.samples, cfg.bins, cfg.alpha, VerdictTest::ks);
    finish_uniformity(result, std::move(report), "bridge", to_string(SojournMethod::grid));
}

void run_matrix(ExperimentResult& result)
{
    auto const& cfg = result.config;
    GridPoint const anchor{1, 1};
    auto const reps = replicate(cfg, [&](CounterRng& rng) {
        auto const field = gen_matrix_field(cfg.rows, cfg.cols, rng);
        auto const est = sojourn_exact_discrete(field, anchor);
        return ReplicationOutput{est.value, est.count, 0};
    });
    result.samples = values_of(reps);
    auto const n = static_cast<std::size_t>(cfg.rows) * static_cast<std::size_t>(cfg.cols);
    auto const counts = atom_counts(reps, 1, n);
    auto report = summarize_uniformity(result.samples, cfg.bins, cfg.alpha, VerdictTest::chi_square,
                                       std::span<std::size_t const>{counts});
    finish_uniformity(result, std::move(report), "matrix", to_string(SojournMethod::exact));
}

FieldRealization oracle_base(ExperimentConfig const& cfg)
{
    if (cfg.base.empty())
    {
        auto rng = replication_stream(cfg.seed, 0);
        return gen_matrix_field(cfg.rows, cfg.cols, rng);
    }
    auto const rows = static_cast<int>(cfg.base.size());
    auto const cols = static_cast<int>(cfg.base.front().size());
    std::vector<double> entries;
    for (auto const& row : cfg.base)
        entries.insert(entries.end(), row.begin(), row.end());
    return make_matrix_field(rows, cols, std::move(entries));
}

void run_oracle(ExperimentResult& result)
{
    auto const& cfg = result.config;
    auto const base = oracle_base(cfg);
    Space const& space = base.space();
    GridPoint const anchor{1, 1};
    auto const law = enumerate_orbit_law(base, anchor);

    bool all_uniform = true;
    for (auto const& p : all_grid_points(space))
        all_uniform = all_uniform && enumerate_orbit_law(base, std::get<GridPoint>(p)).is_uniform();

    // One sample per group element: the anchored sojourn of the shifted base.
    GroupSpec const group{space, GroupFamily::cyclic_shifts};
    for (auto const& g : enumerate_group(group))
        result.samples.push_back(sojourn_exact_discrete(compose(base, g), anchor).value);

    auto const counts = law.counts(space.size());
    auto report = summarize_uniformity(result.samples, cfg.bins, cfg.alpha, VerdictTest::chi_square,
                                       std::span<std::size_t const>{counts});
    report.pass = report.pass && law.is_uniform() && all_uniform;

    json law_doc;
    law_doc["anchor"] = {anchor.row, anchor.col};
    law_doc["atoms"] = law.atoms;
    law_doc["pmf"] = law.pmf_strings();
    law_doc["uniform"] = law.is_uniform();
    law_doc["all_anchors_uniform"] = all_uniform;
    result.report["orbit_law"] = std::move(law_doc);
    result.orbit_law = law;
    finish_uniformity(result, std::move(report), "orbit", "exhaustive");
}

GroupSpec validate_nu_group(ExperimentConfig const& cfg)
{
    if (cfg.group == "rotation")
        return GroupSpec{Space::sphere(cfg.dim), GroupFamily::special_orthogonal};
    if (cfg.group == "circle")
        return GroupSpec{Space::circle(), GroupFamily::circle_rotations};
    if (cfg.group == "shifts")
        return GroupSpec{Space::grid(cfg.rows, cfg.cols), GroupFamily::cyclic_shifts};
    throw ConfigError("unknown group '" + cfg.group + "' (expected rotation, circle, or shifts)");
}

void run_validate_nu(ExperimentResult& result)
{
    auto const& cfg = result.config;
    GroupSpec const group = validate_nu_group(cfg);
    auto const battery = pushforward_battery(group);
    Point anchor = GridPoint{1, 1};
    if (group.space().kind() == SpaceKind::sphere)
        anchor = north_pole(cfg.dim);
    else if (group.space().kind() == SpaceKind::circle)
        anchor = CirclePoint{0.0};

    if (group.is_finite())
    {
        result.pushforward = check_pushforward_exhaustive(group, anchor, battery);
    }
    else
    {
        auto rng = replication_stream(cfg.seed, 0);
        result.pushforward = check_pushforward(group, anchor, battery, cfg.replications, rng);
    }
    result.pass = true;
    for (auto const& c : result.pushforward)
        result.pass = result.pass && !c.flagged;

    result.report["group"] = {{"family", to_string(group.family())}, {"space", group.space().describe()},
                              {"anchor", describe(anchor)}};
    result.report["sigma_threshold"] = kFlagSigmas;
    result.report["checks"] = pushforward_json(result.pushforward);
    result.report["verdict"] = result.pass ? "pass" : "fail";
}

std::string histogram_title(ExperimentConfig const& cfg)
{
    std::ostringstream os;
    os << to_string(cfg.experiment) << ": " << cfg.replications << " replications, seed " << cfg.seed;
    return os.str();
}

}  // namespace

std::string to_string(ExperimentKind kind)
{
    switch (kind)
    {
        case ExperimentKind::planet:
            return "planet";
        case ExperimentKind::bridge:
            return "bridge";
        case ExperimentKind::matrix:
            return "matrix";
        case ExperimentKind::validate_nu:
            return "validate-nu";
        case ExperimentKind::oracle:
            return "oracle";
        case ExperimentKind::negative_control:
            return "negative-control";
    }
    return "unknown";
}

ExperimentKind parse_experiment(std::string const& name)
{
    for (auto kind : {ExperimentKind::planet, ExperimentKind::bridge, ExperimentKind::matrix,
                      ExperimentKind::validate_nu, ExperimentKind::oracle, ExperimentKind::negative_control})
    {
        if (to_string(kind) == name)
            return kind;
    }
    throw ConfigError("unknown experiment '" + name + "'");
}

void validate(ExperimentConfig const& c)
{
    auto fail = [](std::string const& msg) { throw ConfigError(msg); };
    if (c.replications < 1)
        fail("replications must be at least 1");
    if (c.dim < 2)
        fail("dim must be at least 2");
    if (c.rows < 1 || c.cols < 1)
        fail("rows and cols must be at least 1");
    if (c.grid_size < 2)
        fail("grid size must be at least 2");
    if (!(c.kernel_exp > 0) || !std::isfinite(c.kernel_exp))
        fail("kernel exponent must be positive");
    if (c.eval_points < 2)
        fail("eval-points must be at least 2");
    if (c.antithetic && c.eval_points % 2 != 0)
        fail("eval-points must be even when antithetic");
    if (c.bins < 1)
        fail("bins must be at least 1");
    if (!(c.alpha > 0 && c.alpha < 1))
        fail("alpha must lie in (0, 1)");
    if (c.experiment == ExperimentKind::negative_control && (c.bump == 0 || !std::isfinite(c.bump)))
        fail("negative-control needs a finite nonzero bump");
    if (c.experiment == ExperimentKind::validate_nu && c.group != "rotation" && c.group != "circle"
        && c.group != "shifts")
        fail("group must be rotation, circle, or shifts");
    if (c.experiment == ExperimentKind::oracle && !c.base.empty())
    {
        auto const width = c.base.front().size();
        if (width == 0)
            fail("base matrix rows must be nonempty");
        for (auto const& row : c.base)
            if (row.size() != width)
                fail("base matrix rows differ in length");
    }
}

json config_to_json(ExperimentConfig const& c)
{
    json out;
    out["experiment"] = to_string(c.experiment);
    out["seed"] = c.seed;
    if (c.experiment != ExperimentKind::oracle)
        out["replications"] = c.replications;
    switch (c.experiment)
    {
        case ExperimentKind::planet:
        case ExperimentKind::negative_control:
            out["dim"] = c.dim;
            out["summits"] = c.summits;
            out["kernel_exp"] = c.kernel_exp;
            if (c.experiment == ExperimentKind::negative_control)
                out["bump"] = c.bump;
            out["anchor"] = "north-pole";
            out["eval_points"] = c.eval_points;
            out["antithetic"] = c.antithetic;
            break;
        case ExperimentKind::bridge:
            out["grid_size"] = c.grid_size;
            out["level"] = 0.0;
            break;
        case ExperimentKind::matrix:
            out["rows"] = c.rows;
            out["cols"] = c.cols;
            out["anchor"] = {1, 1};
            break;
        case ExperimentKind::oracle:
            out["rows"] = c.base.empty() ? c.rows : static_cast<int>(c.base.size());
            out["cols"] = c.base.empty() ? c.cols : static_cast<int>(c.base.front().size());
            out["base"] = c.base;
            break;
        case ExperimentKind::validate_nu:
            out["group"] = c.group;
            if (c.group == "rotation")
                out["dim"] = c.dim;
            if (c.group == "shifts")
            {
                out["rows"] = c.rows;
                out["cols"] = c.cols;
            }
            break;
    }
    out["bins"] = c.bins;
    out["alpha"] = c.alpha;
    return out;
}

std::vector<TestSet> pushforward_battery(GroupSpec const& group)
{
    Space const& space = group.space();
    std::vector<TestSet> sets;
    switch (space.kind())
    {
        case SpaceKind::sphere:
            for (double p : {0.1, 0.25, 0.5})
                sets.emplace_back(SphereCap{cap_threshold_for_measure(space.dim(), p)});
            sets.emplace_back(SphereCap{1.0});  // empty cap
            break;
        case SpaceKind::circle:
            sets.emplace_back(CircleArc{0.0, 0.1});
            sets.emplace_back(CircleArc{0.0, 0.3});
            sets.emplace_back(CircleArc{0.25, 0.75});
            sets.emplace_back(CircleArc{0.5, 0.5});
            break;
        case SpaceKind::grid: {
            for (auto const& p : all_grid_points(space))
                sets.emplace_back(CellSet{{std::get<GridPoint>(p)}});
            CellSet first_row;
            for (int j = 1; j <= space.cols(); ++j)
                first_row.cells.push_back(GridPoint{1, j});
            sets.emplace_back(std::move(first_row));
            sets.emplace_back(CellSet{});
            break;
        }
    }
    return sets;
}

std::vector<std::vector<double>> parse_matrix(std::string const& text)
{
    std::vector<std::vector<double>> rows;
    std::stringstream row_stream(text);
    std::string row_text;
    while (std::getline(row_stream, row_text, ';'))
    {
        std::vector<double> row;
        std::stringstream cell_stream(row_text);
        std::string cell;
        while (std::getline(cell_stream, cell, ','))
        {
            char* end = nullptr;
            double const v = std::strtod(cell.c_str(), &end);
            while (end && *end == ' ')
                ++end;
            if (cell.empty() || end == cell.c_str() || *end != '\0')
                throw ConfigError("bad matrix entry '" + cell + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        throw ConfigError("empty matrix");
    return rows;
}

ExperimentResult run_experiment(ExperimentConfig const& config)
{
    validate(config);
    ExperimentResult result;
    result.config = config;
    result.report = base_report(config);

    switch (config.experiment)
    {
        case ExperimentKind::planet:
            run_planet(result, false);
            break;
        case ExperimentKind::negative_control:
            run_planet(result, true);
            break;
        case ExperimentKind::bridge:
            run_bridge(result);
            break;
        case ExperimentKind::matrix:
            run_matrix(result);
            break;
        case ExperimentKind::oracle:
            run_oracle(result);
            break;
        case ExperimentKind::validate_nu:
            run_validate_nu(result);
            break;
    }

    if (!config.out_dir.empty())
    {
        std::error_code ec;
        std::filesystem::create_directories(config.out_dir, ec);
        if (ec)
            throw IoError("cannot create output directory " + config.out_dir.string() + ": " + ec.message());
        write_json(config.out_dir / "report.json", result.report);
        if (config.experiment != ExperimentKind::validate_nu)
        {
            write_samples_csv(config.out_dir / "samples.csv", result.samples);
            write_histogram_svg(config.out_dir / "histogram.svg", result.uniformity->histogram,
                                histogram_title(config));
        }
    }
    return result;
}

}  // namespace sojourn_lab
