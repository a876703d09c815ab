// sojourn-lab: run sojourn-law experiments and write CSV/JSON/SVG reports.
//
// Exit codes: 0 verdict pass, 1 verdict fail, 2 usage or config error,
// 3 I/O error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/experiment.hpp"

namespace {

enum ExitCode
{
    kPass = 0,
    kFail = 1,
    kUsage = 2,
    kIo = 3
};

bool parse_bool(std::string const& text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    throw sojourn_lab::ConfigError("expected a boolean, got '" + text + "'");
}

}  // namespace

int main(int argc, char** argv)
{
    using namespace sojourn_lab;

    CLI::App app{"Simulate group-invariant random fields and test their uniform sojourn laws"};
    app.set_version_flag("--version", "sojourn-lab 0.1.0");

    ExperimentConfig config;
    std::string experiment;
    std::string antithetic = "true";
    std::string base;
    std::string out_dir = "out";

    app.add_option("experiment", experiment,
                   "planet | bridge | matrix | validate-nu | oracle | negative-control")
        ->required();
    app.add_option("--seed", config.seed, "64-bit master seed")->capture_default_str();
    app.add_option("--replications", config.replications, "number of replications R")
        ->capture_default_str();
    app.add_option("--summits", config.summits, "kernel field summit count n")->capture_default_str();
    app.add_option("--dim", config.dim, "ambient dimension d of the sphere S^{d-1}")->capture_default_str();
    app.add_option("--kernel-exp", config.kernel_exp, "kernel exponent beta")->capture_default_str();
    app.add_option("--eval-points", config.eval_points, "Monte Carlo evaluation points k")
        ->capture_default_str();
    app.add_option("--antithetic", antithetic, "pair each evaluation point with its antipode")
        ->capture_default_str();
    app.add_option("--bins", config.bins, "histogram bins")->capture_default_str();
    app.add_option("--rows", config.rows, "matrix rows m")->capture_default_str();
    app.add_option("--cols", config.cols, "matrix columns n")->capture_default_str();
    app.add_option("--grid-size", config.grid_size, "bridge grid points")->capture_default_str();
    app.add_option("--bump", config.bump, "negative-control bias amplitude")->capture_default_str();
    app.add_option("--alpha", config.alpha, "significance level of the verdict")->capture_default_str();
    app.add_option("--group", config.group, "validate-nu group: rotation | circle | shifts")
        ->capture_default_str();
    app.add_option("--base", base, "oracle base matrix, rows separated by ';', e.g. \"1,2;3,4\"");
    app.add_option("--workers", config.workers, "worker threads (0 = all cores); never changes output")
        ->capture_default_str();
    app.add_option("--out", out_dir, "output directory")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try
    {
        config.experiment = parse_experiment(experiment);
        config.antithetic = parse_bool(antithetic);
        if (!base.empty())
            config.base = parse_matrix(base);
        config.out_dir = out_dir;

        auto const result = run_experiment(config);

        std::cout << to_string(config.experiment) << ": ";
        if (result.uniformity)
        {
            auto const& r = *result.uniformity;
            std::cout << "n=" << r.sample_size << " KS D=" << r.ks_D << " p=" << r.ks_p
                      << " chi2=" << r.chi2_stat << " (df " << r.chi2_df << ", p=" << r.chi2_p << ")";
        }
        else
        {
            std::size_t flagged = 0;
            for (auto const& c : result.pushforward)
                flagged += c.flagged ? 1 : 0;
            std::cout << result.pushforward.size() << " test sets, " << flagged << " flagged";
        }
        std::cout << " -> " << (result.pass ? "pass" : "fail") << "\n"
                  << "wrote " << config.out_dir.string() << "\n";
        return result.pass ? kPass : kFail;
    }
    catch (ConfigError const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (DomainError const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (IoError const& e)
    {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kIo;
    }
    catch (Error const& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
}
