#include "sojourn_lab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#include "sojourn_lab/errors.hpp"
#include "sojourn_lab/param_space.hpp"

namespace sojourn_lab {

Histogram histogram(std::span<double const> samples, std::size_t bins)
{
    if (bins < 1)
        throw DomainError("histogram needs at least one bin");
    Histogram h;
    h.edges.resize(bins + 1);
    for (std::size_t b = 0; b <= bins; ++b)
        h.edges[b] = static_cast<double>(b) / static_cast<double>(bins);
    h.counts.assign(bins, 0);
    for (double x : samples)
    {
        if (!(x >= 0.0 && x <= 1.0))
            throw DomainError("histogram sample " + std::to_string(x) + " outside [0, 1]");
        ++h.counts[lattice_floor(x, bins)];
    }
    h.sample_size = samples.size();
    h.density.assign(bins, 0.0);
    if (h.sample_size > 0)
    {
        double const scale = static_cast<double>(bins) / static_cast<double>(h.sample_size);
        for (std::size_t b = 0; b < bins; ++b)
            h.density[b] = static_cast<double>(h.counts[b]) * scale;
    }
    return h;
}

double kolmogorov_survival(double lambda)
{
    if (!(lambda > 0))
        return 1.0;
    double const a = -2.0 * lambda * lambda;
    double sum = 0;
    double sign = 1;
    for (long j = 1; j < 10'000'000; ++j)
    {
        double const term = std::exp(a * static_cast<double>(j) * static_cast<double>(j));
        sum += sign * term;
        if (term < 1e-12)
            break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_uniform(std::span<double const> samples)
{
    if (samples.empty())
        throw DomainError("KS test needs at least one sample");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() >= 0.0 && sorted.back() <= 1.0))
        throw DomainError("KS uniform test needs samples in [0, 1]");

    auto const n = static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i)
    {
        double const above = static_cast<double>(i + 1) / n - sorted[i];
        double const below = sorted[i] - static_cast<double>(i) / n;
        d = std::max({d, above, below});
    }
    return KsResult{d, kolmogorov_survival(std::sqrt(n) * d)};
}

double chi_square_survival(double stat, int df)
{
    if (df <= 0 || !(stat > 0))
        return 1.0;
    return boost::math::gamma_q(0.5 * df, 0.5 * stat);
}

ChiSquareResult chi_square_uniform(std::span<std::size_t const> counts,
                                   std::optional<std::span<double const>> expected_pmf)
{
    if (counts.empty())
        throw DomainError("chi-square needs at least one cell");
    std::size_t const total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (total < 1)
        throw DomainError("chi-square needs a nonempty sample");

    std::vector<double> pmf;
    if (expected_pmf)
    {
        if (expected_pmf->size() != counts.size())
            throw DomainError("expected pmf and counts differ in length");
        pmf.assign(expected_pmf->begin(), expected_pmf->end());
        double const mass = std::accumulate(pmf.begin(), pmf.end(), 0.0);
        if (std::abs(mass - 1.0) > 1e-9)
            throw DomainError("expected pmf does not sum to 1");
    }
    else
    {
        pmf.assign(counts.size(), 1.0 / static_cast<double>(counts.size()));
    }

    ChiSquareResult result;
    auto const n = static_cast<double>(total);
    for (std::size_t i = 0; i < counts.size(); ++i)
    {
        double const expected = n * pmf[i];
        if (!(expected > 0))
            throw DomainError("chi-square cell " + std::to_string(i) + " has zero expected count");
        double const diff = static_cast<double>(counts[i]) - expected;
        result.stat += diff * diff / expected;
    }
    result.df = static_cast<int>(counts.size()) - 1;
    result.p = chi_square_survival(result.stat, result.df);
    return result;
}

double kolmogorov_critical(double alpha)
{
    if (!(alpha > 0 && alpha < 1))
        throw DomainError("significance level must lie in (0, 1)");
    double lo = 0.0;
    double hi = 10.0;
    for (int iter = 0; iter < 200; ++iter)
    {
        double const mid = 0.5 * (lo + hi);
        if (kolmogorov_survival(mid) > alpha)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string to_string(VerdictTest test)
{
    switch (test)
    {
        case VerdictTest::ks:
            return "ks";
        case VerdictTest::ks_resolution:
            return "ks-resolution";
        case VerdictTest::chi_square:
            return "chi-square";
    }
    return "unknown";
}

UniformityReport summarize_uniformity(std::span<double const> samples, std::size_t bins, double alpha,
                                      VerdictTest verdict_test,
                                      std::optional<std::span<std::size_t const>> atom_counts,
                                      double resolution)
{
    UniformityReport report;
    report.sample_size = samples.size();
    report.histogram = histogram(samples, bins);
    auto const ks = ks_uniform(samples);
    report.ks_D = ks.D;
    report.ks_p = ks.p;

    auto const chi = atom_counts ? chi_square_uniform(*atom_counts)
                                 : chi_square_uniform(report.histogram.counts);
    report.chi2_stat = chi.stat;
    report.chi2_df = chi.df;
    report.chi2_p = chi.p;
    report.chi2_cells = atom_counts ? "atoms" : "bins";

    report.alpha = alpha;
    report.verdict_test = verdict_test;
    switch (verdict_test)
    {
        case VerdictTest::ks:
            report.pass = report.ks_p > alpha;
            break;
        case VerdictTest::ks_resolution:
            report.ks_critical = kolmogorov_critical(alpha) / std::sqrt(static_cast<double>(samples.size()))
                                 + resolution;
            report.pass = report.ks_D <= report.ks_critical;
            break;
        case VerdictTest::chi_square:
            report.pass = report.chi2_p > alpha;
            break;
    }
    return report;
}

}  // namespace sojourn_lab
