#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sojourn_lab {

/// Equal-width histogram on [0, 1]; the last bin is closed on the right.
struct Histogram
{
    std::vector<double> edges;         //!< bins + 1 edges, edges[b] = b / bins
    std::vector<std::size_t> counts;
    std::vector<double> density;       //!< count * bins / sample_size
    std::size_t sample_size = 0;

    std::size_t bins() const noexcept { return counts.size(); }
};

Histogram histogram(std::span<double const> samples, std::size_t bins);

struct KsResult
{
    double D = 0;
    double p = 1;
};

/*!
 * One-sample Kolmogorov-Smirnov test against U(0, 1).
 *
 * The p-value uses the asymptotic Kolmogorov distribution, which is
 * accurate for the sample sizes used here (>= 1e3).
 */
KsResult ks_uniform(std::span<double const> samples);

//! P(K > lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2), clamped to [0, 1].
double kolmogorov_survival(double lambda);

struct ChiSquareResult
{
    double stat = 0;
    int df = 0;
    double p = 1;
};

/*!
 * Pearson chi-square goodness of fit.
 *
 * expected_pmf defaults to uniform over the cells and must sum to 1. Throws
 * DomainError for a zero expected cell or an empty sample.
 */
ChiSquareResult chi_square_uniform(std::span<std::size_t const> counts,
                                   std::optional<std::span<double const>> expected_pmf = std::nullopt);

//! Upper tail of the chi-square distribution with df degrees of freedom.
double chi_square_survival(double stat, int df);

//! lambda with kolmogorov_survival(lambda) = alpha.
double kolmogorov_critical(double alpha);

/*!
 * Which statistic decides the verdict.
 *
 * ks_resolution is for estimates on a lattice of spacing `resolution`
 * (e.g. Monte Carlo proportions j/k): it passes when
 * D <= kolmogorov_critical(alpha)/sqrt(n) + resolution, since a lattice
 * sample sits up to one lattice step from any continuous CDF.
 */
enum class VerdictTest
{
    ks,
    ks_resolution,
    chi_square
};

std::string to_string(VerdictTest test);

struct UniformityReport
{
    std::size_t sample_size = 0;
    Histogram histogram;
    double ks_D = 0;
    double ks_p = 1;
    double ks_critical = 0;  //!< D threshold when verdict_test is ks_resolution
    double chi2_stat = 0;
    int chi2_df = 0;
    double chi2_p = 1;
    std::string chi2_cells;  //!< "atoms" or "bins"
    VerdictTest verdict_test = VerdictTest::ks;
    double alpha = 0.001;
    bool pass = true;
    std::string generator;
    std::uint64_t seed = 0;
    std::string method;
};

inline constexpr double kDefaultAlpha = 0.001;

/*!
 * Histogram, KS, and chi-square summary of a sample of sojourn values.
 *
 * When atom_counts is given the chi-square runs over those atoms against
 * the uniform pmf; otherwise over the histogram bins. The verdict passes
 * when the p-value of `verdict_test` exceeds alpha.
 */
UniformityReport summarize_uniformity(std::span<double const> samples, std::size_t bins, double alpha,
                                      VerdictTest verdict_test,
                                      std::optional<std::span<std::size_t const>> atom_counts = std::nullopt,
                                      double resolution = 0);

}  // namespace sojourn_lab
