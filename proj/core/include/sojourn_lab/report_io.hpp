#pragma once

#include <filesystem>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "stats.hpp"

namespace sojourn_lab {

//! "%.17g" decimal, which round-trips every double.
std::string format_double(double value);

//! Header `value`, then one sample per line. Throws IoError with the path.
void write_samples_csv(std::filesystem::path const& path, std::span<double const> samples);

//! Pretty-printed (2-space indent) UTF-8 JSON with a trailing newline.
void write_json(std::filesystem::path const& path, nlohmann::ordered_json const& doc);
std::string render_json(nlohmann::ordered_json const& doc);

//! Self-contained SVG bar chart of the scaled histogram with a reference line at 1.
std::string render_histogram_svg(Histogram const& hist, std::string const& title);
void write_histogram_svg(std::filesystem::path const& path, Histogram const& hist,
                         std::string const& title);

//! Reads a samples.csv back; throws IoError on missing file or bad lines.
std::vector<double> read_samples_csv(std::filesystem::path const& path);

}  // namespace sojourn_lab
