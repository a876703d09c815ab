#include "sojourn_lab/report_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sojourn_lab/errors.hpp"

namespace sojourn_lab {
namespace {

void write_text(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing: " + std::strerror(errno));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.close();
    if (!out)
        throw IoError("failed writing " + path.string());
}

std::string fixed(double value, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

}  // namespace

std::string format_double(double value)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_samples_csv(std::filesystem::path const& path, std::span<double const> samples)
{
    std::string text = "value\n";
    text.reserve(text.size() + samples.size() * 24);
    for (double v : samples)
    {
        text += format_double(v);
        text += '\n';
    }
    write_text(path, text);
}

std::vector<double> read_samples_csv(std::filesystem::path const& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != "value")
        throw IoError(path.string() + ": missing 'value' header");
    std::vector<double> out;
    while (std::getline(in, line))
    {
        char* end = nullptr;
        double const v = std::strtod(line.c_str(), &end);
        if (line.empty() || end != line.c_str() + line.size())
            throw IoError(path.string() + ": bad sample line '" + line + "'");
        out.push_back(v);
    }
    return out;
}

std::string render_json(nlohmann::ordered_json const& doc)
{
    return doc.dump(2) + "\n";
}

void write_json(std::filesystem::path const& path, nlohmann::ordered_json const& doc)
{
    write_text(path, render_json(doc));
}

std::string render_histogram_svg(Histogram const& hist, std::string const& title)
{
    constexpr double width = 640, height = 420;
    constexpr double left = 60, right = 20, top = 40, bottom = 50;
    double const plot_w = width - left - right;
    double const plot_h = height - top - bottom;

    double y_max = 1.5;
    for (double d : hist.density)
        y_max = std::max(y_max, 1.1 * d);
    auto x_of = [&](double x) { return left + x * plot_w; };
    auto y_of = [&](double y) { return top + plot_h * (1.0 - y / y_max); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
        << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << fixed(width, 0) << "\" height=\"" << fixed(height, 0)
        << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << fixed(width / 2, 1) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

    svg << "<g fill=\"#4a7ab5\" stroke=\"#2c4f7c\" stroke-width=\"0.5\">\n";
    for (std::size_t b = 0; b < hist.bins(); ++b)
    {
        double const x0 = x_of(hist.edges[b]);
        double const x1 = x_of(hist.edges[b + 1]);
        double const y = y_of(hist.density[b]);
        svg << "<rect x=\"" << fixed(x0, 3) << "\" y=\"" << fixed(y, 3) << "\" width=\"" << fixed(x1 - x0, 3)
            << "\" height=\"" << fixed(top + plot_h - y, 3) << "\"/>\n";
    }
    svg << "</g>\n";

    svg << "<line x1=\"" << fixed(x_of(0), 3) << "\" y1=\"" << fixed(y_of(1.0), 3) << "\" x2=\""
        << fixed(x_of(1), 3) << "\" y2=\"" << fixed(y_of(1.0), 3)
        << "\" stroke=\"#c0392b\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";

    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << fixed(left, 3) << "\" y1=\"" << fixed(top + plot_h, 3) << "\" x2=\""
        << fixed(left + plot_w, 3) << "\" y2=\"" << fixed(top + plot_h, 3) << "\"/>\n";
    svg << "<line x1=\"" << fixed(left, 3) << "\" y1=\"" << fixed(top, 3) << "\" x2=\"" << fixed(left, 3)
        << "\" y2=\"" << fixed(top + plot_h, 3) << "\"/>\n";
    svg << "</g>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i)
    {
        double const x = i / 5.0;
        svg << "<text x=\"" << fixed(x_of(x), 3) << "\" y=\"" << fixed(top + plot_h + 16, 3)
            << "\" text-anchor=\"middle\">" << fixed(x, 1) << "</text>\n";
    }
    double const step = y_max > 3 ? 1.0 : 0.5;
    for (double y = 0; y <= y_max + 1e-9; y += step)
    {
        svg << "<text x=\"" << fixed(left - 6, 3) << "\" y=\"" << fixed(y_of(y) + 4, 3)
            << "\" text-anchor=\"end\">" << fixed(y, 1) << "</text>\n";
    }
    svg << "<text x=\"" << fixed(left + plot_w / 2, 3) << "\" y=\"" << fixed(height - 10, 3)
        << "\" text-anchor=\"middle\">sojourn measure</text>\n";
    svg << "<text x=\"16\" y=\"" << fixed(top + plot_h / 2, 3) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fixed(top + plot_h / 2, 3) << ")\">density</text>\n";
    svg << "</g>\n</svg>\n";
    return svg.str();
}

void write_histogram_svg(std::filesystem::path const& path, Histogram const& hist, std::string const& title)
{
    write_text(path, render_histogram_svg(hist, title));
}

}  // namespace sojourn_lab
