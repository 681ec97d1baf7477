#include "germforge/figures.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace germforge {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::string petal_figure_svg(const VectorFieldParams& p, double delta,
                             const OrbitTrace* orbit) {
    const int k = p.k;
    const double view = 1.3 * delta;
    const int size = 640;
    auto sx = [&](double x) { return (x + view) / (2.0 * view) * size; };
    auto sy = [&](double y) { return (view - y) / (2.0 * view) * size; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(size) +
           "\" height=\"" + std::to_string(size) + "\" viewBox=\"0 0 " + std::to_string(size) +
           " " + std::to_string(size) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // lobe of petal j: r(theta)^k = +-cos(k theta) * delta^k on the half
    // range around the axis; attracting petals (j odd) need cos(k theta) < 0
    const int samples = 120;
    for (int j = -k + 1; j <= k; ++j) {
        const bool attracting = std::abs(j) % 2 == 1;
        const double axis = double(j) * kPi / double(k);
        std::string pts;
        for (int s = 0; s <= samples; ++s) {
            const double th = axis - kPi / (2.0 * k) + double(s) * kPi / (double(k) * samples);
            double c = std::cos(double(k) * th);
            if (attracting) c = -c;
            if (c < 0.0) c = 0.0;
            const double r = delta * std::pow(c, 1.0 / double(k));
            pts += fmt(sx(r * std::cos(th))) + "," + fmt(sy(r * std::sin(th))) + " ";
        }
        svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
               (attracting ? std::string("#1f77b4") : std::string("#d62728")) +
               "\" stroke-width=\"1.5\"/>\n";
    }
    // the reference circle of radius delta
    svg += "<circle cx=\"" + fmt(sx(0)) + "\" cy=\"" + fmt(sy(0)) + "\" r=\"" +
           fmt(delta / (2.0 * view) * size) +
           "\" fill=\"none\" stroke=\"#bbbbbb\" stroke-dasharray=\"4 3\"/>\n";

    if (orbit) {
        for (const auto& st : orbit->steps) {
            svg += "<circle cx=\"" + fmt(sx(std::real(st.z))) + "\" cy=\"" +
                   fmt(sy(std::imag(st.z))) + "\" r=\"2.5\" fill=\"#2ca02c\"/>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

std::string orbit_csv(const OrbitTrace& trace) {
    std::string out = "step,re_z,im_z,chart,re_Z,im_Z\n";
    char buf[200];
    int step = 0;
    for (const auto& st : trace.steps) {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g,%d,%.12g,%.12g\n", step,
                      std::real(st.z), std::imag(st.z), st.chart, std::real(st.time_value),
                      std::imag(st.time_value));
        out += buf;
        ++step;
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pipeline_error("io", "cannot write file: " + path);
    out << content;
}

} // namespace germforge
