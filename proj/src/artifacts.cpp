#include "hpfnav/artifacts.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>

#include "hpfnav/guidance.hpp"

namespace hpfnav {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

void polyline(std::ostream& out, const std::vector<TraceRecord>& trace,
              bool believed, const char* style) {
    out << "<polyline fill=\"none\" " << style << " points=\"";
    for (const auto& r : trace) {
        const Pose& p = believed ? r.believed : r.true_pose;
        out << p.x << "," << p.y << " ";
    }
    out << "\"/>\n";
}

}  // namespace

void write_overlay_svg(const Scenario& scenario, const Mission& mission,
                       std::ostream& out) {
    const SafetyGrid& grid = mission.grid;
    Vec2 c = mission.map_center;
    double half = grid.domain_width() / 2.0;
    double d = grid.cell_size();
    double margin = 0.05 * grid.domain_width();

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" "
        << "viewBox=\"" << c.x - half - margin << " " << -(c.y + half + margin)
        << " " << 2 * (half + margin) << " " << 2 * (half + margin) << "\">\n"
        // world y grows upward; flip the y axis for screen coordinates
        << "<g transform=\"scale(1,-1)\">\n";

    out << "<rect x=\"" << c.x - half << "\" y=\"" << c.y - half << "\" width=\""
        << 2 * half << "\" height=\"" << 2 * half
        << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << 0.01 * half
        << "\"/>\n";

    // registered hazard cells (interior ring only)
    out << "<g fill=\"#e08080\" fill-opacity=\"0.7\" stroke=\"none\">\n";
    int n = grid.size();
    for (int i = 1; i < n - 1; ++i) {
        for (int j = 1; j < n - 1; ++j) {
            if (!grid.unsafe(i, j)) continue;
            Vec2 p = grid.cell_center({i, j});
            out << "<rect x=\"" << c.x + p.x - d / 2 << "\" y=\""
                << c.y + p.y - d / 2 << "\" width=\"" << d << "\" height=\"" << d
                << "\"/>\n";
        }
    }
    out << "</g>\n";

    out << "<g fill=\"#808080\" stroke=\"#404040\" stroke-width=\""
        << 0.004 * half << "\">\n";
    for (const auto& circ : scenario.circles)
        out << "<circle cx=\"" << circ.center.x << "\" cy=\"" << circ.center.y
            << "\" r=\"" << circ.radius << "\"/>\n";
    out << "</g>\n";
    out << "<g stroke=\"#404040\" stroke-width=\"" << 0.012 * half << "\">\n";
    for (const auto& seg : scenario.segments)
        out << "<line x1=\"" << seg.a.x << "\" y1=\"" << seg.a.y << "\" x2=\""
            << seg.b.x << "\" y2=\"" << seg.b.y << "\"/>\n";
    out << "</g>\n";

    std::string true_style =
        "stroke=\"#2040c0\" stroke-width=\"" + std::to_string(0.012 * half) + "\"";
    std::string believed_style =
        "stroke=\"#20a040\" stroke-width=\"" + std::to_string(0.008 * half) +
        "\" stroke-dasharray=\"" + std::to_string(0.03 * half) + "\"";
    polyline(out, mission.trace, false, true_style.c_str());
    polyline(out, mission.trace, true, believed_style.c_str());

    out << "<circle cx=\"" << scenario.start.x << "\" cy=\"" << scenario.start.y
        << "\" r=\"" << 0.02 * half << "\" fill=\"#2040c0\"/>\n";
    out << "<circle cx=\"" << scenario.target.x << "\" cy=\"" << scenario.target.y
        << "\" r=\"" << 0.02 * half
        << "\" fill=\"none\" stroke=\"#c02020\" stroke-width=\"" << 0.008 * half
        << "\"/>\n";
    out << "<line x1=\"" << scenario.target.x - 0.03 * half << "\" y1=\""
        << scenario.target.y << "\" x2=\"" << scenario.target.x + 0.03 * half
        << "\" y2=\"" << scenario.target.y
        << "\" stroke=\"#c02020\" stroke-width=\"" << 0.006 * half << "\"/>\n";
    out << "<line x1=\"" << scenario.target.x << "\" y1=\""
        << scenario.target.y - 0.03 * half << "\" x2=\"" << scenario.target.x
        << "\" y2=\"" << scenario.target.y + 0.03 * half
        << "\" stroke=\"#c02020\" stroke-width=\"" << 0.006 * half << "\"/>\n";

    out << "</g>\n</svg>\n";
}

std::vector<std::string> render_artifacts(const Scenario& scenario,
                                          const Mission& mission,
                                          const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    auto path = [&](const char* name) { return out_dir + "/" + name; };

    {
        auto out = open_out(path("trace.csv"));
        write_trace_csv(mission.trace, out);
        written.push_back(path("trace.csv"));
    }
    {
        auto out = open_out(path("grid.pgm"), true);
        write_grid_pgm(mission.grid, out);
        written.push_back(path("grid.pgm"));
    }
    {
        auto out = open_out(path("field.pgm"), true);
        write_field_pgm16(mission.field, out);
        written.push_back(path("field.pgm"));
    }
    {
        auto out = open_out(path("field.csv"));
        write_field_csv(mission.field, out);
        written.push_back(path("field.csv"));
    }
    {
        auto out = open_out(path("guidance.csv"));
        write_guidance_csv(mission.field, mission.grid, out);
        written.push_back(path("guidance.csv"));
    }
    {
        auto out = open_out(path("overlay.svg"));
        write_overlay_svg(scenario, mission, out);
        written.push_back(path("overlay.svg"));
    }
    {
        auto out = open_out(path("summary.txt"));
        write_summary(mission.result, scenario.name, out);
        written.push_back(path("summary.txt"));
    }
    return written;
}

}  // namespace hpfnav
