#include "render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "error.hpp"

namespace fw {

namespace {

struct Rgb {
    unsigned char r, g, b;
};

constexpr Rgb kPalette[] = {
    {31, 119, 180}, {255, 127, 14}, {44, 160, 44},  {214, 39, 40},
    {148, 103, 189}, {140, 86, 75},  {227, 119, 194}, {127, 127, 127},
    {188, 189, 34}, {23, 190, 207}, {174, 199, 232}, {255, 187, 120},
};
constexpr int kPaletteSize = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
constexpr int kCell = 16;

bool lattice_coords(const Graph& g) {
    for (const auto& c : g.coords()) {
        for (double x : c) {
            if (x < 0 || x > 4096) return false;
            if (std::abs(x - std::round(x)) > 1e-9) return false;
        }
    }
    return true;
}

std::string render_ppm(const Graph& g, const std::vector<int>& part_of) {
    int max_col = 0, max_row = 0;
    for (const auto& c : g.coords()) {
        max_col = std::max(max_col, static_cast<int>(std::lround(c[0])));
        max_row = std::max(max_row, static_cast<int>(std::lround(c[1])));
    }
    int w = (max_col + 1) * kCell;
    int h = (max_row + 1) * kCell;
    std::vector<Rgb> cells((max_col + 1) * (max_row + 1), Rgb{255, 255, 255});
    for (int v = 0; v < g.vertex_count(); ++v) {
        int col = static_cast<int>(std::lround(g.coords()[v][0]));
        int row = static_cast<int>(std::lround(g.coords()[v][1]));
        cells[row * (max_col + 1) + col] = kPalette[part_of[v] % kPaletteSize];
    }
    std::string out = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + static_cast<size_t>(w) * h * 3);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Rgb& c = cells[(y / kCell) * (max_col + 1) + x / kCell];
            out.push_back(static_cast<char>(c.r));
            out.push_back(static_cast<char>(c.g));
            out.push_back(static_cast<char>(c.b));
        }
    }
    return out;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", x);
    return buf;
}

std::string render_svg(const Graph& g, const std::vector<int>& part_of) {
    double min_x = 1e18, min_y = 1e18, max_x = -1e18, max_y = -1e18;
    for (const auto& c : g.coords()) {
        min_x = std::min(min_x, c[0]);
        max_x = std::max(max_x, c[0]);
        min_y = std::min(min_y, c[1]);
        max_y = std::max(max_y, c[1]);
    }
    double scale = 40.0, margin = 20.0;
    auto px = [&](double x) { return fmt((x - min_x) * scale + margin); };
    auto py = [&](double y) { return fmt((y - min_y) * scale + margin); };
    double w = (max_x - min_x) * scale + 2 * margin;
    double h = (max_y - min_y) * scale + 2 * margin;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" +
           fmt(h) + "\">\n";
    for (const auto& e : g.edges()) {
        out += "<line x1=\"" + px(g.coords()[e.u][0]) + "\" y1=\"" + py(g.coords()[e.u][1]) +
               "\" x2=\"" + px(g.coords()[e.v][0]) + "\" y2=\"" + py(g.coords()[e.v][1]) +
               "\" stroke=\"#999999\" stroke-width=\"2\"/>\n";
    }
    char color[8];
    for (int v = 0; v < g.vertex_count(); ++v) {
        const Rgb& c = kPalette[part_of[v] % kPaletteSize];
        std::snprintf(color, sizeof(color), "#%02x%02x%02x", c.r, c.g, c.b);
        out += "<circle cx=\"" + px(g.coords()[v][0]) + "\" cy=\"" + py(g.coords()[v][1]) +
               "\" r=\"12\" fill=\"" + color + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace

std::pair<RenderFormat, std::string> render_partition_bytes(const Graph& g,
                                                            const PartitionView& p) {
    if (!g.has_coords()) fail(Errc::unsupported_graph, "graph has no coordinates to render");
    if (p.vertex_count() != g.vertex_count())
        fail(Errc::invalid_argument, "partition does not match graph");
    auto part_of = p.assignment();
    if (lattice_coords(g)) return {RenderFormat::Ppm, render_ppm(g, part_of)};
    return {RenderFormat::Svg, render_svg(g, part_of)};
}

RenderFormat render_partition(const Graph& g, const PartitionView& p, const std::string& path) {
    auto [format, bytes] = render_partition_bytes(g, p);
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_failure, "cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(Errc::io_failure, "short write to " + path);
    return format;
}

} // namespace fw
