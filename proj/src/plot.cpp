#include "ido/plot.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace ido {

namespace {

constexpr int kPanelW = 460;
constexpr int kPanelH = 180;
constexpr int kMargin = 42;
constexpr int kCols = 2;
constexpr std::size_t kMaxPoints = 2000;

struct Series {
    std::string name;
    std::vector<double> values;
    const char* color;
};

struct Panel {
    std::string title;
    std::vector<Series> series;
};

void render_panel(std::ostream& out, const Panel& panel, std::span<const double> times, int px, int py) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& s : panel.series)
        for (double v : s.values)
            if (std::isfinite(v)) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    if (!(hi > lo)) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double t0 = times.front(), t1 = times.back();
    const auto sx = [&](double t) { return px + (t - t0) / (t1 - t0) * kPanelW; };
    const auto sy = [&](double v) { return py + kPanelH - (v - lo) / (hi - lo) * kPanelH; };

    out << "<rect x='" << px << "' y='" << py << "' width='" << kPanelW << "' height='" << kPanelH
        << "' fill='white' stroke='#999'/>\n";
    out << "<text x='" << px + 4 << "' y='" << py - 6 << "' font-size='12' fill='#333'>" << panel.title
        << "</text>\n";
    out << "<text x='" << px - 4 << "' y='" << py + 10 << "' font-size='9' fill='#666' text-anchor='end'>"
        << hi << "</text>\n";
    out << "<text x='" << px - 4 << "' y='" << py + kPanelH << "' font-size='9' fill='#666' text-anchor='end'>"
        << lo << "</text>\n";
    out << "<text x='" << px + kPanelW << "' y='" << py + kPanelH + 12
        << "' font-size='9' fill='#666' text-anchor='end'>t=" << t1 << "</text>\n";

    const std::size_t stride = std::max<std::size_t>(1, times.size() / kMaxPoints);
    int legend_y = py + 12;
    for (const auto& s : panel.series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1' points='";
        for (std::size_t k = 0; k < times.size(); k += stride)
            out << sx(times[k]) << "," << sy(s.values[k]) << " ";
        out << "'/>\n";
        out << "<text x='" << px + kPanelW - 4 << "' y='" << legend_y
            << "' font-size='10' text-anchor='end' fill='" << s.color << "'>" << s.name << "</text>\n";
        legend_y += 12;
    }
}

}  // namespace

void write_trace_svg(std::ostream& out, const StateTrace& trace) {
    std::vector<Panel> panels;
    for (std::size_t ch = 0; ch < trace.width(); ++ch) {
        Panel panel;
        panel.title = trace.labels()[ch];
        panel.series.push_back({trace.labels()[ch], trace.state_column(ch), "#1f77b4"});
        if (trace.has_refs()) panel.series.push_back({"ref", trace.ref_column(ch), "#d62728"});
        panels.push_back(std::move(panel));
        if (trace.has_refs())
            panels.push_back({"e_" + trace.labels()[ch], {{"error", trace.error_column(ch), "#2ca02c"}}});
    }
    if (trace.has_input()) {
        std::vector<double> input(trace.inputs().begin(), trace.inputs().end());
        panels.push_back({"input", {{"input", std::move(input), "#7f7f7f"}}});
    }
    for (const auto& name : trace.extra_names()) {
        std::vector<double> column(trace.extra(name).begin(), trace.extra(name).end());
        panels.push_back({name, {{name, std::move(column), "#9467bd"}}});
    }

    const int rows = (static_cast<int>(panels.size()) + kCols - 1) / kCols;
    const int width = kCols * (kPanelW + kMargin) + kMargin;
    const int height = rows * (kPanelH + kMargin) + kMargin;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n<rect width='100%' height='100%' fill='#fafafa'/>\n";
    for (std::size_t i = 0; i < panels.size(); ++i) {
        const int px = kMargin + static_cast<int>(i % kCols) * (kPanelW + kMargin);
        const int py = kMargin + static_cast<int>(i / kCols) * (kPanelH + kMargin);
        render_panel(out, panels[i], trace.times(), px, py);
    }
    out << "</svg>\n";
}

}  // namespace ido
