// Copyright (c) 2026 Socrates Project Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "socrates/occupancy.hpp"

namespace socrates {

/// Minimal SVG builder with a y-up world-to-page transform. Numbers print
/// with fixed precision so output bytes are stable.
class SvgWriter {
public:
    SvgWriter(double world_w, double world_h, double scale = 40.0)
        : world_w_(world_w), world_h_(world_h), scale_(scale) {}

    double px(double wx) const { return wx * scale_; }
    double py(double wy) const { return (world_h_ - wy) * scale_; }

    void rect(double wx, double wy, double w, double h, const std::string& fill) {
        body_ << "<rect x=\"" << fmt(px(wx)) << "\" y=\"" << fmt(py(wy + h)) << "\" width=\""
              << fmt(w * scale_) << "\" height=\"" << fmt(h * scale_) << "\" fill=\"" << fill
              << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double width = 1.5) {
        body_ << "<line x1=\"" << fmt(px(x1)) << "\" y1=\"" << fmt(py(y1)) << "\" x2=\""
              << fmt(px(x2)) << "\" y2=\"" << fmt(py(y2)) << "\" stroke=\"" << stroke
              << "\" stroke-width=\"" << fmt(width) << "\"/>\n";
    }

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                  double width = 2.0) {
        body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\""
              << fmt(width) << "\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) body_ << " ";
            body_ << fmt(px(pts[i].first)) << "," << fmt(py(pts[i].second));
        }
        body_ << "\"/>\n";
    }

    void circle(double wx, double wy, double r_world, const std::string& fill,
                const std::string& stroke = "none") {
        body_ << "<circle cx=\"" << fmt(px(wx)) << "\" cy=\"" << fmt(py(wy)) << "\" r=\""
              << fmt(r_world * scale_) << "\" fill=\"" << fill << "\" stroke=\"" << stroke
              << "\"/>\n";
    }

    void text(double wx, double wy, const std::string& content, int size_px = 12) {
        body_ << "<text x=\"" << fmt(px(wx)) << "\" y=\"" << fmt(py(wy)) << "\" font-size=\""
              << size_px << "\" font-family=\"sans-serif\">" << content << "</text>\n";
    }

    /// Occupancy backdrop: occupied cells dark, unknown light gray.
    void draw_grid(const OccupancyGrid& grid) {
        rect(grid.origin_x(), grid.origin_y(), grid.width() * grid.resolution(),
             grid.height() * grid.resolution(), "#ffffff");
        for (int y = 0; y < grid.height(); ++y) {
            for (int x = 0; x < grid.width(); ++x) {
                const Cell c = grid.at(CellIndex{x, y});
                if (c == Cell::Free) continue;
                rect(grid.origin_x() + x * grid.resolution(),
                     grid.origin_y() + y * grid.resolution(), grid.resolution(),
                     grid.resolution(), c == Cell::Occupied ? "#333333" : "#dddddd");
            }
        }
    }

    void save(const std::string& path) const {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write svg: " + path);
        out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(world_w_ * scale_)
            << "\" height=\"" << fmt(world_h_ * scale_) << "\">\n"
            << body_.str() << "</svg>\n";
    }

private:
    static std::string fmt(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return buf;
    }

    double world_w_;
    double world_h_;
    double scale_;
    std::ostringstream body_;
};

}  // namespace socrates
