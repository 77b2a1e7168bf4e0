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

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "socrates/occupancy.hpp"

namespace socrates {

struct Point2D {
    double x = 0.0;
    double y = 0.0;
};

/// Even-odd rule point-in-polygon test; points on an edge count as inside
/// often enough for cell-center queries, which is all we need.
inline bool point_in_polygon(const std::vector<Point2D>& poly, double px, double py) {
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool cross = (poly[i].y > py) != (poly[j].y > py);
        if (cross) {
            const double t = (py - poly[i].y) / (poly[j].y - poly[i].y);
            const double xint = poly[i].x + t * (poly[j].x - poly[i].x);
            if (px < xint) inside = !inside;
        }
    }
    return inside;
}

/// A labeled polygonal region on one floor of the map.
struct Area {
    std::string label;
    int floor = 0;
    std::vector<Point2D> polygon;

    bool contains(double x, double y) const { return point_in_polygon(polygon, x, y); }
};

/// Occupancy grid(s) plus labeled areas. One grid per floor; all floors share
/// resolution and origin.
class AnnotatedMap {
public:
    AnnotatedMap() = default;

    AnnotatedMap(std::vector<OccupancyGrid> floors, std::vector<Area> areas)
        : floors_(std::move(floors)), areas_(std::move(areas)) {
        validate();
    }

    int floor_count() const { return static_cast<int>(floors_.size()); }
    const OccupancyGrid& floor(int z) const { return floors_.at(static_cast<std::size_t>(z)); }
    OccupancyGrid& floor(int z) { return floors_.at(static_cast<std::size_t>(z)); }
    const std::vector<Area>& areas() const { return areas_; }

    std::vector<std::string> labels() const {
        std::vector<std::string> out;
        out.reserve(areas_.size());
        for (const auto& a : areas_) out.push_back(a.label);
        return out;
    }

    const Area* find_area(const std::string& label) const {
        for (const auto& a : areas_) {
            if (a.label == label) return &a;
        }
        return nullptr;
    }

    static AnnotatedMap load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open map file: " + path);
        nlohmann::json j;
        in >> j;
        return from_json(j);
    }

    static AnnotatedMap from_json(const nlohmann::json& j) {
        const double res = j.at("resolution").get<double>();
        if (!(res > 0.0)) throw std::runtime_error("map: resolution must be positive");
        const int floors = j.at("floors").get<int>();
        double ox = 0.0, oy = 0.0;
        if (j.contains("origin")) {
            ox = j["origin"].at(0).get<double>();
            oy = j["origin"].at(1).get<double>();
        }
        const auto& grids = j.at("grids");
        if (static_cast<int>(grids.size()) != floors) {
            throw std::runtime_error("map: grids count does not match floors");
        }
        std::vector<OccupancyGrid> floor_grids;
        for (const auto& gj : grids) {
            floor_grids.push_back(grid_from_json(gj, res, ox, oy));
        }
        std::vector<Area> areas;
        for (const auto& aj : j.at("areas")) {
            Area a;
            a.label = aj.at("label").get<std::string>();
            a.floor = aj.value("floor", 0);
            for (const auto& pj : aj.at("polygon")) {
                a.polygon.push_back(Point2D{pj.at(0).get<double>(), pj.at(1).get<double>()});
            }
            areas.push_back(std::move(a));
        }
        return AnnotatedMap(std::move(floor_grids), std::move(areas));
    }

    nlohmann::json to_json() const {
        nlohmann::ordered_json j;
        j["resolution"] = floors_.front().resolution();
        j["floors"] = floor_count();
        j["origin"] = {floors_.front().origin_x(), floors_.front().origin_y()};
        nlohmann::ordered_json grids = nlohmann::ordered_json::array();
        for (const auto& g : floors_) {
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            for (int y = 0; y < g.height(); ++y) {
                nlohmann::ordered_json row = nlohmann::ordered_json::array();
                for (int x = 0; x < g.width(); ++x) {
                    row.push_back(static_cast<int>(g.at(CellIndex{x, y})));
                }
                rows.push_back(std::move(row));
            }
            grids.push_back(std::move(rows));
        }
        j["grids"] = std::move(grids);
        nlohmann::ordered_json areas = nlohmann::ordered_json::array();
        for (const auto& a : areas_) {
            nlohmann::ordered_json aj;
            aj["label"] = a.label;
            aj["floor"] = a.floor;
            nlohmann::ordered_json poly = nlohmann::ordered_json::array();
            for (const auto& p : a.polygon) poly.push_back({p.x, p.y});
            aj["polygon"] = std::move(poly);
            areas.push_back(std::move(aj));
        }
        j["areas"] = std::move(areas);
        return j;
    }

private:
    // Grids come either as nested int arrays (rows of cells, row y = 0 first)
    // or as a base64 string of row-major bytes with explicit width/height.
    static OccupancyGrid grid_from_json(const nlohmann::json& gj, double res, double ox,
                                        double oy) {
        if (gj.is_array()) {
            const int height = static_cast<int>(gj.size());
            if (height == 0) throw std::runtime_error("map: empty grid");
            const int width = static_cast<int>(gj.at(0).size());
            OccupancyGrid g(width, height, res, Cell::Free, ox, oy);
            for (int y = 0; y < height; ++y) {
                const auto& row = gj.at(static_cast<std::size_t>(y));
                if (static_cast<int>(row.size()) != width) {
                    throw std::runtime_error("map: ragged grid rows");
                }
                for (int x = 0; x < width; ++x) {
                    g.set(CellIndex{x, y}, cell_from_int(row.at(static_cast<std::size_t>(x)).get<int>()));
                }
            }
            return g;
        }
        if (gj.is_object()) {
            const int width = gj.at("width").get<int>();
            const int height = gj.at("height").get<int>();
            const std::string b64 = gj.at("base64").get<std::string>();
            const std::string bytes = base64_decode(b64);
            if (static_cast<int>(bytes.size()) != width * height) {
                throw std::runtime_error("map: base64 grid size mismatch");
            }
            OccupancyGrid g(width, height, res, Cell::Free, ox, oy);
            for (int y = 0; y < height; ++y) {
                for (int x = 0; x < width; ++x) {
                    g.set(CellIndex{x, y},
                          cell_from_int(static_cast<unsigned char>(bytes[static_cast<std::size_t>(y * width + x)])));
                }
            }
            return g;
        }
        throw std::runtime_error("map: grid must be an array of rows or a base64 object");
    }

    static Cell cell_from_int(int v) {
        switch (v) {
            case 0: return Cell::Free;
            case 1: return Cell::Occupied;
            case 2: return Cell::Unknown;
            default: throw std::runtime_error("map: cell value must be 0, 1, or 2");
        }
    }

    static std::string base64_decode(const std::string& in) {
        static const std::string alphabet =
            "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
        std::string out;
        int val = 0, bits = -8;
        for (const char c : in) {
            if (c == '=' || c == '\n' || c == '\r') continue;
            const std::size_t pos = alphabet.find(c);
            if (pos == std::string::npos) throw std::runtime_error("map: invalid base64");
            val = (val << 6) + static_cast<int>(pos);
            bits += 6;
            if (bits >= 0) {
                out.push_back(static_cast<char>((val >> bits) & 0xFF));
                bits -= 8;
            }
        }
        return out;
    }

    void validate() const {
        if (floors_.empty()) throw std::runtime_error("map: needs at least one floor");
        for (const auto& a : areas_) {
            if (a.label.empty()) throw std::runtime_error("map: empty area label");
            if (a.polygon.size() < 3) {
                throw std::runtime_error("map: area polygon needs >= 3 vertices: " + a.label);
            }
            if (a.floor < 0 || a.floor >= floor_count()) {
                throw std::runtime_error("map: area floor out of range: " + a.label);
            }
            if (self_intersects(a.polygon)) {
                throw std::runtime_error("map: area polygon self-intersects: " + a.label);
            }
        }
    }

    static bool segments_cross(const Point2D& a, const Point2D& b, const Point2D& c,
                               const Point2D& d) {
        auto orient = [](const Point2D& p, const Point2D& q, const Point2D& r) {
            const double v = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
            return v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0);
        };
        const int o1 = orient(a, b, c), o2 = orient(a, b, d);
        const int o3 = orient(c, d, a), o4 = orient(c, d, b);
        return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
    }

    static bool self_intersects(const std::vector<Point2D>& poly) {
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                // Skip adjacent edges (they share a vertex).
                if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
                if (segments_cross(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) {
                    return true;
                }
            }
        }
        return false;
    }

    std::vector<OccupancyGrid> floors_;
    std::vector<Area> areas_;
};

}  // namespace socrates
