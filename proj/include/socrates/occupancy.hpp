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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "socrates/geometry.hpp"

namespace socrates {

enum class Cell : std::uint8_t { Free = 0, Occupied = 1, Unknown = 2 };

struct CellIndex {
    int x = 0;
    int y = 0;
    bool operator==(const CellIndex&) const = default;
};

/// Row-major occupancy grid with a world-frame origin at the lower-left
/// corner of cell (0, 0). Cell centers sit at origin + (i + 0.5) * resolution.
class OccupancyGrid {
public:
    OccupancyGrid() = default;

    OccupancyGrid(int width, int height, double resolution, Cell fill = Cell::Free,
                  double origin_x = 0.0, double origin_y = 0.0)
        : width_(width),
          height_(height),
          resolution_(resolution),
          origin_x_(origin_x),
          origin_y_(origin_y),
          cells_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {
        if (width <= 0 || height <= 0 || resolution <= 0.0) {
            throw std::invalid_argument("OccupancyGrid: non-positive dimensions");
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    double resolution() const { return resolution_; }
    double origin_x() const { return origin_x_; }
    double origin_y() const { return origin_y_; }

    bool in_bounds(const CellIndex& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }

    Cell at(const CellIndex& c) const { return cells_[index(c)]; }
    void set(const CellIndex& c, Cell v) { cells_[index(c)] = v; }

    bool is_free(const CellIndex& c) const { return in_bounds(c) && at(c) == Cell::Free; }

    const std::vector<Cell>& cells() const { return cells_; }
    std::vector<Cell>& cells() { return cells_; }

    CellIndex cell_of(double wx, double wy) const {
        return CellIndex{static_cast<int>(std::floor((wx - origin_x_) / resolution_)),
                         static_cast<int>(std::floor((wy - origin_y_) / resolution_))};
    }

    double center_x(const CellIndex& c) const { return origin_x_ + (c.x + 0.5) * resolution_; }
    double center_y(const CellIndex& c) const { return origin_y_ + (c.y + 0.5) * resolution_; }

    bool world_in_bounds(double wx, double wy) const { return in_bounds(cell_of(wx, wy)); }

    /// True when the world point lies in a free cell.
    bool point_free(double wx, double wy) const { return is_free(cell_of(wx, wy)); }

    std::size_t flat(const CellIndex& c) const { return index(c); }

    /// Bresenham walk from a to b, inclusive of both endpoints.
    static std::vector<CellIndex> bresenham(const CellIndex& a, const CellIndex& b) {
        std::vector<CellIndex> line;
        int x0 = a.x, y0 = a.y;
        const int dx = std::abs(b.x - x0), dy = -std::abs(b.y - y0);
        const int sx = x0 < b.x ? 1 : -1, sy = y0 < b.y ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            line.push_back(CellIndex{x0, y0});
            if (x0 == b.x && y0 == b.y) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
        return line;
    }

    /// Line of sight: no occupied cell strictly between a and b. Unknown cells
    /// block as well; the endpoints themselves are not tested.
    bool line_of_sight(const CellIndex& a, const CellIndex& b) const {
        const auto line = bresenham(a, b);
        for (std::size_t i = 1; i + 1 < line.size(); ++i) {
            if (!in_bounds(line[i]) || at(line[i]) != Cell::Free) return false;
        }
        return true;
    }

private:
    std::size_t index(const CellIndex& c) const {
        return static_cast<std::size_t>(c.y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(c.x);
    }

    int width_ = 0;
    int height_ = 0;
    double resolution_ = 1.0;
    double origin_x_ = 0.0;
    double origin_y_ = 0.0;
    std::vector<Cell> cells_;
};

struct GridPath {
    std::vector<CellIndex> cells;
    double length = 0.0;  // meters along the cell-center polyline
};

namespace detail {

inline const std::array<std::pair<int, int>, 8>& neighbors8() {
    static const std::array<std::pair<int, int>, 8> d = {
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    return d;
}

}  // namespace detail

/// 8-connected A* over free cells. Ties in the open set are broken by
/// heuristic, then by flat cell index, which keeps results deterministic.
inline std::optional<GridPath> astar(const OccupancyGrid& grid, const CellIndex& start,
                                     const CellIndex& goal) {
    if (!grid.is_free(start) || !grid.is_free(goal)) return std::nullopt;
    const double res = grid.resolution();
    const double diag = res * std::sqrt(2.0);
    const std::size_t n = static_cast<std::size_t>(grid.width()) * grid.height();
    std::vector<double> g(n, std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> parent(n, -1);
    std::vector<bool> closed(n, false);

    auto heuristic = [&](const CellIndex& c) {
        const double ax = std::abs(c.x - goal.x) * res;
        const double ay = std::abs(c.y - goal.y) * res;
        return std::max(ax, ay) + (std::sqrt(2.0) - 1.0) * std::min(ax, ay);
    };

    struct Node {
        double f;
        double h;
        std::size_t idx;
        bool operator>(const Node& o) const {
            if (f != o.f) return f > o.f;
            if (h != o.h) return h > o.h;
            return idx > o.idx;
        }
    };
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;

    const std::size_t start_i = grid.flat(start);
    g[start_i] = 0.0;
    open.push(Node{heuristic(start), heuristic(start), start_i});

    while (!open.empty()) {
        const Node top = open.top();
        open.pop();
        if (closed[top.idx]) continue;
        closed[top.idx] = true;
        const CellIndex c{static_cast<int>(top.idx % grid.width()),
                          static_cast<int>(top.idx / grid.width())};
        if (c == goal) {
            GridPath path;
            std::int64_t cur = static_cast<std::int64_t>(top.idx);
            while (cur >= 0) {
                path.cells.push_back(CellIndex{static_cast<int>(cur % grid.width()),
                                               static_cast<int>(cur / grid.width())});
                cur = parent[static_cast<std::size_t>(cur)];
            }
            std::reverse(path.cells.begin(), path.cells.end());
            path.length = g[top.idx];
            return path;
        }
        for (const auto& [dx, dy] : detail::neighbors8()) {
            const CellIndex nb{c.x + dx, c.y + dy};
            if (!grid.is_free(nb)) continue;
            // Forbid cutting corners through occupied diagonals.
            if (dx != 0 && dy != 0 &&
                (!grid.is_free(CellIndex{c.x + dx, c.y}) ||
                 !grid.is_free(CellIndex{c.x, c.y + dy}))) {
                continue;
            }
            const std::size_t ni = grid.flat(nb);
            if (closed[ni]) continue;
            const double step = (dx != 0 && dy != 0) ? diag : res;
            const double cand = g[grid.flat(c)] + step;
            if (cand < g[ni]) {
                g[ni] = cand;
                parent[ni] = static_cast<std::int64_t>(grid.flat(c));
                const double h = heuristic(nb);
                open.push(Node{cand + h, h, ni});
            }
        }
    }
    return std::nullopt;
}

/// Multi-source BFS distance map over free cells (8-connected), used for
/// reachability tests. Unreachable cells keep -1.
inline std::vector<int> bfs_reach(const OccupancyGrid& grid, const CellIndex& start) {
    const std::size_t n = static_cast<std::size_t>(grid.width()) * grid.height();
    std::vector<int> dist(n, -1);
    if (!grid.is_free(start)) return dist;
    std::queue<CellIndex> q;
    dist[grid.flat(start)] = 0;
    q.push(start);
    while (!q.empty()) {
        const CellIndex c = q.front();
        q.pop();
        for (const auto& [dx, dy] : detail::neighbors8()) {
            const CellIndex nb{c.x + dx, c.y + dy};
            if (!grid.is_free(nb)) continue;
            if (dist[grid.flat(nb)] >= 0) continue;
            dist[grid.flat(nb)] = dist[grid.flat(c)] + 1;
            q.push(nb);
        }
    }
    return dist;
}

/// Nearest free cell to a world point, by cell-center distance; searches the
/// whole grid, so use only on desk-scale maps.
inline std::optional<CellIndex> nearest_free_cell(const OccupancyGrid& grid, double wx,
                                                  double wy) {
    std::optional<CellIndex> best;
    double best_d = std::numeric_limits<double>::infinity();
    for (int y = 0; y < grid.height(); ++y) {
        for (int x = 0; x < grid.width(); ++x) {
            const CellIndex c{x, y};
            if (grid.at(c) != Cell::Free) continue;
            const double d = std::hypot(grid.center_x(c) - wx, grid.center_y(c) - wy);
            if (d < best_d) {
                best_d = d;
                best = c;
            }
        }
    }
    return best;
}

}  // namespace socrates
