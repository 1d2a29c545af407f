#include "chainfountain/level_set.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "chainfountain/parallel.hpp"

namespace chainfountain {

Vec2 bisect_segment(const ScalarField& field, Vec2 a, Vec2 b, double fa, double fb) {
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  double lo = 0.0;
  double hi = 1.0;
  const bool lo_positive = fa > 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const Vec2 p = a + mid * (b - a);
    const double fm = field(p.x, p.y);
    if (fm == 0.0) return p;
    if ((fm > 0.0) == lo_positive) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return a + (0.5 * (lo + hi)) * (b - a);
}

namespace {

class MarchingGrid {
 public:
  MarchingGrid(const ScalarField& field, const Rect& domain, int n, bool parallel)
      : field_(field), domain_(domain), n_(n) {
    const auto side = static_cast<std::size_t>(n + 1);
    values_.resize(side * side);
    parallel_for(
        side,
        [&](std::size_t i) {
          for (std::size_t j = 0; j < side; ++j) {
            const Vec2 p = node(static_cast<int>(i), static_cast<int>(j));
            values_[i * side + j] = field_(p.x, p.y);
          }
        },
        parallel);
  }

  [[nodiscard]] Vec2 node(int i, int j) const {
    const double x = i == n_ ? domain_.x_max
                             : domain_.x_min + (domain_.x_max - domain_.x_min) * i / n_;
    const double y = j == n_ ? domain_.y_max
                             : domain_.y_min + (domain_.y_max - domain_.y_min) * j / n_;
    return {x, y};
  }

  [[nodiscard]] double value(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_ + 1) +
                   static_cast<std::size_t>(j)];
  }

  [[nodiscard]] bool positive(int i, int j) const { return value(i, j) > 0.0; }

  // Horizontal edge (i,j)-(i+1,j) and vertical edge (i,j)-(i,j+1).
  [[nodiscard]] std::int64_t h_edge(int i, int j) const { return 2 * (std::int64_t{j} * n_ + i); }
  [[nodiscard]] std::int64_t v_edge(int i, int j) const {
    return 2 * (std::int64_t{i} * n_ + j) + 1;
  }
  [[nodiscard]] std::size_t edge_count() const {
    return static_cast<std::size_t>(2 * (std::int64_t{n_} + 1) * n_);
  }

  [[nodiscard]] Vec2 crossing(std::int64_t id) const {
    const std::int64_t k = id / 2;
    int i0, j0, i1, j1;
    if (id % 2 == 0) {
      j0 = static_cast<int>(k / n_);
      i0 = static_cast<int>(k % n_);
      i1 = i0 + 1;
      j1 = j0;
    } else {
      i0 = static_cast<int>(k / n_);
      j0 = static_cast<int>(k % n_);
      i1 = i0;
      j1 = j0 + 1;
    }
    return bisect_segment(field_, node(i0, j0), node(i1, j1), value(i0, j0), value(i1, j1));
  }

  [[nodiscard]] bool on_boundary(std::int64_t id) const {
    const std::int64_t k = id / 2;
    if (id % 2 == 0) {
      const auto j = k / n_;
      return j == 0 || j == n_;
    }
    const auto i = k / n_;
    return i == 0 || i == n_;
  }

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] const ScalarField& field() const { return field_; }
  [[nodiscard]] const Rect& domain() const { return domain_; }

 private:
  const ScalarField& field_;
  Rect domain_;
  int n_;
  std::vector<double> values_;
};

using Segment = std::pair<std::int64_t, std::int64_t>;

std::vector<Segment> cell_segments(const MarchingGrid& grid, int i, int j) {
  const bool p00 = grid.positive(i, j);
  const bool p10 = grid.positive(i + 1, j);
  const bool p11 = grid.positive(i + 1, j + 1);
  const bool p01 = grid.positive(i, j + 1);

  const std::int64_t bottom = grid.h_edge(i, j);
  const std::int64_t right = grid.v_edge(i + 1, j);
  const std::int64_t top = grid.h_edge(i, j + 1);
  const std::int64_t left = grid.v_edge(i, j);

  std::array<std::int64_t, 4> cut{};
  int n = 0;
  if (p00 != p10) cut[n++] = bottom;
  if (p10 != p11) cut[n++] = right;
  if (p11 != p01) cut[n++] = top;
  if (p01 != p00) cut[n++] = left;

  if (n == 2) return {{cut[0], cut[1]}};
  if (n != 4) return {};

  const Vec2 a = grid.node(i, j);
  const Vec2 b = grid.node(i + 1, j + 1);
  const bool centre = grid.field()(0.5 * (a.x + b.x), 0.5 * (a.y + b.y)) > 0.0;
  if (centre == p00) {
    return {{bottom, right}, {left, top}};
  }
  return {{left, bottom}, {right, top}};
}

}  // namespace

std::vector<std::vector<Vec2>> trace_zero_level(const ScalarField& field, const Rect& domain,
                                                int resolution, bool parallel) {
  if (resolution < 1) throw DomainError("resolution must be positive");
  const MarchingGrid grid(field, domain, resolution, parallel);
  const int n = grid.size();

  // Each edge is touched by at most two segments (one per adjacent cell).
  std::vector<std::array<std::int64_t, 2>> links(grid.edge_count(), {-1, -1});
  std::vector<Segment> segments;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (const Segment& seg : cell_segments(grid, i, j)) {
        const auto id = static_cast<std::int64_t>(segments.size());
        segments.push_back(seg);
        for (std::int64_t e : {seg.first, seg.second}) {
          auto& slot = links[static_cast<std::size_t>(e)];
          (slot[0] < 0 ? slot[0] : slot[1]) = id;
        }
      }
    }
  }

  std::vector<std::optional<Vec2>> points(grid.edge_count());
  auto point_of = [&](std::int64_t e) {
    auto& p = points[static_cast<std::size_t>(e)];
    if (!p) p = grid.crossing(e);
    return *p;
  };

  std::vector<bool> used(segments.size(), false);
  std::vector<std::vector<Vec2>> polylines;

  auto walk = [&](std::int64_t start_edge, std::int64_t seg_id) {
    std::vector<Vec2> line{point_of(start_edge)};
    std::int64_t edge = start_edge;
    while (seg_id >= 0 && !used[static_cast<std::size_t>(seg_id)]) {
      used[static_cast<std::size_t>(seg_id)] = true;
      const Segment& seg = segments[static_cast<std::size_t>(seg_id)];
      edge = seg.first == edge ? seg.second : seg.first;
      line.push_back(point_of(edge));
      const auto& slot = links[static_cast<std::size_t>(edge)];
      seg_id = slot[0] == seg_id ? slot[1] : slot[0];
    }
    polylines.push_back(std::move(line));
  };

  // Open curves first, starting from the domain boundary.
  for (std::size_t e = 0; e < links.size(); ++e) {
    const auto& slot = links[e];
    const auto id = static_cast<std::int64_t>(e);
    if (slot[0] >= 0 && slot[1] < 0 && grid.on_boundary(id) &&
        !used[static_cast<std::size_t>(slot[0])]) {
      walk(id, slot[0]);
    }
  }
  // Remaining closed loops.
  for (std::size_t s = 0; s < segments.size(); ++s) {
    if (!used[s]) walk(segments[s].first, static_cast<std::int64_t>(s));
  }
  return polylines;
}

}  // namespace chainfountain
