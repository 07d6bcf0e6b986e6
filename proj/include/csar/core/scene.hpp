#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "csar/core/error.hpp"
#include "csar/core/image.hpp"
#include "csar/core/params.hpp"

namespace csar {

struct PointTarget {
  std::size_t azimuth_index = 0;
  std::size_t range_index = 0;
  cplx reflectivity{1.0, 0.0};
};

// Sparse list of ideal point scatterers on the scene grid.
struct PointScene {
  std::vector<PointTarget> targets;

  std::size_t size() const { return targets.size(); }
  bool empty() const { return targets.empty(); }
};

// Throws if a target lies outside `grid` or two targets share a pixel.
inline void validate(const PointScene& scene, Dims grid) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& t : scene.targets) {
    if (t.azimuth_index >= grid.rows || t.range_index >= grid.cols) {
      throw InvalidParams("target (" + std::to_string(t.azimuth_index) + ", " +
                          std::to_string(t.range_index) + ") outside " + to_string(grid) +
                          " grid");
    }
    if (!seen.emplace(t.azimuth_index, t.range_index).second) {
      throw InvalidParams("duplicate target at (" + std::to_string(t.azimuth_index) + ", " +
                          std::to_string(t.range_index) + ")");
    }
  }
}

inline ComplexImage rasterize(const PointScene& scene, Dims grid) {
  validate(scene, grid);
  ComplexImage img(grid);
  for (const auto& t : scene.targets) img(t.azimuth_index, t.range_index) = t.reflectivity;
  return img;
}

// Square lattice of unit-amplitude targets with uniform random phases, centered on the grid.
inline PointScene lattice_scene(Dims grid, std::size_t per_side, std::size_t spacing,
                                std::uint64_t seed) {
  PointScene scene;
  std::mt19937_64 rng(seed);
  const auto half = static_cast<std::ptrdiff_t>(per_side / 2);
  for (std::size_t a = 0; a < per_side; ++a) {
    for (std::size_t b = 0; b < per_side; ++b) {
      const auto da = (static_cast<std::ptrdiff_t>(a) - half) * static_cast<std::ptrdiff_t>(spacing);
      const auto db = (static_cast<std::ptrdiff_t>(b) - half) * static_cast<std::ptrdiff_t>(spacing);
      const auto r = static_cast<std::ptrdiff_t>(grid.rows / 2) + da;
      const auto c = static_cast<std::ptrdiff_t>(grid.cols / 2) + db;
      if (r < 0 || c < 0) throw InvalidParams("lattice does not fit the grid");
      // 53 random bits -> phase in [0, 2pi)
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      scene.targets.push_back({static_cast<std::size_t>(r), static_cast<std::size_t>(c),
                               std::polar(1.0, 2.0 * kPi * u)});
    }
  }
  validate(scene, grid);
  return scene;
}

// The 3x3 lattice with 6-sample spacing used for the recovery experiments.
inline PointScene nine_point_scene(Dims grid, std::uint64_t seed) {
  return lattice_scene(grid, 3, 6, seed);
}

// `count` unit-amplitude targets at random pixels with random phases. Positions are
// drawn until every pair is at least `min_spacing` apart in Chebyshev distance.
inline PointScene random_scene(Dims grid, std::size_t count, std::size_t min_spacing,
                               std::uint64_t seed) {
  if (grid.size() == 0) throw InvalidParams("random_scene: empty grid");
  std::mt19937_64 rng(seed);
  PointScene scene;
  std::size_t attempts = 0;
  while (scene.size() < count) {
    if (++attempts > 1000 * (count + 1)) throw InvalidParams("random_scene: cannot place targets");
    const std::size_t r = static_cast<std::size_t>(rng() % grid.rows);
    const std::size_t c = static_cast<std::size_t>(rng() % grid.cols);
    const bool clear = std::all_of(scene.targets.begin(), scene.targets.end(), [&](const PointTarget& t) {
      const auto dr = r > t.azimuth_index ? r - t.azimuth_index : t.azimuth_index - r;
      const auto dc = c > t.range_index ? c - t.range_index : t.range_index - c;
      return std::max(dr, dc) >= std::max<std::size_t>(min_spacing, 1);
    });
    if (!clear) continue;
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    scene.targets.push_back({r, c, std::polar(1.0, 2.0 * kPi * u)});
  }
  return scene;
}

inline PointScene single_point_scene(Dims grid) {
  return PointScene{{{grid.rows / 2, grid.cols / 2, {1.0, 0.0}}}};
}

// CSV: azimuth_index,range_index,re,im per line. Blank lines and '#' comments are skipped.
inline PointScene parse_scene_csv(std::istream& in) {
  PointScene scene;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long a = -1, r = -1;
    double re = 0.0, im = 0.0;
    std::string extra;
    if (!(ls >> a >> r >> re >> im) || (ls >> extra) || a < 0 || r < 0) {
      throw FormatError("scene line " + std::to_string(lineno) +
                        ": expected azimuth_index,range_index,re,im");
    }
    scene.targets.push_back(
        {static_cast<std::size_t>(a), static_cast<std::size_t>(r), cplx{re, im}});
  }
  return scene;
}

inline PointScene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open scene '" + path + "'");
  return parse_scene_csv(in);
}

inline void write_scene_csv(std::ostream& out, const PointScene& scene) {
  std::ostringstream s;
  s.precision(17);
  for (const auto& t : scene.targets) {
    s << t.azimuth_index << ',' << t.range_index << ',' << t.reflectivity.real() << ','
      << t.reflectivity.imag() << '\n';
  }
  out << s.str();
}

inline void save_scene(const PointScene& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot open '" + path + "' for writing");
  write_scene_csv(out, scene);
}

}  // namespace csar
