#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "swarmcov/errors.hpp"
#include "swarmcov/vec3.hpp"

namespace swarmcov {

inline constexpr double kPlaneTol = 1e-9;     // vertex-on-plane classification, meters
inline constexpr double kWeldTol = 1e-9;      // vertices closer than this are merged
inline constexpr double kZeroMassTol = 1e-12;

/// Open half-space {v | (v - anchor)·normal > 0} with unit normal. The same
/// type doubles as a closed bounding plane when used inside ConvexPolytope
/// (closed-side convention, normal pointing into the polytope).
struct HalfSpace {
  Vec3 anchor;
  Vec3 normal;

  double signed_distance(const Vec3& p) const { return dot(p - anchor, normal); }
  bool strictly_contains(const Vec3& p) const { return signed_distance(p) > 0.0; }
};

inline HalfSpace flipped(const HalfSpace& h) { return {h.anchor, -h.normal}; }

/// Bounded convex polytope with both vertex/face lists and bounding planes.
/// Faces are vertex-index cycles oriented outward; every vertex satisfies
/// every bounding plane within kPlaneTol. An empty polytope has no vertices.
struct ConvexPolytope {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;
  std::vector<HalfSpace> bounding_planes;

  bool empty() const { return vertices.empty(); }

  bool contains(const Vec3& p, double tol = kPlaneTol) const {
    if (empty()) return false;
    for (const auto& h : bounding_planes) {
      if (h.signed_distance(p) < -tol) return false;
    }
    return true;
  }

  std::pair<Vec3, Vec3> bounding_box() const {
    Vec3 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max(),
            std::numeric_limits<double>::max()};
    Vec3 hi = -lo;
    for (const auto& v : vertices) {
      lo = Vec3{std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
      hi = Vec3{std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    return {lo, hi};
  }

  Vec3 vertex_mean() const {
    Vec3 m{};
    for (const auto& v : vertices) m += v;
    return vertices.empty() ? m : m / static_cast<double>(vertices.size());
  }

  std::size_t edge_count() const {
    std::size_t half_edges = 0;
    for (const auto& f : faces) half_edges += f.size();
    return half_edges / 2;
  }
};

/// Importance density over the region; the uniform kind enables exact
/// integration, the general kind goes through grid quadrature.
struct DensityField {
  enum class Kind { Uniform, General };

  Kind kind = Kind::Uniform;
  double uniform_value = 1.0;
  std::function<double(const Vec3&)> fn;

  static DensityField uniform(double value = 1.0) {
    DensityField d;
    d.kind = Kind::Uniform;
    d.uniform_value = value;
    return d;
  }

  static DensityField general(std::function<double(const Vec3&)> f) {
    DensityField d;
    d.kind = Kind::General;
    d.fn = std::move(f);
    return d;
  }

  double operator()(const Vec3& q) const {
    return kind == Kind::Uniform ? uniform_value : fn(q);
  }
};

namespace detail {

// Welds coincident vertices, drops degenerate faces, orients every face
// outward from the vertex mean, and rebuilds the bounding planes.
inline ConvexPolytope rebuild_polytope(const std::vector<Vec3>& verts,
                                       const std::vector<std::vector<int>>& raw_faces) {
  ConvexPolytope out;

  std::vector<int> remap(verts.size(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    for (std::size_t j = 0; j < out.vertices.size(); ++j) {
      if (norm(verts[i] - out.vertices[j]) < kWeldTol) {
        remap[i] = static_cast<int>(j);
        break;
      }
    }
    if (remap[i] < 0) {
      remap[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(verts[i]);
    }
  }

  for (const auto& f : raw_faces) {
    std::vector<int> cycle;
    for (int idx : f) {
      const int m = remap[idx];
      if (cycle.empty() || (cycle.back() != m && cycle.front() != m)) cycle.push_back(m);
    }
    while (cycle.size() > 1 && cycle.front() == cycle.back()) cycle.pop_back();
    if (cycle.size() >= 3) out.faces.push_back(std::move(cycle));
  }

  if (out.vertices.size() < 3 || out.faces.empty()) {
    // Degenerate to a point/segment: keep vertices, no faces or planes.
    if (out.vertices.empty()) return ConvexPolytope{};
    out.faces.clear();
    out.bounding_planes.clear();
    return out;
  }

  const Vec3 inner = out.vertex_mean();
  for (auto& f : out.faces) {
    // Newell's method for the face normal.
    Vec3 n{};
    Vec3 c{};
    const std::size_t m = f.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3& a = out.vertices[f[i]];
      const Vec3& b = out.vertices[f[(i + 1) % m]];
      n += Vec3{(a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y)};
      c += a;
    }
    c = c / static_cast<double>(m);
    if (dot(n, c - inner) < 0.0) std::reverse(f.begin(), f.end());
  }

  out.bounding_planes.reserve(out.faces.size());
  for (const auto& f : out.faces) {
    Vec3 n{};
    Vec3 c{};
    const std::size_t m = f.size();
    for (std::size_t i = 0; i < m; ++i) {
      const Vec3& a = out.vertices[f[i]];
      const Vec3& b = out.vertices[f[(i + 1) % m]];
      n += Vec3{(a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y)};
      c += a;
    }
    const double len = norm(n);
    if (len < 1e-18) continue;
    // Outward face normal, flipped so the bounding plane contains the body.
    out.bounding_planes.push_back({c / static_cast<double>(m), n / -len});
  }
  return out;
}

}  // namespace detail

/// Axis-aligned box with 8 vertices and 6 faces.
inline ConvexPolytope make_box(const Vec3& min_corner, const Vec3& max_corner) {
  const Vec3 d = max_corner - min_corner;
  if (!(d.x > 0.0 && d.y > 0.0 && d.z > 0.0)) {
    throw DegenerateBox("make_box: every extent must be positive");
  }
  std::vector<Vec3> v(8);
  for (int i = 0; i < 8; ++i) {
    v[i] = Vec3{(i & 1) ? max_corner.x : min_corner.x, (i & 2) ? max_corner.y : min_corner.y,
                (i & 4) ? max_corner.z : min_corner.z};
  }
  const std::vector<std::vector<int>> faces = {
      {0, 2, 3, 1},  // z = min
      {4, 5, 7, 6},  // z = max
      {0, 1, 5, 4},  // y = min
      {2, 6, 7, 3},  // y = max
      {0, 4, 6, 2},  // x = min
      {1, 3, 7, 5},  // x = max
  };
  return detail::rebuild_polytope(v, faces);
}

/// Intersection with the closed half-space {v | (v - anchor)·normal >= 0}.
/// New vertices are exact plane-edge intersections; an empty result is a
/// valid value, not an error.
inline ConvexPolytope clip(const ConvexPolytope& poly, const HalfSpace& keep_side) {
  if (poly.empty()) return ConvexPolytope{};

  std::vector<double> dist(poly.vertices.size());
  bool any_kept = false;
  bool any_cut = false;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    dist[i] = keep_side.signed_distance(poly.vertices[i]);
    if (dist[i] >= -kPlaneTol) {
      any_kept = true;
    }
    if (dist[i] < -kPlaneTol) any_cut = true;
  }
  if (!any_kept) return ConvexPolytope{};
  if (!any_cut) return poly;

  std::vector<Vec3> verts = poly.vertices;
  std::vector<std::vector<int>> new_faces;
  std::vector<int> cap_candidates;

  auto intersect_edge = [&](int a, int b) -> int {
    const double t = dist[a] / (dist[a] - dist[b]);
    const Vec3 p = verts[a] + (verts[b] - verts[a]) * t;
    verts.push_back(p);
    return static_cast<int>(verts.size()) - 1;
  };

  bool face_on_plane = false;
  for (const auto& f : poly.faces) {
    std::vector<int> clipped;
    const std::size_t m = f.size();
    bool all_on = true;
    for (std::size_t i = 0; i < m; ++i) {
      const int a = f[i];
      const int b = f[(i + 1) % m];
      const bool keep_a = dist[a] >= -kPlaneTol;
      const bool keep_b = dist[b] >= -kPlaneTol;
      if (std::abs(dist[a]) > kPlaneTol) all_on = false;
      if (keep_a) {
        clipped.push_back(a);
        if (std::abs(dist[a]) <= kPlaneTol) cap_candidates.push_back(a);
      }
      if (keep_a != keep_b && std::abs(dist[a]) > kPlaneTol && std::abs(dist[b]) > kPlaneTol) {
        const int c = intersect_edge(a, b);
        clipped.push_back(c);
        cap_candidates.push_back(c);
      }
    }
    if (all_on) face_on_plane = true;
    if (clipped.size() >= 3) new_faces.push_back(std::move(clipped));
  }

  // Cap polygon on the cut plane: order the boundary points angularly. The
  // intersection of a convex body with a plane is convex, so this is exact.
  if (!face_on_plane && cap_candidates.size() >= 3) {
    std::vector<int> uniq;
    for (int c : cap_candidates) {
      bool dup = false;
      for (int u : uniq) {
        if (norm(verts[c] - verts[u]) < kWeldTol) {
          dup = true;
          break;
        }
      }
      if (!dup) uniq.push_back(c);
    }
    if (uniq.size() >= 3) {
      Vec3 center{};
      for (int u : uniq) center += verts[u];
      center = center / static_cast<double>(uniq.size());
      const Vec3 e1 = any_perpendicular(keep_side.normal);
      const Vec3 e2 = cross(keep_side.normal, e1);
      std::sort(uniq.begin(), uniq.end(), [&](int a, int b) {
        const Vec3 da = verts[a] - center;
        const Vec3 db = verts[b] - center;
        return std::atan2(dot(da, e2), dot(da, e1)) < std::atan2(dot(db, e2), dot(db, e1));
      });
      new_faces.push_back(std::move(uniq));
    }
  }

  return detail::rebuild_polytope(verts, new_faces);
}

/// Exact volume via tetrahedral decomposition from the vertex mean.
inline double volume(const ConvexPolytope& poly) {
  if (poly.empty() || poly.faces.empty()) return 0.0;
  const Vec3 r = poly.vertex_mean();
  double six_v = 0.0;
  for (const auto& f : poly.faces) {
    const Vec3& a = poly.vertices[f[0]];
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      const Vec3& b = poly.vertices[f[i]];
      const Vec3& c = poly.vertices[f[i + 1]];
      six_v += dot(a - r, cross(b - r, c - r));
    }
  }
  return std::max(0.0, six_v / 6.0);
}

namespace detail {

template <typename PerTet>
inline void for_each_tetrahedron(const ConvexPolytope& poly, PerTet&& per_tet) {
  const Vec3 r = poly.vertex_mean();
  for (const auto& f : poly.faces) {
    const Vec3& a = poly.vertices[f[0]];
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      const Vec3& b = poly.vertices[f[i]];
      const Vec3& c = poly.vertices[f[i + 1]];
      const double vol = dot(a - r, cross(b - r, c - r)) / 6.0;
      per_tet(r, a, b, c, vol);
    }
  }
}

template <typename Accum>
inline void quadrature_over(const ConvexPolytope& poly, int resolution, Accum&& accum) {
  const auto [lo, hi] = poly.bounding_box();
  const Vec3 ext = hi - lo;
  const int n = std::max(resolution, 1);
  const Vec3 h = ext / static_cast<double>(n);
  const double cell = h.x * h.y * h.z;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec3 q = lo + Vec3{(i + 0.5) * h.x, (j + 0.5) * h.y, (k + 0.5) * h.z};
        if (poly.contains(q, 0.0)) accum(q, cell);
      }
    }
  }
}

}  // namespace detail

/// Mass and center of mass of the polytope under the given density. The
/// uniform kind is integrated exactly; the general kind uses midpoint grid
/// quadrature over the bounding box with inside tests.
inline std::pair<double, Vec3> mass_and_centroid(const ConvexPolytope& poly,
                                                 const DensityField& density,
                                                 int quadrature_resolution = 64) {
  if (poly.empty()) throw ZeroMass("mass_and_centroid: empty polytope");

  double mass = 0.0;
  Vec3 moment{};
  if (density.kind == DensityField::Kind::Uniform) {
    detail::for_each_tetrahedron(poly, [&](const Vec3& r, const Vec3& a, const Vec3& b,
                                           const Vec3& c, double vol) {
      mass += vol;
      moment += (r + a + b + c) * (vol / 4.0);
    });
    mass *= density.uniform_value;
    moment *= density.uniform_value;
  } else {
    detail::quadrature_over(poly, quadrature_resolution, [&](const Vec3& q, double cell) {
      const double phi = density(q);
      if (phi < 0.0) throw ValidationError("density must be non-negative");
      mass += phi * cell;
      moment += q * (phi * cell);
    });
  }
  if (mass <= kZeroMassTol) throw ZeroMass("mass_and_centroid: vanishing mass");
  return {mass, moment / mass};
}

/// Integral of ||q - x||^2 * phi(q) over the polytope; exact for uniform
/// density via the tetrahedral second-moment formula.
inline double second_moment_about(const ConvexPolytope& poly, const Vec3& x,
                                  const DensityField& density, int quadrature_resolution = 64) {
  if (poly.empty()) return 0.0;
  double acc = 0.0;
  if (density.kind == DensityField::Kind::Uniform) {
    detail::for_each_tetrahedron(poly, [&](const Vec3& r, const Vec3& a, const Vec3& b,
                                           const Vec3& c, double vol) {
      const Vec3 w0 = r - x, w1 = a - x, w2 = b - x, w3 = c - x;
      const Vec3 s = w0 + w1 + w2 + w3;
      acc += vol / 20.0 *
             (norm_sq(w0) + norm_sq(w1) + norm_sq(w2) + norm_sq(w3) + norm_sq(s));
    });
    acc *= density.uniform_value;
  } else {
    detail::quadrature_over(poly, quadrature_resolution, [&](const Vec3& q, double cell) {
      acc += norm_sq(q - x) * density(q) * cell;
    });
  }
  return acc;
}

/// Euclidean projection onto the polytope via Dykstra's algorithm over the
/// bounding planes (exact in one sweep for boxes; iterative otherwise).
inline Vec3 project_onto(const ConvexPolytope& poly, const Vec3& p, int max_sweeps = 64) {
  if (poly.contains(p)) return p;
  Vec3 x = p;
  std::vector<Vec3> corrections(poly.bounding_planes.size(), Vec3{});
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool moved = false;
    for (std::size_t i = 0; i < poly.bounding_planes.size(); ++i) {
      const auto& h = poly.bounding_planes[i];
      const Vec3 y = x + corrections[i];
      const double d = h.signed_distance(y);
      Vec3 xn = y;
      if (d < 0.0) xn = y - h.normal * d;
      corrections[i] = y - xn;
      if (norm_sq(xn - x) > 1e-30) moved = true;
      x = xn;
    }
    if (!moved && poly.contains(x)) break;
  }
  return x;
}

}  // namespace swarmcov
