#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qd {

enum class SiteKind : uint8_t { vertex = 0, edge = 1, face = 2 };
enum class Orient : uint8_t { none = 0, H = 1, V = 2 };

// Canonical 64-bit encoding: kind(4) | orient(4) | x+2^27 (28) | y+2^27 (28).
// Sorting by code is the canonical site order used everywhere (reports, dense
// embedding order).
struct SiteId {
  uint64_t code = 0;

  static constexpr int64_t kOffset = int64_t(1) << 27;

  static SiteId make(SiteKind k, Orient o, int x, int y) {
    SiteId s;
    s.code = (uint64_t(k) << 60) | (uint64_t(o) << 56) |
             (uint64_t(int64_t(x) + kOffset) << 28) | uint64_t(int64_t(y) + kOffset);
    return s;
  }
  static SiteId vertex(int x, int y) { return make(SiteKind::vertex, Orient::none, x, y); }
  static SiteId edge(int x, int y, Orient o) { return make(SiteKind::edge, o, x, y); }
  static SiteId hedge(int x, int y) { return edge(x, y, Orient::H); }
  static SiteId vedge(int x, int y) { return edge(x, y, Orient::V); }
  static SiteId face(int x, int y) { return make(SiteKind::face, Orient::none, x, y); }
  static SiteId from_code(uint64_t c) { SiteId s; s.code = c; return s; }

  SiteKind kind() const { return SiteKind((code >> 60) & 0xF); }
  Orient orient() const { return Orient((code >> 56) & 0xF); }
  int x() const { return int(int64_t((code >> 28) & 0xFFFFFFF) - kOffset); }
  int y() const { return int(int64_t(code & 0xFFFFFFF) - kOffset); }

  std::string str() const;
  static SiteId parse(const std::string& s);

  auto operator<=>(const SiteId&) const = default;
};

struct Point {
  double x = 0, y = 0;
};

enum class LatticeKind { triangular, square_ve };

struct Topology {
  enum Kind { window, torus } kind = window;
  int x0 = 0, y0 = 0;  // window origin
  int w = 0, h = 0;    // window extent or torus dims
  static Topology make_window(int x0, int y0, int w, int h) { return {window, x0, y0, w, h}; }
  static Topology make_window(int w, int h) { return {window, 0, 0, w, h}; }
  static Topology make_torus(int lx, int ly) { return {torus, 0, 0, lx, ly}; }
};

class Lattice {
 public:
  Lattice(LatticeKind kind, Topology topo);

  LatticeKind kind() const { return kind_; }
  const Topology& topology() const { return topo_; }
  bool is_torus() const { return topo_.kind == Topology::torus; }

  // Wraps coordinates on a torus; identity on a window.
  SiteId normalize(SiteId s) const;
  bool contains(SiteId s) const;

  const std::vector<SiteId>& vertices() const { return vertices_; }
  const std::vector<SiteId>& edges() const { return edges_; }
  const std::vector<SiteId>& faces() const { return faces_; }
  // Qubit-carrying sites in canonical order.
  std::vector<SiteId> qubits() const;

  std::vector<SiteId> neighbors(SiteId v) const;
  // square_ve
  std::vector<SiteId> incident_edges(SiteId v) const;  // top, right, bottom, left
  std::array<SiteId, 4> face_edges(SiteId f) const;     // bottom, right, top, left
  std::array<SiteId, 4> face_vertices(SiteId f) const;
  std::pair<SiteId, SiteId> endpoints(SiteId e) const;  // (d0, d1)
  // triangular
  std::vector<std::array<SiteId, 3>> triangles_at(SiteId v) const;
  std::vector<std::array<SiteId, 3>> triangles() const;  // triangles fully inside

  Point position(SiteId s) const;
  int distance(SiteId a, SiteId b) const;
  // Graph distance from s to the window boundary (large on a torus).
  int boundary_distance(SiteId s) const;

 private:
  LatticeKind kind_;
  Topology topo_;
  std::vector<SiteId> vertices_, edges_, faces_;
};

// Unwrapped helpers usable without a Lattice (infinite plane).
namespace tri {
int color(SiteId v);  // 0 = a, 1 = b, 2 = c
char color_name(SiteId v);
std::array<SiteId, 3> up_triangle(int a, int b);
std::array<SiteId, 3> down_triangle(int a, int b);
std::vector<std::array<SiteId, 3>> triangles_at(SiteId v);
std::array<SiteId, 6> ring(SiteId v);  // neighbors in cyclic order
int distance(SiteId u, SiteId v);
Point position(SiteId v);  // axial coordinates used directly as plane coordinates
// Hexagon tiling: centres are the colour-a vertices; every triangle holds
// exactly one centre. Hexagons of equal hex_color are pairwise disjoint.
bool is_hex_center(SiteId v);
int hex_color(SiteId center);
SiteId hex_center_of(const std::array<SiteId, 3>& triangle);
std::array<SiteId, 7> hexagon(SiteId center);  // centre then ring
}  // namespace tri

namespace sq {
std::array<SiteId, 4> incident_edges(SiteId v);  // top, right, bottom, left
std::array<SiteId, 4> face_edges(SiteId f);      // bottom, right, top, left
std::array<SiteId, 4> face_vertices(SiteId f);
std::pair<SiteId, SiteId> endpoints(SiteId e);
Point position(SiteId s);
int distance(SiteId a, SiteId b);
// f(e,v) = +1 at d0, -1 at d1; g = -f.
int f_sign(SiteId e, SiteId v);
int g_sign(SiteId e, SiteId v);
}  // namespace sq

// Oriented polyline through dual-lattice points. Open paths are understood as
// extending to infinity along their first and last segments when used as lines.
struct DualPath {
  std::vector<Point> pts;
  bool closed = false;

  static DualPath line(Point a, Point b) { return {{a, b}, false}; }
  DualPath reversed() const;
  // Self-avoidance and unit-step structure on the square dual lattice.
  void validate_square() const;
};

// Edges of the square lattice crossed by the dual path, in path order, with the
// crossing direction of each step.
struct Crossing {
  SiteId edge;
  Point dir;
  Point mid;
};
std::vector<Crossing> crossed_edges(const DualPath& p);

// p(e) = +1 iff d1(e) lies on the right of the crossing step.
int crossing_sign(const Crossing& c);

// True iff q lies strictly to the right of the infinite extension of the path
// (for closed paths: inside a clockwise loop / outside a counter-clockwise one).
bool right_of(const DualPath& p, Point q);

struct Region {
  enum Kind { explicit_set, right_of_line, cone } kind = explicit_set;
  std::set<SiteId> sites;
  bool contains(SiteId s) const { return sites.count(s) > 0; }
  size_t size() const { return sites.size(); }
};

Region region_right_of(const DualPath& line, const Lattice& lat);

// Cone with apex, axis angle and opening angle (radians).
struct Cone {
  Point apex;
  double axis = 0;
  double angle = 0;
  bool contains(Point p) const;
  // r(cone): points of the complement to the right of the path formed by the
  // right-most ray, the segment to the reference origin and the upward ray.
  bool right_of(Point p, Point origin) const;
};
Region region_cone(const Cone& c, const Lattice& lat);

int tripartite_color(const Lattice& lat, SiteId v);

}  // namespace qd
