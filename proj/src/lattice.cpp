#include "qd/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace qd {

std::string SiteId::str() const {
  char buf[64];
  switch (kind()) {
    case SiteKind::vertex: std::snprintf(buf, sizeof buf, "v(%d,%d)", x(), y()); break;
    case SiteKind::edge:
      std::snprintf(buf, sizeof buf, "e%c(%d,%d)", orient() == Orient::H ? 'H' : 'V', x(), y());
      break;
    case SiteKind::face: std::snprintf(buf, sizeof buf, "f(%d,%d)", x(), y()); break;
  }
  return buf;
}

SiteId SiteId::parse(const std::string& s) {
  int x = 0, y = 0;
  char o = 0;
  if (std::sscanf(s.c_str(), "v(%d,%d)", &x, &y) == 2) return vertex(x, y);
  if (std::sscanf(s.c_str(), "f(%d,%d)", &x, &y) == 2) return face(x, y);
  if (std::sscanf(s.c_str(), "e%c(%d,%d)", &o, &x, &y) == 3 && (o == 'H' || o == 'V'))
    return edge(x, y, o == 'H' ? Orient::H : Orient::V);
  throw std::invalid_argument("bad site id: " + s);
}

// ---------------------------------------------------------------- triangular

namespace tri {

int color(SiteId v) { return (((v.x() - v.y()) % 3) + 3) % 3; }
char color_name(SiteId v) { return "abc"[color(v)]; }

std::array<SiteId, 3> up_triangle(int a, int b) {
  return {SiteId::vertex(a, b), SiteId::vertex(a + 1, b), SiteId::vertex(a, b + 1)};
}
std::array<SiteId, 3> down_triangle(int a, int b) {
  return {SiteId::vertex(a + 1, b), SiteId::vertex(a, b + 1), SiteId::vertex(a + 1, b + 1)};
}

std::vector<std::array<SiteId, 3>> triangles_at(SiteId v) {
  int a = v.x(), b = v.y();
  return {up_triangle(a, b),       up_triangle(a - 1, b),   up_triangle(a, b - 1),
          down_triangle(a - 1, b), down_triangle(a, b - 1), down_triangle(a - 1, b - 1)};
}

std::array<SiteId, 6> ring(SiteId v) {
  int a = v.x(), b = v.y();
  return {SiteId::vertex(a + 1, b), SiteId::vertex(a, b + 1),     SiteId::vertex(a - 1, b + 1),
          SiteId::vertex(a - 1, b), SiteId::vertex(a, b - 1),     SiteId::vertex(a + 1, b - 1)};
}

int distance(SiteId u, SiteId v) {
  int da = v.x() - u.x(), db = v.y() - u.y();
  return (std::abs(da) + std::abs(db) + std::abs(da + db)) / 2;
}

Point position(SiteId v) { return {double(v.x()), double(v.y())}; }

bool is_hex_center(SiteId v) { return color(v) == 0; }
int hex_color(SiteId center) { return ((center.y() % 3) + 3) % 3; }

SiteId hex_center_of(const std::array<SiteId, 3>& triangle) {
  for (auto v : triangle)
    if (is_hex_center(v)) return v;
  throw std::logic_error("triangle without hexagon centre");
}

std::array<SiteId, 7> hexagon(SiteId center) {
  auto r = ring(center);
  return {center, r[0], r[1], r[2], r[3], r[4], r[5]};
}

}  // namespace tri

// ---------------------------------------------------------------- square

namespace sq {

std::array<SiteId, 4> incident_edges(SiteId v) {
  int x = v.x(), y = v.y();
  return {SiteId::vedge(x, y), SiteId::hedge(x, y), SiteId::vedge(x, y - 1), SiteId::hedge(x - 1, y)};
}

std::array<SiteId, 4> face_edges(SiteId f) {
  int x = f.x(), y = f.y();
  return {SiteId::hedge(x, y), SiteId::vedge(x + 1, y), SiteId::hedge(x, y + 1), SiteId::vedge(x, y)};
}

std::array<SiteId, 4> face_vertices(SiteId f) {
  int x = f.x(), y = f.y();
  return {SiteId::vertex(x, y), SiteId::vertex(x + 1, y), SiteId::vertex(x + 1, y + 1),
          SiteId::vertex(x, y + 1)};
}

std::pair<SiteId, SiteId> endpoints(SiteId e) {
  int x = e.x(), y = e.y();
  if (e.orient() == Orient::H) return {SiteId::vertex(x, y), SiteId::vertex(x + 1, y)};
  return {SiteId::vertex(x, y), SiteId::vertex(x, y + 1)};
}

Point position(SiteId s) {
  double x = s.x(), y = s.y();
  switch (s.kind()) {
    case SiteKind::vertex: return {x, y};
    case SiteKind::edge: return s.orient() == Orient::H ? Point{x + 0.5, y} : Point{x, y + 0.5};
    case SiteKind::face: return {x + 0.5, y + 0.5};
  }
  return {x, y};
}

static std::pair<int, int> doubled(SiteId s) {
  int X = 2 * s.x(), Y = 2 * s.y();
  if (s.kind() == SiteKind::edge) {
    if (s.orient() == Orient::H) X += 1; else Y += 1;
  } else if (s.kind() == SiteKind::face) {
    X += 1;
    Y += 1;
  }
  return {X, Y};
}

int distance(SiteId a, SiteId b) {
  // Incidence graph of vertices and edges; faces (odd,odd) are not traversable.
  auto [ax, ay] = doubled(a);
  auto [bx, by] = doubled(b);
  int d = std::abs(ax - bx) + std::abs(ay - by);
  bool detour = (ax == bx && (ax & 1) && ay != by) || (ay == by && (ay & 1) && ax != bx);
  return d + (detour ? 2 : 0);
}

int f_sign(SiteId e, SiteId v) {
  auto [d0, d1] = endpoints(e);
  if (v == d0) return 1;
  if (v == d1) return -1;
  throw std::invalid_argument("vertex not incident to edge");
}

int g_sign(SiteId e, SiteId v) { return -f_sign(e, v); }

}  // namespace sq

// ---------------------------------------------------------------- Lattice

Lattice::Lattice(LatticeKind kind, Topology topo) : kind_(kind), topo_(topo) {
  if (topo.w <= 0 || topo.h <= 0) throw std::invalid_argument("lattice dimensions must be positive");
  if (topo.kind == Topology::torus) {
    int minimum = kind == LatticeKind::triangular ? 3 : 2;
    if (topo.w < minimum || topo.h < minimum)
      throw std::invalid_argument("torus dimensions too small for a consistent face structure");
  }
  int X0 = topo.x0, Y0 = topo.y0, W = topo.w, H = topo.h;
  bool torus = topo.kind == Topology::torus;
  for (int x = X0; x < X0 + W; ++x)
    for (int y = Y0; y < Y0 + H; ++y) vertices_.push_back(SiteId::vertex(x, y));
  if (kind == LatticeKind::square_ve) {
    for (int x = X0; x < X0 + W; ++x)
      for (int y = Y0; y < Y0 + H; ++y) {
        if (torus || x + 1 < X0 + W) edges_.push_back(SiteId::hedge(x, y));
        if (torus || y + 1 < Y0 + H) edges_.push_back(SiteId::vedge(x, y));
        if (torus || (x + 1 < X0 + W && y + 1 < Y0 + H)) faces_.push_back(SiteId::face(x, y));
      }
  }
  std::sort(vertices_.begin(), vertices_.end());
  std::sort(edges_.begin(), edges_.end());
  std::sort(faces_.begin(), faces_.end());
}

static int wrap(int v, int o, int n) { return o + ((((v - o) % n) + n) % n); }

SiteId Lattice::normalize(SiteId s) const {
  if (!is_torus()) return s;
  return SiteId::make(s.kind(), s.orient(), wrap(s.x(), topo_.x0, topo_.w), wrap(s.y(), topo_.y0, topo_.h));
}

bool Lattice::contains(SiteId s) const {
  const std::vector<SiteId>* v = nullptr;
  switch (s.kind()) {
    case SiteKind::vertex: v = &vertices_; break;
    case SiteKind::edge: v = &edges_; break;
    case SiteKind::face: v = &faces_; break;
  }
  return std::binary_search(v->begin(), v->end(), normalize(s));
}

std::vector<SiteId> Lattice::qubits() const {
  std::vector<SiteId> q = vertices_;
  if (kind_ == LatticeKind::square_ve) q.insert(q.end(), edges_.begin(), edges_.end());
  std::sort(q.begin(), q.end());
  return q;
}

std::vector<SiteId> Lattice::neighbors(SiteId v) const {
  std::vector<SiteId> out;
  if (kind_ == LatticeKind::triangular) {
    for (auto n : tri::ring(v))
      if (contains(n)) out.push_back(normalize(n));
  } else {
    int x = v.x(), y = v.y();
    for (auto n : {SiteId::vertex(x, y + 1), SiteId::vertex(x + 1, y), SiteId::vertex(x, y - 1),
                   SiteId::vertex(x - 1, y)})
      if (contains(n)) out.push_back(normalize(n));
  }
  return out;
}

std::vector<SiteId> Lattice::incident_edges(SiteId v) const {
  if (kind_ != LatticeKind::square_ve) throw std::invalid_argument("incident_edges needs square_ve");
  std::vector<SiteId> out;
  for (auto e : sq::incident_edges(v))
    if (contains(e)) out.push_back(normalize(e));
  return out;
}

std::array<SiteId, 4> Lattice::face_edges(SiteId f) const {
  auto es = sq::face_edges(f);
  for (auto& e : es) e = normalize(e);
  return es;
}

std::array<SiteId, 4> Lattice::face_vertices(SiteId f) const {
  auto vs = sq::face_vertices(f);
  for (auto& v : vs) v = normalize(v);
  return vs;
}

std::pair<SiteId, SiteId> Lattice::endpoints(SiteId e) const {
  auto [a, b] = sq::endpoints(e);
  return {normalize(a), normalize(b)};
}

std::vector<std::array<SiteId, 3>> Lattice::triangles_at(SiteId v) const {
  if (kind_ != LatticeKind::triangular) throw std::invalid_argument("triangles need a triangular lattice");
  std::vector<std::array<SiteId, 3>> out;
  for (auto t : tri::triangles_at(v)) {
    if (contains(t[0]) && contains(t[1]) && contains(t[2])) {
      for (auto& s : t) s = normalize(s);
      out.push_back(t);
    }
  }
  return out;
}

std::vector<std::array<SiteId, 3>> Lattice::triangles() const {
  if (kind_ != LatticeKind::triangular) throw std::invalid_argument("triangles need a triangular lattice");
  std::vector<std::array<SiteId, 3>> out;
  for (auto v : vertices_) {
    for (auto t : {tri::up_triangle(v.x(), v.y()), tri::down_triangle(v.x(), v.y())}) {
      if (contains(t[0]) && contains(t[1]) && contains(t[2])) {
        for (auto& s : t) s = normalize(s);
        out.push_back(t);
      }
    }
  }
  return out;
}

Point Lattice::position(SiteId s) const {
  return kind_ == LatticeKind::triangular ? tri::position(s) : sq::position(s);
}

int Lattice::distance(SiteId a, SiteId b) const {
  auto d = [&](SiteId u, SiteId v) {
    return kind_ == LatticeKind::triangular ? tri::distance(u, v) : sq::distance(u, v);
  };
  if (!is_torus()) return d(a, b);
  int best = 1 << 30;
  for (int kx = -1; kx <= 1; ++kx)
    for (int ky = -1; ky <= 1; ++ky) {
      SiteId bb = SiteId::make(b.kind(), b.orient(), b.x() + kx * topo_.w, b.y() + ky * topo_.h);
      best = std::min(best, d(normalize(a), bb));
    }
  return best;
}

int Lattice::boundary_distance(SiteId s) const {
  if (is_torus()) return 1 << 20;
  int X0 = topo_.x0, Y0 = topo_.y0, X1 = topo_.x0 + topo_.w - 1, Y1 = topo_.y0 + topo_.h - 1;
  if (kind_ == LatticeKind::triangular)
    return std::min({s.x() - X0, X1 - s.x(), s.y() - Y0, Y1 - s.y()});
  auto [X, Y] = sq::doubled(s);
  return std::min({X - 2 * X0, 2 * X1 - X, Y - 2 * Y0, 2 * Y1 - Y});
}

int tripartite_color(const Lattice& lat, SiteId v) {
  if (lat.kind() != LatticeKind::triangular)
    throw std::invalid_argument("tripartite coloring is defined on the triangular lattice only");
  return tri::color(v);
}

// ---------------------------------------------------------------- dual paths

DualPath DualPath::reversed() const {
  DualPath r = *this;
  std::reverse(r.pts.begin(), r.pts.end());
  return r;
}

static bool is_half_integer(double v) {
  double f = v - std::floor(v);
  return std::abs(f - 0.5) < 1e-9;
}

void DualPath::validate_square() const {
  if (pts.size() < 2) throw std::invalid_argument("dual path needs at least one step");
  std::set<std::pair<long, long>> seen;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!is_half_integer(pts[i].x) || !is_half_integer(pts[i].y))
      throw std::invalid_argument("dual path points must be face centres");
    if (i > 0) {
      double dx = pts[i].x - pts[i - 1].x, dy = pts[i].y - pts[i - 1].y;
      if (std::abs(std::abs(dx) + std::abs(dy) - 1.0) > 1e-9)
        throw std::invalid_argument("dual path steps must join adjacent faces");
    }
  }
  std::set<uint64_t> edges;
  for (auto& c : crossed_edges(*this))
    if (!edges.insert(c.edge.code).second) throw std::invalid_argument("dual path repeats a dual edge");
}

std::vector<Crossing> crossed_edges(const DualPath& p) {
  std::vector<Crossing> out;
  size_t n = p.pts.size();
  size_t steps = p.closed ? n : n - 1;
  for (size_t i = 0; i < steps; ++i) {
    Point a = p.pts[i], b = p.pts[(i + 1) % n];
    // Axis-aligned segments of integer length are split into unit steps.
    int len = int(std::lround(std::abs(b.x - a.x) + std::abs(b.y - a.y)));
    if (len < 1) len = 1;
    Point dir{(b.x - a.x) / len, (b.y - a.y) / len};
    for (int k = 0; k < len; ++k) {
      Point mid{a.x + (k + 0.5) * dir.x, a.y + (k + 0.5) * dir.y};
      SiteId e;
      if (std::abs(mid.x - std::round(mid.x)) < 1e-9)
        e = SiteId::vedge(int(std::lround(mid.x)), int(std::floor(mid.y)));
      else
        e = SiteId::hedge(int(std::floor(mid.x)), int(std::lround(mid.y)));
      out.push_back({e, dir, mid});
    }
  }
  return out;
}

int crossing_sign(const Crossing& c) {
  Point d1 = sq::position(sq::endpoints(c.edge).second);
  double rx = c.dir.y, ry = -c.dir.x;
  double dot = rx * (d1.x - c.mid.x) + ry * (d1.y - c.mid.y);
  return dot > 0 ? 1 : -1;
}

static double signed_area(const std::vector<Point>& poly) {
  double a = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return a / 2;
}

static int winding(const std::vector<Point>& poly, Point q) {
  int wn = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    Point a = poly[i], b = poly[(i + 1) % poly.size()];
    double cross = (b.x - a.x) * (q.y - a.y) - (q.x - a.x) * (b.y - a.y);
    if (a.y <= q.y) {
      if (b.y > q.y && cross > 0) ++wn;
    } else if (b.y <= q.y && cross < 0) {
      --wn;
    }
  }
  return wn;
}

bool right_of(const DualPath& p, Point q) {
  if (p.pts.size() < 2) throw std::invalid_argument("path needs two points");
  if (p.closed) {
    bool inside = winding(p.pts, q) != 0;
    return signed_area(p.pts) < 0 ? inside : !inside;
  }
  constexpr double M = 1e5;
  auto unit = [](Point a, Point b) {
    double dx = b.x - a.x, dy = b.y - a.y, n = std::hypot(dx, dy);
    return Point{dx / n, dy / n};
  };
  Point u0 = unit(p.pts[0], p.pts[1]);
  Point un = unit(p.pts[p.pts.size() - 2], p.pts.back());
  Point A{p.pts[0].x - M * u0.x, p.pts[0].y - M * u0.y};
  Point B{p.pts.back().x + M * un.x, p.pts.back().y + M * un.y};
  std::vector<Point> poly;
  poly.push_back(A);
  for (auto& pt : p.pts) poly.push_back(pt);
  poly.push_back(B);
  double tb = std::atan2(B.y, B.x), ta = std::atan2(A.y, A.x);
  double sweep = tb - ta;
  while (sweep <= 0) sweep += 2 * std::numbers::pi;
  const int K = 64;
  for (int k = 0; k <= K; ++k) {
    double t = tb - sweep * k / K;
    poly.push_back({4 * M * std::cos(t), 4 * M * std::sin(t)});
  }
  return winding(poly, q) != 0;
}

Region region_right_of(const DualPath& line, const Lattice& lat) {
  Region r;
  r.kind = Region::right_of_line;
  for (auto v : lat.vertices())
    if (right_of(line, lat.position(v))) r.sites.insert(v);
  if (r.sites.empty() || r.sites.size() == lat.vertices().size())
    throw std::invalid_argument("line does not separate the window");
  return r;
}

bool Cone::contains(Point p) const {
  double dx = p.x - apex.x, dy = p.y - apex.y;
  if (std::hypot(dx, dy) < 1e-12) return true;
  double t = std::atan2(dy, dx) - axis;
  while (t > std::numbers::pi) t -= 2 * std::numbers::pi;
  while (t < -std::numbers::pi) t += 2 * std::numbers::pi;
  return std::abs(t) <= angle / 2 + 1e-12;
}

bool Cone::right_of(Point p, Point origin) const {
  if (contains(p)) return false;
  constexpr double M = 1e5;
  double rdir = axis + angle / 2;
  DualPath path;
  path.pts.push_back({apex.x + M * std::cos(rdir), apex.y + M * std::sin(rdir)});
  path.pts.push_back(apex);
  if (std::hypot(origin.x - apex.x, origin.y - apex.y) > 1e-12) path.pts.push_back(origin);
  path.pts.push_back({origin.x, origin.y + M});
  return qd::right_of(path, p);
}

Region region_cone(const Cone& c, const Lattice& lat) {
  Region r;
  r.kind = Region::cone;
  for (auto s : lat.qubits())
    if (c.contains(lat.position(s))) r.sites.insert(s);
  return r;
}

}  // namespace qd
