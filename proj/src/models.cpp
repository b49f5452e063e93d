#include "qd/models.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qd/dense.hpp"

namespace qd {

ModelId parse_model_id(const std::string& s) {
  std::string k = s;
  std::replace(k.begin(), k.end(), '_', '-');
  if (k == "trivial-paramagnet") return ModelId::trivial_paramagnet;
  if (k == "levin-gu") return ModelId::levin_gu;
  if (k == "toric-code-ancilla") return ModelId::toric_code_ancilla;
  if (k == "set-toric-code") return ModelId::set_toric_code;
  throw std::invalid_argument("unknown model '" + s + "'");
}

std::string model_name(ModelId m) {
  switch (m) {
    case ModelId::trivial_paramagnet: return "trivial-paramagnet";
    case ModelId::levin_gu: return "levin-gu";
    case ModelId::toric_code_ancilla: return "toric-code-ancilla";
    case ModelId::set_toric_code: return "set-toric-code";
  }
  return "";
}

LatticeKind model_lattice(ModelId m) {
  return m == ModelId::trivial_paramagnet || m == ModelId::levin_gu ? LatticeKind::triangular
                                                                     : LatticeKind::square_ve;
}

std::string term_kind_name(TermKind k) {
  switch (k) {
    case TermKind::A: return "A";
    case TermKind::B: return "B";
    case TermKind::B_lg: return "B_lg";
    case TermKind::B_tilde: return "B_tilde";
    case TermKind::Q: return "Q";
    case TermKind::stab_x: return "stab_x";
  }
  return "";
}

std::string Term::name() const { return term_kind_name(kind) + "@" + site.str(); }

PhasedPauli wrap(const PhasedPauli& p, const Lattice& lat) {
  if (!lat.is_torus()) return p;
  std::vector<std::pair<uint64_t, uint8_t>> ops;
  for (auto [c, l] : p.ops()) ops.push_back({lat.normalize(SiteId::from_code(c)).code, l});
  std::sort(ops.begin(), ops.end());
  for (size_t i = 1; i < ops.size(); ++i)
    if (ops[i].first == ops[i - 1].first) throw std::invalid_argument("operator wraps onto itself on this torus");
  return PhasedPauli::from_ops(ops, p.phase());
}

CliffordWord wrap(const CliffordWord& w, const Lattice& lat) {
  if (!lat.is_torus()) return w;
  CliffordWord out(w.phase());
  for (auto& f : w.factors()) {
    if (auto* p = std::get_if<PhasedPauli>(&f)) out.append(wrap(*p, lat));
    else out.append(QuarterRotation(wrap(std::get<QuarterRotation>(f).axis, lat)));
  }
  return out;
}

namespace {

PhasedPauli px(SiteId s) { return PhasedPauli::single(s, X); }
PhasedPauli pz(SiteId s) { return PhasedPauli::single(s, Z); }

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

CliffordWord raw_term(ModelId m, TermKind k, SiteId s) {
  bool vertex = s.kind() == SiteKind::vertex, face = s.kind() == SiteKind::face;
  switch (m) {
    case ModelId::trivial_paramagnet:
      require(k == TermKind::stab_x && vertex, "trivial-paramagnet has only stab_x terms on vertices");
      return CliffordWord(px(s));
    case ModelId::levin_gu: {
      if (k == TermKind::stab_x && vertex) return CliffordWord(px(s));
      require(k == TermKind::B_lg && vertex, "levin-gu terms are B_lg on vertices");
      // -X_v prod_{<vqq'>} i^{(1 - Z_q Z_q')/2}, each factor omega e^{-i pi/4 Z_q Z_q'}.
      CliffordWord w(-px(s));
      auto r = tri::ring(s);
      for (int i = 0; i < 6; ++i) {
        w.append(rot(-(pz(r[i]) * pz(r[(i + 1) % 6]))));
        w.add_phase(1);
      }
      return w;
    }
    case ModelId::toric_code_ancilla:
    case ModelId::set_toric_code: {
      if (k == TermKind::A) {
        require(vertex, "A needs a vertex");
        auto es = sq::incident_edges(s);
        return CliffordWord(PhasedPauli::product({es.begin(), es.end()}, X));
      }
      if (k == TermKind::B) {
        require(face, "B needs a face");
        auto es = sq::face_edges(s);
        return CliffordWord(PhasedPauli::product({es.begin(), es.end()}, Z));
      }
      if (k == TermKind::stab_x) {
        require(vertex, "stab_x needs a vertex");
        return CliffordWord(px(s));
      }
      require(m == ModelId::set_toric_code, "toric-code-ancilla terms are A, B, stab_x");
      if (k == TermKind::B_tilde) {
        require(face, "B_tilde needs a face");
        CliffordWord w;
        std::vector<SiteId> es;
        for (auto e : sq::face_edges(s)) {
          auto [d0, d1] = sq::endpoints(e);
          w.append(rot(-(px(e) * pz(d1))));
          w.append(rot(px(e) * pz(d0)));
          es.push_back(e);
        }
        w.append(PhasedPauli::product(es, Z));
        return w;
      }
      require(k == TermKind::Q && vertex, "set-toric-code terms are A, B_tilde, Q (and B, stab_x)");
      CliffordWord w(px(s));
      for (auto e : sq::incident_edges(s)) {
        auto axis = pz(s) * px(e);
        w.append(rot(sq::f_sign(e, s) > 0 ? -axis : axis));
      }
      return w;
    }
  }
  throw std::invalid_argument("bad model");
}

}  // namespace

bool term_fits(ModelId m, TermKind k, SiteId site, const Lattice& lat) {
  if (!lat.contains(site)) return false;
  CliffordWord w;
  try {
    w = raw_term(m, k, site);
  } catch (const std::invalid_argument&) {
    return false;
  }
  for (auto s : w.support())
    if (!lat.contains(s)) return false;
  return true;
}

CliffordWord term(ModelId m, TermKind k, SiteId site, const Lattice& lat) {
  if (model_lattice(m) != lat.kind()) throw std::invalid_argument("model/lattice kind mismatch");
  auto w = raw_term(m, k, site);
  for (auto s : w.support())
    if (!lat.contains(s)) throw std::invalid_argument("term " + term_kind_name(k) + "@" + site.str() + " leaves the lattice");
  return wrap(w, lat);
}

std::vector<Term> hamiltonian_terms(ModelId m, const Lattice& lat) {
  std::vector<std::pair<TermKind, std::vector<SiteId>>> plan;
  switch (m) {
    case ModelId::trivial_paramagnet: plan = {{TermKind::stab_x, lat.vertices()}}; break;
    case ModelId::levin_gu: plan = {{TermKind::B_lg, lat.vertices()}}; break;
    case ModelId::toric_code_ancilla:
      plan = {{TermKind::A, lat.vertices()}, {TermKind::B, lat.faces()}, {TermKind::stab_x, lat.vertices()}};
      break;
    case ModelId::set_toric_code:
      plan = {{TermKind::A, lat.vertices()}, {TermKind::B_tilde, lat.faces()}, {TermKind::Q, lat.vertices()}};
      break;
  }
  std::vector<Term> out;
  for (auto& [k, sites] : plan)
    for (auto s : sites)
      if (term_fits(m, k, s, lat)) out.push_back({k, s, term(m, k, s, lat)});
  return out;
}

PhasedPauli SymmetryAction::site_unitary(SiteId s, int g) const {
  if (g % order == 0 || s.kind() != SiteKind::vertex) return PhasedPauli();
  return px(s);
}

SymmetryAction symmetry(ModelId) { return SymmetryAction{}; }

PhasedPauli symmetry_unitary(const std::vector<SiteId>& sites, int g) {
  SymmetryAction a;
  PhasedPauli u;
  for (auto s : sites) u = u * a.site_unitary(s, g);
  return u;
}

CliffordWord beta(const CliffordWord& w) { return ad(CliffordWord(symmetry_unitary(w.support())), w); }
PhasedPauli beta(const PhasedPauli& q) { return conj_pauli(symmetry_unitary(q.support()), q); }

namespace {

std::vector<SiteId> in_region(const std::vector<SiteId>& sup, const std::set<SiteId>& region) {
  std::vector<SiteId> out;
  for (auto s : sup)
    if (region.count(s)) out.push_back(s);
  return out;
}

}  // namespace

CliffordWord beta_restricted(const std::set<SiteId>& region, const CliffordWord& w) {
  return ad(CliffordWord(symmetry_unitary(in_region(w.support(), region))), w);
}

PhasedPauli beta_restricted(const std::set<SiteId>& region, const PhasedPauli& q) {
  return conj_pauli(symmetry_unitary(in_region(q.support(), region)), q);
}

Circuit levin_gu_entangler(const Lattice& lat, double theta) {
  if (lat.kind() != LatticeKind::triangular) throw std::invalid_argument("levin-gu entangler needs a triangular lattice");
  if (lat.is_torus() && (lat.topology().w % 3 || lat.topology().h % 3))
    throw std::invalid_argument("hexagon tiling needs torus dimensions divisible by 3");
  std::vector<Layer> layers(3);
  for (auto c : lat.vertices()) {
    if (!tri::is_hex_center(c)) continue;
    std::vector<DenseOp> atoms;
    for (auto t : tri::triangles_at(c)) {
      bool ok = true;
      for (auto& v : t) {
        ok &= lat.contains(v);
        v = lat.normalize(v);
      }
      if (ok) atoms.push_back(levin_gu_triangle(t, theta));
    }
    if (!atoms.empty()) layers[size_t(tri::hex_color(c))].gates.push_back(Gate::dense(std::move(atoms)));
  }
  return Circuit(std::move(layers));
}

Circuit set_entangler(const Lattice& lat) {
  if (lat.kind() != LatticeKind::square_ve) throw std::invalid_argument("set entangler needs a square_ve lattice");
  bool parity_ok = !lat.is_torus() || (lat.topology().w % 2 == 0 && lat.topology().h % 2 == 0);
  std::vector<std::pair<int, Gate>> gates;
  for (auto e : lat.edges()) {
    auto [d0, d1] = lat.endpoints(e);
    if (!lat.contains(d0) || !lat.contains(d1)) continue;
    int key = (e.orient() == Orient::H ? 0 : 2) + ((e.orient() == Orient::H ? e.x() : e.y()) & 1);
    gates.push_back({key, Gate::dense({set_edge_gate(e, d0, d1)})});
  }
  std::vector<Layer> layers(4);
  if (parity_ok) {
    for (auto& [k, g] : gates) layers[size_t(k)].gates.push_back(g);
    return Circuit(std::move(layers));
  }
  std::stable_sort(gates.begin(), gates.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<std::set<SiteId>> used;
  layers.clear();
  for (auto& [k, g] : gates) {
    size_t d = 0;
    for (; d < layers.size(); ++d) {
      bool free = true;
      for (auto s : g.support) free &= !used[d].count(s);
      if (free) break;
    }
    if (d == layers.size()) {
      layers.emplace_back();
      used.emplace_back();
    }
    layers[d].gates.push_back(g);
    used[d].insert(g.support.begin(), g.support.end());
  }
  return Circuit(std::move(layers));
}

Circuit erasure_line_circuit(const Lattice& lat, int x0) {
  if (lat.kind() != LatticeKind::square_ve) throw std::invalid_argument("erasure line needs a square_ve lattice");
  const auto& t = lat.topology();
  DualPath p;
  for (int y = t.y0 - 1; y <= t.y0 + t.h; ++y) p.pts.push_back({x0 + 0.5, y + 0.5});
  Layer layer;
  for (auto& c : crossed_edges(p)) {
    if (!lat.contains(c.edge)) continue;
    auto ax = px(c.edge);
    layer.gates.push_back(Gate::symbolic(rot(crossing_sign(c) > 0 ? -ax : ax)));
  }
  return Circuit({layer});
}

Circuit builtin_circuit(const std::string& name, const Lattice& lat) {
  if (name == "builtin:levin-gu-entangler") return levin_gu_entangler(lat);
  if (name == "builtin:set-entangler") return set_entangler(lat);
  if (name == "builtin:set-erasure-line")
    return erasure_line_circuit(lat, lat.topology().x0 + lat.topology().w / 2 - 1);
  throw std::invalid_argument("unknown builtin circuit '" + name + "'");
}

std::vector<SiteId> path_edges(const std::vector<SiteId>& vs) {
  std::vector<SiteId> out;
  for (size_t i = 0; i + 1 < vs.size(); ++i) {
    int dx = vs[i + 1].x() - vs[i].x(), dy = vs[i + 1].y() - vs[i].y();
    int x = std::min(vs[i].x(), vs[i + 1].x()), y = std::min(vs[i].y(), vs[i + 1].y());
    if (std::abs(dx) + std::abs(dy) != 1) throw std::invalid_argument("path steps must join neighboring vertices");
    out.push_back(dx ? SiteId::hedge(x, y) : SiteId::vedge(x, y));
  }
  return out;
}

CliffordWord eps_string(const std::vector<SiteId>& vs) {
  PhasedPauli p;
  for (auto e : path_edges(vs)) p = p * pz(e);
  return CliffordWord(p);
}

CliffordWord eps_tilde_string(const std::vector<SiteId>& vs) {
  CliffordWord w;
  for (auto e : path_edges(vs)) {
    auto [d0, d1] = sq::endpoints(e);
    w.append(pz(e));
    w.append(rot(px(e) * pz(d1)));
    w.append(rot(-(px(e) * pz(d0))));
  }
  return w;
}

CliffordWord m_string(const DualPath& p) {
  PhasedPauli q;
  for (auto& c : crossed_edges(p)) q = q * px(c.edge);
  return CliffordWord(q);
}

CliffordWord sigma_erasure(const DualPath& p) {
  CliffordWord w;
  for (auto& c : crossed_edges(p)) {
    auto ax = px(c.edge);
    w.append(rot(crossing_sign(c) > 0 ? -ax : ax));
  }
  return w;
}

namespace {

bool overlap(const std::vector<SiteId>& a, const std::vector<SiteId>& b) {
  std::vector<SiteId> i;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(i));
  return !i.empty();
}

}  // namespace

AuditReport commuting_projector_audit(ModelId m, const Lattice& lat) {
  AuditReport r;
  r.name = "commuting_projector";
  auto terms = hamiltonian_terms(m, lat);
  std::vector<std::vector<SiteId>> sup;
  for (auto& t : terms) {
    sup.push_back(t.word.support());
    r.expect(equal_including_phase(t.word, t.word.inverse()), t.name() + " hermitian");
    r.expect(equal_including_phase(t.word * t.word, CliffordWord()), t.name() + " involutive");
  }
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j) {
      if (!overlap(sup[i], sup[j])) continue;
      auto& a = terms[i].word;
      auto& b = terms[j].word;
      r.expect(equal_including_phase(a * b, b * a), terms[i].name() + " commutes with " + terms[j].name());
    }
  return r;
}

AuditReport symmetry_invariance_audit(ModelId m, const Lattice& lat) {
  AuditReport r;
  r.name = "symmetry_invariance";
  for (auto s : lat.qubits())
    for (auto l : {X, Y, Z}) {
      auto q = PhasedPauli::single(s, l);
      r.expect(beta(beta(q)) == q, "beta o beta = id on " + q.str());
    }
  for (auto& t : hamiltonian_terms(m, lat)) {
    auto b = beta(t.word);
    if (m == ModelId::set_toric_code && t.kind == TermKind::Q) {
      auto a = term(m, TermKind::A, t.site, lat);
      r.expect(equal_including_phase(b, a * t.word), "beta(" + t.name() + ") = A_v Q_v");
      r.expect(equal_including_phase(a * t.word, t.word * a), "A_v commutes with " + t.name());
    } else {
      r.expect(equal_including_phase(b, t.word), "beta(" + t.name() + ") invariant");
    }
  }
  return r;
}

AuditReport entangler_audit(ModelId m, const Lattice& lat, int margin) {
  AuditReport r;
  r.name = "entangler";
  if (m == ModelId::levin_gu) {
    auto c = levin_gu_entangler(lat);
    auto inv = c.inverse();
    for (auto v : lat.vertices()) {
      if (lat.boundary_distance(v) < margin || !term_fits(m, TermKind::B_lg, v, lat)) continue;
      auto img = conjugate(inv, px(v));
      OpImage want;
      want.dense = true;
      want.op = materialize(term(m, TermKind::B_lg, v, lat));
      r.expect(same_image(img, want), "alpha^-1(X) = B_v at " + v.str());
      for (auto l : {X, Z}) {
        auto q = PhasedPauli::single(v, l);
        auto a = conjugate(c, q).to_dense();
        auto g = materialize(symmetry_unitary(a.support), a.support);
        auto lhs = conj_dense(g, a);
        auto rhs = conjugate(c, beta(q)).to_dense(a.support);
        r.expect(max_deviation(lhs, rhs) <= kDenseTol, "alpha commutes with beta on " + q.str());
      }
    }
  } else if (m == ModelId::set_toric_code) {
    auto c = set_entangler(lat);
    auto check = [&](const PhasedPauli& q, const CliffordWord& want, const std::string& what) {
      OpImage w;
      w.dense = true;
      w.op = materialize(want);
      r.expect(same_image(conjugate(c, q), w), what);
    };
    for (auto v : lat.vertices()) {
      if (lat.boundary_distance(v) < margin || !term_fits(m, TermKind::Q, v, lat)) continue;
      auto a = term(m, TermKind::A, v, lat);
      check(std::get<PhasedPauli>(a.factors().front()), a, "alpha(A_v) = A_v at " + v.str());
      check(px(v), term(m, TermKind::Q, v, lat), "alpha(tau^x) = Q_v at " + v.str());
    }
    for (auto f : lat.faces()) {
      if (lat.boundary_distance(f) < margin || !term_fits(m, TermKind::B_tilde, f, lat)) continue;
      auto b = term(m, TermKind::B, f, lat);
      check(std::get<PhasedPauli>(b.factors().front()), term(m, TermKind::B_tilde, f, lat),
            "alpha(B_f) = B~_f at " + f.str());
    }
  }
  return r;
}

CliffordWord restricted_symmetry_on_term(const Term& t, const std::set<SiteId>& region) {
  return beta_restricted(region, t.word);
}

CliffordWord btilde_correction(SiteId f, const std::set<SiteId>& region) {
  PhasedPauli p;
  auto es = sq::face_edges(f);
  for (auto v : sq::face_vertices(f)) {
    if (!region.count(v)) continue;
    for (auto e : es) {
      auto [d0, d1] = sq::endpoints(e);
      if (v != d0 && v != d1) continue;
      p = p * px(e).with_phase(sq::g_sign(e, v) > 0 ? 2 : 6);
    }
  }
  return CliffordWord(p);
}

}  // namespace qd
