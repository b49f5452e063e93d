#include "qd/skeletal.hpp"

#include <algorithm>
#include <sstream>

namespace qd {

namespace {

const DualPath kTriangularRay = DualPath::line({0.5, 0.75}, {0.5, 1.75});

int scalar_of(const PhasedPauli& p, const std::string& what) {
  if (!p.is_scalar()) throw SkeletalError("non-scalar residual in " + what + ": " + p.str());
  return p.phase();
}

PhasedPauli sym(int g, const PhasedPauli& p) { return g ? beta(p) : p; }

ConjugationProgram gamma_pow(int g, const ConjugationProgram& p) { return g ? gamma_g(p) : p; }

std::string tuple_str(std::initializer_list<std::string> xs) {
  std::string s = "(";
  bool first = true;
  for (auto& x : xs) {
    if (!first) s += ",";
    first = false;
    s += x;
  }
  return s + ")";
}

struct Tally {
  Check c;
  size_t shown = 0;
  Tally(std::string name, std::string ref) {
    c.name = std::move(name);
    c.ref = std::move(ref);
  }
  void add(bool ok, const std::string& tuple) {
    ++c.instances;
    if (ok) return;
    c.status = "fail";
    if (shown++ < 4) c.detail += (c.detail.empty() ? "violated at " : " ") + tuple;
  }
  Check done() {
    if (c.status.empty()) c.status = "pass";
    if (c.status == "pass") c.detail = std::to_string(c.instances) + " instances";
    return c;
  }
};

bool eq8(int a, int b) { return mod8(a) == mod8(b); }

}  // namespace

int SectorCatalog::index(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw SkeletalError("unknown label '" + label + "'");
  return int(it - labels.begin());
}

SectorCatalog sector_catalog(ModelId m, int depth) {
  SectorCatalog c;
  c.model = m;
  switch (m) {
    case ModelId::levin_gu:
    case ModelId::trivial_paramagnet: {
      Lattice lat(LatticeKind::triangular, Topology::make_window(-6, -6, 13, 13));
      c.ball = match_ball(lat, {0, 0}, 4);
      c.labels = {"1", "g"};
      c.grade = {0, 1};
      c.programs.push_back(ConjugationProgram::identity());
      if (m == ModelId::levin_gu) {
        c.programs.push_back(levin_gu_defect_program(kTriangularRay, depth));
      } else {
        Ray r = Ray::from_path(kTriangularRay);
        c.programs.push_back(
            ConjugationProgram::symmetry([r](SiteId v) { return r.right_of_line(site_point(v)); }, "g"));
      }
      return c;
    }
    case ModelId::set_toric_code: {
      Lattice lat(LatticeKind::square_ve, Topology::make_window(-6, -6, 13, 13));
      c.ball = match_ball(lat, {0, 0}, 4);
      SetGeometry g;
      g.depth = depth;
      c.geometry = g;
      c.labels = kSetLabels;
      for (auto& l : c.labels) {
        c.grade.push_back(is_sigma_label(l) ? 1 : 0);
        c.programs.push_back(set_sector_program(l, g));
      }
      return c;
    }
    case ModelId::toric_code_ancilla: break;
  }
  throw SkeletalError("no sector catalog for " + model_name(m));
}

std::vector<std::vector<int>> fusion_table(const SectorCatalog& cat) {
  size_t n = cat.size();
  std::vector<std::vector<int>> fus(n, std::vector<int>(n, -1));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto comp = compose(cat.programs[i], cat.programs[j]);
      std::vector<int> hits;
      for (size_t c = 0; c < n; ++c) {
        if (cat.grade[c] != (cat.grade[i] ^ cat.grade[j])) continue;
        if (inner_witness(cat.programs[c], comp, cat.ball)) hits.push_back(int(c));
      }
      if (hits.size() != 1)
        throw SkeletalError("composite " + cat.labels[i] + "*" + cat.labels[j] + " matched " +
                            std::to_string(hits.size()) + " catalog sectors");
      fus[i][j] = hits[0];
    }
  return fus;
}

std::vector<std::vector<PhasedPauli>> tensorators(const SectorCatalog& cat, const std::vector<std::vector<int>>& fus) {
  size_t n = cat.size();
  std::vector<std::vector<PhasedPauli>> om(n, std::vector<PhasedPauli>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      auto w = inner_witness(cat.programs[size_t(fus[i][j])], compose(cat.programs[i], cat.programs[j]), cat.ball);
      if (!w) throw SkeletalError("no tensorator for " + cat.labels[i] + "," + cat.labels[j]);
      om[i][j] = *w;
    }
  return om;
}

std::vector<int> f_symbols(const SectorCatalog& cat, const std::vector<std::vector<int>>& fus,
                           const std::vector<std::vector<PhasedPauli>>& om) {
  size_t n = cat.size();
  std::vector<int> F(n * n * n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) {
        size_t ij = size_t(fus[i][j]), jk = size_t(fus[j][k]);
        auto lhs = om[ij][k] * om[i][j];
        auto rhs = om[i][jk] * cat.programs[i].apply(om[j][k]);
        F[(i * n + j) * n + k] =
            scalar_of(lhs * rhs.inverse(), "F" + tuple_str({cat.labels[i], cat.labels[j], cat.labels[k]}));
      }
  return F;
}

Fractionalization fractionalization(const SectorCatalog& cat, const std::vector<std::vector<int>>& fus,
                                    const std::vector<std::vector<PhasedPauli>>& om) {
  size_t n = cat.size();
  Fractionalization fr;
  fr.action.assign(2, std::vector<int>(n));
  fr.V.assign(2, std::vector<PhasedPauli>(n));
  std::vector<ConjugationProgram> gp;
  for (size_t i = 0; i < n; ++i) {
    fr.action[0][i] = int(i);
    gp.push_back(gamma_g(cat.programs[i]));
    bool found = false;
    for (size_t c = 0; c < n && !found; ++c) {
      if (cat.grade[c] != cat.grade[i]) continue;
      if (auto w = inner_witness(cat.programs[c], gp[i], cat.ball)) {
        fr.action[1][i] = int(c);
        fr.V[1][i] = *w;
        found = true;
      }
    }
    if (!found) throw SkeletalError("gamma_g(" + cat.labels[i] + ") matches no catalog sector");
  }
  fr.eta.assign(4 * n, 0);
  for (int g : {0, 1})
    for (int h : {0, 1})
      for (size_t i = 0; i < n; ++i) {
        auto hi = size_t(fr.action[size_t(h)][i]);
        auto p = fr.V[size_t(g)][hi] * sym(g, fr.V[size_t(h)][i]) * fr.V[size_t(g ^ h)][i].inverse();
        fr.eta[size_t(g * 2 + h) * n + i] =
            scalar_of(p, "eta" + tuple_str({std::to_string(g), std::to_string(h), cat.labels[i]}));
      }
  fr.mu.assign(2 * n * n, 0);
  for (int g : {0, 1})
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        auto& act = fr.action[size_t(g)];
        auto& V = fr.V[size_t(g)];
        size_t ij = size_t(fus[i][j]);
        auto lhs = V[ij] * sym(g, om[i][j]);
        auto rhs = om[size_t(act[i])][size_t(act[j])] * V[i] * (g ? gp[i] : cat.programs[i]).apply(V[j]);
        fr.mu[(size_t(g) * n + i) * n + j] =
            scalar_of(lhs * rhs.inverse(), "mu" + tuple_str({std::to_string(g), cat.labels[i], cat.labels[j]}));
      }
  return fr;
}

namespace {

CliffordWord braid_word(const ConjugationProgram& twisted_b, const CliffordWord& u) {
  return twisted_b.apply(u.inverse()) * u;
}

}  // namespace

std::vector<std::vector<BraidEntry>> braiding_table(const SectorCatalog& cat, const std::vector<int>& Ns) {
  if (!cat.geometry) throw SkeletalError("no transport geometry for " + model_name(cat.model));
  if (Ns.empty()) throw SkeletalError("empty N list");
  size_t n = cat.size();
  std::vector<ConjugationProgram> gp;
  for (auto& p : cat.programs) gp.push_back(gamma_g(p));
  std::vector<std::vector<BraidEntry>> tab(n, std::vector<BraidEntry>(n));
  for (int N : Ns) {
    std::vector<CliffordWord> U;
    for (auto& l : cat.labels) U.push_back(sector_transport(l, N, *cat.geometry));
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b) {
        auto w = braid_word(cat.grade[a] ? gp[b] : cat.programs[b], U[a]);
        auto sp = scalar_pauli_decompose(w);
        if (!sp) throw SkeletalError("braiding " + cat.labels[a] + "," + cat.labels[b] + " is not a phased Pauli");
        auto v = sp->pauli.with_phase(sp->phase);
        auto& e = tab[a][b];
        if (e.computed && e.value != v)
          throw SkeletalError("braiding " + cat.labels[a] + "," + cat.labels[b] + " depends on N: " + e.value.str() +
                              " vs " + v.str() + " at N=" + std::to_string(N));
        e.computed = true;
        e.value = v;
      }
  }
  return tab;
}

SkeletalReport extract_skeletal(ModelId m, const std::vector<int>& Ns, int depth) {
  auto cat = sector_catalog(m, depth);
  SkeletalReport r;
  r.model = m;
  r.labels = cat.labels;
  r.grade = cat.grade;
  r.fusion = fusion_table(cat);
  r.omega = tensorators(cat, r.fusion);
  r.F = f_symbols(cat, r.fusion, r.omega);
  r.frac = fractionalization(cat, r.fusion, r.omega);
  size_t n = cat.size();

  Tally act("label-action", "symmetry does not permute sector labels");
  for (int g : {0, 1})
    for (size_t i = 0; i < n; ++i) act.add(r.frac.action[size_t(g)][i] == int(i), cat.labels[i]);
  r.extraction.push_back(act.done());

  if (m == ModelId::levin_gu) {
    Tally sq("omega-defect-square", "collapsed square of the defect is the endpoint ZZ");
    auto s = levin_gu_defect_square(kTriangularRay, depth);
    // The overall sign comes from the truncation end and repeats with the colouring period.
    std::vector<SiteId> keep;
    for (auto site : cat.ball.sites) keep.push_back(site);
    auto [in, out] = levin_gu_defect_end(kTriangularRay);
    auto want = PhasedPauli::single(in, Z) * PhasedPauli::single(out, Z);
    sq.add(levin_gu_defect_square(kTriangularRay, depth + 3).phase == s.phase, "far-end sign");
    sq.add(s.pauli.restricted(keep) == want, "restricted square");
    sq.add(r.omega[1][1] == want, "tensorator");
    r.extraction.push_back(sq.done());
  }

  if (!cat.geometry) return r;
  r.Ns = Ns;
  r.braid = braiding_table(cat, Ns);
  r.extraction.push_back(Check{"braiding-N-independence", "transport limit", "pass",
                               "identical at N in {" + [&] {
                                 std::string s;
                                 for (size_t k = 0; k < Ns.size(); ++k) s += (k ? "," : "") + std::to_string(Ns[k]);
                                 return s;
                               }() + "}",
                               n * n * Ns.size()});
  r.R.assign(n, std::vector<std::optional<int>>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int g = r.grade[i];
      size_t gj = size_t(r.frac.action[size_t(g)][j]);
      if (r.fusion[gj][i] != r.fusion[i][j]) throw SkeletalError("braiding changes the fusion outcome");
      auto p = r.omega[gj][i] * r.frac.V[size_t(g)][j] * r.braid[i][j].value * r.omega[i][j].inverse();
      r.R[i][j] = scalar_of(p, "R" + tuple_str({cat.labels[i], cat.labels[j]}));
    }

  // c_{i(x)j,k} = c_{i,gamma_h(k)} i(c_{j,k}) with composite transport U^i i(U^j).
  Tally mono("braiding-monoidality", "braiding of a composite");
  int N = Ns.front();
  std::vector<CliffordWord> U;
  for (auto& l : cat.labels) U.push_back(sector_transport(l, N, *cat.geometry));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int g = r.grade[i], h = r.grade[j];
      auto uij = U[i] * cat.programs[i].apply(U[j]);
      for (size_t k = 0; k < n; ++k) {
        auto lhs = braid_word(gamma_pow(g ^ h, cat.programs[k]), uij);
        auto ci = braid_word(gamma_pow(g, gamma_pow(h, cat.programs[k])), U[i]);
        auto cj = braid_word(gamma_pow(h, cat.programs[k]), U[j]);
        mono.add(equal_including_phase(lhs, ci * cat.programs[i].apply(cj)),
                 tuple_str({cat.labels[i], cat.labels[j], cat.labels[k]}));
      }
    }
  r.extraction.push_back(mono.done());
  return r;
}

std::vector<Check> consistency_check(const SkeletalReport& r) {
  int n = int(r.n());
  auto& fus = r.fusion;
  auto L = [&](int i) { return r.labels[size_t(i)]; };
  auto act = [&](int g, int i) { return r.frac.action[size_t(g)][size_t(i)]; };
  auto fu = [&](int i, int j) { return fus[size_t(i)][size_t(j)]; };
  std::vector<Check> out;

  Tally unit("unit-F", "strict unit");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      unit.add(r.f(0, i, j) == 0 && r.f(i, 0, j) == 0 && r.f(i, j, 0) == 0, tuple_str({L(i), L(j)}));
  out.push_back(unit.done());

  Tally grade("grade-additivity", "grade of a fusion product");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      grade.add(r.grade[size_t(fu(i, j))] == (r.grade[size_t(i)] ^ r.grade[size_t(j)]), tuple_str({L(i), L(j)}));
  out.push_back(grade.done());

  Tally pent("pentagon", "pentagon");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          pent.add(eq8(r.f(i, j, k) + r.f(i, fu(j, k), l) + r.f(j, k, l), r.f(fu(i, j), k, l) + r.f(i, j, fu(k, l))),
                   tuple_str({L(i), L(j), L(k), L(l)}));
  out.push_back(pent.done());

  Tally coc("eta-cocycle", "eta cocycle");
  for (int g : {0, 1})
    for (int h : {0, 1})
      for (int k : {0, 1})
        for (int i = 0; i < n; ++i)
          coc.add(eq8(r.eta(g, h, act(k, i)) + r.eta(g ^ h, k, i), r.eta(h, k, i) + r.eta(g, h ^ k, i)),
                  tuple_str({std::to_string(g), std::to_string(h), std::to_string(k), L(i)}));
  out.push_back(coc.done());

  Tally muf("mu-F", "mu versus F");
  for (int g : {0, 1})
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          muf.add(eq8(r.f(i, j, k) + r.mu(g, i, fu(j, k)) + r.mu(g, j, k),
                      r.mu(g, fu(i, j), k) + r.mu(g, i, j) + r.f(act(g, i), act(g, j), act(g, k))),
                  tuple_str({std::to_string(g), L(i), L(j), L(k)}));
  out.push_back(muf.done());

  Tally h1("heptagon-1", "heptagon"), h2("heptagon-2", "heptagon");
  bool have_r = !r.R.empty();
  if (have_r) {
    auto R = [&](int i, int j) { return *r.R[size_t(i)][size_t(j)]; };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          int g = r.grade[size_t(i)], h = r.grade[size_t(j)];
          auto t = tuple_str({L(i), L(j), L(k)});
          h1.add(eq8(R(i, k) - r.f(act(g, j), i, k) + R(i, j),
                     -r.f(act(g, j), act(g, k), i) - r.mu(g, j, k) + R(i, fu(j, k)) - r.f(i, j, k)),
                 t);
          int hk = act(h, k), ghk = act(g ^ h, k);
          h2.add(eq8(R(i, hk) + r.f(i, hk, j) + R(j, k),
                     r.f(ghk, i, j) + r.eta(g, h, k) + R(fu(i, j), k) + r.f(i, j, k)),
                 t);
        }
  }
  for (auto* t : {&h1, &h2}) {
    auto c = t->done();
    if (!have_r) {
      c.status = "skipped";
      c.detail = "no braiding data";
    }
    out.push_back(c);
  }
  return out;
}

namespace {

std::string entry_text(const PhasedPauli& p) {
  static const char* sc[] = {"1", "w", "i", "iw", "-1", "-w", "-i", "-iw"};
  static const char* pre[] = {"", "w", "i", "iw", "-", "-w", "-i", "-iw"};
  if (p.is_scalar()) return sc[p.phase()];
  std::string s = pre[p.phase()];
  bool first = true;
  for (auto& [c, l] : p.ops()) {
    if (!first) s += "*";
    first = false;
    s += std::string(1, "IXZY"[l]) + SiteId::from_code(c).str();
  }
  return s;
}

}  // namespace

std::string braiding_text(const SkeletalReport& r) {
  std::ostringstream os;
  if (!r.has_braiding()) return "no braiding data for " + model_name(r.model) + "\n";
  size_t w = 10;
  for (size_t i = 0; i < r.n(); ++i)
    for (size_t j = 0; j < r.n(); ++j) w = std::max(w, entry_text(r.braid[i][j].value).size() + 2);
  auto cell = [&](const std::string& s) {
    os << s << std::string(w > s.size() ? w - s.size() : 1, ' ');
  };
  cell("c(a,b)");
  for (auto& l : r.labels) cell(l);
  os << "\n";
  for (size_t i = 0; i < r.n(); ++i) {
    cell(r.labels[i]);
    for (size_t j = 0; j < r.n(); ++j) cell(entry_text(r.braid[i][j].value));
    os << "\n";
  }
  return os.str();
}

}  // namespace qd
