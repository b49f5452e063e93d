#include "qd/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "qd/defects.hpp"
#include "qd/exactdiag.hpp"

namespace qd {

namespace {

using ojson = nlohmann::ordered_json;
using Task = std::function<Check()>;

Check from_audit(const AuditReport& a, std::string name, std::string ref) {
  Check c{std::move(name), std::move(ref), a.ok() ? "pass" : "fail", "", a.checks};
  if (a.checks == 0) {
    c.status = "fail";
    c.detail = "no instances in range";
  } else if (a.ok()) {
    c.detail = std::to_string(a.checks) + " instances";
  } else {
    c.detail = std::to_string(a.failures.size()) + " of " + std::to_string(a.checks) + " failed; first: " +
               a.failures.front();
  }
  return c;
}

Check skipped(std::string name, std::string ref, std::string why) {
  return Check{std::move(name), std::move(ref), "skipped", std::move(why), 0};
}

std::vector<Check> run_tasks(const std::vector<std::pair<std::string, Task>>& tasks, int jobs) {
  std::vector<Check> out(tasks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < tasks.size();) {
      try {
        out[i] = tasks[i].second();
      } catch (const std::exception& e) {
        out[i] = Check{tasks[i].first, "", "fail", std::string("error: ") + e.what(), 0};
      }
    }
  };
  size_t n = size_t(std::clamp(jobs, 1, 64));
  std::vector<std::thread> pool;
  for (size_t t = 1; t < std::min(n, tasks.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

void sort_checks(std::vector<Check>& cs) {
  std::stable_sort(cs.begin(), cs.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
}

ojson check_json(const Check& c) {
  return ojson{{"name", c.name}, {"ref", c.ref}, {"status", c.status}, {"detail", c.detail}, {"instances", c.instances}};
}

ojson checks_json(std::vector<Check> cs) {
  sort_checks(cs);
  ojson arr = ojson::array();
  for (auto& c : cs) arr.push_back(check_json(c));
  return arr;
}

ojson summary_json(const std::vector<Check>& cs) {
  size_t p = 0, f = 0, s = 0;
  for (auto& c : cs) (c.status == "pass" ? p : c.status == "fail" ? f : s)++;
  return ojson{{"pass", p}, {"fail", f}, {"skipped", s}};
}

PhasedPauli as_pauli(const CliffordWord& w) {
  auto sp = scalar_pauli_decompose(w);
  if (!sp) throw std::logic_error("word is not a Pauli");
  return sp->pauli.with_phase(sp->phase);
}

std::vector<SiteId> random_walk(std::mt19937_64& rng, const Lattice& lat, SiteId start, int steps, int margin) {
  std::vector<SiteId> vs{start};
  std::set<SiteId> seen{start};
  const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
  while (int(vs.size()) <= steps) {
    bool moved = false;
    for (int tries = 0; tries < 16 && !moved; ++tries) {
      int d = int(rng() % 4);
      auto n = SiteId::vertex(vs.back().x() + dx[d], vs.back().y() + dy[d]);
      if (seen.count(n) || !lat.contains(n) || lat.boundary_distance(n) < margin) continue;
      vs.push_back(n);
      seen.insert(n);
      moved = true;
    }
    if (!moved) break;
  }
  return vs;
}

std::vector<PhasedPauli> generators_away(const Lattice& lat, int margin) {
  std::vector<PhasedPauli> out;
  for (auto s : lat.qubits())
    if (lat.boundary_distance(s) >= margin)
      for (auto l : {X, Z}) out.push_back(PhasedPauli::single(s, l));
  return out;
}

// Ground-space checks on a torus small enough for dense arithmetic.
void torus_tasks(std::vector<std::pair<std::string, Task>>& t, ModelId m, const Lattice& lat, uint64_t seed) {
  if (lat.qubits().size() > kDenseQubitCap) {
    t.emplace_back("ground-space", [=] {
      return skipped("ground-space", "frustration-free ground space", "torus exceeds the dense qubit cap");
    });
    return;
  }
  t.emplace_back("ground-space", [m, lat, seed] {
    auto gs = ground_space(m, lat, seed);
    Check c{"ground-space", "frustration-free ground space", "pass", "", 1};
    std::ostringstream os;
    os << "dimension " << gs.dimension << ", residual " << gs.residual;
    c.detail = os.str();
    if (gs.dimension == 0 || gs.residual > kDenseTol) c.status = "fail";
    return c;
  });
  if (m == ModelId::levin_gu || m == ModelId::set_toric_code) {
    auto& tp = lat.topology();
    if (m == ModelId::levin_gu && (tp.w % 3 || tp.h % 3)) {
      t.emplace_back("ground-space-entangler", [] {
        return skipped("ground-space-entangler", "", "the entangler needs torus dimensions divisible by 3");
      });
    } else {
      t.emplace_back("ground-space-entangler", [m, lat, seed] {
        auto gs = ground_space(m, lat, seed);
        auto partner = m == ModelId::levin_gu ? ModelId::trivial_paramagnet : ModelId::toric_code_ancilla;
        auto c = m == ModelId::levin_gu ? levin_gu_entangler(lat) : set_entangler(lat);
        auto conj = conjugated_ground_space(partner, lat, c, seed);
        Check out{"ground-space-entangler", "the entangler maps ground space to ground space", "pass", "", 1};
        out.detail = "dimension " + std::to_string(gs.dimension) + " vs conjugated " + model_name(partner) + " " +
                     std::to_string(conj.dimension);
        if (gs.dimension != conj.dimension || conj.residual > kDenseTol) out.status = "fail";
        return out;
      });
    }
  }
  if (m == ModelId::set_toric_code) {
    t.emplace_back("pizza-expectation", [lat, seed] {
      auto gs = ground_space(ModelId::set_toric_code, lat, seed);
      auto S = std::vector<SiteId>{SiteId::vertex(0, 0)};
      DualPath xi1{{{-0.5, -0.5}, {-0.5, 0.5}, {0.5, 0.5}}, false};
      DualPath xi2{{{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}}, false};
      double dev = 0;
      for (auto [a, b] : {std::pair{xi1, xi2}, std::pair{xi2, xi1}})
        dev = std::max(dev, std::abs(expectation(gs, wrap(pizza_operator(a, b, S), lat)) - 1.0));
      Check c{"pizza-expectation", "pizza operator has ground-state expectation 1", dev <= kDenseTol ? "pass" : "fail",
              "", 2};
      std::ostringstream os;
      os << "max deviation " << dev;
      c.detail = os.str();
      return c;
    });
  }
}

void levin_gu_window_tasks(std::vector<std::pair<std::string, Task>>& t, const Lattice& lat, int margin) {
  auto& tp = lat.topology();
  double cx = tp.x0 + tp.w / 2 - 1, cy = tp.y0 + tp.h / 2 - 1;
  DualPath ray = DualPath::line({cx + 0.5, cy + 0.75}, {cx + 0.5, cy + 1.75});
  int depth = 2 * (tp.w + tp.h);
  t.emplace_back("decoration-closed-form", [=] {
    Ray r = Ray::from_path(ray);
    auto brute = levin_gu_line_product(r, lat);
    auto prog = levin_gu_line_program(r, depth);
    AuditReport a;
    for (auto& q : generators_away(lat, std::max(margin, 3)))
      a.expect(ad(brute, q) == prog.apply(q), "closed form on " + q.str());
    return from_audit(a, "decoration-closed-form", "half-plane product of plaquette terms");
  });
  t.emplace_back("defect-hamiltonian", [=] {
    return from_audit(defect_hamiltonian_audit(levin_gu_defect_program(ray, depth), ModelId::levin_gu, lat, ray,
                                               margin, 2.0),
                      "defect-hamiltonian", "twisted terms commute and agree away from the defect");
  });
  t.emplace_back("defect-square", [=] {
    auto sq = levin_gu_defect_square(ray, depth);
    auto [in, out] = levin_gu_defect_end(ray);
    Ray r = Ray::from_path(ray);
    std::vector<SiteId> near;
    for (auto s : sq.pauli.support())
      if (r.along(site_point(s)) > -depth / 2.0) near.push_back(s);
    auto want = PhasedPauli::single(in, Z) * PhasedPauli::single(out, Z);
    bool ok = sq.pauli.restricted(near) == want;
    return Check{"defect-square", "square of the defect is the endpoint ZZ", ok ? "pass" : "fail",
                 "near end " + sq.pauli.restricted(near).str(), 1};
  });
  t.emplace_back("defect-localization", [=] {
    // Needs room around the apex whatever the audit window is.
    Ray r = Ray::from_path(ray);
    int half = std::max(8, std::max(tp.w, tp.h) / 2);
    int ax = int(std::floor(r.base.x)), ay = int(std::floor(r.base.y));
    Lattice room(LatticeKind::triangular, Topology::make_window(ax - half, ay - half, 2 * half + 1, 2 * half + 1));
    Cone cone{r.base, -std::numbers::pi / 2, std::numbers::pi / 2};
    auto rep = localization_audit(levin_gu_defect_program(ray, depth + 2 * half), cone, r.base, 1, room, 2);
    Check c{"defect-localization", "defect acts as the symmetry outside a cone", rep.ok() ? "pass" : "fail", "",
            rep.checks};
    c.detail = std::to_string(rep.checks) + " generators, " + std::to_string(rep.discrepancies.size()) +
               " discrepancies at the apex";
    if (rep.checks == 0) c.status = "fail";
    return c;
  });
}

void set_window_tasks(std::vector<std::pair<std::string, Task>>& t, const Lattice& lat, int margin, uint64_t seed) {
  auto& tp = lat.topology();
  double cx = tp.x0 + tp.w / 2 - 1, cy = tp.y0 + tp.h / 2 - 1;
  DualPath ray = DualPath::line({cx + 0.5, cy + 0.5}, {cx + 0.5, cy + 1.5});
  int depth = 2 * (tp.w + tp.h);
  t.emplace_back("erasure", [=] {
    return from_audit(erasure_audit(set_defect_program(ray, depth), lat, ray, margin, 1.5), "erasure",
                      "erasure string restores every term away from the defect");
  });
  t.emplace_back("defect-hamiltonian", [=] {
    return from_audit(
        defect_hamiltonian_audit(set_defect_program(ray, depth), ModelId::set_toric_code, lat, ray, margin, 1.5),
        "defect-hamiltonian", "twisted terms commute and agree away from the defect");
  });
  t.emplace_back("boundary-string", [] {
    double dev = 0;
    std::vector<std::vector<SiteId>> sets{{SiteId::vertex(0, 0)}, {SiteId::vertex(0, 0), SiteId::vertex(1, 0)}};
    for (auto& S : sets)
      for (bool cw : {true, false}) dev = std::max(dev, boundary_string_deviation(S, cw));
    std::ostringstream os;
    os << "|S| = 1, 2 in both orientations, max deviation " << dev;
    return Check{"boundary-string", "projected vertex terms equal the boundary erasure string",
                 dev <= kDenseTol ? "pass" : "fail", os.str(), 4};
  });
  t.emplace_back("string-symmetry", [=] {
    std::mt19937_64 rng(seed);
    auto c = set_entangler(lat);
    AuditReport a;
    std::vector<SiteId> inner;
    for (auto v : lat.vertices())
      if (lat.boundary_distance(v) >= margin + 2) inner.push_back(v);
    if (inner.empty()) return from_audit(a, "string-symmetry", "dressed electric strings");
    for (int trial = 0; trial < 8; ++trial) {
      auto path = random_walk(rng, lat, inner[rng() % inner.size()], 1 + trial % 4, margin + 2);
      auto ft = eps_tilde_string(path);
      auto want = CliffordWord(PhasedPauli::single(path.back(), Z) * PhasedPauli::single(path.front(), Z)) * ft;
      a.expect(equal_including_phase(beta(ft), want), "symmetry on dressed string " + std::to_string(trial));
      auto img = conjugate(c, as_pauli(eps_string(path))).to_dense();
      a.expect(max_deviation(img, materialize(ft, img.support)) <= kDenseTol,
               "entangler image of string " + std::to_string(trial));
    }
    return from_audit(a, "string-symmetry", "dressed electric strings");
  });
}

void ancilla_window_tasks(std::vector<std::pair<std::string, Task>>& t, const Lattice& lat, int margin) {
  t.emplace_back("contractible-loop", [=] {
    AuditReport a;
    for (auto f : lat.faces()) {
      if (lat.boundary_distance(f) < margin + 1) continue;
      int x = f.x(), y = f.y();
      auto f2 = SiteId::face(x + 1, y), f3 = SiteId::face(x, y + 1), f4 = SiteId::face(x + 1, y + 1);
      if (!lat.contains(f4) || lat.boundary_distance(f4) < margin + 1) continue;
      std::vector<SiteId> loop{SiteId::vertex(x, y),         SiteId::vertex(x + 1, y),     SiteId::vertex(x + 2, y),
                               SiteId::vertex(x + 2, y + 1), SiteId::vertex(x + 2, y + 2), SiteId::vertex(x + 1, y + 2),
                               SiteId::vertex(x, y + 2),     SiteId::vertex(x, y + 1),     SiteId::vertex(x, y)};
      CliffordWord prod;
      for (auto g : {f, f2, f3, f4}) prod = prod * term(ModelId::toric_code_ancilla, TermKind::B, g, lat);
      a.expect(equal_including_phase(eps_string(loop), prod), "loop around " + f.str());
    }
    return from_audit(a, "contractible-loop", "closed electric string is a plaquette product");
  });
}

std::string extent_str(int w, int h) { return std::to_string(w) + "x" + std::to_string(h); }

}  // namespace

bool CheckReport::ok() const {
  return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.status == "fail"; });
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  return ojson{{"schema_version", kSchemaVersion},
               {"kind", "check-report"},
               {"suite", r.suite},
               {"model", r.model},
               {"status", r.ok() ? "pass" : "fail"},
               {"environment", r.environment},
               {"summary", summary_json(r.checks)},
               {"results", r.results},
               {"checks", checks_json(r.checks)}};
}

std::string render_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string render_markdown(const nlohmann::ordered_json& j) {
  std::ostringstream os;
  os << "# " << j.value("suite", std::string("skeletal")) << ": " << j.value("model", std::string()) << "\n\n";
  os << "Status: **" << j.value("status", std::string()) << "**\n\n";
  if (j.contains("environment")) {
    for (auto& [k, v] : j["environment"].items()) os << "- " << k << ": " << v.dump() << "\n";
    os << "\n";
  }
  if (j.contains("fusion")) {
    auto& labels = j["labels"];
    auto table = [&](const std::string& title, const ojson& rows) {
      os << "## " << title << "\n\n|   |";
      for (auto& l : labels) os << " " << l.get<std::string>() << " |";
      os << "\n|---|";
      for (size_t k = 0; k < labels.size(); ++k) os << "---|";
      os << "\n";
      for (size_t i = 0; i < labels.size(); ++i) {
        os << "| " << labels[i].get<std::string>() << " |";
        for (auto& v : rows[i]) os << " " << (v.is_string() ? v.get<std::string>() : v.dump()) << " |";
        os << "\n";
      }
      os << "\n";
    };
    table("Fusion", j["fusion"]);
    table("Tensorators", j["tensorators"]);
    if (!j["braiding"].is_null()) {
      table("Braiding", j["braiding"]);
      table("R (powers of e^{i pi/4})", j["R"]);
    }
  }
  os << "## Checks\n\n| check | status | instances | detail |\n|---|---|---|---|\n";
  for (auto& c : j["checks"])
    os << "| " << c["name"].get<std::string>() << " | " << c["status"].get<std::string>() << " | "
       << c["instances"].get<size_t>() << " | " << c["detail"].get<std::string>() << " |\n";
  return os.str();
}

std::pair<int, int> parse_extent(const std::string& s) {
  auto bad = [&] { return std::invalid_argument("bad extent '" + s + "' (want N or WxH)"); };
  size_t pos = 0;
  int w = 0, h = 0;
  try {
    w = std::stoi(s, &pos);
    if (pos == s.size()) {
      h = w;
    } else {
      if (s[pos] != 'x' && s[pos] != 'X') throw bad();
      size_t p2 = 0;
      h = std::stoi(s.substr(pos + 1), &p2);
      if (pos + 1 + p2 != s.size()) throw bad();
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (w <= 0 || h <= 0) throw bad();
  return {w, h};
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::logic_error&) {
      pos = 0;
    }
    if (tok.empty() || pos != tok.size()) throw std::invalid_argument("bad integer list '" + s + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

CheckReport run_verify(const VerifyConfig& cfg) {
  Lattice lat(model_lattice(cfg.model), cfg.topology);
  CheckReport r;
  r.model = model_name(cfg.model);
  r.suite = "verify";
  bool torus = lat.is_torus();
  auto& tp = cfg.topology;
  r.environment = ojson{{torus ? "torus" : "window", extent_str(tp.w, tp.h)},
                        {"margin", cfg.margin},
                        {"N_list", ojson::array()},
                        {"seed", cfg.seed}};

  std::vector<std::pair<std::string, Task>> t;
  ModelId m = cfg.model;
  t.emplace_back("commuting-projector", [m, lat] {
    return from_audit(commuting_projector_audit(m, lat), "commuting-projector",
                      "terms are commuting Hermitian involutions");
  });
  t.emplace_back("symmetry-invariance", [m, lat] {
    return from_audit(symmetry_invariance_audit(m, lat), "symmetry-invariance", "terms are symmetric");
  });
  if (torus) {
    torus_tasks(t, m, lat, cfg.seed);
  } else {
    if (m == ModelId::levin_gu || m == ModelId::set_toric_code) {
      int margin = cfg.margin;
      t.emplace_back("entangler", [m, lat, margin] {
        return from_audit(entangler_audit(m, lat, margin), "entangler", "entangler maps the product model to the model");
      });
    } else {
      t.emplace_back("entangler", [] { return skipped("entangler", "", "model has no entangler"); });
    }
    if (m == ModelId::levin_gu) levin_gu_window_tasks(t, lat, cfg.margin);
    if (m == ModelId::set_toric_code) set_window_tasks(t, lat, cfg.margin, cfg.seed);
    if (m == ModelId::toric_code_ancilla) ancilla_window_tasks(t, lat, cfg.margin);
  }
  r.checks = run_tasks(t, cfg.jobs);
  sort_checks(r.checks);
  return r;
}

nlohmann::ordered_json skeletal_json(const SkeletalReport& r) {
  size_t n = r.n();
  auto cons = consistency_check(r);
  std::vector<Check> all = r.extraction;
  all.insert(all.end(), cons.begin(), cons.end());
  bool ok = std::none_of(all.begin(), all.end(), [](const Check& c) { return c.status == "fail"; });

  ojson fusion = ojson::array(), omega = ojson::array(), F = ojson::array();
  for (size_t i = 0; i < n; ++i) {
    ojson fr = ojson::array(), orow = ojson::array(), Fi = ojson::array();
    for (size_t j = 0; j < n; ++j) {
      fr.push_back(r.labels[size_t(r.fusion[i][j])]);
      orow.push_back(r.omega[i][j].str());
      ojson Fij = ojson::array();
      for (size_t k = 0; k < n; ++k) Fij.push_back(r.f(int(i), int(j), int(k)));
      Fi.push_back(Fij);
    }
    fusion.push_back(fr);
    omega.push_back(orow);
    F.push_back(Fi);
  }
  ojson action = ojson::array(), V = ojson::array(), eta = ojson::array(), mu = ojson::array();
  for (int g : {0, 1}) {
    ojson a = ojson::array(), v = ojson::array(), e = ojson::array(), m = ojson::array();
    for (size_t i = 0; i < n; ++i) {
      a.push_back(r.labels[size_t(r.frac.action[size_t(g)][i])]);
      v.push_back(r.frac.V[size_t(g)][i].str());
      ojson mi = ojson::array();
      for (size_t j = 0; j < n; ++j) mi.push_back(r.mu(g, int(i), int(j)));
      m.push_back(mi);
    }
    for (int h : {0, 1}) {
      ojson eh = ojson::array();
      for (size_t i = 0; i < n; ++i) eh.push_back(r.eta(g, h, int(i)));
      e.push_back(eh);
    }
    action.push_back(a);
    V.push_back(v);
    eta.push_back(e);
    mu.push_back(m);
  }
  ojson braid = nullptr, R = nullptr;
  if (r.has_braiding()) {
    braid = ojson::array();
    R = ojson::array();
    for (size_t i = 0; i < n; ++i) {
      ojson b = ojson::array(), rr = ojson::array();
      for (size_t j = 0; j < n; ++j) {
        b.push_back(r.braid[i][j].value.str());
        rr.push_back(*r.R[i][j]);
      }
      braid.push_back(b);
      R.push_back(rr);
    }
  }
  return ojson{{"schema_version", kSchemaVersion},
               {"kind", "skeletal"},
               {"model", model_name(r.model)},
               {"status", ok ? "pass" : "fail"},
               {"environment", {{"N_list", r.Ns}}},
               {"phase_convention", "integers k in Z8 stand for e^{i pi k/4}"},
               {"labels", r.labels},
               {"grade", r.grade},
               {"fusion", fusion},
               {"tensorators", omega},
               {"F", F},
               {"action", action},
               {"V", V},
               {"eta", eta},
               {"mu", mu},
               {"braiding", braid},
               {"R", R},
               {"summary", summary_json(all)},
               {"checks", checks_json(all)}};
}

bool skeletal_ok(const SkeletalReport& r) {
  auto all = consistency_check(r);
  all.insert(all.end(), r.extraction.begin(), r.extraction.end());
  return std::none_of(all.begin(), all.end(), [](const Check& c) { return c.status == "fail"; });
}

std::string skeletal_text(const SkeletalReport& r) {
  static const char* ph[] = {"1", "w", "i", "iw", "-1", "-w", "-i", "-iw"};
  std::ostringstream os;
  int n = int(r.n());
  auto L = [&](int i) { return r.labels[size_t(i)]; };
  size_t nontrivial = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (int f = r.f(i, j, k); f && ++nontrivial <= 16)
          os << "F(" << L(i) << "," << L(j) << "," << L(k) << ") = " << ph[f] << "\n";
  if (nontrivial > 16) os << "... " << nontrivial << " nontrivial F entries\n";
  if (!nontrivial) os << "F trivial\n";
  bool eta_trivial = true;
  for (int i = 0; i < n; ++i)
    if (int e = r.eta(1, 1, i)) {
      os << "eta(g,g)_" << L(i) << " = " << ph[e] << "\n";
      eta_trivial = false;
    }
  if (eta_trivial) os << "eta trivial\n";
  return os.str() + braiding_text(r);
}

LatticeKind qca_lattice(const QcaConfig& cfg) {
  if (cfg.circuit == "builtin:levin-gu-entangler") return LatticeKind::triangular;
  if (cfg.circuit.rfind("builtin:set-", 0) == 0) return LatticeKind::square_ve;
  return cfg.lattice;
}

Lattice qca_window(const QcaConfig& cfg) {
  return Lattice(qca_lattice(cfg), Topology::make_window(-(cfg.w / 2), -(cfg.h / 2), cfg.w, cfg.h));
}

Circuit load_circuit(const QcaConfig& cfg, const Lattice& lat) {
  if (cfg.circuit.rfind("builtin:", 0) == 0) return builtin_circuit(cfg.circuit, lat);
  std::ifstream in(cfg.circuit);
  if (!in) throw std::invalid_argument("cannot open circuit file '" + cfg.circuit + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

Cone parse_cone(const std::string& s) {
  auto at = s.find('@');
  if (at == std::string::npos) throw std::invalid_argument("bad cone '" + s + "' (want DEG@origin or DEG@x,y)");
  double deg = 0;
  Point apex{0.25, 0.25};
  try {
    size_t pos = 0;
    deg = std::stod(s.substr(0, at), &pos);
    if (pos != at) throw std::invalid_argument("");
    auto where = s.substr(at + 1);
    if (where != "origin") {
      auto comma = where.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("");
      apex = {std::stod(where.substr(0, comma)), std::stod(where.substr(comma + 1))};
    }
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad cone '" + s + "' (want DEG@origin or DEG@x,y)");
  }
  if (!(deg > 0 && deg < 180)) throw std::invalid_argument("cone angle must lie in (0, 180) degrees");
  return Cone{apex, -std::numbers::pi / 2, deg * std::numbers::pi / 180};
}

namespace {

CheckReport qca_report(const QcaConfig& cfg, const std::string& suite) {
  CheckReport r;
  r.model = cfg.circuit;
  r.suite = "qca " + suite;
  r.environment = ojson{{"window", extent_str(cfg.w, cfg.h)},
                        {"lattice", qca_lattice(cfg) == LatticeKind::triangular ? "triangular" : "square"},
                        {"margin", cfg.margin},
                        {"N_list", ojson::array()},
                        {"seed", nullptr}};
  return r;
}

Check recomposition_check(const Circuit& c, const Factorization& f, const Lattice& lat, int margin) {
  auto rep = check_recomposition(c, f, lat, margin);
  Check k{"recomposition", "factorized circuit equals the original", rep.ok() && rep.generators ? "pass" : "fail", "",
          rep.generators};
  k.detail = std::to_string(rep.generators) + " generators";
  if (!rep.ok()) k.detail += "; first failure " + rep.failed.front();
  return k;
}

std::set<SiteId> sites_of(const Region& r, const Lattice& lat, bool inside) {
  std::set<SiteId> out;
  for (auto s : lat.qubits())
    if (r.contains(s) == inside) out.insert(s);
  return out;
}

}  // namespace

CheckReport run_qca_spread(const QcaConfig& cfg_in) {
  QcaConfig cfg = cfg_in;
  if (cfg.margin < 0) cfg.margin = 3;
  if (cfg.w <= 0) cfg.w = cfg.h = 10;
  auto lat = qca_window(cfg);
  auto c = load_circuit(cfg, lat);
  auto rep = empirical_spread(c, lat, cfg.margin);
  auto r = qca_report(cfg, "spread");
  r.checks.push_back(Check{"spread-bound", "spread is at most depth times gate size",
                           rep.empirical <= rep.bound && rep.generators ? "pass" : "fail",
                           "bound " + std::to_string(rep.bound) + ", empirical " + std::to_string(rep.empirical) +
                               " over " + std::to_string(rep.generators) + " generators",
                           rep.generators});
  r.results = ojson{{"depth", c.depth()},
                                   {"max_gate_size", c.max_gate_size()},
                                   {"bound", rep.bound},
                                   {"empirical", rep.empirical}};
  return r;
}

CheckReport run_qca_split(const QcaConfig& cfg_in) {
  QcaConfig cfg = cfg_in;
  if (cfg.margin < 0) cfg.margin = 0;
  if (cfg.w <= 0) cfg.w = cfg.h = 10;
  auto lat = qca_window(cfg);
  auto c = load_circuit(cfg, lat);
  auto f = split_strip(c, lat, cfg.cut);
  auto r = qca_report(cfg, "split");
  r.environment["cut"] = cfg.cut;
  r.checks.push_back(recomposition_check(c, f, lat, cfg.margin));
  AuditReport sides;
  for (auto s : f.alpha_in.support()) sides.expect(s.y() >= cfg.cut, "upper part reaches " + s.str());
  for (auto s : f.alpha_out.support()) sides.expect(s.y() < cfg.cut, "lower part reaches " + s.str());
  auto k = from_audit(sides, "strip-sides", "each half acts on its own side of the cut");
  if (sides.checks == 0) k = Check{"strip-sides", k.ref, "pass", "both halves empty", 0};
  r.checks.push_back(k);
  r.results = ojson{
      {"xi_gates", f.xi.gate_count()}, {"upper_gates", f.alpha_in.gate_count()}, {"lower_gates", f.alpha_out.gate_count()}};
  return r;
}

CheckReport run_qca_factorize(const QcaConfig& cfg_in) {
  QcaConfig cfg = cfg_in;
  Lattice probe = qca_window(QcaConfig{cfg.circuit, cfg.lattice, 4, 4, 0, cfg.cone, 0});
  int bound = spread_bound(load_circuit(cfg, probe));
  if (cfg.margin < 0) cfg.margin = bound;
  if (cfg.w <= 0) cfg.w = cfg.h = 2 * cfg.margin + 3;
  auto lat = qca_window(cfg);
  auto c = load_circuit(cfg, lat);
  auto cone = parse_cone(cfg.cone);
  auto region = region_cone(cone, lat);
  auto f = quasi_factorize(c, lat, region, cfg.margin);
  auto r = qca_report(cfg, "factorize");
  r.environment["cone"] = cfg.cone;
  r.checks.push_back(recomposition_check(c, f, lat, cfg.margin));
  bool sup = audit_supports(f, lat, sites_of(region, lat, true), sites_of(region, lat, false));
  r.checks.push_back(Check{"supports", "factors stay in their regions and the band", sup ? "pass" : "fail",
                           sup ? "inside, outside and band supports respected" : "a factor leaves its region", 1});
  r.results = ojson{{"xi_gates", f.xi.gate_count()},
                                   {"inside_gates", f.alpha_in.gate_count()},
                                   {"outside_gates", f.alpha_out.gate_count()},
                                   {"width", f.width}};
  return r;
}

}  // namespace qd
