#include "qd/qca.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qd {

namespace {

std::vector<SiteId> merge(const std::vector<SiteId>& a, const std::vector<SiteId>& b) {
  std::vector<SiteId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool overlaps(const std::vector<SiteId>& a, const std::vector<SiteId>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return false;
}

}  // namespace

Gate Gate::symbolic(CliffordWord w) {
  Gate g;
  g.support = w.support();
  g.word = std::move(w);
  return g;
}

Gate Gate::dense(std::vector<DenseOp> commuting_atoms) {
  Gate g;
  for (auto& a : commuting_atoms) g.support = merge(g.support, a.support);
  g.atoms = std::move(commuting_atoms);
  return g;
}

DenseOp Gate::to_dense() const {
  if (word) return materialize(*word, support);
  DenseOp u = DenseOp::identity(support);
  for (auto& a : atoms) u = multiply(u, a);
  return u;
}

Gate Gate::inverse() const {
  if (word) return symbolic(word->inverse());
  std::vector<DenseOp> inv;
  for (auto& a : atoms) inv.push_back(a.adjoint());
  return dense(std::move(inv));
}

Circuit::Circuit(std::vector<Layer> layers) : layers_(std::move(layers)) {
  for (size_t d = 0; d < layers_.size(); ++d) {
    std::set<SiteId> used;
    for (auto& g : layers_[d].gates)
      for (auto s : g.support)
        if (!used.insert(s).second)
          throw std::invalid_argument("layer " + std::to_string(d + 1) + ": overlapping gates at " + s.str());
  }
}

size_t Circuit::max_gate_size() const {
  size_t n = 0;
  for (auto& l : layers_)
    for (auto& g : l.gates) n = std::max(n, g.support.size());
  return n;
}

std::vector<SiteId> Circuit::support() const {
  std::vector<SiteId> s;
  for (auto& l : layers_)
    for (auto& g : l.gates) s = merge(s, g.support);
  return s;
}

bool Circuit::is_symbolic() const {
  for (auto& l : layers_)
    for (auto& g : l.gates)
      if (!g.is_symbolic()) return false;
  return true;
}

size_t Circuit::gate_count() const {
  size_t n = 0;
  for (auto& l : layers_) n += l.gates.size();
  return n;
}

Circuit Circuit::inverse() const {
  std::vector<Layer> out;
  for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
    Layer l;
    for (auto& g : it->gates) l.gates.push_back(g.inverse());
    out.push_back(std::move(l));
  }
  return Circuit(std::move(out));
}

std::vector<SiteId> OpImage::support() const { return dense ? op.support : pauli.support(); }

DenseOp OpImage::to_dense(const std::vector<SiteId>& sup) const {
  auto s = sup.empty() ? support() : sup;
  return dense ? embed(op, s) : materialize(pauli, s);
}

OpImage conjugate(const Circuit& c, const OpImage& a) {
  OpImage cur = a;
  for (auto& layer : c.layers()) {
    auto snapshot = cur.support();
    for (auto& g : layer.gates) {
      if (!overlaps(g.support, snapshot)) continue;
      if (g.is_symbolic() && !cur.dense) {
        cur.pauli = ad(*g.word, cur.pauli);
        continue;
      }
      if (!cur.dense) {
        cur.op = materialize(cur.pauli, cur.pauli.support());
        cur.dense = true;
      }
      if (g.is_symbolic()) {
        cur.op = reduce_support(conj_dense(materialize(*g.word, g.support), cur.op), g.support);
      } else {
        for (auto& atom : g.atoms)
          if (overlaps(atom.support, snapshot)) cur.op = reduce_support(conj_dense(atom, cur.op), atom.support);
      }
    }
  }
  return cur;
}

OpImage conjugate(const Circuit& c, const PhasedPauli& q) {
  OpImage a;
  a.pauli = q;
  return conjugate(c, a);
}

bool same_image(const OpImage& a, const OpImage& b, double tol) {
  if (!a.dense && !b.dense) return a.pauli == b.pauli;
  auto s = merge(a.support(), b.support());
  return max_deviation(a.to_dense(s), b.to_dense(s)) <= tol;
}

int spread_bound(const Circuit& c) { return int(c.max_gate_size() * c.depth()); }

namespace {

std::vector<SiteId> interior(const Lattice& lat, int margin) {
  std::vector<SiteId> out;
  for (auto s : lat.qubits())
    if (lat.boundary_distance(s) >= margin) out.push_back(s);
  return out;
}

int gate_diameter(const Gate& g, const Lattice& lat) {
  int d = 0;
  for (size_t i = 0; i < g.support.size(); ++i)
    for (size_t j = i + 1; j < g.support.size(); ++j) d = std::max(d, lat.distance(g.support[i], g.support[j]));
  return d;
}

// Distance from each qubit to the nearest qubit outside `r` (0 outside r).
std::map<SiteId, int> depth_in(const Lattice& lat, const std::set<SiteId>& r) {
  std::vector<SiteId> outside;
  auto qs = lat.qubits();
  for (auto s : qs)
    if (!r.count(s)) outside.push_back(s);
  std::map<SiteId, int> d;
  for (auto s : qs) {
    if (!r.count(s)) { d[s] = 0; continue; }
    int best = 1 << 20;
    for (auto t : outside) best = std::min(best, lat.distance(s, t));
    d[s] = best;
  }
  return d;
}

bool inside(const Gate& g, const std::map<SiteId, int>& depth, int threshold) {
  for (auto s : g.support) {
    auto it = depth.find(s);
    if (it == depth.end() || it->second <= threshold) return false;
  }
  return true;
}

}  // namespace

SpreadReport empirical_spread(const Circuit& c, const Lattice& lat, int margin) {
  SpreadReport r;
  r.bound = spread_bound(c);
  for (auto s : interior(lat, margin)) {
    for (auto l : {X, Z}) {
      auto img = conjugate(c, PhasedPauli::single(s, l));
      for (auto t : img.support()) r.empirical = std::max(r.empirical, lat.distance(s, t));
      ++r.generators;
    }
  }
  return r;
}

Circuit Factorization::recomposed() const {
  std::vector<Layer> layers;
  for (size_t d = 0; d < alpha_in.depth(); ++d) {
    Layer l = alpha_in.layers()[d];
    for (auto& g : alpha_out.layers()[d].gates) l.gates.push_back(g);
    layers.push_back(std::move(l));
  }
  for (auto& l : xi.layers()) layers.push_back(l);
  return Circuit(std::move(layers));
}

Factorization partition_circuit(const Circuit& c, const Lattice& lat, const std::set<SiteId>& in,
                                const std::set<SiteId>& out) {
  int width = 0;
  for (auto& l : c.layers())
    for (auto& g : l.gates) width = std::max(width, gate_diameter(g, lat));
  auto din = depth_in(lat, in), dout = depth_in(lat, out);
  std::vector<Layer> xi, lin, lout;
  for (size_t d = 0; d < c.depth(); ++d) {
    // Layer d+1 may only use in/out gates at depth > d * width, so that no
    // straddling gate of an earlier layer meets a later in/out gate.
    int threshold = int(d) * width;
    Layer x, a, b;
    for (auto& g : c.layers()[d].gates) {
      if (inside(g, din, threshold)) a.gates.push_back(g);
      else if (inside(g, dout, threshold)) b.gates.push_back(g);
      else x.gates.push_back(g);
    }
    xi.push_back(std::move(x));
    lin.push_back(std::move(a));
    lout.push_back(std::move(b));
  }
  Factorization f;
  f.xi = Circuit(std::move(xi));
  f.alpha_in = Circuit(std::move(lin));
  f.alpha_out = Circuit(std::move(lout));
  f.width = width;
  return f;
}

Factorization quasi_factorize(const Circuit& c, const Lattice& lat, const Region& cone, int margin) {
  if (margin < spread_bound(c))
    throw std::invalid_argument("margin " + std::to_string(margin) + " is below the spread bound " +
                                std::to_string(spread_bound(c)));
  std::set<SiteId> in, out;
  for (auto s : lat.qubits()) (cone.contains(s) ? in : out).insert(s);
  if (in.empty() || out.empty()) throw std::invalid_argument("cone does not split the window");
  return partition_circuit(c, lat, in, out);
}

Factorization split_strip(const Circuit& c, const Lattice& lat, int cut) {
  double y0 = cut - 0.5;
  std::set<SiteId> up, down;
  for (auto s : lat.qubits()) {
    double y = lat.position(s).y;
    if (y > y0 + 1e-9) up.insert(s);
    else if (y < y0 - 1e-9) down.insert(s);
  }
  bool above = false, below = false;
  for (auto s : c.support()) {
    double y = lat.position(s).y;
    above |= y > y0 - 1e-9;
    below |= y < y0 + 1e-9;
  }
  if (!above || !below) throw std::invalid_argument("cut " + std::to_string(cut) + " lies outside the strip");
  return partition_circuit(c, lat, up, down);
}

RecompositionReport check_recomposition(const Circuit& c, const Factorization& f, const Lattice& lat,
                                        int margin) {
  RecompositionReport r;
  auto rc = f.recomposed();
  for (auto s : interior(lat, margin)) {
    for (auto l : {X, Z}) {
      auto q = PhasedPauli::single(s, l);
      ++r.generators;
      if (!same_image(conjugate(c, q), conjugate(rc, q))) {
        ++r.failures;
        r.failed.push_back(q.str());
      }
    }
  }
  return r;
}

bool audit_supports(const Factorization& f, const Lattice& lat, const std::set<SiteId>& in,
                    const std::set<SiteId>& out) {
  for (auto s : f.alpha_in.support())
    if (!in.count(s)) return false;
  for (auto s : f.alpha_out.support())
    if (!out.count(s)) return false;
  auto din = depth_in(lat, in), dout = depth_in(lat, out);
  int band = int(f.xi.depth()) * f.width;
  for (auto s : f.xi.support()) {
    auto a = din.find(s), b = dout.find(s);
    if (a == din.end() || b == dout.end()) return false;
    if (a->second > band || b->second > band) return false;
  }
  return true;
}

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::vector<Layer> layers;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "layer") {
      layers.emplace_back();
      continue;
    }
    if (head != "gate") fail("expected 'layer' or 'gate', got '" + head + "'");
    if (layers.empty()) fail("gate before the first layer");
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) fail("empty gate");
    // Factors in written (operator-product) order.
    std::vector<CliffordWord> words;
    std::vector<std::optional<std::pair<double, PhasedPauli>>> exps;
    bool any_exp = false;
    try {
      for (auto& t : toks) {
        if (t.rfind("rot:", 0) == 0) {
          words.push_back(CliffordWord(QuarterRotation(PhasedPauli::parse(t.substr(4)))));
          exps.push_back(std::nullopt);
        } else if (t.rfind("pauli:", 0) == 0) {
          words.push_back(CliffordWord(PhasedPauli::parse(t.substr(6))));
          exps.push_back(std::nullopt);
        } else if (t.rfind("exp:", 0) == 0) {
          auto rest = t.substr(4);
          auto colon = rest.find(':');
          auto slash = rest.find('/');
          if (colon == std::string::npos || slash == std::string::npos || slash > colon)
            fail("bad exp factor '" + t + "'");
          double p = std::stod(rest.substr(0, slash)), q = std::stod(rest.substr(slash + 1, colon - slash - 1));
          if (q == 0) fail("zero denominator in '" + t + "'");
          auto axis = PhasedPauli::parse(rest.substr(colon + 1));
          if (!axis.is_hermitian()) fail("exp axis must be Hermitian");
          words.emplace_back();
          exps.push_back(std::make_pair(M_PI * p / q, axis));
          any_exp = true;
        } else {
          fail("unknown factor '" + t + "'");
        }
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
    if (!any_exp) {
      CliffordWord w;
      for (auto& x : words) w.append(x);
      layers.back().gates.push_back(Gate::symbolic(w));
      continue;
    }
    // Dense gate: atoms stay separate only if all axes commute pairwise.
    std::vector<PhasedPauli> axes;
    std::vector<DenseOp> atoms;
    for (size_t i = 0; i < words.size(); ++i) {
      if (exps[i]) {
        axes.push_back(exps[i]->second);
        atoms.push_back(pauli_exponential(exps[i]->first, exps[i]->second));
        continue;
      }
      auto& f = words[i].factors().front();
      if (auto* p = std::get_if<PhasedPauli>(&f)) axes.push_back(*p);
      else axes.push_back(std::get<QuarterRotation>(f).axis);
      atoms.push_back(materialize(words[i]));
    }
    bool commuting = true;
    for (size_t i = 0; i < axes.size(); ++i)
      for (size_t j = i + 1; j < axes.size(); ++j) commuting &= axes[i].commutes(axes[j]);
    if (!commuting) {
      DenseOp u = DenseOp::identity({});
      for (auto& a : atoms) u = multiply(u, a);
      atoms = {u};
    }
    layers.back().gates.push_back(Gate::dense(std::move(atoms)));
  }
  try {
    return Circuit(std::move(layers));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(e.what());
  }
}

}  // namespace qd
