#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "qd/lattice.hpp"
#include "qd/models.hpp"
#include "qd/skeletal.hpp"

namespace qd {

constexpr int kSchemaVersion = 1;

struct CheckReport {
  std::string model;
  std::string suite;
  std::vector<Check> checks;
  nlohmann::ordered_json environment;
  nlohmann::ordered_json results;  // command-specific numbers, null if none

  bool ok() const;  // no check failed
};

// Checks sorted by name; no timings, so equal inputs give equal bytes.
nlohmann::ordered_json to_json(const CheckReport& r);
std::string render_json(const nlohmann::ordered_json& j);
// Markdown summary of any report produced here.
std::string render_markdown(const nlohmann::ordered_json& j);

// "10" or "10x8".
std::pair<int, int> parse_extent(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);

struct VerifyConfig {
  ModelId model = ModelId::trivial_paramagnet;
  Topology topology = Topology::make_window(8, 8);
  int margin = 2;
  uint64_t seed = 1;
  int jobs = 1;
};

// Commuting-projector, symmetry, entangler and string/defect suites for the
// model; on a torus within the dense cap, also the ground space.
CheckReport run_verify(const VerifyConfig& cfg);

// Skeletal data with extraction and consistency checks.
nlohmann::ordered_json skeletal_json(const SkeletalReport& r);
bool skeletal_ok(const SkeletalReport& r);
// Nontrivial F and eta entries followed by the braiding table.
std::string skeletal_text(const SkeletalReport& r);

struct QcaConfig {
  std::string circuit;  // builtin:<name> or a descriptor file path
  LatticeKind lattice = LatticeKind::triangular;
  int w = 0, h = 0;     // window centred on the origin; 0 = per-command default
  int margin = -1;      // -1: per-command default
  std::string cone = "90@origin";
  int cut = 0;
};

// Lattice implied by a builtin name, else cfg.lattice.
LatticeKind qca_lattice(const QcaConfig& cfg);
Lattice qca_window(const QcaConfig& cfg);
Circuit load_circuit(const QcaConfig& cfg, const Lattice& lat);
// "<degrees>@origin" or "<degrees>@x,y"; the axis points down, origin is (0.25, 0.25).
Cone parse_cone(const std::string& s);

CheckReport run_qca_spread(const QcaConfig& cfg);
CheckReport run_qca_split(const QcaConfig& cfg);
CheckReport run_qca_factorize(const QcaConfig& cfg);

}  // namespace qd
