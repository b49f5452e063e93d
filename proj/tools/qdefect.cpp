#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qd/report.hpp"

using namespace qd;

namespace {

constexpr int kExitPass = 0, kExitFail = 1, kExitConfig = 2;

struct Output {
  std::string out;  // JSON path, "-" for stdout
  std::string md;   // markdown path
};

void add_output(CLI::App* cmd, Output& o) {
  cmd->add_option("--out", o.out, "write the JSON report here (- for stdout)");
  cmd->add_option("--md", o.md, "write a markdown rendering of the report here");
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  f << text;
}

// JSON to --out, markdown to --md, check lines to stdout unless JSON goes there.
void emit(const nlohmann::ordered_json& j, const Output& o, const std::string& extra = "") {
  if (!o.md.empty()) write_file(o.md, render_markdown(j));
  if (o.out == "-") {
    std::cout << render_json(j);
    return;
  }
  if (!o.out.empty()) write_file(o.out, render_json(j));
  std::cout << extra;
  for (auto& c : j["checks"])
    std::cout << c["status"].get<std::string>() << "  " << c["name"].get<std::string>() << "  "
              << c["detail"].get<std::string>() << "\n";
  std::cout << j["status"].get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qdefect: symmetry defects of lattice models as finite operator programs"};
  app.set_config("--config", "", "read options from a TOML/INI file; flags win");
  app.require_subcommand(1);

  std::string model, window, torus, Ns = "2,3,4";
  int margin = 2, jobs = 1, depth = 16;
  uint64_t seed = 1;
  Output vo, so, qo;

  auto* verify = app.add_subcommand("verify", "run the audit suites of a model");
  verify->add_option("model,--model", model, "trivial-paramagnet | levin-gu | toric-code-ancilla | set-toric-code")
      ->required();
  verify->add_option("--window", window, "window extent N or WxH (default 8)");
  verify->add_option("--torus", torus, "torus extent L or LxL instead of a window");
  verify->add_option("--margin", margin, "boundary margin for local checks")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "seed for sampled checks");
  verify->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  add_output(verify, vo);

  auto* skeletal = app.add_subcommand("skeletal", "extract fusion, F, fractionalization and braiding data");
  skeletal->add_option("model,--model", model, "trivial-paramagnet | levin-gu | set-toric-code")->required();
  skeletal->add_option("--N", Ns, "transport lengths, comma separated");
  skeletal->add_option("--depth", depth, "truncation depth of defect strings")->check(CLI::Range(8, 64));
  add_output(skeletal, so);

  QcaConfig qc;
  std::string lattice = "triangular", qwindow;
  auto* qca = app.add_subcommand("qca", "circuit tools");
  qca->require_subcommand(1);
  std::vector<CLI::App*> qcmds;
  for (auto [name, help] : {std::pair{"spread", "spread bound and empirical spread"},
                            std::pair{"split", "split a circuit along a horizontal cut"},
                            std::pair{"factorize", "quasi-factorize a circuit against a cone"}}) {
    auto* c = qca->add_subcommand(name, help);
    c->add_option("circuit", qc.circuit, "builtin:<name> or a circuit descriptor file")->required();
    c->add_option("--window", qwindow, "window extent N or WxH, centred on the origin");
    c->add_option("--lattice", lattice, "triangular | square (descriptor files only)")
        ->check(CLI::IsMember({"triangular", "square"}));
    c->add_option("--margin", qc.margin, "boundary margin");
    add_output(c, qo);
    qcmds.push_back(c);
  }
  qcmds[1]->add_option("--cut", qc.cut, "cut between rows cut-1 and cut");
  qcmds[2]->add_option("--cone", qc.cone, "DEG@origin or DEG@x,y, axis pointing down");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (verify->parsed()) {
      VerifyConfig cfg;
      cfg.model = parse_model_id(model);
      if (!torus.empty() && !window.empty()) throw std::invalid_argument("--window and --torus are exclusive");
      if (!torus.empty()) {
        auto [w, h] = parse_extent(torus);
        cfg.topology = Topology::make_torus(w, h);
      } else if (!window.empty()) {
        auto [w, h] = parse_extent(window);
        cfg.topology = Topology::make_window(w, h);
      }
      cfg.margin = margin;
      cfg.seed = seed;
      cfg.jobs = jobs;
      auto rep = run_verify(cfg);
      emit(to_json(rep), vo);
      return rep.ok() ? kExitPass : kExitFail;
    }
    if (skeletal->parsed()) {
      auto m = parse_model_id(model);
      if (m == ModelId::toric_code_ancilla) throw std::invalid_argument("skeletal data needs a model with a symmetry defect");
      auto ns = parse_int_list(Ns);
      for (int n : ns)
        if (n < 1 || n >= depth) throw std::invalid_argument("transport length N must lie in [1, depth)");
      SkeletalReport r;
      try {
        r = extract_skeletal(m, ns, depth);
      } catch (const SkeletalError& e) {
        std::cerr << "skeletal extraction failed: " << e.what() << "\n";
        return kExitFail;
      }
      emit(skeletal_json(r), so, skeletal_text(r));
      return skeletal_ok(r) ? kExitPass : kExitFail;
    }
    qc.lattice = lattice == "square" ? LatticeKind::square_ve : LatticeKind::triangular;
    if (!qwindow.empty()) std::tie(qc.w, qc.h) = parse_extent(qwindow);
    CheckReport rep;
    if (qcmds[0]->parsed()) rep = run_qca_spread(qc);
    if (qcmds[1]->parsed()) rep = run_qca_split(qc);
    if (qcmds[2]->parsed()) rep = run_qca_factorize(qc);
    emit(to_json(rep), qo);
    return rep.ok() ? kExitPass : kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
