// blockade-anyon: batch front end for the Rydberg / Fibonacci-chain laboratory.
//
// Exit codes: 0 success, 1 usage error, 2 a verified claim did not reproduce,
// 3 capacity exceeded.

#include <blockade_anyon.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace ba = blockade_anyon;
using ba::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitClaimFailed = 2;
constexpr int kExitCapacity = 3;

struct Common {
  int n = 4;
  std::string sector = "tt";
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string out;
  std::string format = "json";
};

struct Options {
  Common common;
  std::string op;
  int site = 1;
  std::string kind = "x";
  std::vector<double> couplings;
  bool random_couplings = false;
  std::string perturb_op;
  double perturb_weight = 0.0;
  double eps_x = 0.0;
  double eps_z = 0.0;
  double t_max = 100.0;
  std::size_t points = 201;
  std::string channel = "1";
  bool vectors = false;
};

struct Outcome {
  json payload = json::object();
  std::string human;  // printed instead of the JSON payload when non-empty
  bool passed = true;
  std::vector<std::pair<std::string, std::string>> csv;
  json tolerances = json::object();
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "number of anyons N (>= 2)");
  cmd->add_option("--sector", c.sector, "boundary sector: 11, 1t, t1 or tt")
      ->check(CLI::IsMember({"11", "1t", "t1", "tt"}));
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--tol", c.tol, "tolerance for pass/fail decisions");
  cmd->add_option("--out", c.out, "directory for manifest and artifacts");
  cmd->add_option("--format", c.format, "artifact format")->check(CLI::IsMember({"json", "csv"}));
}

ba::SectorPtr make_sector(const Common& c) {
  const auto [z0, zn] = ba::parse_sector_code(c.sector);
  return ba::Sector::make(c.n, z0, zn);
}

std::vector<double> couplings_for(const Options& o) {
  if (!o.couplings.empty()) return o.couplings;
  if (o.random_couplings) return ba::random_couplings(o.common.n, o.common.seed);
  return ba::uniform_couplings(o.common.n);
}

ba::HamiltonianBuilder builder_for(const Options& o) {
  if (o.perturb_op.empty()) return ba::default_builder;
  const std::string spec = o.perturb_op;
  const double weight = o.perturb_weight;
  return [spec, weight](const ba::SectorPtr& s, std::span<const double> j) {
    return ba::add(ba::golden_hamiltonian(s, j), ba::build_operator(s, spec), 1.0, weight);
  };
}

Outcome run(const std::string& command, const Options& o) {
  const Common& c = o.common;
  Outcome out;
  if (command == "dimension") {
    const auto [z0, zn] = ba::parse_sector_code(c.sector);
    const auto dim = ba::sector_dimension(c.n, z0, zn);
    out.payload = {{"N", c.n}, {"sector", c.sector}, {"dim", dim}};
    out.human = std::to_string(dim);
  } else if (command == "enumerate") {
    const auto s = make_sector(c);
    json states = json::array();
    std::string table = "index,state\n";
    for (std::size_t k = 0; k < s->dim(); ++k) {
      const auto st = s->state_at(k).to_string();
      states.push_back(st);
      table += std::to_string(k) + ',' + st + '\n';
    }
    out.payload = {{"sector", ba::to_json(*s)}, {"states", states}};
    if (c.format == "csv") out.csv.emplace_back("states.csv", table);
  } else if (command == "build-op") {
    const auto s = make_sector(c);
    const auto op = ba::build_operator(s, o.op);
    json extra = {{"op", o.op}};
    if (o.op.rfind("window:", 0) == 0 || o.op == "charge") extra["rank"] = ba::rank(op);
    const auto text = ba::export_operator(op, extra);
    out.payload = {{"op", o.op}, {"sector", ba::to_json(*s)}, {"nnz", op.nnz()}, {"hermitian", op.hermitian()}};
    out.csv.emplace_back("operator.txt", text);
    if (c.out.empty()) out.human = text;
  } else if (command == "dictionary") {
    const auto s = make_sector(c);
    const auto kind = o.kind == "z" ? ba::RydbergKind::SigmaZ : ba::RydbergKind::SigmaX;
    out.payload = ba::to_json(ba::dictionary_report(s, o.site, kind));
    out.tolerances["residual"] = ba::kDictionaryTolerance;
  } else if (command == "verify-topo") {
    const auto s = make_sector(c);
    out.payload = ba::to_json(ba::is_topologically_symmetric(ba::build_operator(s, o.op), c.tol, o.op));
  } else if (command == "count-ops") {
    const auto r = ba::symmetric_operator_count(c.n);
    out.payload = ba::to_json(r);
    out.passed = r.verified;
    out.tolerances["rank_relative"] = r.rank_tolerance;
  } else if (command == "support") {
    const auto s = make_sector(c);
    out.payload = ba::to_json(ba::support_window(ba::build_operator(s, o.op), c.tol, o.op));
  } else if (command == "spectrum") {
    const auto s = make_sector(c);
    const auto j = couplings_for(o);
    const auto h = o.op.empty() ? builder_for(o)(s, j) : ba::build_operator(s, o.op);
    const auto spec = ba::eigensystem(h, o.vectors);
    out.payload = {{"sector", ba::to_json(*s)}, {"couplings", j}, {"spectrum", ba::to_json(spec)}};
    if (!o.op.empty()) out.payload["op"] = o.op;
    if (c.format == "csv") out.csv.emplace_back("spectrum.csv", ba::spectrum_csv(spec));
  } else if (command == "verify-sectors") {
    const auto j = couplings_for(o);
    const auto build = builder_for(o);
    const auto direct = ba::verify_direct_sum(c.n, j, c.tol, build);
    const auto mirror = ba::verify_mirror(c.n, j, c.tol, build);
    out.payload = {{"direct_sum", ba::to_json(direct)}, {"mirror", ba::to_json(mirror)}};
    if (!o.perturb_op.empty()) out.payload["perturbation"] = {{"op", o.perturb_op}, {"weight", o.perturb_weight}};
    out.passed = direct.passed && mirror.passed;
    if (c.format == "csv") {
      out.csv.emplace_back("spectrum_tt.csv", ba::spectrum_csv(direct.tau_tau));
      out.csv.emplace_back("spectrum_11.csv", ba::spectrum_csv(direct.one_one));
      out.csv.emplace_back("spectrum_1t.csv", ba::spectrum_csv(direct.one_tau));
      out.csv.emplace_back("spectrum_t1.csv", ba::spectrum_csv(mirror.tau_one_mirrored));
    }
  } else if (command == "leakage") {
    const auto j = couplings_for(o);
    const ba::NoiseConfig noise{o.eps_x, o.eps_z, c.seed};
    ba::InitialStateSpec init;
    init.channel = o.channel == "1" ? ba::ChargeChannel::Vacuum : ba::ChargeChannel::Tau;
    const auto times = ba::default_time_grid(o.t_max, o.points);
    const auto trace = ba::leakage_experiment(c.n, j, noise, times, init);
    out.payload = ba::to_json(trace);
    if (o.eps_x == 0.0 && o.eps_z == 0.0) {
      // Without noise the charge must be conserved.
      out.passed = trace.max_deviation < c.tol;
    }
    if (c.format == "csv") {
      out.csv.emplace_back("leakage.csv", ba::leakage_csv(trace));
    } else {
      out.payload["times"] = trace.times;
      out.payload["charge_expectation"] = trace.charge_expectation;
      out.payload["norm_drift"] = trace.norm_drift;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rydberg-blockade / Fibonacci-anyon chain laboratory"};
  app.require_subcommand(1);
  Options o;

  struct Sub {
    const char* name;
    const char* help;
  };
  const std::vector<Sub> subs = {
      {"enumerate", "list the constrained basis of a sector"},
      {"dimension", "sector dimension"},
      {"build-op", "export an operator in coordinate-list format"},
      {"dictionary", "express a Rydberg operator in anyonic terms"},
      {"verify-topo", "test [O, P^1_N] = 0"},
      {"count-ops", "count topologically symmetric operators"},
      {"support", "minimal Rydberg support of an operator"},
      {"spectrum", "exact spectrum of the golden chain or an operator"},
      {"verify-sectors", "check the sector spectral identities"},
      {"leakage", "topological charge leakage under local noise"},
  };
  std::vector<CLI::App*> cmds;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    add_common(cmd, o.common);
    cmds.push_back(cmd);
  }
  auto* build_op = app.get_subcommand("build-op");
  build_op->add_option("--op", o.op, "operator spec")->required();
  app.get_subcommand("verify-topo")->add_option("--op", o.op, "operator spec")->required();
  app.get_subcommand("support")->add_option("--op", o.op, "operator spec")->required();
  auto* dict = app.get_subcommand("dictionary");
  dict->add_option("--i", o.site, "interior site")->required();
  dict->add_option("--kind", o.kind, "x or z")->check(CLI::IsMember({"x", "z"}));
  for (const char* name : {"spectrum", "verify-sectors", "leakage"}) {
    auto* cmd = app.get_subcommand(name);
    cmd->add_option("--couplings", o.couplings, "N-1 couplings J_i")->delimiter(',');
    cmd->add_flag("--random-couplings", o.random_couplings, "draw couplings from the seed");
  }
  for (const char* name : {"spectrum", "verify-sectors"}) {
    auto* cmd = app.get_subcommand(name);
    cmd->add_option("--perturb-op", o.perturb_op, "operator added to every sector's Hamiltonian");
    cmd->add_option("--perturb-weight", o.perturb_weight, "weight of --perturb-op");
  }
  auto* spectrum = app.get_subcommand("spectrum");
  spectrum->add_option("--op", o.op, "diagonalize this operator instead of the Hamiltonian");
  spectrum->add_flag("--vectors", o.vectors, "also compute eigenvectors");
  auto* leak = app.get_subcommand("leakage");
  leak->add_option("--eps-x", o.eps_x, "flip noise amplitude");
  leak->add_option("--eps-z", o.eps_z, "occupation noise amplitude");
  leak->add_option("--tmax", o.t_max, "final time");
  leak->add_option("--points", o.points, "number of time points");
  leak->add_option("--channel", o.channel, "initial total charge: 1 or tau")->check(CLI::IsMember({"1", "tau"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  std::string command;
  for (auto* cmd : cmds)
    if (cmd->parsed()) command = cmd->get_name();

  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome outcome = run(command, o);
    ba::RunManifest manifest;
    manifest.command = command;
    manifest.master_seed = o.common.seed;
    manifest.parameters = {{"N", o.common.n}, {"sector", o.common.sector}, {"tol", o.common.tol},
                           {"format", o.common.format}};
    if (!o.op.empty()) manifest.parameters["op"] = o.op;
    if (command == "dictionary") {
      manifest.parameters["i"] = o.site;
      manifest.parameters["kind"] = o.kind;
    }
    if (command == "spectrum" || command == "verify-sectors" || command == "leakage") {
      manifest.parameters["couplings"] = couplings_for(o);
      manifest.parameters["random_couplings"] = o.random_couplings;
    }
    if (!o.perturb_op.empty()) {
      manifest.parameters["perturb_op"] = o.perturb_op;
      manifest.parameters["perturb_weight"] = o.perturb_weight;
    }
    if (command == "leakage") {
      manifest.parameters["eps_x"] = o.eps_x;
      manifest.parameters["eps_z"] = o.eps_z;
      manifest.parameters["tmax"] = o.t_max;
      manifest.parameters["points"] = o.points;
      manifest.parameters["channel"] = o.channel;
    }
    manifest.tolerances = outcome.tolerances;
    manifest.tolerances["tol"] = o.common.tol;
    manifest.passed = outcome.passed;
    manifest.summary = outcome.passed ? "ok" : "claim not reproduced";
    manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.common.out.empty()) ba::write_report(o.common.out, manifest, outcome.payload, outcome.csv);
    if (!outcome.human.empty()) {
      std::cout << outcome.human;
      if (outcome.human.back() != '\n') std::cout << '\n';
    } else {
      std::cout << ba::canonical_json(outcome.payload) << '\n';
    }
    return outcome.passed ? kExitOk : kExitClaimFailed;
  } catch (const ba::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const ba::StructureError& e) {
    std::cerr << "structure error: " << e.what() << '\n';
    return kExitClaimFailed;
  } catch (const ba::DictionaryError& e) {
    std::cerr << "dictionary error: " << e.what() << '\n';
    return kExitClaimFailed;
  } catch (const ba::ConvergenceError& e) {
    std::cerr << "convergence error: " << e.what() << '\n';
    return kExitClaimFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
