// spintomo command-line front end.
//
//   spintomo tomogram     --state s.json (--j 1/2 | --shape 1/2,1/2) [frame]
//   spintomo entropy-map  --state s.json --j 1 --grid-theta 10 --grid-phi 20
//   spintomo reconstruct  --state s.json --j 1 --band-limit 4 --verify
//   spintomo minimize     --state s.json --restarts 8 --tol 1e-7 --seed 0
//   spintomo info         --state s.json --shape 1/2,1/2 [frame]
//   spintomo verify       [--seed N]
//
// Exit codes: 0 ok, 1 verify failure or internal error, 2 invalid input,
// 3 dimension mismatch, 4 reconstruction failure, 5 no convergence.

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spintomo/io.hpp"
#include "spintomo/spintomo.hpp"
#include "spintomo/verification.hpp"

namespace {

using namespace spintomo;
using nlohmann::json;

enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_internal = 1,
  exit_invalid_input = 2,
  exit_dimension = 3,
  exit_reconstruction = 4,
  exit_not_converged = 5,
};

struct Options {
  std::string config;
  std::string state;
  std::string j;
  std::string shape;
  std::string frame;
  std::string unitary;
  std::string format = "csv";
  std::string out;
  double phi = 0.0, theta = 0.0, psi = 0.0;
  double phi2 = 0.0, theta2 = 0.0, psi2 = 0.0;
  int grid_theta = 1, grid_phi = 1;
  int band_limit = -1;
  int restarts = 8;
  int max_iters = 5000;
  double tol = 0.0;
  double state_tol = 0.0;
  std::uint64_t seed = 0;
  bool verify = false;
  bool no_timestamp = false;
  bool bits = false;

  // Set after parsing from option counts.
  bool has_angles2 = false;
  bool has_grid = false;
  bool has_tol = false;
  bool has_state_tol = false;
  bool has_band_limit = false;
  bool has_seed = false;
};

struct LoadedState {
  DensityMatrix rho;
  std::optional<BipartiteShape> shape;
};

// ---------------------------------------------------------------- helpers

std::string timestamp_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

void check_output_path(const std::string& path) {
  if (path.empty()) return;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent))
    throw invalid_argument("output directory does not exist: " + parent.string());
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw invalid_argument("cannot open output file: " + path);
  f << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

double in_units(double nats, bool bits) { return bits ? to_bits(nats) : nats; }

Tolerances state_tolerances(const Options& o) {
  return o.has_state_tol ? Tolerances::uniform(o.state_tol) : Tolerances{};
}

LoadedState load_state(const Options& o) {
  const io::StateFile file = io::read_state_file(o.state);
  return {DensityMatrix::from_matrix(file.matrix, state_tolerances(o)), file.shape};
}

BipartiteShape parse_shape(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw invalid_argument("--shape expects \"j1,j2\", got \"" + text + "\"");
  return {HalfInteger::parse(text.substr(0, comma)), HalfInteger::parse(text.substr(comma + 1))};
}

HalfInteger spin_for(const Options& o, const DensityMatrix& rho) {
  if (!o.j.empty()) return require_spin(HalfInteger::parse(o.j));
  return HalfInteger::from_twice(rho.dim() - 1);
}

std::optional<BipartiteShape> joint_shape(const Options& o, const LoadedState& s) {
  if (!o.shape.empty()) return parse_shape(o.shape);
  if (o.j.empty() && s.shape) return s.shape;
  return std::nullopt;
}

std::vector<EulerAngles> grid_directions(const Options& o) {
  std::vector<EulerAngles> out;
  for (int t = 0; t < o.grid_theta; ++t) {
    const double theta = o.grid_theta == 1 ? 0.0 : pi * t / (o.grid_theta - 1);
    for (int p = 0; p < o.grid_phi; ++p) out.emplace_back(two_pi * p / o.grid_phi, theta, 0.0);
  }
  return out;
}

enum class FrameKind { angles, identity, unitary, grid };

FrameKind frame_kind(const Options& o) {
  if (!o.unitary.empty()) return FrameKind::unitary;
  if (o.frame == "identity") return FrameKind::identity;
  if (!o.frame.empty() && o.frame != "angles") throw invalid_argument("--frame must be identity or angles");
  return o.has_grid ? FrameKind::grid : FrameKind::angles;
}

EulerAngles first_angles(const Options& o) { return {o.phi, o.theta, o.psi}; }
EulerAngles second_angles(const Options& o) {
  return o.has_angles2 ? EulerAngles(o.phi2, o.theta2, o.psi2) : first_angles(o);
}

// ---------------------------------------------------------------- commands

int cmd_tomogram(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw invalid_argument("--format must be csv or json");
  const LoadedState s = load_state(o);
  const FrameKind kind = frame_kind(o);

  if (const auto shape = joint_shape(o, s)) {
    std::vector<JointTomogram> ts;
    switch (kind) {
      case FrameKind::unitary:
        ts.push_back(two_spin_unitary_tomogram(s.rho, *shape, io::unitary_from_json(io::read_json_file(o.unitary))));
        break;
      case FrameKind::identity:
        ts.push_back(two_spin_unitary_tomogram(s.rho, *shape, UnitaryFrame::identity(s.rho.dim())));
        break;
      case FrameKind::grid:
        for (const auto& a : grid_directions(o)) ts.push_back(two_spin_tomogram(s.rho, *shape, a, a));
        break;
      case FrameKind::angles:
        ts.push_back(two_spin_tomogram(s.rho, *shape, first_angles(o), second_angles(o)));
        break;
    }
    if (o.format == "json") {
      write_text(o.out, dump(io::tomograms_to_json(ts)));
    } else {
      std::ostringstream os;
      io::write_joint_csv(os, ts);
      write_text(o.out, os.str());
      if (!o.out.empty()) write_text(o.out + ".frames.json", dump(io::frames_sidecar(ts)));
    }
    return exit_ok;
  }

  const HalfInteger j = spin_for(o, s.rho);
  std::vector<SpinTomogram> ts;
  switch (kind) {
    case FrameKind::unitary:
      ts.push_back(unitary_tomogram(s.rho, io::unitary_from_json(io::read_json_file(o.unitary))));
      break;
    case FrameKind::identity:
      if (s.rho.dim() != multiplicity(j)) throw dimension_mismatch("state dimension does not match --j");
      ts.push_back(unitary_tomogram(s.rho, UnitaryFrame::identity(s.rho.dim())));
      break;
    case FrameKind::grid:
      for (const auto& a : grid_directions(o)) ts.push_back(spin_tomogram(s.rho, j, a));
      break;
    case FrameKind::angles:
      ts.push_back(spin_tomogram(s.rho, j, first_angles(o)));
      break;
  }
  if (o.format == "json") {
    write_text(o.out, dump(io::tomograms_to_json(ts)));
  } else {
    std::ostringstream os;
    io::write_spin_csv(os, ts);
    write_text(o.out, os.str());
    if (!o.out.empty() && !io::all_euler(ts)) write_text(o.out + ".frames.json", dump(io::frames_sidecar(ts)));
  }
  return exit_ok;
}

int cmd_entropy_map(const Options& o) {
  if (o.format != "csv" && o.format != "json") throw invalid_argument("--format must be csv or json");
  const LoadedState s = load_state(o);
  const HalfInteger j = spin_for(o, s.rho);
  const double sn = von_neumann_entropy(s.rho);

  std::vector<std::pair<EulerAngles, double>> rows;
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& a : grid_directions(o)) {
    const double e = tomographic_entropy(spin_tomogram(s.rho, j, a));
    rows.emplace_back(a, e);
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  const bool bound_ok = lo >= sn - lower_bound_slack;
  const char* units = o.bits ? "bits" : "nats";

  if (o.format == "json") {
    json points = json::array();
    for (const auto& [a, e] : rows)
      points.push_back({{"phi", a.phi()}, {"theta", a.theta()}, {"S", in_units(e, o.bits)}});
    write_text(o.out, dump({{"j", j.to_string()},
                            {"units", units},
                            {"points", points},
                            {"von_neumann_entropy", in_units(sn, o.bits)},
                            {"min_S", in_units(lo, o.bits)},
                            {"max_S", in_units(hi, o.bits)},
                            {"bound_ok", bound_ok}}));
    return exit_ok;
  }
  std::ostringstream os;
  os << "phi,theta,S\n";
  for (const auto& [a, e] : rows)
    os << io::format_number(a.phi()) << ',' << io::format_number(a.theta()) << ','
       << io::format_number(in_units(e, o.bits)) << '\n';
  os << "# units," << units << '\n'
     << "# von_neumann_entropy," << io::format_number(in_units(sn, o.bits)) << '\n'
     << "# min_S," << io::format_number(in_units(lo, o.bits)) << '\n'
     << "# max_S," << io::format_number(in_units(hi, o.bits)) << '\n'
     << "# bound_ok," << (bound_ok ? "true" : "false") << '\n';
  write_text(o.out, os.str());
  return exit_ok;
}

int cmd_reconstruct(const Options& o) {
  const LoadedState s = load_state(o);
  const HalfInteger j = spin_for(o, s.rho);
  if (s.rho.dim() != multiplicity(j))
    throw dimension_mismatch("state has dimension " + std::to_string(s.rho.dim()) + " but spin " + j.to_string() +
                             " needs " + std::to_string(multiplicity(j)));
  const int band_limit = o.has_band_limit ? o.band_limit : 2 * j.twice();
  const double threshold = o.has_tol ? o.tol : 1e-8;

  const GroupQuadrature quad = quadrature_grid(band_limit);
  const ComplexMatrix back = reconstruct_matrix(tomogram_of(s.rho, j), j, quad);
  const double err = max_abs(back - s.rho.matrix());
  const bool passed = err <= threshold;

  json report = {{"j", j.to_string()},
                 {"band_limit", band_limit},
                 {"nodes", quad.nodes.size()},
                 {"max_abs_error", err},
                 {"threshold", threshold},
                 {"passed", passed}};
  if (!o.out.empty()) {
    json state = io::state_to_json(back);
    write_text(o.out, dump(state));
    report["output"] = o.out;
  }
  std::cout << dump(report);
  if (o.verify && !passed) {
    std::cerr << "reconstruction error " << io::format_number(err) << " exceeds " << io::format_number(threshold)
              << '\n';
    return exit_reconstruction;
  }
  return exit_ok;
}

int cmd_minimize(const Options& o) {
  const LoadedState s = load_state(o);
  MinimizerConfig cfg;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iters;
  cfg.tol = o.has_tol ? o.tol : cfg.tol;
  cfg.seed = o.seed;
  const MinimizationResult r = minimize(s.rho, cfg);

  json doc = {{"dim", s.rho.dim()},
              {"units", o.bits ? "bits" : "nats"},
              {"best_entropy", in_units(r.best_entropy, o.bits)},
              {"von_neumann_entropy", in_units(r.von_neumann, o.bits)},
              {"entropy_gap", in_units(r.entropy_gap, o.bits)},
              {"converged", r.converged},
              {"iterations", r.iterations},
              {"restarts_used", r.restarts_used},
              {"restarts", cfg.restarts},
              {"tol", cfg.tol},
              {"seed", cfg.seed},
              {"best_frame", io::unitary_to_json(r.best_frame)}};
  if (!o.no_timestamp) doc["timestamp"] = timestamp_now();
  write_text(o.out, dump(doc));
  if (!r.converged) {
    std::cerr << "minimizer did not reach S_N within tol after " << r.restarts_used << " restarts\n";
    return exit_not_converged;
  }
  return exit_ok;
}

int cmd_info(const Options& o) {
  const LoadedState s = load_state(o);
  const auto shape = joint_shape(o, s);
  if (!shape) throw invalid_argument("info needs --shape or a state file with a shape");
  const JointTomogram t = [&] {
    switch (frame_kind(o)) {
      case FrameKind::unitary:
        return two_spin_unitary_tomogram(s.rho, *shape, io::unitary_from_json(io::read_json_file(o.unitary)));
      case FrameKind::identity:
        return two_spin_unitary_tomogram(s.rho, *shape, UnitaryFrame::identity(s.rho.dim()));
      case FrameKind::grid:
        throw invalid_argument("info takes a single frame, not a grid");
      case FrameKind::angles:
        break;
    }
    return two_spin_tomogram(s.rho, *shape, first_angles(o), second_angles(o));
  }();
  const double i = tomographic_mutual_information(t, true);
  json doc = {{"shape", {{"j1", shape->j1.to_string()}, {"j2", shape->j2.to_string()}}},
              {"units", o.bits ? "bits" : "nats"},
              {"S_joint", in_units(joint_tomographic_entropy(t), o.bits)},
              {"S1", in_units(subsystem_tomographic_entropy(t, Subsystem::first), o.bits)},
              {"S2", in_units(subsystem_tomographic_entropy(t, Subsystem::second), o.bits)},
              {"I", in_units(i, o.bits)},
              {"I_kullback", in_units(tomographic_mutual_information_kullback(t), o.bits)},
              {"frame", io::frame_to_json(t.frame)}};
  write_text(o.out, dump(doc));
  return exit_ok;
}

int cmd_verify(const Options& o) {
  const std::uint64_t seed = o.has_seed ? o.seed : verification::default_seed;
  const auto results = verification::run_property_suite(seed);
  bool all = true;
  std::ostringstream table;
  json list = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    table << verification::format_line(r) << '\n';
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"worst", r.worst},
                    {"threshold", r.threshold},
                    {"detail", r.detail}});
  }
  table << (all ? "all criteria passed" : "some criteria FAILED") << '\n';
  if (o.format == "json") {
    json doc = {{"seed", seed}, {"passed", all}, {"criteria", list}};
    if (!o.no_timestamp) doc["timestamp"] = timestamp_now();
    write_text(o.out, dump(doc));
  } else {
    write_text(o.out, table.str());
  }
  return all ? exit_ok : exit_verify_failed;
}

// ---------------------------------------------------------------- config

// Splices "--key value" pairs from a JSON config in front of the explicit
// flags so that the explicit flags (parsed last) win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.size() < 2) return args;
  const json doc = io::read_json_file(path);
  if (!doc.is_object()) throw invalid_argument("config file must hold a JSON object");

  std::vector<std::string> injected;
  for (const auto& [key, value] : doc.items()) {
    std::string flag = "--" + key;
    for (char& c : flag)
      if (c == '_') c = '-';
    if (flag == "--config") continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_string()) {
      injected.push_back(flag);
      injected.push_back(value.get<std::string>());
    } else if (value.is_number_integer()) {
      injected.push_back(flag);
      injected.push_back(std::to_string(value.get<long long>()));
    } else if (value.is_number()) {
      injected.push_back(flag);
      injected.push_back(io::format_number(value.get<double>()));
    } else {
      throw invalid_argument("config key \"" + key + "\" must be a string, number or boolean");
    }
  }
  std::vector<std::string> out{args[0], args[1]};
  out.insert(out.end(), injected.begin(), injected.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

// ---------------------------------------------------------------- wiring

struct Flags {
  CLI::Option* phi2 = nullptr;
  CLI::Option* theta2 = nullptr;
  CLI::Option* psi2 = nullptr;
  CLI::Option* grid_theta = nullptr;
  CLI::Option* grid_phi = nullptr;
  CLI::Option* tol = nullptr;
  CLI::Option* state_tol = nullptr;
  CLI::Option* band_limit = nullptr;
  CLI::Option* seed = nullptr;
};

void add_state(CLI::App* c, Options& o, Flags& f) {
  c->add_option("--state", o.state, "density-matrix JSON file")->required()->check(CLI::ExistingFile);
  f.state_tol = c->add_option("--state-tol", o.state_tol, "validation tolerance for the input state")
                    ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* c, Options& o) {
  c->add_option("--out", o.out, "output file (default: stdout)");
  c->add_option("--config", o.config, "JSON file with flag defaults")->check(CLI::ExistingFile);
}

void add_spin(CLI::App* c, Options& o) { c->add_option("--j", o.j, "spin, e.g. 1/2, 1, 3/2"); }

void add_frame(CLI::App* c, Options& o, Flags& f, bool grid) {
  c->add_option("--shape", o.shape, "two spins, e.g. 1/2,1/2");
  c->add_option("--phi", o.phi, "Euler angle phi (first spin)");
  c->add_option("--theta", o.theta, "Euler angle theta (first spin)");
  c->add_option("--psi", o.psi, "Euler angle psi (first spin)");
  f.phi2 = c->add_option("--phi2", o.phi2, "Euler angle phi of the second spin (default: --phi)");
  f.theta2 = c->add_option("--theta2", o.theta2, "Euler angle theta of the second spin (default: --theta)");
  f.psi2 = c->add_option("--psi2", o.psi2, "Euler angle psi of the second spin (default: --psi)");
  c->add_option("--frame", o.frame, "identity | angles");
  c->add_option("--unitary", o.unitary, "unitary-frame JSON file")->check(CLI::ExistingFile);
  if (grid) {
    f.grid_theta = c->add_option("--grid-theta", o.grid_theta, "theta nodes on [0, pi]")->check(CLI::Range(1, 100000));
    f.grid_phi = c->add_option("--grid-phi", o.grid_phi, "phi nodes on [0, 2 pi)")->check(CLI::Range(1, 100000));
  }
}

bool counted(const CLI::Option* opt) { return opt && opt->count() > 0; }

void finish(Options& o, const Flags& f) {
  o.has_angles2 = counted(f.phi2) || counted(f.theta2) || counted(f.psi2);
  if (o.has_angles2) {
    // Unset second-spin angles fall back to the first spin's.
    if (!counted(f.phi2)) o.phi2 = o.phi;
    if (!counted(f.theta2)) o.theta2 = o.theta;
    if (!counted(f.psi2)) o.psi2 = o.psi;
  }
  o.has_grid = counted(f.grid_theta) || counted(f.grid_phi);
  o.has_tol = counted(f.tol);
  o.has_state_tol = counted(f.state_tol);
  o.has_band_limit = counted(f.band_limit);
  o.has_seed = counted(f.seed);
}

int run(int argc, char** argv) {
  Options o;
  Flags flags;
  CLI::App app{"Spin-state tomography: tomograms, entropies, reconstruction and entropy minimization"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);

  auto* tomogram = app.add_subcommand("tomogram", "spin or two-spin tomogram in one or more frames");
  add_state(tomogram, o, flags);
  add_spin(tomogram, o);
  add_frame(tomogram, o, flags, true);
  tomogram->add_option("--format", o.format, "csv | json");
  add_output(tomogram, o);

  auto* emap = app.add_subcommand("entropy-map", "tomographic entropy on a (phi, theta) grid");
  add_state(emap, o, flags);
  add_spin(emap, o);
  o.grid_theta = 10;
  o.grid_phi = 20;
  flags.grid_theta = emap->add_option("--grid-theta", o.grid_theta, "theta nodes on [0, pi]")
                         ->check(CLI::Range(1, 100000));
  flags.grid_phi = emap->add_option("--grid-phi", o.grid_phi, "phi nodes on [0, 2 pi)")->check(CLI::Range(1, 100000));
  emap->add_option("--format", o.format, "csv | json");
  emap->add_flag("--bits", o.bits, "report entropies in bits");
  add_output(emap, o);

  auto* recon = app.add_subcommand("reconstruct", "round trip state -> tomogram -> state");
  add_state(recon, o, flags);
  add_spin(recon, o);
  flags.band_limit = recon->add_option("--band-limit", o.band_limit, "quadrature band limit (default 4j)");
  flags.tol = recon->add_option("--tol", o.tol, "error threshold for --verify (default 1e-8)")
                  ->check(CLI::PositiveNumber);
  recon->add_flag("--verify", o.verify, "exit 4 if the error exceeds the threshold");
  add_output(recon, o);

  auto* mini = app.add_subcommand("minimize", "minimize tomographic entropy over unitary frames");
  add_state(mini, o, flags);
  mini->add_option("--restarts", o.restarts, "number of restarts")->check(CLI::Range(1, 1000000));
  mini->add_option("--max-iters", o.max_iters, "iterations per restart")->check(CLI::Range(1, 100000000));
  flags.tol = mini->add_option("--tol", o.tol, "accepted gap above S_N (default 1e-7)")->check(CLI::PositiveNumber);
  flags.seed = mini->add_option("--seed", o.seed, "random seed");
  mini->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field");
  mini->add_flag("--bits", o.bits, "report entropies in bits");
  add_output(mini, o);

  auto* info = app.add_subcommand("info", "joint and subsystem entropies and mutual information");
  add_state(info, o, flags);
  add_frame(info, o, flags, false);
  info->add_flag("--bits", o.bits, "report entropies in bits");
  add_output(info, o);

  auto* verify = app.add_subcommand("verify", "run the property suite and print a pass/fail table");
  flags.seed = verify->add_option("--seed", o.seed, "base seed");
  verify->add_option("--format", o.format, "csv (table) | json");
  verify->add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp field (json)");
  add_output(verify, o);

  // Rebuild argv with the config file's flags spliced in.
  std::vector<std::string> args(argv, argv + argc);
  args = expand_config(args);
  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  // The seed option lives on two subcommands; keep the one that was parsed.
  if (verify->parsed()) flags.seed = verify->get_option("--seed");
  if (mini->parsed()) {
    flags.seed = mini->get_option("--seed");
    flags.tol = mini->get_option("--tol");
  }
  if (recon->parsed()) flags.tol = recon->get_option("--tol");
  if (tomogram->parsed()) {
    flags.grid_theta = tomogram->get_option("--grid-theta");
    flags.grid_phi = tomogram->get_option("--grid-phi");
  }
  for (auto* sub : {tomogram, emap, recon, mini, info})
    if (sub->parsed()) flags.state_tol = sub->get_option("--state-tol");
  for (auto* sub : {tomogram, info})
    if (sub->parsed()) {
      flags.phi2 = sub->get_option("--phi2");
      flags.theta2 = sub->get_option("--theta2");
      flags.psi2 = sub->get_option("--psi2");
    }
  finish(o, flags);
  check_output_path(o.out);

  if (tomogram->parsed()) return cmd_tomogram(o);
  if (emap->parsed()) return cmd_entropy_map(o);
  if (recon->parsed()) return cmd_reconstruct(o);
  if (mini->parsed()) return cmd_minimize(o);
  if (info->parsed()) return cmd_info(o);
  return cmd_verify(o);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const validation_error& e) {
    std::cerr << "invalid state: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const spintomo::dimension_mismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << '\n';
    return exit_dimension;
  } catch (const spintomo::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return exit_invalid_input;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_internal;
  }
}
