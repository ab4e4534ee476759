// Copyright (c) 2026 The medgate developers
//
// SPDX-License-Identifier: Apache-2.0
//
// Batch CLI: derive mediated gates, characterize two-qubit gates, run or
// replay syntheses, reproduce the reference depth table, and emit
// robustness/scaling reports. Reports are files; stdout carries a one-line
// summary. Exit codes: 0 success, 2 usage/parse, 3 numerical-contract
// violation, 4 convergence failure under --require-converged.

#include <CLI11.hpp>

#include "medgate/dynamics.hpp"
#include "medgate/entanglement.hpp"
#include "medgate/synthesis.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace medgate;

constexpr double kPi = std::numbers::pi;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnconverged = 4;

// All numbers in reports (JSON and CSV alike) go through this formatter so
// the two renderings contain byte-identical numerals.
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// Minimal ordered JSON writer over pre-formatted values, so fmt17 output
// lands verbatim in the file.
class JsonWriter {
 public:
  void raw(const std::string& key, const std::string& value) {
    items_.emplace_back(key, value);
  }
  void num(const std::string& key, double v) { raw(key, fmt17(v)); }
  void str(const std::string& key, const std::string& v) {
    raw(key, "\"" + json_escape(v) + "\"");
  }
  void boolean(const std::string& key, bool v) { raw(key, v ? "true" : "false"); }
  std::string dump() const {
    std::string out = "{";
    for (size_t i = 0; i < items_.size(); ++i) {
      if (i) out += ", ";
      out += "\"" + json_escape(items_[i].first) + "\": " + items_[i].second;
    }
    return out + "}";
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

std::string json_array(const std::vector<std::string>& vals) {
  std::string out = "[";
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += vals[i];
  }
  return out + "]";
}

struct GlobalConfig {
  std::uint32_t seed = 20120621;
  int workers = 1;
  std::string output;
  std::string format = "json";
  double tolerance = kDefaultTol;
  bool angles_in_pi = false;
};

std::string config_json(const GlobalConfig& g, const std::string& command) {
  JsonWriter w;
  w.str("command", command);
  w.raw("seed", std::to_string(g.seed));
  w.raw("workers", std::to_string(g.workers));
  w.str("format", g.format);
  w.num("tolerance", g.tolerance);
  w.boolean("angles_in_pi", g.angles_in_pi);
  return w.dump();
}

std::string config_csv(const GlobalConfig& g, const std::string& command) {
  std::ostringstream os;
  os << "# command=" << command << " seed=" << g.seed
     << " workers=" << g.workers << " format=" << g.format
     << " tolerance=" << fmt17(g.tolerance)
     << " angles_in_pi=" << (g.angles_in_pi ? "true" : "false") << "\n";
  return os.str();
}

std::string default_output(const GlobalConfig& g, const std::string& stem,
                           const char* forced_ext = nullptr) {
  if (!g.output.empty()) return g.output;
  std::string dir = ".";
  if (const char* env = std::getenv("MEDGATE_OUT_DIR")) dir = env;
  return dir + "/" + stem + "." + (forced_ext ? forced_ext : g.format);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
}

double angle_out(double rad, const GlobalConfig& g) {
  return g.angles_in_pi ? rad / kPi : rad;
}

std::string matrix_entries_json(const Matrix& m) {
  std::vector<std::string> rows;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      rows.push_back(json_array({fmt17(m(i, j).real()), fmt17(m(i, j).imag())}));
  JsonWriter w;
  w.raw("dim", std::to_string(m.rows()));
  w.raw("entries", json_array(rows));
  return w.dump();
}

Matrix named_gate(const std::string& name) {
  if (name == "u2") return mediated_gate_constant(MediatedGate::kU2);
  if (name == "u3") return mediated_gate_constant(MediatedGate::kU3);
  for (const auto& t : target_registry()) {
    std::string lower;
    for (char c : t.name) lower.push_back(char(std::tolower(c)));
    std::string alias = lower == "psiminus" ? "bell"
                        : lower == "b"      ? "bgate"
                        : lower == "sqrtswap" ? "sqrtswap"
                                              : lower;
    if ((alias == name || lower == name) &&
        t.kind == SynthesisTarget::Kind::kGate)
      return t.gate;
  }
  throw DomainError("unknown gate name: " + name);
}

std::optional<SynthesisTarget> named_target(const std::string& name) {
  std::map<std::string, std::string> alias = {
      {"bell", "PsiMinus"}, {"ghz3", "GHZ3"},   {"w3", "W3"},
      {"w5", "W_N"},        {"c4", "C4"},       {"cnot", "CNOT"},
      {"swap", "SWAP"},     {"sqrtswap", "sqrtSWAP"}, {"bgate", "B"},
      {"toffoli", "Toffoli"}};
  auto it = alias.find(name);
  if (it == alias.end()) return std::nullopt;
  for (const auto& t : target_registry())
    if (t.name == it->second) return t;
  return std::nullopt;
}

// ---------------------------------------------------------------- derive

int cmd_derive(const GlobalConfig& g, const std::string& geometry, double j,
               double j_ratio, double t_max) {
  SpinGeometry geo = SpinGeometry::linear3(1, 1);
  bool uniform = true;
  if (geometry == "linear-3") {
    geo = SpinGeometry::linear3(j * j_ratio, j);
    uniform = j_ratio == 1.0;
  } else if (geometry == "star-3") {
    geo = SpinGeometry::star(3, j);
  } else if (geometry == "star-5") {
    geo = SpinGeometry::star(5, j);
  } else if (geometry == "star-7") {
    geo = SpinGeometry::star(7, j);
  } else {
    std::cerr << "derive: invalid geometry '" << geometry << "'\n";
    return kExitUsage;
  }
  if (t_max <= 0) t_max = geometry == "linear-3" ? 9.0 / j : 8.5 / j;

  std::string path = default_output(g, "derive_" + geometry);
  if (uniform) {
    GatePeriodFamily fam = scan_mediated_gates(geo, t_max);
    std::vector<std::string> members;
    for (const auto& p : fam.members) {
      JsonWriter m;
      m.num("t", p.t);
      m.num("residual", p.residual);
      m.str("tag", gate_tag_name(p.tag));
      m.raw("gate", matrix_entries_json(p.gate));
      members.push_back(m.dump());
    }
    JsonWriter w;
    w.raw("config", config_json(g, "derive"));
    w.str("geometry", geometry);
    w.num("J", j);
    w.num("base_period", fam.base_period);
    w.raw("periods", json_array(members));
    write_file(path, w.dump() + "\n");
    std::cout << "derive " << geometry << ": " << fam.members.size()
              << " periods, base T_g = " << fmt17(fam.base_period) << " -> "
              << path << "\n";
  } else {
    auto windows = scan_factorization_windows(geo, t_max, 4096, 1e-6);
    JsonWriter w;
    w.raw("config", config_json(g, "derive"));
    w.str("geometry", geometry);
    w.num("J_ratio", j_ratio);
    w.raw("windows", std::to_string(windows.size()));
    w.str("note", windows.empty()
                      ? "no nontrivial factorization window: equal couplings "
                        "are required for a mediated gate"
                      : "unexpected factorization windows found");
    write_file(path, w.dump() + "\n");
    std::cout << "derive " << geometry << " (J-ratio " << j_ratio
              << "): " << windows.size() << " windows -> " << path << "\n";
  }
  return 0;
}

// ------------------------------------------------------------------ weyl

int cmd_weyl(const GlobalConfig& g, const std::string& gate_arg) {
  Matrix u;
  try {
    u = named_gate(gate_arg);
  } catch (const DomainError&) {
    std::ifstream f(gate_arg);
    if (!f) {
      std::cerr << "weyl: unknown gate and unreadable file '" << gate_arg
                << "'\n";
      return kExitUsage;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      u = matrix_from_json(ss.str());
    } catch (const std::exception& e) {
      std::cerr << "weyl: cannot parse matrix: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (u.rows() != 4 || u.cols() != 4) {
    std::cerr << "weyl: expected a 4x4 two-qubit gate\n";
    return kExitUsage;
  }
  if (!is_unitary(u, 1e-8)) {
    std::cerr << "weyl: matrix is not unitary\n";
    return kExitNumerical;
  }
  WeylPoint wp = weyl_coordinates(u);
  MakhlinInvariants mk = makhlin_invariants(u);
  bool pe = is_perfect_entangler(u);
  double cmax = max_concurrence(u);

  JsonWriter w;
  w.raw("config", config_json(g, "weyl"));
  w.str("gate", gate_arg);
  w.num("c1", angle_out(wp.c1, g));
  w.num("c2", angle_out(wp.c2, g));
  w.num("c3", angle_out(wp.c3, g));
  w.raw("g1", json_array({fmt17(mk.g1.real()), fmt17(mk.g1.imag())}));
  w.num("g2", mk.g2);
  w.boolean("perfect_entangler", pe);
  w.num("max_concurrence", cmax);
  std::string path = default_output(g, "weyl_" + gate_arg);
  if (g.format == "csv") {
    std::ostringstream os;
    os << config_csv(g, "weyl");
    os << "gate,c1,c2,c3,g1_re,g1_im,g2,perfect_entangler,max_concurrence\n";
    os << gate_arg << "," << fmt17(angle_out(wp.c1, g)) << ","
       << fmt17(angle_out(wp.c2, g)) << "," << fmt17(angle_out(wp.c3, g))
       << "," << fmt17(mk.g1.real()) << "," << fmt17(mk.g1.imag()) << ","
       << fmt17(mk.g2) << "," << (pe ? "true" : "false") << "," << fmt17(cmax)
       << "\n";
    write_file(path, os.str());
  } else {
    write_file(path, w.dump() + "\n");
  }
  std::cout << "weyl " << gate_arg << ": (" << fmt17(angle_out(wp.c1, g))
            << ", " << fmt17(angle_out(wp.c2, g)) << ", "
            << fmt17(angle_out(wp.c3, g)) << ") PE="
            << (pe ? "true" : "false") << " C_max=" << fmt17(cmax) << " -> "
            << path << "\n";
  return 0;
}

// ----------------------------------------------------------------- synth

std::vector<EntanglerLayer> parse_menu(const std::vector<std::string>& items,
                                       int n_qubits) {
  std::vector<EntanglerLayer> menu;
  for (const auto& item : items) {
    std::string tag = item;
    std::vector<int> qubits;
    auto colon = item.find(':');
    if (colon != std::string::npos) {
      tag = item.substr(0, colon);
      std::stringstream ss(item.substr(colon + 1));
      std::string part;
      while (std::getline(ss, part, ','))
        qubits.push_back(std::stoi(part));
    }
    EntanglerTag t;
    if (tag == "U2" || tag == "u2")
      t = EntanglerTag::kU2;
    else if (tag == "U3" || tag == "u3")
      t = EntanglerTag::kU3;
    else
      throw DomainError("unknown menu tag: " + tag);
    if (qubits.empty()) {
      int k = t == EntanglerTag::kU2 ? 2 : 3;
      if (k > n_qubits) throw DomainError("menu gate larger than register");
      for (int i = 1; i <= k; ++i) qubits.push_back(i);
    }
    menu.push_back(EntanglerLayer{{Entangler{t, qubits}}});
  }
  return menu;
}

int cmd_synth(const GlobalConfig& g, const std::string& target_name,
              const std::vector<std::string>& menu_items, int depth,
              int max_depth, int restarts, bool require_converged) {
  auto target = named_target(target_name);
  if (!target) {
    std::ifstream f(target_name);
    if (!f) {
      std::cerr << "synth: unknown target '" << target_name << "'\n";
      return kExitUsage;
    }
    std::stringstream ss;
    ss << f.rdbuf();
    try {
      Matrix m = matrix_from_json(ss.str());
      target = SynthesisTarget::for_gate(target_name, m);
    } catch (const std::exception& e) {
      std::cerr << "synth: cannot parse target file: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  int nq = target->kind == SynthesisTarget::Kind::kState
               ? int(std::lround(std::log2(double(target->state.size()))))
               : int(std::lround(std::log2(double(target->gate.rows()))));
  SynthesisConfig cfg;
  cfg.seed = g.seed;
  cfg.restarts = restarts;
  if (depth > 0) cfg.fixed_depth = depth;
  cfg.max_depth = max_depth;
  std::vector<EntanglerLayer> menu;
  try {
    menu = parse_menu(menu_items.empty() ? std::vector<std::string>{nq >= 3
                                                                        ? "U3"
                                                                        : "U2"}
                                         : menu_items,
                      nq);
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << "\n";
    return kExitUsage;
  }
  SynthesisReport r = synthesize(*target, menu, cfg);
  if (g.angles_in_pi)
    for (auto& a : r.angles) a /= kPi;
  std::string path = default_output(g, "synth_" + target_name);
  // report_to_json handles the full structure; prepend the config echo.
  std::string body = report_to_json(r);
  body.insert(1, "\n  \"config\": " + config_json(g, "synth") + ",");
  write_file(path, body + "\n");
  std::cout << "synth " << target_name << ": depth " << r.depth
            << " objective " << fmt17(r.objective)
            << (r.converged ? " (converged)" : " (not converged)") << " -> "
            << path << "\n";
  if (require_converged && !r.converged) return kExitUnconverged;
  return 0;
}

// ---------------------------------------------------------------- table1

int cmd_table1(const GlobalConfig& g, bool full) {
  struct Row {
    std::string name;
    std::string method;  // replay id, "synth", "w_odd", or "skip"
  };
  const std::vector<Row> rows = {
      {"PsiMinus", "synth"},   {"W3", "fig5d"},   {"W_N", "w_odd"},
      {"GHZ3", "fig5b"},       {"C4", "fig5c"},   {"CNOT", "fig4a"},
      {"sqrtSWAP", "fig4c"},   {"SWAP", "fig4e"}, {"B", "fig4g"},
      {"Toffoli", full ? "synth" : "skip"}};

  std::ostringstream os;
  os << config_csv(g, "table1");
  os << "target,kind,found_depth,objective,paper_mediated,paper_pairwise,"
        "status\n";
  for (const auto& row : rows) {
    SynthesisTarget target;
    for (const auto& cand : target_registry())
      if (cand.name == row.name) {
        target = cand;
        break;
      }
    const SynthesisTarget* t = &target;
    std::string kind =
        t->kind == SynthesisTarget::Kind::kState ? "state" : "gate";
    std::string found = "-", objective = "-", status;
    if (row.method == "skip") {
      status = "replay-unavailable;long-running;use --full";
    } else if (row.method == "w_odd") {
      SynthesisConfig cfg;
      cfg.seed = g.seed;
      SynthesisReport r = synthesize_w_odd(2, cfg);
      found = std::to_string(r.depth);
      objective = fmt17(r.objective);
      status = r.converged ? "synthesized" : "unconverged";
    } else if (row.method == "synth") {
      SynthesisConfig cfg;
      cfg.seed = g.seed;
      if (row.name == "Toffoli") {
        cfg.fixed_depth = 12;
        cfg.restarts = 16;
      }
      std::vector<EntanglerLayer> menu =
          parse_menu({row.name == "Toffoli" ? "U3" : "U2"}, 3);
      SynthesisReport r = synthesize(*t, menu, cfg);
      found = std::to_string(r.depth);
      objective = fmt17(r.objective);
      status = r.converged ? "synthesized" : "unconverged";
    } else {
      SynthesisReport r = replay_figure(row.method);
      found = std::to_string(r.depth);
      objective = fmt17(r.objective);
      status = "replay:" + row.method + ";" + r.provenance;
    }
    os << row.name << "," << kind << "," << found << "," << objective << ","
       << (t->mediated_depth ? std::to_string(*t->mediated_depth) : "-")
       << ","
       << (t->pairwise_depth ? std::to_string(*t->pairwise_depth) : "-")
       << "," << status << "\n";
  }
  std::string path = default_output(g, "table1", "csv");
  write_file(path, os.str());
  std::cout << "table1: " << rows.size() << " rows -> " << path << "\n";
  return 0;
}

// ------------------------------------------------------------ robustness

int cmd_robustness(const GlobalConfig& g, double delta_max, int points) {
  if (delta_max > 1.0 || points < 3) {
    std::cerr << "robustness: require delta-max <= 1 and points >= 3\n";
    return kExitUsage;
  }
  std::vector<double> deltas, infids;
  for (int i = 0; i < points; ++i) {
    double d = delta_max * double(i) / double(points - 1);
    deltas.push_back(d);
    infids.push_back(1.0 - detuning_fidelity(d));
  }
  // Least-squares quadratic through the origin: 1 - F = c * delta^2.
  double num = 0, den = 0;
  for (int i = 0; i < points; ++i) {
    num += deltas[i] * deltas[i] * infids[i];
    den += deltas[i] * deltas[i] * deltas[i] * deltas[i];
  }
  double coeff = den > 0 ? num / den : 0.0;

  std::string path = default_output(g, "robustness");
  if (g.format == "csv") {
    std::ostringstream os;
    os << config_csv(g, "robustness");
    os << "# quadratic_coefficient=" << fmt17(coeff) << "\n";
    os << "delta,infidelity\n";
    for (int i = 0; i < points; ++i)
      os << fmt17(deltas[i]) << "," << fmt17(infids[i]) << "\n";
    write_file(path, os.str());
  } else {
    std::vector<std::string> rows;
    for (int i = 0; i < points; ++i)
      rows.push_back(json_array({fmt17(deltas[i]), fmt17(infids[i])}));
    JsonWriter w;
    w.raw("config", config_json(g, "robustness"));
    w.num("delta_max", delta_max);
    w.raw("points", std::to_string(points));
    w.num("quadratic_coefficient", coeff);
    w.raw("sweep", json_array(rows));
    write_file(path, w.dump() + "\n");
  }
  std::cout << "robustness: coefficient " << fmt17(coeff) << " over delta <= "
            << fmt17(delta_max) << " -> " << path << "\n";
  return 0;
}

// --------------------------------------------------------------- scaling

int cmd_scaling(const GlobalConfig& g, const std::vector<int>& ns) {
  for (int n : ns)
    if (n < 1 || n % 2 == 0) {
      std::cerr << "scaling: bus sizes must be odd positive integers\n";
      return kExitUsage;
    }
  std::ostringstream os;
  os << config_csv(g, "scaling");
  os << "bus_size,mediated_depth,mediated_time_factor,pairwise_depth\n";
  for (int n : ns) {
    ScalingReport r = scaling_report(n);
    os << r.bus_size << "," << r.mediated_depth << ","
       << fmt17(r.mediated_time_factor) << "," << r.pairwise_depth << "\n";
  }
  std::string path = default_output(g, "scaling", "csv");
  write_file(path, os.str());
  std::cout << "scaling: " << ns.size() << " rows -> " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"medgate: mediated exchange-gate derivation and synthesis"};
  app.require_subcommand(1);

  GlobalConfig g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--workers", g.workers, "worker count (1 = reproducible)");
  app.add_option("-o,--output", g.output, "output file path");
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", g.tolerance, "numerical tolerance override");
  app.add_flag("--angles-in-pi", g.angles_in_pi,
               "emit angles in units of pi");

  auto* derive = app.add_subcommand("derive", "scan for mediated gates");
  std::string geometry = "linear-3";
  double j = 1.0, j_ratio = 1.0, t_max = 0.0;
  derive->add_option("--geometry", geometry, "linear-3|star-3|star-5|star-7");
  derive->add_option("--J", j, "exchange coupling");
  derive->add_option("--J-ratio", j_ratio, "J1/J2 for linear-3");
  derive->add_option("--t-max", t_max, "scan horizon");

  auto* weyl = app.add_subcommand("weyl", "characterize a two-qubit gate");
  std::string gate_arg;
  weyl->add_option("gate", gate_arg, "named gate or matrix JSON file")
      ->required();

  auto* synth = app.add_subcommand("synth", "synthesize a target");
  std::string target_name;
  std::vector<std::string> menu_items;
  int depth = 0, max_depth = 6, restarts = 48;
  bool require_converged = false;
  synth->add_option("--target", target_name, "registry name or matrix file")
      ->required();
  synth->add_option("--menu", menu_items, "entangler menu, e.g. U2 U3:1,2,3");
  synth->add_option("--depth", depth, "fixed depth (0 = incremental)");
  synth->add_option("--max-depth", max_depth, "incremental depth cap");
  synth->add_option("--restarts", restarts, "multistart count");
  synth->add_flag("--require-converged", require_converged,
                  "exit 4 unless converged");

  auto* table1 = app.add_subcommand("table1", "reproduce the depth table");
  bool full = false;
  table1->add_flag("--full", full, "include fresh Toffoli synthesis");

  auto* robustness = app.add_subcommand("robustness", "detuning sweep");
  double delta_max = 0.4;
  int points = 41;
  robustness->add_option("--delta-max", delta_max, "max detuning");
  robustness->add_option("--points", points, "sweep points");

  auto* scaling = app.add_subcommand("scaling", "spin-bus scaling table");
  std::vector<int> ns = {1, 9, 25};
  scaling->add_option("--N", ns, "odd bus sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_name() == "CallForHelp" ? 0 : kExitUsage;
  }

  try {
    if (*derive) return cmd_derive(g, geometry, j, j_ratio, t_max);
    if (*weyl) return cmd_weyl(g, gate_arg);
    if (*synth)
      return cmd_synth(g, target_name, menu_items, depth, max_depth, restarts,
                       require_converged);
    if (*table1) return cmd_table1(g, full);
    if (*robustness) return cmd_robustness(g, delta_max, points);
    if (*scaling) return cmd_scaling(g, ns);
  } catch (const DimensionError& e) {
    std::cerr << "numerical contract violation: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const DomainError& e) {
    std::cerr << "numerical contract violation: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
