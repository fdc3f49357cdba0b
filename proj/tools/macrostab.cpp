// Command-line front end: subcommands build a scenario from flags, `run`
// loads one from a JSON file.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "macrostab/catalog.hpp"
#include "macrostab/error.hpp"
#include "macrostab/kernels.hpp"
#include "macrostab/measure.hpp"
#include "macrostab/runners.hpp"
#include "macrostab/state_io.hpp"

using namespace macrostab;

namespace {

struct Common {
  std::string sizes;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "structured";
  std::string csv_dir;
  std::string geometry = "open";
  int max_sites = kDefaultMaxSites;
  std::vector<std::string> states;
  bool catalog = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_states) {
  cmd->add_option("--sizes", c.sizes, "Sizes as a:b:step, a:b or a comma list")->required();
  cmd->add_option("--seed", c.seed, "Master seed");
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "structured"}));
  cmd->add_option("--csv-dir", c.csv_dir, "Also write every CSV table into this directory");
  cmd->add_option("--geometry", c.geometry, "Chain geometry")
      ->check(CLI::IsMember({"open", "periodic"}));
  cmd->add_option("--max-sites", c.max_sites, "Site cap");
  if (with_states) {
    cmd->add_option("--state", c.states,
                    "State source, e.g. ghz, dicke:k=2, tfim-ground:h=2, file:psi_{N}.txt");
    cmd->add_flag("--catalog", c.catalog, "Add the standard state catalog");
  }
}

nlohmann::json base_document(const Common& c, const std::string& name,
                             const std::vector<std::string>& experiments) {
  nlohmann::json doc = {{"name", name},
                        {"sizes", c.sizes},
                        {"geometry", c.geometry},
                        {"max_sites", c.max_sites},
                        {"experiments", experiments},
                        {"parameters", {{"seed", c.seed}}}};
  if (!c.states.empty()) doc["states"] = c.states;
  if (c.catalog) doc["catalog"] = true;
  return doc;
}

void emit(const Report& report, const std::string& main_table, const std::string& format,
          const std::string& out, const std::string& csv_dir, const std::string& name) {
  std::string text;
  if (format == "csv") {
    const auto it = report.csv.find(main_table);
    if (it == report.csv.end()) fail(ErrorKind::kInternal, "no CSV table " + main_table);
    text = it->second;
  } else {
    text = report.body.dump(2) + "\n";
  }
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) fail(ErrorKind::kArgument, "cannot write " + out);
    f << text;
  }
  if (!csv_dir.empty()) write_csv_tables(report, name, csv_dir);
}

}  // namespace

int main(int argc, char** argv) {
  kernels::configure_threads_from_env();
  CLI::App app{"Fluctuation, clustering, decoherence and measurement-stability experiments on "
               "spin chains"};
  app.set_version_flag("--version", kVersion);
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  Common common;
  nlohmann::json params = nlohmann::json::object();
  std::string scenario_path;
  std::string table_path;
  std::string export_state_path;

  // Optional physics flags land in `params` only when given, so scenario
  // defaults stay in one place.
  const auto number_flag = [&](CLI::App* cmd, const std::string& flag, const std::string& key,
                               const std::string& help) {
    cmd->add_option_function<double>(flag, [&params, key](double v) { params[key] = v; }, help);
  };
  const auto int_flag = [&](CLI::App* cmd, const std::string& flag, const std::string& key,
                            const std::string& help) {
    cmd->add_option_function<int>(flag, [&params, key](int v) { params[key] = v; }, help);
  };
  const auto string_flag = [&](CLI::App* cmd, const std::string& flag, const std::string& key,
                               const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&params, key](const std::string& v) { params[key] = v; }, help);
  };

  auto* classify = app.add_subcommand("classify", "AFS/NFS classification over a size sweep");
  add_common(classify, common, true);

  auto* cluster = app.add_subcommand("cluster", "Cluster property: rho(x,y) and Omega(eps)");
  add_common(cluster, common, true);
  number_flag(cluster, "--epsilon", "epsilon", "Correlation threshold");

  auto* measure = app.add_subcommand("measure", "Stability against local measurements");
  add_common(measure, common, true);
  number_flag(measure, "--epsilon", "epsilon_measure", "Deviation tolerance");
  number_flag(measure, "--varepsilon", "varepsilon", "Floor on P(a)");
  int_flag(measure, "--min-distance", "min_distance", "Minimum |x - y| (default N/2)");
  measure->add_option("--deviation-table", table_path,
                      "Write the grid deviation table of the largest size of each state");

  auto* decohere = app.add_subcommand("decohere", "Decoherence rates under local noise");
  add_common(decohere, common, true);
  number_flag(decohere, "--kappa", "kappa", "Noise intensity");
  decohere->add_option_function<std::vector<std::string>>(
      "--kernel", [&params](const std::vector<std::string>& v) { params["kernels"] = v; },
      "collective, independent or exponential (repeatable)");
  string_flag(decohere, "--axis", "axis", "x, y, z or optimal");
  number_flag(decohere, "--xi", "xi", "Exponential kernel length");
  int_flag(decohere, "--n-traj", "n_traj", "Trajectories per cell (0: analytic only)");
  number_flag(decohere, "--dt", "dt", "Time step");
  number_flag(decohere, "--horizon", "horizon", "Time horizon");

  auto* ground = app.add_subcommand("ground", "Lowest two eigenpairs of a spin-chain Hamiltonian");
  add_common(ground, common, false);
  string_flag(ground, "--model", "model", "transverse-ising or xxz");
  number_flag(ground, "--J", "J", "Exchange coupling");
  number_flag(ground, "--h", "h", "Transverse field");
  number_flag(ground, "--delta", "delta", "XXZ anisotropy");
  number_flag(ground, "--B", "B", "Longitudinal field");

  auto* sb = app.add_subcommand("symmetry-breaking",
                                "Symmetric ground state against pure-phase vacuum");
  add_common(sb, common, false);
  number_flag(sb, "--J", "J", "Exchange coupling");
  number_flag(sb, "--h", "h", "Transverse field");
  number_flag(sb, "--kappa", "kappa", "Collective noise intensity");
  string_flag(sb, "--method", "method", "doublet-superposition or sb-field-limit");

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out", common.out, "Report file (default: scenario output.report or stdout)");
  run->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "structured"}));
  run->add_option("--csv-dir", common.csv_dir, "Directory for CSV tables");

  auto* exporter = app.add_subcommand("export-state", "Write a catalog state in the text format");
  std::string export_source;
  int export_size = 0;
  exporter->add_option("--state", export_source, "State source")->required();
  exporter->add_option("--size", export_size, "Number of sites")->required();
  exporter->add_option("--out", export_state_path, "Output file")->required();
  exporter->add_option("--geometry", common.geometry, "Chain geometry")
      ->check(CLI::IsMember({"open", "periodic"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (exporter->parsed()) {
      const LatticeSpec lat = LatticeSpec::chain(
          export_size, common.geometry == "open" ? Geometry::kOpenChain : Geometry::kPeriodicChain,
          kHardMaxSites);
      export_state(StateSource::parse(export_source).build(lat), export_state_path);
      return 0;
    }

    Scenario scenario;
    std::string main_table;
    if (run->parsed()) {
      scenario = Scenario::load(scenario_path);
      main_table = to_string(scenario.experiments.front());
      if (common.out.empty()) common.out = scenario.report_path;
      if (common.csv_dir.empty()) common.csv_dir = scenario.csv_dir;
    } else {
      CLI::App* cmd = app.get_subcommands().front();
      main_table = cmd->get_name();
      if (main_table == "symmetry-breaking") main_table = "symmetry_breaking";
      nlohmann::json doc = base_document(common, cmd->get_name(), {cmd->get_name()});
      for (const auto& item : params.items()) doc["parameters"][item.key()] = item.value();
      scenario = Scenario::from_json(doc);
    }
    const Report report = run_scenario(scenario);
    if (main_table == "symmetry-breaking") main_table = "symmetry_breaking";
    emit(report, main_table, common.format, common.out, common.csv_dir, scenario.name);

    if (!table_path.empty()) {
      std::ofstream f(table_path);
      if (!f) fail(ErrorKind::kArgument, "cannot write " + table_path);
      f << "state,N,x,y,dir_a,dir_b,a,b,p_b_given_a,p_b,deviation\n";
      const int n = scenario.sizes.back();
      const LatticeSpec lat = scenario.lattice(n);
      const StabilityParams sp{scenario.params.epsilon_measure, scenario.params.varepsilon,
                               scenario.params.min_distance_for(n)};
      for (const std::string& source : scenario.states) {
        const StateVector psi = StateSource::parse(source).build(lat);
        for (const DeviationRow& r : deviation_table(lat, compute_pauli_moments(psi), sp)) {
          char line[256];
          std::snprintf(line, sizeof line, "%d,%d,%d,%d,%d,%d,%.17g,%.17g,%.17g\n", r.x, r.y,
                        r.grid_a, r.grid_b, r.a, r.b, r.p_b_given_a, r.p_b, r.deviation);
          f << source << ',' << n << ',' << line;
        }
      }
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "macrostab: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
