#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptops/cli.hpp"

namespace {

/** Reconstructs the invocation deterministically for the report header. */
std::string echo_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

int emit(const ptops::CmdResult& res, const std::string& format) {
  ptops::Json machine = ptops::report_to_json(res.report);
  if (format == "machine")
    std::cout << ptops::canonical_text(machine);
  else
    std::cout << ptops::render_human(machine);
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"presheaf-topos analysis: atomicity, right adjoints, cohesion, verification"};
  app.require_subcommand(1);

  std::string format = "human";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"human", "machine"}))
      ->capture_default_str();

  ptops::CmdOptions opt;
  app.add_option("--bound", opt.bound, "enumeration bound (elements per object)")
      ->capture_default_str();
  app.add_option("--budget", opt.budget_states, "search-state budget per enumeration")
      ->capture_default_str();
  app.add_option("--family", opt.family_files,
                 "extra presheaf files appended to the test family");

  std::string site_file, atom = "1", target = "2", suite;
  std::vector<std::string> presheaf_files;

  CLI::App* validate = app.add_subcommand("validate", "law-check a site file");
  validate->fallthrough();
  validate->add_option("site", site_file, "site file")->required();

  CLI::App* atoms = app.add_subcommand("atoms", "atomicity verdicts with certificates");
  atoms->fallthrough();
  atoms->add_option("site", site_file, "site file")->required();
  atoms->add_option("--presheaf", presheaf_files, "presheaf files to test");

  CLI::App* radj = app.add_subcommand("radj", "right adjoint to exponentiation, tabulated");
  radj->fallthrough();
  radj->add_option("site", site_file, "site file")->required();
  radj->add_option("--atom", atom, "the exponent object")->capture_default_str();
  radj->add_option("--target", target, "the object to transport")->capture_default_str();

  CLI::App* cohesion = app.add_subcommand("cohesion", "cohesion diagnostics for a site");
  cohesion->fallthrough();
  cohesion->add_option("site", site_file, "site file")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a named verification suite");
  verify->fallthrough();
  verify->add_option("--suite", suite, "suite id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);  // prints help or the parse error
    return code == 0 ? 0 : ptops::kExitInputError;
  }

  opt.command_echo = echo_args(argc, argv);
  auto started = std::chrono::steady_clock::now();

  ptops::CmdResult res;
  if (validate->parsed())
    res = ptops::cmd_validate(site_file, opt);
  else if (atoms->parsed())
    res = ptops::cmd_atoms(site_file, opt, presheaf_files);
  else if (radj->parsed())
    res = ptops::cmd_radj(site_file, atom, target, opt);
  else if (cohesion->parsed())
    res = ptops::cmd_cohesion(site_file, opt);
  else
    res = ptops::cmd_verify(suite, opt);

  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();
  std::cerr << "elapsed: " << elapsed << " ms\n";  // timing never enters the report
  return emit(res, format);
}
