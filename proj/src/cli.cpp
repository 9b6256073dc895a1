#include "kmlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kmlab/report.hpp"

namespace kmlab {

namespace {

std::vector<IdentityId> parse_identity_list(const std::string& text) {
  if (text == "all") return all_identities();
  std::vector<IdentityId> out;
  if (text == "none") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(identity_from_string(item));
    } catch (const std::invalid_argument& e) {
      throw input_error("--identities", e.what());
    }
  }
  return out;
}

double parse_tolerance(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double t = std::stod(text, &used);
    if (used == text.size() && t > 0.0) return t;
  } catch (const std::exception&) {
  }
  throw input_error(where, "tolerance must be a positive number, got '" + text + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error(path, "cannot read input file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"kmlab: (kappa,mu)-structures on three-dimensional metric Lie algebras"};
  app.name("kmlab");
  app.require_subcommand(1);
  app.fallthrough();

  std::string mode_text = "exact";
  std::string tol_text;
  std::string identities_text = "all";
  std::string format = "json";
  std::string alpha_text;
  app.add_option("--mode", mode_text, "exact (rational) or float arithmetic")
      ->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", tol_text, "float-mode tolerance (overrides KMLAB_TOL)");
  app.add_option("--identities", identities_text, "all, none or a comma separated list of identity ids");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--dhomothety", alpha_text, "apply a D-homothety with this alpha before analysis");

  std::string file;
  auto* analyze_cmd = app.add_subcommand("analyze", "analyze an input document");
  analyze_cmd->add_option("file", file, "JSON input document")->required();

  std::string family;
  std::string params_text;
  std::string sweep_text;
  auto* family_cmd = app.add_subcommand("family", "analyze a member of a named family");
  family_cmd->add_option("name", family, "contact, nilpotent1, nilpotent2, para, para-general, pcm-canonical, apcos-canonical")
      ->required();
  family_cmd->add_option("--params", params_text, "parameters, e.g. k=1,lambda=2,c=0");
  family_cmd->add_option("--sweep", sweep_text, "parameter grid, e.g. \"k=1;lambda=0..3;c=*\"");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "kmlab: parse error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    const Mode mode = mode_text == "float" ? Mode::Float : Mode::Exact;
    if (!tol_text.empty()) {
      set_tolerance(parse_tolerance(tol_text, "--tol"));
    } else if (const char* env = std::getenv("KMLAB_TOL"); env != nullptr && *env != '\0') {
      set_tolerance(parse_tolerance(env, "KMLAB_TOL"));
    }

    ReportOptions opt;
    opt.mode = mode;
    opt.identities = parse_identity_list(identities_text);
    if (!alpha_text.empty()) {
      try {
        opt.dhomothety = Scalar::parse(alpha_text, mode);
      } catch (const scalar_error& e) {
        throw input_error("--dhomothety", e.what());
      }
    }

    if (*family_cmd && !sweep_text.empty()) {
      if (opt.dhomothety) throw input_error("--sweep", "cannot be combined with --dhomothety");
      const auto rows = run_sweep(family, sweep_text, parse_params(params_text, mode), mode);
      if (format == "json") {
        out << dump_canonical(sweep_to_json(family, rows));
      } else {
        out << sweep_to_text(rows);
      }
      return kExitOk;
    }

    InputDocument in;
    if (*analyze_cmd) {
      in = parse_input_text(read_file(file), mode);
    } else {
      in.family = FamilySpec::make(family, parse_params(params_text, mode));
    }
    const Report report = make_report(in, opt);
    if (format == "json") {
      out << dump_canonical(report_to_json(report));
    } else {
      out << report_to_text(report);
    }
    return kExitOk;
  } catch (const input_error& e) {
    err << "kmlab: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const family_error& e) {
    err << "kmlab: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const scalar_error& e) {
    err << "kmlab: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const validation_error& e) {
    err << "kmlab: validation error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "kmlab: validation error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::logic_error& e) {
    err << "kmlab: validation error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace kmlab
