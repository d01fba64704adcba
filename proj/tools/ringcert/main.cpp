#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "commands.hpp"
#include "ringcert/errors.hpp"

namespace {

using namespace ringcert::cli;

const std::map<std::string, Format> kFormats{{"text", Format::text}, {"json", Format::json}};

void add_instance_flags(CLI::App& cmd, RunConfig& cfg) {
  cmd.add_option("--dim", cfg.dim, "Dimension d of the local domain (h = d - 1)")->capture_default_str();
  cmd.add_option("--precision", cfg.precision, "x-adic truncation N")->capture_default_str();
  cmd.add_option("--seed", cfg.seed, "Seed of the generic series")->capture_default_str();
  cmd.add_option("--order", cfg.order, "Term order: adapted, grevlex, lex, block:k[/...], wgrevlex:w1,...")
      ->capture_default_str();
  cmd.add_option("--dim-cap", cfg.dim_cap, "Largest accepted dimension")->capture_default_str();
}

void add_output_flags(CLI::App& cmd, Format& format, std::string& out) {
  cmd.add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case));
  cmd.add_option("--out", out, "Write the result to this file instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Groebner-basis certificates for a non-integrally-closed extended prime"};
  app.require_subcommand(1);

  RunConfig build_cfg;
  auto* build = app.add_subcommand("build", "Build an instance and print it");
  add_instance_flags(*build, build_cfg);
  add_output_flags(*build, build_cfg.format, build_cfg.out);

  RunConfig verify_cfg;
  std::size_t verify_rmax = 0;
  std::vector<std::string> checks;
  auto* verify = app.add_subcommand("verify", "Run the verification suite and emit a certificate");
  add_instance_flags(*verify, verify_cfg);
  add_output_flags(*verify, verify_cfg.format, verify_cfg.out);
  verify->add_option("--nmax", verify_cfg.n_max, "Largest exponent tried by the reduction criterion")
      ->capture_default_str();
  auto* rmax_opt = verify->add_option("--rmax", verify_rmax, "Highest prime-witness level (default min(6, N-1))");
  verify->add_option("--check", checks, "Run only this check family (repeatable)")->take_all();
  verify->add_option("--threads", verify_cfg.threads, "Checks run concurrently on this many threads")
      ->capture_default_str();
  auto* inst_opt = verify->add_option("--instance", verify_cfg.instance_file, "Verify an instance JSON file");
  for (const char* flag : {"--dim", "--precision", "--seed", "--order"}) inst_opt->excludes(verify->get_option(flag));

  EndpieceConfig ep_cfg;
  std::string alpha_coeffs, beta_coeffs;
  auto* endpieces = app.add_subcommand("endpieces", "List endpiece decompositions up to level r");
  add_instance_flags(*endpieces, ep_cfg.run);
  add_output_flags(*endpieces, ep_cfg.run.format, ep_cfg.run.out);
  endpieces->add_option("--r", ep_cfg.r, "Highest level")->required();
  endpieces->add_option("--alpha-coeffs", alpha_coeffs, "Fixture coefficients a_1,a_2,... of the first series");
  endpieces->add_option("--beta-coeffs", beta_coeffs, "Fixture coefficients of the second series");

  MembershipConfig mem_cfg;
  std::string local;
  auto* membership = app.add_subcommand("membership", "Decide ideal membership, optionally after localizing");
  membership->add_option("--ideal", mem_cfg.ideal_file, "Ideal JSON file")->required();
  membership->add_option("--element", mem_cfg.element_file, "Polynomial JSON file (object or text string)")
      ->required();
  membership->add_option("--local", local, "Localize at the ideal of these variables, e.g. x,y,z");
  membership->add_flag("--witness", mem_cfg.witness, "Print the Groebner basis behind the verdict");
  add_output_flags(*membership, mem_cfg.format, mem_cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  }

  auto split = [](const std::string& text) {
    std::vector<std::string> parts;
    std::string item;
    for (char c : text + ",") {
      if (c == ',') {
        if (!item.empty()) parts.push_back(item);
        item.clear();
      } else if (c != ' ') {
        item += c;
      }
    }
    return parts;
  };

  try {
    if (*build) return cmd_build(build_cfg, std::cout, std::cerr);
    if (*verify) {
      if (*rmax_opt) verify_cfg.r_max = verify_rmax;
      verify_cfg.checks.insert(checks.begin(), checks.end());
      return cmd_verify(verify_cfg, std::cout, std::cerr);
    }
    if (*endpieces) {
      ep_cfg.fixtures = {split(alpha_coeffs), split(beta_coeffs)};
      if (ep_cfg.run.dim != 3 && !beta_coeffs.empty())
        throw UsageError("--beta-coeffs applies to d = 3 only");
      if (ep_cfg.run.dim != 3) ep_cfg.fixtures.resize(1);
      return cmd_endpieces(ep_cfg, std::cout, std::cerr);
    }
    if (*membership) {
      mem_cfg.local = split(local);
      return cmd_membership(mem_cfg, std::cout, std::cerr);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ringcert::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ringcert::StructuralError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
