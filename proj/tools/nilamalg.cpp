// nilamalg: check embeddability conditions of class-two amalgams.
//
//   nilamalg check [--condition C] [--format json|text] [--method closure|brute]
//                  [--kmax N] [--timing] FILE.amg
//   nilamalg counterexample --q N (--mod M | --integral) [--format json|text]
//   nilamalg catalog
//
// Exit status: 0 every selected condition holds, 1 a condition is violated,
// 2 parse, precondition or parameter error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nilamalg/nilamalg.hpp"

namespace {

  constexpr int exit_hold      = 0;
  constexpr int exit_violated  = 1;
  constexpr int exit_rejected  = 2;

  int run_check_command(std::string const&       path,
                        std::string const&       condition,
                        std::string const&       format,
                        nilamalg::CheckOptions   opt,
                        bool                     timing) {
    nilamalg::AmalgamInstance inst     = nilamalg::parse_instance(path);
    auto                      outcomes = nilamalg::run_check(inst, condition, opt);
    if (format == "json") {
      std::cout << nilamalg::to_json(inst, outcomes, timing).dump(2) << "\n";
    } else {
      std::cout << nilamalg::to_text(inst, outcomes, timing);
    }
    return nilamalg::all_hold(outcomes) ? exit_hold : exit_violated;
  }

  int run_counterexample_command(std::string const&         q,
                                 std::optional<std::string> modulus,
                                 std::string const&         format) {
    std::optional<nilamalg::Int> m;
    if (modulus) {
      m = nilamalg::Int(*modulus);
    }
    auto bundle = nilamalg::build_counterexample(nilamalg::Int(q), m);
    auto report = nilamalg::verify_counterexample(bundle);
    if (format == "json") {
      std::cout << nilamalg::to_json(bundle, report).dump(2) << "\n";
    } else {
      std::cout << nilamalg::to_text(bundle, report);
    }
    return report.passed() ? exit_hold : exit_violated;
  }

  void print_catalog() {
    for (auto const& e : nilamalg::catalog_entries()) {
      std::string head = e.key + (e.params.empty() ? "" : " " + e.params);
      std::cout << head << std::string(head.size() < 22 ? 22 - head.size() : 1, ' ')
                << e.description << "\n";
    }
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embeddability conditions for amalgams of class-two nilpotent groups"};
  app.require_subcommand(1);

  std::string format = "text";

  auto*       check = app.add_subcommand("check", "run condition checkers on an .amg instance");
  std::string path;
  std::string condition = "decide";
  std::string method    = "closure";
  std::size_t k_max     = 3;
  bool        timing    = false;
  check->add_option("file", path, "instance file")->required();
  check->add_option("--condition", condition, "condition to check")
      ->check(CLI::IsMember({"cond1", "cond2", "korollar3", "star", "star_star", "satz2_central",
                             "decide", "all"}));
  check->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  check->add_option("--method", method, "condition (2) method")
      ->check(CLI::IsMember({"closure", "brute"}));
  check->add_option("--kmax", k_max, "longest product for --method brute");
  check->add_flag("--timing", timing, "report wall-clock time per checker");

  auto*                      cex = app.add_subcommand("counterexample", "verify the (*) counterexample");
  std::string                q;
  std::optional<std::string> modulus;
  bool                       integral = false;
  cex->add_option("--q", q, "order of the cyclic factor")->required();
  auto* mod_opt = cex->add_option("--mod", modulus, "modulus of the finite Heisenberg quotient");
  auto* int_opt = cex->add_flag("--integral", integral, "use the Heisenberg group over Z");
  mod_opt->excludes(int_opt);
  cex->add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));

  app.add_subcommand("catalog", "list built-in groups");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : exit_rejected;
  }

  try {
    if (check->parsed()) {
      nilamalg::CheckOptions opt;
      opt.method = method == "brute" ? nilamalg::Condition2Method::brute
                                     : nilamalg::Condition2Method::closure;
      opt.k_max  = k_max;
      return run_check_command(path, condition, format, opt, timing);
    }
    if (cex->parsed()) {
      if (!modulus && !integral) {
        std::cerr << "counterexample: give --mod M or --integral\n";
        return exit_rejected;
      }
      return run_counterexample_command(q, modulus, format);
    }
    print_catalog();
    return exit_hold;
  } catch (nilamalg::PreconditionError const& e) {
    std::cerr << "precondition not met: " << e.what() << "\n";
  } catch (nilamalg::Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (std::exception const& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return exit_rejected;
}
