#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <map>
#include <tuple>
#include <sys/wait.h>

#include "json.hpp"
#include "instance_catalog.hpp"

using namespace nilamalg;

namespace {

  std::string instance_path(std::string const& name) {
    return std::string(NILAMALG_INSTANCES) + "/" + name;
  }

  struct Run {
    int         status;
    std::string out;
  };

  Run run_cli(std::string const& args) {
    std::string cmd = std::string("\"") + NILAMALG_CLI + "\" " + args + " 2>/dev/null";
    FILE*       p   = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string           out;
    std::array<char, 4096> buf{};
    std::size_t           n;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) {
      out.append(buf.data(), n);
    }
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
  }

  AmgError parse_error(std::string const& text) {
    try {
      parse_amg(text, "t.amg");
    } catch (AmgError const& e) {
      return e;
    }
    FAIL("expected a parse error for:\n" << text);
    throw std::logic_error("unreachable");
  }

  std::string const heisenberg4 = "group H\n"
                                  "  gen x 4\n"
                                  "  gen y 4\n"
                                  "  cgen z 4\n"
                                  "  comm y x = z\n"
                                  "end\n";

}  // namespace

TEST_CASE("parser diagnostics", "[cli]") {
  auto empty = parse_error("");
  CHECK(empty.kind() == AmgError::Kind::syntax);

  auto comments = parse_error("# nothing\n\n");
  CHECK(comments.kind() == AmgError::Kind::syntax);

  auto mal = parse_error("group H\n  gen x 0\n  gen y 0\n  cgen z 0\n  comm y x = x\nend\n");
  CHECK(mal.kind() == AmgError::Kind::malformed_relation);
  CHECK(mal.line() == 5);
  CHECK(std::string(mal.what()).rfind("t.amg:5:", 0) == 0);

  auto unknown = parse_error("group H\n  gen x 2\n  frob y\nend\n");
  CHECK(unknown.kind() == AmgError::Kind::syntax);
  CHECK(unknown.line() == 3);
  CHECK(unknown.column() == 3);

  auto bad_order = parse_error("group H\n  gen x -3\nend\n");
  CHECK(bad_order.line() == 2);

  auto unterminated = parse_error("group H\n  gen x 2\n");
  CHECK(unterminated.kind() == AmgError::Kind::syntax);

  // z of order 4 with r^2 = z, s^2 = e, [s,r] = z is not consistent
  auto inc = parse_error("group G\n  gen r 2\n  gen s 2\n  cgen z 4\n  pow r = z\n"
                         "  comm s r = z\nend\n");
  CHECK(inc.kind() == AmgError::Kind::inconsistent);

  auto hom = parse_error(heisenberg4 + "embed f H -> H\n  x -> x\n  y -> x\n  z -> z\nend\n");
  CHECK(hom.kind() == AmgError::Kind::not_homomorphic);
  CHECK(hom.line() == 7);

  auto partial = parse_error(heisenberg4 + "embed f H -> H\n  x -> x\nend\n");
  CHECK(partial.kind() == AmgError::Kind::invalid);

  std::string const ident = "embed f H -> H\n  x -> x\n  y -> y\n  z -> z\nend\n";
  auto missing = parse_error(heisenberg4 + ident
                             + "instance\n  A = H\n  B = H\n  D = Q\n  iota_A = f\n  iota_B = f\nend\n");
  CHECK(missing.line() == 15);
  auto unset = parse_error(heisenberg4 + ident + "instance\n  A = H\n  B = H\nend\n");
  CHECK(unset.kind() == AmgError::Kind::invalid);
  CHECK(unset.line() == 12);
  auto reserved = parse_error("group H\n  gen e 2\nend\n");
  CHECK(reserved.line() == 2);

  CHECK_THROWS_AS(parse_instance_text(heisenberg4), AmgError);
  CHECK_THROWS_AS(parse_instance("/nonexistent/file.amg"), Error);
}

TEST_CASE("catalog groups in files", "[cli]") {
  auto f = parse_amg("group Z = catalog heisenberg_Z\n"
                     "group M = catalog heisenberg_mod 6\n"
                     "group E = catalog extraspecial 3 -\n"
                     "group F = catalog free_abelian 3\n");
  CHECK(f.groups.at("Z")->same_structure(*make_heisenberg(0)));
  CHECK(f.groups.at("M")->same_structure(*make_heisenberg(6)));
  CHECK(f.groups.at("E")->same_structure(*make_extraspecial(3, false)));
  CHECK(f.groups.at("F")->same_structure(*make_free_abelian(3)));
  CHECK(f.groups.at("M")->name() == "M");
  CHECK_FALSE(f.instance);
  CHECK_THROWS_AS(parse_amg("group X = catalog nosuch 2\n"), AmgError);
}

TEST_CASE("shipped counterexample mirrors the built bundle", "[cli]") {
  for (auto [file, q, m] : {std::tuple{"counterexample_q2_m4.amg", 2, 4},
                            std::tuple{"counterexample_q3_m9.amg", 3, 9}}) {
    INFO(file);
    auto parsed = parse_instance(instance_path(file));
    auto built  = build_counterexample(q, Int(m)).instance();
    CHECK(parsed.A->same_structure(*built.A));
    CHECK(parsed.B->same_structure(*built.B));
    CHECK(parsed.D->same_structure(*built.D));
    for (std::size_t k = 0; k < built.iota_A.images().size(); ++k) {
      CHECK(to_string(parsed.iota_A.images()[k]) == to_string(built.iota_A.images()[k]));
      CHECK(to_string(parsed.iota_B.images()[k]) == to_string(built.iota_B.images()[k]));
    }
  }
  auto integral = parse_instance(instance_path("counterexample_q2_integral.amg"));
  CHECK(integral.D->same_structure(*build_counterexample(2, std::nullopt).D));
}

TEST_CASE("write_instance round trip", "[cli]") {
  std::vector<AmalgamInstance> insts;
  for (auto const& entry : std::filesystem::directory_iterator(NILAMALG_INSTANCES)) {
    insts.push_back(parse_instance(entry.path().string()));
  }
  insts.push_back(catalog::q8_d8().instance);
  auto small = catalog::small_instances();
  for (std::size_t i = 0; i < small.size(); i += 17) {
    insts.push_back(small[i].instance);
  }
  for (auto const& inst : insts) {
    std::string text  = write_instance(inst);
    INFO(text);
    auto        again = parse_instance_text(text);
    CHECK(again.A->same_structure(*inst.A));
    CHECK(again.B->same_structure(*inst.B));
    CHECK(again.D->same_structure(*inst.D));
    CHECK(write_instance(again) == text);
    CHECK(check_condition1(again).holds == check_condition1(inst).holds);
  }
}

TEST_CASE("report JSON round trip", "[cli]") {
  auto inst = build_counterexample(2, Int(4)).instance();
  auto star = check_star(inst);
  REQUIRE_FALSE(star.holds);
  Json j = to_json(inst, star);
  CHECK(j["holds"] == false);
  CHECK(j["witness"]["q"] == "2");
  CHECK(j["witness"]["elements"][0]["name"] == "a");
  CHECK(j["witness"]["elements"][0]["group"] == "A");
  CHECK(j["witness"]["elements"][0]["word"] == "x");
  CHECK(j["witness"]["elements"][1]["group"] == "B");
  CHECK(j["witness"]["elements"][1]["word"] == "t*y");
  CHECK(j["witness"]["elements"][2]["word"] == "z^2");

  auto back = report_from_json(inst, Json::parse(j.dump()));
  CHECK(witness_is_violation(inst, back));
  CHECK(to_json(inst, back) == j);

  auto [name, qd] = catalog::q8_d8();
  for (auto const& r : {check_condition1(qd), check_condition2(qd), decide_embeddability(qd)}) {
    Json rj = to_json(qd, r);
    auto rb = report_from_json(qd, rj);
    CHECK(rb.holds == r.holds);
    CHECK(to_json(qd, rb) == rj);
    if (!r.holds) {
      CHECK(witness_is_violation(qd, rb));
    }
  }
}

TEST_CASE("check selectors through the library", "[cli]") {
  auto cex = parse_instance(instance_path("counterexample_q2_m4.amg"));
  auto all = run_check(cex, "all");
  REQUIRE(all.size() == condition_selectors().size());
  std::map<std::string, CheckOutcome::Status> status;
  for (auto const& o : all) {
    status[o.selector] = o.status;
  }
  CHECK(status["star"] == CheckOutcome::Status::violated);
  CHECK(status["star_star"] == CheckOutcome::Status::holds);
  CHECK(status["decide"] == CheckOutcome::Status::holds);
  CHECK(status["satz2_central"] == CheckOutcome::Status::not_applicable);
  CHECK_FALSE(all_hold(all));

  auto klein = parse_instance(instance_path("abelian_klein.amg"));
  auto d     = run_check(klein, "decide");
  REQUIRE(d.size() == 1);
  CHECK(d[0].report->criterion == "central");

  auto integral = parse_instance(instance_path("counterexample_q2_integral.amg"));
  CHECK_THROWS_AS(run_check(integral, "star"), PreconditionError);
  CHECK_THROWS_AS(run_check(klein, "bogus"), InvalidArgument);
}

TEST_CASE("command line", "[cli]") {
  auto star = run_cli("check --condition star " + instance_path("counterexample_q2_m4.amg"));
  CHECK(star.status == 1);
  CHECK(star.out.find("t*y") != std::string::npos);

  auto ss = run_cli("check --condition star_star --format json "
                    + instance_path("counterexample_q2_m4.amg"));
  CHECK(ss.status == 0);
  auto sj = Json::parse(ss.out);
  CHECK(sj["results"][0]["status"] == "holds");
  CHECK(sj["all_hold"] == true);

  auto klein = run_cli("check --format json " + instance_path("abelian_klein.amg"));
  CHECK(klein.status == 0);
  CHECK(Json::parse(klein.out)["results"][0]["report"]["criterion"] == "central");

  auto neg = run_cli("check --format json " + instance_path("q8_d8.amg"));
  CHECK(neg.status == 1);
  auto nj = Json::parse(neg.out);
  CHECK(nj["results"][0]["report"]["criterion"] == "condition1");
  auto inst = parse_instance(instance_path("q8_d8.amg"));
  CHECK(witness_is_violation(inst, report_from_json(inst, nj["results"][0]["report"])));

  auto brute = run_cli("check --condition cond2 --method brute --kmax 2 "
                       + instance_path("dihedral_cyclic.amg"));
  CHECK(brute.status == 1);

  CHECK(run_cli("check --condition star " + instance_path("counterexample_q2_integral.amg")).status
        == 2);
  CHECK(run_cli("check " + instance_path("nonexistent.amg")).status == 2);
  CHECK(run_cli("check --condition nosuch " + instance_path("abelian_klein.amg")).status == 2);

  CHECK(run_cli("counterexample --q 2 --mod 4").status == 0);
  auto integral = run_cli("counterexample --q 2 --integral");
  CHECK(integral.status == 0);
  CHECK(integral.out.find("finite-only") != std::string::npos);
  CHECK(run_cli("counterexample --q 2 --mod 2").status == 2);
  CHECK(run_cli("counterexample --q 2").status == 2);
  CHECK(run_cli("counterexample --q 2 --mod 4 --integral").status == 2);

  auto cat = run_cli("catalog");
  CHECK(cat.status == 0);
  CHECK(cat.out.find("heisenberg_mod") != std::string::npos);
  CHECK(run_cli("").status == 2);
}

TEST_CASE("output is deterministic", "[cli]") {
  for (auto const& entry : std::filesystem::directory_iterator(NILAMALG_INSTANCES)) {
    std::string file = entry.path().string();
    INFO(file);
    auto first  = run_cli("check --format json --condition all " + file);
    auto second = run_cli("check --format json --condition all " + file);
    CHECK(first.status == second.status);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}
