#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "ptops/cli.hpp"
#include "test_sites.hpp"

using namespace ptops;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("ptops_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

std::string site_text(const CatPtr& c) { return canonical_text(site_to_json(*c)); }

}  // namespace

TEST_CASE("site documents round-trip through the canonical form") {
  for (const BuiltinSite& bs : builtin_sites()) {
    CAPTURE(bs.id);
    Json doc = site_to_json(*bs.cat);
    CatResult res = validate_category(site_from_json(doc));
    REQUIRE(res.ok());
    CHECK(*res.cat == *bs.cat);
    CHECK(site_digest(*res.cat) == site_digest(*bs.cat));
    CHECK(canonical_text(site_to_json(*res.cat)) == canonical_text(doc));
  }
}

TEST_CASE("site digests separate sites and ignore nothing") {
  CHECK(site_digest(*builtin_site("chain3").cat) != site_digest(*builtin_site("set-e").cat));
  CHECK(site_digest(*builtin_site("terminal").cat) !=
        site_digest(*builtin_site("discrete2").cat));
}

TEST_CASE("site documents reject malformed shapes") {
  CHECK_THROWS_AS((void)site_from_json(Json::array()), InputError);
  CHECK_THROWS_AS((void)site_from_json(Json{{"arrows", Json::array()}}), InputError);
  Json bad = {{"objects", {"a"}}, {"compose", {{"f", "g"}}}};
  CHECK_THROWS_AS((void)site_from_json(bad), InputError);
}

TEST_CASE("presheaf documents round-trip and sort elements") {
  CatPtr chain = builtin_site("chain3").cat;
  Workspace w(chain);
  for (const Presheaf& x : {w.omega_obj().obj, w.two(), w.rep(0), w.zero()}) {
    Json doc = presheaf_to_json(x);
    Presheaf back = presheaf_from_json(doc, chain);
    CHECK(canonical_text(presheaf_to_json(back)) == canonical_text(doc));
    CHECK(back.total() == x.total());
    REQUIRE(iso_search(back, x).has_value());
  }
}

TEST_CASE("presheaf ingestion applies variance and validates laws") {
  CatPtr sete = builtin_site("set-e").cat;

  // the covariant form of a two-point set with an idempotent collapse
  Json doc = {{"variance", "copresheaf"},
              {"sets", {{"x", {"a", "b"}}}},
              {"action", {{"e", {{"a", "a"}, {"b", "a"}}}}}};
  Presheaf p = presheaf_from_json(doc, sete);
  CHECK(p.size(0) == 2);
  CHECK(p.apply(sete->arrow_index("e"), 1) == 0);

  // the one-idempotent site is self-opposite, but the chain is not
  CatPtr chain = builtin_site("chain3").cat;
  Json on_chain = {{"variance", "copresheaf"},
                   {"site", site_to_json(*chain)},
                   {"sets", {{"0", Json::array()}, {"m", Json::array()}, {"1", Json::array()}}}};
  CHECK_THROWS_AS((void)presheaf_from_json(on_chain, chain), InputError);

  // non-functorial action tables are rejected with the law in the message
  Json bad = {{"sets", {{"x", {"a", "b", "c"}}}},
              {"action", {{"e", {{"a", "a"}, {"b", "a"}, {"c", "b"}}}}}};
  CHECK_THROWS_AS((void)presheaf_from_json(bad, sete), InputError);

  // incomplete action tables are schema errors
  Json missing = {{"sets", {{"x", {"a", "b"}}}}, {"action", {{"e", {{"a", "a"}}}}}};
  CHECK_THROWS_AS((void)presheaf_from_json(missing, sete), InputError);
  Json unknown = {{"sets", {{"y", {"a"}}}}};
  CHECK_THROWS_AS((void)presheaf_from_json(unknown, sete), InputError);
}

TEST_CASE("reports round-trip between struct and machine form") {
  Report r;
  r.version = kToolVersion;
  r.command = "ptops atoms site.json --bound 3";
  r.site_digest = "0123456789abcdef";
  r.budget_states = 42;
  r.budget_subobjects = 7;
  r.results = {{"verdicts", Json::array()}, {"bound", 3}};
  CHECK(report_from_json(report_to_json(r)) == r);
  CHECK(render_machine(r) == render_machine(r));
  CHECK(render_human(report_to_json(r)).find("ptops") == 0);
}

TEST_CASE("validate command distinguishes law failures from parse failures") {
  TempDir tmp;

  std::string good = tmp.write("sete.json", site_text(builtin_site("set-e").cat));
  CmdResult ok = cmd_validate(good);
  CHECK(ok.exit_code == kExitPass);
  CHECK(ok.report.results.at("valid") == true);
  CHECK(!ok.report.site_digest.empty());

  std::string missing = tmp.write("missing.json", R"({
    "objects": ["a", "b", "c"],
    "arrows": [{"name": "f", "dom": "a", "cod": "b"},
               {"name": "g", "dom": "b", "cod": "c"}]
  })");
  CmdResult law = cmd_validate(missing);
  CHECK(law.exit_code == kExitCheckFailed);
  bool found = false;
  for (const Json& e : law.report.results.at("errors"))
    if (e.get<std::string>().find("missing composite") != std::string::npos) found = true;
  CHECK(found);

  std::string garbled = tmp.write("bad.json", "{ objects: [ ");
  CHECK(cmd_validate(garbled).exit_code == kExitInputError);
  CHECK(cmd_validate(tmp.dir.string() + "/absent.json").exit_code == kExitInputError);
}

TEST_CASE("atoms command reports certificates for the idempotent site") {
  TempDir tmp;
  std::string site = tmp.write("sete.json", site_text(builtin_site("set-e").cat));
  CmdOptions opt;
  opt.bound = 4;
  CmdResult res = cmd_atoms(site, opt);
  REQUIRE(res.exit_code == kExitPass);
  const Json& verdicts = res.report.results.at("verdicts");
  CHECK(verdicts.size() == 13);  // the representable plus twelve enumerated objects
  int atomic = 0;
  for (const Json& v : verdicts) {
    if (v.at("atomic").get<bool>()) {
      ++atomic;
      CHECK(v.at("connected") == true);
      CHECK(v.at("witnesses").get<int>() >= 1);
    } else {
      CHECK(v.at("refuted_at") == "x");
    }
  }
  CHECK(atomic == 1);

  // identical invocations must render byte-identically
  CmdResult again = cmd_atoms(site, opt);
  CHECK(render_machine(again.report) == render_machine(res.report));
}

TEST_CASE("atoms command accepts user presheaf files") {
  TempDir tmp;
  CatPtr chain = builtin_site("chain3").cat;
  std::string site = tmp.write("chain3.json", site_text(chain));
  Workspace w(chain);
  std::string target = tmp.write("omega.json", canonical_text(presheaf_to_json(w.omega_obj().obj)));
  CmdOptions opt;
  opt.bound = 1;
  CmdResult res = cmd_atoms(site, opt, {target});
  REQUIRE(res.exit_code == kExitPass);
  bool found = false;
  for (const Json& v : res.report.results.at("verdicts"))
    if (v.at("name") == target) {
      found = true;
      CHECK(v.at("atomic") == false);
    }
  CHECK(found);

  // three atomic representables on the chain
  int atomic_reps = 0;
  for (const Json& v : res.report.results.at("verdicts"))
    if (v.at("name").get<std::string>().rfind("y_", 0) == 0 && v.at("atomic").get<bool>())
      ++atomic_reps;
  CHECK(atomic_reps == 3);
}

TEST_CASE("radj command tabulates two along the middle representable") {
  TempDir tmp;
  std::string site = tmp.write("chain3.json", site_text(builtin_site("chain3").cat));
  CmdOptions opt;
  CmdResult res = cmd_radj(site, "y_m", "2", opt);
  REQUIRE(res.exit_code == kExitPass);
  CHECK(res.report.results.at("atomic") == true);
  CHECK(res.report.results.at("candidate_only") == false);
  for (auto it = res.report.results.at("tables").at("sets").begin();
       it != res.report.results.at("tables").at("sets").end(); ++it)
    CHECK(it.value().size() == 2);  // a two-element table at every object
  CHECK(res.report.results.at("rigidity").at("sections_preserved") == true);
  CHECK(res.report.results.at("rigidity").at("pieces_preserved") == true);
}

TEST_CASE("radj command flags non-atomic exponents as candidate only") {
  TempDir tmp;
  std::string site = tmp.write("sete.json", site_text(builtin_site("set-e").cat));
  CmdResult res = cmd_radj(site, "y_x", "2", {});
  REQUIRE(res.exit_code == kExitPass);
  CHECK(res.report.results.at("atomic") == false);
  CHECK(res.report.results.at("candidate_only") == true);
  CHECK(!res.report.results.at("adjunction_failure").get<std::string>().empty());
  CHECK(!res.report.results.contains("rigidity"));

  CHECK(cmd_radj(site, "y_zzz", "2", {}).exit_code == kExitInputError);
}

TEST_CASE("radj along the terminal reproduces the target's table") {
  TempDir tmp;
  CatPtr chain = builtin_site("chain3").cat;
  std::string site = tmp.write("chain3.json", site_text(chain));
  CmdResult res = cmd_radj(site, "1", "omega", {});
  REQUIRE(res.exit_code == kExitPass);
  Workspace w(chain);
  const Json& sets = res.report.results.at("tables").at("sets");
  for (int a = 0; a < chain->n_objects(); ++a)
    CHECK(sets.at(chain->object_name(a)).size() ==
          static_cast<std::size_t>(w.omega_obj().obj.size(a)));
}

TEST_CASE("cohesion command mirrors the diagnostics verdicts") {
  TempDir tmp;
  CmdOptions opt;
  opt.bound = 3;

  std::string sete = tmp.write("sete.json", site_text(builtin_site("set-e").cat));
  CmdResult pass = cmd_cohesion(sete, opt);
  CHECK(pass.exit_code == kExitPass);
  CHECK(pass.report.results.at("passes") == true);
  CHECK(pass.report.results.at("gamma_omega") == 2);

  std::string disc = tmp.write("disc.json", site_text(builtin_site("discrete2").cat));
  CmdResult fail = cmd_cohesion(disc, opt);
  CHECK(fail.exit_code == kExitCheckFailed);
  CHECK(fail.report.results.at("passes") == false);
  CHECK(fail.report.results.at("gamma_omega") == 4);
  CHECK(fail.report.results.at("two_valued") == false);
  CHECK(render_human(report_to_json(fail.report)).find("NOT two-valued") != std::string::npos);
}

TEST_CASE("verify command returns suite verdicts with proper exit codes") {
  CmdOptions opt;
  opt.bound = 2;
  CmdResult res = cmd_verify("two_sub_t", opt);
  CHECK(res.exit_code == kExitPass);
  CHECK(res.report.results.at("suite") == "two_sub_t");
  CHECK(!res.report.results.at("checks").empty());

  CHECK(cmd_verify("nope", opt).exit_code == kExitInputError);
}
