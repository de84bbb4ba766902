#include "doctest.h"

#include <set>

#include "ptops/verify.hpp"
#include "test_sites.hpp"

using namespace ptops;

namespace {

std::string failing_names(const SuiteResult& r) {
  std::string out;
  for (const CheckResult& c : r.checks)
    if (!c.pass) out += c.name + " [" + c.witness + "] ";
  return out;
}

}  // namespace

TEST_CASE("builtin registry profiles match live diagnostics") {
  REQUIRE(builtin_sites().size() == 5);
  for (const BuiltinSite& s : builtin_sites()) {
    CAPTURE(s.id);
    CHECK(computed_profile(s) == s.expected);
  }
  CHECK(builtin_site("chain3").cat->n_objects() == 3);
  CHECK_THROWS_AS((void)builtin_site("nope"), std::invalid_argument);
}

TEST_CASE("suite registry is fixed and rejects unknown ids") {
  CHECK(suite_ids().size() == 10);
  std::set<std::string> ids(suite_ids().begin(), suite_ids().end());
  CHECK(ids.count("thmA") == 1);
  CHECK(ids.count("density") == 1);
  CHECK_THROWS_AS((void)run_suite("not-a-suite", 2), std::invalid_argument);
  CHECK_THROWS_AS((void)run_suite("thmA", 0), std::invalid_argument);
}

TEST_CASE("site generators hit the known isomorphism counts") {
  CHECK(monoid_sites(1).size() == 1);
  CHECK(monoid_sites(2).size() == 2);
  CHECK(monoid_sites(3).size() == 7);
  CHECK(poset_sites(1).size() == 1);
  CHECK(poset_sites(2).size() == 2);
  CHECK(poset_sites(3).size() == 5);

  // every generated site composes correctly end to end
  for (const CatPtr& c : monoid_sites(3)) {
    Workspace w(c);
    CHECK(w.one().total() == 1);
  }
  for (const CatPtr& c : poset_sites(3)) {
    Workspace w(c);
    CHECK(w.one().total() == c->n_objects());
  }
}

TEST_CASE("singleton squares hold for the terminal atom everywhere") {
  for (const BuiltinSite& bs : builtin_sites()) {
    CAPTURE(bs.id);
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    const Presheaf& one = w.one();
    NatTrans p = w.hom(one, one)[0];
    auto res = singleton_square_checks(ctx, one, p, w.two(), {one});
    REQUIRE(res.size() == 5);  // includes the terminal degeneracy check
    for (const CheckResult& c : res) {
      CAPTURE(c.name);
      CHECK(c.pass);
    }
  }
}

TEST_CASE("explicit idempotent-set exponential matches the generic one") {
  Workspace w(testsites::idem_monoid());

  // |X| = |T| = 2 with a single fixed point: 2^(2*2-1) = 8 maps, 2 fixed
  Presheaf x, t;
  for (Presheaf* p : {&x, &t}) {
    p->site = w.site();
    p->elems = {{"a", "b"}};
    p->act = {{}, {}};
    p->act[w.site()->identity(0)] = {0, 1};
    p->act[w.site()->arrow_index("e")] = {0, 0};
    *p = checked(std::move(*p));
  }
  CHECK(w.exp(x, t).obj.total() == 8);
  CHECK(global_sections(w.exp(x, t).obj).size() == 2);
  CHECK(explicit_exponential_crosscheck(w, x, t));

  // also with a two-point image idempotent on a three-element set
  Presheaf z;
  z.site = w.site();
  z.elems = {{"a", "b", "c"}};
  z.act = {{}, {}};
  z.act[w.site()->identity(0)] = {0, 1, 2};
  z.act[w.site()->arrow_index("e")] = {0, 0, 2};
  z = checked(std::move(z));
  CHECK(explicit_exponential_crosscheck(w, z, t));
  CHECK(explicit_exponential_crosscheck(w, t, z));
}

TEST_CASE("crosscheck rejects sites without the idempotent shape") {
  Workspace w(testsites::chain3());
  CHECK_THROWS_AS((void)explicit_exponential_crosscheck(w, w.two(), w.one()),
                  std::invalid_argument);
}

TEST_CASE("every verification suite passes at its test bound") {
  struct Plan {
    const char* id;
    int bound;
  };
  const Plan plans[] = {{"thmA", 2},
                        {"thmB", 2},
                        {"thmC", 2},
                        {"thmD", 2},
                        {"contractibility", 2},
                        {"section3", 2},
                        {"setE_atoms", 4},
                        {"setE_exponentials", 3},
                        {"two_sub_t", 2},
                        {"density", 2}};
  for (const Plan& pl : plans) {
    SuiteResult r = run_suite(pl.id, pl.bound);
    CAPTURE(pl.id);
    INFO("failing: " << failing_names(r));
    CHECK(r.suite == pl.id);
    CHECK(r.bound == pl.bound);
    CHECK(!r.checks.empty());
    CHECK(r.all_pass());
    CHECK(r.failed() == 0);
  }
}

TEST_CASE("idempotent-set atom scan covers all twelve small objects") {
  SuiteResult r = run_suite("setE_atoms", 4);
  CHECK(r.checks.size() == 12);  // objects with at most four points, up to iso
  int refuted = 0;
  for (const CheckResult& c : r.checks)
    if (c.witness.find("refuted") != std::string::npos) ++refuted;
  CHECK(refuted == 11);  // everything except the terminal carries a refutation
}

TEST_CASE("suite results are deterministic") {
  SuiteResult a = run_suite("two_sub_t", 2);
  SuiteResult b = run_suite("two_sub_t", 2);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].pass == b.checks[i].pass);
    CHECK(a.checks[i].witness == b.checks[i].witness);
  }
}

TEST_CASE("atom catalog covers builtins, monoids and posets") {
  std::vector<SiteCatalogEntry> cat = atom_site_search(2);
  // 5 builtins + (1 + 2 + 7) monoids + (1 + 2 + 5) posets
  REQUIRE(cat.size() == 23);

  int pointed = 0;
  for (const SiteCatalogEntry& entry : cat) {
    CAPTURE(entry.site_id);
    CHECK(!entry.atomics.empty());  // the terminal is always atomic
    bool has_terminal = false;
    for (const CatalogAtomic& ca : entry.atomics) {
      if (ca.object.total() == entry.cat->n_objects()) has_terminal = true;
      if (ca.points == 0) {
        CHECK(ca.singleton_suite.empty());
        continue;
      }
      ++pointed;
      CHECK(!ca.singleton_suite.empty());
      for (const CheckResult& c : ca.singleton_suite) {
        CAPTURE(c.name);
        INFO(c.witness);
        CHECK(c.pass);
      }
    }
    CHECK(has_terminal);
  }
  CHECK(pointed >= 23);  // at least the terminal atom of every site
}
