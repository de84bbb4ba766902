#include "doctest.h"

#include <algorithm>

#include "ptops/cohesion.hpp"
#include "test_sites.hpp"

using namespace ptops;

namespace {

bool item_ok(const std::vector<CheckItem>& items, const std::string& subject) {
  for (const CheckItem& c : items)
    if (c.subject == subject) return c.ok;
  FAIL("no item named ", subject);
  return false;
}

bool any_failing(const std::vector<CheckItem>& items) {
  return std::any_of(items.begin(), items.end(), [](const CheckItem& c) { return !c.ok; });
}

}  // namespace

TEST_CASE("discrete and codiscrete presheaves have the expected shapes") {
  Workspace wc(testsites::chain3());
  Presheaf d2 = discrete_presheaf(wc.site(), 2);
  for (int a = 0; a < 3; ++a) CHECK(d2.size(a) == 2);
  CHECK(pieces_count(d2) == 2);
  CHECK(sections_count(wc, d2) == 2);
  CHECK(is_connected(discrete_presheaf(wc.site(), 1)));
  CHECK_FALSE(is_connected(d2));

  // chain: only the top representable has a point, so Λn = (1, n, 1)
  Presheaf lam3 = codiscrete_presheaf(wc, 3);
  CHECK(lam3.size(wc.site()->object_index("0")) == 1);
  CHECK(lam3.size(wc.site()->object_index("1")) == 3);
  CHECK(lam3.size(wc.site()->object_index("m")) == 1);
  CHECK(sections_count(wc, lam3) == 3);

  // reflexive graphs: y_V has one point, y_E two, so Λn = (n^2 at E, n at V)
  Workspace wr(testsites::reflexive_graph());
  Presheaf lam2 = codiscrete_presheaf(wr, 2);
  CHECK(lam2.size(wr.site()->object_index("E")) == 4);
  CHECK(lam2.size(wr.site()->object_index("V")) == 2);
  Presheaf lam0 = codiscrete_presheaf(wr, 0);
  CHECK(lam0.total() == 0);

  // two-point discrete site: no representable has a point, so Λn is terminal
  Workspace wd(testsites::discrete2());
  Presheaf lam5 = codiscrete_presheaf(wd, 5);
  CHECK(lam5.size(0) == 1);
  CHECK(lam5.size(1) == 1);

  // idempotent monoid: one point, and precomposition fixes it
  Workspace wi(testsites::idem_monoid());
  Presheaf lami = codiscrete_presheaf(wi, 2);
  CHECK(lami.size(0) == 2);
  int e = wi.site()->arrow_index("e");
  CHECK(lami.apply(e, 0) == 0);
  CHECK(lami.apply(e, 1) == 1);
}

TEST_CASE("pieces ⊣ discrete ⊣ sections hold naturally on every builtin site") {
  for (CatPtr site : {testsites::idem_monoid(), testsites::chain3(), testsites::discrete2(),
                      testsites::reflexive_graph()}) {
    Workspace w(site);
    NamedFamily fam = named_default_family(w);
    AdjunctionCheck pd = check_pieces_discrete(w, fam, 2);
    INFO(pd.failure);
    CHECK(pd.ok);
    AdjunctionCheck ds = check_discrete_sections(w, fam, 2);
    INFO(ds.failure);
    CHECK(ds.ok);
  }
}

TEST_CASE("sections ⊣ codiscrete holds exactly when a representable has a point") {
  for (CatPtr site :
       {testsites::idem_monoid(), testsites::chain3(), testsites::reflexive_graph()}) {
    Workspace w(site);
    AdjunctionCheck sc = check_sections_codiscrete(w, named_default_family(w), 2);
    INFO(sc.failure);
    CHECK(sc.ok);
  }
  // Γ(y) = ∅ at both objects of the discrete site, Λn collapses to a point,
  // and hom-counts no longer match: the right adjoint genuinely fails here.
  Workspace wd(testsites::discrete2());
  AdjunctionCheck sc = check_sections_codiscrete(wd, named_default_family(wd), 2);
  CHECK_FALSE(sc.ok);
  CHECK(sc.failure.find("count mismatch") != std::string::npos);
}

TEST_CASE("bounded enumeration counts presheaves up to isomorphism") {
  // idempotent endomaps on ≤ n points, up to conjugation: 1, 1, 2, 3, 5
  CHECK(enumerate_presheaves(testsites::idem_monoid(), 3).size() == 7);
  CHECK(enumerate_presheaves(testsites::idem_monoid(), 4).size() == 12);

  // chain with ≤ 1 element per object: down-closed supports only
  CHECK(enumerate_presheaves(testsites::chain3(), 1).size() == 4);

  // reflexive graphs: every vertex carries its loop, so sizes are tied
  CHECK(enumerate_presheaves(testsites::reflexive_graph(), 1).size() == 2);
  CHECK(enumerate_presheaves(testsites::reflexive_graph(), 2).size() == 4);

  // no arrows: one class per size profile
  CHECK(enumerate_presheaves(testsites::discrete2(), 2).size() == 9);

  // the enumerated representatives are pairwise non-isomorphic
  std::vector<Presheaf> all = enumerate_presheaves(testsites::idem_monoid(), 3);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      CHECK_FALSE(iso_search(all[i], all[j], Budget{}).has_value());

  Budget tiny;
  tiny.nat_states = 5;
  CHECK_THROWS_AS(enumerate_presheaves(testsites::reflexive_graph(), 3, tiny), BudgetExceeded);
}

TEST_CASE("the idempotent-monoid site passes every diagnostic at bound 3") {
  Workspace w(testsites::idem_monoid());
  CohesionReport rep = mclarty_report(w, 3);
  INFO(rep.first_failure);
  CHECK(rep.passes());
  CHECK(rep.delta_fully_faithful);
  CHECK(rep.two_valued);
  CHECK(rep.gamma_omega == 2);
  CHECK(rep.first_failure.empty());
  CHECK(rep.counit_monic.size() >= 7);  // the enumerated objects are all covered
  CHECK_FALSE(any_failing(rep.counit_monic));
  CHECK_FALSE(any_failing(rep.pi_products));
  CHECK_FALSE(any_failing(rep.nullstellensatz));
  CHECK_FALSE(any_failing(rep.supports_split));
}

TEST_CASE("the reflexive-graph site passes every diagnostic at bound 2") {
  Workspace w(testsites::reflexive_graph());
  int oe = w.site()->object_index("E");
  int ov = w.site()->object_index("V");
  CHECK(w.omega_obj().obj.size(oe) == 5);
  CHECK(w.omega_obj().obj.size(ov) == 2);
  CHECK(pieces_count(w.rep(oe)) == 1);  // the generic edge is connected

  CohesionReport rep = mclarty_report(w, 2);
  INFO(rep.first_failure);
  CHECK(rep.passes());
  CHECK(rep.gamma_omega == 2);
}

TEST_CASE("the chain site fails the existence-of-points law and two-valuedness") {
  Workspace w(testsites::chain3());
  CohesionReport rep = mclarty_report(w, 2);
  CHECK_FALSE(rep.passes());
  CHECK_FALSE(rep.first_failure.empty());

  // Γ(Ω) counts the sieves on the top object: four of them
  CHECK(rep.gamma_omega == 4);
  CHECK_FALSE(rep.two_valued);

  // the bottom representable is nonempty but has no global section
  CHECK(any_failing(rep.nullstellensatz));
  CHECK_FALSE(item_ok(rep.nullstellensatz, "y_0"));

  // four sections of Ω land in a two-element component, so the counit collapses
  CHECK_FALSE(item_ok(rep.counit_monic, "omega"));
}

TEST_CASE("the two-point discrete site fails two-valuedness and product pieces") {
  Workspace w(testsites::discrete2());
  CohesionReport rep = mclarty_report(w, 2);
  CHECK_FALSE(rep.passes());
  CHECK(rep.gamma_omega == 4);
  CHECK_FALSE(rep.two_valued);
  CHECK_FALSE(rep.delta_fully_faithful);

  // the two one-point presheaves have empty product: 0 pieces where 1 × 1 = 1
  bool found_witness = false;
  for (const CheckItem& c : rep.pi_products)
    if (!c.ok && c.subject.find("(0,1)") != std::string::npos &&
        c.subject.find("(1,0)") != std::string::npos)
      found_witness = true;
  CHECK(found_witness);
}

TEST_CASE("evaluation at a point is invertible for decidable targets on passing sites") {
  Workspace wi(testsites::idem_monoid());
  const Presheaf& y = wi.rep(0);
  CHECK(is_connected(y));
  const NatTrans& p = wi.hom(wi.one(), y)[0];
  CHECK(no_motion_check(wi, y, p, wi.two()));

  Workspace wr(testsites::reflexive_graph());
  const Presheaf& ye = wr.rep(wr.site()->object_index("E"));
  CHECK(is_connected(ye));
  const auto& pts = wr.hom(wr.one(), ye);
  CHECK(pts.size() == 2);
  for (const NatTrans& pt : pts) {
    CHECK(no_motion_check(wr, ye, pt, wr.two()));
    CHECK(no_motion_check(wr, ye, pt, discrete_presheaf(wr.site(), 3)));
  }

  // trivially true for T = 1 on any site
  Workspace wc(testsites::chain3());
  CHECK(no_motion_check(wc, wc.one(), wc.hom(wc.one(), wc.one())[0], wc.two()));
}

TEST_CASE("right adjoints preserve sections and pieces along atoms") {
  Workspace wi(testsites::idem_monoid());
  AtomicContext ctxi(wi);
  for (const Presheaf* y : {&wi.rep(0), &wi.two(), &wi.omega_obj().obj}) {
    RigidityResult rr = right_adjoint_rigidity(ctxi, wi.one(), *y);
    CHECK(rr.gamma_iso);
    CHECK(rr.pi_iso);
  }

  Workspace wc(testsites::chain3());
  AtomicContext ctxc(wc);
  for (int a = 0; a < 3; ++a) {
    RigidityResult rr = right_adjoint_rigidity(ctxc, wc.rep(a), wc.two());
    CHECK(rr.gamma_iso);
    CHECK(rr.pi_iso);
  }
}

TEST_CASE("contractibility indicators agree and are positive for atoms") {
  // terminal atom on the passing monoid site: everything is positive
  Workspace wi(testsites::idem_monoid());
  AtomicContext ctxi(wi);
  NamedFamily fam = named_default_family(wi);
  ContractibilityReport rep = atomic_contractible(ctxi, wi.one(), 2, fam);
  CHECK(rep.pointed);
  CHECK(rep.two_zero_iso);
  CHECK(rep.a_zero.size() == 3);  // 0, 1, and the two-point fixed set
  CHECK(rep.all_positive());
  CHECK(rep.indicators_agree());
  CHECK(is_contractible_family(wi, wi.one(), fam.members));

  // an unpointed atom: the point-based indicators are skipped, the rest agree
  Workspace wc(testsites::chain3());
  AtomicContext ctxc(wc);
  const Presheaf& ym = wc.rep(wc.site()->object_index("m"));
  NamedFamily small;
  for (int a = 0; a < 3; ++a) {
    small.names.push_back("y_" + wc.site()->object_name(a));
    small.members.push_back(wc.rep(a));
  }
  small.names.push_back("2");
  small.members.push_back(wc.two());
  ContractibilityReport repm = atomic_contractible(ctxc, ym, 2, small);
  CHECK_FALSE(repm.pointed);
  CHECK(repm.a_zero.empty());
  CHECK(repm.family_connected);
  CHECK(repm.all_positive());
  CHECK(repm.indicators_agree());

  // a disconnected object is not contractible
  CHECK_FALSE(is_contractible_family(wc, wc.two(), {wc.one()}));
}

TEST_CASE("decidable atoms are terminal and atoms stay connected where the site passes") {
  Workspace wi(testsites::idem_monoid());
  AtomicContext ctxi(wi);
  DecAtomReport di = decidables_and_atoms(ctxi, 2);
  CHECK(di.decidable_count == 3);  // 0, 1, and the two-point fixed set
  CHECK(di.atomic_count == 1);
  CHECK(di.atomic_decidable_terminal.size() == 1);
  CHECK_FALSE(any_failing(di.atomic_decidable_terminal));
  CHECK(di.delta_reflects_atomic);
  CHECK(di.pi_preserves_atomic);

  // two-point discrete site: the terminal is atomic yet disconnected
  Workspace wd(testsites::discrete2());
  AtomicContext ctxd(wd);
  DecAtomReport dd = decidables_and_atoms(ctxd, 1);
  CHECK(dd.atomic_count == 1);
  CHECK_FALSE(dd.pi_preserves_atomic);
  CHECK(dd.delta_reflects_atomic);
  CHECK_FALSE(any_failing(dd.atomic_decidable_terminal));

  // reflexive graphs: the two-point constant presheaf is not an atom
  Workspace wr(testsites::reflexive_graph());
  AtomicContext ctxr(wr);
  CHECK_FALSE(ctxr.atomic(discrete_presheaf(wr.site(), 2)).atomic);
  DecAtomReport dr = decidables_and_atoms(ctxr, 2);
  CHECK(dr.atomic_count == 1);
  CHECK(dr.delta_reflects_atomic);
  CHECK(dr.pi_preserves_atomic);
}
