#include <doctest.h>

#include "ptops/atomic.hpp"
#include "test_sites.hpp"

using namespace ptops;

namespace {

NatTrans arrow_map(Workspace& w, const std::string& name) {
  return rep_map(w, w.site()->arrow_index(name));
}

}  // namespace

TEST_CASE("representables and subterminals are tiny, 2 is not") {
  Workspace w(testsites::chain3());
  const FinCat& site = *w.site();
  for (int a = 0; a < site.n_objects(); ++a) {
    TinyVerdict v = is_tiny(w, w.rep(a));
    CHECK(v.tiny);
    CHECK(v.witness->rep_obj == a);  // first witness found is the object itself
  }
  // two global-section candidates at the terminal candidate, both constant
  TinyVerdict v2 = is_tiny(w, w.two());
  CHECK(!v2.tiny);
  CHECK(v2.log.pairs_tried.size() == 3);  // completed search over all objects
  CHECK(v2.log.total == 2);
}

TEST_CASE("atomicity verdicts on the three-chain") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  for (int a = 0; a < site.n_objects(); ++a) {
    const AtomicityVerdict& v = ctx.atomic(w.rep(a));
    CHECK(v.atomic);
    CHECK(v.witnesses.size() == 3);
    for (const TinyWitness& wit : v.witnesses)
      CHECK(compose_nat(wit.retraction, wit.section) ==
            identity_nat(wit.section.dom));
  }
  const AtomicityVerdict& v2 = ctx.atomic(w.two());
  CHECK(!v2.atomic);
  CHECK(site.object_name(v2.failing_obj) == "0");  // y_0 x 2 has no injection anywhere
  CHECK(v2.refutation.pairs_tried.size() == 3);
}

TEST_CASE("atomicity verdicts on the idempotent monoid and the reflexive graph") {
  {
    Workspace w(testsites::idem_monoid());
    AtomicContext ctx(w);
    CHECK(ctx.atomic(w.one()).atomic);
    CHECK(!ctx.atomic(w.rep(0)).atomic);  // y x y has 4 elements, no injection into y
    CHECK(!ctx.atomic(w.two()).atomic);
  }
  {
    Workspace w(testsites::reflexive_graph());
    AtomicContext ctx(w);
    const FinCat& site = *w.site();
    int e = site.object_index("E"), vv = site.object_index("V");
    CHECK(ctx.atomic(w.rep(vv)).atomic);  // y_V is terminal
    const AtomicityVerdict& ve = ctx.atomic(w.rep(e));
    CHECK(!ve.atomic);
    CHECK(ve.failing_obj == e);  // y_E x y_E is too big for both representables
    CHECK(!ctx.atomic(w.two()).atomic);
  }
}

TEST_CASE("terminal is atomic on the discrete two-object site, representables are not") {
  Workspace w(testsites::discrete2());
  AtomicContext ctx(w);
  CHECK(ctx.atomic(w.one()).atomic);
  // y_u x y_v is initial, and 0 admits no retraction from a representable
  CHECK(!ctx.atomic(w.rep(0)).atomic);
  CHECK(!ctx.atomic(w.rep(1)).atomic);
}

TEST_CASE("right adjoint of 2 along each chain atom is 2 again") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  for (int a = 0; a < site.n_objects(); ++a) {
    const RightAdjointObj& r = ctx.radj(w.rep(a), w.two());
    CHECK(!r.candidate_only);
    CHECK(iso_search(r.obj, w.two()).has_value());
    CHECK(global_sections(r.obj).size() == 2);
  }
  // poset oracle: (y_c)^(y_m) is the subterminal [- meet m <= c], so
  // 2_(y_m)(c) = |Nat of that into 2| = 2 at every c
  const RightAdjointObj& rm = ctx.radj(w.rep(site.object_index("m")), w.two());
  for (int c = 0; c < site.n_objects(); ++c) CHECK(rm.obj.size(c) == 2);
}

TEST_CASE("transpose and untranspose are mutually inverse and natural") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  std::vector<Presheaf> atoms = {w.rep(site.object_index("m")), w.one()};
  std::vector<Presheaf> ys = {w.rep(site.object_index("0")), w.two()};
  const Presheaf& x = w.two();
  for (const Presheaf& t : atoms) {
    const RightAdjointObj& r = ctx.radj(t, x);
    for (const Presheaf& y : ys) {
      const Exponential& ey = w.exp(y, t);
      const auto& up = w.hom(ey.obj, x);
      const auto& down = w.hom(y, r.obj);
      CHECK(up.size() == down.size());  // the adjunction bijection, by count
      for (const NatTrans& h : up)
        CHECK(radj_untranspose(ctx, t, x, radj_transpose(ctx, t, y, h)) == h);
      for (const NatTrans& k : down)
        CHECK(radj_transpose(ctx, t, y, radj_untranspose(ctx, t, x, k)) == k);
    }
    // naturality of the transpose in Y: for g : Y' => Y,
    // transpose(h ∘ g^T) == transpose(h) ∘ g
    const Presheaf& ya = ys[0];
    const Presheaf& yb = ys[1];
    const Exponential& ea = w.exp(ya, t);
    const Exponential& eb = w.exp(yb, t);
    for (const NatTrans& g : w.hom(ya, yb)) {
      NatTrans gt = exp_post(ea, eb, g);
      for (const NatTrans& h : w.hom(eb.obj, x))
        CHECK(radj_transpose(ctx, t, ya, compose_nat(h, gt)) ==
              compose_nat(radj_transpose(ctx, t, yb, h), g));
    }
  }
}

TEST_CASE("triangle identities for the exponential-right-adjoint adjunction") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  std::vector<Presheaf> atoms = {w.rep(site.object_index("0")),
                                 w.rep(site.object_index("m")), w.one()};
  const Presheaf& x = w.two();
  for (const Presheaf& t : atoms) {
    // ε_{Y^T} ∘ (η_Y)^T == id on Y^T, with Y = X
    const Exponential& ex = w.exp(x, t);
    NatTrans eta = radj_unit(ctx, t, x);  // X ⇒ (X^T)_T
    const RightAdjointObj& rext = ctx.radj(t, ex.obj);
    NatTrans eta_t = exp_post(ex, w.exp(rext.obj, t), eta);
    NatTrans eps_at_ext = radj_counit(ctx, t, ex.obj);
    CHECK(compose_nat(eps_at_ext, eta_t) == identity_nat(ex.obj));

    // (ε_X)_T ∘ η_{X_T} == id on X_T
    const RightAdjointObj& rx = ctx.radj(t, x);
    NatTrans eps = radj_counit(ctx, t, x);  // (X_T)^T ⇒ X
    NatTrans eta_at_rx = radj_unit(ctx, t, rx.obj);
    CHECK(compose_nat(radj_post(ctx, t, eps), eta_at_rx) == identity_nat(rx.obj));
  }
}

TEST_CASE("non-atomic exponent yields a candidate object with a recorded counting failure") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const RightAdjointObj& r = ctx.radj(w.two(), w.two());
  CHECK(r.candidate_only);
  CHECK(!r.adjunction_failure.empty());
  CHECK_THROWS_AS(radj_untranspose(ctx, w.two(), w.two(), identity_nat(r.obj)),
                  std::invalid_argument);
}

TEST_CASE("derived map between right adjoints is the unique mate of the counit equation") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  NatTrans f = arrow_map(w, "f0m");  // y_0 ⇒ y_m
  for (const Presheaf& x : {w.two(), w.omega_obj().obj}) {
    SubFResult sf = sub_f(ctx, f, x, true);
    CHECK(sf.unique);
    CHECK(sf.matches == 1);
  }
}

TEST_CASE("point and copoint maps through the canonical unit-atom isomorphism") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const Presheaf& one = w.one();
  const Presheaf& x = w.omega_obj().obj;
  NatTrans u1 = canonical_one_iso(ctx, x);
  CHECK(is_natural_iso(u1));
  // for the identity point of the terminal atom, X_p is the canonical iso itself
  NatTrans xp = point_map(ctx, identity_nat(one), x);
  CHECK(xp == u1);
  NatTrans xbang = copoint_map(ctx, one, x);
  CHECK(compose_nat(xbang, xp) == identity_nat(x));
  CHECK(compose_nat(xp, xbang) == identity_nat(u1.cod));

  // the copoint along a non-terminal atom is still a left inverse of nothing
  // in general, but it must satisfy the defining equation against sub_f(!)
  const FinCat& site = *w.site();
  const Presheaf& t = w.rep(site.object_index("m"));
  NatTrans down = copoint_map(ctx, t, w.two());
  CHECK(down.dom == ctx.radj(t, w.two()).obj);
  CHECK(down.cod == w.two());
}

TEST_CASE("generalized singleton at the terminal atom matches the singleton map") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const Presheaf& one = w.one();
  const OmegaObj& om = w.omega_obj();
  for (const Presheaf& x : {w.two(), w.rep(w.site()->object_index("m"))}) {
    NatTrans j = gen_singleton(ctx, one, identity_nat(one), x);
    CHECK(is_monic(j));

    // j ∘ X_p == (Ω_p)^X ∘ {-}_X
    NatTrans xp = point_map(ctx, identity_nat(one), x);
    NatTrans omp = point_map(ctx, identity_nat(one), om.obj);
    const Exponential& eomx = w.exp(om.obj, x);
    const RightAdjointObj& rom = ctx.radj(one, om.obj);
    NatTrans lift = exp_post(eomx, w.exp(rom.obj, x), omp);
    NatTrans sing = singleton_map(om, eomx);
    CHECK(compose_nat(j, xp) == compose_nat(lift, sing));

    // conjugating by the canonical isos recovers {-}_X on the nose
    NatTrans u1om_inv = invert_iso(canonical_one_iso(ctx, om.obj));
    NatTrans unlift = exp_post(w.exp(rom.obj, x), eomx, u1om_inv);
    CHECK(compose_nat(unlift, compose_nat(j, xp)) == sing);
  }
}

TEST_CASE("retract construction reproduces the right adjoint for the trivial splitting") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  const Presheaf& t = w.rep(site.object_index("m"));
  Splitting sp = split_idempotent(identity_nat(t));
  CHECK(iso_search(sp.q, t).has_value());
  std::vector<Presheaf> family = {w.rep(site.object_index("0")), w.one(), w.two()};
  RetractRadjResult res = retract_right_adjoint(ctx, t, sp, w.two(), family);
  CHECK(res.bijection_ok);
  CHECK(res.natural_ok);
  CHECK(res.agrees_with_direct);
  CHECK(iso_search(res.z, ctx.radj(t, w.two()).obj).has_value());
}

TEST_CASE("endomorphisms of atomics on the builtin sites are all identities") {
  // a negative-space fact: every idempotent found on these atoms is trivial,
  // so the retract construction is exercised through identity splittings only
  for (const CatPtr& site :
       {testsites::chain3(), testsites::idem_monoid(), testsites::reflexive_graph()}) {
    Workspace w(site);
    AtomicContext ctx(w);
    for (int a = 0; a < site->n_objects(); ++a) {
      const Presheaf& t = w.rep(a);
      if (!ctx.atomic(t).atomic) continue;
      CHECK(w.hom(t, t).size() == 1);
    }
    CHECK(w.hom(w.one(), w.one()).size() == 1);
  }
}

TEST_CASE("mates: the derived map of f corresponds to precomposition by f") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  const Presheaf& t = w.rep(site.object_index("0"));
  const Presheaf& s = w.rep(site.object_index("m"));
  NatTrans f = arrow_map(w, "f0m");  // t ⇒ s

  PresheafMap phi = [&](const Presheaf& x) { return sub_f(ctx, f, x).map; };
  PresheafMap psi = [&](const Presheaf& x) {
    return exp_pre(w.exp(x, s), w.exp(x, t), f);  // X^f : X^S ⇒ X^T
  };
  for (const Presheaf& x : {w.two(), s}) {
    CHECK(phi_to_psi_at(ctx, t, s, phi, x) == psi(x));
    CHECK(psi_to_phi_at(ctx, t, s, psi, x) == phi(x));
  }
}

TEST_CASE("functor-level naturality of the derived maps over a finite family") {
  Workspace w(testsites::chain3());
  AtomicContext ctx(w);
  const FinCat& site = *w.site();
  const Presheaf& t = w.rep(site.object_index("0"));
  const Presheaf& s = w.rep(site.object_index("m"));
  NatTrans f = arrow_map(w, "f0m");
  std::vector<Presheaf> family = {w.rep(site.object_index("0")), w.one(), w.two()};
  PresheafMap phi = [&](const Presheaf& x) { return sub_f(ctx, f, x).map; };
  bool ok = family_natural(
      w, family, phi, [&](const NatTrans& h) {
        return std::pair<NatTrans, NatTrans>(radj_post(ctx, t, h), radj_post(ctx, s, h));
      });
  CHECK(ok);
}

TEST_CASE("product-side correspondence recovers the inducing arrow") {
  Workspace w(testsites::chain3());
  const FinCat& site = *w.site();
  const Presheaf& a = w.rep(site.object_index("m"));
  const Presheaf& b = w.rep(site.object_index("0"));
  NatTrans g = arrow_map(w, "f0m");  // b ⇒ a

  PresheafMap phi = [&](const Presheaf& x) {
    return exp_pre(w.exp(x, a), w.exp(x, b), g);  // X^g : X^A ⇒ X^B
  };
  PresheafMap psi = [&](const Presheaf& x) { return exp_to_prod_at(w, a, b, phi, x); };
  std::vector<Presheaf> family = {b, a, w.one(), w.two()};
  RecoverArrow rec = recover_arrow(w, a, b, psi, family);
  CHECK(rec.triangle_ok);
  CHECK(rec.is_product_form);
  CHECK(*rec.arrow == g);

  // a swap-style transformation fails the projection triangle at the
  // two-element member (at the terminal it degenerates to the identity)
  PresheafMap bad = [&](const Presheaf& x) {
    const ProductObj& xb = w.prod(x, w.two());
    if (x == w.one()) return pair_nat(xb, xb.p1, xb.p2);
    return swap_nat(xb, xb);
  };
  RecoverArrow rec2 = recover_arrow(w, w.two(), w.two(), bad, {w.two()});
  CHECK(!rec2.triangle_ok);
}

TEST_CASE("exchange isomorphism commutes with postcomposition") {
  Workspace w(testsites::chain3());
  const FinCat& site = *w.site();
  const Presheaf& x = w.rep(site.object_index("0"));
  const Presheaf& t = w.rep(site.object_index("m"));
  const Presheaf& a = w.rep(site.object_index("m"));
  const Presheaf& a2 = w.two();
  NatTrans h = w.hom(a, a2)[0];  // a ⇒ a2

  const Exponential& ax = w.exp(a, x);
  const Exponential& axt = w.exp(ax.obj, t);
  const Exponential& at = w.exp(a, t);
  const Exponential& atx = w.exp(at.obj, x);
  NatTrans alpha = alpha_swap(ax, axt, at, atx);

  const Exponential& bx = w.exp(a2, x);
  const Exponential& bxt = w.exp(bx.obj, t);
  const Exponential& bt = w.exp(a2, t);
  const Exponential& btx = w.exp(bt.obj, x);
  NatTrans alpha2 = alpha_swap(bx, bxt, bt, btx);

  NatTrans lhs = compose_nat(alpha2, exp_post(axt, bxt, exp_post(ax, bx, h)));
  NatTrans rhs = compose_nat(exp_post(atx, btx, exp_post(at, bt, h)), alpha);
  CHECK(lhs == rhs);
}
