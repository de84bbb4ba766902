#include "ptops/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace ptops {

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

bool terminal_like(const Presheaf& x) {
  for (const auto& e : x.elems)
    if (e.size() != 1) return false;
  return true;
}

std::string profile_of(const Presheaf& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t a = 0; a < x.elems.size(); ++a) os << (a ? "," : "") << x.elems[a].size();
  os << ")";
  return os.str();
}

/** Runs one check body, converting a budget overrun into a failed check. */
void add_check(SuiteResult& out, const std::string& name,
               const std::function<std::pair<bool, std::string>()>& body) {
  CheckResult c;
  c.name = name;
  try {
    auto result = body();
    c.pass = result.first;
    c.witness = result.second;
  } catch (const BudgetExceeded& e) {
    c.pass = false;
    c.witness = std::string("budget exceeded: ") + e.what();
  }
  out.checks.push_back(std::move(c));
}

/** Enumerated atomics at the bound; terminal-profile ones are normalized to 1. */
std::vector<Presheaf> catalog_atomics(Workspace& w, AtomicContext& ctx, int bound) {
  std::vector<Presheaf> out;
  for (Presheaf& x : enumerate_presheaves(w.site(), bound, w.budget())) {
    if (!ctx.atomic(x).atomic) continue;
    out.push_back(terminal_like(x) ? w.one() : std::move(x));
  }
  return out;
}

std::string atom_label(Workspace& w, const Presheaf& t) {
  return presheaf_key(t) == presheaf_key(w.one()) ? std::string("1")
                                                  : "atom" + profile_of(t);
}

/** Singleton-square suite aggregated over every point of t and every family member. */
std::vector<CheckResult> aggregated_singleton_suite(AtomicContext& ctx, const Presheaf& t,
                                                    const NamedFamily& fam,
                                                    const std::vector<Presheaf>& other_atoms) {
  std::vector<CheckResult> kinds;
  for (const NatTrans& p : ctx.w.hom(ctx.w.one(), t))
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
      std::vector<CheckResult> res =
          singleton_square_checks(ctx, t, p, fam.members[i], other_atoms);
      for (CheckResult& c : res) {
        auto it = std::find_if(kinds.begin(), kinds.end(),
                               [&](const CheckResult& k) { return k.name == c.name; });
        if (it == kinds.end()) {
          if (!c.pass)
            c.witness = "X = " + fam.names[i] + (c.witness.empty() ? "" : "; " + c.witness);
          kinds.push_back(std::move(c));
        } else if (!c.pass && it->pass) {
          it->pass = false;
          it->witness = "X = " + fam.names[i] + (c.witness.empty() ? "" : "; " + c.witness);
        }
      }
    }
  return kinds;
}

// ------------------------------------------------------------------ suites

SuiteResult suite_thma(int bound) {
  SuiteResult out{"thmA", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    std::vector<Presheaf> atoms = catalog_atomics(w, ctx, bound);
    std::vector<Presheaf> pointed;
    for (const Presheaf& t : atoms)
      if (!global_sections(t).empty()) pointed.push_back(t);
    for (const Presheaf& t : pointed) {
      std::string label = bs.id + ": " + atom_label(w, t) + ": ";
      try {
        for (CheckResult& k : aggregated_singleton_suite(ctx, t, fam, pointed)) {
          k.name = label + k.name;
          out.checks.push_back(std::move(k));
        }
      } catch (const BudgetExceeded& e) {
        out.checks.push_back({label + "suite", false, std::string("budget exceeded: ") + e.what()});
      }
    }
  }
  return out;
}

SuiteResult suite_thmb(int bound) {
  SuiteResult out{"thmB", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    std::vector<Presheaf> atoms = catalog_atomics(w, ctx, bound);

    add_check(out, bs.id + ": products of atoms are atomic", [&] {
      int tried = 0;
      for (std::size_t i = 0; i < atoms.size(); ++i)
        for (std::size_t j = i; j < atoms.size(); ++j) {
          const ProductObj& pr = w.prod(atoms[i], atoms[j]);
          ++tried;
          if (!ctx.atomic(pr.obj).atomic)
            return std::pair(false, profile_of(atoms[i]) + " x " + profile_of(atoms[j]));
        }
      return std::pair(true, std::to_string(tried) + " products");
    });

    add_check(out, bs.id + ": idempotent splittings of atoms", [&] {
      int splits = 0;
      for (const Presheaf& t : atoms)
        for (const NatTrans& r : w.hom(t, t)) {
          if (!(compose_nat(r, r) == r)) continue;
          Splitting sp = split_idempotent(r);
          if (!ctx.atomic(sp.q).atomic)
            return std::pair(false, "retract of " + profile_of(t) + " not atomic");
          for (std::size_t i = 0; i < fam.members.size(); ++i) {
            RetractRadjResult rr =
                retract_right_adjoint(ctx, t, sp, fam.members[i], fam.members);
            if (!rr.bijection_ok)
              return std::pair(false, "bijection failed at X = " + fam.names[i]);
            if (!rr.natural_ok)
              return std::pair(false, "naturality failed at X = " + fam.names[i]);
            if (!rr.agrees_with_direct)
              return std::pair(false, "direct comparison failed at X = " + fam.names[i]);
          }
          ++splits;
        }
      return std::pair(true, std::to_string(splits) + " splittings");
    });
  }
  return out;
}

SuiteResult suite_thmc(int bound) {
  SuiteResult out{"thmC", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    bool gate = mclarty_report(w, bs.expected.profile_bound).passes();
    add_check(out, bs.id + ": diagnostics match the registry", [&] {
      return std::pair(gate == bs.expected.full_diagnostics, std::string());
    });
    DecAtomReport da = decidables_and_atoms(ctx, bound);
    if (gate) {
      add_check(out, bs.id + ": atomic and decidable implies terminal", [&] {
        for (const CheckItem& c : da.atomic_decidable_terminal)
          if (!c.ok) return std::pair(false, c.subject);
        return std::pair(true, std::to_string(da.atomic_decidable_terminal.size()) + " objects");
      });
      add_check(out, bs.id + ": atomic implies connected",
                [&] { return std::pair(da.pi_preserves_atomic, std::string()); });
      add_check(out, bs.id + ": constants reflect atomicity",
                [&] { return std::pair(da.delta_reflects_atomic, std::string()); });
    } else if (bs.id == "discrete2") {
      add_check(out, bs.id + ": the disconnected atom is the terminal", [&] {
        if (da.pi_preserves_atomic) return std::pair(false, std::string("no failure found"));
        for (Presheaf& x : enumerate_presheaves(w.site(), bound, w.budget()))
          if (ctx.atomic(x).atomic && !is_connected(x))
            return std::pair(terminal_like(x), profile_of(x));
        return std::pair(false, std::string("no disconnected atom"));
      });
    } else {
      add_check(out, bs.id + ": hypothesis not met (exploratory)", [&] {
        std::ostringstream os;
        os << da.atomic_count << " atoms, " << da.decidable_count << " decidables"
           << ", connected-preserved=" << (da.pi_preserves_atomic ? "yes" : "no");
        return std::pair(true, os.str());
      });
    }
  }
  return out;
}

SuiteResult suite_thmd(int bound) {
  SuiteResult out{"thmD", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    bool gate = mclarty_report(w, bs.expected.profile_bound).passes();
    std::vector<Presheaf> atoms = catalog_atomics(w, ctx, bound);
    if (gate) {
      add_check(out, bs.id + ": sections preserved along every atom", [&] {
        for (const Presheaf& t : atoms)
          for (std::size_t i = 0; i < fam.members.size(); ++i)
            if (!right_adjoint_rigidity(ctx, t, fam.members[i]).gamma_iso)
              return std::pair(false, atom_label(w, t) + ", Y = " + fam.names[i]);
        return std::pair(true, std::to_string(atoms.size() * fam.members.size()) + " pairs");
      });
      add_check(out, bs.id + ": pieces preserved along every atom", [&] {
        for (const Presheaf& t : atoms)
          for (std::size_t i = 0; i < fam.members.size(); ++i)
            if (!right_adjoint_rigidity(ctx, t, fam.members[i]).pi_iso)
              return std::pair(false, atom_label(w, t) + ", Y = " + fam.names[i]);
        return std::pair(true, std::to_string(atoms.size() * fam.members.size()) + " pairs");
      });
    } else {
      add_check(out, bs.id + ": hypothesis not met (exploratory)", [&] {
        int gamma_ok = 0, pi_ok = 0, total = 0;
        for (const Presheaf& t : atoms)
          for (const Presheaf& y : fam.members) {
            RigidityResult rr = right_adjoint_rigidity(ctx, t, y);
            ++total;
            gamma_ok += rr.gamma_iso;
            pi_ok += rr.pi_iso;
          }
        std::ostringstream os;
        os << "sections " << gamma_ok << "/" << total << ", pieces " << pi_ok << "/" << total;
        return std::pair(true, os.str());
      });
    }
  }
  return out;
}

SuiteResult suite_contractibility(int bound) {
  SuiteResult out{"contractibility", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    bool gate = mclarty_report(w, bs.expected.profile_bound).passes();
    for (const Presheaf& t : catalog_atomics(w, ctx, bound)) {
      std::string label = bs.id + ": " + atom_label(w, t);
      if (gate) {
        add_check(out, label + ": indicators agree and are positive", [&] {
          ContractibilityReport rep = atomic_contractible(ctx, t, bound, fam, w.budget());
          if (!rep.indicators_agree()) return std::pair(false, std::string("indicators disagree"));
          if (!rep.all_positive()) return std::pair(false, std::string("an indicator is negative"));
          return std::pair(true, std::string());
        });
      } else {
        add_check(out, label + ": hypothesis not met (exploratory)", [&] {
          ContractibilityReport rep = atomic_contractible(ctx, t, bound, fam, w.budget());
          std::ostringstream os;
          os << "agree=" << (rep.indicators_agree() ? "yes" : "no")
             << ", positive=" << (rep.all_positive() ? "yes" : "no");
          return std::pair(true, os.str());
        });
      }
    }
  }
  return out;
}

SuiteResult suite_section3(int bound) {
  SuiteResult out{"section3", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    const Presheaf& one = w.one();

    add_check(out, bs.id + ": identity transform corresponds to the identity", [&] {
      PresheafMap phi = [&](const Presheaf& x) { return identity_nat(ctx.radj(one, x).obj); };
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        NatTrans psi = phi_to_psi_at(ctx, one, one, phi, fam.members[i]);
        if (!(psi == identity_nat(w.exp(fam.members[i], one).obj)))
          return std::pair(false, "X = " + fam.names[i]);
      }
      return std::pair(true, std::string());
    });
  }

  // the nontrivial derived maps live on the chain site, whose representables
  // are all atomic and connected by arrows
  {
    const BuiltinSite& bs = builtin_site("chain3");
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    const FinCat& site = *w.site();
    const Presheaf& t = w.rep(site.object_index("0"));
    const Presheaf& s = w.rep(site.object_index("m"));
    NatTrans f = rep_map(w, site.arrow_index("f0m"));  // y_0 ⇒ y_m
    PresheafMap phi = [&](const Presheaf& x) { return sub_f(ctx, f, x).map; };
    PresheafMap psi = [&](const Presheaf& x) {
      return exp_pre(w.exp(x, s), w.exp(x, t), f);
    };

    add_check(out, "chain3: the mate of a derived map is precomposition", [&] {
      for (std::size_t i = 0; i < fam.members.size(); ++i)
        if (!(phi_to_psi_at(ctx, t, s, phi, fam.members[i]) == psi(fam.members[i])))
          return std::pair(false, "X = " + fam.names[i]);
      return std::pair(true, std::string());
    });

    add_check(out, "chain3: round trip recovers the derived map", [&] {
      for (std::size_t i = 0; i < fam.members.size(); ++i)
        if (!(psi_to_phi_at(ctx, t, s, psi, fam.members[i]) == phi(fam.members[i])))
          return std::pair(false, "X = " + fam.names[i]);
      return std::pair(true, std::string());
    });

    add_check(out, "chain3: both transforms are natural on the family", [&] {
      bool phi_nat = family_natural(w, fam.members, phi, [&](const NatTrans& h) {
        return std::pair(radj_post(ctx, t, h), radj_post(ctx, s, h));
      });
      bool psi_nat = family_natural(w, fam.members, psi, [&](const NatTrans& h) {
        return std::pair(exp_post(w.exp(h.dom, s), w.exp(h.cod, s), h),
                         exp_post(w.exp(h.dom, t), w.exp(h.cod, t), h));
      });
      return std::pair(phi_nat && psi_nat,
                       phi_nat ? (psi_nat ? "" : "precomposition side") : "derived-map side");
    });

    add_check(out, "chain3: derived maps satisfy the copoint triangle", [&] {
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        NatTrans lhs = compose_nat(copoint_map(ctx, s, fam.members[i]), phi(fam.members[i]));
        if (!(lhs == copoint_map(ctx, t, fam.members[i])))
          return std::pair(false, "X = " + fam.names[i]);
      }
      return std::pair(true, std::string());
    });

    add_check(out, "chain3: a product transform determines its arrow", [&] {
      PresheafMap prod_psi = [&](const Presheaf& x) {
        return product_map(w.prod(x, t), w.prod(x, s), identity_nat(x), f);
      };
      RecoverArrow ra = recover_arrow(w, s, t, prod_psi, fam.members);
      if (!ra.triangle_ok) return std::pair(false, std::string("projection triangle failed"));
      if (!ra.is_product_form) return std::pair(false, std::string("not of product form"));
      if (!(ra.arrow && *ra.arrow == f)) return std::pair(false, std::string("wrong arrow"));
      return std::pair(true, std::string());
    });

    add_check(out, "chain3: exponential transforms untranspose to product form", [&] {
      PresheafMap exp_phi = [&](const Presheaf& x) {
        return exp_pre(w.exp(x, s), w.exp(x, t), f);
      };
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        const Presheaf& x = fam.members[i];
        NatTrans got = exp_to_prod_at(w, s, t, exp_phi, x);
        NatTrans want = product_map(w.prod(x, t), w.prod(x, s), identity_nat(x), f);
        if (!(got == want)) return std::pair(false, "X = " + fam.names[i]);
      }
      return std::pair(true, std::string());
    });
  }
  return out;
}

SuiteResult suite_sete_atoms(int bound) {
  SuiteResult out{"setE_atoms", bound, {}};
  const BuiltinSite& bs = builtin_site("set-e");
  Workspace w(bs.cat);
  AtomicContext ctx(w);
  std::vector<Presheaf> all = enumerate_presheaves(bs.cat, bound, w.budget());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const Presheaf& x = all[i];
    add_check(out, "X" + std::to_string(i) + profile_of(x), [&] {
      const AtomicityVerdict& v = ctx.atomic(x);
      if (terminal_like(x)) {
        if (!v.atomic) return std::pair(false, std::string("terminal object not atomic"));
        for (const TinyWitness& tw : v.witnesses)
          if (!(compose_nat(tw.retraction, tw.section) == identity_nat(tw.section.dom)))
            return std::pair(false, std::string("witness does not compose to the identity"));
        return std::pair(true, std::string("atomic, witnesses verified"));
      }
      if (v.atomic) return std::pair(false, std::string("unexpected atomicity verdict"));
      if (v.failing_obj < 0 || v.refutation.pairs_tried.empty())
        return std::pair(false, std::string("missing refutation certificate"));
      std::ostringstream os;
      os << "refuted at object " << w.site()->object_name(v.failing_obj) << " after "
         << v.refutation.total << " candidate pairs";
      return std::pair(true, os.str());
    });
  }
  return out;
}

/** The set with an idempotent endomap fixing only its first point. */
Presheaf single_fixed_point(Workspace& w, int n) {
  const FinCat& site = *w.site();
  Presheaf p;
  p.site = w.site();
  p.elems.resize(1);
  for (int i = 0; i < n; ++i) p.elems[0].push_back("x" + std::to_string(i));
  p.act.resize(site.n_arrows());
  p.act[site.identity(0)].resize(n);
  std::iota(p.act[site.identity(0)].begin(), p.act[site.identity(0)].end(), 0);
  p.act[site.arrow_index("e")].assign(n, 0);
  return checked(std::move(p));
}

SuiteResult suite_sete_exponentials(int bound) {
  SuiteResult out{"setE_exponentials", bound, {}};
  const BuiltinSite& bs = builtin_site("set-e");
  Workspace w(bs.cat);
  int top = std::min(bound, 3);
  for (int nx = 1; nx <= top; ++nx)
    for (int nt = 1; nt <= top; ++nt) {
      Presheaf x = single_fixed_point(w, nx);
      Presheaf t = single_fixed_point(w, nt);
      std::string label = "|X|=" + std::to_string(nx) + ", |T|=" + std::to_string(nt);
      add_check(out, label + ": cardinalities", [&] {
        const Exponential& e = w.exp(x, t);
        std::size_t want_total = ipow(nx, 2 * nt - 1);
        std::size_t want_fix = ipow(nx, nt - 1);
        if (static_cast<std::size_t>(e.obj.total()) != want_total)
          return std::pair(false, "|X^T| = " + std::to_string(e.obj.total()) +
                                      ", expected " + std::to_string(want_total));
        std::size_t fix = global_sections(e.obj).size();
        if (fix != want_fix)
          return std::pair(false, "|Fix| = " + std::to_string(fix) + ", expected " +
                                      std::to_string(want_fix));
        return std::pair(true, std::to_string(want_total) + " maps, " +
                                   std::to_string(want_fix) + " fixed");
      });
      add_check(out, label + ": explicit construction agrees", [&] {
        return std::pair(explicit_exponential_crosscheck(w, x, t), std::string());
      });
    }
  return out;
}

SuiteResult suite_two_sub_t(int bound) {
  SuiteResult out{"two_sub_t", bound, {}};
  {
    const BuiltinSite& bs = builtin_site("chain3");
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    for (int a = 0; a < w.site()->n_objects(); ++a) {
      std::string nm = w.site()->object_name(a);
      add_check(out, "chain3: two along y_" + nm, [&] {
        const RightAdjointObj& r = ctx.radj(w.rep(a), w.two());
        if (r.candidate_only) return std::pair(false, r.adjunction_failure);
        if (!iso_search(r.obj, w.two(), w.budget()))
          return std::pair(false, "2_T has profile " + profile_of(r.obj));
        std::size_t secs = global_sections(r.obj).size();
        if (secs != 2)
          return std::pair(false, "|sections| = " + std::to_string(secs));
        return std::pair(true, std::string());
      });
    }
  }
  for (const std::string& id : {std::string("terminal"), std::string("set-e"),
                                std::string("refl-graph")}) {
    const BuiltinSite& bs = builtin_site(id);
    Workspace w(bs.cat);
    AtomicContext ctx(w);
    add_check(out, id + ": sections of two along every atom", [&] {
      for (const Presheaf& t : catalog_atomics(w, ctx, bound)) {
        const RightAdjointObj& r = ctx.radj(t, w.two());
        if (global_sections(r.obj).size() != 2)
          return std::pair(false, atom_label(w, t));
      }
      return std::pair(true, std::string());
    });
  }
  return out;
}

SuiteResult suite_density(int bound) {
  SuiteResult out{"density", bound, {}};
  for (const BuiltinSite& bs : builtin_sites()) {
    Workspace w(bs.cat);
    NamedFamily fam = named_default_family(w);
    const FinCat& site = *w.site();
    const OmegaObj& om = w.omega_obj();

    add_check(out, bs.id + ": every object is the colimit of its elements", [&] {
      for (std::size_t i = 0; i < fam.members.size(); ++i)
        if (!density_check(fam.members[i]).is_iso)
          return std::pair(false, "X = " + fam.names[i]);
      return std::pair(true, std::to_string(fam.members.size()) + " objects");
    });

    add_check(out, bs.id + ": maps out of representables are elements", [&] {
      for (int a = 0; a < site.n_objects(); ++a)
        for (std::size_t i = 0; i < fam.members.size(); ++i)
          if (w.hom(w.rep(a), fam.members[i]).size() !=
              static_cast<std::size_t>(fam.members[i].size(a)))
            return std::pair(false,
                             "a = " + site.object_name(a) + ", X = " + fam.names[i]);
      return std::pair(true, std::string());
    });

    add_check(out, bs.id + ": subobjects classify uniquely", [&] {
      for (std::size_t i = 0; i < fam.members.size(); ++i) {
        std::vector<SubPresheaf> subs = subobjects(fam.members[i], w.budget());
        if (w.hom(fam.members[i], om.obj).size() != subs.size())
          return std::pair(false, "count mismatch at X = " + fam.names[i]);
        for (const SubPresheaf& s : subs) {
          NatTrans chi = classify(om, s);
          if (unclassify(om, chi).member != s.member)
            return std::pair(false, "round trip failed at X = " + fam.names[i]);
        }
      }
      return std::pair(true, std::string());
    });

    add_check(out, bs.id + ": image factorizations are epi then mono", [&] {
      int tried = 0;
      for (std::size_t i = 0; i < fam.members.size(); ++i)
        for (std::size_t j = 0; j < fam.members.size(); ++j)
          for (const NatTrans& f : w.hom(fam.members[i], fam.members[j])) {
            Factorization fac = epi_mono_factorize(f);
            ++tried;
            if (!is_epic(fac.epi) || !is_monic(fac.mono) ||
                !(compose_nat(fac.mono, fac.epi) == f))
              return std::pair(false, fam.names[i] + " -> " + fam.names[j]);
          }
      return std::pair(true, std::to_string(tried) + " maps");
    });
  }
  return out;
}

}  // namespace

// ------------------------------------------------------------------ registry

const std::vector<BuiltinSite>& builtin_sites() {
  static const std::vector<BuiltinSite> sites = [] {
    std::vector<BuiltinSite> v;
    {
      RawCat raw;
      raw.objects = {"pt"};
      v.push_back({"terminal", "one object, identity only; presheaves are plain finite sets",
                   make_fincat(raw), SiteProfile{2, true, true, 2, 1, 1}});
    }
    {
      RawCat raw;
      raw.objects = {"x"};
      raw.arrows = {{"e", "x", "x"}};
      raw.compose = {{"e", "e", "e"}};
      v.push_back({"set-e",
                   "one idempotent endo; presheaves are sets with an idempotent endomap",
                   make_fincat(raw), SiteProfile{3, true, true, 2, 1, 1}});
    }
    {
      RawCat raw;
      raw.objects = {"0", "m", "1"};
      raw.arrows = {{"f0m", "0", "m"}, {"fm1", "m", "1"}, {"f01", "0", "1"}};
      raw.compose = {{"fm1", "f0m", "f01"}};
      v.push_back({"chain3", "the three-element total order 0 < m < 1", make_fincat(raw),
                   SiteProfile{2, false, true, 4, 3, 1}});
    }
    {
      RawCat raw;
      raw.objects = {"u", "v"};
      v.push_back({"discrete2", "two isolated objects; presheaves are pairs of sets",
                   make_fincat(raw), SiteProfile{2, false, false, 4, 1, 1}});
    }
    {
      RawCat raw;
      raw.objects = {"V", "E"};
      raw.arrows = {{"d0", "V", "E"}, {"d1", "V", "E"}, {"s", "E", "V"},
                    {"e0", "E", "E"}, {"e1", "E", "E"}};
      raw.compose = {{"s", "d0", "id_V"}, {"s", "d1", "id_V"}, {"d0", "s", "e0"},
                     {"d1", "s", "e1"},  {"e0", "d0", "d0"},  {"e0", "d1", "d0"},
                     {"e1", "d0", "d1"}, {"e1", "d1", "d1"},  {"s", "e0", "s"},
                     {"s", "e1", "s"},   {"e0", "e0", "e0"},  {"e0", "e1", "e0"},
                     {"e1", "e0", "e1"}, {"e1", "e1", "e1"}};
      v.push_back({"refl-graph", "vertices and edges with two endpoints and a reflexive loop",
                   make_fincat(raw), SiteProfile{2, true, true, 2, 1, 1}});
    }
    return v;
  }();
  return sites;
}

const BuiltinSite& builtin_site(const std::string& id) {
  for (const BuiltinSite& s : builtin_sites())
    if (s.id == id) return s;
  throw std::invalid_argument("unknown site: " + id);
}

SiteProfile computed_profile(const BuiltinSite& site) {
  SiteProfile p;
  p.profile_bound = site.expected.profile_bound;
  Workspace w(site.cat);
  AtomicContext ctx(w);
  CohesionReport rep = mclarty_report(w, p.profile_bound);
  p.full_diagnostics = rep.passes();
  p.gamma_omega = rep.gamma_omega;
  p.codiscrete_adjoint = check_sections_codiscrete(w, named_default_family(w), 2).ok;
  for (const Presheaf& x : enumerate_presheaves(site.cat, p.profile_bound)) {
    if (!ctx.atomic(x).atomic) continue;
    ++p.atomic_count;
    if (!global_sections(x).empty()) ++p.pointed_atomic_count;
  }
  return p;
}

// ------------------------------------------------------------------ suites

bool SuiteResult::all_pass() const { return failed() == 0; }

int SuiteResult::failed() const {
  int n = 0;
  for (const CheckResult& c : checks)
    if (!c.pass) ++n;
  return n;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "thmA",     "thmB",       "thmC",           "thmD",      "contractibility",
      "section3", "setE_atoms", "setE_exponentials", "two_sub_t", "density"};
  return ids;
}

SuiteResult run_suite(const std::string& id, int bound) {
  if (bound < 1) throw std::invalid_argument("bound must be at least 1");
  if (id == "thmA") return suite_thma(bound);
  if (id == "thmB") return suite_thmb(bound);
  if (id == "thmC") return suite_thmc(bound);
  if (id == "thmD") return suite_thmd(bound);
  if (id == "contractibility") return suite_contractibility(bound);
  if (id == "section3") return suite_section3(bound);
  if (id == "setE_atoms") return suite_sete_atoms(bound);
  if (id == "setE_exponentials") return suite_sete_exponentials(bound);
  if (id == "two_sub_t") return suite_two_sub_t(bound);
  if (id == "density") return suite_density(bound);
  throw std::invalid_argument("unknown suite: " + id);
}

// ------------------------------------------- singleton-square verification

std::vector<CheckResult> singleton_square_checks(AtomicContext& ctx, const Presheaf& t,
                                                 const NatTrans& p, const Presheaf& x,
                                                 const std::vector<Presheaf>& other_atoms) {
  Workspace& w = ctx.w;
  const OmegaObj& om = w.omega_obj();
  std::vector<CheckResult> out;
  NatTrans j = gen_singleton(ctx, t, p, x);
  const Presheaf& xt = ctx.radj(t, x).obj;
  const Presheaf& omt = ctx.radj(t, om.obj).obj;

  out.push_back({"monic", is_monic(j), ""});

  {
    NatTrans lhs = compose_nat(j, point_map(ctx, p, x));
    const Exponential& eox = w.exp(om.obj, x);
    const Exponential& eotx = w.exp(omt, x);
    NatTrans rhs = compose_nat(exp_post(eox, eotx, point_map(ctx, p, om.obj)),
                               singleton_map(om, eox));
    out.push_back({"point-square", lhs == rhs, ""});
  }

  {
    const Exponential& ext_t = w.exp(xt, t);
    const Exponential& eax = w.exp(omt, x);
    const Exponential& eax_t = w.exp(eax.obj, t);
    const Exponential& eat = w.exp(omt, t);
    const Exponential& eat_x = w.exp(eat.obj, x);
    const Exponential& eox = w.exp(om.obj, x);
    NatTrans lhs = compose_nat(
        exp_post(eat_x, eox, radj_counit(ctx, t, om.obj)),
        compose_nat(alpha_swap(eax, eax_t, eat, eat_x), exp_post(ext_t, eax_t, j)));
    NatTrans rhs = compose_nat(singleton_map(om, eox), radj_counit(ctx, t, x));
    out.push_back({"counit-square", lhs == rhs, ""});
  }

  {
    bool ok = true;
    std::string wit;
    int tried = 0;
    for (const Presheaf& s : other_atoms) {
      if (!ctx.atomic(s).atomic) continue;
      const Presheaf& oms = ctx.radj(s, om.obj).obj;
      for (const NatTrans& f : w.hom(t, s)) {
        NatTrans q = compose_nat(f, p);
        NatTrans j2 = gen_singleton(ctx, s, q, x);
        NatTrans xf = sub_f(ctx, f, x).map;
        NatTrans of = sub_f(ctx, f, om.obj).map;
        NatTrans lhs = compose_nat(exp_post(w.exp(omt, x), w.exp(oms, x), of), j);
        NatTrans rhs = compose_nat(j2, xf);
        ++tried;
        if (!(lhs == rhs) && ok) {
          ok = false;
          wit = "failed against the atom " + profile_of(s);
        }
      }
    }
    out.push_back({"derived-map-squares", ok, ok ? std::to_string(tried) + " squares" : wit});
  }

  if (presheaf_key(t) == presheaf_key(w.one())) {
    const Exponential& eox = w.exp(om.obj, x);
    const Exponential& eo1x = w.exp(omt, x);
    NatTrans lhs = compose_nat(j, canonical_one_iso(ctx, x));
    NatTrans rhs = compose_nat(exp_post(eox, eo1x, canonical_one_iso(ctx, om.obj)),
                               singleton_map(om, eox));
    out.push_back({"terminal-degeneracy", lhs == rhs, ""});
  }
  return out;
}

// ------------------------------------------------------------------ searches

bool explicit_exponential_crosscheck(Workspace& w, const Presheaf& x, const Presheaf& t) {
  const FinCat& site = *w.site();
  if (site.n_objects() != 1 || site.n_arrows() != 2)
    throw std::invalid_argument("crosscheck requires the one-idempotent site");
  int e_arrow = site.identity(0) == 0 ? 1 : 0;

  int na = t.size(0), nb = x.size(0);
  const std::vector<int>& alpha = t.act[e_arrow];
  const std::vector<int>& beta = x.act[e_arrow];

  // tables f : {0,1} x A -> B with f(0, alpha a) = beta(f(n, a)); flag 0 is
  // the idempotent-twisted row, flag 1 the plain one
  auto ok_table = [&](const std::vector<int>& f) {
    for (int n = 0; n < 2; ++n)
      for (int a = 0; a < na; ++a)
        if (f[alpha[a]] != beta[f[n * na + a]]) return false;
    return true;
  };
  std::vector<std::vector<int>> tables;
  std::vector<int> cur(2 * na, 0);
  while (true) {
    if (ok_table(cur)) tables.push_back(cur);
    int i = 2 * na - 1;
    while (i >= 0 && cur[i] == nb - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  auto table_index = [&](const std::vector<int>& f) {
    for (std::size_t i = 0; i < tables.size(); ++i)
      if (tables[i] == f) return static_cast<int>(i);
    return -1;
  };

  Presheaf ex;
  ex.site = w.site();
  ex.elems.resize(1);
  for (std::size_t i = 0; i < tables.size(); ++i) ex.elems[0].push_back("f" + std::to_string(i));
  ex.act.resize(2);
  ex.act[site.identity(0)].resize(tables.size());
  std::iota(ex.act[site.identity(0)].begin(), ex.act[site.identity(0)].end(), 0);
  ex.act[e_arrow].resize(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    std::vector<int> g(2 * na);
    for (int n = 0; n < 2; ++n)
      for (int a = 0; a < na; ++a) g[n * na + a] = tables[i][a];  // both rows become row 0
    ex.act[e_arrow][i] = table_index(g);
    if (ex.act[e_arrow][i] < 0) return false;
  }
  ex = checked(std::move(ex));

  const Exponential& gen = w.exp(x, t);
  if (static_cast<std::size_t>(gen.obj.size(0)) != tables.size()) return false;
  const ProductObj& yt = gen.ya_x[0];  // y x T
  int id_idx = gen.id_pos[0];

  // comparison: a table f becomes the transformation (m, a) -> f(flag(m), a)
  std::vector<std::vector<int>> comp(1);
  comp[0].resize(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    std::vector<int> cell_comp(yt.obj.size(0));
    for (int k = 0; k < yt.obj.size(0); ++k) {
      auto [m, a] = yt.pairs[0][k];
      int flag = (m == id_idx) ? 1 : 0;
      cell_comp[k] = tables[i][flag * na + a];
    }
    comp[0][i] = gen.cell_index(0, checked_nat(yt.obj, x, {cell_comp}));
  }
  NatTrans m = checked_nat(ex, gen.obj, std::move(comp));
  if (!is_natural_iso(m)) return false;

  // evaluation agreement: ev(f, a) = f(1, a)
  EvPack ep = ev_pack(gen);
  ProductObj ext = product(ex, t);
  std::vector<std::vector<int>> evc(1);
  evc[0].resize(ext.obj.size(0));
  for (int k = 0; k < ext.obj.size(0); ++k) {
    auto [fi, a] = ext.pairs[0][k];
    evc[0][k] = tables[fi][na + a];
  }
  NatTrans ev_explicit = checked_nat(ext.obj, x, std::move(evc));
  if (!(compose_nat(ep.ev, product_map(ext, ep.prod, m, identity_nat(t))) == ev_explicit))
    return false;

  // transpose agreement on maps out of the representable: the hatted map
  // sends c to the table (n, a) -> g(e^{1-n} c, a)
  const Presheaf& y = gen.rep[0];
  for (const NatTrans& g : gen.cell[0]) {
    std::vector<int> hat(y.size(0));
    for (int c = 0; c < y.size(0); ++c) {
      std::vector<int> tab(2 * na);
      for (int a = 0; a < na; ++a) {
        tab[0 * na + a] = g.comp[0][yt.pair_of(0, y.act[e_arrow][c], a)];
        tab[1 * na + a] = g.comp[0][yt.pair_of(0, c, a)];
      }
      hat[c] = table_index(tab);
      if (hat[c] < 0) return false;
    }
    NatTrans hat_nat = checked_nat(y, ex, {hat});
    if (!(compose_nat(m, hat_nat) == exp_transpose(gen, yt, g))) return false;
  }
  return true;
}

std::vector<CatPtr> monoid_sites(int order) {
  int k = order - 1;
  std::vector<CatPtr> out;
  std::set<std::vector<int>> seen;
  std::vector<int> entries(static_cast<std::size_t>(k) * k, 0);
  auto table = [&](int i, int j) {
    if (i == 0) return j;
    if (j == 0) return i;
    return entries[static_cast<std::size_t>(i - 1) * k + (j - 1)];
  };

  std::function<void(int)> rec = [&](int pos) {
    if (pos == k * k) {
      for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
          for (int l = 0; l < order; ++l)
            if (table(table(i, j), l) != table(i, table(j, l))) return;
      // canonical form under relabelings of the non-identity elements
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 1);
      std::vector<int> best;
      do {
        std::vector<int> inv(order);
        inv[0] = 0;
        for (int i = 0; i < k; ++i) inv[perm[i]] = i + 1;
        std::vector<int> flat;
        for (int i = 1; i < order; ++i)
          for (int j = 1; j < order; ++j) flat.push_back(inv[table(perm[i - 1], perm[j - 1])]);
        if (best.empty() || flat < best) best = flat;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (!seen.insert(best).second) return;

      RawCat raw;
      raw.objects = {"x"};
      auto arrow_name = [](int i) { return "a" + std::to_string(i); };
      for (int i = 1; i < order; ++i) raw.arrows.push_back({arrow_name(i), "x", "x"});
      for (int i = 1; i < order; ++i)
        for (int j = 1; j < order; ++j) {
          int h = table(i, j);
          raw.compose.push_back({arrow_name(i), arrow_name(j),
                                 h == 0 ? std::string("id_x") : arrow_name(h)});
        }
      out.push_back(make_fincat(raw));
      return;
    }
    for (int v = 0; v < order; ++v) {
      entries[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return out;
}

std::vector<CatPtr> poset_sites(int n) {
  std::vector<CatPtr> out;
  std::set<std::vector<char>> seen;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) pairs.push_back({i, j});

  for (std::uint32_t mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) le[i][i] = 1;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if (mask & (1u << b)) le[pairs[b].first][pairs[b].second] = 1;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && le[i][j] && le[j][i]) ok = false;
        for (int l = 0; l < n && ok; ++l)
          if (le[i][j] && le[j][l] && !le[i][l]) ok = false;
      }
    if (!ok) continue;

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
      std::vector<char> flat;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) flat.push_back(le[perm[i]][perm[j]]);
      if (best.empty() || flat < best) best = flat;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(best).second) continue;

    RawCat raw;
    auto obj_name = [](int i) { return "p" + std::to_string(i); };
    auto arr_name = [&](int i, int j) {
      return "f" + std::to_string(i) + std::to_string(j);
    };
    for (int i = 0; i < n; ++i) raw.objects.push_back(obj_name(i));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && le[i][j]) raw.arrows.push_back({arr_name(i, j), obj_name(i), obj_name(j)});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          if (i != j && j != l && i != l && le[i][j] && le[j][l])
            raw.compose.push_back({arr_name(j, l), arr_name(i, j), arr_name(i, l)});
    out.push_back(make_fincat(raw));
  }
  return out;
}

std::vector<SiteCatalogEntry> atom_site_search(int bound, const Budget& budget) {
  std::vector<std::pair<std::string, CatPtr>> sites;
  for (const BuiltinSite& b : builtin_sites()) sites.push_back({b.id, b.cat});
  for (int n = 1; n <= 3; ++n) {
    std::vector<CatPtr> ms = monoid_sites(n);
    for (std::size_t i = 0; i < ms.size(); ++i)
      sites.push_back({"monoid" + std::to_string(n) + "-" + std::to_string(i), ms[i]});
    std::vector<CatPtr> ps = poset_sites(n);
    for (std::size_t i = 0; i < ps.size(); ++i)
      sites.push_back({"poset" + std::to_string(n) + "-" + std::to_string(i), ps[i]});
  }

  std::vector<SiteCatalogEntry> out;
  for (auto& [id, cat] : sites) {
    SiteCatalogEntry entry{id, cat, {}};
    Workspace w(cat, budget);
    AtomicContext ctx(w);
    NamedFamily fam = named_default_family(w);
    std::vector<Presheaf> atoms;
    for (Presheaf& x : enumerate_presheaves(cat, bound, budget)) {
      if (!ctx.atomic(x).atomic) continue;
      atoms.push_back(terminal_like(x) ? w.one() : std::move(x));
    }
    std::vector<Presheaf> pointed;
    for (const Presheaf& t : atoms)
      if (!global_sections(t).empty()) pointed.push_back(t);
    for (const Presheaf& t : atoms) {
      CatalogAtomic ca;
      ca.object = t;
      ca.points = static_cast<int>(global_sections(t).size());
      if (ca.points > 0) ca.singleton_suite = aggregated_singleton_suite(ctx, t, fam, pointed);
      entry.atomics.push_back(std::move(ca));
    }
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace ptops
