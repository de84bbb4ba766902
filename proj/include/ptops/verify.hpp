#pragma once

#include "ptops/cohesion.hpp"

namespace ptops {

// ---------------------------------------------------------------- registry

/** What the packaged site is expected to do, frozen as registry data. */
struct SiteProfile {
  int profile_bound = 2;        // enumeration bound the counts below refer to
  bool full_diagnostics = false;   // mclarty_report(profile_bound).passes()
  bool codiscrete_adjoint = false; // sections ⊣ codiscrete check succeeds
  int gamma_omega = 0;             // |Γ(Ω)|
  int atomic_count = 0;            // atomics among enumerated presheaves
  int pointed_atomic_count = 0;    // those with a global section

  bool operator==(const SiteProfile&) const = default;
};

struct BuiltinSite {
  std::string id;
  std::string note;
  CatPtr cat;
  SiteProfile expected;
};

const std::vector<BuiltinSite>& builtin_sites();
const BuiltinSite& builtin_site(const std::string& id);  // throws std::invalid_argument

/** Recomputes the profile live; registry data must reproduce it exactly. */
SiteProfile computed_profile(const BuiltinSite& site);

// ---------------------------------------------------------------- suites

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // replay instructions / counterexample on failure
};

struct SuiteResult {
  std::string suite;
  int bound = 0;
  std::vector<CheckResult> checks;

  bool all_pass() const;
  int failed() const;
};

/** The available suite ids, in canonical order. */
const std::vector<std::string>& suite_ids();

/**
 * Runs one verification suite at the given bound.  Checks appear in a fixed
 * deterministic order; a budget overrun fails the single check it interrupted
 * and the suite continues.  Unknown ids throw std::invalid_argument.
 */
SuiteResult run_suite(const std::string& id, int bound);

// -------------------------------------------------- singleton-square checks

/**
 * The five generalized-singleton checks for a pointed atom T and object X:
 * monicity of j, the point square, the counit square, the derived-map square
 * against every pointed atom S reachable from T, and (when T is terminal)
 * literal agreement with the plain singleton map.
 */
std::vector<CheckResult> singleton_square_checks(AtomicContext& ctx, const Presheaf& t,
                                                 const NatTrans& p, const Presheaf& x,
                                                 const std::vector<Presheaf>& other_atoms);

// ---------------------------------------------------------------- searches

/** Explicit two-variable exponential over the one-idempotent monoid site:
 * its elements at the unique object are the constrained tables
 * f : {0,1} × A -> B with f(0, α a) = β(f(n, a)), the action precomposes the
 * flag with the idempotent, and evaluation is f ↦ f(1, -).  Returns true
 * when this is naturally isomorphic to the generic exponential by an iso
 * commuting with evaluation and with transposition.
 */
bool explicit_exponential_crosscheck(Workspace& w, const Presheaf& x, const Presheaf& t);

struct CatalogAtomic {
  Presheaf object;
  int points = 0;                     // number of global sections
  std::vector<CheckResult> singleton_suite;  // run when points > 0
};

struct SiteCatalogEntry {
  std::string site_id;
  CatPtr cat;
  std::vector<CatalogAtomic> atomics;
};

/**
 * Enumerates small index categories — every monoid of order ≤ 3 and every
 * poset with ≤ 3 elements, both up to isomorphism, plus the packaged sites —
 * and catalogs their atomic presheaves (≤ bound elements per object), the
 * points of each, and the singleton-square suite outcome on each pointed one.
 */
std::vector<SiteCatalogEntry> atom_site_search(int bound, const Budget& budget = {});

/** All monoid multiplication tables of the given order, up to isomorphism. */
std::vector<CatPtr> monoid_sites(int order);

/** All posets on n elements as thin categories, up to isomorphism. */
std::vector<CatPtr> poset_sites(int n);

}  // namespace ptops
