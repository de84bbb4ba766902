#pragma once

#include "ptops/atomic.hpp"

namespace ptops {

// ---------------------------------------------------------------- functors

/** Constant presheaf on n elements ("0" .. "n-1"), all actions identity. */
Presheaf discrete_presheaf(CatPtr site, int n);

/**
 * Codiscrete presheaf on n elements: at each object a its elements are the
 * functions (points of y_a) -> n, with action by precomposition.  Computed
 * by this pointwise formula and then validated against the sections ⊣
 * codiscrete adjunction check below (which can legitimately fail on sites
 * where no representable has a point).
 */
Presheaf codiscrete_presheaf(Workspace& w, int n);

/** Number of connected components (the pieces functor on objects). */
int pieces_count(const Presheaf& x);
bool is_connected(const Presheaf& x);

/** Number of global sections (the sections functor on objects). */
int sections_count(Workspace& w, const Presheaf& x);

// ------------------------------------------------- adjunction string checks

/** A test family with stable display names. */
struct NamedFamily {
  std::vector<std::string> names;
  std::vector<Presheaf> members;
};
NamedFamily named_default_family(Workspace& w, const std::vector<Presheaf>& extra = {});

struct AdjunctionCheck {
  bool ok = true;
  std::string failure;  // first failure, human-readable
};

/** pieces ⊣ discrete: Nat(X, Δn) ≅ Set(ΠX, n), naturally on the family. */
AdjunctionCheck check_pieces_discrete(Workspace& w, const NamedFamily& family, int max_set);

/** discrete ⊣ sections: Set(n, ΓX) ≅ Nat(Δn, X), naturally on the family. */
AdjunctionCheck check_discrete_sections(Workspace& w, const NamedFamily& family, int max_set);

/** sections ⊣ codiscrete: Set(ΓX, n) ≅ Nat(X, Λn), naturally on the family. */
AdjunctionCheck check_sections_codiscrete(Workspace& w, const NamedFamily& family, int max_set);

// ------------------------------------------------------ bounded enumeration

/**
 * All presheaves with at most `bound` elements at every object, up to
 * isomorphism: size profiles are iterated by (total, lex) order, action
 * tables are filled arrow-entry by arrow-entry with eager functoriality
 * pruning, and candidates are deduplicated by isomorphism search keeping
 * the first representative in enumeration order.
 */
std::vector<Presheaf> enumerate_presheaves(CatPtr site, int bound, const Budget& budget = {});

// ---------------------------------------------------------- McLarty report

struct CheckItem {
  std::string subject;
  bool ok = true;
};

struct CohesionReport {
  int bound = 0;
  bool delta_fully_faithful = true;       // hom-counts + unit iso on sets ≤ bound
  std::vector<CheckItem> counit_monic;    // ΔΓX ⇒ X monic, per tested presheaf
  std::vector<CheckItem> pi_products;     // Π(X×Y) ⇒ ΠX×ΠY bijective, per pair
  std::vector<CheckItem> nullstellensatz; // X initial or ΓX nonempty, per presheaf
  bool two_valued = true;
  int gamma_omega = 0;                    // |Γ(Ω)|
  std::vector<CheckItem> supports_split;  // the support epi X ⇒ im(X→1) splits
  std::string first_failure;

  bool passes() const;
};

/** Runs all diagnostics on the enumerated presheaves (≤ bound) and family. */
CohesionReport mclarty_report(Workspace& w, int bound, const Budget& budget = {});

// ------------------------------------------------------------- connectedness

/** ev⁰_A = ev ∘ ⟨id, p∘!⟩ : A^T ⇒ A, evaluation at the point p : 1 ⇒ T. */
NatTrans ev_at_point(Workspace& w, const Presheaf& a, const Presheaf& t, const NatTrans& p);

/** Checks that evaluation at the point is an isomorphism A^T ≅ A. */
bool no_motion_check(Workspace& w, const Presheaf& t, const NatTrans& p, const Presheaf& a);

/** A_0 : A ⇒ A_T, the transpose of evaluation at the point. */
NatTrans point_transpose(AtomicContext& ctx, const Presheaf& t, const NatTrans& p,
                         const Presheaf& a);

// ----------------------------------------------------- rigidity of adjoints

struct RigidityResult {
  bool gamma_iso = false;  // Γ(Y_T) ≅ Γ(Y) via untransposition at the point-free 1 ≅ 1^T
  bool pi_iso = false;     // Π(Y_!) : Π(Y_T) ⇒ Π(Y) bijective
};
RigidityResult right_adjoint_rigidity(AtomicContext& ctx, const Presheaf& t, const Presheaf& y);

// ------------------------------------------------------------ contractibility

/** Is every exponential T^X connected over the family? */
bool is_contractible_family(Workspace& w, const Presheaf& t, const std::vector<Presheaf>& family);

struct ContractibilityReport {
  bool pointed = false;              // T has a point; the *_zero maps need one
  bool two_zero_iso = false;         // 2_0 : 2 ⇒ 2_T iso (when pointed)
  std::vector<CheckItem> a_zero;     // A_0 : A ⇒ A_T iso, per decidable A ≤ bound
  std::vector<CheckItem> pi_exp;     // Π(σ_X) : ΠX ⇒ Π(X^T) bijective, per family X
  bool family_connected = true;      // pieces(T^X) = 1 per family X

  bool all_positive() const;
  bool indicators_agree() const;     // the criteria answer jointly
};
ContractibilityReport atomic_contractible(AtomicContext& ctx, const Presheaf& t, int bound,
                                          const NamedFamily& family,
                                          const Budget& budget = {});

// ------------------------------------------------------- decidables & atoms

struct DecAtomReport {
  int decidable_count = 0;
  int atomic_count = 0;
  std::vector<CheckItem> atomic_decidable_terminal;  // each such object is terminal
  bool delta_reflects_atomic = true;                 // Δn atomic ⇒ n = 1, n ≤ bound
  bool pi_preserves_atomic = true;                   // atomic ⇒ connected, ≤ bound
};
DecAtomReport decidables_and_atoms(AtomicContext& ctx, int bound, const Budget& budget = {});

}  // namespace ptops
