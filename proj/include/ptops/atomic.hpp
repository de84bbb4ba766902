#pragma once

#include <functional>

#include "ptops/workspace.hpp"

namespace ptops {

struct TinyWitness {
  int rep_obj = -1;     // c with the subject a retract of y_c
  NatTrans section;     // subject ⇒ y_c
  NatTrans retraction;  // y_c ⇒ subject, with retraction∘section = id
};

struct TinySearchLog {
  std::vector<std::pair<int, std::uint64_t>> pairs_tried;  // per candidate object
  std::uint64_t total = 0;
};

struct TinyVerdict {
  bool tiny = false;
  std::optional<TinyWitness> witness;
  TinySearchLog log;  // a completed-search certificate when !tiny
};

/** Searches for a retract presentation of x by a representable. */
TinyVerdict is_tiny(Workspace& w, const Presheaf& x);

/**
 * T is atomic iff y_a × T is tiny for every site object a.  A positive
 * verdict carries one retract witness per object; a negative one carries the
 * first failing object together with its exhausted search log.
 */
struct AtomicityVerdict {
  Presheaf subject;
  bool atomic = false;
  std::vector<TinyWitness> witnesses;
  int failing_obj = -1;
  TinySearchLog refutation;
};

/**
 * The right adjoint X_T to (-)^T, computed pointwise as
 *   X_T(a) = Nat((y_a)^T, X)
 * with action by precomposition with (y_f)^T.  When T is not atomic the
 * object is still assembled, flagged candidate_only, and the first
 * counting failure of the would-be adjunction over the default family is
 * recorded instead of witnesses.
 */
struct RightAdjointObj {
  Presheaf atom, target;  // T and X
  Presheaf obj;           // X_T
  std::vector<std::vector<NatTrans>> cell;  // per a: Nat((y_a)^T, X)
  bool candidate_only = false;
  std::string adjunction_failure;

  int cell_index(int a, const NatTrans& t) const;  // throws when absent
};

/** Memoizes atomicity verdicts and right adjoints on top of a workspace. */
class AtomicContext {
 public:
  explicit AtomicContext(Workspace& workspace) : w(workspace) {}
  Workspace& w;

  const AtomicityVerdict& atomic(const Presheaf& t);
  const RightAdjointObj& radj(const Presheaf& t, const Presheaf& x);

 private:
  std::map<std::string, AtomicityVerdict> verdicts_;
  std::map<std::string, RightAdjointObj> radjs_;
};

/** The map of representables y_f : y_dom ⇒ y_cod for a site arrow. */
NatTrans rep_map(Workspace& w, int arrow);

// The adjunction (-)^T ⊣ (-)_T, element level.  All four require T atomic
// (untranspose and counit use the retract witnesses).
NatTrans radj_transpose(AtomicContext& ctx, const Presheaf& t, const Presheaf& y,
                        const NatTrans& h);  // h : Y^T ⇒ X  gives  Y ⇒ X_T
NatTrans radj_untranspose(AtomicContext& ctx, const Presheaf& t, const Presheaf& x,
                          const NatTrans& k);  // k : Y ⇒ X_T  gives  Y^T ⇒ X
NatTrans radj_unit(AtomicContext& ctx, const Presheaf& t, const Presheaf& y);  // Y ⇒ (Y^T)_T
NatTrans radj_counit(AtomicContext& ctx, const Presheaf& t, const Presheaf& x);  // (X_T)^T ⇒ X

/** Functoriality of (-)_T : h : X ⇒ Y gives h_T : X_T ⇒ Y_T. */
NatTrans radj_post(AtomicContext& ctx, const Presheaf& t, const NatTrans& h);

/**
 * The derived map X_f : X_T ⇒ X_S for f : T ⇒ S between atomics, the unique
 * map with ε_S∘(X_f)^S = ε_T∘(X_T)^f; uniqueness is re-verified by search
 * when check_unique is set.
 */
struct SubFResult {
  NatTrans map;
  bool unique = true;
  int matches = 1;
};
SubFResult sub_f(AtomicContext& ctx, const NatTrans& f, const Presheaf& x,
                 bool check_unique = false);

/** The canonical isomorphism X ⇒ X_1 (1 the terminal atom). */
NatTrans canonical_one_iso(AtomicContext& ctx, const Presheaf& x);

/** X_p : X ⇒ X_T induced by a point p : 1 ⇒ T, through X ≅ X_1. */
NatTrans point_map(AtomicContext& ctx, const NatTrans& p, const Presheaf& x);

/** X_! : X_T ⇒ X induced by T ⇒ 1, through X_1 ≅ X. */
NatTrans copoint_map(AtomicContext& ctx, const Presheaf& t, const Presheaf& x);

/**
 * The generalized singleton j_{p,X} : X_T ⇒ (Ω_T)^X for a pointed atom:
 * the X-transpose of (δ_X)_T ∘ ξ ∘ (1 × X_p), where δ_X classifies the
 * diagonal and ξ is the product-comparison inverse.
 */
NatTrans gen_singleton(AtomicContext& ctx, const Presheaf& t, const NatTrans& p,
                       const Presheaf& x);

struct Splitting {
  Presheaf q;           // retract object
  NatTrans section;     // Q ⇒ T
  NatTrans retraction;  // T ⇒ Q, retraction∘section = id
};

/** Splits an idempotent r : T ⇒ T through its image. */
Splitting split_idempotent(const NatTrans& r);

/**
 * The retract construction of a right adjoint to (-)^Q for Q a retract of an
 * atomic T: Z is the image of X_{i∘q}, and the bijection
 * Nat(Y^Q, X) ≅ Nat(Y, Z) is realized by explicit mutually inverse maps.
 */
struct RetractRadjResult {
  Presheaf z;
  NatTrans e, m;  // X_T ⇒ Z ⇒ X_T factoring X_(i∘q)
  bool bijection_ok = false;       // Ψ and Ψ⁻¹ mutually inverse on all tested Y
  bool natural_ok = false;         // Ψ natural in Y over the tested maps
  bool agrees_with_direct = false; // κ = X_q∘m iso and Φ_Q(f) = κ∘Ψ(f) throughout
};
RetractRadjResult retract_right_adjoint(AtomicContext& ctx, const Presheaf& t,
                                        const Splitting& s, const Presheaf& x,
                                        const std::vector<Presheaf>& test_family);

// ------------------------------------------------------- functor-level data

/** A rule assigning to each presheaf a transformation (a functor-level map). */
using PresheafMap = std::function<NatTrans(const Presheaf&)>;

/**
 * Functor-level naturality of phi over a finite test family: for every
 * member map h : A ⇒ B, act_of(h) must commute with phi at A and B.
 * act_of receives h and must return the pair (F h, G h).
 */
bool family_natural(Workspace& w, const std::vector<Presheaf>& family, const PresheafMap& phi,
                    const std::function<std::pair<NatTrans, NatTrans>(const NatTrans&)>& act_of);

/** ψ_X := ε_S ∘ (φ_(X^T) ∘ η_T)^S : X^S ⇒ X^T from φ : (-)_T ⇒ (-)_S. */
NatTrans phi_to_psi_at(AtomicContext& ctx, const Presheaf& t, const Presheaf& s,
                       const PresheafMap& phi, const Presheaf& x);

/** φ_X := (ε_T ∘ ψ_(X_T))_S ∘ η_S : X_T ⇒ X_S from ψ : (-)^S ⇒ (-)^T. */
NatTrans psi_to_phi_at(AtomicContext& ctx, const Presheaf& t, const Presheaf& s,
                       const PresheafMap& psi, const Presheaf& x);

/** ψ_X : X×B ⇒ X×A from φ : (-)^A ⇒ (-)^B by (un)transposing. */
NatTrans exp_to_prod_at(Workspace& w, const Presheaf& a, const Presheaf& b,
                        const PresheafMap& phi, const Presheaf& x);

/**
 * Recovers f := π_A ∘ ψ_1 ∘ π_B⁻¹ from ψ : (-)×B ⇒ (-)×A and decides whether
 * ψ_X = X×f on the whole family (exactly when the projection triangles
 * commute).
 */
struct RecoverArrow {
  bool triangle_ok = false;
  std::optional<NatTrans> arrow;  // f : B ⇒ A
  bool is_product_form = false;
};
RecoverArrow recover_arrow(Workspace& w, const Presheaf& a, const Presheaf& b,
                           const PresheafMap& psi, const std::vector<Presheaf>& family);

}  // namespace ptops
