#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "ptops/presheaf.hpp"

namespace ptops {

/** Explicit search budgets; every potentially explosive search takes one. */
struct Budget {
  std::uint64_t nat_states = 10'000'000;  // assignment states in enumerate_nat
  std::size_t max_subobjects = 10'000;
};

struct BudgetExceeded : std::runtime_error {
  std::uint64_t states;
  explicit BudgetExceeded(std::uint64_t n)
      : std::runtime_error("budget_exceeded after " + std::to_string(n) + " states"),
        states(n) {}
};

// ---------------------------------------------------------------- representables

/** The hom presheaf Hom(-, obj); elements are named by their arrows. */
Presheaf representable(const CatPtr& site, int obj);

/** Yoneda: the element x of X(obj) as a map out of the representable. */
NatTrans yoneda_nat(const Presheaf& x, int obj, int elem);

/** Yoneda inverse: a map out of a representable is its value on the identity. */
int yoneda_elem(const NatTrans& from_representable, int obj);

Presheaf terminal_presheaf(const CatPtr& site);
Presheaf initial_presheaf(const CatPtr& site);
Presheaf constant_presheaf(const CatPtr& site, const std::vector<std::string>& names);
Presheaf two_presheaf(const CatPtr& site);  // constant {"0","1"}

// ---------------------------------------------------------------- hom search

/**
 * All natural transformations X ⇒ Y in a fixed deterministic order.
 * Backtracking over components, assigning objects in ascending |X(a)| order
 * with naturality forcing propagated eagerly; throws BudgetExceeded when the
 * number of visited assignment states passes the budget.
 */
std::vector<NatTrans> enumerate_nat(const Presheaf& x, const Presheaf& y,
                                    const Budget& budget = {});

/** First natural isomorphism X ⇒ Y in enumeration order, if any. */
std::optional<NatTrans> iso_search(const Presheaf& x, const Presheaf& y,
                                   const Budget& budget = {});

// ---------------------------------------------------------------- finite limits

struct ProductObj {
  Presheaf obj;
  NatTrans p1, p2;
  std::vector<std::vector<std::pair<int, int>>> pairs;  // per object: index -> (left, right)
  std::vector<std::vector<std::vector<int>>> index;     // per object: left × right -> index

  int pair_of(int obj_i, int left, int right) const { return index[obj_i][left][right]; }
};

ProductObj product(const Presheaf& x, const Presheaf& y);
NatTrans pair_nat(const ProductObj& p, const NatTrans& f, const NatTrans& g);  // ⟨f,g⟩
NatTrans product_map(const ProductObj& src, const ProductObj& dst, const NatTrans& f,
                     const NatTrans& g);                     // f × g
NatTrans diagonal_nat(const ProductObj& xx);                 // ⟨id,id⟩
NatTrans swap_nat(const ProductObj& xy, const ProductObj& yx);
NatTrans bang_nat(const Presheaf& x);          // X ⇒ 1
NatTrans from_initial_nat(const Presheaf& x);  // 0 ⇒ X

struct EqualizerObj {
  SubPresheaf sub;      // of the common domain
  NatTrans inclusion;
};
EqualizerObj equalizer(const NatTrans& f, const NatTrans& g);

struct PullbackObj {
  ProductObj ambient;  // X × Y
  SubPresheaf sub;     // pairs agreeing in Z
  Presheaf obj;
  NatTrans to_left, to_right;
};
PullbackObj pullback(const NatTrans& f, const NatTrans& g);  // f : X ⇒ Z, g : Y ⇒ Z

// ---------------------------------------------------------------- finite colimits

struct CoproductObj {
  Presheaf obj;
  NatTrans in1, in2;
};
CoproductObj coproduct(const Presheaf& x, const Presheaf& y);
NatTrans copair_nat(const CoproductObj& c, const NatTrans& f, const NatTrans& g);

struct CoequalizerObj {
  Presheaf obj;
  NatTrans proj;  // from the common codomain
};
CoequalizerObj coequalizer(const NatTrans& f, const NatTrans& g);

struct PushoutObj {
  CoproductObj ambient;
  Presheaf obj;
  NatTrans from_left, from_right;
};
PushoutObj pushout(const NatTrans& f, const NatTrans& g);  // f : Z ⇒ X, g : Z ⇒ Y

// ---------------------------------------------------------------- elements, pi0

struct ElementsCat {
  CatPtr cat;                                // objects named "a:x"
  std::vector<std::pair<int, int>> obj_of;   // elements-object -> (site object, element)
};
ElementsCat category_of_elements(const Presheaf& x);

struct Pi0 {
  int count = 0;
  std::vector<std::vector<int>> comp_of;  // per site object / element -> component id
};
Pi0 pi0(const Presheaf& x);

/** Induced map on connected components; checked to be well defined. */
std::vector<int> pi0_map(const Pi0& px, const Pi0& py, const NatTrans& f);

/** Global sections Nat(1, X), one element choice per object. */
std::vector<std::vector<int>> global_sections(const Presheaf& x);

/**
 * Rebuilds X as the colimit of representables over its category of elements
 * and compares: returns the canonical cocone-induced map colim ⇒ X, which
 * must be an isomorphism.
 */
struct DensityResult {
  Presheaf colim;
  NatTrans canonical;  // colim ⇒ X
  bool is_iso = false;
};
DensityResult density_check(const Presheaf& x);

// ---------------------------------------------------------------- image factorization

struct Factorization {
  Presheaf image;
  NatTrans epi;   // X ⇒ image
  NatTrans mono;  // image ⇒ Y
};
Factorization epi_mono_factorize(const NatTrans& f);

// ---------------------------------------------------------------- subobject classifier

struct OmegaObj {
  Presheaf obj;                                       // Ω(a) = sieves on a
  std::vector<std::vector<std::vector<int>>> sieves;  // per object: sieve -> sorted arrows
  NatTrans truth;                                     // 1 ⇒ Ω, the maximal sieves
};
OmegaObj omega(const CatPtr& site);

/** Characteristic map of a subpresheaf; pulls back truth to exactly the members. */
NatTrans classify(const OmegaObj& om, const SubPresheaf& s);

/** Members are the elements classified to the maximal sieve. */
SubPresheaf unclassify(const OmegaObj& om, const NatTrans& chi);

// ---------------------------------------------------------------- subobjects

/** All action-closed element selections, in deterministic order. */
std::vector<SubPresheaf> subobjects(const Presheaf& x, const Budget& budget = {});

/** The pointwise set complement, iff it happens to be action-closed. */
std::optional<SubPresheaf> complement(const SubPresheaf& s);
bool is_complemented(const SubPresheaf& s);

/** X is decidable iff the diagonal of X×X is complemented. */
bool is_decidable(const Presheaf& x);

}  // namespace ptops
