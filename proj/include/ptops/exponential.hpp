#pragma once

#include "ptops/diagram.hpp"

namespace ptops {

/**
 * The exponential target^base, computed pointwise as
 *   (Y^X)(a) = Nat(y_a × X, Y)
 * with the action of f : a -> b given by precomposition with y_f × id.
 * The table of cells (one vector of transformations per site object, in
 * enumeration order) is the working representation; obj carries the same
 * data as a presheaf with elements named f0, f1, ...
 */
struct Exponential {
  Presheaf base, target, obj;
  std::vector<Presheaf> rep;                 // y_a per site object
  std::vector<ProductObj> ya_x;              // y_a × base
  std::vector<std::vector<NatTrans>> cell;   // per a: Nat(y_a × base, target)
  std::vector<std::vector<int>> arrow_pos;   // [a][site arrow u] = index of u in y_a(dom u)
  std::vector<int> id_pos;                   // index of id_a in y_a(a)

  int cell_index(int a, const NatTrans& t) const;  // throws when absent
};

Exponential exponential(const Presheaf& target, const Presheaf& base, const Budget& budget = {});

struct EvPack {
  ProductObj prod;  // (Y^X) × X
  NatTrans ev;      // (Y^X) × X ⇒ Y
};
EvPack ev_pack(const Exponential& e);

/** h : Z×X ⇒ Y becomes Z ⇒ Y^X; zx must be the product of Z with e.base. */
NatTrans exp_transpose(const Exponential& e, const ProductObj& zx, const NatTrans& h);

/** k : Z ⇒ Y^X becomes Z×X ⇒ Y; the inverse of exp_transpose. */
NatTrans exp_untranspose(const Exponential& e, const ProductObj& zx, const NatTrans& k);

/** Covariant functoriality: h : Y ⇒ Y' gives h^X : Y^X ⇒ Y'^X. */
NatTrans exp_post(const Exponential& from, const Exponential& to, const NatTrans& h);

/** Contravariant functoriality: g : X' ⇒ X gives Y^g : Y^X ⇒ Y^X'. */
NatTrans exp_pre(const Exponential& from, const Exponential& to, const NatTrans& g);

/** σ : A ⇒ A^X, the transpose of the projection A×X ⇒ A (constant maps). */
NatTrans sigma_map(const Exponential& e);

/** {-} : X ⇒ Ω^X, the transpose of the classifier of the diagonal. */
NatTrans singleton_map(const OmegaObj& om, const Exponential& omega_x);

/**
 * The exchange isomorphism (A^X)^T ⇒ (A^T)^X.
 * ax = A^X, ax_t = (A^X)^T, at = A^T, at_x = (A^T)^X.
 */
NatTrans alpha_swap(const Exponential& ax, const Exponential& ax_t, const Exponential& at,
                    const Exponential& at_x);

/**
 * The distribution isomorphism (A×B)^X ⇒ A^X × B^X,
 * assembled as ⟨(π1)^X, (π2)^X⟩.
 */
NatTrans beta_dist(const Exponential& eabx, const ProductObj& ab, const Exponential& eax,
                   const Exponential& ebx, const ProductObj& prod_of_exps);

}  // namespace ptops
