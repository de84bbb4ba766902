#include "ptops/exponential.hpp"

#include <stdexcept>

namespace ptops {

int Exponential::cell_index(int a, const NatTrans& t) const {
  for (int i = 0; i < static_cast<int>(cell[a].size()); ++i)
    if (cell[a][i].comp == t.comp) return i;
  throw std::logic_error("cell_index: transformation is not a cell of the exponential");
}

Exponential exponential(const Presheaf& target, const Presheaf& base, const Budget& budget) {
  if (!target.same_site(base)) throw std::logic_error("exponential: sites differ");
  const CatPtr site = target.site;
  const FinCat& c = *site;
  Exponential e;
  e.base = base;
  e.target = target;

  e.rep.reserve(c.n_objects());
  e.ya_x.reserve(c.n_objects());
  e.cell.resize(c.n_objects());
  e.arrow_pos.assign(c.n_objects(), std::vector<int>(c.n_arrows(), -1));
  e.id_pos.resize(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a) {
    e.rep.push_back(representable(site, a));
    for (int b = 0; b < c.n_objects(); ++b) {
      const auto hom = c.hom(b, a);
      for (int i = 0; i < static_cast<int>(hom.size()); ++i) e.arrow_pos[a][hom[i]] = i;
    }
    e.id_pos[a] = e.arrow_pos[a][c.identity(a)];
    e.ya_x.push_back(product(e.rep[a], base));
    e.cell[a] = enumerate_nat(e.ya_x[a].obj, target, budget);
  }

  e.obj.site = site;
  e.obj.elems.resize(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (std::size_t i = 0; i < e.cell[a].size(); ++i)
      e.obj.elems[a].push_back("f" + std::to_string(i));

  e.obj.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    // y_f : y_a ⇒ y_b by postcomposition with f.
    std::vector<std::vector<int>> yf(c.n_objects());
    for (int o = 0; o < c.n_objects(); ++o)
      for (int u : c.hom(o, a)) yf[o].push_back(e.arrow_pos[b][c.compose(f, u)]);
    NatTrans yfn = checked_nat(e.rep[a], e.rep[b], std::move(yf));
    NatTrans shift = product_map(e.ya_x[a], e.ya_x[b], yfn, identity_nat(base));
    for (const auto& gamma : e.cell[b])
      e.obj.act[f].push_back(e.cell_index(a, compose_nat(gamma, shift)));
  }
  e.obj = checked(std::move(e.obj));
  return e;
}

EvPack ev_pack(const Exponential& e) {
  const FinCat& c = *e.obj.site;
  EvPack pack{product(e.obj, e.base), {}};
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (auto [g, x] : pack.prod.pairs[a])
      comp[a].push_back(e.cell[a][g].comp[a][e.ya_x[a].pair_of(a, e.id_pos[a], x)]);
  pack.ev = checked_nat(pack.prod.obj, e.target, std::move(comp));
  return pack;
}

NatTrans exp_transpose(const Exponential& e, const ProductObj& zx, const NatTrans& h) {
  const Presheaf& z = zx.p1.cod;
  if (!(zx.p2.cod == e.base)) throw std::logic_error("exp_transpose: wrong product");
  if (!(h.cod == e.target) || !(h.dom == zx.obj))
    throw std::logic_error("exp_transpose: wrong transformation");
  const FinCat& c = *z.site;
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (int v = 0; v < z.size(a); ++v) {
      // The cell y_a × X ⇒ Y sending (u : b -> a, x) to h_b(Z(u)(v), x).
      std::vector<std::vector<int>> g(c.n_objects());
      for (int b = 0; b < c.n_objects(); ++b)
        for (auto [upos, x] : e.ya_x[a].pairs[b]) {
          const int u = c.hom(b, a)[upos];
          g[b].push_back(h.comp[b][zx.pair_of(b, z.act[u][v], x)]);
        }
      comp[a].push_back(e.cell_index(a, NatTrans{e.ya_x[a].obj, e.target, std::move(g)}));
    }
  return checked_nat(z, e.obj, std::move(comp));
}

NatTrans exp_untranspose(const Exponential& e, const ProductObj& zx, const NatTrans& k) {
  const Presheaf& z = zx.p1.cod;
  if (!(zx.p2.cod == e.base)) throw std::logic_error("exp_untranspose: wrong product");
  if (!(k.cod == e.obj) || !(k.dom == z))
    throw std::logic_error("exp_untranspose: wrong transformation");
  const FinCat& c = *z.site;
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (auto [v, x] : zx.pairs[a])
      comp[a].push_back(
          e.cell[a][k.comp[a][v]].comp[a][e.ya_x[a].pair_of(a, e.id_pos[a], x)]);
  return checked_nat(zx.obj, e.target, std::move(comp));
}

NatTrans exp_post(const Exponential& from, const Exponential& to, const NatTrans& h) {
  if (!(from.base == to.base)) throw std::logic_error("exp_post: bases differ");
  if (!(h.dom == from.target) || !(h.cod == to.target))
    throw std::logic_error("exp_post: wrong transformation");
  const FinCat& c = *from.obj.site;
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (const auto& gamma : from.cell[a])
      comp[a].push_back(to.cell_index(a, compose_nat(h, gamma)));
  return checked_nat(from.obj, to.obj, std::move(comp));
}

NatTrans exp_pre(const Exponential& from, const Exponential& to, const NatTrans& g) {
  if (!(from.target == to.target)) throw std::logic_error("exp_pre: targets differ");
  if (!(g.dom == to.base) || !(g.cod == from.base))
    throw std::logic_error("exp_pre: wrong transformation");
  const FinCat& c = *from.obj.site;
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a) {
    NatTrans shift =
        product_map(to.ya_x[a], from.ya_x[a], identity_nat(from.rep[a]), g);
    for (const auto& gamma : from.cell[a])
      comp[a].push_back(to.cell_index(a, compose_nat(gamma, shift)));
  }
  return checked_nat(from.obj, to.obj, std::move(comp));
}

NatTrans sigma_map(const Exponential& e) {
  ProductObj ax = product(e.target, e.base);
  return exp_transpose(e, ax, ax.p1);
}

NatTrans singleton_map(const OmegaObj& om, const Exponential& omega_x) {
  if (!(omega_x.target == om.obj)) throw std::logic_error("singleton_map: target is not Ω");
  const Presheaf& x = omega_x.base;
  ProductObj xx = product(x, x);
  std::vector<std::vector<char>> member(xx.pairs.size());
  for (std::size_t o = 0; o < xx.pairs.size(); ++o)
    for (auto [i, j] : xx.pairs[o]) member[o].push_back(i == j ? 1 : 0);
  NatTrans chi = classify(om, checked_sub(xx.obj, std::move(member)));
  return exp_transpose(omega_x, xx, chi);
}

NatTrans alpha_swap(const Exponential& ax, const Exponential& ax_t, const Exponential& at,
                    const Exponential& at_x) {
  if (!(ax_t.target == ax.obj) || !(at_x.target == at.obj) || !(ax.target == at.target) ||
      !(ax.base == at_x.base) || !(at.base == ax_t.base))
    throw std::logic_error("alpha_swap: inconsistent exponentials");
  const Presheaf& x = ax.base;
  const Presheaf& t = at.base;
  const FinCat& c = *x.site;

  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (const auto& u_cell : ax_t.cell[a]) {  // u : y_a × T ⇒ A^X
      // Build v : y_a × X ⇒ A^T.
      std::vector<std::vector<int>> v(c.n_objects());
      for (int b = 0; b < c.n_objects(); ++b)
        for (auto [wpos, xv] : at_x.ya_x[a].pairs[b]) {
          const int w = c.hom(b, a)[wpos];
          // Build g : y_b × T ⇒ A at this (w, x).
          std::vector<std::vector<int>> g(c.n_objects());
          for (int co = 0; co < c.n_objects(); ++co)
            for (auto [zpos, tv] : at.ya_x[b].pairs[co]) {
              const int z = c.hom(co, b)[zpos];
              const int phi_idx =
                  u_cell.comp[co][ax_t.ya_x[a].pair_of(co, ax_t.arrow_pos[a][c.compose(w, z)],
                                                       tv)];
              const NatTrans& phi = ax.cell[co][phi_idx];
              g[co].push_back(
                  phi.comp[co][ax.ya_x[co].pair_of(co, ax.id_pos[co], x.act[z][xv])]);
            }
          v[b].push_back(at.cell_index(b, NatTrans{at.ya_x[b].obj, at.target, std::move(g)}));
        }
      comp[a].push_back(
          at_x.cell_index(a, NatTrans{at_x.ya_x[a].obj, at_x.target, std::move(v)}));
    }
  return checked_nat(ax_t.obj, at_x.obj, std::move(comp));
}

NatTrans beta_dist(const Exponential& eabx, const ProductObj& ab, const Exponential& eax,
                   const Exponential& ebx, const ProductObj& prod_of_exps) {
  NatTrans left = exp_post(eabx, eax, ab.p1);
  NatTrans right = exp_post(eabx, ebx, ab.p2);
  return pair_nat(prod_of_exps, left, right);
}

}  // namespace ptops
