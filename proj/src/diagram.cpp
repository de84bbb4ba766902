#include "ptops/diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ptops {

namespace {

void require_same_site(const Presheaf& x, const Presheaf& y, const char* who) {
  if (!x.same_site(y)) throw std::logic_error(std::string(who) + ": sites differ");
}

// Arrows into each object, the forcing direction used by searches.
std::vector<std::vector<int>> in_arrows(const FinCat& c) {
  std::vector<std::vector<int>> in(c.n_objects());
  for (int f = 0; f < c.n_arrows(); ++f) in[c.cod(f)].push_back(f);
  return in;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent[y] = x;  // keep the smaller index as representative
    return true;
  }
};

}  // namespace

Presheaf representable(const CatPtr& site, int obj) {
  const FinCat& c = *site;
  Presheaf y;
  y.site = site;
  y.elems.resize(c.n_objects());
  std::vector<std::vector<int>> arrows_at(c.n_objects());
  std::vector<int> pos(c.n_arrows(), -1);
  for (int a = 0; a < c.n_objects(); ++a) {
    arrows_at[a] = c.hom(a, obj);
    for (int i = 0; i < static_cast<int>(arrows_at[a].size()); ++i) {
      pos[arrows_at[a][i]] = i;
      y.elems[a].push_back(c.arrow_name(arrows_at[a][i]));
    }
  }
  y.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f)
    for (int u : arrows_at[c.cod(f)]) y.act[f].push_back(pos[c.compose(u, f)]);
  return checked(std::move(y));
}

NatTrans yoneda_nat(const Presheaf& x, int obj, int elem) {
  const FinCat& c = *x.site;
  Presheaf rep = representable(x.site, obj);
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (int u : c.hom(a, obj)) comp[a].push_back(x.act[u][elem]);
  return checked_nat(std::move(rep), x, std::move(comp));
}

int yoneda_elem(const NatTrans& from_representable, int obj) {
  const FinCat& c = *from_representable.dom.site;
  const int id_pos = from_representable.dom.elem_index(obj, c.arrow_name(c.identity(obj)));
  if (id_pos < 0) throw std::logic_error("yoneda_elem: domain is not the representable");
  return from_representable.comp[obj][id_pos];
}

Presheaf terminal_presheaf(const CatPtr& site) {
  return constant_presheaf(site, {"*"});
}

Presheaf initial_presheaf(const CatPtr& site) {
  return constant_presheaf(site, {});
}

Presheaf constant_presheaf(const CatPtr& site, const std::vector<std::string>& names) {
  const FinCat& c = *site;
  Presheaf x;
  x.site = site;
  x.elems.assign(c.n_objects(), names);
  x.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    x.act[f].resize(names.size());
    std::iota(x.act[f].begin(), x.act[f].end(), 0);
  }
  return checked(std::move(x));
}

Presheaf two_presheaf(const CatPtr& site) {
  return constant_presheaf(site, {"0", "1"});
}

std::vector<NatTrans> enumerate_nat(const Presheaf& x, const Presheaf& y,
                                    const Budget& budget) {
  require_same_site(x, y, "enumerate_nat");
  const FinCat& c = *x.site;
  const int nobj = c.n_objects();

  std::vector<int> obj_order(nobj);
  std::iota(obj_order.begin(), obj_order.end(), 0);
  std::sort(obj_order.begin(), obj_order.end(), [&](int a, int b) {
    return std::pair(x.size(a), a) < std::pair(x.size(b), b);
  });
  std::vector<std::pair<int, int>> slots;
  for (int o : obj_order)
    for (int e = 0; e < x.size(o); ++e) slots.push_back({o, e});

  const auto in = in_arrows(c);
  std::vector<std::vector<int>> comp(nobj);
  for (int o = 0; o < nobj; ++o) comp[o].assign(x.size(o), -1);

  std::uint64_t states = 0;
  std::vector<NatTrans> out;

  // Assign comp[b][e] = v and push every consequence along arrows into b.
  auto propagate = [&](int b, int e, int v,
                       std::vector<std::pair<int, int>>& trail) -> bool {
    std::vector<std::pair<int, int>> queue;
    auto set = [&](int o, int el, int val) -> bool {
      int& cur = comp[o][el];
      if (cur == val) return true;
      if (cur != -1) return false;
      cur = val;
      trail.push_back({o, el});
      queue.push_back({o, el});
      return true;
    };
    if (!set(b, e, v)) return false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [ob, el] = queue[qi];
      const int val = comp[ob][el];
      for (int f : in[ob])
        if (!set(c.dom(f), x.act[f][el], y.act[f][val])) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t si) {
    while (si < slots.size() && comp[slots[si].first][slots[si].second] != -1) ++si;
    if (si == slots.size()) {
      out.push_back(checked_nat(x, y, comp));
      return;
    }
    const auto [o, e] = slots[si];
    for (int v = 0; v < y.size(o); ++v) {
      if (++states > budget.nat_states) throw BudgetExceeded{states};
      std::vector<std::pair<int, int>> trail;
      if (propagate(o, e, v, trail)) rec(si + 1);
      for (auto [oo, ee] : trail) comp[oo][ee] = -1;
    }
  };
  rec(0);
  return out;
}

std::optional<NatTrans> iso_search(const Presheaf& x, const Presheaf& y,
                                   const Budget& budget) {
  require_same_site(x, y, "iso_search");
  const FinCat& c = *x.site;
  const int nobj = c.n_objects();
  for (int o = 0; o < nobj; ++o)
    if (x.size(o) != y.size(o)) return std::nullopt;

  std::vector<int> obj_order(nobj);
  std::iota(obj_order.begin(), obj_order.end(), 0);
  std::sort(obj_order.begin(), obj_order.end(), [&](int a, int b) {
    return std::pair(x.size(a), a) < std::pair(x.size(b), b);
  });
  std::vector<std::pair<int, int>> slots;
  for (int o : obj_order)
    for (int e = 0; e < x.size(o); ++e) slots.push_back({o, e});

  const auto in = in_arrows(c);
  std::vector<std::vector<int>> comp(nobj);
  std::vector<std::vector<char>> used(nobj);
  for (int o = 0; o < nobj; ++o) {
    comp[o].assign(x.size(o), -1);
    used[o].assign(y.size(o), 0);
  }

  std::uint64_t states = 0;
  std::optional<NatTrans> found;

  auto propagate = [&](int b, int e, int v,
                       std::vector<std::pair<int, int>>& trail) -> bool {
    std::vector<std::pair<int, int>> queue;
    auto set = [&](int o, int el, int val) -> bool {
      int& cur = comp[o][el];
      if (cur == val) return true;
      if (cur != -1) return false;
      if (used[o][val]) return false;  // injectivity per object
      cur = val;
      used[o][val] = 1;
      trail.push_back({o, el});
      queue.push_back({o, el});
      return true;
    };
    if (!set(b, e, v)) return false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [ob, el] = queue[qi];
      const int val = comp[ob][el];
      for (int f : in[ob])
        if (!set(c.dom(f), x.act[f][el], y.act[f][val])) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t si) {
    if (found) return;
    while (si < slots.size() && comp[slots[si].first][slots[si].second] != -1) ++si;
    if (si == slots.size()) {
      found = checked_nat(x, y, comp);
      return;
    }
    const auto [o, e] = slots[si];
    for (int v = 0; v < y.size(o) && !found; ++v) {
      if (used[o][v]) continue;
      if (++states > budget.nat_states) throw BudgetExceeded{states};
      std::vector<std::pair<int, int>> trail;
      if (propagate(o, e, v, trail)) rec(si + 1);
      for (auto [oo, ee] : trail) {
        used[oo][comp[oo][ee]] = 0;
        comp[oo][ee] = -1;
      }
    }
  };
  rec(0);
  return found;
}

ProductObj product(const Presheaf& x, const Presheaf& y) {
  require_same_site(x, y, "product");
  const FinCat& c = *x.site;
  ProductObj p;
  p.obj.site = x.site;
  p.obj.elems.resize(c.n_objects());
  p.pairs.resize(c.n_objects());
  p.index.resize(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o) {
    p.index[o].assign(x.size(o), std::vector<int>(y.size(o), -1));
    for (int i = 0; i < x.size(o); ++i)
      for (int j = 0; j < y.size(o); ++j) {
        p.index[o][i][j] = static_cast<int>(p.pairs[o].size());
        p.pairs[o].push_back({i, j});
        p.obj.elems[o].push_back("(" + x.elems[o][i] + "," + y.elems[o][j] + ")");
      }
  }
  p.obj.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    for (auto [i, j] : p.pairs[b]) p.obj.act[f].push_back(p.index[a][x.act[f][i]][y.act[f][j]]);
  }
  p.obj = checked(std::move(p.obj));

  std::vector<std::vector<int>> c1(c.n_objects()), c2(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o)
    for (auto [i, j] : p.pairs[o]) {
      c1[o].push_back(i);
      c2[o].push_back(j);
    }
  p.p1 = checked_nat(p.obj, x, std::move(c1));
  p.p2 = checked_nat(p.obj, y, std::move(c2));
  return p;
}

NatTrans pair_nat(const ProductObj& p, const NatTrans& f, const NatTrans& g) {
  if (!(f.dom == g.dom)) throw std::logic_error("pair_nat: domains differ");
  const std::size_t nobj = f.comp.size();
  std::vector<std::vector<int>> comp(nobj);
  for (std::size_t o = 0; o < nobj; ++o)
    for (std::size_t z = 0; z < f.comp[o].size(); ++z)
      comp[o].push_back(p.pair_of(static_cast<int>(o), f.comp[o][z], g.comp[o][z]));
  return checked_nat(f.dom, p.obj, std::move(comp));
}

NatTrans product_map(const ProductObj& src, const ProductObj& dst, const NatTrans& f,
                     const NatTrans& g) {
  const std::size_t nobj = src.pairs.size();
  std::vector<std::vector<int>> comp(nobj);
  for (std::size_t o = 0; o < nobj; ++o)
    for (auto [i, j] : src.pairs[o])
      comp[o].push_back(dst.pair_of(static_cast<int>(o), f.comp[o][i], g.comp[o][j]));
  return checked_nat(src.obj, dst.obj, std::move(comp));
}

NatTrans diagonal_nat(const ProductObj& xx) {
  const NatTrans id = identity_nat(xx.p1.cod);
  return pair_nat(xx, id, id);
}

NatTrans swap_nat(const ProductObj& xy, const ProductObj& yx) {
  const std::size_t nobj = xy.pairs.size();
  std::vector<std::vector<int>> comp(nobj);
  for (std::size_t o = 0; o < nobj; ++o)
    for (auto [i, j] : xy.pairs[o]) comp[o].push_back(yx.pair_of(static_cast<int>(o), j, i));
  return checked_nat(xy.obj, yx.obj, std::move(comp));
}

NatTrans bang_nat(const Presheaf& x) {
  Presheaf one = terminal_presheaf(x.site);
  std::vector<std::vector<int>> comp(x.elems.size());
  for (std::size_t o = 0; o < x.elems.size(); ++o) comp[o].assign(x.elems[o].size(), 0);
  return checked_nat(x, std::move(one), std::move(comp));
}

NatTrans from_initial_nat(const Presheaf& x) {
  Presheaf zero = initial_presheaf(x.site);
  std::vector<std::vector<int>> comp(x.elems.size());
  return checked_nat(std::move(zero), x, std::move(comp));
}

EqualizerObj equalizer(const NatTrans& f, const NatTrans& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw std::logic_error("equalizer: parallel pair required");
  std::vector<std::vector<char>> member(f.comp.size());
  for (std::size_t o = 0; o < f.comp.size(); ++o) {
    member[o].resize(f.comp[o].size());
    for (std::size_t v = 0; v < f.comp[o].size(); ++v)
      member[o][v] = (f.comp[o][v] == g.comp[o][v]) ? 1 : 0;
  }
  SubPresheaf sub = checked_sub(f.dom, std::move(member));
  NatTrans incl = sub.inclusion();
  return {std::move(sub), std::move(incl)};
}

PullbackObj pullback(const NatTrans& f, const NatTrans& g) {
  if (!(f.cod == g.cod)) throw std::logic_error("pullback: cospan required");
  PullbackObj pb{product(f.dom, g.dom), {}, {}, {}, {}};
  std::vector<std::vector<char>> member(pb.ambient.pairs.size());
  for (std::size_t o = 0; o < pb.ambient.pairs.size(); ++o)
    for (auto [i, j] : pb.ambient.pairs[o])
      member[o].push_back(f.comp[o][i] == g.comp[o][j] ? 1 : 0);
  pb.sub = checked_sub(pb.ambient.obj, std::move(member));
  pb.obj = pb.sub.to_presheaf();
  NatTrans incl = pb.sub.inclusion();
  pb.to_left = compose_nat(pb.ambient.p1, incl);
  pb.to_right = compose_nat(pb.ambient.p2, incl);
  return pb;
}

CoproductObj coproduct(const Presheaf& x, const Presheaf& y) {
  require_same_site(x, y, "coproduct");
  const FinCat& c = *x.site;
  Presheaf s;
  s.site = x.site;
  s.elems.resize(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o) {
    for (const auto& n : x.elems[o]) s.elems[o].push_back("inl:" + n);
    for (const auto& n : y.elems[o]) s.elems[o].push_back("inr:" + n);
  }
  s.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    for (int v = 0; v < x.size(b); ++v) s.act[f].push_back(x.act[f][v]);
    for (int v = 0; v < y.size(b); ++v) s.act[f].push_back(x.size(a) + y.act[f][v]);
  }
  Presheaf obj = checked(std::move(s));

  std::vector<std::vector<int>> c1(c.n_objects()), c2(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o) {
    for (int v = 0; v < x.size(o); ++v) c1[o].push_back(v);
    for (int v = 0; v < y.size(o); ++v) c2[o].push_back(x.size(o) + v);
  }
  NatTrans in1 = checked_nat(x, obj, std::move(c1));
  NatTrans in2 = checked_nat(y, obj, std::move(c2));
  return {std::move(obj), std::move(in1), std::move(in2)};
}

NatTrans copair_nat(const CoproductObj& c, const NatTrans& f, const NatTrans& g) {
  if (!(f.cod == g.cod)) throw std::logic_error("copair_nat: codomains differ");
  const std::size_t nobj = f.comp.size();
  std::vector<std::vector<int>> comp(nobj);
  for (std::size_t o = 0; o < nobj; ++o) {
    comp[o] = f.comp[o];
    comp[o].insert(comp[o].end(), g.comp[o].begin(), g.comp[o].end());
  }
  return checked_nat(c.obj, f.cod, std::move(comp));
}

CoequalizerObj coequalizer(const NatTrans& f, const NatTrans& g) {
  if (!(f.dom == g.dom) || !(f.cod == g.cod))
    throw std::logic_error("coequalizer: parallel pair required");
  const Presheaf& y = f.cod;
  const FinCat& c = *y.site;

  std::vector<int> offset(c.n_objects() + 1, 0);
  for (int o = 0; o < c.n_objects(); ++o) offset[o + 1] = offset[o] + y.size(o);
  UnionFind uf(offset[c.n_objects()]);

  for (std::size_t o = 0; o < f.comp.size(); ++o)
    for (std::size_t v = 0; v < f.comp[o].size(); ++v)
      uf.unite(offset[o] + f.comp[o][v], offset[o] + g.comp[o][v]);

  // Close the relation into a congruence for the presheaf action.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int fa = 0; fa < c.n_arrows(); ++fa) {
      const int a = c.dom(fa), b = c.cod(fa);
      for (int v = 0; v < y.size(b); ++v)
        for (int w = v + 1; w < y.size(b); ++w)
          if (uf.find(offset[b] + v) == uf.find(offset[b] + w))
            changed |= uf.unite(offset[a] + y.act[fa][v], offset[a] + y.act[fa][w]);
    }
  }

  Presheaf q;
  q.site = y.site;
  q.elems.resize(c.n_objects());
  std::vector<std::vector<int>> class_of(c.n_objects());
  std::vector<std::map<int, int>> class_index(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o) {
    class_of[o].resize(y.size(o));
    for (int v = 0; v < y.size(o); ++v) {
      const int root = uf.find(offset[o] + v);
      auto it = class_index[o].find(root);
      if (it == class_index[o].end()) {
        it = class_index[o].insert({root, static_cast<int>(q.elems[o].size())}).first;
        q.elems[o].push_back("[" + y.elems[o][root - offset[o]] + "]");
      }
      class_of[o][v] = it->second;
    }
  }
  q.act.resize(c.n_arrows());
  for (int fa = 0; fa < c.n_arrows(); ++fa) {
    const int a = c.dom(fa), b = c.cod(fa);
    q.act[fa].assign(q.elems[b].size(), -1);
    for (int v = 0; v < y.size(b); ++v) q.act[fa][class_of[b][v]] = class_of[a][y.act[fa][v]];
  }
  Presheaf obj = checked(std::move(q));
  NatTrans proj = checked_nat(y, obj, std::move(class_of));
  return {std::move(obj), std::move(proj)};
}

PushoutObj pushout(const NatTrans& f, const NatTrans& g) {
  if (!(f.dom == g.dom)) throw std::logic_error("pushout: span required");
  PushoutObj po{coproduct(f.cod, g.cod), {}, {}, {}};
  CoequalizerObj cq =
      coequalizer(compose_nat(po.ambient.in1, f), compose_nat(po.ambient.in2, g));
  po.obj = cq.obj;
  po.from_left = compose_nat(cq.proj, po.ambient.in1);
  po.from_right = compose_nat(cq.proj, po.ambient.in2);
  return po;
}

ElementsCat category_of_elements(const Presheaf& x) {
  const FinCat& c = *x.site;
  ElementsCat ec;
  std::vector<std::vector<int>> obj_index(c.n_objects());
  std::vector<std::string> objects;
  for (int o = 0; o < c.n_objects(); ++o) {
    obj_index[o].resize(x.size(o));
    for (int v = 0; v < x.size(o); ++v) {
      obj_index[o][v] = static_cast<int>(objects.size());
      objects.push_back(c.object_name(o) + ":" + x.elems[o][v]);
      ec.obj_of.push_back({o, v});
    }
  }

  // Arrow (f : a -> b, y in X(b)) : (a, X(f)(y)) -> (b, y).
  struct EArrow {
    int f, y;
  };
  std::vector<EArrow> earrows;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> arr_index(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    arr_index[f].resize(x.size(b));
    for (int y = 0; y < x.size(b); ++y) {
      arr_index[f][y] = static_cast<int>(arrows.size());
      earrows.push_back({f, y});
      arrows.push_back(Arrow{c.arrow_name(f) + ":" + x.elems[b][y],
                             obj_index[a][x.act[f][y]], obj_index[b][y]});
    }
  }

  std::vector<int> identity(objects.size());
  for (int o = 0; o < c.n_objects(); ++o)
    for (int v = 0; v < x.size(o); ++v)
      identity[obj_index[o][v]] = arr_index[c.identity(o)][v];

  const int n = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      if (arrows[f].cod != arrows[g].dom) continue;
      // f = (u, X(v)(z)), g = (v, z); composite is (v∘u, z).
      comp[g][f] = arr_index[c.compose(earrows[g].f, earrows[f].f)][earrows[g].y];
    }
  ec.cat = std::make_shared<const FinCat>(
      build_fincat(std::move(objects), std::move(arrows), std::move(identity), std::move(comp)));
  return ec;
}

Pi0 pi0(const Presheaf& x) {
  const FinCat& c = *x.site;
  std::vector<int> offset(c.n_objects() + 1, 0);
  for (int o = 0; o < c.n_objects(); ++o) offset[o + 1] = offset[o] + x.size(o);
  UnionFind uf(offset[c.n_objects()]);
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    for (int y = 0; y < x.size(b); ++y) uf.unite(offset[b] + y, offset[a] + x.act[f][y]);
  }
  Pi0 p;
  p.comp_of.resize(c.n_objects());
  std::map<int, int> ids;
  for (int o = 0; o < c.n_objects(); ++o) {
    p.comp_of[o].resize(x.size(o));
    for (int v = 0; v < x.size(o); ++v) {
      const int root = uf.find(offset[o] + v);
      auto it = ids.find(root);
      if (it == ids.end()) it = ids.insert({root, static_cast<int>(ids.size())}).first;
      p.comp_of[o][v] = it->second;
    }
  }
  p.count = static_cast<int>(ids.size());
  return p;
}

std::vector<int> pi0_map(const Pi0& px, const Pi0& py, const NatTrans& f) {
  std::vector<int> out(px.count, -1);
  for (std::size_t o = 0; o < f.comp.size(); ++o)
    for (std::size_t v = 0; v < f.comp[o].size(); ++v) {
      const int cx = px.comp_of[o][v];
      const int cy = py.comp_of[o][f.comp[o][v]];
      if (out[cx] != -1 && out[cx] != cy)
        throw std::logic_error("pi0_map: image not constant on a component");
      out[cx] = cy;
    }
  for (int v : out)
    if (v == -1) throw std::logic_error("pi0_map: empty component");
  return out;
}

std::vector<std::vector<int>> global_sections(const Presheaf& x) {
  auto nats = enumerate_nat(terminal_presheaf(x.site), x);
  std::vector<std::vector<int>> out;
  for (const auto& t : nats) {
    std::vector<int> s(t.comp.size());
    for (std::size_t o = 0; o < t.comp.size(); ++o) s[o] = t.comp[o][0];
    out.push_back(std::move(s));
  }
  return out;
}

DensityResult density_check(const Presheaf& x) {
  const FinCat& c = *x.site;
  // Colimit of representables over the category of elements, computed as the
  // quotient of the disjoint union of y_a over (a,elem) by the zigzag relation.
  struct Node {
    int eobj;  // index into elements-category objects, i.e. (a, elem)
    int u;     // arrow c -> a of the site
  };
  ElementsCat ec = category_of_elements(x);
  const int ne = static_cast<int>(ec.obj_of.size());

  std::vector<std::vector<Node>> nodes(c.n_objects());
  std::vector<int> offset(c.n_objects() + 1, 0);
  std::map<std::pair<int, int>, int> node_index;
  for (int co = 0; co < c.n_objects(); ++co) {
    for (int eo = 0; eo < ne; ++eo) {
      const int a = ec.obj_of[eo].first;
      for (int u : c.hom(co, a)) {
        node_index[{eo, u}] = offset[co] + static_cast<int>(nodes[co].size());
        nodes[co].push_back({eo, u});
      }
    }
    offset[co + 1] = offset[co] + static_cast<int>(nodes[co].size());
  }

  UnionFind uf(offset[c.n_objects()]);
  for (int co = 0; co < c.n_objects(); ++co)
    for (const Node& nd : nodes[co]) {
      // For each element-category arrow (f : a -> b, y) out of nd.eobj:
      // ((a, X(f)y), u) ~ ((b, y), f∘u).
      const auto [a, xv] = ec.obj_of[nd.eobj];
      for (int f = 0; f < c.n_arrows(); ++f) {
        if (c.dom(f) != a) continue;
        const int b = c.cod(f);
        for (int y = 0; y < x.size(b); ++y) {
          if (x.act[f][y] != xv) continue;
          const int eob = static_cast<int>(
              std::find(ec.obj_of.begin(), ec.obj_of.end(), std::pair(b, y)) -
              ec.obj_of.begin());
          uf.unite(node_index.at({nd.eobj, nd.u}), node_index.at({eob, c.compose(f, nd.u)}));
        }
      }
    }

  Presheaf colim;
  colim.site = x.site;
  colim.elems.resize(c.n_objects());
  std::vector<std::vector<int>> class_of(c.n_objects());
  std::vector<std::map<int, int>> class_index(c.n_objects());
  for (int co = 0; co < c.n_objects(); ++co) {
    class_of[co].resize(nodes[co].size());
    for (std::size_t i = 0; i < nodes[co].size(); ++i) {
      const int root = uf.find(offset[co] + static_cast<int>(i));
      auto it = class_index[co].find(root);
      if (it == class_index[co].end()) {
        const Node& rep = nodes[co][root - offset[co]];
        it = class_index[co].insert({root, static_cast<int>(colim.elems[co].size())}).first;
        colim.elems[co].push_back("[" + ec.cat->object_name(rep.eobj) + "·" +
                                  c.arrow_name(rep.u) + "]");
      }
      class_of[co][i] = it->second;
    }
  }
  colim.act.resize(c.n_arrows());
  for (int v = 0; v < c.n_arrows(); ++v) {
    const int a = c.dom(v), b = c.cod(v);
    colim.act[v].assign(colim.elems[b].size(), -1);
    for (std::size_t i = 0; i < nodes[b].size(); ++i) {
      const Node& nd = nodes[b][i];
      const int target = node_index.at({nd.eobj, c.compose(nd.u, v)});
      colim.act[v][class_of[b][i]] = class_of[a][target - offset[a]];
    }
  }
  DensityResult res{checked(std::move(colim)), {}, false};

  std::vector<std::vector<int>> comp(c.n_objects());
  for (int co = 0; co < c.n_objects(); ++co) {
    comp[co].assign(res.colim.elems[co].size(), -1);
    for (std::size_t i = 0; i < nodes[co].size(); ++i) {
      const Node& nd = nodes[co][i];
      const auto [a, xv] = ec.obj_of[nd.eobj];
      (void)a;
      comp[co][class_of[co][i]] = x.act[nd.u][xv];
    }
  }
  res.canonical = checked_nat(res.colim, x, std::move(comp));
  res.is_iso = is_natural_iso(res.canonical);
  return res;
}

Factorization epi_mono_factorize(const NatTrans& f) {
  const Presheaf& y = f.cod;
  std::vector<std::vector<char>> member(y.elems.size());
  for (std::size_t o = 0; o < y.elems.size(); ++o) {
    member[o].assign(y.elems[o].size(), 0);
    for (int v : f.comp[o]) member[o][v] = 1;
  }
  SubPresheaf img = checked_sub(y, std::move(member));
  Presheaf image = img.to_presheaf();
  NatTrans mono = img.inclusion();

  // Reindex f through the image.
  std::vector<std::vector<int>> down(y.elems.size());
  for (std::size_t o = 0; o < y.elems.size(); ++o) {
    down[o].assign(y.elems[o].size(), -1);
    for (std::size_t i = 0; i < mono.comp[o].size(); ++i) down[o][mono.comp[o][i]] = i;
  }
  std::vector<std::vector<int>> comp(f.comp.size());
  for (std::size_t o = 0; o < f.comp.size(); ++o)
    for (int v : f.comp[o]) comp[o].push_back(down[o][v]);
  NatTrans epi = checked_nat(f.dom, image, std::move(comp));
  return {std::move(image), std::move(epi), std::move(mono)};
}

OmegaObj omega(const CatPtr& site) {
  const FinCat& c = *site;
  OmegaObj om;
  om.obj.site = site;
  om.obj.elems.resize(c.n_objects());
  om.sieves.resize(c.n_objects());

  for (int a = 0; a < c.n_objects(); ++a) {
    std::vector<int> into;
    for (int f = 0; f < c.n_arrows(); ++f)
      if (c.cod(f) == a) into.push_back(f);
    const int m = static_cast<int>(into.size());
    std::vector<std::vector<int>> found;
    for (std::uint64_t mask = 0; mask < (1ull << m); ++mask) {
      std::vector<char> in_set(c.n_arrows(), 0);
      std::vector<int> members;
      for (int i = 0; i < m; ++i)
        if (mask & (1ull << i)) {
          in_set[into[i]] = 1;
          members.push_back(into[i]);
        }
      bool closed = true;
      for (int u : members) {
        for (int v = 0; v < c.n_arrows() && closed; ++v)
          if (c.cod(v) == c.dom(u) && !in_set[c.compose(u, v)]) closed = false;
        if (!closed) break;
      }
      if (closed) found.push_back(members);
    }
    std::sort(found.begin(), found.end(), [](const auto& s, const auto& t) {
      return std::pair(s.size(), s) < std::pair(t.size(), t);
    });
    om.sieves[a] = found;
    for (const auto& s : found) {
      std::string name = "{";
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) name += ",";
        name += c.arrow_name(s[i]);
      }
      name += "}";
      om.obj.elems[a].push_back(name);
    }
  }

  om.obj.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    for (const auto& s : om.sieves[b]) {
      std::vector<char> in_set(c.n_arrows(), 0);
      for (int u : s) in_set[u] = 1;
      std::vector<int> pulled;
      for (int v = 0; v < c.n_arrows(); ++v)
        if (c.cod(v) == a && in_set[c.compose(f, v)]) pulled.push_back(v);
      const auto it = std::find(om.sieves[a].begin(), om.sieves[a].end(), pulled);
      om.obj.act[f].push_back(static_cast<int>(it - om.sieves[a].begin()));
    }
  }
  om.obj = checked(std::move(om.obj));

  std::vector<std::vector<int>> truth_comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a) {
    std::vector<int> maximal;
    for (int f = 0; f < c.n_arrows(); ++f)
      if (c.cod(f) == a) maximal.push_back(f);
    const auto it = std::find(om.sieves[a].begin(), om.sieves[a].end(), maximal);
    truth_comp[a].push_back(static_cast<int>(it - om.sieves[a].begin()));
  }
  om.truth = checked_nat(terminal_presheaf(site), om.obj, std::move(truth_comp));
  return om;
}

NatTrans classify(const OmegaObj& om, const SubPresheaf& s) {
  const Presheaf& x = s.ambient;
  const FinCat& c = *x.site;
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int a = 0; a < c.n_objects(); ++a)
    for (int v = 0; v < x.size(a); ++v) {
      std::vector<int> sieve;
      for (int u = 0; u < c.n_arrows(); ++u)
        if (c.cod(u) == a && s.member[c.dom(u)][x.act[u][v]]) sieve.push_back(u);
      const auto it = std::find(om.sieves[a].begin(), om.sieves[a].end(), sieve);
      if (it == om.sieves[a].end()) throw std::logic_error("classify: not a sieve");
      comp[a].push_back(static_cast<int>(it - om.sieves[a].begin()));
    }
  return checked_nat(x, om.obj, std::move(comp));
}

SubPresheaf unclassify(const OmegaObj& om, const NatTrans& chi) {
  const Presheaf& x = chi.dom;
  std::vector<std::vector<char>> member(x.elems.size());
  for (std::size_t a = 0; a < x.elems.size(); ++a) {
    const int top = om.truth.comp[a][0];
    member[a].resize(x.elems[a].size());
    for (std::size_t v = 0; v < x.elems[a].size(); ++v)
      member[a][v] = (chi.comp[a][v] == top) ? 1 : 0;
  }
  return checked_sub(x, std::move(member));
}

std::vector<SubPresheaf> subobjects(const Presheaf& x, const Budget& budget) {
  const FinCat& c = *x.site;
  const auto in = in_arrows(c);
  std::vector<std::pair<int, int>> slots;
  for (int o = 0; o < c.n_objects(); ++o)
    for (int v = 0; v < x.size(o); ++v) slots.push_back({o, v});

  std::vector<std::vector<int>> state(c.n_objects());  // -1 undecided, 0 out, 1 in
  for (int o = 0; o < c.n_objects(); ++o) state[o].assign(x.size(o), -1);

  std::vector<SubPresheaf> out;

  // Including an element forces its whole forward orbit in.
  auto include = [&](int o, int v, std::vector<std::pair<int, int>>& trail) -> bool {
    std::vector<std::pair<int, int>> queue;
    auto set = [&](int oo, int vv) -> bool {
      int& cur = state[oo][vv];
      if (cur == 1) return true;
      if (cur == 0) return false;
      cur = 1;
      trail.push_back({oo, vv});
      queue.push_back({oo, vv});
      return true;
    };
    if (!set(o, v)) return false;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      auto [ob, el] = queue[qi];
      for (int f : in[ob])
        if (!set(c.dom(f), x.act[f][el])) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> rec = [&](std::size_t si) {
    while (si < slots.size() && state[slots[si].first][slots[si].second] != -1) ++si;
    if (si == slots.size()) {
      std::vector<std::vector<char>> member(c.n_objects());
      for (int o = 0; o < c.n_objects(); ++o) {
        member[o].resize(x.size(o));
        for (int v = 0; v < x.size(o); ++v) member[o][v] = state[o][v] == 1 ? 1 : 0;
      }
      out.push_back(checked_sub(x, std::move(member)));
      if (out.size() > budget.max_subobjects)
        throw BudgetExceeded{static_cast<std::uint64_t>(out.size())};
      return;
    }
    const auto [o, v] = slots[si];
    state[o][v] = 0;
    rec(si + 1);
    state[o][v] = -1;
    std::vector<std::pair<int, int>> trail;
    if (include(o, v, trail)) rec(si + 1);
    for (auto [oo, vv] : trail) state[oo][vv] = -1;
  };
  rec(0);
  return out;
}

std::optional<SubPresheaf> complement(const SubPresheaf& s) {
  SubPresheaf comp = s;
  for (auto& m : comp.member)
    for (auto& b : m) b = b ? 0 : 1;
  if (!subpresheaf_violations(comp).empty()) return std::nullopt;
  return comp;
}

bool is_complemented(const SubPresheaf& s) { return complement(s).has_value(); }

bool is_decidable(const Presheaf& x) {
  ProductObj xx = product(x, x);
  std::vector<std::vector<char>> member(xx.pairs.size());
  for (std::size_t o = 0; o < xx.pairs.size(); ++o)
    for (auto [i, j] : xx.pairs[o]) member[o].push_back(i == j ? 1 : 0);
  return is_complemented(checked_sub(xx.obj, std::move(member)));
}

}  // namespace ptops
