#include "ptops/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace ptops {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Exhaustive identity and associativity check on an assembled table.
std::vector<std::string> law_violations(const std::vector<Arrow>& arrows,
                                        const std::vector<int>& identity,
                                        const std::vector<std::vector<int>>& comp) {
  std::vector<std::string> errors;
  const int n = static_cast<int>(arrows.size());
  auto name = [&](int f) { return arrows[f].name; };

  for (std::size_t o = 0; o < identity.size(); ++o) {
    const int e = identity[o];
    if (e < 0 || e >= n || arrows[e].dom != static_cast<int>(o) || arrows[e].cod != static_cast<int>(o)) {
      errors.push_back("object #" + std::to_string(o) + " has no well-formed identity arrow");
    }
  }
  if (!errors.empty()) return errors;

  for (int g = 0; g < n; ++g) {
    for (int f = 0; f < n; ++f) {
      const bool ok = arrows[f].cod == arrows[g].dom;
      const int h = comp[g][f];
      if (ok && (h < 0 || h >= n))
        errors.push_back("missing composite (" + name(g) + " ∘ " + name(f) + ")");
      if (!ok && h != -1)
        errors.push_back("table entry for non-composable pair (" + name(g) + ", " + name(f) + ")");
      if (ok && h >= 0 && (arrows[h].dom != arrows[f].dom || arrows[h].cod != arrows[g].cod))
        errors.push_back("composite (" + name(g) + " ∘ " + name(f) + ") = " + name(h) +
                         " has wrong endpoints");
    }
  }
  if (!errors.empty()) return errors;

  for (int f = 0; f < n; ++f) {
    const int il = identity[arrows[f].cod], ir = identity[arrows[f].dom];
    if (comp[il][f] != f)
      errors.push_back("identity law fails: " + name(il) + " ∘ " + name(f) + " = " +
                       name(comp[il][f]));
    if (comp[f][ir] != f)
      errors.push_back("identity law fails: " + name(f) + " ∘ " + name(ir) + " = " +
                       name(comp[f][ir]));
  }

  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g) {
      if (arrows[f].cod != arrows[g].dom) continue;
      for (int h = 0; h < n; ++h) {
        if (arrows[g].cod != arrows[h].dom) continue;
        const int left = comp[h][comp[g][f]];
        const int right = comp[comp[h][g]][f];
        if (left != right)
          errors.push_back("associativity fails on (" + name(h) + ", " + name(g) + ", " +
                           name(f) + "): " + name(left) + " ≠ " + name(right));
      }
    }
  return errors;
}

}  // namespace

FinCat build_fincat(std::vector<std::string> objects, std::vector<Arrow> arrows,
                    std::vector<int> identity, std::vector<std::vector<int>> comp) {
  auto errors = law_violations(arrows, identity, comp);
  if (!errors.empty())
    throw std::invalid_argument("illegal category: " + join(errors, "; "));
  FinCat c;
  c.objects_ = std::move(objects);
  c.arrows_ = std::move(arrows);
  c.identity_ = std::move(identity);
  c.comp_ = std::move(comp);
  return c;
}

int FinCat::object_index(const std::string& name) const {
  for (int i = 0; i < n_objects(); ++i)
    if (objects_[i] == name) return i;
  return -1;
}

int FinCat::arrow_index(const std::string& name) const {
  for (int i = 0; i < n_arrows(); ++i)
    if (arrows_[i].name == name) return i;
  return -1;
}

int FinCat::compose(int g, int f) const {
  if (!composable(g, f))
    throw std::logic_error("compose(" + arrows_[g].name + ", " + arrows_[f].name +
                           "): not composable");
  return comp_[g][f];
}

std::vector<int> FinCat::hom(int a, int b) const {
  std::vector<int> out;
  for (int f = 0; f < n_arrows(); ++f)
    if (arrows_[f].dom == a && arrows_[f].cod == b) out.push_back(f);
  return out;
}

CatResult validate_category(const RawCat& raw) {
  std::vector<std::string> errors;

  std::vector<std::string> objects = raw.objects;
  std::sort(objects.begin(), objects.end());
  for (std::size_t i = 1; i < objects.size(); ++i)
    if (objects[i] == objects[i - 1]) errors.push_back("duplicate object name: " + objects[i]);
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());

  auto obj_index = [&](const std::string& n) {
    auto it = std::lower_bound(objects.begin(), objects.end(), n);
    return (it != objects.end() && *it == n) ? static_cast<int>(it - objects.begin()) : -1;
  };

  std::vector<Arrow> arrows;
  std::set<std::string> arrow_names;
  for (const auto& ra : raw.arrows) {
    if (!arrow_names.insert(ra.name).second) {
      errors.push_back("duplicate arrow name: " + ra.name);
      continue;
    }
    Arrow a{ra.name, obj_index(ra.dom), obj_index(ra.cod)};
    if (a.dom < 0) errors.push_back("arrow " + ra.name + " has unknown dom: " + ra.dom);
    if (a.cod < 0) errors.push_back("arrow " + ra.name + " has unknown cod: " + ra.cod);
    arrows.push_back(a);
  }

  // Identities: the reserved name id_<object> either designates an input
  // arrow (which must be a self-arrow) or is synthesised here.
  for (std::size_t o = 0; o < objects.size(); ++o) {
    const std::string id_name = "id_" + objects[o];
    if (arrow_names.count(id_name)) {
      for (const auto& a : arrows)
        if (a.name == id_name && (a.dom != static_cast<int>(o) || a.cod != static_cast<int>(o)))
          errors.push_back("arrow " + id_name + " must be a self-arrow of " + objects[o]);
    } else {
      arrows.push_back(Arrow{id_name, static_cast<int>(o), static_cast<int>(o)});
    }
  }

  if (!errors.empty()) return {nullptr, errors};

  std::sort(arrows.begin(), arrows.end(),
            [](const Arrow& x, const Arrow& y) { return x.name < y.name; });
  std::map<std::string, int> arr_index;
  for (int i = 0; i < static_cast<int>(arrows.size()); ++i) arr_index[arrows[i].name] = i;

  std::vector<int> identity(objects.size());
  for (std::size_t o = 0; o < objects.size(); ++o) identity[o] = arr_index["id_" + objects[o]];

  const int n = static_cast<int>(arrows.size());
  std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
  auto declare = [&](int g, int f, int h, const std::string& origin) {
    if (comp[g][f] != -1 && comp[g][f] != h) {
      errors.push_back("conflicting composites for (" + arrows[g].name + " ∘ " + arrows[f].name +
                       "): " + arrows[comp[g][f]].name + " vs " + arrows[h].name + origin);
      return;
    }
    comp[g][f] = h;
  };

  for (int f = 0; f < n; ++f) {
    declare(f, identity[arrows[f].dom], f, " (identity law)");
    declare(identity[arrows[f].cod], f, f, " (identity law)");
  }

  for (const auto& [gn, fn, hn] : raw.compose) {
    auto gi = arr_index.find(gn), fi = arr_index.find(fn), hi = arr_index.find(hn);
    if (gi == arr_index.end() || fi == arr_index.end() || hi == arr_index.end()) {
      errors.push_back("compose entry (" + gn + ", " + fn + ", " + hn + ") names unknown arrows");
      continue;
    }
    const int g = gi->second, f = fi->second, h = hi->second;
    if (arrows[f].cod != arrows[g].dom) {
      errors.push_back("compose entry for non-composable pair (" + gn + " ∘ " + fn + ")");
      continue;
    }
    if (arrows[h].dom != arrows[f].dom || arrows[h].cod != arrows[g].cod) {
      errors.push_back("composite (" + gn + " ∘ " + fn + ") = " + hn + " has wrong endpoints");
      continue;
    }
    declare(g, f, h, "");
  }
  if (!errors.empty()) return {nullptr, errors};

  errors = law_violations(arrows, identity, comp);
  if (!errors.empty()) return {nullptr, errors};

  return {std::make_shared<const FinCat>(build_fincat(std::move(objects), std::move(arrows),
                                                      std::move(identity), std::move(comp))),
          {}};
}

CatPtr make_fincat(const RawCat& raw) {
  auto res = validate_category(raw);
  if (!res.ok()) throw std::invalid_argument("illegal category: " + join(res.errors, "; "));
  return res.cat;
}

CatPtr opposite(const CatPtr& c) {
  std::vector<Arrow> arrows = c->arrows();
  for (auto& a : arrows) std::swap(a.dom, a.cod);
  const int n = c->n_arrows();
  std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (arrows[f].cod == arrows[g].dom) comp[g][f] = c->compose(f, g);
  std::vector<int> identity(c->n_objects());
  for (int o = 0; o < c->n_objects(); ++o) identity[o] = c->identity(o);
  return std::make_shared<const FinCat>(
      build_fincat(c->objects(), std::move(arrows), std::move(identity), std::move(comp)));
}

std::vector<std::string> functor_violations(const FinFunctor& f) {
  std::vector<std::string> errors;
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  if (static_cast<int>(f.obj_map.size()) != s.n_objects() ||
      static_cast<int>(f.arr_map.size()) != s.n_arrows())
    return {"functor maps have wrong lengths"};
  for (int o = 0; o < s.n_objects(); ++o)
    if (f.obj_map[o] < 0 || f.obj_map[o] >= t.n_objects())
      errors.push_back("object image out of range: " + s.object_name(o));
  for (int a = 0; a < s.n_arrows(); ++a)
    if (f.arr_map[a] < 0 || f.arr_map[a] >= t.n_arrows())
      errors.push_back("arrow image out of range: " + s.arrow_name(a));
  if (!errors.empty()) return errors;

  for (int a = 0; a < s.n_arrows(); ++a) {
    const int fa = f.arr_map[a];
    if (t.dom(fa) != f.obj_map[s.dom(a)] || t.cod(fa) != f.obj_map[s.cod(a)])
      errors.push_back("arrow " + s.arrow_name(a) + " image has wrong endpoints");
  }
  for (int o = 0; o < s.n_objects(); ++o)
    if (f.arr_map[s.identity(o)] != t.identity(f.obj_map[o]))
      errors.push_back("identity of " + s.object_name(o) + " not preserved");
  for (int g = 0; g < s.n_arrows(); ++g)
    for (int fa = 0; fa < s.n_arrows(); ++fa)
      if (s.composable(g, fa) &&
          f.arr_map[s.compose(g, fa)] != t.compose(f.arr_map[g], f.arr_map[fa]))
        errors.push_back("composition (" + s.arrow_name(g) + " ∘ " + s.arrow_name(fa) +
                         ") not preserved");
  return errors;
}

FinFunctor make_functor(CatPtr source, CatPtr target, std::vector<int> obj_map,
                        std::vector<int> arr_map) {
  FinFunctor f{std::move(source), std::move(target), std::move(obj_map), std::move(arr_map)};
  auto errors = functor_violations(f);
  if (!errors.empty()) throw std::invalid_argument("illegal functor: " + join(errors, "; "));
  return f;
}

KaroubiResult karoubi_envelope(const CatPtr& c) {
  std::vector<int> idems;
  for (int e = 0; e < c->n_arrows(); ++e)
    if (c->dom(e) == c->cod(e) && c->compose(e, e) == e) idems.push_back(e);
  std::sort(idems.begin(), idems.end(),
            [&](int x, int y) { return c->arrow_name(x) < c->arrow_name(y); });

  std::vector<std::string> objects;
  for (int e : idems) objects.push_back(c->arrow_name(e));
  std::vector<int> obj_of_idem(c->n_arrows(), -1);
  for (int i = 0; i < static_cast<int>(idems.size()); ++i) obj_of_idem[idems[i]] = i;

  // Arrows (f, e, e'): f with e'∘f∘e = f, named f|e>e'.
  struct KArrow {
    int f, e_dom, e_cod;
  };
  std::vector<KArrow> karrows;
  std::vector<Arrow> arrows;
  for (int de = 0; de < static_cast<int>(idems.size()); ++de)
    for (int ce = 0; ce < static_cast<int>(idems.size()); ++ce) {
      const int e = idems[de], e2 = idems[ce];
      for (int f = 0; f < c->n_arrows(); ++f) {
        if (c->dom(f) != c->dom(e) || c->cod(f) != c->dom(e2)) continue;
        if (c->compose(e2, c->compose(f, e)) != f) continue;
        karrows.push_back({f, de, ce});
        arrows.push_back(Arrow{
            c->arrow_name(f) + "|" + c->arrow_name(e) + ">" + c->arrow_name(e2), de, ce});
      }
    }
  std::vector<int> order(arrows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return arrows[x].name < arrows[y].name; });
  std::vector<Arrow> sorted_arrows;
  std::vector<KArrow> sorted_karrows;
  for (int i : order) {
    sorted_arrows.push_back(arrows[i]);
    sorted_karrows.push_back(karrows[i]);
  }

  std::map<std::tuple<int, int, int>, int> lookup;
  for (int i = 0; i < static_cast<int>(sorted_karrows.size()); ++i) {
    const auto& k = sorted_karrows[i];
    lookup[{k.f, k.e_dom, k.e_cod}] = i;
  }

  std::vector<int> identity(idems.size());
  for (int i = 0; i < static_cast<int>(idems.size()); ++i)
    identity[i] = lookup.at({idems[i], i, i});

  const int n = static_cast<int>(sorted_arrows.size());
  std::vector<std::vector<int>> comp(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f) {
      if (sorted_karrows[f].e_cod != sorted_karrows[g].e_dom) continue;
      comp[g][f] = lookup.at(
          {c->compose(sorted_karrows[g].f, sorted_karrows[f].f), sorted_karrows[f].e_dom,
           sorted_karrows[g].e_cod});
    }

  auto kc = std::make_shared<const FinCat>(
      build_fincat(std::move(objects), std::move(sorted_arrows), std::move(identity),
                   std::move(comp)));

  std::vector<int> emb_obj(c->n_objects()), emb_arr(c->n_arrows());
  for (int o = 0; o < c->n_objects(); ++o) emb_obj[o] = obj_of_idem[c->identity(o)];
  for (int f = 0; f < c->n_arrows(); ++f)
    emb_arr[f] = lookup.at({f, obj_of_idem[c->identity(c->dom(f))],
                            obj_of_idem[c->identity(c->cod(f))]});

  std::vector<int> idem_of_obj(idems.begin(), idems.end());
  return {kc, make_functor(c, kc, std::move(emb_obj), std::move(emb_arr)),
          std::move(idem_of_obj)};
}

bool idempotents_split(const FinCat& c) {
  for (int e = 0; e < c.n_arrows(); ++e) {
    if (c.dom(e) != c.cod(e) || c.compose(e, e) != e) continue;
    const int a = c.dom(e);
    bool split = false;
    for (int o = 0; o < c.n_objects() && !split; ++o)
      for (int r : c.hom(a, o)) {
        for (int s : c.hom(o, a))
          if (c.compose(s, r) == e && c.compose(r, s) == c.identity(o)) {
            split = true;
            break;
          }
        if (split) break;
      }
    if (!split) return false;
  }
  return true;
}

std::vector<std::vector<std::pair<int, int>>> comma_components(const FinFunctor& f, int j) {
  const FinCat& s = *f.source;
  const FinCat& t = *f.target;
  std::vector<std::pair<int, int>> nodes;  // (arrow u : j -> F(k), object k)
  std::map<std::pair<int, int>, int> node_index;
  for (int k = 0; k < s.n_objects(); ++k)
    for (int u : t.hom(j, f.obj_map[k])) {
      node_index[{u, k}] = static_cast<int>(nodes.size());
      nodes.push_back({u, k});
    }

  std::vector<int> parent(nodes.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };

  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    auto [u, k] = nodes[i];
    for (int v = 0; v < s.n_arrows(); ++v) {
      if (s.dom(v) != k) continue;
      const int u2 = t.compose(f.arr_map[v], u);
      unite(i, node_index.at({u2, s.cod(v)}));
    }
  }

  std::map<int, std::vector<std::pair<int, int>>> classes;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) classes[find(i)].push_back(nodes[i]);
  std::vector<std::vector<std::pair<int, int>>> out;
  for (auto& [root, members] : classes) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end());
  return out;
}

StructureReport structure_report(const FinCat& c) {
  StructureReport r;
  for (int o = 0; o < c.n_objects(); ++o) {
    bool initial = true, terminal = true;
    for (int x = 0; x < c.n_objects(); ++x) {
      if (c.hom(o, x).size() != 1) initial = false;
      if (c.hom(x, o).size() != 1) terminal = false;
    }
    if (initial && !r.initial_obj) r.initial_obj = o;
    if (terminal && !r.terminal_obj) r.terminal_obj = o;
  }

  r.has_binary_products = true;
  for (int a = 0; a < c.n_objects(); ++a)
    for (int b = a; b < c.n_objects(); ++b) {
      bool found = false;
      std::string witness;
      for (int p = 0; p < c.n_objects() && !found; ++p)
        for (int p1 : c.hom(p, a)) {
          for (int p2 : c.hom(p, b)) {
            bool universal = true;
            for (int x = 0; x < c.n_objects() && universal; ++x)
              for (int fa : c.hom(x, a)) {
                for (int fb : c.hom(x, b)) {
                  int count = 0;
                  for (int h : c.hom(x, p))
                    if (c.compose(p1, h) == fa && c.compose(p2, h) == fb) ++count;
                  if (count != 1) {
                    universal = false;
                    break;
                  }
                }
                if (!universal) break;
              }
            if (universal) {
              found = true;
              witness = c.object_name(a) + " x " + c.object_name(b) + " = " + c.object_name(p) +
                        " (" + c.arrow_name(p1) + ", " + c.arrow_name(p2) + ")";
              break;
            }
          }
          if (found) break;
        }
      if (!found) {
        r.has_binary_products = false;
        witness = c.object_name(a) + " x " + c.object_name(b) + ": none";
      }
      r.product_witnesses.push_back(witness);
    }

  if (r.terminal_obj) {
    bool all = true;
    for (int o = 0; o < c.n_objects(); ++o)
      if (c.hom(*r.terminal_obj, o).empty()) all = false;
    r.all_objects_pointed = all;
  }
  if (r.initial_obj) {
    bool all = true;
    for (int o = 0; o < c.n_objects(); ++o)
      if (c.hom(o, *r.initial_obj).empty()) all = false;
    r.all_objects_copointed = all;
  }
  r.all_idempotents_split = idempotents_split(c);
  return r;
}

}  // namespace ptops
