#include "ptops/cohesion.hpp"

#include <algorithm>
#include <functional>
#include <map>
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

/** All functions [n] -> [m] as vectors, lexicographically. */
std::vector<std::vector<int>> set_maps(int n, int m) {
  std::vector<std::vector<int>> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  if (m == 0) return out;
  std::vector<int> cur(n, 0);
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0 && cur[i] == m - 1) cur[i--] = 0;
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

bool is_bijection(const std::vector<int>& m, int codomain) {
  if (static_cast<int>(m.size()) != codomain) return false;
  std::vector<char> hit(codomain, 0);
  for (int v : m) {
    if (v < 0 || v >= codomain || hit[v]) return false;
    hit[v] = 1;
  }
  return true;
}

/** Δu : Δn ⇒ Δm for a set map u. */
NatTrans discrete_map(CatPtr site, const std::vector<int>& u, int m) {
  Presheaf dn = discrete_presheaf(site, static_cast<int>(u.size()));
  Presheaf dm = discrete_presheaf(site, m);
  std::vector<std::vector<int>> comp(site->n_objects());
  for (int a = 0; a < site->n_objects(); ++a) comp[a] = u;
  return checked_nat(std::move(dn), std::move(dm), std::move(comp));
}

/** Index of a family among a presheaf's global sections. */
int section_index(const std::vector<std::vector<int>>& secs, const std::vector<int>& fam) {
  for (std::size_t i = 0; i < secs.size(); ++i)
    if (secs[i] == fam) return static_cast<int>(i);
  return -1;
}

/** Γh : ΓX → ΓY on section indices, for h : X ⇒ Y. */
std::vector<int> sections_map(const std::vector<std::vector<int>>& sx,
                              const std::vector<std::vector<int>>& sy, const NatTrans& h) {
  std::vector<int> out(sx.size());
  for (std::size_t i = 0; i < sx.size(); ++i) {
    std::vector<int> fam(sx[i].size());
    for (std::size_t a = 0; a < fam.size(); ++a) fam[a] = h.comp[a][sx[i][a]];
    out[i] = section_index(sy, fam);
  }
  return out;
}

/** Point data for the codiscrete construction. */
struct PointData {
  std::vector<std::vector<std::vector<int>>> pts;  // per object: points of y_a
  std::vector<std::vector<int>> push;              // per arrow u: point of y_dom -> point of y_cod
};

PointData point_data(Workspace& w) {
  const FinCat& site = *w.site();
  PointData d;
  d.pts.resize(site.n_objects());
  for (int a = 0; a < site.n_objects(); ++a) d.pts[a] = global_sections(w.rep(a));
  d.push.resize(site.n_arrows());
  for (int u = 0; u < site.n_arrows(); ++u) {
    int a = site.dom(u), b = site.cod(u);
    NatTrans yu = rep_map(w, u);
    d.push[u].resize(d.pts[a].size());
    for (std::size_t i = 0; i < d.pts[a].size(); ++i) {
      std::vector<int> fam(site.n_objects());
      for (int c = 0; c < site.n_objects(); ++c) fam[c] = yu.comp[c][d.pts[a][i][c]];
      d.push[u][i] = section_index(d.pts[b], fam);
    }
  }
  return d;
}

int encode_table(const std::vector<int>& table, int n) {
  int idx = 0;
  for (int v : table) idx = idx * n + v;
  return idx;
}

std::vector<int> decode_table(int idx, int len, int n) {
  std::vector<int> t(len);
  for (int i = len - 1; i >= 0; --i) {
    t[i] = idx % n;
    idx /= n;
  }
  return t;
}

}  // namespace

Presheaf discrete_presheaf(CatPtr site, int n) {
  Presheaf p;
  p.site = site;
  p.elems.resize(site->n_objects());
  p.act.resize(site->n_arrows());
  for (int a = 0; a < site->n_objects(); ++a)
    for (int v = 0; v < n; ++v) p.elems[a].push_back(std::to_string(v));
  for (int f = 0; f < site->n_arrows(); ++f) {
    p.act[f].resize(n);
    std::iota(p.act[f].begin(), p.act[f].end(), 0);
  }
  return checked(std::move(p));
}

Presheaf codiscrete_presheaf(Workspace& w, int n) {
  const FinCat& site = *w.site();
  PointData d = point_data(w);
  Presheaf p;
  p.site = w.site();
  p.elems.resize(site.n_objects());
  for (int a = 0; a < site.n_objects(); ++a) {
    int m = static_cast<int>(d.pts[a].size());
    std::size_t count = (m == 0) ? 1 : ipow(n, m);  // n^0 = 1 even for n = 0
    if (n == 0 && m > 0) count = 0;
    for (std::size_t i = 0; i < count; ++i) p.elems[a].push_back("g" + std::to_string(i));
  }
  p.act.resize(site.n_arrows());
  for (int u = 0; u < site.n_arrows(); ++u) {
    int a = site.dom(u), b = site.cod(u);
    int ma = static_cast<int>(d.pts[a].size());
    p.act[u].resize(p.elems[b].size());
    for (std::size_t gi = 0; gi < p.elems[b].size(); ++gi) {
      std::vector<int> gt =
          decode_table(static_cast<int>(gi), static_cast<int>(d.pts[b].size()), n);
      std::vector<int> table(ma);
      for (int i = 0; i < ma; ++i) table[i] = gt[d.push[u][i]];
      p.act[u][gi] = encode_table(table, n);
    }
  }
  return checked(std::move(p));
}

int pieces_count(const Presheaf& x) { return pi0(x).count; }
bool is_connected(const Presheaf& x) { return pieces_count(x) == 1; }
int sections_count(Workspace&, const Presheaf& x) {
  return static_cast<int>(global_sections(x).size());
}

NamedFamily named_default_family(Workspace& w, const std::vector<Presheaf>& extra) {
  NamedFamily out;
  std::set<std::string> seen;
  auto add = [&](const std::string& name, const Presheaf& p) {
    if (!seen.insert(presheaf_key(p)).second) return;
    out.names.push_back(name);
    out.members.push_back(p);
  };
  const FinCat& site = *w.site();
  for (int a = 0; a < site.n_objects(); ++a) add("y_" + site.object_name(a), w.rep(a));
  add("0", w.zero());
  add("1", w.one());
  add("2", w.two());
  add("omega", w.omega_obj().obj);
  for (std::size_t i = 0; i < extra.size(); ++i) add("extra" + std::to_string(i), extra[i]);
  return out;
}

AdjunctionCheck check_pieces_discrete(Workspace& w, const NamedFamily& family, int max_set) {
  AdjunctionCheck out;
  auto fail = [&](const std::string& msg) {
    if (out.ok) {
      out.ok = false;
      out.failure = msg;
    }
  };
  const FinCat& site = *w.site();
  std::vector<Pi0> pis;
  for (const Presheaf& x : family.members) pis.push_back(pi0(x));

  auto forward = [&](std::size_t ix, const NatTrans& t) {
    std::vector<int> g(pis[ix].count, -1);
    for (int a = 0; a < site.n_objects(); ++a)
      for (int v = 0; v < family.members[ix].size(a); ++v)
        g[pis[ix].comp_of[a][v]] = t.comp[a][v];
    return g;
  };
  auto backward = [&](std::size_t ix, const std::vector<int>& g, int n) {
    std::vector<std::vector<int>> comp(site.n_objects());
    for (int a = 0; a < site.n_objects(); ++a) {
      comp[a].resize(family.members[ix].size(a));
      for (int v = 0; v < family.members[ix].size(a); ++v)
        comp[a][v] = g[pis[ix].comp_of[a][v]];
    }
    return checked_nat(family.members[ix], discrete_presheaf(w.site(), n), std::move(comp));
  };

  for (std::size_t ix = 0; ix < family.members.size(); ++ix) {
    for (int n = 0; n <= max_set; ++n) {
      Presheaf dn = discrete_presheaf(w.site(), n);
      const auto& homs = w.hom(family.members[ix], dn);
      if (homs.size() != ipow(n, pis[ix].count)) {
        fail("count mismatch at " + family.names[ix] + ", n=" + std::to_string(n));
        continue;
      }
      for (const NatTrans& t : homs)
        if (!(backward(ix, forward(ix, t), n) == t))
          fail("transpose round trip failed at " + family.names[ix]);
      for (const auto& g : set_maps(pis[ix].count, n))
        if (forward(ix, backward(ix, g, n)) != g)
          fail("cotranspose round trip failed at " + family.names[ix]);
      // naturality in the set argument
      for (int n2 = 0; n2 <= max_set; ++n2)
        for (const auto& u : set_maps(n, n2)) {
          NatTrans du = discrete_map(w.site(), u, n2);
          for (const NatTrans& t : homs) {
            std::vector<int> lhs = forward(ix, compose_nat(du, t));
            std::vector<int> rhs = forward(ix, t);
            for (int& v : rhs) v = n > 0 ? u[v] : v;
            if (lhs != rhs) fail("set naturality failed at " + family.names[ix]);
          }
        }
    }
    // naturality in the presheaf argument
    for (std::size_t jx = 0; jx < family.members.size(); ++jx)
      for (const NatTrans& h : w.hom(family.members[jx], family.members[ix])) {
        std::vector<int> pim = pi0_map(pis[jx], pis[ix], h);
        int n = 2 <= max_set ? 2 : max_set;
        Presheaf dn = discrete_presheaf(w.site(), n);
        for (const NatTrans& t : w.hom(family.members[ix], dn)) {
          std::vector<int> lhs = forward(jx, compose_nat(t, h));
          std::vector<int> rhs(pis[jx].count);
          std::vector<int> ft = forward(ix, t);
          for (int c = 0; c < pis[jx].count; ++c) rhs[c] = ft[pim[c]];
          if (lhs != rhs) fail("presheaf naturality failed into " + family.names[ix]);
        }
      }
  }
  return out;
}

AdjunctionCheck check_discrete_sections(Workspace& w, const NamedFamily& family, int max_set) {
  AdjunctionCheck out;
  auto fail = [&](const std::string& msg) {
    if (out.ok) {
      out.ok = false;
      out.failure = msg;
    }
  };
  const FinCat& site = *w.site();
  std::vector<std::vector<std::vector<int>>> secs;
  for (const Presheaf& x : family.members) secs.push_back(global_sections(x));

  auto forward = [&](std::size_t ix, const std::vector<int>& g) {
    int n = static_cast<int>(g.size());
    std::vector<std::vector<int>> comp(site.n_objects());
    for (int a = 0; a < site.n_objects(); ++a) {
      comp[a].resize(n);
      for (int s = 0; s < n; ++s) comp[a][s] = secs[ix][g[s]][a];
    }
    return checked_nat(discrete_presheaf(w.site(), n), family.members[ix], std::move(comp));
  };
  auto backward = [&](std::size_t ix, const NatTrans& t, int n) {
    std::vector<int> g(n);
    for (int s = 0; s < n; ++s) {
      std::vector<int> fam(site.n_objects());
      for (int a = 0; a < site.n_objects(); ++a) fam[a] = t.comp[a][s];
      g[s] = section_index(secs[ix], fam);
      if (g[s] < 0) fail("image of a constant is not a section at " + family.names[ix]);
    }
    return g;
  };

  for (std::size_t ix = 0; ix < family.members.size(); ++ix) {
    for (int n = 0; n <= max_set; ++n) {
      Presheaf dn = discrete_presheaf(w.site(), n);
      const auto& homs = w.hom(dn, family.members[ix]);
      if (homs.size() != ipow(secs[ix].size(), n)) {
        fail("count mismatch at " + family.names[ix] + ", n=" + std::to_string(n));
        continue;
      }
      for (const auto& g : set_maps(n, static_cast<int>(secs[ix].size())))
        if (backward(ix, forward(ix, g), n) != g)
          fail("transpose round trip failed at " + family.names[ix]);
      for (const NatTrans& t : homs)
        if (!(forward(ix, backward(ix, t, n)) == t))
          fail("cotranspose round trip failed at " + family.names[ix]);
      // naturality in the set argument: precomposition with u : [n2] -> [n]
      for (int n2 = 0; n2 <= max_set; ++n2)
        for (const auto& u : set_maps(n2, n))
          for (const auto& g : set_maps(n, static_cast<int>(secs[ix].size()))) {
            std::vector<int> gu(n2);
            for (int s = 0; s < n2; ++s) gu[s] = g[u[s]];
            if (!(forward(ix, gu) == compose_nat(forward(ix, g), discrete_map(w.site(), u, n))))
              fail("set naturality failed at " + family.names[ix]);
          }
    }
    // naturality in the presheaf argument: postcomposition with h : X ⇒ X'
    for (std::size_t jx = 0; jx < family.members.size(); ++jx)
      for (const NatTrans& h : w.hom(family.members[ix], family.members[jx])) {
        std::vector<int> gh = sections_map(secs[ix], secs[jx], h);
        int n = 2 <= max_set ? 2 : max_set;
        for (const auto& g : set_maps(n, static_cast<int>(secs[ix].size()))) {
          std::vector<int> gg(n);
          for (int s = 0; s < n; ++s) gg[s] = gh[g[s]];
          if (!(forward(jx, gg) == compose_nat(h, forward(ix, g))))
            fail("presheaf naturality failed out of " + family.names[ix]);
        }
      }
  }
  return out;
}

AdjunctionCheck check_sections_codiscrete(Workspace& w, const NamedFamily& family, int max_set) {
  AdjunctionCheck out;
  auto fail = [&](const std::string& msg) {
    if (out.ok) {
      out.ok = false;
      out.failure = msg;
    }
  };
  const FinCat& site = *w.site();
  PointData d = point_data(w);
  int base = -1;  // least object whose representable has a point
  for (int a = 0; a < site.n_objects() && base < 0; ++a)
    if (!d.pts[a].empty()) base = a;

  std::vector<std::vector<std::vector<int>>> secs;
  for (const Presheaf& x : family.members) secs.push_back(global_sections(x));

  // rest[ix][a][v][i] = index of the section of X obtained by restricting the
  // element v in X(a) along point i of the representable at a
  std::vector<std::vector<std::vector<std::vector<int>>>> rest(family.members.size());
  for (std::size_t ix = 0; ix < family.members.size(); ++ix) {
    const Presheaf& x = family.members[ix];
    rest[ix].resize(site.n_objects());
    for (int a = 0; a < site.n_objects(); ++a) {
      rest[ix][a].resize(x.size(a));
      for (int v = 0; v < x.size(a); ++v) {
        NatTrans vt = yoneda_nat(x, a, v);
        rest[ix][a][v].resize(d.pts[a].size());
        for (std::size_t i = 0; i < d.pts[a].size(); ++i) {
          std::vector<int> fam(site.n_objects());
          for (int c = 0; c < site.n_objects(); ++c) fam[c] = vt.comp[c][d.pts[a][i][c]];
          rest[ix][a][v][i] = section_index(secs[ix], fam);
          if (rest[ix][a][v][i] < 0) fail("restriction is not a section at " + family.names[ix]);
        }
      }
    }
  }

  auto forward = [&](std::size_t ix, const std::vector<int>& h, const Presheaf& lam, int n) {
    const Presheaf& x = family.members[ix];
    std::vector<std::vector<int>> comp(site.n_objects());
    for (int a = 0; a < site.n_objects(); ++a) {
      int m = static_cast<int>(d.pts[a].size());
      comp[a].resize(x.size(a));
      for (int v = 0; v < x.size(a); ++v) {
        std::vector<int> table(m);
        for (int i = 0; i < m; ++i) table[i] = h[rest[ix][a][v][i]];
        comp[a][v] = encode_table(table, n);
      }
    }
    return checked_nat(x, lam, std::move(comp));
  };

  for (int n = 0; n <= max_set; ++n) {
    Presheaf lam = codiscrete_presheaf(w, n);

    auto backward = [&](std::size_t ix, const NatTrans& k) {
      std::vector<int> h(secs[ix].size());
      for (std::size_t si = 0; si < secs[ix].size(); ++si) {
        int enc = k.comp[base][secs[ix][si][base]];
        h[si] = decode_table(enc, static_cast<int>(d.pts[base].size()), n)[0];
      }
      return h;
    };

    for (std::size_t ix = 0; ix < family.members.size(); ++ix) {
      const auto& homs = w.hom(family.members[ix], lam);
      if (homs.size() != ipow(n, secs[ix].size())) {
        fail("count mismatch at " + family.names[ix] + ", n=" + std::to_string(n));
        continue;
      }
      if (base >= 0) {
        for (const auto& h : set_maps(static_cast<int>(secs[ix].size()), n))
          if (backward(ix, forward(ix, h, lam, n)) != h)
            fail("transpose round trip failed at " + family.names[ix]);
        for (const NatTrans& k : homs)
          if (!(forward(ix, backward(ix, k), lam, n) == k))
            fail("cotranspose round trip failed at " + family.names[ix]);
      } else {
        // no pointed representable: verify the forward map alone is bijective
        std::set<std::vector<std::vector<int>>> images;
        for (const auto& h : set_maps(static_cast<int>(secs[ix].size()), n))
          images.insert(forward(ix, h, lam, n).comp);
        if (images.size() != homs.size())
          fail("forward map not bijective at " + family.names[ix]);
      }
      // naturality in the presheaf argument
      for (std::size_t jx = 0; jx < family.members.size(); ++jx)
        for (const NatTrans& hh : w.hom(family.members[ix], family.members[jx])) {
          std::vector<int> gh = sections_map(secs[ix], secs[jx], hh);
          for (const auto& h : set_maps(static_cast<int>(secs[jx].size()), n)) {
            std::vector<int> hgh(secs[ix].size());
            for (std::size_t si = 0; si < secs[ix].size(); ++si) hgh[si] = h[gh[si]];
            if (!(forward(ix, hgh, lam, n) == compose_nat(forward(jx, h, lam, n), hh)))
              fail("presheaf naturality failed out of " + family.names[ix]);
          }
        }
    }
    // naturality in the set argument: postcomposition with u : [n] -> [n2]
    for (int n2 = 0; n2 <= max_set; ++n2) {
      Presheaf lam2 = codiscrete_presheaf(w, n2);
      for (const auto& u : set_maps(n, n2)) {
        std::vector<std::vector<int>> comp(site.n_objects());
        for (int a = 0; a < site.n_objects(); ++a) {
          int m = static_cast<int>(d.pts[a].size());
          comp[a].resize(lam.size(a));
          for (int gi = 0; gi < lam.size(a); ++gi) {
            std::vector<int> t = decode_table(gi, m, n);
            for (int& v : t) v = u[v];
            comp[a][gi] = encode_table(t, n2);
          }
        }
        NatTrans lam_u = checked_nat(lam, lam2, std::move(comp));
        for (std::size_t ix = 0; ix < family.members.size(); ++ix)
          for (const auto& h : set_maps(static_cast<int>(secs[ix].size()), n)) {
            std::vector<int> uh(h);
            for (int& v : uh) v = u[v];
            if (!(forward(ix, uh, lam2, n2) == compose_nat(lam_u, forward(ix, h, lam, n))))
              fail("set naturality failed at " + family.names[ix]);
          }
      }
    }
  }
  return out;
}

std::vector<Presheaf> enumerate_presheaves(CatPtr site_ptr, int bound, const Budget& budget) {
  const FinCat& site = *site_ptr;
  int nob = site.n_objects(), nar = site.n_arrows();

  std::vector<char> isid(nar, 0);
  for (int a = 0; a < nob; ++a) isid[site.identity(a)] = 1;

  auto close = [&](std::vector<char>& e) {
    bool ch = true;
    while (ch) {
      ch = false;
      for (int f = 0; f < nar; ++f)
        if (e[f])
          for (int g = 0; g < nar; ++g)
            if (e[g] && site.composable(g, f)) {
              int h = site.compose(g, f);
              if (!e[h]) {
                e[h] = 1;
                ch = true;
              }
            }
    }
  };

  // generator-greedy arrow order: most-productive generators first, then the
  // derived arrows (whose tables the functoriality triples force)
  std::vector<int> order;
  std::vector<char> expr = isid;
  close(expr);
  while (true) {
    int best = -1;
    long best_gain = -1;
    for (int h = 0; h < nar; ++h) {
      if (expr[h]) continue;
      std::vector<char> trial = expr;
      trial[h] = 1;
      close(trial);
      long gain = std::count(trial.begin(), trial.end(), char(1));
      if (gain > best_gain) {
        best_gain = gain;
        best = h;
      }
    }
    if (best < 0) break;
    order.push_back(best);
    expr[best] = 1;
    close(expr);
  }
  for (int f = 0; f < nar; ++f)
    if (!isid[f] && std::find(order.begin(), order.end(), f) == order.end())
      order.push_back(f);

  struct Triple {
    int f, g, h;
  };
  std::vector<Triple> triples;
  for (int f = 0; f < nar; ++f)
    for (int g = 0; g < nar; ++g)
      if (!isid[f] && !isid[g] && site.composable(g, f))
        triples.push_back({f, g, site.compose(g, f)});

  std::vector<std::vector<int>> profiles;
  {
    std::vector<int> cur(nob, 0);
    while (true) {
      profiles.push_back(cur);
      int i = nob - 1;
      while (i >= 0 && cur[i] == bound) cur[i--] = 0;
      if (i < 0) break;
      ++cur[i];
    }
    std::sort(profiles.begin(), profiles.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                int sa = std::accumulate(a.begin(), a.end(), 0);
                int sb = std::accumulate(b.begin(), b.end(), 0);
                return sa != sb ? sa < sb : a < b;
              });
  }

  std::vector<Presheaf> out;
  std::uint64_t states = 0;

  for (const auto& sizes : profiles) {
    std::vector<std::vector<int>> act(nar);
    for (int f = 0; f < nar; ++f) {
      act[f].assign(sizes[site.cod(f)], -1);
      if (isid[f]) std::iota(act[f].begin(), act[f].end(), 0);
    }
    struct Slot {
      int arrow, v;
    };
    std::vector<Slot> slots;
    for (int oi : order)
      for (int v = 0; v < sizes[site.cod(oi)]; ++v) slots.push_back({oi, v});

    auto consistent = [&]() {
      for (const Triple& tr : triples) {
        const auto& gt = act[tr.g];
        const auto& ft = act[tr.f];
        const auto& ht = act[tr.h];
        for (std::size_t v = 0; v < gt.size(); ++v) {
          int m = gt[v];
          if (m < 0) continue;
          int mm = ft[m];
          if (mm < 0) continue;
          int hv = ht[v];
          if (hv >= 0 && hv != mm) return false;
        }
      }
      return true;
    };

    std::function<void(std::size_t)> dfs = [&](std::size_t si) {
      if (si == slots.size()) {
        Presheaf p;
        p.site = site_ptr;
        p.elems.resize(nob);
        for (int a = 0; a < nob; ++a)
          for (int v = 0; v < sizes[a]; ++v) p.elems[a].push_back("x" + std::to_string(v));
        p.act = act;
        p = checked(std::move(p));
        for (const Presheaf& kept : out) {
          bool same_profile = true;
          for (int a = 0; a < nob; ++a)
            if (kept.size(a) != sizes[a]) same_profile = false;
          if (same_profile && iso_search(p, kept, budget)) return;
        }
        out.push_back(std::move(p));
        return;
      }
      int ar = slots[si].arrow, v = slots[si].v;
      for (int u = 0; u < sizes[site.dom(ar)]; ++u) {
        if (++states > budget.nat_states) throw BudgetExceeded(states);
        act[ar][v] = u;
        if (consistent()) dfs(si + 1);
      }
      act[ar][v] = -1;
    };
    dfs(0);
  }
  return out;
}

bool CohesionReport::passes() const {
  if (!delta_fully_faithful || !two_valued) return false;
  for (const auto& v :
       {&counit_monic, &pi_products, &nullstellensatz, &supports_split})
    for (const CheckItem& c : *v)
      if (!c.ok) return false;
  return true;
}

CohesionReport mclarty_report(Workspace& w, int bound, const Budget& budget) {
  CohesionReport rep;
  rep.bound = bound;
  const FinCat& site = *w.site();
  auto note = [&](bool ok, const std::string& what) {
    if (!ok && rep.first_failure.empty()) rep.first_failure = what;
  };

  // tested objects: enumerated up to iso, then the named family, deduplicated
  std::vector<std::string> names;
  std::vector<Presheaf> tested;
  {
    std::set<std::string> seen;
    auto add = [&](const std::string& nm, const Presheaf& p) {
      if (!seen.insert(presheaf_key(p)).second) return;
      names.push_back(nm);
      tested.push_back(p);
    };
    std::vector<Presheaf> enumd = enumerate_presheaves(w.site(), bound, budget);
    for (std::size_t i = 0; i < enumd.size(); ++i) {
      std::ostringstream nm;
      nm << "X" << i << "(";
      for (int a = 0; a < site.n_objects(); ++a) nm << (a ? "," : "") << enumd[i].size(a);
      nm << ")";
      add(nm.str(), enumd[i]);
    }
    NamedFamily fam = named_default_family(w);
    for (std::size_t i = 0; i < fam.members.size(); ++i) add(fam.names[i], fam.members[i]);
  }

  // Δ fully faithful: hom counts between constants, and the unit is a bijection
  for (int n = 0; n <= bound && rep.delta_fully_faithful; ++n) {
    Presheaf dn = discrete_presheaf(w.site(), n);
    Pi0 pn = pi0(dn);
    if (pn.count != n) rep.delta_fully_faithful = false;
    if (site.n_objects() > 0)
      for (int s = 0; s < n && rep.delta_fully_faithful; ++s) {
        int c0 = pn.comp_of[0][s];
        for (int a = 1; a < site.n_objects(); ++a)
          if (pn.comp_of[a][s] != c0) rep.delta_fully_faithful = false;
      }
    for (int n2 = 0; n2 <= bound && rep.delta_fully_faithful; ++n2) {
      Presheaf dn2 = discrete_presheaf(w.site(), n2);
      if (w.hom(dn, dn2).size() != ipow(n2, n)) rep.delta_fully_faithful = false;
    }
  }
  note(rep.delta_fully_faithful, "discrete functor is not fully faithful");

  std::vector<Pi0> pis;
  std::vector<std::vector<std::vector<int>>> secs;
  for (const Presheaf& x : tested) {
    pis.push_back(pi0(x));
    secs.push_back(global_sections(x));
  }

  for (std::size_t i = 0; i < tested.size(); ++i) {
    const Presheaf& x = tested[i];
    // counit ΔΓX ⇒ X monic
    {
      int n = static_cast<int>(secs[i].size());
      std::vector<std::vector<int>> comp(site.n_objects());
      for (int a = 0; a < site.n_objects(); ++a) {
        comp[a].resize(n);
        for (int s = 0; s < n; ++s) comp[a][s] = secs[i][s][a];
      }
      bool ok = is_monic(checked_nat(discrete_presheaf(w.site(), n), x, std::move(comp)));
      rep.counit_monic.push_back({names[i], ok});
      note(ok, "counit not monic at " + names[i]);
    }
    // Nullstellensatz
    {
      bool ok = x.total() == 0 || !secs[i].empty();
      rep.nullstellensatz.push_back({names[i], ok});
      note(ok, "nonempty object without points: " + names[i]);
    }
    // support splitting
    {
      Factorization f = epi_mono_factorize(bang_nat(x));
      bool ok = false;
      for (const NatTrans& s : enumerate_nat(f.image, x, budget))
        if (compose_nat(f.epi, s) == identity_nat(f.image)) ok = true;
      rep.supports_split.push_back({names[i], ok});
      note(ok, "support does not split at " + names[i]);
    }
  }

  for (std::size_t i = 0; i < tested.size(); ++i)
    for (std::size_t j = i; j < tested.size(); ++j) {
      ProductObj p = product(tested[i], tested[j]);
      Pi0 pp = pi0(p.obj);
      std::vector<int> m1 = pi0_map(pp, pis[i], p.p1);
      std::vector<int> m2 = pi0_map(pp, pis[j], p.p2);
      bool ok = pp.count == pis[i].count * pis[j].count;
      std::set<std::pair<int, int>> seen_pairs;
      for (int c = 0; c < pp.count; ++c)
        if (!seen_pairs.insert({m1[c], m2[c]}).second) ok = false;
      rep.pi_products.push_back({names[i] + " x " + names[j], ok});
      note(ok, "pieces do not preserve the product " + names[i] + " x " + names[j]);
    }

  rep.gamma_omega = static_cast<int>(global_sections(w.omega_obj().obj).size());
  rep.two_valued = rep.gamma_omega == 2;
  note(rep.two_valued,
       "point count of the classifier is " + std::to_string(rep.gamma_omega));
  return rep;
}

NatTrans ev_at_point(Workspace& w, const Presheaf& a, const Presheaf& t, const NatTrans& p) {
  const Exponential& e = w.exp(a, t);
  EvPack ep = ev_pack(e);
  NatTrans to_t = compose_nat(p, bang_nat(e.obj));
  return compose_nat(ep.ev, pair_nat(ep.prod, identity_nat(e.obj), to_t));
}

bool no_motion_check(Workspace& w, const Presheaf& t, const NatTrans& p, const Presheaf& a) {
  return is_natural_iso(ev_at_point(w, a, t, p));
}

NatTrans point_transpose(AtomicContext& ctx, const Presheaf& t, const NatTrans& p,
                         const Presheaf& a) {
  return radj_transpose(ctx, t, a, ev_at_point(ctx.w, a, t, p));
}

RigidityResult right_adjoint_rigidity(AtomicContext& ctx, const Presheaf& t, const Presheaf& y) {
  Workspace& w = ctx.w;
  RigidityResult rr;
  const RightAdjointObj& r = ctx.radj(t, y);
  auto sec_t = global_sections(r.obj);
  auto sec_y = global_sections(y);
  const Exponential& e1t = w.exp(w.one(), t);
  NatTrans unit_iso = w.hom(w.one(), e1t.obj)[0];  // 1 ≅ 1^T, unique
  std::set<std::vector<int>> images;
  const FinCat& site = *w.site();
  for (const auto& sec : sec_t) {
    std::vector<std::vector<int>> comp(site.n_objects());
    for (int a = 0; a < site.n_objects(); ++a) comp[a] = {sec[a]};
    NatTrans k = checked_nat(w.one(), r.obj, std::move(comp));
    NatTrans pt = compose_nat(radj_untranspose(ctx, t, y, k), unit_iso);
    std::vector<int> fam(site.n_objects());
    for (int a = 0; a < site.n_objects(); ++a) fam[a] = pt.comp[a][0];
    images.insert(fam);
  }
  rr.gamma_iso = images.size() == sec_t.size() && sec_t.size() == sec_y.size();
  std::vector<int> pim = pi0_map(pi0(r.obj), pi0(y), copoint_map(ctx, t, y));
  rr.pi_iso = is_bijection(pim, pi0(y).count);
  return rr;
}

bool is_contractible_family(Workspace& w, const Presheaf& t,
                            const std::vector<Presheaf>& family) {
  for (const Presheaf& x : family)
    if (!is_connected(w.exp(t, x).obj)) return false;
  return true;
}

bool ContractibilityReport::all_positive() const {
  if (pointed && !two_zero_iso) return false;
  for (const CheckItem& c : a_zero)
    if (!c.ok) return false;
  for (const CheckItem& c : pi_exp)
    if (!c.ok) return false;
  return family_connected;
}

bool ContractibilityReport::indicators_agree() const {
  std::vector<bool> vals;
  if (pointed) {
    vals.push_back(two_zero_iso);
    bool all_a = true;
    for (const CheckItem& c : a_zero) all_a = all_a && c.ok;
    if (!a_zero.empty()) vals.push_back(all_a);
  }
  bool all_pi = true;
  for (const CheckItem& c : pi_exp) all_pi = all_pi && c.ok;
  if (!pi_exp.empty()) vals.push_back(all_pi);
  vals.push_back(family_connected);
  for (bool v : vals)
    if (v != vals.front()) return false;
  return true;
}

ContractibilityReport atomic_contractible(AtomicContext& ctx, const Presheaf& t, int bound,
                                          const NamedFamily& family, const Budget& budget) {
  Workspace& w = ctx.w;
  ContractibilityReport r;
  const auto& pts = w.hom(w.one(), t);
  r.pointed = !pts.empty();
  if (r.pointed) {
    r.two_zero_iso = is_natural_iso(point_transpose(ctx, t, pts[0], w.two()));
    std::vector<Presheaf> all = enumerate_presheaves(w.site(), bound, budget);
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (!is_decidable(all[i])) continue;
      std::ostringstream nm;
      nm << "A" << i;
      r.a_zero.push_back(
          {nm.str(), is_natural_iso(point_transpose(ctx, t, pts[0], all[i]))});
    }
  }
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    const Presheaf& x = family.members[i];
    const Exponential& xt = w.exp(x, t);
    std::vector<int> pim = pi0_map(pi0(x), pi0(xt.obj), sigma_map(xt));
    r.pi_exp.push_back({family.names[i], is_bijection(pim, pi0(xt.obj).count)});
    if (!is_connected(w.exp(t, x).obj)) r.family_connected = false;
  }
  return r;
}

DecAtomReport decidables_and_atoms(AtomicContext& ctx, int bound, const Budget& budget) {
  Workspace& w = ctx.w;
  DecAtomReport d;
  std::vector<Presheaf> all = enumerate_presheaves(w.site(), bound, budget);
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool dec = is_decidable(all[i]);
    bool at = ctx.atomic(all[i]).atomic;
    if (dec) ++d.decidable_count;
    if (at) ++d.atomic_count;
    if (at && !is_connected(all[i])) d.pi_preserves_atomic = false;
    if (dec && at) {
      bool terminal_like = true;
      for (int a = 0; a < w.site()->n_objects(); ++a)
        if (all[i].size(a) != 1) terminal_like = false;
      std::ostringstream nm;
      nm << "X" << i;
      d.atomic_decidable_terminal.push_back({nm.str(), terminal_like});
    }
  }
  for (int n = 0; n <= bound; ++n)
    if (ctx.atomic(discrete_presheaf(w.site(), n)).atomic && n != 1)
      d.delta_reflects_atomic = false;
  return d;
}

}  // namespace ptops
