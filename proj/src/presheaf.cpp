#include "ptops/presheaf.hpp"

#include <algorithm>
#include <stdexcept>

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

}  // namespace

int Presheaf::total() const {
  int n = 0;
  for (const auto& e : elems) n += static_cast<int>(e.size());
  return n;
}

int Presheaf::elem_index(int obj, const std::string& name) const {
  const auto& v = elems[obj];
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] == name) return i;
  return -1;
}

bool Presheaf::same_site(const Presheaf& other) const {
  return site == other.site || (site && other.site && *site == *other.site);
}

bool Presheaf::operator==(const Presheaf& other) const {
  return same_site(other) && elems == other.elems && act == other.act;
}

std::vector<std::string> presheaf_violations(const Presheaf& x) {
  std::vector<std::string> errors;
  if (!x.site) return {"presheaf has no site"};
  const FinCat& c = *x.site;
  if (static_cast<int>(x.elems.size()) != c.n_objects() ||
      static_cast<int>(x.act.size()) != c.n_arrows())
    return {"presheaf tables have wrong lengths"};

  for (int o = 0; o < c.n_objects(); ++o) {
    auto sorted = x.elems[o];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      errors.push_back("duplicate element name at " + c.object_name(o));
  }

  for (int f = 0; f < c.n_arrows(); ++f) {
    const int nd = x.size(c.dom(f)), nc = x.size(c.cod(f));
    if (static_cast<int>(x.act[f].size()) != nc) {
      errors.push_back("action of " + c.arrow_name(f) + " has wrong domain size");
      continue;
    }
    for (int v : x.act[f])
      if (v < 0 || v >= nd) {
        errors.push_back("action of " + c.arrow_name(f) + " maps outside the target set");
        break;
      }
  }
  if (!errors.empty()) return errors;

  for (int o = 0; o < c.n_objects(); ++o) {
    const int id = c.identity(o);
    for (int v = 0; v < x.size(o); ++v)
      if (x.act[id][v] != v) {
        errors.push_back("identity action at " + c.object_name(o) + " is not the identity");
        break;
      }
  }
  for (int g = 0; g < c.n_arrows(); ++g)
    for (int f = 0; f < c.n_arrows(); ++f) {
      if (!c.composable(g, f)) continue;
      const int gf = c.compose(g, f);
      for (int v = 0; v < x.size(c.cod(g)); ++v)
        if (x.act[gf][v] != x.act[f][x.act[g][v]]) {
          errors.push_back("functoriality fails on (" + c.arrow_name(g) + " ∘ " +
                           c.arrow_name(f) + ")");
          break;
        }
    }
  return errors;
}

Presheaf checked(Presheaf x) {
  auto errors = presheaf_violations(x);
  if (!errors.empty()) throw std::invalid_argument("illegal presheaf: " + join(errors, "; "));
  return x;
}

Presheaf presheaf_from_names(
    CatPtr site, const std::map<std::string, std::vector<std::string>>& elems,
    const std::map<std::string, std::map<std::string, std::string>>& action) {
  const FinCat& c = *site;
  Presheaf x;
  x.site = site;
  x.elems.resize(c.n_objects());
  x.act.resize(c.n_arrows());
  for (const auto& [obj, names] : elems) {
    const int o = c.object_index(obj);
    if (o < 0) throw std::invalid_argument("unknown object in presheaf data: " + obj);
    x.elems[o] = names;
  }
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int nd = x.size(c.cod(f));
    x.act[f].assign(nd, -1);
    auto it = action.find(c.arrow_name(f));
    if (it == action.end()) {
      if (c.is_identity(f)) {
        for (int v = 0; v < nd; ++v) x.act[f][v] = v;
        continue;
      }
      throw std::invalid_argument("missing action for arrow " + c.arrow_name(f));
    }
    for (int v = 0; v < nd; ++v) {
      auto jt = it->second.find(x.elems[c.cod(f)][v]);
      if (jt == it->second.end())
        throw std::invalid_argument("missing action of " + c.arrow_name(f) + " on element " +
                                    x.elems[c.cod(f)][v]);
      const int img = x.elem_index(c.dom(f), jt->second);
      if (img < 0)
        throw std::invalid_argument("action of " + c.arrow_name(f) + " hits unknown element " +
                                    jt->second);
      x.act[f][v] = img;
    }
  }
  return checked(std::move(x));
}

std::string presheaf_key(const Presheaf& x) {
  std::string key;
  for (const auto& names : x.elems) {
    key += '|';
    for (const auto& n : names) {
      key += n;
      key += ',';
    }
  }
  key += '#';
  for (const auto& a : x.act) {
    key += '|';
    for (int v : a) {
      key += std::to_string(v);
      key += ',';
    }
  }
  return key;
}

std::vector<std::string> naturality_violations(const NatTrans& t) {
  std::vector<std::string> errors;
  if (!t.dom.same_site(t.cod)) return {"endpoints live on different sites"};
  const FinCat& c = *t.dom.site;
  if (static_cast<int>(t.comp.size()) != c.n_objects())
    return {"component table has wrong length"};
  for (int o = 0; o < c.n_objects(); ++o) {
    if (static_cast<int>(t.comp[o].size()) != t.dom.size(o))
      return {"component at " + c.object_name(o) + " has wrong length"};
    for (int v : t.comp[o])
      if (v < 0 || v >= t.cod.size(o))
        return {"component at " + c.object_name(o) + " maps outside the target set"};
  }
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int a = c.dom(f), b = c.cod(f);
    for (int v = 0; v < t.dom.size(b); ++v)
      if (t.comp[a][t.dom.act[f][v]] != t.cod.act[f][t.comp[b][v]]) {
        errors.push_back("naturality fails at " + c.arrow_name(f));
        break;
      }
  }
  return errors;
}

NatTrans checked_nat(Presheaf dom, Presheaf cod, std::vector<std::vector<int>> comp) {
  NatTrans t{std::move(dom), std::move(cod), std::move(comp)};
  auto errors = naturality_violations(t);
  if (!errors.empty())
    throw std::invalid_argument("illegal natural transformation: " + join(errors, "; "));
  return t;
}

NatTrans identity_nat(const Presheaf& x) {
  std::vector<std::vector<int>> comp(x.elems.size());
  for (std::size_t o = 0; o < x.elems.size(); ++o) {
    comp[o].resize(x.elems[o].size());
    for (int v = 0; v < static_cast<int>(x.elems[o].size()); ++v) comp[o][v] = v;
  }
  return NatTrans{x, x, std::move(comp)};
}

NatTrans compose_nat(const NatTrans& g, const NatTrans& f) {
  if (!(f.cod == g.dom)) throw std::logic_error("compose_nat: middle objects differ");
  std::vector<std::vector<int>> comp(f.comp.size());
  for (std::size_t o = 0; o < f.comp.size(); ++o) {
    comp[o].resize(f.comp[o].size());
    for (std::size_t v = 0; v < f.comp[o].size(); ++v) comp[o][v] = g.comp[o][f.comp[o][v]];
  }
  return NatTrans{f.dom, g.cod, std::move(comp)};
}

bool is_monic(const NatTrans& t) {
  for (std::size_t o = 0; o < t.comp.size(); ++o) {
    std::vector<char> seen(t.cod.size(static_cast<int>(o)), 0);
    for (int v : t.comp[o]) {
      if (seen[v]) return false;
      seen[v] = 1;
    }
  }
  return true;
}

bool is_epic(const NatTrans& t) {
  for (std::size_t o = 0; o < t.comp.size(); ++o) {
    std::vector<char> seen(t.cod.size(static_cast<int>(o)), 0);
    for (int v : t.comp[o]) seen[v] = 1;
    for (char s : seen)
      if (!s) return false;
  }
  return true;
}

bool is_natural_iso(const NatTrans& t) {
  for (std::size_t o = 0; o < t.comp.size(); ++o)
    if (t.dom.size(static_cast<int>(o)) != t.cod.size(static_cast<int>(o))) return false;
  return is_monic(t) && is_epic(t);
}

NatTrans invert_iso(const NatTrans& t) {
  if (!is_natural_iso(t)) throw std::logic_error("invert_iso: not an isomorphism");
  std::vector<std::vector<int>> comp(t.comp.size());
  for (std::size_t o = 0; o < t.comp.size(); ++o) {
    comp[o].assign(t.cod.size(static_cast<int>(o)), -1);
    for (std::size_t v = 0; v < t.comp[o].size(); ++v)
      comp[o][t.comp[o][v]] = static_cast<int>(v);
  }
  return NatTrans{t.cod, t.dom, std::move(comp)};
}

int SubPresheaf::count() const {
  int n = 0;
  for (const auto& m : member)
    for (char b : m) n += (b != 0);
  return n;
}

Presheaf SubPresheaf::to_presheaf() const {
  const FinCat& c = *ambient.site;
  Presheaf x;
  x.site = ambient.site;
  x.elems.resize(c.n_objects());
  std::vector<std::vector<int>> new_index(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o) {
    new_index[o].assign(ambient.size(o), -1);
    for (int v = 0; v < ambient.size(o); ++v)
      if (member[o][v]) {
        new_index[o][v] = static_cast<int>(x.elems[o].size());
        x.elems[o].push_back(ambient.elems[o][v]);
      }
  }
  x.act.resize(c.n_arrows());
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int b = c.cod(f), a = c.dom(f);
    for (int v = 0; v < ambient.size(b); ++v)
      if (member[b][v]) x.act[f].push_back(new_index[a][ambient.act[f][v]]);
  }
  return checked(std::move(x));
}

NatTrans SubPresheaf::inclusion() const {
  Presheaf sub = to_presheaf();
  const FinCat& c = *ambient.site;
  std::vector<std::vector<int>> comp(c.n_objects());
  for (int o = 0; o < c.n_objects(); ++o)
    for (int v = 0; v < ambient.size(o); ++v)
      if (member[o][v]) comp[o].push_back(v);
  return checked_nat(std::move(sub), ambient, std::move(comp));
}

std::vector<std::string> subpresheaf_violations(const SubPresheaf& s) {
  std::vector<std::string> errors;
  const FinCat& c = *s.ambient.site;
  if (static_cast<int>(s.member.size()) != c.n_objects())
    return {"membership table has wrong length"};
  for (int o = 0; o < c.n_objects(); ++o)
    if (static_cast<int>(s.member[o].size()) != s.ambient.size(o))
      return {"membership at " + c.object_name(o) + " has wrong length"};
  for (int f = 0; f < c.n_arrows(); ++f) {
    const int b = c.cod(f), a = c.dom(f);
    for (int v = 0; v < s.ambient.size(b); ++v)
      if (s.member[b][v] && !s.member[a][s.ambient.act[f][v]]) {
        errors.push_back("not closed under the action of " + c.arrow_name(f));
        break;
      }
  }
  return errors;
}

SubPresheaf checked_sub(Presheaf ambient, std::vector<std::vector<char>> member) {
  SubPresheaf s{std::move(ambient), std::move(member)};
  auto errors = subpresheaf_violations(s);
  if (!errors.empty())
    throw std::invalid_argument("illegal subpresheaf: " + join(errors, "; "));
  return s;
}

SubPresheaf full_sub(const Presheaf& x) {
  std::vector<std::vector<char>> member(x.elems.size());
  for (std::size_t o = 0; o < x.elems.size(); ++o) member[o].assign(x.elems[o].size(), 1);
  return SubPresheaf{x, std::move(member)};
}

SubPresheaf empty_sub(const Presheaf& x) {
  std::vector<std::vector<char>> member(x.elems.size());
  for (std::size_t o = 0; o < x.elems.size(); ++o) member[o].assign(x.elems[o].size(), 0);
  return SubPresheaf{x, std::move(member)};
}

}  // namespace ptops
