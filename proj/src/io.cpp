#include "ptops/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

namespace ptops {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw InputError(msg); }

const Json& need(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) fail(std::string("missing key \"") + key + "\"");
  return doc.at(key);
}

std::string need_string(const Json& v, const std::string& what) {
  if (!v.is_string()) fail(what + " must be a string");
  return v.get<std::string>();
}

const Json& need_array(const Json& v, const std::string& what) {
  if (!v.is_array()) fail(what + " must be a list");
  return v;
}

CatPtr validated(const RawCat& raw) {
  CatResult res = validate_category(raw);
  if (!res.ok()) {
    std::string msg = "invalid category:";
    for (const std::string& e : res.errors) msg += " " + e + ";";
    fail(msg);
  }
  return res.cat;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail("parse error in " + path + ": " + e.what());
  }
}

RawCat site_from_json(const Json& doc) {
  if (!doc.is_object()) fail("site document must be an object");
  RawCat raw;
  for (const Json& o : need_array(need(doc, "objects"), "objects"))
    raw.objects.push_back(need_string(o, "object name"));
  if (doc.contains("arrows"))
    for (const Json& a : need_array(doc.at("arrows"), "arrows")) {
      if (!a.is_object()) fail("each arrow must be an object with name/dom/cod");
      raw.arrows.push_back({need_string(need(a, "name"), "arrow name"),
                            need_string(need(a, "dom"), "arrow dom"),
                            need_string(need(a, "cod"), "arrow cod")});
    }
  if (doc.contains("compose"))
    for (const Json& t : need_array(doc.at("compose"), "compose")) {
      if (!t.is_array() || t.size() != 3) fail("each compose entry must be a triple [g, f, h]");
      raw.compose.push_back({need_string(t[0], "compose g"), need_string(t[1], "compose f"),
                             need_string(t[2], "compose h")});
    }
  return raw;
}

Json site_to_json(const FinCat& c) {
  Json doc;
  doc["objects"] = Json::array();
  for (const std::string& o : c.objects()) doc["objects"].push_back(o);
  doc["arrows"] = Json::array();
  for (int f = 0; f < c.n_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    Json a;
    a["name"] = c.arrow_name(f);
    a["dom"] = c.object_name(c.dom(f));
    a["cod"] = c.object_name(c.cod(f));
    doc["arrows"].push_back(std::move(a));
  }
  doc["compose"] = Json::array();
  for (int g = 0; g < c.n_arrows(); ++g) {
    if (c.is_identity(g)) continue;
    for (int f = 0; f < c.n_arrows(); ++f) {
      if (c.is_identity(f) || !c.composable(g, f)) continue;
      doc["compose"].push_back(
          Json::array({c.arrow_name(g), c.arrow_name(f), c.arrow_name(c.compose(g, f))}));
    }
  }
  return doc;
}

std::string canonical_text(const Json& doc) { return doc.dump(2) + "\n"; }

std::string site_digest(const FinCat& c) {
  std::string text = canonical_text(site_to_json(c));
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : text) {
    h ^= b;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

Presheaf presheaf_from_json(const Json& doc, const CatPtr& site, const std::string& base_dir) {
  if (!doc.is_object()) fail("presheaf document must be an object");

  std::string variance = "presheaf";
  if (doc.contains("variance")) variance = need_string(doc.at("variance"), "variance");
  if (variance != "presheaf" && variance != "copresheaf")
    fail("variance must be \"presheaf\" or \"copresheaf\"");

  CatPtr declared = site;
  if (doc.contains("site")) {
    const Json& s = doc.at("site");
    if (s.is_string())
      declared = validated(site_from_json(
          read_json_file((std::filesystem::path(base_dir) / s.get<std::string>()).string())));
    else
      declared = validated(site_from_json(s));
  }
  CatPtr effective = variance == "copresheaf" ? opposite(declared) : declared;
  if (!(*effective == *site))
    fail("the presheaf's index category does not match the site in use");

  const FinCat& c = *site;
  Presheaf p;
  p.site = site;
  p.elems.resize(c.n_objects());
  const Json& sets = need(doc, "sets");
  if (!sets.is_object()) fail("sets must map object names to element lists");
  for (auto it = sets.begin(); it != sets.end(); ++it) {
    int o = c.object_index(it.key());
    if (o < 0) fail("sets mentions unknown object \"" + it.key() + "\"");
    for (const Json& e : need_array(it.value(), "element list of " + it.key()))
      p.elems[o].push_back(need_string(e, "element name"));
    std::sort(p.elems[o].begin(), p.elems[o].end());
    if (std::adjacent_find(p.elems[o].begin(), p.elems[o].end()) != p.elems[o].end())
      fail("duplicate element name at object \"" + it.key() + "\"");
  }

  p.act.assign(c.n_arrows(), {});
  for (int a = 0; a < c.n_objects(); ++a) {
    p.act[c.identity(a)].resize(p.elems[a].size());
    std::iota(p.act[c.identity(a)].begin(), p.act[c.identity(a)].end(), 0);
  }
  Json action = Json::object();
  if (doc.contains("action")) {
    action = doc.at("action");
    if (!action.is_object()) fail("action must map arrow names to element maps");
  }
  for (auto it = action.begin(); it != action.end(); ++it)
    if (c.arrow_index(it.key()) < 0) fail("action mentions unknown arrow \"" + it.key() + "\"");
  for (int f = 0; f < c.n_arrows(); ++f) {
    const std::string& fname = c.arrow_name(f);
    std::size_t n_from = p.elems[c.cod(f)].size();
    if (!action.contains(fname)) {
      if (c.is_identity(f) || n_from == 0) continue;
      fail("action for arrow \"" + fname + "\" is missing");
    }
    const Json& table = action.at(fname);
    if (!table.is_object()) fail("action of \"" + fname + "\" must map elements to elements");
    std::vector<int> t(n_from, -1);
    for (auto it = table.begin(); it != table.end(); ++it) {
      int from = p.elem_index(c.cod(f), it.key());
      if (from < 0)
        fail("action of \"" + fname + "\" maps unknown element \"" + it.key() + "\"");
      int to = p.elem_index(c.dom(f), need_string(it.value(), "action value"));
      if (to < 0)
        fail("action of \"" + fname + "\" targets an unknown element");
      t[from] = to;
    }
    for (std::size_t i = 0; i < n_from; ++i)
      if (t[i] < 0)
        fail("action of \"" + fname + "\" misses element \"" + p.elems[c.cod(f)][i] + "\"");
    if (c.is_identity(f)) {
      for (std::size_t i = 0; i < n_from; ++i)
        if (t[i] != static_cast<int>(i)) fail("identity arrow \"" + fname + "\" must act as the identity");
      continue;
    }
    p.act[f] = std::move(t);
  }

  try {
    return checked(std::move(p));
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

Presheaf load_presheaf_file(const std::string& path, const CatPtr& site) {
  return presheaf_from_json(read_json_file(path), site,
                            std::filesystem::path(path).parent_path().string());
}

Json presheaf_to_json(const Presheaf& x) {
  const FinCat& c = *x.site;
  Json doc;
  doc["site"] = site_to_json(c);
  doc["variance"] = "presheaf";
  doc["sets"] = Json::object();
  for (int a = 0; a < c.n_objects(); ++a) {
    std::vector<std::string> names = x.elems[a];
    std::sort(names.begin(), names.end());
    doc["sets"][c.object_name(a)] = names;
  }
  doc["action"] = Json::object();
  for (int f = 0; f < c.n_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    Json table = Json::object();
    for (int v = 0; v < x.size(c.cod(f)); ++v)
      table[x.elems[c.cod(f)][v]] = x.elems[c.dom(f)][x.act[f][v]];
    doc["action"][c.arrow_name(f)] = std::move(table);
  }
  return doc;
}

}  // namespace ptops
