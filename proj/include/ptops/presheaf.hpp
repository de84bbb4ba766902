#pragma once

#include <map>
#include <string>
#include <vector>

#include "ptops/fincat.hpp"

namespace ptops {

/**
 * A finite presheaf on a FinCat site: a finite set of named elements per
 * object, and for every site arrow f : a -> b a restriction X(f) : X(b) -> X(a)
 * stored as an index map.  Functoriality (identities and composites, the
 * contravariant way round) is what presheaf_violations checks; all internal
 * constructions go through checked() so illegal data cannot circulate.
 * Empty presheaves are ordinary values here.
 */
struct Presheaf {
  CatPtr site;
  std::vector<std::vector<std::string>> elems;  // per object
  std::vector<std::vector<int>> act;            // per arrow f: X(cod f) -> X(dom f)

  int size(int obj) const { return static_cast<int>(elems[obj].size()); }
  int total() const;
  int apply(int arrow, int x) const { return act[arrow][x]; }
  int elem_index(int obj, const std::string& name) const;
  const std::string& elem_name(int obj, int x) const { return elems[obj][x]; }
  bool same_site(const Presheaf& other) const;
  bool operator==(const Presheaf& other) const;
};

std::vector<std::string> presheaf_violations(const Presheaf& x);

/** Throws std::invalid_argument when the data is not a presheaf. */
Presheaf checked(Presheaf x);

/** Name-keyed builder used by tests and file ingestion; identity actions may be omitted. */
Presheaf presheaf_from_names(
    CatPtr site, const std::map<std::string, std::vector<std::string>>& elems,
    const std::map<std::string, std::map<std::string, std::string>>& action);

/** Deterministic one-line key of the full presheaf data, for memo tables. */
std::string presheaf_key(const Presheaf& x);

/** A natural transformation, stored with value copies of its endpoints. */
struct NatTrans {
  Presheaf dom, cod;
  std::vector<std::vector<int>> comp;  // per object: dom(a) -> cod(a)

  int at(int obj, int x) const { return comp[obj][x]; }
  bool operator==(const NatTrans&) const = default;
};

std::vector<std::string> naturality_violations(const NatTrans& t);
NatTrans checked_nat(Presheaf dom, Presheaf cod, std::vector<std::vector<int>> comp);

NatTrans identity_nat(const Presheaf& x);
NatTrans compose_nat(const NatTrans& g, const NatTrans& f);  // g after f
bool is_monic(const NatTrans& t);  // pointwise injective
bool is_epic(const NatTrans& t);   // pointwise surjective
bool is_natural_iso(const NatTrans& t);
NatTrans invert_iso(const NatTrans& t);

/** An action-closed selection of elements of an ambient presheaf. */
struct SubPresheaf {
  Presheaf ambient;
  std::vector<std::vector<char>> member;  // 0/1 per object/element

  bool contains(int obj, int x) const { return member[obj][x] != 0; }
  int count() const;
  Presheaf to_presheaf() const;
  NatTrans inclusion() const;
  bool operator==(const SubPresheaf&) const = default;
};

std::vector<std::string> subpresheaf_violations(const SubPresheaf& s);
SubPresheaf checked_sub(Presheaf ambient, std::vector<std::vector<char>> member);
SubPresheaf full_sub(const Presheaf& x);
SubPresheaf empty_sub(const Presheaf& x);

}  // namespace ptops
