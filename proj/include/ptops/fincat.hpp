#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ptops {

struct Arrow {
  std::string name;
  int dom = -1;
  int cod = -1;
  bool operator==(const Arrow&) const = default;
};

/**
 * A finite category presented by an explicit composition table.
 *
 * Instances are immutable and always law-checked: construction goes through
 * make_fincat / validate_category, which verify identity and associativity
 * laws exhaustively and throw (or report) on any violation.  Objects and
 * arrows are kept sorted by name so every downstream enumeration and report
 * is deterministic.
 */
class FinCat {
public:
  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int n_objects() const { return static_cast<int>(objects_.size()); }
  int n_arrows() const { return static_cast<int>(arrows_.size()); }

  int object_index(const std::string& name) const;  // -1 when absent
  int arrow_index(const std::string& name) const;   // -1 when absent
  const std::string& object_name(int o) const { return objects_[o]; }
  const std::string& arrow_name(int f) const { return arrows_[f].name; }

  int identity(int obj) const { return identity_[obj]; }
  bool is_identity(int f) const { return identity_[arrows_[f].dom] == f && arrows_[f].dom == arrows_[f].cod; }
  int dom(int f) const { return arrows_[f].dom; }
  int cod(int f) const { return arrows_[f].cod; }
  bool composable(int g, int f) const { return arrows_[f].cod == arrows_[g].dom; }
  int compose(int g, int f) const;  // g∘f; throws on non-composable pair

  /** Arrow indices a -> b in name order. */
  std::vector<int> hom(int a, int b) const;

  bool operator==(const FinCat& other) const {
    return objects_ == other.objects_ && arrows_ == other.arrows_ &&
           identity_ == other.identity_ && comp_ == other.comp_;
  }

private:
  friend FinCat build_fincat(std::vector<std::string>, std::vector<Arrow>,
                             std::vector<int>, std::vector<std::vector<int>>);
  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identity_;           // object -> arrow index of its identity
  std::vector<std::vector<int>> comp_;  // comp_[g][f] = g∘f, or -1 when not composable
};

using CatPtr = std::shared_ptr<const FinCat>;

/** Law-checking assembler from resolved tables; throws std::invalid_argument. */
FinCat build_fincat(std::vector<std::string> objects, std::vector<Arrow> arrows,
                    std::vector<int> identity, std::vector<std::vector<int>> comp);

/** Untrusted category data, as read from a site file or built in code. */
struct RawCat {
  struct RawArrow {
    std::string name, dom, cod;
  };
  std::vector<std::string> objects;
  std::vector<RawArrow> arrows;                     // identities may be omitted
  std::vector<std::array<std::string, 3>> compose;  // {g, f, h} meaning g∘f = h
};

struct CatResult {
  CatPtr cat;  // null when validation failed
  std::vector<std::string> errors;
  bool ok() const { return cat != nullptr; }
};

/**
 * Validates raw data into a FinCat, or reports *all* violations found:
 * duplicate names, dangling dom/cod, unknown or conflicting compose entries,
 * missing composites, and identity/associativity failures, each naming the
 * offending arrows.  Missing identities are synthesised with the reserved
 * name id_<object>; an input self-arrow already carrying that name is taken
 * to be the identity it names.
 */
CatResult validate_category(const RawCat& raw);

/** Law-checking constructor for internal use; throws std::invalid_argument. */
CatPtr make_fincat(const RawCat& raw);

/** Same category with arrows reversed.  Applying it twice is the identity, bit for bit. */
CatPtr opposite(const CatPtr& c);

/** A functor between finite categories, stored as index maps. */
struct FinFunctor {
  CatPtr source, target;
  std::vector<int> obj_map;  // source object -> target object
  std::vector<int> arr_map;  // source arrow -> target arrow

  int on_obj(int o) const { return obj_map[o]; }
  int on_arr(int f) const { return arr_map[f]; }
};

/** Exhaustive functoriality check; empty result means F is a functor. */
std::vector<std::string> functor_violations(const FinFunctor& f);

/** Throwing constructor around functor_violations. */
FinFunctor make_functor(CatPtr source, CatPtr target, std::vector<int> obj_map,
                        std::vector<int> arr_map);

struct KaroubiResult {
  CatPtr cat;          // objects are the idempotents of the input
  FinFunctor embed;    // c -> (c, id_c); full and faithful
  std::vector<int> idempotent_of_object;  // Karoubi object -> source arrow index
};

/**
 * Idempotent completion.  Objects are idempotents e of the input, named by
 * the idempotent's arrow; an arrow (a,e) -> (b,e') is an input arrow f with
 * e'∘f∘e = f, and the identity of (a,e) is e itself.
 */
KaroubiResult karoubi_envelope(const CatPtr& c);

/** True when every idempotent factors as s∘r with r∘s an identity. */
bool idempotents_split(const FinCat& c);

/**
 * Connected components of the comma category (j ↓ F).  Entries are pairs
 * (arrow u : j -> F(k) of the target, object k of the source); two entries
 * are identified under the zigzag closure of (u,k) ~ (F(v)∘u, k') for
 * v : k -> k'.  Components and their members are sorted.
 */
std::vector<std::vector<std::pair<int, int>>> comma_components(const FinFunctor& f, int j);

struct StructureReport {
  std::optional<int> initial_obj;
  std::optional<int> terminal_obj;
  bool has_binary_products = false;
  std::vector<std::string> product_witnesses;  // "a x b = p (p1, p2)" or "a x b: none"
  std::optional<bool> all_objects_pointed;     // arrow from the terminal; nullopt without one
  std::optional<bool> all_objects_copointed;   // arrow to the initial; nullopt without one
  bool all_idempotents_split = false;
};

/** Brute-force universal-property search over the whole category, with witnesses. */
StructureReport structure_report(const FinCat& c);

}  // namespace ptops
