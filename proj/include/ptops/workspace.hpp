#pragma once

#include <map>

#include "ptops/exponential.hpp"

namespace ptops {

/**
 * A per-site computation context that memoizes the expensive constructions
 * (hom enumerations, products, exponentials, Ω) keyed by presheaf value.
 * All entries are deterministic functions of their keys, so caching never
 * changes results, only running time.  References returned stay valid for
 * the lifetime of the workspace.
 */
class Workspace {
 public:
  explicit Workspace(CatPtr site, Budget budget = {});

  const CatPtr& site() const { return site_; }
  const Budget& budget() const { return budget_; }

  const Presheaf& one();
  const Presheaf& zero();
  const Presheaf& two();
  const Presheaf& rep(int obj);
  const OmegaObj& omega_obj();

  const std::vector<NatTrans>& hom(const Presheaf& x, const Presheaf& y);
  const ProductObj& prod(const Presheaf& x, const Presheaf& y);
  const Exponential& exp(const Presheaf& target, const Presheaf& base);  // target^base

  /** Representables, 0, 1, 2, Ω, then the extras, deduplicated by value. */
  std::vector<Presheaf> default_family(const std::vector<Presheaf>& extra = {});

 private:
  CatPtr site_;
  Budget budget_;
  std::map<std::string, Presheaf> singles_;
  std::map<int, Presheaf> reps_;
  std::map<std::string, std::vector<NatTrans>> homs_;
  std::map<std::string, ProductObj> prods_;
  std::map<std::string, Exponential> exps_;
  std::map<std::string, OmegaObj> omegas_;
};

}  // namespace ptops
