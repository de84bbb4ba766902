#include "ptops/workspace.hpp"

namespace ptops {

Workspace::Workspace(CatPtr site, Budget budget) : site_(std::move(site)), budget_(budget) {}

const Presheaf& Workspace::one() {
  auto it = singles_.find("one");
  if (it == singles_.end()) it = singles_.insert({"one", terminal_presheaf(site_)}).first;
  return it->second;
}

const Presheaf& Workspace::zero() {
  auto it = singles_.find("zero");
  if (it == singles_.end()) it = singles_.insert({"zero", initial_presheaf(site_)}).first;
  return it->second;
}

const Presheaf& Workspace::two() {
  auto it = singles_.find("two");
  if (it == singles_.end()) it = singles_.insert({"two", two_presheaf(site_)}).first;
  return it->second;
}

const Presheaf& Workspace::rep(int obj) {
  auto it = reps_.find(obj);
  if (it == reps_.end()) it = reps_.insert({obj, representable(site_, obj)}).first;
  return it->second;
}

const OmegaObj& Workspace::omega_obj() {
  auto it = omegas_.find("omega");
  if (it == omegas_.end()) it = omegas_.insert({"omega", omega(site_)}).first;
  return it->second;
}

const std::vector<NatTrans>& Workspace::hom(const Presheaf& x, const Presheaf& y) {
  const std::string key = presheaf_key(x) + "=>" + presheaf_key(y);
  auto it = homs_.find(key);
  if (it == homs_.end()) it = homs_.insert({key, enumerate_nat(x, y, budget_)}).first;
  return it->second;
}

const ProductObj& Workspace::prod(const Presheaf& x, const Presheaf& y) {
  const std::string key = presheaf_key(x) + "*" + presheaf_key(y);
  auto it = prods_.find(key);
  if (it == prods_.end()) it = prods_.insert({key, product(x, y)}).first;
  return it->second;
}

const Exponential& Workspace::exp(const Presheaf& target, const Presheaf& base) {
  const std::string key = presheaf_key(target) + "^" + presheaf_key(base);
  auto it = exps_.find(key);
  if (it == exps_.end()) it = exps_.insert({key, exponential(target, base, budget_)}).first;
  return it->second;
}

std::vector<Presheaf> Workspace::default_family(const std::vector<Presheaf>& extra) {
  std::vector<Presheaf> family;
  auto add = [&](const Presheaf& p) {
    for (const auto& q : family)
      if (q == p) return;
    family.push_back(p);
  };
  for (int o = 0; o < site_->n_objects(); ++o) add(rep(o));
  add(zero());
  add(one());
  add(two());
  add(omega_obj().obj);
  for (const auto& p : extra) add(p);
  return family;
}

}  // namespace ptops
