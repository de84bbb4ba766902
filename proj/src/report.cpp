#include "ptops/report.hpp"

#include <sstream>

namespace ptops {

namespace {

void item_lines(std::ostringstream& os, const Json& items) {
  for (const Json& c : items) {
    os << "  [" << (c.at("ok").get<bool>() ? "ok" : "FAIL") << "] "
       << c.at("subject").get<std::string>() << "\n";
  }
}

}  // namespace

Json report_to_json(const Report& r) {
  Json doc;
  doc["version"] = r.version;
  doc["command"] = r.command;
  doc["site_digest"] = r.site_digest;
  doc["budget"]["states"] = r.budget_states;
  doc["budget"]["subobjects"] = r.budget_subobjects;
  doc["results"] = r.results;
  return doc;
}

Report report_from_json(const Json& doc) {
  Report r;
  r.version = doc.at("version").get<std::string>();
  r.command = doc.at("command").get<std::string>();
  r.site_digest = doc.at("site_digest").get<std::string>();
  r.budget_states = doc.at("budget").at("states").get<std::uint64_t>();
  r.budget_subobjects = doc.at("budget").at("subobjects").get<std::uint64_t>();
  r.results = doc.at("results");
  return r;
}

std::string render_machine(const Report& r) { return canonical_text(report_to_json(r)); }

std::string render_human(const Json& m) {
  std::ostringstream os;
  os << "ptops " << m.at("version").get<std::string>() << " — "
     << m.at("command").get<std::string>() << "\n";
  std::string digest = m.at("site_digest").get<std::string>();
  if (!digest.empty()) os << "site digest: " << digest << "\n";
  os << "budget: " << m.at("budget").at("states").get<std::uint64_t>() << " states, "
     << m.at("budget").at("subobjects").get<std::uint64_t>() << " subobjects\n";

  const Json& res = m.at("results");

  if (res.contains("errors")) {
    os << "invalid:\n";
    for (const Json& e : res.at("errors")) os << "  - " << e.get<std::string>() << "\n";
    return os.str();
  }
  if (res.contains("valid")) {
    os << "valid: " << res.at("objects").size() << " objects, " << res.at("arrows").size()
       << " arrows (identities omitted)\n";
    return os.str();
  }

  if (res.contains("checks")) {  // a verification suite
    os << "suite " << res.at("suite").get<std::string>() << " at bound "
       << res.at("bound").get<int>() << "\n";
    int passed = 0;
    for (const Json& c : res.at("checks")) {
      bool ok = c.at("pass").get<bool>();
      passed += ok;
      os << "  [" << (ok ? "PASS" : "FAIL") << "] " << c.at("name").get<std::string>();
      std::string w = c.at("witness").get<std::string>();
      if (!w.empty()) os << " — " << w;
      os << "\n";
    }
    os << passed << "/" << res.at("checks").size() << " checks passed\n";
    return os.str();
  }

  if (res.contains("counit_monic")) {  // cohesion diagnostics
    os << "cohesion diagnostics at bound " << res.at("bound").get<int>() << "\n";
    os << "  pieces-discrete-sections adjoint string fully faithful: "
       << (res.at("delta_fully_faithful").get<bool>() ? "yes" : "NO") << "\n";
    os << "  |sections of the classifier| = " << res.at("gamma_omega").get<int>()
       << (res.at("two_valued").get<bool>() ? " (two-valued)" : " (NOT two-valued)") << "\n";
    os << "  counit monic:\n";
    item_lines(os, res.at("counit_monic"));
    os << "  pieces of products:\n";
    item_lines(os, res.at("pi_products"));
    os << "  sections of non-initial objects:\n";
    item_lines(os, res.at("nullstellensatz"));
    os << "  supports split:\n";
    item_lines(os, res.at("supports_split"));
    os << "verdict: " << (res.at("passes").get<bool>() ? "PASS" : "FAIL");
    std::string ff = res.at("first_failure").get<std::string>();
    if (!ff.empty()) os << " (first failure: " << ff << ")";
    os << "\n";
    return os.str();
  }

  if (res.contains("verdicts")) {  // atomicity scan
    os << "atomicity at bound " << res.at("bound").get<int>() << "\n";
    for (const Json& v : res.at("verdicts")) {
      os << "  " << v.at("name").get<std::string>() << ": ";
      if (v.at("atomic").get<bool>()) {
        os << "atomic (" << v.at("witnesses").get<int>() << " witnesses)";
        if (!v.at("connected").get<bool>()) os << " [disconnected]";
      } else {
        os << "not atomic — refuted at " << v.at("refuted_at").get<std::string>() << " after "
           << v.at("pairs_tried").get<std::uint64_t>() << " pairs";
      }
      os << "\n";
    }
    return os.str();
  }

  if (res.contains("tables")) {  // right-adjoint computation
    os << "right adjoint along " << res.at("atom").get<std::string>() << " applied to "
       << res.at("target").get<std::string>() << "\n";
    if (res.at("candidate_only").get<bool>())
      os << "  CANDIDATE ONLY: " << res.at("adjunction_failure").get<std::string>() << "\n";
    const Json& sets = res.at("tables").at("sets");
    for (auto it = sets.begin(); it != sets.end(); ++it) {
      os << "  at " << it.key() << ":";
      for (const Json& e : it.value()) os << " " << e.get<std::string>();
      if (it.value().empty()) os << " (empty)";
      os << "\n";
    }
    const Json& action = res.at("tables").at("action");
    for (auto it = action.begin(); it != action.end(); ++it) {
      os << "  along " << it.key() << ":";
      for (auto jt = it.value().begin(); jt != it.value().end(); ++jt)
        os << " " << jt.key() << "->" << jt.value().get<std::string>();
      os << "\n";
    }
    if (res.contains("rigidity")) {
      os << "  sections preserved: "
         << (res.at("rigidity").at("sections_preserved").get<bool>() ? "yes" : "NO") << "\n";
      os << "  pieces preserved: "
         << (res.at("rigidity").at("pieces_preserved").get<bool>() ? "yes" : "NO") << "\n";
    }
    return os.str();
  }

  os << res.dump(2) << "\n";
  return os.str();
}

Json suite_to_json(const SuiteResult& r) {
  Json doc;
  doc["suite"] = r.suite;
  doc["bound"] = r.bound;
  doc["checks"] = Json::array();
  for (const CheckResult& c : r.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    jc["witness"] = c.witness;
    doc["checks"].push_back(std::move(jc));
  }
  return doc;
}

namespace {

Json items_to_json(const std::vector<CheckItem>& items) {
  Json arr = Json::array();
  for (const CheckItem& it : items) {
    Json j;
    j["subject"] = it.subject;
    j["ok"] = it.ok;
    arr.push_back(std::move(j));
  }
  return arr;
}

}  // namespace

Json cohesion_to_json(const CohesionReport& r) {
  Json doc;
  doc["bound"] = r.bound;
  doc["delta_fully_faithful"] = r.delta_fully_faithful;
  doc["counit_monic"] = items_to_json(r.counit_monic);
  doc["pi_products"] = items_to_json(r.pi_products);
  doc["nullstellensatz"] = items_to_json(r.nullstellensatz);
  doc["two_valued"] = r.two_valued;
  doc["gamma_omega"] = r.gamma_omega;
  doc["supports_split"] = items_to_json(r.supports_split);
  doc["first_failure"] = r.first_failure;
  doc["passes"] = r.passes();
  return doc;
}

}  // namespace ptops
