#include "ptops/cli.hpp"

namespace ptops {

namespace {

Budget budget_of(const CmdOptions& opt) {
  Budget b;
  b.nat_states = opt.budget_states;
  b.max_subobjects = opt.budget_subobjects;
  return b;
}

Report base_report(const CmdOptions& opt) {
  Report r;
  r.version = kToolVersion;
  r.command = opt.command_echo;
  r.budget_states = opt.budget_states;
  r.budget_subobjects = opt.budget_subobjects;
  r.results = Json::object();
  return r;
}

std::string profile_of(const Presheaf& x) {
  std::string out = "(";
  for (std::size_t a = 0; a < x.elems.size(); ++a)
    out += (a ? "," : "") + std::to_string(x.elems[a].size());
  return out + ")";
}

/** Loads and fully validates a site file; InputError carries every violation. */
CatPtr load_site(const std::string& path) {
  RawCat raw = site_from_json(read_json_file(path));
  CatResult res = validate_category(raw);
  if (!res.ok()) {
    std::string msg = "invalid site:";
    for (const std::string& e : res.errors) msg += " " + e + ";";
    throw InputError(msg);
  }
  return res.cat;
}

/** y_<object>, 0, 1, 2, omega, or a presheaf file path. */
Presheaf resolve_object(Workspace& w, const std::string& name) {
  if (name == "0") return w.zero();
  if (name == "1") return w.one();
  if (name == "2") return w.two();
  if (name == "omega") return w.omega_obj().obj;
  if (name.rfind("y_", 0) == 0) {
    int o = w.site()->object_index(name.substr(2));
    if (o < 0) throw InputError("unknown site object in \"" + name + "\"");
    return w.rep(o);
  }
  return load_presheaf_file(name, w.site());
}

}  // namespace

CmdResult cmd_validate(const std::string& site_file, const CmdOptions& opt) {
  CmdResult out;
  out.report = base_report(opt);
  try {
    RawCat raw = site_from_json(read_json_file(site_file));
    CatResult res = validate_category(raw);
    if (!res.ok()) {
      out.report.results["errors"] = res.errors;
      out.exit_code = kExitCheckFailed;
      return out;
    }
    out.report.site_digest = site_digest(*res.cat);
    out.report.results["valid"] = true;
    out.report.results["objects"] = Json::array();
    for (const std::string& o : res.cat->objects()) out.report.results["objects"].push_back(o);
    out.report.results["arrows"] = Json::array();
    for (int f = 0; f < res.cat->n_arrows(); ++f)
      if (!res.cat->is_identity(f)) out.report.results["arrows"].push_back(res.cat->arrow_name(f));
  } catch (const InputError& e) {
    out.report.results["errors"] = Json::array({e.what()});
    out.exit_code = kExitInputError;
  }
  return out;
}

CmdResult cmd_atoms(const std::string& site_file, const CmdOptions& opt,
                    const std::vector<std::string>& presheaf_files) {
  CmdResult out;
  out.report = base_report(opt);
  try {
    CatPtr cat = load_site(site_file);
    out.report.site_digest = site_digest(*cat);
    Workspace w(cat, budget_of(opt));
    AtomicContext ctx(w);

    std::vector<std::pair<std::string, Presheaf>> entries;
    for (int a = 0; a < cat->n_objects(); ++a)
      entries.push_back({"y_" + cat->object_name(a), w.rep(a)});
    for (const std::string& path : presheaf_files)
      entries.push_back({path, load_presheaf_file(path, cat)});
    for (const std::string& path : opt.family_files)
      entries.push_back({path, load_presheaf_file(path, cat)});
    {
      std::vector<Presheaf> enumerated = enumerate_presheaves(cat, opt.bound, budget_of(opt));
      for (std::size_t i = 0; i < enumerated.size(); ++i)
        entries.push_back({"X" + std::to_string(i) + profile_of(enumerated[i]),
                           std::move(enumerated[i])});
    }

    out.report.results["bound"] = opt.bound;
    out.report.results["verdicts"] = Json::array();
    for (const auto& [name, x] : entries) {
      const AtomicityVerdict& v = ctx.atomic(x);
      Json jv;
      jv["name"] = name;
      jv["atomic"] = v.atomic;
      jv["connected"] = is_connected(x);
      if (v.atomic) {
        jv["witnesses"] = static_cast<int>(v.witnesses.size());
      } else {
        jv["refuted_at"] = cat->object_name(v.failing_obj);
        jv["pairs_tried"] = v.refutation.total;
      }
      out.report.results["verdicts"].push_back(std::move(jv));
    }
  } catch (const InputError& e) {
    out.report.results["errors"] = Json::array({e.what()});
    out.exit_code = kExitInputError;
  } catch (const BudgetExceeded& e) {
    out.report.results["errors"] = Json::array({std::string("budget exceeded: ") + e.what()});
    out.exit_code = kExitBudget;
  }
  return out;
}

CmdResult cmd_radj(const std::string& site_file, const std::string& atom,
                   const std::string& target, const CmdOptions& opt) {
  CmdResult out;
  out.report = base_report(opt);
  try {
    CatPtr cat = load_site(site_file);
    out.report.site_digest = site_digest(*cat);
    Workspace w(cat, budget_of(opt));
    AtomicContext ctx(w);
    Presheaf t = resolve_object(w, atom);
    Presheaf x = resolve_object(w, target);

    const AtomicityVerdict& v = ctx.atomic(t);
    const RightAdjointObj& r = ctx.radj(t, x);
    out.report.results["atom"] = atom;
    out.report.results["target"] = target;
    out.report.results["atomic"] = v.atomic;
    out.report.results["candidate_only"] = r.candidate_only;
    out.report.results["adjunction_failure"] = r.adjunction_failure;
    out.report.results["tables"] = presheaf_to_json(r.obj);
    if (v.atomic) {
      RigidityResult rig = right_adjoint_rigidity(ctx, t, x);
      out.report.results["rigidity"]["sections_preserved"] = rig.gamma_iso;
      out.report.results["rigidity"]["pieces_preserved"] = rig.pi_iso;
    }
  } catch (const InputError& e) {
    out.report.results["errors"] = Json::array({e.what()});
    out.exit_code = kExitInputError;
  } catch (const BudgetExceeded& e) {
    out.report.results["errors"] = Json::array({std::string("budget exceeded: ") + e.what()});
    out.exit_code = kExitBudget;
  }
  return out;
}

CmdResult cmd_cohesion(const std::string& site_file, const CmdOptions& opt) {
  CmdResult out;
  out.report = base_report(opt);
  try {
    CatPtr cat = load_site(site_file);
    out.report.site_digest = site_digest(*cat);
    Workspace w(cat, budget_of(opt));
    CohesionReport rep = mclarty_report(w, opt.bound, budget_of(opt));
    out.report.results = cohesion_to_json(rep);
    if (!rep.passes()) out.exit_code = kExitCheckFailed;
  } catch (const InputError& e) {
    out.report.results["errors"] = Json::array({e.what()});
    out.exit_code = kExitInputError;
  } catch (const BudgetExceeded& e) {
    out.report.results["errors"] = Json::array({std::string("budget exceeded: ") + e.what()});
    out.exit_code = kExitBudget;
  }
  return out;
}

CmdResult cmd_verify(const std::string& suite, const CmdOptions& opt) {
  CmdResult out;
  out.report = base_report(opt);
  try {
    SuiteResult r = run_suite(suite, opt.bound);
    out.report.results = suite_to_json(r);
    if (!r.all_pass()) out.exit_code = kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    out.report.results["errors"] = Json::array({e.what()});
    out.exit_code = kExitInputError;
  }
  return out;
}

}  // namespace ptops
