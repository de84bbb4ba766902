#pragma once

#include "ptops/cohesion.hpp"
#include "ptops/io.hpp"
#include "ptops/verify.hpp"

namespace ptops {

/**
 * A deterministic analysis report.  Identical inputs and flags produce
 * byte-identical machine and human renderings; wall-clock timing is never
 * stored here and belongs on standard error.
 */
struct Report {
  std::string version;
  std::string command;      // the invocation being reported on
  std::string site_digest;  // empty when no site file is involved
  std::uint64_t budget_states = 0;
  std::uint64_t budget_subobjects = 0;
  Json results;  // command-specific payload

  bool operator==(const Report&) const = default;
};

/** Machine form.  report_from_json inverts it exactly. */
Json report_to_json(const Report& r);
Report report_from_json(const Json& doc);

/** Canonical machine text: sorted keys, two-space indent, trailing newline. */
std::string render_machine(const Report& r);

/** Human text, derived from the machine form only. */
std::string render_human(const Json& machine);

// ------------------------------------------------------- payload builders

Json suite_to_json(const SuiteResult& r);
Json cohesion_to_json(const CohesionReport& r);

}  // namespace ptops
