#pragma once

#include "ptops/report.hpp"

namespace ptops {

inline constexpr const char* kToolVersion = "1.0.0";

// exit codes, exhaustive and mutually exclusive
inline constexpr int kExitPass = 0;         // all asserted checks hold
inline constexpr int kExitCheckFailed = 1;  // a law or suite check failed
inline constexpr int kExitInputError = 2;   // unreadable / malformed / unknown input
inline constexpr int kExitBudget = 3;       // search budget exhausted

struct CmdOptions {
  int bound = 3;
  std::uint64_t budget_states = 10'000'000;
  std::uint64_t budget_subobjects = 10'000;
  std::vector<std::string> family_files;  // extra presheaves joining the test family
  std::string command_echo;               // what to record in the report
};

struct CmdResult {
  int exit_code = kExitPass;
  Report report;
};

/** Validates a site file; lists every law violation on failure. */
CmdResult cmd_validate(const std::string& site_file, const CmdOptions& opt = {});

/**
 * Atomicity verdicts for the representables, any user presheaves, and all
 * presheaves with at most `bound` elements per object, with witness counts
 * for positives and refutation certificates for negatives.
 */
CmdResult cmd_atoms(const std::string& site_file, const CmdOptions& opt = {},
                    const std::vector<std::string>& presheaf_files = {});

/**
 * The right adjoint to exponentiation along `atom` applied to `target`, as
 * full value tables plus preservation summaries when the atom qualifies.
 * Objects are named y_<object>, 0, 1, 2, omega, or given as presheaf files.
 */
CmdResult cmd_radj(const std::string& site_file, const std::string& atom,
                   const std::string& target, const CmdOptions& opt = {});

/** The cohesion diagnostics of the site at the given bound. */
CmdResult cmd_cohesion(const std::string& site_file, const CmdOptions& opt = {});

/** Runs one named verification suite. */
CmdResult cmd_verify(const std::string& suite, const CmdOptions& opt = {});

}  // namespace ptops
