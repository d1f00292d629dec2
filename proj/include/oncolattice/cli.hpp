#ifndef ONCOLATTICE_CLI_HPP
#define ONCOLATTICE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "oncolattice/experiments.hpp"

namespace oncolattice {

enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumeric = 2 };

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Writes every artifact plus manifest.yaml into `dir`; returns the paths written.
std::vector<std::string> write_artifacts(const Scenario& sc, const std::vector<Artifact>& artifacts,
                                         const std::string& dir, const std::string& format,
                                         long long seed);

std::string equilibria_report(const Scenario& sc);
std::string classify_report(const ReducedParams& p);
std::string certify_report(const LatticeModel& m);

}  // namespace oncolattice

#endif  // ONCOLATTICE_CLI_HPP
