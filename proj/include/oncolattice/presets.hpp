#ifndef ONCOLATTICE_PRESETS_HPP
#define ONCOLATTICE_PRESETS_HPP

#include <string>
#include <vector>

#include "oncolattice/experiments.hpp"

namespace oncolattice {

/// Identifiers accepted by `make_preset`, in figure order.
const std::vector<std::string>& preset_ids();

/// Throws std::invalid_argument listing the valid ids when `id` is unknown.
Scenario make_preset(const std::string& id);

/// Reduced parameters obtained from the baseline dimensional set.
ReducedParams baseline_reduced(double alpha);

}  // namespace oncolattice

#endif  // ONCOLATTICE_PRESETS_HPP
