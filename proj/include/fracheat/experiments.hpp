#pragma once

#include <string>
#include <vector>

#include "fracheat/config.hpp"
#include "fracheat/report.hpp"

namespace fracheat {

/// Names accepted by run_experiment, in documentation order.
const std::vector<std::string>& experiment_names();

/// Runs one named experiment with `config` (missing keys take the documented
/// defaults) and returns its record. Every effective parameter is copied into
/// record.params so the record can be re-run from its own fields.
///
/// Throws ConfigError for unknown names or invalid values and BudgetError
/// when a grid would exceed `max_modes` (default 2^22), before allocating.
ExperimentRecord run_experiment(const std::string& name, const ExperimentConfig& config);

}  // namespace fracheat
