#pragma once

#include <string>

#include "rosterlab/mip/model.hpp"

namespace rosterlab::mip {

/// CPLEX LP-format text. Variables and constraints appear in declaration
/// order, so equal models produce byte-identical output. Names are made
/// LP-safe by mapping '[' and ',' to '_' and dropping ']'.
std::string export_lp(const MipModel& model);

std::string lp_safe_name(const std::string& name);

}  // namespace rosterlab::mip
