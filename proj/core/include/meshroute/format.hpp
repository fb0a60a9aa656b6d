#pragma once

#include <string>
#include <string_view>

#include "meshroute/genetic.hpp"
#include "meshroute/pareto.hpp"
#include "meshroute/topology.hpp"

namespace meshroute {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// "1-24-26-46-50" style node sequence.
std::string path_to_string(const Path& path);
Path path_from_string(std::string_view text);

/// TSV header and row for one generation of an evolve() trace.
std::string trace_header();
std::string trace_line(const GenerationReport& report);

/// Front snapshot rendering: leading `#` metadata (generation, reference
/// point, hypervolume), then a TSV table of the archive entries.
std::string front_snapshot_text(const FrontSnapshot& snapshot,
                                const ObjectiveVector& reference, double hypervolume_value);

}  // namespace meshroute
