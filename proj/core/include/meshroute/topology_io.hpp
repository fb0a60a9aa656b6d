#pragma once

#include <string>
#include <string_view>

#include "meshroute/topology.hpp"

namespace meshroute {

/// Serializes a topology to its canonical JSON document: nodes sorted by id,
/// edges as [u, v] with u < v in lexicographic order, numbers at full
/// round-trip precision. Output is byte-deterministic.
std::string save_topology(const Topology& topology);

/// Parses a topology document. Verifies the schema, the attribute
/// invariants, and that the stored edge list matches the edges re-derived
/// from positions and radius; throws FormatError naming the offending field.
Topology load_topology(std::string_view text);

}  // namespace meshroute
