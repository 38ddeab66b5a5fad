#pragma once

#include "localmodal/model.hpp"

#include <string>
#include <string_view>

namespace localmodal
{

/// Reads the JSON model format
///
///     { "worlds": [...], "agents": [...],
///       "relations": { agent: [[from, to], ...] },
///       "theta": { label: [world, ...] },
///       "valuation": { atom: [world, ...] } }
///
/// Only `worlds` is required and it must be nonempty. Unknown keys,
/// undeclared worlds or agents, and duplicate ids are rejected with a
/// ValidationError naming the offending path.
[[nodiscard]] KripkeModel load_model( std::string_view json_text );

/// Deterministic rendering: worlds and agents in model order, edges sorted
/// by (source, target) index, labels and atoms sorted by name.
[[nodiscard]] std::string save_model( const KripkeModel& m );

[[nodiscard]] KripkeModel load_model_file( const std::string& path );
void save_model_file( const KripkeModel& m, const std::string& path );

[[nodiscard]] bool is_agent_token( std::string_view s );
[[nodiscard]] bool is_atom_token( std::string_view s );
[[nodiscard]] bool is_label_token( std::string_view s );

} // namespace localmodal
