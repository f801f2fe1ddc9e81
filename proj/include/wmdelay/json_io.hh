#pragma once

#include <string>

#include "wmdelay/automaton.hh"

namespace wmdelay {

/// Parses the automaton JSON document format (format_version 1). Unknown
/// fields are rejected; a deterministic-but-incomplete transition table is
/// rejected rather than auto-completed.
Automaton parse_automaton(const std::string& document);

/// Serializes to the same format; parse(serialize(a)) is structurally equal
/// to a for every automaton that passes parse-time validation.
std::string serialize_automaton(const Automaton& a);

Automaton load_automaton_file(const std::string& path);
void save_automaton_file(const Automaton& a, const std::string& path);

}  // namespace wmdelay
