#pragma once

#include <string>

#include "wmdelay/automaton.hh"

namespace wmdelay {

/// HOA v1 text export of a parity automaton with colors in {1, 2}.
/// Header uses `acc-name: parity max even 3`; colors map to acceptance sets
/// directly (set 0 stays unused). Letters are binary-encoded over numeric
/// atomic propositions, state names become state labels.
std::string to_hoa(const Automaton& a, const std::string& name);

/// Strict structural validator for the HOA v1 subset this project emits (and
/// for compatible state-based parity automata in general). Throws ParseError
/// with a line diagnostic on the first violation.
void validate_hoa(const std::string& text);

}  // namespace wmdelay
