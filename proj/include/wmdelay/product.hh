#pragma once

#include <optional>
#include <string>

#include "wmdelay/automaton.hh"

namespace wmdelay {

/// Reserved state-name prefixes marking global sinks in products.
/// A component state whose name starts with one of these must be a true sink
/// (self-loops on every letter); the product merges all matching states into
/// one global sink per class instead of forming pair states.
std::optional<std::string> global_sink_class(const std::string& state_name);

/// Synchronous product of two deterministic complete automata over the same
/// alphabet. Pair states are named "(a,b)". With formula_rewrite set, both
/// acceptances must be Emerson-Lei; each component variable p is replaced by
/// the disjunction of all pair states whose respective coordinate is p (or by
/// the global sink name), and the product carries the conjunction of the two
/// rewritten formulas. Without the flag the product is structural and carries
/// the trivial safety condition over all states.
Automaton product(const Automaton& a, const Automaton& b, bool formula_rewrite);

}  // namespace wmdelay
