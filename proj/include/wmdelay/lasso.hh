#pragma once

#include <optional>
#include <vector>

#include "wmdelay/automaton.hh"

namespace wmdelay {

/// Ultimately periodic word u . v^omega; v is non-empty.
struct Lasso {
  std::vector<Letter> spoke;  // u
  std::vector<Letter> cycle;  // v, |v| >= 1
};

/// Exact membership of u.v^omega in L(a), for every acceptance kind and for
/// deterministic as well as non-deterministic automata.
bool lasso_accepts(const Automaton& a, const Lasso& lasso);

/// Deterministic runs only: verdict plus the stabilized occurrence set of the
/// run on u.v^omega (the set occ(rho) once it stops growing).
std::pair<bool, StateSet> lasso_run_det(const Automaton& a, const Lasso& lasso);

}  // namespace wmdelay
