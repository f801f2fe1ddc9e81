#include "wmdelay/product.hh"

#include <algorithm>
#include <map>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

// Precedence when both components enter sinks on the same letter: rejection
// outranks acceptance, mirroring the shape of the acceptance formulas
// (!q_rej & (q_acc | ...)).
const char* const kSinkClasses[] = {"q_rej", "q_R", "q_acc", "q_A"};

int sink_rank(const std::string& cls) {
  for (int i = 0; i < 4; ++i)
    if (cls == kSinkClasses[i]) return i;
  return 4;
}

void require_true_sink(const Automaton& a, state_t q) {
  for (letter_t l = 0; l < a.alphabet().size(); ++l) {
    auto succ = a.successors(q, l);
    if (succ.size() != 1 || succ.front().dst != q)
      throw ValidationError("state '" + a.state_name(q) +
                            "' uses a reserved sink prefix but is not a self-loop sink");
  }
}

}  // namespace

std::optional<std::string> global_sink_class(const std::string& state_name) {
  // Longest prefixes first; the classes are pairwise non-overlapping otherwise.
  for (const char* cls : {"q_rej", "q_acc", "q_R", "q_A"})
    if (state_name.rfind(cls, 0) == 0) return std::string(cls);
  return std::nullopt;
}

Automaton product(const Automaton& a, const Automaton& b, bool formula_rewrite) {
  if (a.alphabet() != b.alphabet())
    throw ValidationError("product components have different alphabets");
  if (!a.deterministic() || !b.deterministic())
    throw DomainError("product requires deterministic complete components");

  size_t na = a.num_states(), nb = b.num_states();
  std::vector<std::optional<std::string>> sink_a(na), sink_b(nb);
  std::vector<std::string> classes;  // present classes, in precedence order
  auto note_class = [&](const std::string& cls) {
    if (std::find(classes.begin(), classes.end(), cls) == classes.end())
      classes.push_back(cls);
  };
  for (state_t q = 0; q < na; ++q)
    if ((sink_a[q] = global_sink_class(a.state_name(q)))) {
      require_true_sink(a, q);
      note_class(*sink_a[q]);
    }
  for (state_t q = 0; q < nb; ++q)
    if ((sink_b[q] = global_sink_class(b.state_name(q)))) {
      require_true_sink(b, q);
      note_class(*sink_b[q]);
    }
  std::sort(classes.begin(), classes.end(),
            [](const std::string& x, const std::string& y) { return sink_rank(x) < sink_rank(y); });

  Automaton::Builder builder;
  // Pair states in row-major order over the non-sink states, then global sinks.
  std::map<std::pair<state_t, state_t>, std::string> pair_name;
  for (state_t qa = 0; qa < na; ++qa) {
    if (sink_a[qa]) continue;
    for (state_t qb = 0; qb < nb; ++qb) {
      if (sink_b[qb]) continue;
      std::string name = "(" + a.state_name(qa) + "," + b.state_name(qb) + ")";
      pair_name[{qa, qb}] = name;
      builder.add_state(name);
    }
  }
  for (const std::string& cls : classes) builder.add_state(cls);
  builder.alphabet(a.alphabet());

  // The successor name under the merged-sink rule.
  auto target_name = [&](state_t da, state_t db) -> std::string {
    if (sink_a[da] && sink_b[db])
      return sink_rank(*sink_a[da]) <= sink_rank(*sink_b[db]) ? *sink_a[da] : *sink_b[db];
    if (sink_a[da]) return *sink_a[da];
    if (sink_b[db]) return *sink_b[db];
    return pair_name.at({da, db});
  };

  builder.initial(target_name(a.initial(), b.initial()));

  for (const auto& [pq, name] : pair_name) {
    auto [qa, qb] = pq;
    for (letter_t l = 0; l < a.alphabet().size(); ++l)
      builder.transition(name, a.alphabet()[l], target_name(a.step(qa, l), b.step(qb, l)));
  }
  for (const std::string& cls : classes)
    for (const Letter& l : a.alphabet()) builder.transition(cls, l, cls);

  size_t total = pair_name.size() + classes.size();
  if (formula_rewrite) {
    const auto* fa = std::get_if<WeakMullerFormula>(&a.acceptance());
    const auto* fb = std::get_if<WeakMullerFormula>(&b.acceptance());
    if (!fa || !fb)
      throw DomainError(
          "formula rewrite requires Emerson-Lei acceptance on both product components");
    auto rewrite = [&](const Formula& f, bool first_coordinate) {
      return f.substitute([&](const std::string& p) -> Formula {
        if (auto cls = global_sink_class(p)) return Formula::var(*cls);
        std::vector<Formula> alts;
        if (first_coordinate) {
          state_t qa = *a.state_index(p);
          for (state_t qb = 0; qb < nb; ++qb)
            if (!sink_b[qb]) alts.push_back(Formula::var(pair_name.at({qa, qb})));
        } else {
          state_t qb = *b.state_index(p);
          for (state_t qa = 0; qa < na; ++qa)
            if (!sink_a[qa]) alts.push_back(Formula::var(pair_name.at({qa, qb})));
        }
        return Formula::disj_all(alts);
      });
    };
    builder.acceptance(WeakMullerFormula{
        Formula::conj(rewrite(fa->formula, true), rewrite(fb->formula, false))});
  } else {
    // Structural product: trivial safety condition over all states.
    StateSet all(static_cast<uint32_t>(total));
    for (uint32_t i = 0; i < total; ++i) all.insert(i);
    builder.acceptance(SafetyAcc{all});
  }

  return builder.build();
}

}  // namespace wmdelay
