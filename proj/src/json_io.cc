#include "wmdelay/json_io.hh"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw ParseError("unknown field '" + it.key() + "' in " + where);
}

const json& field(const json& obj, const char* name, const std::string& where) {
  auto it = obj.find(name);
  if (it == obj.end())
    throw ParseError("missing required field '" + std::string(name) + "' in " + where);
  return *it;
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + " must be a string");
  return j.get<std::string>();
}

Letter parse_letter(const json& j, const std::string& where) {
  if (j.is_string()) return Letter::plain(j.get<std::string>());
  if (j.is_array() && j.size() == 2 && j[0].is_string() && j[1].is_string())
    return Letter::pair(j[0].get<std::string>(), j[1].get<std::string>());
  throw ParseError(where + " must be a token or a 2-element token list");
}

json letter_to_json(const Letter& l) {
  if (!l.is_pair()) return l.token();
  return json::array({l.input(), l.output()});
}

Acceptance parse_acceptance(const json& j, const std::vector<std::string>& states,
                            const std::map<std::string, uint32_t>& index) {
  if (!j.is_object()) throw ParseError("'acceptance' must be an object");
  std::string type = as_string(field(j, "type", "acceptance"), "acceptance.type");
  uint32_t n = static_cast<uint32_t>(states.size());

  auto state_set_of = [&](const json& arr, const std::string& where) {
    if (!arr.is_array()) throw ParseError(where + " must be a list of state names");
    StateSet s(n);
    for (const json& e : arr) {
      std::string name = as_string(e, where + " entry");
      auto it = index.find(name);
      if (it == index.end())
        throw ValidationError(where + " references unknown state: " + name);
      s.insert(it->second);
    }
    return s;
  };

  if (type == "safety") {
    reject_unknown_fields(j, {"type", "F"}, "acceptance");
    return SafetyAcc{state_set_of(field(j, "F", "acceptance"), "acceptance.F")};
  }
  if (type == "reachability") {
    reject_unknown_fields(j, {"type", "F"}, "acceptance");
    return ReachabilityAcc{state_set_of(field(j, "F", "acceptance"), "acceptance.F")};
  }
  if (type == "parity") {
    reject_unknown_fields(j, {"type", "colors"}, "acceptance");
    const json& colors = field(j, "colors", "acceptance");
    if (!colors.is_object()) throw ParseError("acceptance.colors must be an object");
    ParityAcc p;
    p.color.assign(n, 0);
    std::vector<char> seen(n, 0);
    for (auto it = colors.begin(); it != colors.end(); ++it) {
      auto si = index.find(it.key());
      if (si == index.end())
        throw ValidationError("acceptance.colors references unknown state: " + it.key());
      if (!it.value().is_number_unsigned())
        throw ParseError("color of state '" + it.key() + "' must be a non-negative integer");
      p.color[si->second] = it.value().get<uint32_t>();
      seen[si->second] = 1;
    }
    for (uint32_t q = 0; q < n; ++q)
      if (!seen[q])
        throw ValidationError("acceptance.colors misses state: " + states[q]);
    return p;
  }
  if (type == "weak-muller") {
    reject_unknown_fields(j, {"type", "repr", "sets", "formula"}, "acceptance");
    std::string repr = as_string(field(j, "repr", "acceptance"), "acceptance.repr");
    if (repr == "explicit") {
      const json& sets = field(j, "sets", "acceptance");
      if (!sets.is_array()) throw ParseError("acceptance.sets must be a list of lists");
      WeakMullerExplicit ex;
      for (const json& s : sets)
        ex.sets.push_back(state_set_of(s, "acceptance.sets entry"));
      return ex;
    }
    if (repr == "emerson-lei") {
      std::string text = as_string(field(j, "formula", "acceptance"), "acceptance.formula");
      return WeakMullerFormula{Formula::parse(text)};
    }
    throw ParseError("acceptance.repr must be 'explicit' or 'emerson-lei'");
  }
  throw ParseError("acceptance.type must be one of safety, reachability, parity, weak-muller");
}

}  // namespace

Automaton parse_automaton(const std::string& document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("automaton document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("automaton document must be a JSON object");
  reject_unknown_fields(
      doc, {"format_version", "states", "initial", "alphabet", "transitions", "acceptance"},
      "automaton document");

  const json& ver = field(doc, "format_version", "automaton document");
  if (!ver.is_number_integer() || ver.get<int>() != 1)
    throw ParseError("format_version must be the integer 1");

  const json& jstates = field(doc, "states", "automaton document");
  if (!jstates.is_array() || jstates.empty())
    throw ParseError("'states' must be a non-empty list of names");

  Automaton::Builder b;
  std::vector<std::string> names;
  for (const json& s : jstates) names.push_back(as_string(s, "state name"));
  for (const std::string& s : names) b.add_state(s);
  std::map<std::string, uint32_t> index;
  for (uint32_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);

  const json& jalpha = field(doc, "alphabet", "automaton document");
  if (!jalpha.is_array() || jalpha.empty())
    throw ParseError("'alphabet' must be a non-empty list");
  std::vector<Letter> letters;
  for (const json& l : jalpha) letters.push_back(parse_letter(l, "alphabet entry"));
  b.alphabet(letters);

  b.initial(as_string(field(doc, "initial", "automaton document"), "initial"));

  const json& jtrans = field(doc, "transitions", "automaton document");
  if (!jtrans.is_array()) throw ParseError("'transitions' must be a list");
  size_t trans_count = 0;
  for (const json& t : jtrans) {
    if (!t.is_array() || t.size() != 3)
      throw ParseError("transition entry must be [source, letter, target]");
    Letter l = parse_letter(t[1], "transition letter");
    b.transition(as_string(t[0], "transition source"), l, as_string(t[2], "transition target"));
    ++trans_count;
  }

  b.acceptance(parse_acceptance(field(doc, "acceptance", "automaton document"), names, index));

  Automaton a = b.build();

  // Total-or-branching: a transition table with at most one successor
  // everywhere but holes somewhere is an incomplete deterministic automaton,
  // which the format rejects.
  if (!a.deterministic()) {
    bool branching = false;
    for (state_t q = 0; q < a.num_states(); ++q)
      for (letter_t l = 0; l < a.alphabet().size(); ++l)
        if (a.successors(q, l).size() > 1) branching = true;
    if (!branching)
      throw ValidationError(
          "incomplete deterministic automaton: every (state, letter) needs a successor");
  }
  (void)trans_count;
  return a;
}

std::string serialize_automaton(const Automaton& a) {
  json doc;
  doc["format_version"] = 1;
  doc["states"] = a.state_names();
  doc["initial"] = a.state_name(a.initial());
  json alpha = json::array();
  for (const Letter& l : a.alphabet()) alpha.push_back(letter_to_json(l));
  doc["alphabet"] = alpha;
  json trans = json::array();
  for (const Transition& t : a.transitions())
    trans.push_back(json::array(
        {a.state_name(t.src), letter_to_json(a.alphabet()[t.letter]), a.state_name(t.dst)}));
  doc["transitions"] = trans;

  json acc;
  auto names_of = [&](const StateSet& s) {
    json arr = json::array();
    for (uint32_t q : s.elements()) arr.push_back(a.state_name(q));
    return arr;
  };
  if (const auto* s = std::get_if<SafetyAcc>(&a.acceptance())) {
    acc["type"] = "safety";
    acc["F"] = names_of(s->safe);
  } else if (const auto* r = std::get_if<ReachabilityAcc>(&a.acceptance())) {
    acc["type"] = "reachability";
    acc["F"] = names_of(r->target);
  } else if (const auto* p = std::get_if<ParityAcc>(&a.acceptance())) {
    acc["type"] = "parity";
    json colors = json::object();
    for (state_t q = 0; q < a.num_states(); ++q) colors[a.state_name(q)] = p->color[q];
    acc["colors"] = colors;
  } else if (const auto* ex = std::get_if<WeakMullerExplicit>(&a.acceptance())) {
    acc["type"] = "weak-muller";
    acc["repr"] = "explicit";
    json sets = json::array();
    for (const StateSet& f : ex->sets) sets.push_back(names_of(f));
    acc["sets"] = sets;
  } else {
    const auto& el = std::get<WeakMullerFormula>(a.acceptance());
    acc["type"] = "weak-muller";
    acc["repr"] = "emerson-lei";
    acc["formula"] = el.formula.to_string();
  }
  doc["acceptance"] = acc;
  return doc.dump(2) + "\n";
}

Automaton load_automaton_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open automaton file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_automaton(buf.str());
}

void save_automaton_file(const Automaton& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write automaton file: " + path);
  out << serialize_automaton(a);
}

}  // namespace wmdelay
