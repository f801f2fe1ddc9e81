#include "wmdelay/hoa.hh"

#include <algorithm>
#include <cstdint>
#include <set>
#include <sstream>
#include <vector>

#include "wmdelay/error.hh"

namespace wmdelay {

namespace {

uint32_t ap_count(size_t letters) {
  uint32_t k = 0;
  while ((size_t(1) << k) < letters) ++k;
  return std::max(k, 1u);
}

std::string label_expr(uint32_t letter, uint32_t aps) {
  std::string out;
  for (uint32_t b = 0; b < aps; ++b) {
    if (b) out += " & ";
    if (!((letter >> b) & 1)) out += '!';
    out += std::to_string(b);
  }
  return out;
}

}  // namespace

std::string to_hoa(const Automaton& a, const std::string& name) {
  const auto* parity = std::get_if<ParityAcc>(&a.acceptance());
  if (!parity) throw DomainError("HOA export supports parity automata only");
  for (uint32_t c : parity->color)
    if (c < 1 || c > 2)
      throw DomainError("HOA export expects parity colors in {1, 2}");

  uint32_t aps = ap_count(a.alphabet().size());
  std::ostringstream out;
  out << "HOA: v1\n";
  out << "name: \"" << name << "\"\n";
  out << "States: " << a.num_states() << "\n";
  out << "Start: " << a.initial() << "\n";
  out << "AP: " << aps;
  for (uint32_t b = 0; b < aps; ++b) out << " \"l" << b << "\"";
  out << "\n";
  out << "acc-name: parity max even 3\n";
  out << "Acceptance: 3 Inf(2) | (Fin(2) & (Fin(1) & Inf(0)))\n";
  out << "properties: trans-labels explicit-labels state-acc colored";
  if (a.deterministic()) out << " deterministic complete";
  out << "\n";
  out << "--BODY--\n";
  for (state_t q = 0; q < a.num_states(); ++q) {
    out << "State: " << q << " \"" << a.state_name(q) << "\" {" << parity->color[q] << "}\n";
    for (letter_t l = 0; l < a.alphabet().size(); ++l)
      for (const Transition& t : a.successors(q, l))
        out << "[" << label_expr(l, aps) << "] " << t.dst << "\n";
  }
  out << "--END--\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Validator. Grammar subset: the mandatory HOA: header, header items until
// --BODY--, state sections with edges, --END--.

namespace {

struct HoaScanner {
  std::istringstream in;
  std::string line;
  size_t lineno = 0;

  explicit HoaScanner(const std::string& text) : in(text) {}

  bool next() {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty()) return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("HOA line " + std::to_string(lineno) + ": " + msg);
  }
};

bool parse_uint(const std::string& s, size_t& out) {
  if (s.empty()) return false;
  size_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

// Acceptance boolean expression over Inf(k)/Fin(k) atoms.
struct AccExprParser {
  const std::string& s;
  size_t pos = 0;
  size_t sets;
  HoaScanner& sc;

  void skip() {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expr() {
    term();
    skip();
    while (pos < s.size() && (s[pos] == '|' || s[pos] == '&')) {
      ++pos;
      term();
      skip();
    }
  }
  void term() {
    skip();
    if (eat('(')) {
      expr();
      if (!eat(')')) sc.fail("acceptance: missing ')'");
      return;
    }
    if (s.compare(pos, 4, "Inf(") == 0 || s.compare(pos, 4, "Fin(") == 0) {
      pos += 4;
      size_t start = pos;
      while (pos < s.size() && s[pos] != ')') ++pos;
      size_t setnum;
      if (pos >= s.size() || !parse_uint(s.substr(start, pos - start), setnum))
        sc.fail("acceptance: malformed set atom");
      if (setnum >= sets) sc.fail("acceptance: set index out of range");
      ++pos;  // ')'
      return;
    }
    if (s.compare(pos, 1, "t") == 0 || s.compare(pos, 1, "f") == 0) {
      ++pos;
      return;
    }
    sc.fail("acceptance: expected Inf(k), Fin(k), t, or f");
  }
};

}  // namespace

void validate_hoa(const std::string& text) {
  HoaScanner sc(text);
  if (!sc.next() || sc.line != "HOA: v1") sc.fail("expected 'HOA: v1'");

  size_t states = 0;
  bool have_states = false, have_acceptance = false, have_start = false;
  size_t acc_sets = 0, aps = 0;
  bool have_ap = false;
  std::string acc_expr;

  while (sc.next()) {
    if (sc.line == "--BODY--") break;
    auto colon = sc.line.find(':');
    if (colon == std::string::npos) sc.fail("header item must contain ':'");
    std::string key = sc.line.substr(0, colon);
    std::string rest = sc.line.substr(colon + 1);
    if (key == "States") {
      if (!parse_uint(split_ws(rest).at(0), states)) sc.fail("States: expects a number");
      have_states = true;
    } else if (key == "Start") {
      size_t s0;
      if (!parse_uint(split_ws(rest).at(0), s0)) sc.fail("Start: expects a number");
      have_start = true;
    } else if (key == "Acceptance") {
      auto toks = split_ws(rest);
      if (toks.empty() || !parse_uint(toks[0], acc_sets))
        sc.fail("Acceptance: expects a set count");
      acc_expr = rest.substr(rest.find(toks[0]) + toks[0].size());
      have_acceptance = true;
      AccExprParser p{acc_expr, 0, acc_sets, sc};
      p.expr();
      p.skip();
      if (p.pos != acc_expr.size()) sc.fail("acceptance: trailing input");
    } else if (key == "AP") {
      auto toks = split_ws(rest);
      if (toks.empty() || !parse_uint(toks[0], aps)) sc.fail("AP: expects a count");
      size_t quoted = 0;
      for (size_t i = 0; i < rest.size(); ++i)
        if (rest[i] == '"') ++quoted;
      if (quoted != 2 * aps) sc.fail("AP: expected one quoted name per proposition");
      have_ap = true;
    } else if (key == "name" || key == "acc-name" || key == "properties" || key == "tool" ||
               key == "owner" || key == "alias") {
      // informative headers
    } else {
      sc.fail("unknown header item '" + key + "'");
    }
  }
  if (sc.line != "--BODY--") sc.fail("missing --BODY--");
  if (!have_states || !have_acceptance || !have_start)
    sc.fail("missing mandatory header (States/Start/Acceptance)");

  std::set<size_t> declared;
  size_t current = SIZE_MAX;
  bool saw_end = false;
  while (sc.next()) {
    if (sc.line == "--END--") {
      saw_end = true;
      break;
    }
    if (sc.line.rfind("State:", 0) == 0) {
      auto toks = split_ws(sc.line.substr(6));
      if (toks.empty() || !parse_uint(toks[0], current)) sc.fail("State: expects an index");
      if (current >= states) sc.fail("state index out of range");
      if (!declared.insert(current).second) sc.fail("state declared twice");
      // Optional "name" then optional {acc sets}.
      auto brace = sc.line.find('{');
      if (brace != std::string::npos) {
        auto endbrace = sc.line.find('}', brace);
        if (endbrace == std::string::npos) sc.fail("unterminated acceptance set list");
        for (const std::string& t : split_ws(sc.line.substr(brace + 1, endbrace - brace - 1))) {
          size_t setnum;
          if (!parse_uint(t, setnum) || setnum >= acc_sets)
            sc.fail("state acceptance set out of range");
        }
      }
      continue;
    }
    if (sc.line[0] == '[') {
      if (current == SIZE_MAX) sc.fail("edge before any State:");
      auto close = sc.line.find(']');
      if (close == std::string::npos) sc.fail("unterminated edge label");
      std::string label = sc.line.substr(1, close - 1);
      for (const std::string& t : split_ws(label)) {
        if (t == "&" || t == "|" || t == "t" || t == "f") continue;
        std::string core = t;
        while (!core.empty() && (core.front() == '!' || core.front() == '(')) core.erase(0, 1);
        while (!core.empty() && core.back() == ')') core.pop_back();
        size_t apnum;
        if (!parse_uint(core, apnum) || (have_ap && apnum >= aps))
          sc.fail("edge label references bad AP: " + t);
      }
      size_t dst;
      if (!parse_uint(split_ws(sc.line.substr(close + 1)).at(0), dst))
        sc.fail("edge target expects a state index");
      if (dst >= states) sc.fail("edge target out of range");
      continue;
    }
    sc.fail("unexpected body line");
  }
  if (!saw_end) sc.fail("missing --END--");
  if (declared.size() != states) sc.fail("not every state was declared in the body");
}

}  // namespace wmdelay
