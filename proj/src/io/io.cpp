#include "opacity/io.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <unordered_map>

#include "opacity/error.hpp"
#include "opacity/transform.hpp"

namespace opacity {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim_ws(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void syntax(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::syntax_error, "line " + std::to_string(line) + ": " + msg, line);
}

[[noreturn]] void semantic(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::semantic_error, "line " + std::to_string(line) + ": " + msg, line);
}

struct Field {
  std::vector<std::string> values;
  std::size_t line = 0;
  bool present = false;
};

struct RawTransition {
  std::string source, event, target;
  std::size_t line;
};

struct Block {
  std::string name;
  std::size_t line = 0;
  std::size_t end_line = 0;
  Field states, observable, unobservable, initial, marked;
  std::vector<RawTransition> transitions;
};

struct Document {
  Field notion, k;
  std::string secret_text, nonsecret_text;
  Field secret, nonsecret;
  std::vector<Block> blocks;
  std::size_t last_line = 0;
};

void set_field(Field& f, std::vector<std::string> values, std::size_t line, const std::string& key) {
  if (f.present) syntax(line, "duplicate '" + key + ":' line (first on line " + std::to_string(f.line) + ")");
  f = {std::move(values), line, true};
}

Document read(std::string_view text) {
  Document doc;
  Block* open = nullptr;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim_ws(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    const auto first_space = line.find_first_of(" \t\r\f\v");
    if (colon != std::string_view::npos && (first_space == std::string_view::npos || colon < first_space)) {
      const std::string key(line.substr(0, colon));
      const std::string_view rest = trim_ws(line.substr(colon + 1));
      auto values = split_ws(rest);
      if (open) {
        if (key == "states") set_field(open->states, std::move(values), line_no, key);
        else if (key == "observable") set_field(open->observable, std::move(values), line_no, key);
        else if (key == "unobservable") set_field(open->unobservable, std::move(values), line_no, key);
        else if (key == "initial") set_field(open->initial, std::move(values), line_no, key);
        else if (key == "marked") set_field(open->marked, std::move(values), line_no, key);
        else syntax(line_no, "unknown key '" + key + "' inside an automaton block");
      } else {
        if (key == "notion") set_field(doc.notion, std::move(values), line_no, key);
        else if (key == "k") set_field(doc.k, std::move(values), line_no, key);
        else if (key == "secret") {
          set_field(doc.secret, std::move(values), line_no, key);
          doc.secret_text = std::string(rest);
        } else if (key == "nonsecret") {
          set_field(doc.nonsecret, std::move(values), line_no, key);
          doc.nonsecret_text = std::string(rest);
        } else {
          syntax(line_no, "unknown key '" + key + "'");
        }
      }
      continue;
    }

    auto tokens = split_ws(line);
    if (tokens[0] == "automaton") {
      if (open) syntax(line_no, "'automaton' inside another automaton block");
      if (tokens.size() != 2) syntax(line_no, "expected 'automaton NAME'");
      for (const auto& b : doc.blocks)
        if (b.name == tokens[1]) syntax(line_no, "duplicate automaton name '" + tokens[1] + "'");
      doc.blocks.push_back({});
      open = &doc.blocks.back();
      open->name = tokens[1];
      open->line = line_no;
    } else if (tokens[0] == "end" && tokens.size() == 1) {
      if (!open) syntax(line_no, "'end' without an automaton block");
      open->end_line = line_no;
      open = nullptr;
    } else if (open && tokens.size() == 3) {
      open->transitions.push_back({tokens[0], tokens[1], tokens[2], line_no});
    } else if (open) {
      syntax(line_no, "expected a transition 'SOURCE EVENT TARGET'");
    } else {
      syntax(line_no, "unexpected line outside an automaton block");
    }
  }
  doc.last_line = line_no;
  if (open) syntax(open->line, "automaton block '" + open->name + "' is not closed by 'end'");
  return doc;
}

Nfa build(const Block& b) {
  Nfa g;
  std::unordered_map<std::string, StateId> state_ids;
  for (const auto& s : b.states.values) {
    if (!state_ids.try_emplace(s, static_cast<StateId>(g.size())).second)
      syntax(b.states.line, "duplicate state id '" + s + "'");
    g.add_state(s);
  }
  for (const auto* f : {&b.observable, &b.unobservable})
    for (const auto& e : f->values) {
      if (g.alphabet.find(e)) syntax(f->line, "duplicate event '" + e + "'");
      g.alphabet.add(e, f == &b.observable);
    }
  auto state = [&](const std::string& name, std::size_t line) {
    auto it = state_ids.find(name);
    if (it == state_ids.end()) semantic(line, "undeclared state '" + name + "' in automaton '" + b.name + "'");
    return it->second;
  };
  g.initial = StateSet(g.size());
  for (const auto& s : b.initial.values) g.initial.insert(state(s, b.initial.line));
  g.marked = StateSet(g.size());
  for (const auto& s : b.marked.values) g.marked.insert(state(s, b.marked.line));
  for (const auto& t : b.transitions) {
    auto e = g.alphabet.find(t.event);
    if (!e) semantic(t.line, "undeclared event '" + t.event + "'");
    g.add_transition(state(t.source, t.line), *e, state(t.target, t.line));
  }
  g.canonicalize();
  return g;
}

StateSet state_list(const Nfa& g, const Field& f, const char* key, std::size_t fallback_line) {
  if (!f.present) semantic(fallback_line, std::string("missing '") + key + ":' line");
  StateSet out(g.size());
  for (const auto& s : f.values) {
    auto q = g.find_state(s);
    if (!q) semantic(f.line, "undeclared state '" + s + "' in '" + key + ":'");
    out.insert(*q);
  }
  return out;
}

std::vector<StatePair> pair_list(const Nfa& g, const Field& f, const std::string& text, const char* key,
                                 std::size_t fallback_line) {
  if (!f.present) semantic(fallback_line, std::string("missing '") + key + ":' line");
  std::vector<StatePair> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos) semi = text.size();
    const std::string_view item = trim_ws(std::string_view(text).substr(pos, semi - pos));
    pos = semi + 1;
    if (item.empty()) {
      if (semi == text.size() && out.empty() && trim_ws(text).empty()) break;
      syntax(f.line, "empty pair in '" + std::string(key) + ":'");
    }
    const auto comma = item.find(',');
    if (comma == std::string_view::npos || item.find(',', comma + 1) != std::string_view::npos)
      syntax(f.line, "expected 'INITIAL,STATE' pair, got '" + std::string(item) + "'");
    const std::string a(trim_ws(item.substr(0, comma))), b(trim_ws(item.substr(comma + 1)));
    auto q0 = g.find_state(a), qf = g.find_state(b);
    if (!q0) semantic(f.line, "undeclared state '" + a + "' in '" + key + ":'");
    if (!qf) semantic(f.line, "undeclared state '" + b + "' in '" + key + ":'");
    if (!g.initial.contains(*q0)) semantic(f.line, "state '" + a + "' in '" + key + ":' is not initial");
    out.emplace_back(*q0, *qf);
  }
  return out;
}

void require_subset_of_initial(const Nfa& g, const StateSet& s, const Field& f, const char* key) {
  if (!s.is_subset_of(g.initial)) semantic(f.line, std::string("'") + key + ":' lists a state that is not initial");
}

void check_trim(const Nfa& g, const Block& b) {
  if (trim_keep(g).kept.size() != g.size())
    semantic(b.line, "automaton '" + b.name + "' is not trim (every state must lie on an initial-to-marked path)");
}

// Names the grammar can carry back unchanged.
void check_name(const std::string& name, bool state, bool pairs) {
  bool ok = !name.empty() && name.find_first_of(" \t\r\n\f\v#:") == std::string::npos;
  if (pairs && name.find_first_of(",;") != std::string::npos) ok = false;
  if (state && name == "automaton") ok = false;  // would open a block
  if (!ok) throw Error(ErrorCode::semantic_error, "name '" + name + "' cannot be written to an instance file");
}

void write_automaton(std::ostringstream& os, const Nfa& g, const std::string& name, bool pairs) {
  auto list = [&](const char* key, auto&& names) {
    os << key << ':';
    for (const auto& n : names) os << ' ' << n;
    os << '\n';
  };
  for (const auto& s : g.states) check_name(s, true, pairs);
  for (const auto& e : g.alphabet.events) check_name(e.name, false, false);
  os << "automaton " << name << '\n';
  list("states", g.states);
  std::vector<std::string> obs, unobs;
  for (const auto& e : g.alphabet.events) (e.observable ? obs : unobs).push_back(e.name);
  list("observable", obs);
  list("unobservable", unobs);
  std::vector<std::string> init, marked;
  g.initial.for_each([&](StateId q) { init.push_back(g.states[q]); });
  g.marked.for_each([&](StateId q) { marked.push_back(g.states[q]); });
  list("initial", init);
  list("marked", marked);
  for (const auto& t : g.transitions)
    os << g.states[t.source] << ' ' << g.alphabet.name(t.event) << ' ' << g.states[t.target] << '\n';
  os << "end\n";
}

void write_set(std::ostringstream& os, const char* key, const Nfa& g, const StateSet& s) {
  os << key << ':';
  s.for_each([&](StateId q) { os << ' ' << g.states[q]; });
  os << '\n';
}

void write_pairs(std::ostringstream& os, const char* key, const Nfa& g, const std::vector<StatePair>& pairs) {
  os << key << ':';
  for (std::size_t i = 0; i < pairs.size(); ++i)
    os << (i ? "; " : " ") << g.states[pairs[i].first] << ',' << g.states[pairs[i].second];
  os << '\n';
}

std::string quoted(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

void dot_body(std::ostringstream& os, const Nfa& g, const std::string& prefix, const StateSet* secret,
              const StateSet* nonsecret) {
  for (StateId q = 0; q < g.size(); ++q) {
    os << "  " << quoted(prefix + g.states[q]) << " [label=" << quoted(g.states[q]);
    if (g.marked.contains(q)) os << ", shape=doublecircle";
    const bool s = secret && secret->contains(q), ns = nonsecret && nonsecret->contains(q);
    if (s || ns) os << ", style=filled, fillcolor=" << (s && ns ? "violet" : s ? "lightcoral" : "lightblue");
    os << "];\n";
  }
  std::size_t i = 0;
  g.initial.for_each([&](StateId q) {
    const std::string entry = "__init_" + prefix + std::to_string(i++);
    os << "  " << quoted(entry) << " [shape=point];\n";
    os << "  " << quoted(entry) << " -> " << quoted(prefix + g.states[q]) << ";\n";
  });
  for (const auto& t : g.transitions) {
    os << "  " << quoted(prefix + g.states[t.source]) << " -> " << quoted(prefix + g.states[t.target])
       << " [label=" << quoted(g.alphabet.name(t.event));
    if (!g.alphabet.is_observable(t.event)) os << ", style=dashed";
    os << "];\n";
  }
}

std::string dot_of(const std::vector<std::pair<const Nfa*, std::string>>& parts, const StateSet* secret,
                   const StateSet* nonsecret, std::string_view name) {
  std::ostringstream os;
  os << "digraph " << quoted(name) << " {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (const auto& [g, prefix] : parts) dot_body(os, *g, prefix, secret, nonsecret);
  os << "}\n";
  return os.str();
}

}  // namespace

OpacityInstance parse_instance(std::string_view text) {
  Document doc = read(text);
  if (!doc.notion.present) semantic(doc.last_line, "missing 'notion:' line");
  if (doc.notion.values.size() != 1) syntax(doc.notion.line, "expected one notion");
  const auto notion = parse_notion(doc.notion.values[0]);
  if (!notion) syntax(doc.notion.line, "unknown notion '" + doc.notion.values[0] + "'");

  std::uint64_t k = 0;
  if (*notion == Notion::kso) {
    if (!doc.k.present) semantic(doc.notion.line, "notion kso needs a 'k:' line");
    if (doc.k.values.size() != 1) syntax(doc.k.line, "expected one integer after 'k:'");
    const auto& v = doc.k.values[0];
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), k);
    if (ec != std::errc() || ptr != v.data() + v.size()) syntax(doc.k.line, "invalid K '" + v + "'");
  } else if (doc.k.present) {
    semantic(doc.k.line, "'k:' is only allowed for notion kso");
  }

  const std::size_t want = *notion == Notion::lbo ? 2 : 1;
  if (doc.blocks.size() != want)
    semantic(doc.blocks.empty() ? doc.notion.line : doc.blocks.back().line,
             "notion " + std::string(to_string(*notion)) + " needs " + std::to_string(want) +
                 " automaton block(s), found " + std::to_string(doc.blocks.size()));

  OpacityInstance inst;
  if (*notion == Notion::lbo) {
    auto pick = [&](const Field& f, const char* key) -> const Block& {
      if (!f.present) semantic(doc.last_line, std::string("missing '") + key + ":' line");
      if (f.values.size() != 1) syntax(f.line, std::string("'") + key + ":' names one automaton");
      for (const auto& b : doc.blocks)
        if (b.name == f.values[0]) return b;
      semantic(f.line, "no automaton named '" + f.values[0] + "'");
    };
    const Block& bs = pick(doc.secret, "secret");
    const Block& bn = pick(doc.nonsecret, "nonsecret");
    if (&bs == &bn) semantic(doc.nonsecret.line, "secret and non-secret automata must differ");
    Nfa s = build(bs), ns = build(bn);
    if (!(s.alphabet == ns.alphabet)) semantic(bn.line, "secret and non-secret automata have different alphabets");
    check_trim(s, bs);
    check_trim(ns, bn);
    inst = LboInstance{std::move(s), std::move(ns)};
  } else {
    const Block& b = doc.blocks.front();
    Nfa g = build(b);
    switch (*notion) {
      case Notion::cso:
      case Notion::kso:
      case Notion::inso: {
        StateSet s = state_list(g, doc.secret, "secret", doc.last_line);
        StateSet ns = state_list(g, doc.nonsecret, "nonsecret", doc.last_line);
        if (*notion == Notion::cso) inst = CsoInstance{std::move(g), s, ns};
        else if (*notion == Notion::kso) inst = KsoInstance{std::move(g), s, ns, k};
        else inst = InsoInstance{std::move(g), s, ns};
        break;
      }
      case Notion::iso: {
        StateSet s = state_list(g, doc.secret, "secret", doc.last_line);
        StateSet ns = state_list(g, doc.nonsecret, "nonsecret", doc.last_line);
        require_subset_of_initial(g, s, doc.secret, "secret");
        require_subset_of_initial(g, ns, doc.nonsecret, "nonsecret");
        inst = IsoInstance{std::move(g), s, ns};
        break;
      }
      case Notion::ifo: {
        auto s = pair_list(g, doc.secret, doc.secret_text, "secret", doc.last_line);
        auto ns = pair_list(g, doc.nonsecret, doc.nonsecret_text, "nonsecret", doc.last_line);
        inst = IfoInstance{std::move(g), std::move(s), std::move(ns)};
        break;
      }
      case Notion::lbo: break;
    }
  }
  if (auto diags = validate_instance(inst); !diags.empty()) semantic(doc.notion.line, diags.front().message);
  return inst;
}

std::string serialize_instance(const OpacityInstance& inst) {
  std::ostringstream os;
  const Notion notion = notion_of(inst);
  os << "notion: " << to_string(notion) << '\n';
  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LboInstance>) {
          write_automaton(os, i.secret_aut, "A_S", false);
          write_automaton(os, i.nonsecret_aut, "A_NS", false);
          os << "secret: A_S\nnonsecret: A_NS\n";
        } else {
          if constexpr (std::is_same_v<T, KsoInstance>) os << "k: " << i.k << '\n';
          write_automaton(os, i.system, "G", std::is_same_v<T, IfoInstance>);
          if constexpr (std::is_same_v<T, IsoInstance>) {
            write_set(os, "secret", i.system, i.secret_initial);
            write_set(os, "nonsecret", i.system, i.nonsecret_initial);
          } else if constexpr (std::is_same_v<T, IfoInstance>) {
            write_pairs(os, "secret", i.system, i.secret_pairs);
            write_pairs(os, "nonsecret", i.system, i.nonsecret_pairs);
          } else {
            write_set(os, "secret", i.system, i.secret);
            write_set(os, "nonsecret", i.system, i.nonsecret);
          }
        }
      },
      inst);
  return os.str();
}

std::string to_dot(const Nfa& nfa, std::string_view name) { return dot_of({{&nfa, ""}}, nullptr, nullptr, name); }

std::string instance_to_dot(const OpacityInstance& inst) {
  return std::visit(
      [&](const auto& i) -> std::string {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LboInstance>) {
          return dot_of({{&i.secret_aut, "S/"}, {&i.nonsecret_aut, "NS/"}}, nullptr, nullptr, "lbo");
        } else if constexpr (std::is_same_v<T, IsoInstance>) {
          return dot_of({{&i.system, ""}}, &i.secret_initial, &i.nonsecret_initial, "iso");
        } else if constexpr (std::is_same_v<T, IfoInstance>) {
          return dot_of({{&i.system, ""}}, nullptr, nullptr, "ifo");
        } else {
          return dot_of({{&i.system, ""}}, &i.secret, &i.nonsecret, to_string(notion_of(inst)));
        }
      },
      inst);
}

std::string structure_to_dot(const OpacityInstance& inst) {
  auto lbo_structure = [](const LboInstance& l) {
    const Nfa obs = observer(l.nonsecret_aut);
    const Nfa c = product(project(l.secret_aut), complete_and_complement(obs, obs.marked));
    return to_dot(c, "product");
  };
  return std::visit(
      [&](const auto& i) -> std::string {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, LboInstance>) return lbo_structure(i);
        else if constexpr (std::is_same_v<T, IsoInstance>)
          return lbo_structure(std::get<LboInstance>(iso_to_lbo(i).instance));
        else if constexpr (std::is_same_v<T, IfoInstance>)
          return lbo_structure(std::get<LboInstance>(ifo_to_lbo(i).instance));
        else return to_dot(observer(i.system), "observer");
      },
      inst);
}

std::string serialize_provenance(const TransformOutput& out) {
  std::ostringstream os;
  const auto automata = automata_of(out.instance);
  os << "encoded: " << (out.encoded ? "yes" : "no") << '\n';
  for (std::size_t a = 0; a < automata.size() && a < out.state_provenance.size(); ++a) {
    os << "automaton " << a << '\n';
    for (std::size_t q = 0; q < automata[a]->size() && q < out.state_provenance[a].size(); ++q)
      os << "state " << automata[a]->states[q] << ' ' << describe(out.state_provenance[a][q]) << '\n';
  }
  const Alphabet& sigma = automata.front()->alphabet;
  for (std::size_t e = 0; e < sigma.size() && e < out.event_provenance.size(); ++e)
    os << "event " << sigma.name(static_cast<EventId>(e)) << ' ' << describe(out.event_provenance[e]) << '\n';
  return os.str();
}

}  // namespace opacity
