#include "opacity/instance.hpp"

#include "opacity/error.hpp"

namespace opacity {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::unknown_event: return "UnknownEvent";
    case ErrorCode::not_deterministic: return "NotDeterministic";
    case ErrorCode::alphabet_mismatch: return "AlphabetMismatch";
    case ErrorCode::invalid_instance: return "InvalidInstance";
    case ErrorCode::not_unary: return "NotUnary";
    case ErrorCode::too_few_events: return "TooFewEvents";
    case ErrorCode::name_clash: return "NameClash";
    case ErrorCode::unary: return "Unary";
    case ErrorCode::empty_initial: return "EmptyInitial";
    case ErrorCode::malformed_witness: return "MalformedWitness";
    case ErrorCode::invalid_params: return "InvalidParams";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::semantic_error: return "SemanticError";
    case ErrorCode::usage: return "Usage";
  }
  return "Error";
}

std::string_view to_string(Notion n) {
  switch (n) {
    case Notion::cso: return "cso";
    case Notion::iso: return "iso";
    case Notion::ifo: return "ifo";
    case Notion::lbo: return "lbo";
    case Notion::kso: return "kso";
    case Notion::inso: return "inso";
  }
  return "?";
}

std::optional<Notion> parse_notion(std::string_view s) {
  for (Notion n : {Notion::cso, Notion::iso, Notion::ifo, Notion::lbo, Notion::kso, Notion::inso})
    if (to_string(n) == s) return n;
  return std::nullopt;
}

LboInstance make_lbo(const Nfa& secret_aut, const Nfa& nonsecret_aut) {
  return {trim(secret_aut), trim(nonsecret_aut)};
}

Notion notion_of(const OpacityInstance& inst) {
  return static_cast<Notion>(inst.index());
}

std::vector<const Nfa*> automata_of(const OpacityInstance& inst) {
  if (const auto* lbo = std::get_if<LboInstance>(&inst)) return {&lbo->secret_aut, &lbo->nonsecret_aut};
  return {std::visit(
      [](const auto& i) -> const Nfa* {
        if constexpr (std::is_same_v<std::decay_t<decltype(i)>, LboInstance>) return &i.secret_aut;
        else return &i.system;
      },
      inst)};
}

namespace {

void check_within(std::vector<Diagnostic>& out, const StateSet& s, std::size_t n, const char* what) {
  if (auto top = s.max_member(); top && *top >= n)
    out.push_back({Diagnostic::Kind::instance,
                   std::string(what) + " contains undeclared state #" + std::to_string(*top)});
}

void check_state_based(std::vector<Diagnostic>& out, const Nfa& system, const StateSet& secret,
                       const StateSet& nonsecret) {
  out = validate(system);
  check_within(out, secret, system.size(), "secret set");
  check_within(out, nonsecret, system.size(), "non-secret set");
}

void check_pairs(std::vector<Diagnostic>& out, const Nfa& system, const std::vector<StatePair>& pairs,
                 const char* what) {
  for (const auto& [q0, qf] : pairs) {
    if (!system.initial.contains(q0) || q0 >= system.size())
      out.push_back({Diagnostic::Kind::instance,
                     std::string(what) + ": first component #" + std::to_string(q0) + " is not an initial state"});
    if (qf >= system.size())
      out.push_back({Diagnostic::Kind::instance,
                     std::string(what) + ": second component #" + std::to_string(qf) + " is not a state"});
  }
}

void check_nonblocking(std::vector<Diagnostic>& out, const Nfa& a, const char* what) {
  if (trim_keep(a).kept.size() != a.size())
    out.push_back({Diagnostic::Kind::instance, std::string(what) + " automaton is not trim (blocking states)"});
}

}  // namespace

std::vector<Diagnostic> validate_instance(const OpacityInstance& inst) {
  std::vector<Diagnostic> out;
  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, CsoInstance> || std::is_same_v<T, InsoInstance> ||
                      std::is_same_v<T, KsoInstance>) {
          check_state_based(out, i.system, i.secret, i.nonsecret);
        } else if constexpr (std::is_same_v<T, IsoInstance>) {
          check_state_based(out, i.system, i.secret_initial, i.nonsecret_initial);
          if (!i.secret_initial.is_subset_of(i.system.initial))
            out.push_back({Diagnostic::Kind::instance, "secret initial states are not all initial"});
          if (!i.nonsecret_initial.is_subset_of(i.system.initial))
            out.push_back({Diagnostic::Kind::instance, "non-secret initial states are not all initial"});
        } else if constexpr (std::is_same_v<T, IfoInstance>) {
          out = validate(i.system);
          check_pairs(out, i.system, i.secret_pairs, "secret pair");
          check_pairs(out, i.system, i.nonsecret_pairs, "non-secret pair");
        } else {
          out = validate(i.secret_aut);
          for (auto& d : validate(i.nonsecret_aut)) out.push_back(std::move(d));
          if (!(i.secret_aut.alphabet == i.nonsecret_aut.alphabet))
            out.push_back({Diagnostic::Kind::instance, "secret and non-secret automata have different alphabets"});
          if (out.empty()) {
            check_nonblocking(out, i.secret_aut, "secret");
            check_nonblocking(out, i.nonsecret_aut, "non-secret");
          }
        }
      },
      inst);
  return out;
}

void require_valid(const OpacityInstance& inst) {
  const auto diags = validate_instance(inst);
  if (!diags.empty()) throw Error(ErrorCode::invalid_instance, diags.front().message);
}

std::string describe(const StateOrigin& o) {
  auto ref = [&] {
    std::string s = "a" + std::to_string(o.automaton) + ":" + std::to_string(o.state);
    if (o.copy) s += "/copy" + std::to_string(o.copy);
    return s;
  };
  switch (o.kind) {
    case StateOriginKind::original: return "original(" + ref() + ")";
    case StateOriginKind::plus: return "plus(" + ref() + ")";
    case StateOriginKind::minus: return "minus(" + ref() + ")";
    case StateOriginKind::chain:
      return "chain(" + std::to_string(o.index) + (o.has_source ? ", " + ref() : "") + ")";
    case StateOriginKind::encoding: return "encoding(" + std::to_string(o.state) + ", " + o.label + ")";
    case StateOriginKind::fresh: return "fresh(" + o.label + ")";
  }
  return "?";
}

std::string describe(const EventOrigin& o) {
  switch (o.kind) {
    case EventOriginKind::original: return "original(" + std::to_string(o.event) + ")";
    case EventOriginKind::fresh_at: return "fresh_at";
    case EventOriginKind::fresh_u: return "fresh_u";
    case EventOriginKind::bit: return "bit(" + std::to_string(o.event) + ")";
  }
  return "?";
}

}  // namespace opacity
