#include "opacity/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "opacity/error.hpp"
#include "opacity/fixtures.hpp"
#include "opacity/io.hpp"
#include "opacity/oracle.hpp"
#include "opacity/testkit.hpp"
#include "opacity/transform.hpp"
#include "opacity/verify.hpp"

namespace opacity::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::usage, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorCode::usage, "cannot write '" + path + "'");
}

OpacityInstance load(const std::string& in, const std::string& fixture) {
  if (!fixture.empty()) {
    if (!in.empty()) throw Error(ErrorCode::usage, "give either --in or --fixture, not both");
    auto inst = fixtures::by_name(fixture);
    if (!inst) throw Error(ErrorCode::usage, "unknown fixture '" + fixture + "'");
    return *inst;
  }
  if (in.empty()) throw Error(ErrorCode::usage, "--in FILE (or --fixture NAME) is required");
  return parse_instance(read_file(in));
}

std::string show(const Alphabet& a, const Observation& o) { return o.empty() ? "<empty>" : format_observation(a, o); }

void print_witness(std::ostream& out, const OpacityInstance& inst, const Witness& w) {
  const Alphabet& a = automata_of(inst).front()->alphabet;
  out << "witness: " << show(a, w.prefix) << '\n';
  if (w.suffix) out << "suffix: " << show(a, *w.suffix) << '\n';
  out << "note: " << w.note << '\n';
}

void print_metrics(std::ostream& out, const Metrics& m) {
  out << "n: " << m.n << "\nell: " << m.ell << "\nm: " << m.m << "\nconstructed_states: " << m.constructed_states
      << "\nconstructed_transitions: " << m.constructed_transitions << '\n';
}

// ------------------------------------------------------------ transforms

struct Arrow {
  Notion from, to;
  const char* name;
};

// The arrows of the transformation matrix that exist as single operations.
const std::vector<Arrow>& arrows() {
  static const std::vector<Arrow> all = {
      {Notion::cso, Notion::lbo, "cso_to_lbo"},   {Notion::lbo, Notion::cso, "lbo_to_cso"},
      {Notion::lbo, Notion::iso, "lbo_to_iso"},   {Notion::iso, Notion::lbo, "iso_to_lbo"},
      {Notion::iso, Notion::ifo, "iso_to_ifo"},   {Notion::cso, Notion::ifo, "cso_to_ifo"},
      {Notion::ifo, Notion::lbo, "ifo_to_lbo"},   {Notion::cso, Notion::inso, "cso_to_inso"},
      {Notion::inso, Notion::cso, "inso_to_cso"}, {Notion::cso, Notion::kso, "cso_to_kso"},
      {Notion::kso, Notion::cso, "kso_to_cso"},
  };
  return all;
}

std::vector<Arrow> route(Notion from, Notion to) {
  std::map<Notion, std::optional<Arrow>> via;
  std::deque<Notion> queue{from};
  via[from] = std::nullopt;
  while (!queue.empty()) {
    const Notion at = queue.front();
    queue.pop_front();
    if (at == to) break;
    for (const auto& a : arrows())
      if (a.from == at && !via.count(a.to)) {
        via[a.to] = a;
        queue.push_back(a.to);
      }
  }
  if (!via.count(to)) return {};
  std::vector<Arrow> path;
  for (Notion at = to; at != from; at = via[at]->from) path.push_back(*via[at]);
  std::reverse(path.begin(), path.end());
  return path;
}

struct TransformArgs {
  bool preserve = false;
  std::optional<std::uint64_t> k;
};

TransformOutput apply(const Arrow& a, const OpacityInstance& inst, const TransformArgs& args) {
  const TransformOptions opts{args.preserve};
  auto unary = [](const Nfa& g) { return g.alphabet.observable_count() == 1; };
  switch (a.from) {
    case Notion::cso: {
      const auto& c = std::get<CsoInstance>(inst);
      if (a.to == Notion::lbo) return cso_to_lbo(c);
      if (a.to == Notion::ifo) return cso_to_ifo(c);
      if (a.to == Notion::inso) return cso_to_inso(c);
      if (!args.k) throw Error(ErrorCode::usage, "transform to kso needs --k");
      return cso_to_kso(c, *args.k);
    }
    case Notion::lbo: {
      const auto& l = std::get<LboInstance>(inst);
      return a.to == Notion::iso ? lbo_to_iso(l, opts) : lbo_to_cso(l);
    }
    case Notion::iso: {
      const auto& i = std::get<IsoInstance>(inst);
      return a.to == Notion::lbo ? iso_to_lbo(i) : iso_to_ifo(i);
    }
    case Notion::ifo: return ifo_to_lbo(std::get<IfoInstance>(inst));
    case Notion::inso: {
      const auto& i = std::get<InsoInstance>(inst);
      if (args.preserve && unary(i.system)) return inso_to_cso_unary(i);
      return inso_to_cso(i, opts);
    }
    case Notion::kso: {
      const auto& i = std::get<KsoInstance>(inst);
      if (args.preserve && unary(i.system)) return kso_to_cso_unary(i);
      return kso_to_cso(i, opts);
    }
  }
  throw Error(ErrorCode::usage, "unsupported transformation");
}

Notion notion_arg(const std::string& s) {
  auto n = parse_notion(s);
  if (!n) throw Error(ErrorCode::usage, "unknown notion '" + s + "'");
  return *n;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  auto num = [&](const std::string& t) {
    std::size_t v = 0, used = 0;
    try {
      v = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw Error(ErrorCode::usage, "invalid range '" + s + "' (expected a..b)");
    return v;
  };
  if (dots == std::string::npos) {
    const auto v = num(s);
    return {v, v};
  }
  const auto lo = num(s.substr(0, dots)), hi = num(s.substr(dots + 2));
  if (lo > hi) throw Error(ErrorCode::usage, "empty range '" + s + "'");
  return {lo, hi};
}

void add_gen_options(CLI::App* cmd, GenParams& p) {
  cmd->add_option("--ell", p.ell, "observable events");
  cmd->add_option("--uo", p.uo, "unobservable events");
  cmd->add_option("--density", p.density, "probability that a (state, event) slot is filled");
  cmd->add_option("--secret-fraction", p.secret_fraction);
  cmd->add_option("--nonsecret-fraction", p.nonsecret_fraction);
  cmd->add_option("--initial-probability", p.initial_probability);
  cmd->add_flag("--deterministic", p.deterministic);
  cmd->add_option("--k", p.k, "K for kso instances");
  cmd->add_option("--seed", p.seed);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opacity verification and transformation workbench", "opacity"};
  app.require_subcommand(1);

  std::string in, fixture, out_path, algo = "fast", from, to, notion = "cso", range;
  std::uint64_t bound = 8;
  bool preserve = false, structure = false;
  std::optional<std::uint64_t> k;
  GenParams gen;

  auto* verify_cmd = app.add_subcommand("verify", "decide opacity of an instance");
  verify_cmd->add_option("--in", in, "instance file");
  verify_cmd->add_option("--fixture", fixture, "built-in fixture F1..F5");
  verify_cmd->add_option("--algo", algo, "fast | oracle | unary (iso only)")
      ->check(CLI::IsMember({"fast", "oracle", "unary"}));
  verify_cmd->add_option("--bound", bound, "oracle enumeration bound");

  auto* transform_cmd = app.add_subcommand("transform", "rewrite an instance into another notion");
  transform_cmd->add_option("--from", from)->required();
  transform_cmd->add_option("--to", to)->required();
  transform_cmd->add_option("--in", in, "instance file");
  transform_cmd->add_option("--fixture", fixture, "built-in fixture F1..F5");
  transform_cmd->add_option("--out", out_path, "output instance file (provenance goes to FILE.prov)")->required();
  transform_cmd->add_flag("--preserve-events", preserve, "keep the number of observable events");
  transform_cmd->add_option("--k", k, "K when the target is kso");

  auto* oracle_cmd = app.add_subcommand("oracle", "bounded brute-force decision");
  oracle_cmd->add_option("--in", in, "instance file");
  oracle_cmd->add_option("--fixture", fixture, "built-in fixture F1..F5");
  oracle_cmd->add_option("--bound", bound)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  gen_cmd->add_option("--notion", notion)->required();
  gen_cmd->add_option("--n", gen.n)->required();
  gen_cmd->add_option("--out", out_path, "output file (stdout if omitted)");
  add_gen_options(gen_cmd, gen);

  auto* bench_cmd = app.add_subcommand("bench", "structure sizes and timings as CSV");
  bench_cmd->add_option("--notion", notion)->required();
  bench_cmd->add_option("--n-range", range, "a..b")->required();
  add_gen_options(bench_cmd, gen);

  auto* dot_cmd = app.add_subcommand("export-dot", "DOT text of an instance");
  dot_cmd->add_option("--in", in, "instance file");
  dot_cmd->add_option("--fixture", fixture, "built-in fixture F1..F5");
  dot_cmd->add_flag("--structure", structure, "export the verification structure instead");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (verify_cmd->parsed()) {
      const auto inst = load(in, fixture);
      out << "notion: " << to_string(notion_of(inst)) << '\n';
      if (algo == "oracle") {
        const auto v = oracle_verify(inst, bound);
        out << "opaque: " << (v.opaque ? "true" : "false") << '\n';
        if (v.witness) print_witness(out, inst, *v.witness);
        out << "bound: " << v.bound << "\ncomplete: " << (v.complete ? "true" : "false") << '\n';
        return v.opaque ? 0 : 1;
      }
      VerifyResult r;
      if (algo == "unary") {
        const auto* iso = std::get_if<IsoInstance>(&inst);
        if (!iso) throw Error(ErrorCode::usage, "--algo unary applies to iso instances only");
        r = verify_iso_unary(*iso);
      } else {
        r = verify(inst);
      }
      out << "opaque: " << (r.verdict.opaque ? "true" : "false") << '\n';
      if (r.verdict.witness) print_witness(out, inst, *r.verdict.witness);
      print_metrics(out, r.metrics);
      return r.verdict.opaque ? 0 : 1;
    }

    if (transform_cmd->parsed()) {
      const Notion f = notion_arg(from), t = notion_arg(to);
      if (f == t) throw Error(ErrorCode::usage, "--from and --to name the same notion");
      OpacityInstance inst = load(in, fixture);
      if (notion_of(inst) != f)
        throw Error(ErrorCode::usage, "input is a " + std::string(to_string(notion_of(inst))) + " instance, not " + from);
      const auto path = route(f, t);
      if (path.empty()) throw Error(ErrorCode::usage, "no transformation from " + from + " to " + to);
      std::string prov;
      for (std::size_t i = 0; i < path.size(); ++i) {
        TransformOutput step = apply(path[i], inst, {preserve, k});
        prov += "step " + std::to_string(i + 1) + ": " + path[i].name + '\n' + serialize_provenance(step);
        inst = std::move(step.instance);
      }
      write_file(out_path, serialize_instance(inst));
      write_file(out_path + ".prov", prov);
      out << "wrote " << out_path << " (" << to_string(notion_of(inst)) << ") via";
      for (const auto& a : path) out << ' ' << a.name;
      out << '\n';
      return 0;
    }

    if (oracle_cmd->parsed()) {
      const auto inst = load(in, fixture);
      const auto v = oracle_verify(inst, bound);
      out << "notion: " << to_string(notion_of(inst)) << "\nopaque: " << (v.opaque ? "true" : "false") << '\n';
      if (v.witness) print_witness(out, inst, *v.witness);
      out << "bound: " << v.bound << "\ncomplete: " << (v.complete ? "true" : "false") << '\n';
      return v.opaque ? 0 : 1;
    }

    if (gen_cmd->parsed()) {
      const std::string text = serialize_instance(random_instance(notion_arg(notion), gen));
      if (out_path.empty()) out << text;
      else write_file(out_path, text);
      return 0;
    }

    if (bench_cmd->parsed()) {
      const Notion nt = notion_arg(notion);
      const auto [lo, hi] = parse_range(range);
      out << "n,ell,m,constructed_states,constructed_transitions,wall_time_ms\n";
      for (std::size_t n = lo; n <= hi; ++n) {
        GenParams p = gen;
        p.n = n;
        p.seed = gen.seed + n;
        const auto inst = random_instance(nt, p);
        const auto start = std::chrono::steady_clock::now();
        const auto r = verify(inst);
        const std::chrono::duration<double, std::milli> took = std::chrono::steady_clock::now() - start;
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", took.count());
        out << n << ',' << r.metrics.ell << ',' << r.metrics.m << ',' << r.metrics.constructed_states << ','
            << r.metrics.constructed_transitions << ',' << ms << '\n';
      }
      return 0;
    }

    if (dot_cmd->parsed()) {
      const auto inst = load(in, fixture);
      out << (structure ? structure_to_dot(inst) : instance_to_dot(inst));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace opacity::cli
