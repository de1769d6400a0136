#include "hespeed/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "hespeed/canonical.hpp"
#include "hespeed/families.hpp"
#include "hespeed/theorems.hpp"

namespace hespeed {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact integers; values beyond 2^53 become decimal strings.
Json big_json(const BigInt& v) {
  static const BigInt kSafe = BigInt(1) << 53;
  if (v <= kSafe && v >= -kSafe) return Json(v.convert_to<long long>());
  return Json(v.str());
}

int parse_int(const std::string& text, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError(std::string(what) + ": expected an integer, got '" + text + "'");
  }
  return value;
}

ClassTag parse_class(const std::string& text) {
  auto tag = parse_class_tag(text);
  if (!tag) throw UsageError("unknown class '" + text + "'");
  return *tag;
}

std::vector<Structure> read_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::vector<Structure> list;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    list.push_back(decode(line));
  }
  return list;
}

Json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return Json{{"n", w->n}, {"observed", big_json(w->observed)}, {"required", big_json(w->required)}};
}

void emit_report(const JumpReport& r, std::ostream& out) {
  for (const auto& v : r.verdicts) {
    Json j;
    j["theorem"] = r.theorem;
    j["verdict"] = v.name;
    j["property"] = r.property;
    j["range"] = {r.lo, r.hi};
    j["pass"] = v.pass;
    j["witness"] = witness_json(v.witness);
    j["speeds"] = r.speeds;
    if (!v.note.empty()) j["note"] = v.note;
    j["surrogate"] = r.surrogate;
    out << j.dump() << '\n';
  }
}

struct Globals {
  std::string cache;
  int jobs = 1;
  int limit_order = 0;

  EnumOptions options() const {
    if (jobs < 1) throw UsageError("--jobs must be at least 1");
    EnumOptions o;
    o.jobs = jobs;
    o.limit_order = limit_order;
    if (!cache.empty()) o.cache_dir = cache;
    return o;
  }
};

void cmd_speed(const Globals& g, const std::string& cls, const std::string& spec, int n_max,
               std::ostream& out) {
  const auto property = parse_property_spec(parse_class(cls), spec);
  Enumerator e(property, g.options());
  if (n_max > e.order_limit()) e.level(n_max);  // limit error before any output
  for (int n = 1; n <= n_max; ++n) {
    const auto p = speed_sequence(e, n, n).front();
    Json j;
    j["n"] = n;
    j["unlabelled"] = p.unlabelled;
    j["labelled"] = big_json(p.labelled);
    out << j.dump() << '\n' << std::flush;
  }
}

void cmd_enumerate(const Globals& g, const std::string& cls, int n, const std::string& spec,
                   std::ostream& out) {
  const auto property = parse_property_spec(parse_class(cls), spec);
  Enumerator e(property, g.options());
  for (const auto& m : e.level(n)) {
    Json j;
    j["code"] = m.code.text();
    j["automorphisms"] = m.automorphisms;
    out << j.dump() << '\n';
  }
}

Structure build_family(const std::string& id, const std::vector<std::string>& params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) {
      throw UsageError(id + " takes " + std::to_string(k) + " parameter(s)");
    }
  };
  auto arg = [&](std::size_t i) { return parse_int(params[i], id.c_str()); };
  if (id.size() == 2 && id[0] == 'G' && id[1] >= '1' && id[1] <= '4') {
    need(1);
    return g_family(id[1] - '0', arg(0));
  }
  if (id == "T") {
    need(1);
    return transitive_tournament(arg(0));
  }
  if (id == "TwoChains") {
    need(2);
    return two_chains(arg(0), arg(1));
  }
  if (id == "Matching") {
    need(2);
    return matching_poset(arg(0), arg(1));
  }
  if (id == "Layered") {
    need(2);
    return layered_poset(arg(0), arg(1));
  }
  if (id == "Cochain") {
    std::vector<int> parts;
    for (std::size_t i = 0; i < params.size(); ++i) parts.push_back(arg(i));
    return cochain_poset(parts);
  }
  throw Error(Errc::UnknownFamily, "no builder '" + id + "'");
}

void cmd_canon(const std::string& text, std::ostream& out) {
  const auto c = canonicalize(decode(text));
  out << c.code.text() << '\n' << c.automorphisms << '\n';
}

void cmd_patterns(const Globals& g, const std::string& cls, const std::string& spec, int n,
                  std::ostream& out) {
  const auto property = parse_property_spec(parse_class(cls), spec);
  for (const auto& z : nontransitive_patterns(property, n, g.options())) out << Json(z).dump() << '\n';
}

void cmd_check(const Globals& g, const std::string& theorem, const std::vector<std::string>& rest,
               std::ostream& out) {
  const auto options = g.options();
  if (theorem == "obs1") {
    if (rest.size() != 2) throw UsageError("check obs1 <lo> <hi>");
    const int lo = parse_int(rest[0], "lo"), hi = parse_int(rest[1], "hi");
    for (int n = lo; n <= hi; ++n) {
      const int r = ramsey_transitive(n, options);
      Json j;
      j["theorem"] = "obs1";
      j["property"] = "all tournament";
      j["range"] = {lo, hi};
      j["n"] = n;
      j["least_order"] = r;
      j["bound"] = 1 << n;
      j["pass"] = r <= (1 << n);
      j["witness"] = nullptr;
      out << j.dump() << '\n';
    }
    return;
  }
  if (rest.size() != 3) throw UsageError("check " + theorem + " <spec> <lo> <hi>");
  const int lo = parse_int(rest[1], "lo"), hi = parse_int(rest[2], "hi");
  if (theorem == "thm1") {
    emit_report(check_poset_jump(parse_property_spec(ClassTag::Poset, rest[0]), lo, hi, options),
                out);
  } else if (theorem == "thm2") {
    const auto property = parse_property_spec(ClassTag::Poset, rest[0]);
    const Regime r = classify_labelled(property, lo, hi, options);
    Json j;
    j["theorem"] = "thm2";
    j["verdict"] = "regime";
    j["property"] = property.describe();
    j["range"] = {lo, hi};
    j["pass"] = r.tag != RegimeTag::Violation && r.bounds_hold;
    j["witness"] = nullptr;
    j["regime"] = to_string(r.tag);
    if (r.tag == RegimeTag::Polynomial) {
      Json coeffs = Json::array();
      for (const auto& a : r.coefficients) coeffs.push_back(big_json(a));
      j["coefficients"] = coeffs;
      j["fit_from"] = r.fit_from;
    }
    Json values = Json::array();
    for (const auto& p : r.labelled) values.push_back(big_json(p.value));
    j["labelled"] = values;
    if (!r.note.empty()) j["note"] = r.note;
    out << j.dump() << '\n';
  } else if (theorem == "thm3") {
    const auto property = parse_property_spec(ClassTag::Tournament, rest[0]);
    emit_report(check_tournament_jump(property, lo, hi, options), out);
    if (property.mode == PropertySpec::Mode::Named && property.family.id == FamilyId::P1) {
      emit_report(uniqueness_minimal_tournament(lo, hi, options), out);
    }
  } else if (theorem == "direct") {
    emit_report(
        check_directed_jump(parse_property_spec(ClassTag::Digraph, rest[0]), lo, hi, options),
        out);
  } else {
    throw UsageError("unknown theorem '" + theorem + "' (thm1, thm2, thm3, direct, obs1)");
  }
}

}  // namespace

PropertySpec parse_property_spec(ClassTag tag, std::string_view text) {
  if (text == "all") return PropertySpec::all(tag);
  if (text.starts_with("forbid:"))
    return PropertySpec::forbidden(tag, read_structure_file(std::string(text.substr(7))));
  if (text.starts_with("closure:"))
    return PropertySpec::down_closure(tag, read_structure_file(std::string(text.substr(8))));
  return PropertySpec::named(Family::parse(text), tag);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Speeds of hereditary properties of small relational structures", "hespeed"};
  app.require_subcommand(1);
  Globals g;
  if (const char* env = std::getenv("HESPEED_CACHE")) g.cache = env;
  app.add_option("--cache", g.cache, "level cache directory (default $HESPEED_CACHE)");
  app.add_option("--jobs", g.jobs, "worker threads for level extension");
  app.add_option("--limit-order", g.limit_order, "raise the enumeration order limit (<= 16)");

  std::string cls, spec = "all", text, theorem, id;
  int n = 0;
  std::vector<std::string> rest;

  auto* speed = app.add_subcommand("speed", "unlabelled and labelled speeds for n = 1..n_max");
  speed->add_option("class", cls)->required();
  speed->add_option("spec", spec)->required();
  speed->add_option("n_max", n)->required();

  auto* enumerate = app.add_subcommand("enumerate", "canonical members of order n");
  enumerate->add_option("class", cls)->required();
  enumerate->add_option("n", n)->required();
  enumerate->add_option("spec", spec);

  auto* family = app.add_subcommand("family", "family builders and membership");
  family->require_subcommand(1);
  auto* build = family->add_subcommand("build", "G1..G4 k | T n | TwoChains a b | Matching p s | "
                                                "Layered x y | Cochain parts...");
  build->add_option("id", id)->required();
  build->add_option("params", rest);
  auto* member = family->add_subcommand("member", "catalogue membership of a structure");
  member->add_option("id", id)->required();
  member->add_option("text", text)->required();

  auto* canon = app.add_subcommand("canon", "canonical text and automorphism count");
  canon->add_option("text", text)->required();

  auto* patterns = app.add_subcommand("patterns", "non-transitive patterns of length n");
  patterns->add_option("class", cls)->required();
  patterns->add_option("spec", spec)->required();
  patterns->add_option("n", n)->required();

  auto* check = app.add_subcommand("check", "thm1|thm2|thm3|direct <spec> <lo> <hi>, obs1 <lo> <hi>");
  check->add_option("theorem", theorem)->required();
  check->add_option("args", rest)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (speed->parsed()) {
      cmd_speed(g, cls, spec, n, out);
    } else if (enumerate->parsed()) {
      cmd_enumerate(g, cls, n, spec, out);
    } else if (build->parsed()) {
      out << encode(build_family(id, rest)) << '\n';
    } else if (member->parsed()) {
      const Family f = Family::parse(id);
      Json j;
      j["family"] = f.name();
      j["structure"] = text;
      j["member"] = member_of(f, decode(text));
      out << j.dump() << '\n';
    } else if (canon->parsed()) {
      cmd_canon(text, out);
    } else if (patterns->parsed()) {
      cmd_patterns(g, cls, spec, n, out);
    } else if (check->parsed()) {
      cmd_check(g, theorem, rest, out);
    }
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace hespeed
