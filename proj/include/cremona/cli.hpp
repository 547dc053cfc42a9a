#pragma once

// Command-line front end. Reports are JSON lines on `out`, diagnostics go to
// `err`. Exit codes: 0 every check passed, 1 some check failed, 2 usage or
// input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cremona/constructions.hpp"
#include "cremona/freeness.hpp"
#include "cremona/pan.hpp"
#include "cremona/ratmap.hpp"
#include "cremona/words.hpp"

namespace cremona::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

/// Input problems detected after argument parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

class Reporter {
 public:
  Reporter(std::ostream& out, bool quiet) : out_(out), quiet_(quiet) {}

  void emit(const Json& j, bool pass) {
    failed_ = failed_ || !pass;
    if (!quiet_ || !pass) out_ << j.dump() << '\n';
  }
  bool failed() const { return failed_; }

 private:
  std::ostream& out_;
  bool quiet_;
  bool failed_ = false;
};

struct CommonFlags {
  std::uint64_t seed = 0;
  bool quiet = false;
  bool json = true;
  bool timing = false;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Fn>
decltype(auto) with_field(const FieldDescriptor& d, Fn&& fn) {
  switch (d.kind) {
    case FieldKind::PrimeField: return fn(PrimeField(d));
    case FieldKind::Cyclotomic: return fn(CyclotomicField(d));
    case FieldKind::Rationals: break;
  }
  return fn(RationalField{});
}

template <class K>
RatMap<K> read_map(const std::string& text, const typename K::Field& f, bool chart) {
  return chart ? parse_chart_map<K>(text, f) : parse_map<K>(text, f);
}

inline std::vector<std::string> point_strings(const std::vector<std::vector<std::uint32_t>>& pts) {
  std::vector<std::string> out;
  for (const auto& p : pts) out.push_back(format_point(p));
  return out;
}

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void add_timing(Json& j, const CommonFlags& c, double ms) {
  if (c.timing) j["millis"] = ms;
}

/// `id` names the identity map; anything else is a map in the same text form.
template <class K>
std::optional<RatMap<K>> read_expected(const std::string& text, const typename K::Field& f, std::size_t n, bool chart) {
  if (text.empty()) return std::nullopt;
  if (text == "id") return RatMap<K>::identity(f, n);
  auto m = read_map<K>(text, f, chart);
  if (m.n() != n) throw UsageError("expected map lives in P^" + std::to_string(m.n()) + ", result in P^" + std::to_string(n));
  return m;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Subcommand bodies. Each returns the exit code for its checks.

struct VerifyArgs {
  std::vector<std::size_t> ns{2, 3};
  std::vector<std::string> checks;
  bool all = false;
  std::size_t samples = 20;
  std::vector<std::uint32_t> primes{3, 5};
};

inline void run_verify(const VerifyArgs& a, const CommonFlags& c, Reporter& rep) {
  if (a.all && !a.checks.empty()) throw UsageError("--all and --check are mutually exclusive");
  for (const auto& name : a.checks) {
    const auto& names = identity_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) throw UsageError("unknown identity '" + name + "'");
  }
  VerifyOptions opt;
  opt.seed = c.seed;
  opt.samples = a.samples;
  opt.primes = a.primes;
  for (auto n : a.ns) cremona::detail::check_n(n);
  for (const auto& r : verify_suite(a.ns, opt, a.checks)) {
    Json j;
    j["check"] = r.check;
    j["n"] = r.n;
    if (!r.params.empty()) {
      Json p = Json::object();
      for (const auto& [k, v] : r.params) p[k] = v;
      j["params"] = p;
    }
    j["pass"] = r.pass;
    if (!r.detail.empty()) {
      Json d = Json::object();
      for (const auto& [k, v] : r.detail) d[k] = v;
      j["detail"] = d;
    }
    if (!r.witness.empty()) j["witness"] = r.witness;
    detail::add_timing(j, c, r.millis);
    rep.emit(j, r.pass);
  }
}

struct MapArgs {
  std::string field = "Q";
  std::vector<std::string> maps;
  bool chart = false;
  std::string expect;
};

inline void run_compose(const MapArgs& a, const CommonFlags& c, Reporter& rep) {
  if (a.maps.empty()) throw UsageError("compose needs at least one --map");
  const auto fd = FieldDescriptor::parse(a.field);
  detail::with_field(fd, [&](const auto& f) {
    using K = typename std::decay_t<decltype(f)>::Element;
    detail::Stopwatch sw;
    std::vector<RatMap<K>> maps;
    for (const auto& t : a.maps) maps.push_back(detail::read_map<K>(t, f, a.chart));
    for (const auto& m : maps)
      if (m.n() != maps.front().n()) throw UsageError("maps live in different dimensions");
    RatMap<K> result = maps.back();
    std::uint64_t raw = maps.back().degree();
    for (std::size_t i = maps.size() - 1; i-- > 0;) {
      result = compose(maps[i], result);
      raw *= maps[i].degree();
    }
    auto expected = detail::read_expected<K>(a.expect, f, result.n(), a.chart);
    const bool pass = !expected || *expected == result;
    Json j;
    j["op"] = "compose";
    j["field"] = fd.to_string();
    j["n"] = result.n();
    j["inputs"] = maps.size();
    j["map"] = format_map(result);
    j["degree"] = result.degree();
    j["raw_degree"] = raw;
    j["identity"] = result.is_identity();
    if (expected) j["expected"] = format_map(*expected);
    j["pass"] = pass;
    detail::add_timing(j, c, sw.millis());
    rep.emit(j, pass);
  });
}

inline void run_degree(const MapArgs& a, const CommonFlags& c, Reporter& rep) {
  if (a.maps.size() != 1) throw UsageError("degree needs exactly one --map");
  const auto fd = FieldDescriptor::parse(a.field);
  detail::with_field(fd, [&](const auto& f) {
    using K = typename std::decay_t<decltype(f)>::Element;
    detail::Stopwatch sw;
    auto m = detail::read_map<K>(a.maps.front(), f, a.chart);
    Json j;
    j["op"] = "degree";
    j["field"] = fd.to_string();
    j["n"] = m.n();
    j["map"] = format_map(m);
    j["degree"] = m.degree();
    j["pass"] = true;
    detail::add_timing(j, c, sw.millis());
    rep.emit(j, true);
  });
}

struct WordArgs {
  std::string field = "Q";
  std::string word;
  std::size_t n = 2;
  std::string builtin;
  std::vector<std::string> gens;
  std::string alphabet_file;
  std::string expect;
  bool chart = false;
};

inline void run_word(const WordArgs& a, const CommonFlags& c, Reporter& rep) {
  const auto fd = FieldDescriptor::parse(a.field);
  detail::with_field(fd, [&](const auto& f) {
    using K = typename std::decay_t<decltype(f)>::Element;
    detail::Stopwatch sw;
    Alphabet<K> alphabet;
    if (!a.builtin.empty()) alphabet = build(a.builtin, a.n, f).alphabet;
    if (!a.alphabet_file.empty()) {
      auto file = parse_alphabet<K>(detail::read_file(a.alphabet_file), f);
      for (const auto& name : file.names()) {
        const auto& g = file.at(name);
        alphabet.add(name, g.map, g.inverse);
      }
    }
    for (const auto& spec : a.gens) {
      auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--gen expects name=[map], got '" + spec + "'");
      std::string name = spec.substr(0, eq);
      alphabet.add(name, detail::read_map<K>(spec.substr(eq + 1), f, a.chart));
    }
    if (!alphabet.contains("s")) alphabet.add("s", sigma(f, a.n));
    auto w = GroupWord::parse(a.word);
    auto reduced = reduce(w, alphabet);
    auto m = evaluate(w, alphabet, f, a.n);
    auto expected = detail::read_expected<K>(a.expect, f, a.n, a.chart);
    const bool pass = !expected || *expected == m;
    Json j;
    j["op"] = "word";
    j["field"] = fd.to_string();
    j["n"] = a.n;
    j["word"] = w.to_string();
    j["reduced"] = reduced.to_string();
    j["map"] = format_map(m);
    j["degree"] = m.degree();
    j["identity"] = m.is_identity();
    if (expected) j["expected"] = format_map(*expected);
    j["pass"] = pass;
    detail::add_timing(j, c, sw.millis());
    rep.emit(j, pass);
  });
}

struct PanArgs {
  std::size_t n = 2;
  std::string P, Q, R;
  std::string expect;
  std::size_t trials = 20;
  std::vector<std::uint32_t> primes{7, 11, 13};
};

inline PanSpec<Rational> read_pan_spec(const PanArgs& a) {
  RationalField F;
  if (a.P.empty() || a.Q.empty() || a.R.empty()) throw UsageError("--P, --Q and --R are required");
  PanSpec<Rational> s{a.n, parse_poly<Rational>(a.P, a.n + 1, F), parse_poly<Rational>(a.Q, a.n + 1, F), {}};
  for (const auto& part : cremona::detail::split_map_text(a.R))
    s.R.push_back(parse_poly<Rational>(part.text, a.n, F, part.offset));
  return s;
}

inline Json pan_header(const char* op, const PanSpec<Rational>& s) {
  Json j;
  j["op"] = op;
  j["n"] = s.n;
  j["d"] = s.d();
  j["l"] = s.l();
  return j;
}

/// Emits the violations and returns false when the data is invalid.
inline bool pan_valid(Json& j, const PanSpec<Rational>& s, Reporter& rep) {
  auto v = s.violations();
  j["valid"] = v.empty();
  if (v.empty()) return true;
  j["violations"] = v;
  j["pass"] = false;
  rep.emit(j, false);
  return false;
}

inline void run_pan_build(const PanArgs& a, const CommonFlags& c, Reporter& rep) {
  detail::Stopwatch sw;
  auto s = read_pan_spec(a);
  Json j = pan_header("pan build", s);
  if (!pan_valid(j, s, rep)) return;
  auto psi = build_psi(s);
  j["psi"] = format_map(psi);
  j["psi_tilde"] = format_map(build_psi_tilde(s));
  j["degree"] = psi.degree();
  j["pass"] = true;
  detail::add_timing(j, c, sw.millis());
  rep.emit(j, true);
}

inline Json witness_json(const FiberWitness& w) {
  Json j;
  j["prime"] = w.prime;
  j["size"] = w.points.size();
  j["points"] = detail::point_strings(w.points);
  j["image"] = format_point(w.image);
  return j;
}

inline void run_pan_check(const PanArgs& a, const CommonFlags& c, Reporter& rep) {
  detail::Stopwatch sw;
  auto s = read_pan_spec(a);
  Json j = pan_header("pan check", s);
  if (!pan_valid(j, s, rep)) return;
  if (!a.expect.empty() && a.expect != "birational" && a.expect != "not_birational")
    throw UsageError("--expect takes 'birational' or 'not_birational'");
  CriterionOptions opt;
  opt.seed = c.seed;
  opt.trials = a.trials;
  opt.primes = a.primes;
  auto r = birationality_criterion(s, opt);
  const bool pass = r.verdict != Verdict::undetermined && (a.expect.empty() || a.expect == to_string(r.verdict));
  j["verdict"] = to_string(r.verdict);
  j["tag"] = r.tag;
  j["trail"] = r.trail;
  if (r.witness) j["witness"] = witness_json(*r.witness);
  if (!a.expect.empty()) j["expected"] = a.expect;
  j["pass"] = pass;
  detail::add_timing(j, c, sw.millis());
  rep.emit(j, pass);
}

struct BlowdownArgs {
  std::size_t n = 3;
  std::string q;
  std::optional<std::uint32_t> d;
  std::vector<std::uint32_t> check_primes{7};
  std::size_t max_attempts = 64;
};

inline void run_pan_blowdown(const BlowdownArgs& a, const CommonFlags& c, Reporter& rep) {
  detail::Stopwatch sw;
  RationalField F;
  if (a.q.empty()) throw UsageError("--q is required");
  auto q = parse_poly<Rational>(a.q, a.n + 1, F);
  if (q.is_zero()) throw UsageError("q' is zero");
  const std::uint32_t d = a.d.value_or(*q.degree() + 1);
  auto b = blowdown_build(q, d, c.seed, a.max_attempts);
  Json j;
  j["op"] = "pan blowdown";
  j["n"] = a.n;
  j["q"] = format_poly(q);
  j["l"] = *q.degree();
  j["d"] = d;
  j["seed"] = c.seed;
  j["attempts"] = b.spec.attempts;
  j["h"] = format_poly(b.spec.h);
  j["P"] = format_poly(b.spec.P);
  j["Q"] = format_poly(b.pan.Q);
  j["psi"] = format_map(b.psi);
  j["degree"] = b.psi.degree();
  bool pass = b.psi.degree() == d;
  std::vector<std::uint32_t> apex(a.n + 1, 0);
  apex.back() = 1;
  Json checks = Json::array();
  for (auto p : a.check_primes) {
    auto r = contraction_check(b.psi, q, p);
    Json cj;
    cj["prime"] = p;
    cj["pass"] = r.pass;
    if (r.image) cj["image"] = format_point(*r.image);
    cj["points"] = r.points_on_hypersurface;
    cj["base_points"] = r.base_points;
    cj["distinct_images"] = r.distinct_images;
    checks.push_back(cj);
    pass = pass && r.pass && r.image && *r.image == apex;
  }
  j["contraction"] = checks;
  j["pass"] = pass;
  detail::add_timing(j, c, sw.millis());
  rep.emit(j, pass);
}

struct FiberArgs {
  std::string field = "Q";
  std::string map;
  bool chart = false;
  std::vector<std::uint32_t> primes{7, 11, 13};
  std::size_t trials = 20;
  std::optional<std::size_t> expect;
};

inline void run_fiber(const FiberArgs& a, const CommonFlags& c, Reporter& rep) {
  if (a.map.empty()) throw UsageError("--map is required");
  const auto fd = FieldDescriptor::parse(a.field);
  if (fd.kind == FieldKind::Cyclotomic) throw UsageError("the fiber oracle needs maps over Q or GF(p)");
  detail::with_field(fd, [&](const auto& f) {
    using K = typename std::decay_t<decltype(f)>::Element;
    if constexpr (!std::is_same_v<K, Cyclotomic>) {
      detail::Stopwatch sw;
      auto m = detail::read_map<K>(a.map, f, a.chart);
      auto s = generic_fiber_size(m, a.primes, a.trials, c.seed);
      Json j;
      j["op"] = "fiber";
      j["field"] = fd.to_string();
      j["map"] = format_map(m);
      j["trials"] = a.trials;
      Json per = Json::array();
      for (const auto& r : s.per_prime) {
        Json pj;
        pj["prime"] = r.prime;
        pj["estimate"] = r.estimate;
        pj["etale_trials"] = r.trials;
        pj["attempts"] = r.attempts;
        Json h = Json::object();
        for (const auto& [size, count] : r.histogram) h[std::to_string(size)] = count;
        pj["histogram"] = h;
        per.push_back(pj);
      }
      j["per_prime"] = per;
      Json skipped = Json::array();
      for (const auto& k : s.skipped) skipped.push_back({{"prime", k.prime}, {"reason", k.reason}});
      j["skipped"] = skipped;
      j["modal"] = s.modal;
      const bool pass = !a.expect || *a.expect == s.modal;
      if (a.expect) j["expected"] = *a.expect;
      j["pass"] = pass;
      detail::add_timing(j, c, sw.millis());
      rep.emit(j, pass);
    }
  });
}

struct FreenessArgs {
  std::size_t max_len = 6;
  std::size_t gens = 0;
  bool subgroup = false;
  bool summary = false;
  std::size_t max_words = 5'000'000;
};

inline void run_freeness(const FreenessArgs& a, const CommonFlags& c, Reporter& rep) {
  FreenessOptions opt;
  opt.max_words = a.max_words;
  opt.keep_certificates = !a.summary;
  auto r = a.subgroup ? certify_free_subgroup(a.max_len, a.gens, opt) : certify_free_product(a.max_len, a.gens, opt);
  const auto names = parameter_names(a.gens);
  for (const auto& cert : r.certificates) {
    Json j;
    j["op"] = "freeness word";
    j["word"] = cert.word.to_string();
    if (a.subgroup) j["expanded"] = cert.expanded.to_string();
    j["entry_degrees"] = cert.entry_degrees;
    j["status"] = cert.non_scalar ? "non_scalar" : "scalar";
    j["locus_generators"] = cert.locus.size();
    if (!cert.non_scalar) {
      std::vector<std::string> loc;
      for (const auto& p : cert.locus) loc.push_back(format_poly(p, names));
      j["locus"] = loc;
    }
    rep.emit(j, cert.non_scalar);
  }
  Json j;
  j["op"] = "freeness";
  j["max_len"] = r.max_len;
  j["gens"] = r.k;
  j["subgroup"] = r.subgroup;
  j["words"] = r.words;
  j["failures"] = r.failures;
  j["complete"] = r.complete;
  j["pass"] = r.pass;
  detail::add_timing(j, c, r.millis);
  rep.emit(j, r.pass);
}

// ---------------------------------------------------------------------------

inline void add_common(CLI::App* app, CommonFlags& c) {
  app->add_option("--seed", c.seed, "seed for every randomized choice")->capture_default_str();
  app->add_flag("--quiet", c.quiet, "print only failing records");
  app->add_flag("--json", c.json, "JSON lines output (the default)");
  app->add_flag("--timing", c.timing, "add wall-clock milliseconds to records");
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with birational maps of projective space", "cremona"};
  app.require_subcommand(1);
  app.allow_extras(false);
  CommonFlags common;

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check the catalog identities exactly");
  verify->add_option("--n", va.ns, "dimensions")->delimiter(',')->capture_default_str();
  verify->add_option("--check", va.checks, "identity names (default: all)")->delimiter(',');
  verify->add_flag("--all", va.all, "every registry identity");
  verify->add_option("--samples", va.samples, "random diagonals per randomized identity")->capture_default_str();
  verify->add_option("--prime", va.primes, "primes for the Birkhoff triple")->delimiter(',')->capture_default_str();
  add_common(verify, common);

  MapArgs ca;
  auto* comp = app.add_subcommand("compose", "compose maps: the first --map is applied last");
  comp->add_option("--map", ca.maps, "map [c0; ...; cn], repeatable")->required()->allow_extra_args(false);
  comp->add_option("--field", ca.field)->capture_default_str();
  comp->add_flag("--chart", ca.chart, "maps are given in the affine chart");
  comp->add_option("--expect", ca.expect, "expected result ('id' or a map)");
  add_common(comp, common);

  MapArgs da;
  auto* deg = app.add_subcommand("degree", "degree of a normalized map");
  deg->add_option("--map", da.maps)->required()->allow_extra_args(false);
  deg->add_option("--field", da.field)->capture_default_str();
  deg->add_flag("--chart", da.chart);
  add_common(deg, common);

  WordArgs wa;
  auto* word = app.add_subcommand("word", "evaluate a group word");
  word->add_option("--word", wa.word, "letters like 'a1 s a2^-1'")->required();
  word->add_option("--n", wa.n)->capture_default_str();
  word->add_option("--field", wa.field)->capture_default_str();
  word->add_option("--builtin", wa.builtin, "take the alphabet of a catalog construction");
  word->add_option("--gen", wa.gens, "name=[map], repeatable")->allow_extra_args(false);
  word->add_option("--alphabet", wa.alphabet_file, "file of 'name = [map]' lines");
  word->add_option("--expect", wa.expect, "expected result ('id' or a map)");
  word->add_flag("--chart", wa.chart);
  add_common(word, common);

  auto* pan = app.add_subcommand("pan", "Psi maps, blow-downs and oracles");
  pan->require_subcommand(1);
  PanArgs pa_build, pa_check;
  auto add_pan = [&](CLI::App* sub, PanArgs& pa) {
    sub->add_option("--n", pa.n)->capture_default_str();
    sub->add_option("--P", pa.P, "form of degree d in z0..zn")->required();
    sub->add_option("--Q", pa.Q, "form of degree l in z0..zn")->required();
    sub->add_option("--R", pa.R, "[R0; ...; R(n-1)] in z0..z(n-1)")->required();
    add_common(sub, common);
  };
  auto* pbuild = pan->add_subcommand("build", "assemble Psi and its reduction");
  add_pan(pbuild, pa_build);
  auto* pcheck = pan->add_subcommand("check", "decide birationality");
  add_pan(pcheck, pa_check);
  pcheck->add_option("--trials", pa_check.trials)->capture_default_str();
  pcheck->add_option("--prime", pa_check.primes)->delimiter(',')->capture_default_str();
  pcheck->add_option("--expect", pa_check.expect, "birational or not_birational");

  BlowdownArgs ba;
  auto* pblow = pan->add_subcommand("blowdown", "contract a hypersurface through (0:...:0:1)");
  pblow->add_option("--n", ba.n)->capture_default_str();
  pblow->add_option("--q", ba.q, "the hypersurface q'")->required();
  pblow->add_option("--d", ba.d, "target degree (default deg q' + 1)");
  pblow->add_option("--check-prime", ba.check_primes)->delimiter(',')->capture_default_str();
  pblow->add_option("--max-attempts", ba.max_attempts)->capture_default_str();
  add_common(pblow, common);

  FiberArgs fa;
  auto add_fiber = [&](CLI::App* sub) {
    sub->add_option("--map", fa.map)->required();
    sub->add_option("--field", fa.field)->capture_default_str();
    sub->add_flag("--chart", fa.chart);
    sub->add_option("--prime", fa.primes)->delimiter(',')->capture_default_str();
    sub->add_option("--trials", fa.trials)->capture_default_str();
    sub->add_option("--expect", fa.expect, "expected generic fiber size");
    add_common(sub, common);
  };
  auto* pfiber = pan->add_subcommand("fiber", "finite-field generic fiber size");
  add_fiber(pfiber);
  auto* fiber = app.add_subcommand("fiber", "same as 'pan fiber'");
  add_fiber(fiber);

  FreenessArgs ra;
  auto* free = app.add_subcommand("freeness", "non-scalar certificates for reduced words");
  free->add_option("--max-len", ra.max_len)->capture_default_str();
  free->add_option("--gens", ra.gens, "largest generator index k (generators g0..gk)")->capture_default_str();
  free->add_flag("--subgroup", ra.subgroup, "words in h_i = g_i s");
  free->add_flag("--summary", ra.summary, "print only the summary record");
  free->add_option("--max-words", ra.max_words)->capture_default_str();
  add_common(free, common);

  // Values like "[z1; z0]" must reach the map parser verbatim, so vector
  // options take exactly one value per flag instead of CLI11's array syntax.
  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "cremona: " << e.what() << " (try --help)\n";
    return kUsage;
  }

  Reporter rep(out, common.quiet);
  try {
    if (*verify) run_verify(va, common, rep);
    else if (*comp) run_compose(ca, common, rep);
    else if (*deg) run_degree(da, common, rep);
    else if (*word) run_word(wa, common, rep);
    else if (*pbuild) run_pan_build(pa_build, common, rep);
    else if (*pcheck) run_pan_check(pa_check, common, rep);
    else if (*pblow) run_pan_blowdown(ba, common, rep);
    else if (*pfiber || *fiber) run_fiber(fa, common, rep);
    else if (*free) run_freeness(ra, common, rep);
  } catch (const ParseError& e) {
    err << "cremona: parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "cremona: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    err << "cremona: " << e.what() << '\n';
    return kUsage;
  }
  return rep.failed() ? kCheckFailed : kPass;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace cremona::cli
