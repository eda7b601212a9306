// asw: command-line front end for the pairing kernel.
//
// Exit codes: 0 success, 1 mathematical mismatch, 2 input error.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "asw/acceptance.hpp"
#include "asw/asw_reduce.hpp"
#include "asw/format.hpp"
#include "asw/milnor.hpp"
#include "asw/parse.hpp"
#include "asw/ramification.hpp"
#include "asw/symbol.hpp"

namespace {

using nlohmann::json;
using namespace asw;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;
constexpr int kMaxRetries = 3;

struct JobConfig {
  std::int64_t p = 2;
  int d = 1;
  std::string modulus;  // "c0,c1,...,1"; empty selects the shipped modulus
  int m = 1;
  std::string window;   // "r" or "smin,smax,tmin,tmax"
  bool json = false;

  FieldParams field() const {
    if (modulus.empty()) return FieldParams::standard(p, d);
    return FieldParams::make(p, parse_list(modulus, "--modulus"));
  }

  PrecisionWindow precision_window() const {
    std::string text = window;
    if (text.empty())
      if (const char* env = std::getenv("WITT_PARSHIN_WINDOW")) text = env;
    if (text.empty()) return {};
    const auto v = parse_list(text, "window");
    PrecisionWindow w;
    if (v.size() == 1)
      w = PrecisionWindow::square(static_cast<int>(v[0]));
    else if (v.size() == 4)
      w = {static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]), static_cast<int>(v[3])};
    else
      throw InvalidArgument("window must be R or smin,smax,tmin,tmax");
    if (w.s_min > w.s_max || w.t_min > w.t_max) throw InvalidArgument("window is empty: " + w.str());
    return w;
  }

  static std::vector<std::int64_t> parse_list(const std::string& text, const std::string& what) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoll(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw InvalidArgument(what + ": '" + item + "' is not an integer");
      }
    }
    if (out.empty()) throw InvalidArgument(what + " is empty");
    return out;
  }
};

json coeffs_json(const auto& c, int d) {
  json a = json::array();
  for (int i = 0; i < d; ++i) a.push_back(c[static_cast<std::size_t>(i)]);
  return a;
}

json to_json(const ZqRing& zq, const CanonicalASW& x) {
  json terms = json::array();
  for (const auto& [key, c] : x.terms)
    terms.push_back({{"i", key.first}, {"j", key.second}, {"coef", coeffs_json(c.c, zq.degree())}});
  return {{"c", x.c}, {"terms", terms}, {"text", to_string(zq, x)}};
}

json to_json(const FFRing& k, const CanonicalK2& y) {
  json gens = json::array();
  for (const auto& g : y.gens)
    gens.push_back({{"kind", g.kind == GenKind::S ? "S" : "T"},
                    {"i", g.i},
                    {"j", g.j},
                    {"a", coeffs_json(g.a.c, k.degree())},
                    {"n", g.n}});
  return {{"e", y.e}, {"gens", gens}, {"text", to_string(k, y)}};
}

/// Runs `body` on the configured window, doubling it on WindowTooSmall and recording each retry.
template <class Body>
auto with_widening(PrecisionWindow window, json& trace, Body&& body) {
  for (int attempt = 0;; ++attempt, window = window.widened()) {
    try {
      return body(window);
    } catch (const WindowTooSmall& e) {
      trace.push_back({{"window", window.str()}, {"error", e.what()}});
      std::cerr << "window " << window.str() << " too small (" << e.what() << ")";
      if (attempt == kMaxRetries) {
        std::cerr << "; giving up\n";
        throw;
      }
      std::cerr << "; retrying with " << window.widened().str() << "\n";
    }
  }
}

void emit(const JobConfig& cfg, const json& j, const std::string& text) {
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

struct XInput {
  std::optional<WittVec<KSeries>> witt;
  std::optional<CanonicalASW> canonical;
};

XInput parse_x(const FFRing& k, const ZqRing& zq, int m, const std::string& text) {
  if (parse_expression(text)->kind == Node::Kind::Bracket) return {parse_witt(k, m, text), std::nullopt};
  return {std::nullopt, parse_canonical(zq, text)};
}

int cmd_pair(const JobConfig& cfg, const std::string& xs, const std::string& ys, const std::string& method) {
  const FieldParams fp = cfg.field();
  json trace = json::array();
  const auto values = with_widening(cfg.precision_window(), trace, [&](const PrecisionWindow& w) {
    const Pairing P(fp, cfg.m, w);
    const XInput x = parse_x(P.reducer().field(), P.reducer().zq(), cfg.m, xs);
    const CanonicalK2 y = parse_symbol(P.group(), ys, w);
    const CanonicalASW red = x.canonical ? *x.canonical : P.reducer().reduce(*x.witt, false).canonical;
    std::vector<std::pair<std::string, std::int64_t>> out;
    if (method == "theorem1" || method == "all") out.emplace_back("theorem1", P.theorem1(red, y).v);
    if (method == "parshin" || method == "all")
      out.emplace_back("parshin", P.parshin(x.witt ? *x.witt : P.reducer().embed(red), y).v);
    if (method == "closed" || method == "all") out.emplace_back("closed", P.closed_form(red, y).v);
    return out;
  });
  const std::int64_t pm = int_pow(fp.p, cfg.m);
  bool agree = true;
  for (const auto& [name, v] : values) agree = agree && v == values.front().second;
  json j = {{"p", fp.p}, {"d", fp.d}, {"m", cfg.m}, {"modulus", pm}, {"agree", agree}, {"retries", trace}};
  std::ostringstream text;
  for (const auto& [name, v] : values) j["values"][name] = v;
  if (agree) {
    j["value"] = values.front().second;
    text << values.front().second << " (mod " << pm << ")\n";
    if (values.size() > 1) text << "methods agree\n";
  } else {
    text << "methods disagree:";
    for (const auto& [name, v] : values) text << " " << name << "=" << v;
    text << " (mod " << pm << ")\n";
  }
  emit(cfg, j, text.str());
  return agree ? kOk : kMismatch;
}

int cmd_reduce(const JobConfig& cfg, const std::string& xs) {
  const FieldParams fp = cfg.field();
  json trace = json::array();
  int rc = kOk;
  std::ostringstream text;
  json j;
  with_widening(cfg.precision_window(), trace, [&](const PrecisionWindow& w) {
    const AswReducer R(fp, cfg.m, w);
    const auto x = parse_witt(R.field(), cfg.m, xs);
    const auto res = R.reduce(x);
    const bool ok = R.verify(x, res);
    rc = ok ? kOk : kMismatch;
    j = {{"canonical", to_json(R.zq(), res.canonical)},
         {"outside", to_json(R.zq(), res.outside)},
         {"window", w.str()},
         {"working_cap", res.working.str()},
         {"verified", ok}};
    text << "canonical: " << to_string(R.zq(), res.canonical) << "\n";
    if (!res.outside.is_zero()) text << "outside window: " << to_string(R.zq(), res.outside) << "\n";
    for (int h = 0; h < res.witness.length(); ++h)
      text << "witness[" << h << "]: " << to_string(R.field(), res.witness.coords[h], w) << "\n";
    text << "verified on " << w.str() << ": " << (ok ? "yes" : "NO") << "\n";
    return 0;
  });
  j["retries"] = trace;
  emit(cfg, j, text.str());
  return rc;
}

int cmd_normalize(const JobConfig& cfg, const std::string& ys) {
  const FieldParams fp = cfg.field();
  json trace = json::array();
  const K2Group grp(FFRing(fp), cfg.m);
  const CanonicalK2 y =
      with_widening(cfg.precision_window(), trace, [&](const PrecisionWindow& w) { return parse_symbol(grp, ys, w); });
  json j = to_json(grp.field(), y);
  j["retries"] = trace;
  emit(cfg, j, to_string(grp.field(), y) + "\n");
  return kOk;
}

std::pair<int, int> parse_pair(const std::string& text, const std::string& what) {
  const auto v = JobConfig::parse_list(text, what);
  if (v.size() != 2) throw InvalidArgument(what + " must be two comma-separated integers");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

int cmd_ram(const JobConfig& cfg, const std::string& rs, const std::string& index, const std::string& ys, int box_size) {
  const auto [r1, r2] = parse_pair(rs, "--r");
  const RamVector r{r1, r2};
  json j = {{"r", {r1, r2}}};
  std::ostringstream text;
  if (!index.empty()) {
    const auto [m1, m2] = parse_pair(index, "--index");
    const auto l = ell(cfg.p, r, m1, m2);
    j["ell"] = l ? json(*l) : json(nullptr);
    text << "ell = " << (l ? std::to_string(*l) : std::string("infinite")) << "\n";
    emit(cfg, j, text.str());
    return kOk;
  }
  const IndexBox box{box_size, box_size};
  json profile = json::array();
  text << "profile (m=" << cfg.m << "):";
  for (const auto& e : ram_profile(cfg.p, r, cfg.m, box)) {
    profile.push_back({{"m1", e.m1}, {"m2", e.m2}, {"exponent", e.exponent}});
    text << " (" << e.m1 << "," << e.m2 << "):" << e.exponent;
  }
  text << "\n";
  j["profile"] = profile;
  int rc = kOk;
  if (!ys.empty()) {
    const FieldParams fp = cfg.field();
    const K2Group grp(FFRing(fp), cfg.m);
    const ZqRing zq(fp, cfg.m);
    const CanonicalK2 y = parse_symbol(grp, ys, cfg.precision_window());
    const bool member = u_membership(cfg.p, cfg.m, y, r);
    const auto phi = phi_map(zq, y, box);
    const bool in_profile = phi_in_profile(zq, cfg.m, phi, r);
    json comps = json::array();
    text << "phi:";
    for (const auto& e : phi) {
      if (zq.is_zero(e.value)) continue;
      comps.push_back({{"m1", e.m1}, {"m2", e.m2}, {"value", coeffs_json(e.value.c, zq.degree())}});
      text << " (" << e.m1 << "," << e.m2 << "):" << to_string(zq, e.value);
    }
    text << "\nin U^r: " << (member ? "yes" : "no") << "\nphi in profile: " << (in_profile ? "yes" : "no") << "\n";
    if (member != in_profile) {
      text << "duality mismatch\n";
      rc = kMismatch;
    }
    j["symbol"] = to_json(grp.field(), y);
    j["phi"] = comps;
    j["u_membership"] = member;
    j["phi_in_profile"] = in_profile;
  }
  emit(cfg, j, text.str());
  return rc;
}

int cmd_selftest(const JobConfig& cfg, double scale, std::uint64_t seed) {
  acceptance::Options o;
  o.scale = scale;
  o.seed = seed;
  json lines = json::array();
  const auto reports = acceptance::run_all(o, [&](const acceptance::Report& r) {
    if (!cfg.json) std::cout << r.line() << std::endl;
    lines.push_back({{"id", r.id},
                     {"title", r.title},
                     {"passed", r.passed},
                     {"cases", r.cases},
                     {"seconds", r.seconds},
                     {"failure", r.failure}});
  });
  if (cfg.json) std::cout << lines.dump(2) << "\n";
  for (const auto& r : reports)
    if (!r.passed) return kMismatch;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Artin-Schreier-Witt symbols on k((S))((T))"};
  app.require_subcommand(1);
  JobConfig cfg;
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic")->check(CLI::PositiveNumber);
    sub->add_option("--d", cfg.d, "degree of k over F_p")->check(CLI::PositiveNumber);
    sub->add_option("--modulus", cfg.modulus, "defining polynomial c0,...,cd, low degree first (overrides --d)");
    sub->add_option("--m", cfg.m, "Witt vector length")->check(CLI::PositiveNumber);
    sub->add_option("--window", cfg.window, "precision window R or smin,smax,tmin,tmax");
    sub->add_flag("--json", cfg.json, "structured output");
  };

  std::string xs, ys, method = "all", rs, index;
  int box = 8;
  double scale = 1.0;
  std::uint64_t seed = acceptance::Options{}.seed;

  auto* pair = app.add_subcommand("pair", "evaluate [x, y)");
  add_field(pair);
  pair->add_option("--x", xs, "Witt vector [x0, ...] or canonical class")->required();
  pair->add_option("--y", ys, "symbol product {f, g}^n * ...")->required();
  pair->add_option("--method", method, "theorem1 | parshin | closed | all")
      ->check(CLI::IsMember({"theorem1", "parshin", "closed", "all"}));

  auto* reduce = app.add_subcommand("reduce", "canonical representative of x mod wp");
  add_field(reduce);
  reduce->add_option("--x", xs, "Witt vector [x0, ...]")->required();

  auto* normalize = app.add_subcommand("normalize", "canonical form of a symbol");
  add_field(normalize);
  normalize->add_option("--y", ys, "symbol product")->required();

  auto* ram = app.add_subcommand("ram", "ramification data for a vector r");
  add_field(ram);
  ram->add_option("--r", rs, "r1,r2")->required();
  ram->add_option("--index", index, "m1,m2: print ell only");
  ram->add_option("--y", ys, "symbol to test against U^r");
  ram->add_option("--box", box, "index box size")->check(CLI::NonNegativeNumber);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  add_field(selftest);
  selftest->add_option("--scale", scale, "fraction of the full case counts")->check(CLI::PositiveNumber);
  selftest->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (pair->parsed()) return cmd_pair(cfg, xs, ys, method);
    if (reduce->parsed()) return cmd_reduce(cfg, xs);
    if (normalize->parsed()) return cmd_normalize(cfg, ys);
    if (ram->parsed()) return cmd_ram(cfg, rs, index, ys, box);
    if (selftest->parsed()) return cmd_selftest(cfg, scale, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
