#pragma once

// Batch front end. run() parses a command line, executes it and returns the
// exit code with the report text. Reports are `key: value` lines in a fixed
// order, so identical inputs give bytewise identical output.
//
// Exit codes: 0 success, 1 property refuted, 2 usage or spec error,
// 3 inconclusive (a cap was reached).
//
// Requires CLI11.hpp on the include path.

#include "skewps/core.hpp"
#include "skewps/oracle.hpp"
#include "skewps/sps.hpp"
#include "skewps/specfile.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifndef SKEWPS_FIXTURE_DIR
#define SKEWPS_FIXTURE_DIR "fixtures"
#endif

namespace skewps::cli {

enum Exit : int { kOk = 0, kRefuted = 1, kUsage = 2, kInconclusive = 3 };

struct Result {
  int exit_code = kOk;
  std::string out;
  std::string err;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spec::SpecError(0, 0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string bool_text(bool b) { return b ? "true" : "false"; }

/// Drops unit coefficients: "1*X + 2*Y" becomes "X + 2*Y".
inline std::string compact(const std::string& s) {
  std::string out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    auto next = s.find(" + ", pos);
    auto term = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (term.rfind("1*", 0) == 0) term = term.substr(2);
    out += (out.empty() ? "" : " + ") + term;
    if (next == std::string::npos) break;
    pos = next + 3;
  }
  return out;
}

template <Field F>
std::string ideal_text(const FinAlgebra<F>& A, const Ideal<F>& I) {
  if (I.is_zero()) return "(0)";
  std::string s = "(";
  bool first = true;
  for (const auto& v : I.basis()) {
    if (!first) s += ", ";
    s += compact(A.to_string(v));
    first = false;
  }
  return s + ")";
}

/// "a..b" with a, b integers or halves written "k.5"; returns doubled bounds.
inline std::pair<std::int64_t, std::int64_t> parse_window(const std::string& w) {
  auto dots = w.find("..");
  if (dots == std::string::npos) throw CLI::ValidationError("--window", "expected a..b");
  auto halves = [&](std::string s) -> std::int64_t {
    bool half = false;
    if (s.size() > 2 && s.compare(s.size() - 2, 2, ".5") == 0) {
      half = true;
      s.resize(s.size() - 2);
    }
    if (!spec::detail::is_integer(s)) throw CLI::ValidationError("--window", "bad bound '" + s + "'");
    return 2 * std::stoll(s) + (half ? 1 : 0);
  };
  return {halves(w.substr(0, dots)), halves(w.substr(dots + 2))};
}

struct Options {
  std::string command;
  std::string spec_path;
  std::vector<std::string> positional;
  std::string ideal;
  std::optional<unsigned> cap;
  std::string window;
  unsigned N = 1;
  std::int64_t p = 2, n = 3;
  std::size_t T = 12, D = 12;
  std::uint64_t seed = 1;
  std::size_t samples = 32;
  std::string fixtures;
  std::string demo;
};

template <Field F>
std::string finalg_header(const spec::FinalgModel<F>& m) {
  std::ostringstream os;
  os << "ring: finalg p=" << m.algebra.field().characteristic() << " dim=" << m.algebra.dim() << "\n";
  return os.str();
}

inline std::string series_header(const spec::SeriesModel& m) {
  std::ostringstream os;
  os << "ring: series p=" << m.base.p() << " k=" << m.base.k() << " T=" << m.base.T() << " D=" << m.D << "\n";
  return os.str();
}

// ---- verify

template <Field F>
Result verify(const spec::FinalgModel<F>& m) {
  Result r;
  std::ostringstream os;
  os << "command: verify\n" << finalg_header(m);
  auto rep = check_skew_derivation(m.skew);
  bool ok = rep.valid();
  os << "skew-axioms: " << (ok ? "ok" : "refuted") << "\n";
  for (const auto& v : rep.violations) os << "violation: " << v.axiom << ": " << v.witness << "\n";
  os << "commutes: " << bool_text(m.skew.commutes()) << "\n";
  if (m.filtration) {
    auto fr = check_axioms(*m.filtration);
    os << "filtration-axioms: " << (fr.valid() ? "ok" : "refuted") << "\n";
    for (const auto& v : fr.violations) os << "violation: " << v.axiom << ": " << v.witness << "\n";
    ok = ok && fr.valid();
    if (fr.valid()) {
      bool comp = is_compatible(*m.filtration, m.skew);
      os << "deg-sigma-minus-id: "
         << endo_degree(*m.filtration, matsub(m.algebra.field(), m.skew.sigma, Matrix<F>::identity(m.algebra.field(), m.algebra.dim()))).str()
         << "\n";
      os << "deg-delta: " << endo_degree(*m.filtration, m.skew.delta).str() << "\n";
      os << "compatible: " << bool_text(comp) << "\n";
      ok = ok && comp;
    }
  } else {
    os << "filtration: none\n";
  }
  os << "result: " << (ok ? "ok" : "refuted") << "\n";
  r.out = os.str();
  r.exit_code = ok ? kOk : kRefuted;
  return r;
}

inline Result verify(const spec::SeriesModel& m) {
  std::ostringstream os;
  os << "command: verify\n" << series_header(m);
  os << "sigma(t): " << m.base.to_string(m.base.sigma_t()) << "\n";
  os << "delta(t): " << m.base.to_string(m.base.delta_t()) << "\n";
  os << "deg-sigma-minus-id: " << m.base.sigma_shift_degree().str() << "\n";
  os << "deg-delta: " << m.base.delta_degree().str() << "\n";
  bool comp = m.base.is_compatible();
  os << "compatible: " << bool_text(comp) << "\n";
  os << "sigma-minus-id: " << bool_text(m.base.is_sigma_minus_id()) << "\n";
  os << "result: " << (comp ? "ok" : "refuted") << "\n";
  return {comp ? kOk : kRefuted, os.str(), ""};
}

// ---- SPS construction from a model

template <Field F>
SPSRing<AlgebraBase<F>> sps_of(const spec::FinalgModel<F>& m) {
  if (!m.filtration) throw spec::SpecError(0, 0, "this command needs a [filtration] section");
  return SPSRing<AlgebraBase<F>>(AlgebraBase<F>(m.skew, *m.filtration), m.D);
}

inline SPSRing<SeriesBase> sps_of(const spec::SeriesModel& m) { return SPSRing<SeriesBase>(m.base, m.D); }

template <class M, class S>
auto element_of(const M& m, const S& ring, const std::string& name) {
  auto c = m.element(name);
  if (!c) throw spec::SpecError(0, 0, "undefined element '" + name + "'");
  return ring.make(*c);
}

template <class M>
Result mul(const M& m, const Options& o) {
  if (o.positional.size() != 2) throw CLI::ValidationError("mul", "expects two element names");
  auto S = sps_of(m);
  auto f = element_of(m, S, o.positional[0]);
  auto g = element_of(m, S, o.positional[1]);
  auto h = S.mul(f, g);
  std::ostringstream os;
  os << "command: mul\n";
  os << "f: " << S.to_string(f) << "\n";
  os << "g: " << S.to_string(g) << "\n";
  os << "product: " << S.to_string(h) << "\n";
  os << "f_u(f): " << S.f_u_value(f).str() << "\n";
  os << "f_u(g): " << S.f_u_value(g).str() << "\n";
  os << "f_u(product): " << S.f_u_value(h).str() << "\n";
  return {kOk, os.str(), ""};
}

template <class M>
Result gr(const M& m, const Options& o) {
  auto [lo, hi] = parse_window(o.window);
  auto S = sps_of(m);
  auto rep = graded_iso_check(S, lo, hi, o.samples, o.seed);
  std::ostringstream os;
  os << "command: gr\n";
  os << "window: " << ExtInt::from_halves(lo).str() << ".." << ExtInt::from_halves(hi).str() << "\n";
  for (const auto& row : rep.rows)
    os << "degree " << row.value.str() << ": sps-dim=" << row.sps_dim << " expected=" << row.expected_dim << "\n";
  os << "dims: " << (rep.dims_ok ? "ok" : "refuted") << "\n";
  os << "symbol-products: " << (rep.mult_ok ? "ok" : "refuted") << "\n";
  if (!rep.witness.empty()) os << "witness: " << rep.witness << "\n";
  os << "result: " << (rep.ok() ? "ok" : "refuted") << "\n";
  return {rep.ok() ? kOk : kRefuted, os.str(), ""};
}

template <class M>
Result decompose(const M& m, const Options& o) {
  if (o.positional.size() != 1) throw CLI::ValidationError("decompose", "expects one element name");
  auto S = sps_of(m);
  auto f = element_of(m, S, o.positional[0]);
  auto comps = crossed_decompose(S, o.N, f);
  auto back = recompose(S, o.N, comps);
  auto [xN, desc] = substitute_xN(S, o.N);
  std::ostringstream os;
  os << "command: decompose\n";
  os << "N: " << o.N << "\n";
  os << "subring: " << desc.text << "\n";
  os << "f: " << S.to_string(f) << "\n";
  bool in_sub = true;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    os << "component " << j << ": " << S.to_string(comps[j]) << "\n";
    in_sub = in_sub && in_xN_subring(S, o.N, comps[j]);
  }
  bool rt = S.sub(back, f).coeffs == S.zero().coeffs;
  os << "components-in-subring: " << bool_text(in_sub) << "\n";
  os << "roundtrip: " << (rt ? "ok" : "refuted") << "\n";
  bool ok = rt && in_sub;
  return {ok ? kOk : kRefuted, os.str(), ""};
}

template <Field F>
const Ideal<F>& ideal_of(const spec::FinalgModel<F>& m, const std::string& name) {
  auto I = m.ideal(name);
  if (!I) throw spec::SpecError(0, 0, "undefined ideal '" + name + "'");
  return *I;
}

template <Field F>
Result core(const spec::FinalgModel<F>& m, const Options& o) {
  const auto& I = ideal_of(m, o.ideal);
  const auto& A = m.algebra;
  std::ostringstream os;
  os << "command: core\n" << finalg_header(m);
  os << "ideal: " << o.ideal << " = " << ideal_text(A, I) << "\n";
  auto dc = delta_core(m.skew, I);
  os << "delta-core: " << ideal_text(A, dc) << "\n";
  if (A.field().characteristic() == 0) {
    os << "stabilization: not applicable in characteristic 0\n";
    return {kOk, os.str(), ""};
  }
  auto rep = stabilization_M(m.skew, I, o.cap);
  os << rep.text();
  if (!rep.conclusive()) return {kInconclusive, os.str(), ""};
  os << "core: " << ideal_text(A, rep.final_core) << "\n";
  return {kOk, os.str(), ""};
}

template <Field F>
bool delta_stable(const FinAlgebra<F>& A, const SkewDerivation<F>& sd, const Ideal<F>& I) {
  return I.contains(image(A.field(), sd.delta, I));
}

template <Field F>
Result theoremc(const spec::FinalgModel<F>& m, const Options& o) {
  const auto& I = ideal_of(m, o.ideal);
  const auto& A = m.algebra;
  std::ostringstream os;
  os << "command: theoremc\n" << finalg_header(m);
  os << "ideal: " << o.ideal << " = " << ideal_text(A, I) << "\n";
  if (A.field().characteristic() == 0) {
    auto rep = char0_checks(m.skew);
    os << "radical-delta-stable: " << bool_text(rep.radical_stable) << "\n";
    os << "minimal-sigma-primes: " << rep.sigma_primes_checked << "\n";
    for (const auto& f : rep.failures) os << "failure: " << f << "\n";
    auto mine = minimal_sigma_primes(A, m.skew.sigma, zero_ideal(A));
    bool listed = std::find(mine.begin(), mine.end(), I) != mine.end();
    os << "ideal-delta-stable: " << bool_text(delta_stable(A, m.skew, I)) << "\n";
    os << "ideal-minimal-sigma-prime: " << bool_text(listed) << "\n";
    os << "result: " << (rep.ok() ? "ok" : "refuted") << "\n";
    return {rep.ok() ? kOk : kRefuted, os.str(), ""};
  }
  auto rep = theorem_c_procedure(m.skew, I, o.cap);
  os << rep.text();
  if (!rep.conclusive) return {kInconclusive, os.str(), ""};
  os << "J: " << ideal_text(A, rep.J) << "\n";
  os << "result: " << (rep.verified() ? "ok" : "refuted") << "\n";
  return {rep.verified() ? kOk : kRefuted, os.str(), ""};
}

inline Result demo_iwasawa(const Options& o) {
  auto S = iwasawa_demo(o.p, o.T, o.D);
  const auto& R = S.base();
  std::ostringstream os;
  os << "command: demo iwasawa\n";
  os << "ring: series p=" << o.p << " k=1 T=" << o.T << " D=" << o.D << "\n";
  os << "sigma(t): " << R.to_string(R.sigma_t()) << "\n";
  os << "delta(t): " << R.to_string(R.delta_t()) << "\n";
  os << "deg-sigma-minus-id: " << R.sigma_shift_degree().str() << "\n";
  os << "compatible: " << bool_text(R.is_compatible()) << "\n";
  std::mt19937_64 rng(o.seed);
  bool laws = true, submult = true;
  for (std::size_t s = 0; s < o.samples; ++s) {
    auto a = S.random(rng), b = S.random(rng), c = S.random(rng);
    laws = laws && S.mul(S.mul(a, b), c).coeffs == S.mul(a, S.mul(b, c)).coeffs &&
           S.mul(a, S.add(b, c)).coeffs == S.add(S.mul(a, b), S.mul(a, c)).coeffs;
    submult = submult && S.f_u_value(S.mul(a, b)) >= S.f_u_value(a) + S.f_u_value(b);
  }
  os << "samples: " << o.samples << "\n";
  os << "ring-laws: " << (laws ? "ok" : "refuted") << "\n";
  os << "f_u-submultiplicative: " << (submult ? "ok" : "refuted") << "\n";
  auto gi = graded_iso_check(S, 0, std::min<std::int64_t>(12, static_cast<std::int64_t>(o.D)), 8, o.seed);
  for (const auto& row : gi.rows)
    os << "degree " << row.value.str() << ": sps-dim=" << row.sps_dim << " expected=" << row.expected_dim << "\n";
  auto t = S.monomial(R.monomial(1), 0);
  auto x = S.x();
  os << "x*t: " << S.to_string(S.mul(x, t)) << "\n";
  bool ok = laws && submult && gi.ok();
  os << "result: " << (ok ? "ok" : "refuted") << "\n";
  return {ok ? kOk : kRefuted, os.str(), ""};
}

inline Result alpha(const Options& o) {
  auto table = oracle::certify_alpha_table(o.p, o.n);
  std::ostringstream os;
  os << "command: alpha\n" << table.text() << "certified: true\n";
  return {kOk, os.str(), ""};
}

inline Result format(const spec::SpecFile& s) { return {kOk, spec::serialize(s), ""}; }

} // namespace detail

Result run(const std::vector<std::string>& args);

namespace detail {

inline std::vector<std::string> split_words(const std::string& s) { return spec::detail::words(s); }

/// Runs every fixture's [expect] lines, checks canonical round trips and the
/// invalid fixtures, then a small deterministic property suite.
inline Result selftest(const Options& o) {
  namespace fs = std::filesystem;
  std::string dir = o.fixtures;
  if (dir.empty()) {
    const char* env = std::getenv("SKEWPS_FIXTURES");
    dir = env ? env : SKEWPS_FIXTURE_DIR;
  }
  if (!fs::is_directory(dir)) throw spec::SpecError(0, 0, "fixture directory '" + dir + "' not found");
  std::vector<fs::path> valid, invalid;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".sps") valid.push_back(e.path());
  if (fs::is_directory(fs::path(dir) / "invalid"))
    for (const auto& e : fs::directory_iterator(fs::path(dir) / "invalid"))
      if (e.path().extension() == ".sps") invalid.push_back(e.path());
  std::sort(valid.begin(), valid.end());
  std::sort(invalid.begin(), invalid.end());
  std::ostringstream os;
  os << "command: selftest\n";
  bool all = true;
  for (const auto& path : valid) {
    std::string name = path.filename().string();
    std::string text = read_file(path.string());
    std::vector<std::string> problems;
    try {
      auto s = spec::parse_spec(text);
      if (spec::serialize(s) != text) problems.push_back("not in canonical form");
      if (spec::parse_spec(spec::serialize(s)) != s) problems.push_back("round trip changed the spec");
      if (auto ex = s.section("expect"))
        for (const auto& e : ex->entries) {
          auto words = split_words(e.key);
          std::vector<std::string> cmd{words[0], path.string()};
          cmd.insert(cmd.end(), words.begin() + 1, words.end());
          auto r = run(cmd);
          bool hit = false;
          if (e.value.rfind("exit: ", 0) == 0) {
            hit = std::to_string(r.exit_code) == e.value.substr(6);
          } else {
            std::istringstream lines(r.out);
            std::string l;
            while (std::getline(lines, l)) hit = hit || l == e.value;
          }
          if (!hit) problems.push_back("'" + e.key + "' missing '" + e.value + "'");
        }
    } catch (const std::exception& ex) {
      problems.push_back(ex.what());
    }
    os << "fixture " << name << ": " << (problems.empty() ? "ok" : "FAILED") << "\n";
    for (const auto& p : problems) os << "  " << p << "\n";
    all = all && problems.empty();
  }
  for (const auto& path : invalid) {
    std::string name = "invalid/" + path.filename().string();
    std::string text = read_file(path.string());
    // First line is `# error: line N`.
    std::string want;
    if (text.rfind("# error: ", 0) == 0) want = text.substr(9, text.find('\n') - 9);
    bool ok = false;
    std::string got;
    try {
      spec::parse_spec(text);
      got = "accepted";
    } catch (const spec::SpecError& ex) {
      got = ex.what();
      ok = !want.empty() && got.rfind(want + ",", 0) == 0;
    }
    os << "fixture " << name << ": " << (ok ? "ok" : "FAILED") << "\n";
    if (!ok) os << "  expected '" << want << "', got '" << got << "'\n";
    all = all && ok;
  }
  // Property suite.
  bool props = oracle::binomial_identity_holds(3);
  os << "property binomial-identity: " << (props ? "ok" : "FAILED") << "\n";
  bool alpha_ok = true;
  for (auto [p, n] : {std::pair<std::int64_t, std::int64_t>{2, 8}, {3, 9}}) {
    try {
      oracle::certify_alpha_table(p, n);
    } catch (const MathError&) {
      alpha_ok = false;
    }
  }
  os << "property alpha-table: " << (alpha_ok ? "ok" : "FAILED") << "\n";
  bool vp_ok = true;
  for (std::int64_t p : {2, 3, 5})
    for (unsigned n = 0; n <= 3; ++n) {
      auto q = static_cast<std::int64_t>(ipow(p, n));
      for (std::int64_t i = 1; i <= q; ++i) vp_ok = vp_ok && vp(binomial(q, i), p) + vp(BigInt(i), p) == n;
    }
  os << "property binomial-valuation: " << (vp_ok ? "ok" : "FAILED") << "\n";
  all = all && props && alpha_ok && vp_ok;
  os << "result: " << (all ? "ok" : "refuted") << "\n";
  return {all ? kOk : kRefuted, os.str(), ""};
}

template <class Visitor>
Result with_model(const Options& o, Visitor&& v) {
  auto s = spec::parse_spec(read_file(o.spec_path));
  auto m = spec::build_model(s);
  return std::visit(std::forward<Visitor>(v), m);
}

} // namespace detail

inline Result run(const std::vector<std::string>& args) {
  detail::Options o;
  CLI::App app{"Skew power series rings: verification and computation"};
  app.require_subcommand(1);
  auto add_spec = [&](CLI::App* c) { c->add_option("spec", o.spec_path, "spec file")->required(); };
  auto* verify = app.add_subcommand("verify", "check skew-derivation and filtration axioms");
  add_spec(verify);
  auto* mul = app.add_subcommand("mul", "multiply two named elements");
  add_spec(mul);
  mul->add_option("elements", o.positional, "two element names")->expected(2);
  auto* gr = app.add_subcommand("gr", "graded pieces against gr(R)[Z]");
  add_spec(gr);
  gr->add_option("--window", o.window, "degree window a..b")->required();
  gr->add_option("--samples", o.samples);
  gr->add_option("--seed", o.seed);
  auto* core = app.add_subcommand("core", "delta-core stabilization for a named ideal");
  add_spec(core);
  core->add_option("--ideal", o.ideal)->required();
  core->add_option("--cap", o.cap);
  auto* thc = app.add_subcommand("theoremc", "minimal sigma-prime procedure for a named ideal");
  add_spec(thc);
  thc->add_option("--ideal", o.ideal)->required();
  thc->add_option("--cap", o.cap);
  auto* dec = app.add_subcommand("decompose", "crossed-product decomposition");
  add_spec(dec);
  dec->add_option("--N", o.N)->required();
  dec->add_option("element", o.positional)->expected(1);
  auto* fmt = app.add_subcommand("format", "print the canonical form of a spec");
  add_spec(fmt);
  auto* demo = app.add_subcommand("demo", "built-in demonstration rings");
  demo->add_option("ring", o.demo)->required()->check(CLI::IsMember({"iwasawa"}));
  demo->add_option("--p", o.p);
  demo->add_option("--T", o.T);
  demo->add_option("--D", o.D);
  demo->add_option("--seed", o.seed);
  demo->add_option("--samples", o.samples);
  auto* self = app.add_subcommand("selftest", "run the fixture and property suite");
  self->add_option("--fixtures", o.fixtures);
  auto* alpha = app.add_subcommand("alpha", "certify the p-power expansion coefficients");
  alpha->add_option("--p", o.p);
  alpha->add_option("--n", o.n);

  Result r;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    o.command = app.get_subcommands().front()->get_name();
    if (o.command == "verify") return detail::with_model(o, [](const auto& m) { return detail::verify(m); });
    if (o.command == "mul") return detail::with_model(o, [&](const auto& m) { return detail::mul(m, o); });
    if (o.command == "gr") return detail::with_model(o, [&](const auto& m) { return detail::gr(m, o); });
    if (o.command == "decompose") return detail::with_model(o, [&](const auto& m) { return detail::decompose(m, o); });
    if (o.command == "core" || o.command == "theoremc") {
      return detail::with_model(o, [&](const auto& m) -> Result {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, spec::SeriesModel>) {
          throw spec::SpecError(0, 0, o.command + " needs a finite algebra spec");
        } else {
          return o.command == "core" ? detail::core(m, o) : detail::theoremc(m, o);
        }
      });
    }
    if (o.command == "format") return detail::format(spec::parse_spec(detail::read_file(o.spec_path)));
    if (o.command == "demo") return detail::demo_iwasawa(o);
    if (o.command == "selftest") return detail::selftest(o);
    if (o.command == "alpha") return detail::alpha(o);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kUsage, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const spec::SpecError& e) {
    std::string msg = e.line() == 0 ? std::string(e.what()).substr(std::string("line 0, column 0: ").size()) : e.what();
    return {kUsage, "", "spec error: " + msg + "\n"};
  } catch (const MathError& e) {
    return {kUsage, "", std::string("error: ") + e.what() + "\n"};
  }
  return {kUsage, "", "usage error: unknown command\n"};
}

} // namespace skewps::cli
