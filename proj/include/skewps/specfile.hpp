#pragma once

// Line-oriented ring specification format, version header `sps-spec 1`.
//
//   sps-spec 1
//   [ring]        kind = series | finalg | modp, plus the ring parameters
//   [skew]        sigma, delta (generator images or matrices), optional q
//   [filtration]  kind = adic | chain | trivial, scale, ideal / level k
//   [elements]    name = sparse monomial list
//   [ideals]      name = radical | zero | generator, generator, ...
//   [expect]      command line = expected report line (repeatable)
//
// Blank lines and lines starting with '#' are ignored. All numerals are exact
// integers. serialize() writes the canonical form; parse(serialize(s)) == s.

#include "skewps/core.hpp"
#include "skewps/sps.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace skewps::spec {

class SpecError : public std::runtime_error {
public:
  SpecError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_, column_;
};

struct Entry {
  std::string key;
  std::string value;
  std::size_t line = 0;
  std::size_t value_column = 0;
  bool operator==(const Entry& o) const { return key == o.key && value == o.value; }
};

struct Section {
  std::string name;
  std::vector<Entry> entries;
  std::size_t line = 0;
  bool operator==(const Section& o) const { return name == o.name && entries == o.entries; }

  const Entry* find(std::string_view key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }
};

struct SpecFile {
  std::vector<Section> sections;
  bool operator==(const SpecFile&) const = default;

  const Section* section(std::string_view name) const {
    for (const auto& s : sections)
      if (s.name == name) return &s;
    return nullptr;
  }
};

inline constexpr std::string_view kHeader = "sps-spec 1";
inline const std::vector<std::string> kSections{"ring", "skew", "filtration", "elements", "ideals", "expect"};

namespace detail {
inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline std::size_t leading_spaces(std::string_view s) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  return a;
}

inline bool is_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
} // namespace detail

/// Syntax only: header, section headers, `key = value` lines.
inline SpecFile parse_syntax(std::string_view text) {
  SpecFile out;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    auto line = detail::trim(raw);
    std::size_t col0 = detail::leading_spaces(raw) + 1;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kHeader) throw SpecError(line_no, col0, "expected version header '" + std::string(kHeader) + "'");
      header_seen = true;
      continue;
    }
    if (line[0] == '[') {
      if (line.back() != ']') throw SpecError(line_no, col0 + line.size() - 1, "section header must end with ']'");
      auto name = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
        throw SpecError(line_no, col0 + 1, "unknown section header '[" + name + "]'");
      if (out.section(name)) throw SpecError(line_no, col0 + 1, "duplicate section '[" + name + "]'");
      out.sections.push_back({name, {}, line_no});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw SpecError(line_no, col0, "expected 'key = value'");
    if (out.sections.empty()) throw SpecError(line_no, col0, "entry outside of any section");
    auto key = detail::trim(std::string_view(line).substr(0, eq));
    if (key.empty()) throw SpecError(line_no, col0, "empty key");
    auto rest = std::string_view(line).substr(eq + 1);
    auto value = detail::trim(rest);
    if (value.empty()) throw SpecError(line_no, col0 + eq + 1, "empty value for '" + key + "'");
    auto& sec = out.sections.back();
    if (sec.name != "expect" && sec.find(key)) throw SpecError(line_no, col0, "duplicate key '" + key + "'");
    sec.entries.push_back({key, value, line_no, col0 + eq + 1 + detail::leading_spaces(rest)});
  }
  if (!header_seen) throw SpecError(1, 1, "expected version header '" + std::string(kHeader) + "'");
  return out;
}

/// Canonical text: header, then sections in order with `key = value` lines.
inline std::string serialize(const SpecFile& s) {
  std::string out(kHeader);
  out += "\n";
  for (const auto& sec : s.sections) {
    out += "\n[" + sec.name + "]\n";
    for (const auto& e : sec.entries) out += e.key + " = " + e.value + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sparse monomial lists

struct Term {
  BigInt coef = 1;
  std::string name; // basis name for finite algebras; empty for the unit
  std::size_t t_exp = 0;
  std::size_t x_exp = 0;
};

namespace detail {
inline std::size_t parse_exponent(std::string_view s, std::size_t line, std::size_t col) {
  if (s.empty() || !is_integer(s) || s[0] == '-' || s[0] == '+') throw SpecError(line, col, "bad exponent '" + std::string(s) + "'");
  if (s.size() > 9) throw SpecError(line, col, "exponent too large");
  return static_cast<std::size_t>(std::stoull(std::string(s)));
}
} // namespace detail

/// Parses `c*t^a*x^b + ...` or `c*name*x^b - ...`. Basis names take priority
/// over the series variables t and x.
inline std::vector<Term> parse_terms(std::string_view s, const std::vector<std::string>& names, bool series,
                                     std::size_t line, std::size_t col) {
  std::vector<Term> out;
  std::size_t i = 0;
  bool first = true;
  while (true) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) {
      if (first) throw SpecError(line, col + i, "empty element");
      throw SpecError(line, col + i, "dangling sign");
    }
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
      neg = s[i] == '-';
      ++i;
      while (i < s.size() && s[i] == ' ') ++i;
    } else if (!first) {
      throw SpecError(line, col + i, "expected '+' or '-'");
    }
    std::size_t start = i;
    while (i < s.size() && s[i] != '+' && !(s[i] == '-' && i > start)) ++i;
    auto term_text = detail::trim(s.substr(start, i - start));
    if (term_text.empty()) throw SpecError(line, col + start, "empty term");
    Term t;
    if (neg) t.coef = -1;
    std::size_t fpos = 0;
    bool have_name = false;
    while (fpos <= term_text.size()) {
      auto star = term_text.find('*', fpos);
      auto factor = detail::trim(std::string_view(term_text).substr(fpos, star == std::string::npos ? std::string::npos : star - fpos));
      std::size_t fcol = col + start + fpos;
      if (factor.empty()) throw SpecError(line, fcol, "empty factor");
      if (detail::is_integer(factor)) {
        t.coef *= BigInt(factor);
      } else if (!series && std::find(names.begin(), names.end(), factor) != names.end()) {
        if (have_name) throw SpecError(line, fcol, "more than one basis name in a term");
        t.name = factor;
        have_name = true;
      } else if (series && (factor == "t" || factor.rfind("t^", 0) == 0)) {
        t.t_exp += factor == "t" ? 1 : detail::parse_exponent(std::string_view(factor).substr(2), line, fcol + 2);
      } else if (factor == "x" || factor.rfind("x^", 0) == 0) {
        t.x_exp += factor == "x" ? 1 : detail::parse_exponent(std::string_view(factor).substr(2), line, fcol + 2);
      } else {
        throw SpecError(line, fcol, "undefined name '" + factor + "'");
      }
      if (star == std::string::npos) break;
      fpos = star + 1;
    }
    out.push_back(std::move(t));
    first = false;
    if (i >= s.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Semantic model

template <Field F>
struct FinalgModel {
  FinAlgebra<F> algebra;
  SkewDerivation<F> skew;
  std::optional<Filtration<F>> filtration;
  std::size_t D = 4;
  /// Elements as coefficient lists in powers of x.
  std::vector<std::pair<std::string, std::vector<Vec<F>>>> elements;
  std::vector<std::pair<std::string, Ideal<F>>> ideals;

  const std::vector<Vec<F>>* element(std::string_view n) const {
    for (const auto& [k, v] : elements)
      if (k == n) return &v;
    return nullptr;
  }
  const Ideal<F>* ideal(std::string_view n) const {
    for (const auto& [k, v] : ideals)
      if (k == n) return &v;
    return nullptr;
  }
};

struct SeriesModel {
  SeriesBase base;
  std::size_t D = 4;
  std::vector<std::pair<std::string, std::vector<SeriesBase::Elem>>> elements;

  const std::vector<SeriesBase::Elem>* element(std::string_view n) const {
    for (const auto& [k, v] : elements)
      if (k == n) return &v;
    return nullptr;
  }
};

using Model = std::variant<FinalgModel<PrimeField>, FinalgModel<RationalField>, SeriesModel>;

namespace detail {
inline const Entry& require(const Section& s, std::string_view key) {
  if (auto e = s.find(key)) return *e;
  throw SpecError(s.line, 1, "section [" + s.name + "] is missing key '" + std::string(key) + "'");
}

inline std::int64_t int_value(const Entry& e, std::int64_t lo, std::int64_t hi) {
  if (!is_integer(e.value)) throw SpecError(e.line, e.value_column, "expected an integer for '" + e.key + "'");
  BigInt v(e.value);
  if (v < lo || v > hi)
    throw SpecError(e.line, e.value_column,
                    "'" + e.key + "' must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::int64_t>(v);
}

inline std::vector<std::string> words(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

inline std::vector<std::pair<std::string, std::size_t>> split_list(std::string_view s, char sep, std::size_t col) {
  std::vector<std::pair<std::string, std::size_t>> out;
  std::size_t start = 0;
  while (true) {
    auto next = s.find(sep, start);
    auto piece = s.substr(start, next == std::string_view::npos ? std::string_view::npos : next - start);
    out.push_back({trim(piece), col + start + leading_spaces(piece)});
    if (next == std::string_view::npos) break;
    start = next + 1;
  }
  return out;
}

/// Coordinates by x-power; `unit` resolves terms without a basis name.
template <Field F>
std::vector<Vec<F>> coords_of(const F& f, const std::vector<std::string>& names, const std::optional<Vec<F>>& unit,
                              std::string_view text, std::size_t line, std::size_t col) {
  const std::size_t d = names.size();
  std::vector<Vec<F>> coeffs;
  for (const auto& t : parse_terms(text, names, false, line, col)) {
    if (coeffs.size() <= t.x_exp) coeffs.resize(t.x_exp + 1, zero_vec(f, d));
    Vec<F> b;
    if (t.name.empty()) {
      if (!unit) throw SpecError(line, col, "bare numeral needs a basis element named '1'");
      b = *unit;
    } else {
      b = zero_vec(f, d);
      b[static_cast<std::size_t>(std::find(names.begin(), names.end(), t.name) - names.begin())] = f.one();
    }
    auto c = f.from_big(t.coef);
    for (std::size_t i = 0; i < d; ++i) coeffs[t.x_exp][i] = f.add(coeffs[t.x_exp][i], f.mul(c, b[i]));
  }
  return coeffs;
}

template <Field F>
std::vector<Vec<F>> finalg_element(const FinAlgebra<F>& A, std::string_view text, std::size_t line, std::size_t col) {
  return coords_of(A.field(), A.names(), std::optional<Vec<F>>(A.one()), text, line, col);
}

template <Field F>
Vec<F> finalg_scalar_element(const FinAlgebra<F>& A, std::string_view text, std::size_t line, std::size_t col) {
  auto c = finalg_element(A, text, line, col);
  if (c.size() > 1) throw SpecError(line, col, "algebra element may not involve x");
  return c.empty() ? A.zero() : c[0];
}

template <Field F>
std::vector<Vec<F>> element_list(const FinAlgebra<F>& A, const Entry& e) {
  std::vector<Vec<F>> out;
  for (const auto& [piece, c] : split_list(e.value, ',', e.value_column)) out.push_back(finalg_scalar_element(A, piece, e.line, c));
  return out;
}

template <Field F>
LinearMap<F> matrix_value(const F& f, std::size_t n, const Entry& e) {
  Matrix<F> m(f, n, n);
  auto rows = split_list(e.value, ';', e.value_column);
  if (rows.size() != n) throw SpecError(e.line, e.value_column, "dimension mismatch: expected " + std::to_string(n) + " rows");
  for (std::size_t r = 0; r < n; ++r) {
    auto w = words(rows[r].first);
    if (w.size() != n)
      throw SpecError(e.line, rows[r].second, "dimension mismatch: expected " + std::to_string(n) + " entries in row " + std::to_string(r + 1));
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_integer(w[c])) throw SpecError(e.line, rows[r].second, "matrix entries must be integers");
      m(r, c) = f.from_big(BigInt(w[c]));
    }
  }
  return m;
}

template <Field F>
FinAlgebra<F> build_finalg(const F& f, const Section& ring) {
  if (auto pre = ring.find("preset")) {
    for (const char* k : {"dim", "names", "unit"})
      if (ring.find(k)) throw SpecError(ring.find(k)->line, 1, "'preset' excludes '" + std::string(k) + "'");
    auto w = words(pre->value);
    auto arg = [&]() -> std::size_t {
      if (w.size() != 2 || !is_integer(w[1]) || w[1][0] == '-') throw SpecError(pre->line, pre->value_column, "preset '" + w[0] + "' takes one size");
      auto n = std::stoull(w[1]);
      if (n < 1 || n > 64) throw SpecError(pre->line, pre->value_column, "preset size out of range");
      return static_cast<std::size_t>(n);
    };
    if (w[0] == "truncated") return truncated_poly(f, arg());
    if (w[0] == "product") return product_of_fields(f, arg());
    if (w[0] == "matrix") return matrix_algebra(f, arg());
    if (w[0] == "upper") return upper_triangular(f, arg());
    throw SpecError(pre->line, pre->value_column, "unknown preset '" + w[0] + "'");
  }
  const auto& dim_e = require(ring, "dim");
  auto d = static_cast<std::size_t>(int_value(dim_e, 1, 64));
  const auto& names_e = require(ring, "names");
  auto names = words(names_e.value);
  if (names.size() != d) throw SpecError(names_e.line, names_e.value_column, "dimension mismatch: expected " + std::to_string(d) + " names");
  for (const auto& n : names)
    if (is_integer(n) && n != "1") throw SpecError(names_e.line, names_e.value_column, "basis name '" + n + "' is a numeral");
  // Structure constants: `mul A B = element`; unspecified products are zero.
  std::vector<Vec<F>> table(d * d, zero_vec(f, d));
  auto index = [&](const std::string& n, const Entry& e) {
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) throw SpecError(e.line, 1, "undefined name '" + n + "'");
    return static_cast<std::size_t>(it - names.begin());
  };
  std::optional<Vec<F>> named_one;
  if (auto it = std::find(names.begin(), names.end(), "1"); it != names.end()) {
    named_one = zero_vec(f, d);
    (*named_one)[static_cast<std::size_t>(it - names.begin())] = f.one();
  }
  auto scalar = [&](const Entry& e) {
    auto c = coords_of(f, names, named_one, e.value, e.line, e.value_column);
    if (c.size() > 1) throw SpecError(e.line, e.value_column, "algebra element may not involve x");
    return c.empty() ? zero_vec(f, d) : c[0];
  };
  for (const auto& e : ring.entries) {
    auto w = words(e.key);
    if (w.empty() || w[0] != "mul") continue;
    if (w.size() != 3) throw SpecError(e.line, 1, "expected 'mul A B = element'");
    table[index(w[1], e) * d + index(w[2], e)] = scalar(e);
  }
  Vec<F> unit;
  if (auto u = ring.find("unit")) unit = scalar(*u);
  else if (named_one) unit = *named_one;
  else throw SpecError(ring.line, 1, "no 'unit' given and no basis element named '1'");
  try {
    return FinAlgebra<F>(f, d, table, unit, names);
  } catch (const MathError& ex) {
    throw SpecError(ring.line, 1, std::string("structure constants rejected: ") + ex.what());
  }
}

inline void check_keys(const Section& s, const std::vector<std::string>& allowed, bool allow_mul = false) {
  for (const auto& e : s.entries) {
    if (allow_mul && e.key.rfind("mul ", 0) == 0) continue;
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end())
      throw SpecError(e.line, 1, "unknown key '" + e.key + "' in [" + s.name + "]");
  }
}

template <Field F>
SkewDerivation<F> build_skew(const FinAlgebra<F>& A, const Section* skew) {
  const F& f = A.field();
  auto sd = trivial_skew(A);
  if (!skew) return sd;
  std::optional<Vec<F>> sx, dx;
  for (const auto& e : skew->entries) {
    if (e.key == "sigma") sd.sigma = matrix_value(f, A.dim(), e);
    else if (e.key == "delta") sd.delta = matrix_value(f, A.dim(), e);
    else if (e.key == "q") sd.q = finalg_scalar_element(A, e.value, e.line, e.value_column);
    else if (e.key.size() > 7 && (e.key.rfind("sigma(", 0) == 0 || e.key.rfind("delta(", 0) == 0) && e.key.back() == ')') {
      auto gen = e.key.substr(6, e.key.size() - 7);
      if (A.dim() < 2 || gen != A.names()[1]) throw SpecError(e.line, 1, "generator image requires the generator '" + (A.dim() < 2 ? std::string("?") : A.names()[1]) + "'");
      auto v = finalg_scalar_element(A, e.value, e.line, e.value_column);
      (e.key[0] == 's' ? sx : dx) = v;
    } else {
      throw SpecError(e.line, 1, "unknown key '" + e.key + "' in [skew]");
    }
  }
  if (sx || dx) {
    if (skew->find("sigma") || skew->find("delta")) throw SpecError(skew->line, 1, "mix of matrices and generator images");
    for (std::size_t k = 0; k < A.dim(); ++k)
      if (A.pow(A.basis(1), k) != A.basis(k)) throw SpecError(skew->line, 1, "generator images need a basis of powers of the generator");
    auto q = sd.q;
    sd = monogenic_skew(A, sx ? *sx : A.basis(1), dx ? *dx : A.zero());
    sd.q = q;
  }
  return sd;
}

template <Field F>
std::optional<Filtration<F>> build_filtration(const FinAlgebra<F>& A, const Section* s) {
  if (!s) return std::nullopt;
  const auto& kind = require(*s, "kind");
  int scale = 1;
  if (auto e = s->find("scale")) scale = static_cast<int>(int_value(*e, 1, 2));
  try {
    if (kind.value == "trivial") {
      check_keys(*s, {"kind", "scale"});
      return Filtration<F>::chain(A, {whole_ideal(A)}, scale);
    }
    if (kind.value == "adic") {
      check_keys(*s, {"kind", "scale", "ideal"});
      const auto& ie = require(*s, "ideal");
      Ideal<F> I = ie.value == "radical" ? radical(A) : ideal_generated(A, element_list(A, ie));
      return Filtration<F>::adic(A, I, scale);
    }
    if (kind.value == "chain") {
      std::vector<Subspace<F>> levels{whole_ideal(A)};
      for (std::size_t k = 1;; ++k) {
        auto e = s->find("level " + std::to_string(k));
        if (!e) break;
        levels.push_back(Subspace<F>::span(A.field(), A.dim(), element_list(A, *e)));
      }
      for (const auto& e : s->entries)
        if (e.key != "kind" && e.key != "scale" && (e.key.rfind("level ", 0) != 0 || !is_integer(e.key.substr(6)) ||
                                                     std::stoull(e.key.substr(6)) >= levels.size()))
          throw SpecError(e.line, 1, "unexpected key '" + e.key + "' in chain filtration");
      return Filtration<F>::chain(A, levels, scale);
    }
  } catch (const MathError& ex) {
    throw SpecError(kind.line, 1, std::string("filtration rejected: ") + ex.what());
  }
  throw SpecError(kind.line, kind.value_column, "unknown filtration kind '" + kind.value + "'");
}

template <Field F>
FinalgModel<F> build_finalg_model(const F& f, const SpecFile& s, const Section& ring) {
  check_keys(ring, {"kind", "p", "dim", "names", "unit", "preset", "D"}, true);
  auto A = build_finalg(f, ring);
  FinalgModel<F> m{A, trivial_skew(A), std::nullopt, 4, {}, {}};
  if (auto e = ring.find("D")) m.D = static_cast<std::size_t>(int_value(*e, 1, 256));
  m.skew = build_skew(m.algebra, s.section("skew"));
  m.filtration = build_filtration(m.algebra, s.section("filtration"));
  if (auto el = s.section("elements"))
    for (const auto& e : el->entries) {
      auto c = finalg_element(m.algebra, e.value, e.line, e.value_column);
      if (c.size() > m.D) throw SpecError(e.line, e.value_column, "x-degree must be below D");
      m.elements.push_back({e.key, std::move(c)});
    }
  if (auto id = s.section("ideals"))
    for (const auto& e : id->entries) {
      if (e.value == "radical") m.ideals.push_back({e.key, radical(m.algebra)});
      else if (e.value == "zero") m.ideals.push_back({e.key, zero_ideal(m.algebra)});
      else m.ideals.push_back({e.key, ideal_generated(m.algebra, element_list(m.algebra, e))});
    }
  return m;
}

inline SeriesBase::Elem series_value(const ModRing& R, std::size_t T, const std::vector<Term>& terms, std::size_t line,
                                     std::size_t col) {
  SeriesBase::Elem out(T, 0);
  for (const auto& t : terms) {
    if (t.x_exp != 0) throw SpecError(line, col, "series in t may not involve x");
    if (t.t_exp >= T) throw SpecError(line, col, "t-degree " + std::to_string(t.t_exp) + " is not below T");
    out[t.t_exp] = R.add(out[t.t_exp], R.from_big(t.coef));
  }
  return out;
}

inline SeriesModel build_series_model(const SpecFile& s, const Section& ring) {
  check_keys(ring, {"kind", "p", "k", "T", "D"});
  const auto& pe = require(ring, "p");
  auto p = int_value(pe, 2, 1 << 20);
  if (!is_prime(p)) throw SpecError(pe.line, pe.value_column, "p = " + pe.value + " is not prime");
  int k = 1;
  if (auto e = ring.find("k")) k = static_cast<int>(int_value(*e, 1, 30));
  auto T = static_cast<std::size_t>(int_value(require(ring, "T"), 2, 4096));
  auto D = static_cast<std::size_t>(int_value(require(ring, "D"), 1, 4096));
  ModRing R(p, k);
  const Section* skew = s.section("skew");
  if (!skew) throw SpecError(ring.line, 1, "series ring needs a [skew] section");
  check_keys(*skew, {"sigma", "delta"});
  const auto& se = require(*skew, "sigma");
  const auto& de = require(*skew, "delta");
  auto sigma_t = series_value(R, T, parse_terms(se.value, {}, true, se.line, se.value_column), se.line, se.value_column);
  auto delta_t = series_value(R, T, parse_terms(de.value, {}, true, de.line, de.value_column), de.line, de.value_column);
  SeriesModel m;
  try {
    m.base = SeriesBase(R, T, sigma_t, delta_t);
  } catch (const MathError& ex) {
    throw SpecError(skew->line, 1, ex.what());
  }
  m.D = D;
  if (s.section("filtration")) throw SpecError(s.section("filtration")->line, 1, "series rings carry the t-adic filtration");
  if (s.section("ideals")) throw SpecError(s.section("ideals")->line, 1, "ideals are supported for finite algebras only");
  if (auto el = s.section("elements"))
    for (const auto& e : el->entries) {
      std::vector<SeriesBase::Elem> coeffs;
      for (const auto& t : parse_terms(e.value, {}, true, e.line, e.value_column)) {
        if (t.x_exp >= D) throw SpecError(e.line, e.value_column, "x-degree must be below D");
        if (t.t_exp >= T) throw SpecError(e.line, e.value_column, "t-degree must be below T");
        if (coeffs.size() <= t.x_exp) coeffs.resize(t.x_exp + 1, m.base.zero());
        coeffs[t.x_exp][t.t_exp] = R.add(coeffs[t.x_exp][t.t_exp], R.from_big(t.coef));
      }
      m.elements.push_back({e.key, std::move(coeffs)});
    }
  return m;
}
} // namespace detail

/// Semantic validation: builds the ring, derivation, filtration, elements and ideals.
inline Model build_model(const SpecFile& s) {
  const Section* ring = s.section("ring");
  if (!ring) throw SpecError(1, 1, "missing [ring] section");
  const auto& kind = detail::require(*ring, "kind");
  if (kind.value == "series") return detail::build_series_model(s, *ring);
  if (kind.value != "finalg" && kind.value != "modp")
    throw SpecError(kind.line, kind.value_column, "unknown ring kind '" + kind.value + "'");
  const auto& pe = detail::require(*ring, "p");
  auto p = detail::int_value(pe, 0, 1 << 20);
  if (p == 0) {
    if (kind.value == "modp") throw SpecError(pe.line, pe.value_column, "modp rings need a prime p");
    return detail::build_finalg_model(RationalField{}, s, *ring);
  }
  if (!is_prime(p)) throw SpecError(pe.line, pe.value_column, "p = " + pe.value + " is not prime");
  return detail::build_finalg_model(PrimeField(p), s, *ring);
}

/// Syntax plus semantic validation.
inline SpecFile parse_spec(std::string_view text) {
  auto s = parse_syntax(text);
  build_model(s);
  return s;
}

} // namespace skewps::spec
