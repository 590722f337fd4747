#pragma once

// Free noncommutative expansion of delta^n over formal atoms a, x, b, each
// decorated by a delta power and a sigma power. Used to derive and certify
// the carry-free trinomial coefficients independently of coeff.hpp.

#include "skewps/coeff.hpp"
#include "skewps/skewder.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace skewps::oracle {

/// delta^d sigma^s applied to a formal symbol; the decorations commute.
struct Atom {
  char symbol = 'a';
  std::int64_t d = 0;
  std::int64_t s = 0;
  auto operator<=>(const Atom&) const = default;
};

using Word = std::vector<Atom>;

/// Sum of words with integer coefficients, keyed in canonical order.
using Expr = std::map<Word, BigInt>;

inline Expr word_expr(const std::string& symbols) {
  Word w;
  for (char c : symbols) w.push_back({c, 0, 0});
  return Expr{{w, BigInt(1)}};
}

/// One formal application of delta: delta(A1 A2 ... Am) =
/// sum_t sigma(A1)...sigma(A_{t-1}) delta(A_t) A_{t+1}...A_m.
inline Expr symbolic_delta(const Expr& e) {
  Expr out;
  for (const auto& [w, c] : e) {
    for (std::size_t t = 0; t < w.size(); ++t) {
      Word nw = w;
      for (std::size_t u = 0; u < t; ++u) ++nw[u].s;
      ++nw[t].d;
      auto& slot = out[nw];
      slot += c;
      if (slot == 0) out.erase(nw);
    }
  }
  return out;
}

inline Expr symbolic_delta_pow(Expr e, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) e = symbolic_delta(e);
  return e;
}

inline std::string to_string(const Expr& e) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : e) {
    if (!first) os << " + ";
    first = false;
    os << c;
    for (const auto& at : w) os << "*d^" << at.d << "s^" << at.s << "(" << at.symbol << ")";
  }
  return first ? "0" : os.str();
}

/// Substitutes algebra elements for the symbols and the concrete maps for
/// sigma and delta.
template <Field F>
Vec<F> evaluate(const Expr& e, const SkewDerivation<F>& sd, const std::map<char, Vec<F>>& values) {
  const auto& A = sd.algebra;
  const F& f = sd.field();
  Vec<F> out = A.zero();
  for (const auto& [w, c] : e) {
    Vec<F> term = A.one();
    for (const auto& at : w) {
      auto it = values.find(at.symbol);
      if (it == values.end()) throw MathError(std::string("no value for symbol ") + at.symbol);
      auto v = sd.delta_pow(sd.sigma_pow(it->second, static_cast<std::uint64_t>(at.s)), static_cast<std::uint64_t>(at.d));
      term = A.mul(term, v);
    }
    out = A.add(out, A.scale(f.from_big(c), term));
  }
  return out;
}

/// Over the integers the coefficient of delta^k sigma^{n-k}(a) delta^{n-k}(b)
/// in delta^n(ab) is binom(n,k). Returns false on the first mismatch.
inline bool binomial_identity_holds(std::int64_t n_max) {
  Expr e = word_expr("ab");
  for (std::int64_t n = 0; n <= n_max; ++n) {
    if (static_cast<std::int64_t>(e.size()) != n + 1) return false;
    for (const auto& [w, c] : e) {
      std::int64_t k = w[0].d;
      if (w[0].s != n - k || w[1].d != n - k || w[1].s != 0) return false;
      if (c != binomial(n, k)) return false;
    }
    e = symbolic_delta(e);
  }
  return true;
}

struct AlphaRow {
  std::int64_t n, i, j, k, alpha;
};

struct AlphaTable {
  std::int64_t p = 2;
  std::int64_t n_max = 0;
  std::vector<AlphaRow> rows;

  std::string text() const {
    std::ostringstream os;
    os << "alpha-table p=" << p << " n_max=" << n_max << "\n";
    for (const auto& r : rows) os << r.n << " " << r.i << " " << r.j << " " << r.k << " " << r.alpha << "\n";
    return os.str();
  }
};

/// Expands delta^n(axb) for n <= n_max, reduces mod p and checks support and
/// coefficients against trinomial_indices and alpha_coeff. Throws with the
/// offending (n,i,j,k) on any mismatch.
inline AlphaTable certify_alpha_table(std::int64_t p, std::int64_t n_max) {
  if (!is_prime(p)) throw MathError("certify_alpha_table: " + std::to_string(p) + " is not prime");
  AlphaTable table{p, n_max, {}};
  Expr e = word_expr("axb");
  for (std::int64_t n = 0; n <= n_max; ++n) {
    std::map<Triple, std::int64_t> reduced;
    for (const auto& [w, c] : e) {
      const std::int64_t i = w[0].d, j = w[1].d, k = w[2].d;
      // Decorations are forced by (i, j, k): sigma moves left past every later delta.
      if (w[0].s != j + k || w[1].s != k || w[2].s != 0 || i + j + k != n)
        throw MathError("oracle: malformed word at n=" + std::to_string(n));
      BigInt r = c % p;
      if (r < 0) r += p;
      if (r != 0) reduced[{i, j, k}] = static_cast<std::int64_t>(r);
    }
    auto support = trinomial_indices(n, p);
    auto where = [&](const Triple& t) {
      return "(n,i,j,k)=(" + std::to_string(n) + "," + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
             std::to_string(t[2]) + ")";
    };
    for (const auto& [t, v] : reduced)
      if (!std::binary_search(support.begin(), support.end(), t))
        throw MathError("alpha certification failed: nonzero coefficient off support at " + where(t));
    for (const auto& t : support) {
      auto it = reduced.find(t);
      if (it == reduced.end()) throw MathError("alpha certification failed: vanishing coefficient at " + where(t));
      if (it->second != alpha_coeff(t[0], t[1], t[2], p))
        throw MathError("alpha certification failed: coefficient mismatch at " + where(t));
      table.rows.push_back({n, t[0], t[1], t[2], it->second});
    }
    e = symbolic_delta(e);
  }
  return table;
}

} // namespace skewps::oracle
