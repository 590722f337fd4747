#pragma once

// delta-cores of sigma-ideals, their stabilization along p-th powers of the
// skew derivation, sigma-primeness of cores, the iterative minimal-prime
// procedure in characteristic p, and the characteristic 0 stability checks.

#include "skewps/finalg.hpp"
#include "skewps/skewder.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace skewps {

/// A violated hypothesis, as opposed to a failed conclusion.
class PreconditionError : public MathError {
public:
  using MathError::MathError;
};

namespace detail {
inline std::string yes_no(bool b) { return b ? "true" : "false"; }

template <Field F>
bool stable_under(const F& f, const LinearMap<F>& m, const Subspace<F>& K) {
  return K.contains(image(f, m, K));
}
} // namespace detail

/// Largest (sigma, delta)-ideal inside the sigma-ideal I: the fixed point of
/// K -> largest ideal in K cap delta^{-1}K cap sigma^{-1}K, starting at I.
template <Field F>
Ideal<F> delta_core(const SkewDerivation<F>& sd, const Ideal<F>& I) {
  const auto& A = sd.algebra;
  const F& f = sd.field();
  if (!detail::stable_under(f, sd.sigma, I)) throw MathError("ideal is not sigma-stable");
  Ideal<F> K = I;
  while (true) {
    auto cand = intersect(K, intersect(preimage(f, sd.delta, K), preimage(f, sd.sigma, K)));
    auto next = largest_ideal_in(A, cand);
    if (next == K) break;
    K = std::move(next);
  }
  if (!is_ideal(A, K) || !detail::stable_under(f, sd.sigma, K) || !detail::stable_under(f, sd.delta, K) ||
      !I.contains(K))
    throw MathError("internal: delta core failed verification");
  return K;
}

/// delta-core with respect to (sigma^{p^m}, delta^{p^m}).
template <Field F>
Ideal<F> delta_pm_core(const SkewDerivation<F>& sd, const Ideal<F>& I, unsigned m) {
  if (sd.field().characteristic() == 0) throw MathError("delta_pm_core requires characteristic p");
  return delta_core(pth_power(sd, m), I);
}

/// Smallest (sigma, delta)-ideal containing the generators.
template <Field F>
Ideal<F> sigma_delta_closure(const SkewDerivation<F>& sd, const std::vector<Vec<F>>& gens) {
  const auto& A = sd.algebra;
  Ideal<F> K = ideal_generated(A, gens);
  while (true) {
    auto g = K.basis();
    for (const auto& v : K.basis()) {
      g.push_back(sd.apply_sigma(v));
      g.push_back(sd.apply_delta(v));
    }
    auto next = ideal_generated(A, g);
    if (next == K) return K;
    K = std::move(next);
  }
}

/// max(4, ceil(log_p dim) + 2).
inline unsigned default_stabilization_cap(std::int64_t p, std::size_t dim) {
  unsigned e = 0;
  BigInt q = 1;
  while (q < BigInt(dim)) {
    q *= p;
    ++e;
  }
  return std::max(4u, e + 2);
}

template <Field F>
struct CoreReport {
  Ideal<F> input;
  unsigned start = 0;
  unsigned cap = 0;
  /// chain[i] is the core for m = start + i, for m up to cap.
  std::vector<Ideal<F>> chain;
  bool ascending = true;
  /// First M whose core equals every later core up to cap; present only when M < cap.
  std::optional<unsigned> M;
  Ideal<F> final_core;
  bool flag_ideal = false;
  bool flag_sigma_stable = false;
  bool flag_delta_stable = false;
  bool flag_sigma_prime = false;
  bool flag_delta_image_ideal = false;

  bool conclusive() const { return M.has_value(); }

  std::string text() const {
    std::ostringstream os;
    os << "input-dim: " << input.dim() << "\n";
    os << "cap: " << cap << "\n";
    os << "chain-dims:";
    for (const auto& K : chain) os << " " << K.dim();
    os << "\n";
    os << "ascending: " << detail::yes_no(ascending) << "\n";
    if (M) {
      os << "M: " << *M << "\n";
      os << "status: stabilized\n";
    } else {
      os << "M: none\n";
      os << "status: inconclusive-at-cap\n";
    }
    os << "final-dim: " << final_core.dim() << "\n";
    os << "final-basis: " << final_core.str() << "\n";
    os << "flag-ideal: " << detail::yes_no(flag_ideal) << "\n";
    os << "flag-sigma-stable: " << detail::yes_no(flag_sigma_stable) << "\n";
    os << "flag-delta-stable: " << detail::yes_no(flag_delta_stable) << "\n";
    os << "flag-sigma-prime: " << detail::yes_no(flag_sigma_prime) << "\n";
    os << "flag-delta-image-ideal: " << detail::yes_no(flag_delta_image_ideal) << "\n";
    return os.str();
  }
};

/// Cores for m = start..cap; M is the first exponent after which the chain is
/// constant through cap. Stabilization is reported only when M < cap.
template <Field F>
CoreReport<F> stabilization_M(const SkewDerivation<F>& sd, const Ideal<F>& I, std::optional<unsigned> cap = {},
                              unsigned start = 0) {
  const F& f = sd.field();
  const std::int64_t p = f.characteristic();
  if (p == 0) throw MathError("stabilization_M requires characteristic p");
  CoreReport<F> rep;
  rep.input = I;
  rep.start = start;
  rep.cap = cap ? *cap : default_stabilization_cap(p, sd.algebra.dim());
  if (rep.cap < start) throw MathError("stabilization_M: cap below starting exponent");
  rep.flag_delta_image_ideal = true;
  for (unsigned m = start; m <= rep.cap; ++m) {
    auto pm = pth_power(sd, m);
    auto K = delta_core(pm, I);
    if (!rep.chain.empty() && !K.contains(rep.chain.back())) rep.ascending = false;
    if (!lemma31_check(pm, K)) rep.flag_delta_image_ideal = false;
    rep.chain.push_back(std::move(K));
  }
  std::size_t first = rep.chain.size() - 1;
  while (first > 0 && rep.chain[first - 1] == rep.chain.back()) --first;
  unsigned M = start + static_cast<unsigned>(first);
  rep.final_core = rep.chain[first];
  if (M < rep.cap) rep.M = M;
  // Flags recomputed from scratch on the final core.
  auto pM = pth_power(sd, M);
  const auto& A = sd.algebra;
  rep.flag_ideal = is_ideal(A, rep.final_core);
  rep.flag_sigma_stable = detail::stable_under(f, pM.sigma, rep.final_core);
  rep.flag_delta_stable = detail::stable_under(f, pM.delta, rep.final_core);
  rep.flag_sigma_prime = rep.flag_ideal && rep.flag_sigma_stable && is_sigma_prime(A, rep.final_core, pM.sigma);
  return rep;
}

/// For a sigma-prime I whose delta-core already equals the stable core,
/// whether that core is sigma-prime. Hypothesis failures throw PreconditionError.
template <Field F>
bool prop39_check(const SkewDerivation<F>& sd, const Ideal<F>& I, std::optional<unsigned> cap = {}) {
  const auto& A = sd.algebra;
  if (!detail::stable_under(sd.field(), sd.sigma, I)) throw PreconditionError("hypothesis: ideal is not sigma-stable");
  if (!is_sigma_prime(A, I, sd.sigma)) throw PreconditionError("hypothesis: ideal is not sigma-prime");
  auto rep = stabilization_M(sd, I, cap);
  if (!rep.conclusive()) throw PreconditionError("hypothesis: stabilization inconclusive at cap");
  if (*rep.M != 0) throw PreconditionError("hypothesis: delta-core differs from the stable core (M = " + std::to_string(*rep.M) + ")");
  return is_sigma_prime(A, delta_core(sd, I), sd.sigma);
}

template <Field F>
struct TheoremCReport {
  Ideal<F> input;
  Ideal<F> P;
  struct Step {
    unsigned M = 0;
    std::size_t dim = 0;
  };
  std::vector<Step> steps;
  bool conclusive = false;
  Ideal<F> J;
  unsigned M = 0;
  bool flag_minimal_prime = false;
  bool flag_orbit = false;
  bool flag_delta_stable = false;

  bool verified() const { return conclusive && flag_minimal_prime && flag_orbit && flag_delta_stable; }

  std::string text() const {
    std::ostringstream os;
    os << "input-dim: " << input.dim() << "\n";
    os << "prime-basis: " << P.str() << "\n";
    os << "steps:";
    for (const auto& s : steps) os << " (M=" << s.M << ",dim=" << s.dim << ")";
    os << "\n";
    if (!conclusive) {
      os << "status: inconclusive-at-cap\n";
      return os.str();
    }
    os << "status: stabilized\n";
    os << "M: " << M << "\n";
    os << "J-dim: " << J.dim() << "\n";
    os << "J-basis: " << J.str() << "\n";
    os << "conclusion-i: " << detail::yes_no(flag_minimal_prime) << "\n";
    os << "conclusion-ii: " << detail::yes_no(flag_orbit) << "\n";
    os << "conclusion-iii: " << detail::yes_no(flag_delta_stable) << "\n";
    return os.str();
  }
};

/// For a minimal sigma-prime I in characteristic p with sigma delta = delta sigma:
/// fix the lex-least minimal prime P over I, then iterate
/// I_{j+1} = intersection of the sigma^{p^{M_j}}-orbit of P, where M_j >= M_{j-1}
/// is the stabilization exponent of the cores of I_j, until I_{j+1} = I_j.
/// Returns J = I_j and M = M_j with the three conclusions re-verified.
template <Field F>
TheoremCReport<F> theorem_c_procedure(const SkewDerivation<F>& sd, const Ideal<F>& I,
                                      std::optional<unsigned> cap = {}) {
  const auto& A = sd.algebra;
  const F& f = sd.field();
  const std::int64_t p = f.characteristic();
  if (p == 0) throw MathError("theorem_c_procedure requires characteristic p");
  if (!sd.commutes()) throw MathError("theorem_c_procedure requires sigma delta = delta sigma");
  if (!detail::stable_under(f, sd.sigma, I)) throw MathError("ideal is not sigma-stable");
  if (!is_sigma_prime(A, I, sd.sigma)) throw MathError("ideal is not sigma-prime");
  auto minimal = minimal_sigma_primes(A, sd.sigma, zero_ideal(A));
  if (std::find(minimal.begin(), minimal.end(), I) == minimal.end()) throw MathError("ideal is not a minimal sigma-prime");
  const unsigned c = cap ? *cap : default_stabilization_cap(p, A.dim());

  TheoremCReport<F> rep;
  rep.input = I;
  rep.P = minimal_primes_over(A, I).front();
  Ideal<F> current = I;
  unsigned Mprev = 0;
  while (true) {
    if (Mprev > c) return rep;
    auto st = stabilization_M(sd, current, c, Mprev);
    if (!st.conclusive()) {
      rep.steps.push_back({c, current.dim()});
      return rep;
    }
    unsigned Mj = *st.M;
    rep.steps.push_back({Mj, current.dim()});
    auto sigma_pow = matpow(f, sd.sigma, static_cast<std::uint64_t>(ipow(p, Mj)));
    auto next = intersect_all(A, sigma_orbit(A, rep.P, sigma_pow));
    if (next == current) {
      rep.J = current;
      rep.M = Mj;
      rep.conclusive = true;
      break;
    }
    current = std::move(next);
    Mprev = Mj;
  }
  // Conclusions re-verified from scratch.
  auto pM = pth_power(sd, rep.M);
  auto minimal_M = minimal_sigma_primes(A, pM.sigma, zero_ideal(A));
  rep.flag_minimal_prime = std::find(minimal_M.begin(), minimal_M.end(), rep.J) != minimal_M.end() &&
                           is_sigma_prime(A, rep.J, pM.sigma);
  rep.flag_orbit = intersect_all(A, sigma_orbit(A, rep.J, sd.sigma)) == I;
  rep.flag_delta_stable = detail::stable_under(f, pM.delta, rep.J);
  return rep;
}

template <Field F>
struct Char0Report {
  bool radical_stable = false;
  std::size_t sigma_primes_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Characteristic 0: delta preserves the radical and every minimal sigma-prime.
/// q, when present, must be 1 or a rational scalar that is not a root of unity.
template <Field F>
Char0Report<F> char0_checks(const SkewDerivation<F>& sd, std::size_t orbit_cap = kDefaultOrbitCap) {
  const auto& A = sd.algebra;
  const F& f = sd.field();
  if (f.characteristic() != 0) throw MathError("char0_checks requires characteristic 0");
  if (sd.q) {
    const auto& q = *sd.q;
    auto c = q[0];
    bool scalar = A.scale(c, A.one()) == q;
    if (!scalar) throw PreconditionError("hypothesis: q is not a rational scalar");
    if (c == f.from_int(-1)) throw PreconditionError("hypothesis: q is a nontrivial root of unity");
  }
  Char0Report<F> rep;
  auto N = radical(A);
  rep.radical_stable = detail::stable_under(f, sd.delta, N);
  if (!rep.radical_stable) {
    for (const auto& v : N.basis())
      if (!N.contains(sd.apply_delta(v))) {
        rep.failures.push_back("radical: delta(" + A.to_string(v) + ") = " + A.to_string(sd.apply_delta(v)));
        break;
      }
  }
  for (const auto& I : minimal_sigma_primes(A, sd.sigma, zero_ideal(A), orbit_cap)) {
    ++rep.sigma_primes_checked;
    if (!detail::stable_under(f, sd.delta, I)) rep.failures.push_back("minimal sigma-prime " + I.str() + " not delta-stable");
  }
  return rep;
}

} // namespace skewps
