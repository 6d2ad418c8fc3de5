#pragma once

// Characteristic and type sets of univariate presented regular rings
//   Z[x] / (n, g_1, ..., g_k)  with  u_1, ..., u_m  and  p_1, ..., p_l  inverted.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fieldtopos/error.hpp"
#include "fieldtopos/polyfield.hpp"

namespace fieldtopos {

using BigInt = boost::multiprecision::cpp_int;

struct Presentation {
  std::int64_t modulus_n = 0;
  std::vector<Poly> relations;
  std::vector<Poly> invert_polys;
  std::set<std::uint64_t> invert_primes;

  bool operator==(const Presentation&) const = default;

  Presentation with_relation(const Poly& a) const {
    Presentation out = *this;
    out.relations.push_back(a);
    return out;
  }
  Presentation with_inverse(const Poly& a) const {
    Presentation out = *this;
    out.invert_polys.push_back(a);
    return out;
  }
};

enum class CertificateKind { FiniteWithoutZero, CofiniteWithZero };

/// Char R restricted to {0} and the primes up to `bound`, with a certificate
/// integer N: in the finite case every member divides N; in the cofinite case
/// every prime not dividing N is a member.
struct CharSet {
  bool contains_zero = false;
  std::set<std::uint64_t> primes_in;
  std::uint64_t bound = 0;
  CertificateKind kind = CertificateKind::FiniteWithoutZero;
  BigInt certificate = 1;

  bool contains(std::uint64_t p) const { return p == 0 ? contains_zero : primes_in.count(p) > 0; }

  /// `{2,3} (finite, certified) [...]` or `{0} ∪ P∖{2} [...]`.
  std::string to_string() const {
    auto list = [](const auto& xs) {
      std::string s;
      for (auto v : xs) s += (s.empty() ? "" : ",") + std::to_string(v);
      return "{" + s + "}";
    };
    std::string out;
    if (kind == CertificateKind::FiniteWithoutZero) {
      out = list(primes_in) + " (finite, certified)";
    } else {
      std::vector<std::uint64_t> missing;
      for (std::uint64_t p = 2; p <= bound; ++p)
        if (is_prime(p) && !primes_in.count(p)) missing.push_back(p);
      out = missing.empty() ? "{0} ∪ P" : "{0} ∪ P∖" + list(missing);
    }
    return out + " [certified by N=" + certificate.str() + ", checked to B=" + std::to_string(bound) + "]";
  }
};

/// Types realized in characteristic p, truncated to degree `degree_bound`
/// when infinitely many occur.
struct TypeSet {
  std::uint64_t p = 0;
  int degree_bound = 0;
  bool contains_infinity = false;
  std::vector<Poly> polys_in;
};

enum class Verdict { Yes, No, UnknownBeyondBound };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "Yes";
    case Verdict::No: return "No";
    case Verdict::UnknownBeyondBound: return "UnknownBeyondBound";
  }
  return "?";
}

struct CoverUnionReport {
  CharSet whole;      // R
  CharSet killed;     // R/(a)
  CharSet inverted;   // R/(aa*-1)
  bool pass = true;
  std::string mismatch;
};

namespace detail {

// Integer polynomials with unbounded coefficients, lowest degree first.
using ZPoly = std::vector<BigInt>;
using Rational = boost::multiprecision::cpp_rational;

inline void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ZPoly to_z(const Poly& f) {
  ZPoly out;
  for (auto c : f.coeffs()) out.emplace_back(c);
  trim(out);
  return out;
}

inline BigInt content(const ZPoly& f) {
  BigInt g = 0;
  for (const auto& c : f) g = gcd(g, abs(c));
  return g;
}

// Primitive with positive leading coefficient; zero stays zero.
inline ZPoly primitive(ZPoly f) {
  trim(f);
  if (f.empty()) return f;
  BigInt c = content(f);
  if (f.back() < 0) c = -c;
  for (auto& v : f) v /= c;
  return f;
}

inline ZPoly derivative(const ZPoly& f) {
  ZPoly out;
  for (std::size_t i = 1; i < f.size(); ++i) out.push_back(f[i] * static_cast<int>(i));
  trim(out);
  return out;
}

// Division over Q. Returns (quotient, remainder) scaled to primitive integer
// polynomials; only the divisibility structure matters to callers.
inline std::pair<ZPoly, ZPoly> q_divmod(const ZPoly& a, const ZPoly& b) {
  std::vector<Rational> r(a.begin(), a.end());
  std::vector<Rational> q(std::max(0, deg(a) - deg(b) + 1));
  for (int i = deg(a); i >= deg(b); --i) {
    Rational c = r[i] / Rational(b.back());
    q[i - deg(b)] = c;
    for (int j = 0; j <= deg(b); ++j) r[i - deg(b) + j] -= c * Rational(b[j]);
  }
  auto scale = [](const std::vector<Rational>& v) {
    BigInt den = 1;
    for (const auto& c : v) den = lcm(den, denominator(c));
    ZPoly out;
    for (const auto& c : v) out.push_back(numerator(c) * (den / denominator(c)));
    return primitive(out);
  };
  r.resize(std::min<std::size_t>(r.size(), b.size() - 1));
  return {scale(q), scale(r)};
}

// Primitive gcd over Q; gcd(0, 0) = 0.
inline ZPoly q_gcd(ZPoly a, ZPoly b) {
  a = primitive(a);
  b = primitive(b);
  while (!b.empty()) {
    ZPoly r = q_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline ZPoly q_squarefree(const ZPoly& f) { return q_divmod(f, q_gcd(f, derivative(f))).first; }

// Sylvester-matrix determinant.
inline BigInt resultant(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return 0;
  const int m = deg(a), n = deg(b), size = m + n;
  if (size == 0) return 1;
  std::vector<std::vector<Rational>> M(size, std::vector<Rational>(size, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) M[i][i + j] = Rational(a[m - j]);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) M[n + i][i + j] = Rational(b[n - j]);
  Rational det = 1;
  for (int c = 0; c < size; ++c) {
    int piv = c;
    while (piv < size && M[piv][c] == 0) ++piv;
    if (piv == size) return 0;
    if (piv != c) {
      std::swap(M[piv], M[c]);
      det = -det;
    }
    det *= M[c][c];
    for (int r = c + 1; r < size; ++r) {
      if (M[r][c] == 0) continue;
      Rational f = M[r][c] / M[c][c];
      for (int k = c; k < size; ++k) M[r][k] -= f * M[c][k];
    }
  }
  return numerator(det);
}

inline bool literal_zero(const Poly& f) { return f.is_zero(); }

inline std::vector<std::uint64_t> primes_upto(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= bound; ++p)
    if (is_prime(p)) out.push_back(p);
  return out;
}

// gcd of the reduced relations; zero when every relation vanishes mod p.
inline Poly effective_relation(const Presentation& pres, std::uint64_t p) {
  Poly g = Poly::zero(p);
  for (const Poly& r : pres.relations) g = poly_gcd(g, reduce(r, p), p);
  return g;
}

// The squarefree rational gcd of the relations with every root shared with
// some inverted polynomial removed. Empty when every relation is zero.
inline ZPoly stripped_residue(const Presentation& pres) {
  ZPoly g;
  for (const Poly& r : pres.relations) g = q_gcd(g, to_z(r));
  if (g.empty()) return g;
  g = primitive(q_squarefree(g));
  for (const Poly& u : pres.invert_polys) {
    ZPoly uz = to_z(u);
    if (uz.empty()) return ZPoly{BigInt(1)};
    g = q_divmod(g, q_gcd(g, uz)).first;
  }
  return primitive(g);
}

// Iterated resultant bound: for p not dividing it, the reductions of the
// relations have gcd equal to the reduction of their rational gcd.
inline BigInt relation_gcd_bound(const Presentation& pres) {
  BigInt bound = 1;
  ZPoly prev;
  for (const Poly& r : pres.relations) {
    ZPoly g = to_z(r);
    if (g.empty()) continue;
    ZPoly pp = primitive(g);
    BigInt cont = content(g);
    if (prev.empty()) {
      bound *= cont;
      prev = pp;
      continue;
    }
    ZPoly next = q_gcd(prev, pp);
    ZPoly a = q_divmod(prev, next).first;
    ZPoly b = q_divmod(pp, next).first;
    bound *= cont * abs(resultant(a, b));
    prev = std::move(next);
  }
  return bound;
}

}  // namespace detail

/// Whether R/(p) is nondegenerate, i.e. some field of characteristic p is a
/// quotient of R.
inline bool member_char_p(const Presentation& pres, std::uint64_t p) {
  require_prime(p);
  if (pres.invert_primes.count(p)) return false;
  if (pres.modulus_n != 0 && mod_reduce(pres.modulus_n, p) != 0) return false;
  Poly g = detail::effective_relation(pres, p);
  if (g.is_zero()) {
    // x can be transcendental
    return std::none_of(pres.invert_polys.begin(), pres.invert_polys.end(),
                        [&](const Poly& u) { return reduce(u, p).is_zero(); });
  }
  if (g.degree() == 0) return false;
  for (const Poly& h : factor_distinct(g, p)) {
    bool hit = std::any_of(pres.invert_polys.begin(), pres.invert_polys.end(),
                           [&](const Poly& u) { return (reduce(u, p) % h).is_zero(); });
    if (!hit) return true;
  }
  return false;
}

inline bool member_char_zero(const Presentation& pres) {
  if (pres.modulus_n != 0) return false;
  if (std::any_of(pres.invert_polys.begin(), pres.invert_polys.end(), detail::literal_zero)) return false;
  detail::ZPoly r = detail::stripped_residue(pres);
  return r.empty() || detail::deg(r) >= 1;
}

/// Certificate integer for the presentation (see CharSet).
inline std::pair<CertificateKind, BigInt> char_certificate(const Presentation& pres) {
  BigInt primes = 1;
  for (auto p : pres.invert_primes) primes *= p;
  if (member_char_zero(pres)) {
    detail::ZPoly r = detail::stripped_residue(pres);
    BigInt N = primes;
    if (r.empty()) {
      for (const Poly& u : pres.invert_polys) N *= detail::content(detail::to_z(u));
    } else {
      // |Res(r, r')| = |lc(r) disc(r)|
      N *= abs(detail::resultant(r, detail::derivative(r)));
      for (const Poly& u : pres.invert_polys) N *= abs(detail::resultant(r, detail::to_z(u)));
    }
    return {CertificateKind::CofiniteWithZero, N};
  }
  if (std::any_of(pres.invert_polys.begin(), pres.invert_polys.end(), detail::literal_zero))
    return {CertificateKind::FiniteWithoutZero, 1};
  if (pres.modulus_n != 0) return {CertificateKind::FiniteWithoutZero, abs(BigInt(pres.modulus_n))};
  return {CertificateKind::FiniteWithoutZero, detail::relation_gcd_bound(pres)};
}

/// Char R on {0} and primes up to `bound`, with the certificate checked at
/// every one of those primes.
inline CharSet char_set(const Presentation& pres, std::uint64_t bound) {
  if (bound < 2) throw Error(ErrorKind::InvalidModulus, "prime bound must be at least 2");
  CharSet out;
  out.bound = bound;
  out.contains_zero = member_char_zero(pres);
  std::tie(out.kind, out.certificate) = char_certificate(pres);
  if (out.certificate == 0) throw Error(ErrorKind::InternalError, "zero certificate");
  for (auto p : detail::primes_upto(bound)) {
    const bool in = member_char_p(pres, p);
    if (in) out.primes_in.insert(p);
    const bool divides = out.certificate % p == 0;
    const bool violated = out.kind == CertificateKind::FiniteWithoutZero ? (in && !divides) : (!in && !divides);
    if (violated)
      throw Error(ErrorKind::DichotomyViolation,
                  "certificate N=" + out.certificate.str() + " fails at p=" + std::to_string(p));
  }
  return out;
}

inline TypeSet type_set(const Presentation& pres, std::uint64_t p, int degree_bound) {
  if (!member_char_p(pres, p)) throw Error(ErrorKind::EmptyFiber, "R/(" + std::to_string(p) + ") is degenerate");
  TypeSet out;
  out.p = p;
  out.degree_bound = degree_bound;
  auto allowed = [&](const Poly& h) {
    return std::none_of(pres.invert_polys.begin(), pres.invert_polys.end(),
                        [&](const Poly& u) { return (reduce(u, p) % h).is_zero(); });
  };
  Poly g = detail::effective_relation(pres, p);
  if (g.is_zero()) {
    out.contains_infinity = true;
    for (const Poly& h : enumerate_irreducibles(p, degree_bound))
      if (allowed(h)) out.polys_in.push_back(h);
  } else {
    for (const Poly& h : factor_distinct(g, p))
      if (allowed(h)) out.polys_in.push_back(h);
  }
  return out;
}

/// Char R = Char R/(a) ∪ Char R/(aa*-1) on {0} and the primes up to `bound`.
inline CoverUnionReport cover_union_check(const Presentation& pres, const Poly& a, std::uint64_t bound) {
  CoverUnionReport rep{char_set(pres, bound), char_set(pres.with_relation(a), bound),
                       char_set(pres.with_inverse(a), bound)};
  std::vector<std::uint64_t> points{0};
  for (auto p : detail::primes_upto(bound)) points.push_back(p);
  for (auto p : points) {
    if (rep.whole.contains(p) != (rep.killed.contains(p) || rep.inverted.contains(p))) {
      rep.pass = false;
      rep.mismatch = "characteristic " + std::to_string(p);
      break;
    }
  }
  return rep;
}

/// Whether Char R ⊆ A, where A is a finite set of primes plus possibly 0.
inline Verdict t_sieve_member(const Presentation& pres, const std::set<std::uint64_t>& A, std::uint64_t bound) {
  CharSet cs = char_set(pres, bound);
  // A cofinite set is never inside a finite one.
  if (cs.kind == CertificateKind::CofiniteWithZero) return Verdict::No;
  BigInt rest = abs(cs.certificate);
  constexpr std::uint64_t kTrialLimit = 1'000'000;
  for (std::uint64_t p = 2; p <= kTrialLimit && rest > 1; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (member_char_p(pres, p) && !A.count(p)) return Verdict::No;
  }
  return rest == 1 ? Verdict::Yes : Verdict::UnknownBeyondBound;
}

}  // namespace fieldtopos
