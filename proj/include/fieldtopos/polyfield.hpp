#pragma once

// Polynomial algorithms over Z/p and the finite fields built from them.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fieldtopos/error.hpp"
#include "fieldtopos/poly.hpp"

namespace fieldtopos {

/// Monic gcd over Z/p; gcd(0, 0) = 0.
inline Poly poly_gcd(const Poly& f, const Poly& g, std::uint64_t p) {
  require_prime(p);
  Poly a = reduce(f, p), b = reduce(g, p);
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

namespace detail {

// f(x) = g(x^p) with every coefficient in F_p, where Frobenius is the identity.
inline Poly pth_root(const Poly& f, std::uint64_t p) {
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f[i]);
  return Poly(std::move(out), p);
}

inline Poly radical(const Poly& f, std::uint64_t p) {
  if (f.degree() <= 0) return Poly::constant(1, p);
  Poly d = derivative(f);
  if (d.is_zero()) return radical(pth_root(f, p), p);
  Poly g = poly_gcd(f, d, p);
  Poly u = monic(f / g);  // factors whose multiplicity is prime to p, each once
  Poly w = g;
  for (Poly t = poly_gcd(w, u, p); t.degree() > 0; t = poly_gcd(w, u, p)) w = w / t;
  w = monic(w);
  if (w.degree() <= 0) return u;
  return monic(u * radical(pth_root(w, p), p));
}

}  // namespace detail

/// Monic product of the distinct irreducible factors of f over Z/p.
inline Poly squarefree_part(const Poly& f, std::uint64_t p) {
  require_prime(p);
  Poly r = monic(reduce(f, p));
  if (r.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "squarefree part of the zero polynomial");
  return detail::radical(r, p);
}

inline bool is_squarefree(const Poly& f, std::uint64_t p) {
  Poly r = monic(reduce(f, p));
  return squarefree_part(r, p) == r;
}

/// Irreducibility over Z/p by the distinct-degree test: f of degree n is
/// irreducible iff gcd(x^(p^k) - x, f) = 1 for every k <= n/2.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  require_prime(p);
  Poly r = reduce(f, p);
  if (r.degree() < 1 || !r.is_monic())
    throw Error(ErrorKind::InvalidPolynomial, "irreducibility test needs a monic non-constant polynomial mod p");
  const int n = r.degree();
  if (n == 1) return true;
  const Poly x = Poly::x(p);
  Poly power = x;
  for (int k = 1; k <= n / 2; ++k) {
    power = powmod(power, p, r);
    if (poly_gcd(power - x, r, p).degree() != 0) return false;
  }
  return true;
}

namespace detail {

// Monic polynomials of exact degree n in (c_{n-1}, ..., c_0) ascending order.
template <class Visit>
void for_each_monic(std::uint64_t p, int n, Visit&& visit) {
  std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  while (true) {
    visit(Poly(c, p));
    int i = 0;  // increment the low end: tuples are compared from the top coefficient
    while (i < n) {
      auto& ci = c[static_cast<std::size_t>(i)];
      if (++ci < static_cast<std::int64_t>(p)) break;
      ci = 0;
      ++i;
    }
    if (i == n) return;
  }
}

}  // namespace detail

namespace detail {

// Shared, growing per-prime enumeration; entries are appended degree by degree.
inline std::vector<Poly> irreducibles_upto(std::uint64_t p, int dmax) {
  struct Entry {
    int degree = 0;
    std::vector<Poly> polys;
  };
  static std::mutex mutex;
  static std::map<std::uint64_t, Entry> cache;
  std::lock_guard lock(mutex);
  Entry& e = cache[p];
  for (int n = e.degree + 1; n <= dmax; ++n) {
    for_each_monic(p, n, [&](const Poly& f) {
      if (is_irreducible(f, p)) e.polys.push_back(f);
    });
    e.degree = n;
  }
  std::vector<Poly> out;
  for (const Poly& f : e.polys) {
    if (f.degree() > dmax) break;
    out.push_back(f);
  }
  return out;
}

}  // namespace detail

/// All monic irreducibles of degree 1..dmax over Z/p, ordered by degree and
/// then by coefficient tuple from the top down.
inline std::vector<Poly> enumerate_irreducibles(std::uint64_t p, int dmax) {
  require_prime(p);
  if (dmax < 1) throw Error(ErrorKind::InvalidPolynomial, "degree bound must be positive");
  return detail::irreducibles_upto(p, dmax);
}

/// Distinct monic irreducible factors over Z/p, by trial division against the
/// irreducible enumeration.
inline std::vector<Poly> factor_distinct(const Poly& f, std::uint64_t p) {
  require_prime(p);
  Poly rest = monic(reduce(f, p));
  if (rest.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factoring the zero polynomial");
  std::vector<Poly> out;
  if (rest.degree() < 1) return out;
  // Candidates up to half the degree suffice; what survives them is irreducible.
  for (const Poly& h : detail::irreducibles_upto(p, rest.degree() / 2)) {
    if (2 * h.degree() > rest.degree()) break;
    bool divides = false;
    while (true) {
      auto [q, r] = divmod(rest, h);
      if (!r.is_zero()) break;
      divides = true;
      rest = q;
    }
    if (divides) out.push_back(h);
    if (rest.degree() < 1) break;
  }
  if (rest.degree() >= 1) out.push_back(rest);
  std::sort(out.begin(), out.end());
  return out;
}

/// Finite field F_{p^n} = F_p[x]/(m) with m the lexicographically least monic
/// irreducible of degree n. Elements are codes sum c_i p^i of their
/// representatives sum c_i x^i; arithmetic runs on log tables.
class FiniteField {
 public:
  using Code = std::uint32_t;

  FiniteField() = default;

  std::uint64_t characteristic() const { return data_->p; }
  int degree() const { return data_->n; }
  std::uint64_t order() const { return data_->q; }
  const Poly& modulus() const { return data_->modulus; }

  Code zero() const { return 0; }
  Code one() const { return 1; }
  /// Class of x.
  Code generator() const { return data_->generator; }

  Code add(Code a, Code b) const {
    if (data_->p == 2) return a ^ b;
    Code out = 0, scale = 1;
    const auto p = static_cast<Code>(data_->p);
    for (int i = 0; i < data_->n; ++i) {
      out += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }
  Code neg(Code a) const {
    if (data_->p == 2) return a;
    Code out = 0, scale = 1;
    const auto p = static_cast<Code>(data_->p);
    for (int i = 0; i < data_->n; ++i) {
      out += ((p - a % p) % p) * scale;
      a /= p;
      scale *= p;
    }
    return out;
  }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    const auto m = data_->q - 1;
    return data_->exp[(data_->log[a] + data_->log[b]) % m];
  }
  Code inv(Code a) const {
    if (a == 0) throw Error(ErrorKind::InvalidModulus, "zero has no inverse");
    const auto m = data_->q - 1;
    return data_->exp[(m - data_->log[a]) % m];
  }
  Code pow(Code a, std::uint64_t e) const {
    if (e == 0) return 1;
    if (a == 0) return 0;
    const auto m = data_->q - 1;
    return data_->exp[static_cast<std::size_t>((static_cast<unsigned __int128>(data_->log[a]) * e) % m)];
  }
  Code frobenius(Code a) const { return pow(a, data_->p); }
  /// Multiplicative order of a nonzero element.
  std::uint64_t mult_order(Code a) const {
    const auto m = data_->q - 1;
    return m / std::gcd(m, static_cast<std::uint64_t>(data_->log[a]));
  }

  Poly rep(Code a) const {
    std::vector<std::int64_t> c;
    for (int i = 0; i < data_->n; ++i) {
      c.push_back(static_cast<std::int64_t>(a % data_->p));
      a /= static_cast<Code>(data_->p);
    }
    return Poly(std::move(c), data_->p);
  }
  Code encode(const Poly& f) const {
    Poly r = reduce(f, data_->p) % data_->modulus;
    Code out = 0, scale = 1;
    for (int i = 0; i < data_->n; ++i) {
      out += static_cast<Code>(r[static_cast<std::size_t>(i)]) * scale;
      scale *= static_cast<Code>(data_->p);
    }
    return out;
  }
  /// Evaluate a polynomial with coefficients mod p at a field element.
  Code evaluate(const Poly& f, Code at) const {
    Code acc = 0;
    for (std::size_t i = f.coeffs().size(); i-- > 0;)
      acc = add(mul(acc, at), static_cast<Code>(mod_reduce(f[i], data_->p)));
    return acc;
  }

  bool operator==(const FiniteField& o) const {
    return data_ == o.data_ || (data_->p == o.data_->p && data_->modulus == o.data_->modulus);
  }
  /// Normal-form order: characteristic, then degree.
  bool operator<(const FiniteField& o) const {
    if (data_->p != o.data_->p) return data_->p < o.data_->p;
    if (data_->n != o.data_->n) return data_->n < o.data_->n;
    return data_->modulus < o.data_->modulus;
  }

  /// `GF(p^n; modulus)`
  std::string to_string() const {
    return "GF(" + std::to_string(data_->p) + "^" + std::to_string(data_->n) + "; " +
           fieldtopos::to_string(data_->modulus) + ")";
  }
  /// `GF(q)` short form used in ring literals.
  std::string short_name() const { return "GF(" + std::to_string(data_->q) + ")"; }

  friend FiniteField make_field(std::uint64_t p, int n);

 private:
  struct Data {
    std::uint64_t p = 0;
    int n = 0;
    std::uint64_t q = 0;
    Poly modulus;
    Code generator = 0;
    std::vector<Code> exp;
    std::vector<std::uint32_t> log;
  };
  std::shared_ptr<const Data> data_;
};

inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 22;

/// The canonical F_{p^n}; repeated calls share one instance.
inline FiniteField make_field(std::uint64_t p, int n) {
  require_prime(p);
  if (n < 1) throw Error(ErrorKind::InvalidPolynomial, "field degree must be positive");
  std::uint64_t q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) throw Error(ErrorKind::TooLarge, "field order exceeds table limit");
  }
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, int>, FiniteField> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find({p, n}); it != cache.end()) return it->second;

  auto data = std::make_shared<FiniteField::Data>();
  data->p = p;
  data->n = n;
  data->q = q;
  detail::for_each_monic(p, n, [&](const Poly& f) {
    if (data->modulus.is_zero() && is_irreducible(f, p)) data->modulus = f;
  });

  auto encode = [&](const Poly& f) {
    FiniteField::Code out = 0, scale = 1;
    for (int i = 0; i < n; ++i) {
      out += static_cast<FiniteField::Code>(f[static_cast<std::size_t>(i)]) * scale;
      scale *= static_cast<FiniteField::Code>(p);
    }
    return out;
  };
  auto decode = [&](FiniteField::Code a) {
    std::vector<std::int64_t> c;
    for (int i = 0; i < n; ++i) {
      c.push_back(static_cast<std::int64_t>(a % p));
      a /= static_cast<FiniteField::Code>(p);
    }
    return Poly(std::move(c), p);
  };
  data->generator = encode(Poly::x(p) % data->modulus);

  // Search for a primitive element and tabulate its powers.
  const std::uint64_t m = q - 1;
  for (FiniteField::Code g = 1; g < q; ++g) {
    Poly gp = decode(g);
    std::vector<FiniteField::Code> powers;
    powers.reserve(m);
    Poly cur = Poly::constant(1, p);
    bool primitive = true;
    for (std::uint64_t k = 0; k < m; ++k) {
      FiniteField::Code c = encode(cur);
      if (k > 0 && c == 1) {
        primitive = false;
        break;
      }
      powers.push_back(c);
      cur = (cur * gp) % data->modulus;
    }
    if (!primitive) continue;
    data->exp = std::move(powers);
    data->log.assign(q, 0);
    for (std::uint64_t k = 0; k < m; ++k) data->log[data->exp[k]] = static_cast<std::uint32_t>(k);
    break;
  }
  FiniteField field;
  field.data_ = std::move(data);
  cache.emplace(std::pair{p, n}, field);
  return field;
}

/// Value-typed element: a field handle plus the element code.
struct FieldElement {
  FiniteField field;
  FiniteField::Code code = 0;

  bool operator==(const FieldElement& o) const { return field == o.field && code == o.code; }
};

/// Field homomorphism F -> G, determined by the image of F's generator.
/// `table` maps every code of F to its image code in G.
struct Embedding {
  FiniteField from;
  FiniteField to;
  FiniteField::Code image = 0;
  std::vector<FiniteField::Code> table;

  FiniteField::Code operator()(FiniteField::Code a) const { return table[a]; }
  bool operator==(const Embedding& o) const { return from == o.from && to == o.to && image == o.image; }
};

inline Embedding make_embedding(const FiniteField& from, const FiniteField& to, FiniteField::Code image) {
  Embedding e{from, to, image, {}};
  e.table.resize(from.order());
  for (FiniteField::Code a = 0; a < from.order(); ++a) e.table[a] = to.evaluate(from.rep(a), image);
  return e;
}

inline Embedding compose(const Embedding& outer, const Embedding& inner) {
  return make_embedding(inner.from, outer.to, outer(inner.image));
}

/// All ring homomorphisms F -> G: one per root of F's modulus in G, found by
/// scanning G.
inline std::vector<Embedding> embeddings(const FiniteField& from, const FiniteField& to) {
  std::vector<Embedding> out;
  if (from.characteristic() != to.characteristic() || to.degree() % from.degree() != 0) return out;
  for (FiniteField::Code y = 0; y < to.order(); ++y)
    if (to.evaluate(from.modulus(), y) == 0) out.push_back(make_embedding(from, to, y));
  return out;
}

/// Minimal polynomial over F_p: the product of (x - conjugate) over the
/// Frobenius orbit of a.
inline Poly min_poly(const FieldElement& a) {
  const FiniteField& F = a.field;
  const auto p = F.characteristic();
  std::vector<FiniteField::Code> orbit{a.code};
  for (auto c = F.frobenius(a.code); c != a.code; c = F.frobenius(c)) orbit.push_back(c);
  // Multiply out in F[x]; coefficients land in the prime field.
  std::vector<FiniteField::Code> prod{F.one()};
  for (auto root : orbit) {
    std::vector<FiniteField::Code> next(prod.size() + 1, 0);
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] = F.add(next[i + 1], prod[i]);
      next[i] = F.add(next[i], F.mul(F.neg(root), prod[i]));
    }
    prod = std::move(next);
  }
  std::vector<std::int64_t> coeffs;
  for (auto c : prod) {
    if (c >= p) throw Error(ErrorKind::InternalError, "minimal polynomial left the prime field");
    coeffs.push_back(static_cast<std::int64_t>(c));
  }
  return Poly(std::move(coeffs), p);
}

/// Least code in F that is a root of the monic irreducible h, from a per-field
/// table of minimal polynomials built on first use.
inline FiniteField::Code least_root(const FiniteField& F, const Poly& h) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, int>, std::map<Poly, FiniteField::Code>> tables;
  std::lock_guard lock(mutex);
  auto [it, fresh] = tables.try_emplace({F.characteristic(), F.degree()});
  auto& table = it->second;
  if (fresh) {
    std::vector<bool> seen(F.order(), false);
    for (FiniteField::Code a = 0; a < F.order(); ++a) {
      if (seen[a]) continue;
      table.emplace(min_poly({F, a}), a);
      for (auto c = a; !seen[c]; c = F.frobenius(c)) seen[c] = true;
    }
  }
  auto found = table.find(monic(reduce(h, F.characteristic())));
  if (found == table.end()) throw Error(ErrorKind::InternalError, to_string(h) + " has no root in " + F.short_name());
  return found->second;
}

/// Parses `GF(q)` or `GF(p^n)` (optionally `GF(p^n; modulus)`, which must
/// match the canonical modulus).
inline FiniteField parse_field(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() < 4 || s.substr(0, 3) != "GF(" || s.back() != ')')
    throw Error(ErrorKind::ParseError, "expected GF(...) in '" + std::string(text) + "'");
  std::string body = s.substr(3, s.size() - 4);
  std::string modulus_text;
  if (auto semi = body.find(';'); semi != std::string::npos) {
    modulus_text = body.substr(semi + 1);
    body.resize(semi);
  }
  std::uint64_t p = 0;
  int n = 1;
  try {
    if (auto caret = body.find('^'); caret != std::string::npos) {
      p = std::stoull(body.substr(0, caret));
      n = std::stoi(body.substr(caret + 1));
    } else {
      std::uint64_t q = std::stoull(body);
      auto primes = prime_divisors(q);
      if (primes.size() != 1) throw Error(ErrorKind::ParseError, std::to_string(q) + " is not a prime power");
      p = primes.front();
      n = 0;
      for (std::uint64_t t = 1; t < q; t *= p) ++n;
    }
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::ParseError, "bad field literal '" + std::string(text) + "'");
  }
  FiniteField F = make_field(p, n);
  if (!modulus_text.empty() && reduce(parse_poly(modulus_text), p) != F.modulus())
    throw Error(ErrorKind::ParseError, "modulus is not the canonical one for " + F.to_string());
  return F;
}

}  // namespace fieldtopos
