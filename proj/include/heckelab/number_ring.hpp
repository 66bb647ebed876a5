#pragma once

// Exact arithmetic in the rings of integers of Q and Q(i): elements,
// integral ideals with canonical generators, factorization, norms,
// multiplicative functions, ideal enumeration, residue rings and their
// unit groups. Both rings are Euclidean PIDs, which this module leans on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckelab {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

enum class FieldId { Q, Qi };

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ring element a + b*i (b = 0 identically over Q).
struct Elem {
  i64 a = 0;
  i64 b = 0;

  friend Elem operator+(Elem x, Elem y) { return {x.a + y.a, x.b + y.b}; }
  friend Elem operator-(Elem x, Elem y) { return {x.a - y.a, x.b - y.b}; }
  friend Elem operator-(Elem x) { return {-x.a, -x.b}; }
  friend Elem operator*(Elem x, Elem y) {
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
  }
  friend bool operator==(Elem x, Elem y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(Elem x, Elem y) { return !(x == y); }
  friend bool operator<(Elem x, Elem y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  }
  Elem conj() const { return {a, -b}; }
  bool is_zero() const { return a == 0 && b == 0; }
};

inline i128 norm128(Elem x) {
  return i128(x.a) * x.a + i128(x.b) * x.b;
}

inline u64 norm_u64(Elem x) {
  i128 n = norm128(x);
  return static_cast<u64>(n);
}

inline std::string to_string(Elem x) {
  std::string s = std::to_string(x.a);
  if (x.b != 0) {
    s += (x.b > 0 ? "+" : "-") + std::to_string(x.b < 0 ? -x.b : x.b) + "i";
  }
  return s;
}

// Exact quotient x / y; throws if y does not divide x in Z[i].
inline Elem div_exact(Elem x, Elem y) {
  i128 n = norm128(y);
  if (n == 0) throw domain_error("division by zero element");
  Elem num = x * y.conj();
  i128 qa = i128(num.a), qb = i128(num.b);
  if (qa % n != 0 || qb % n != 0) throw domain_error("non-exact division");
  return {i64(qa / n), i64(qb / n)};
}

inline bool divides(Elem y, Elem x) {
  i128 n = norm128(y);
  if (n == 0) return x.is_zero();
  Elem num = x * y.conj();
  return i128(num.a) % n == 0 && i128(num.b) % n == 0;
}

// Nearest-integer division: q minimizing N(x - q*y). Makes Z and Z[i]
// Euclidean with respect to the norm.
inline Elem div_round(Elem x, Elem y) {
  i128 n = norm128(y);
  Elem num = x * y.conj();
  auto rdiv = [](i128 p, i128 q) -> i64 {
    // round(p/q), q > 0
    i128 half = q / 2;
    if (p >= 0) return i64((p + half) / q);
    return -i64((-p + half) / q);
  };
  return {rdiv(num.a, n), rdiv(num.b, n)};
}

inline Elem gcd_elem(Elem x, Elem y) {
  while (!y.is_zero()) {
    Elem q = div_round(x, y);
    Elem r = x - q * y;
    x = y;
    y = r;
  }
  return x;
}

// Extended gcd: returns g and u,v with u*x + v*y = g.
inline void ext_gcd_elem(Elem x, Elem y, Elem& g, Elem& u, Elem& v) {
  Elem r0 = x, r1 = y;
  Elem s0{1, 0}, s1{0, 0}, t0{0, 0}, t1{1, 0};
  while (!r1.is_zero()) {
    Elem q = div_round(r0, r1);
    Elem r2 = r0 - q * r1;
    Elem s2 = s0 - q * s1;
    Elem t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    s0 = s1; s1 = s2;
    t0 = t1; t1 = t2;
  }
  g = r0; u = s0; v = t0;
}

inline bool is_unit(Elem x) { return norm128(x) == 1; }

// A fraction num/den of ring elements, kept with gcd(num, den) a unit.
struct Frac {
  Elem num{1, 0};
  Elem den{1, 0};

  static Frac of(Elem n, Elem d) {
    if (d.is_zero()) throw domain_error("fraction with zero denominator");
    Elem g = gcd_elem(n, d);
    if (!g.is_zero() && !is_unit(g)) {
      n = div_exact(n, g);
      d = div_exact(d, g);
    }
    return Frac{n, d};
  }
  Frac times(Elem x) const { return of(num * x, den); }
  bool is_integral() const { return is_unit(den); }
};

// Canonical generator convention:
//   Q    : the positive generator.
//   Q(i) : the associate with a > 0, b >= 0 (argument in [0, pi/2)).
inline Elem canonicalize(FieldId f, Elem x) {
  if (x.is_zero()) return x;
  if (f == FieldId::Q) {
    if (x.b != 0) throw domain_error("nonreal element over Q");
    return {x.a < 0 ? -x.a : x.a, 0};
  }
  for (int k = 0; k < 4; ++k) {
    if (x.a > 0 && x.b >= 0) return x;
    x = Elem{0, 1} * x;  // multiply by i
  }
  throw domain_error("canonicalization failed");
}

// An integral ideal in a class-number-one ring: canonical generator + norm.
struct Ideal {
  Elem gen{1, 0};
  u64 norm = 1;

  friend bool operator==(const Ideal& x, const Ideal& y) {
    return x.gen == y.gen;
  }
  friend bool operator!=(const Ideal& x, const Ideal& y) { return !(x == y); }
  friend bool operator<(const Ideal& x, const Ideal& y) {
    if (x.norm != y.norm) return x.norm < y.norm;
    return x.gen < y.gen;
  }
  bool is_unit_ideal() const { return norm == 1; }
  bool is_zero() const { return gen.is_zero(); }
};

struct PrimeIdeal {
  Ideal ideal;
  int residue_degree = 1;
  u64 rational_prime = 0;
};

using Factorization = std::vector<std::pair<PrimeIdeal, int>>;

class FieldSpec;

const FieldSpec& field(FieldId id);

// A supported base field together with its analytic constants.
class FieldSpec {
 public:
  FieldId id;
  int d;        // extension degree
  int r1, r2;   // real / complex places
  i64 d_k;      // discriminant
  double A_k;   // (2^r1 |d_k| (2pi)^-d)^(1/2)
  double alpha_k;            // residue of the completed zeta at s = 1
  double zeta_residue;       // residue of zeta_k itself at s = 1
  double zeta_zero_value;    // zeta_k(0) = -hR/w
  std::vector<Elem> units;   // torsion units

  // Absolute norm of an element: |a| over Q, a^2 + b^2 over Q(i).
  u64 elem_norm(Elem x) const {
    if (id == FieldId::Q) return u64(x.a < 0 ? -x.a : x.a);
    return norm_u64(x);
  }

  Ideal ideal(Elem g) const {
    if (g.is_zero()) return Ideal{Elem{0, 0}, 0};
    Elem c = canonicalize(id, g);
    return Ideal{c, elem_norm(c)};
  }
  Ideal ideal_i64(i64 a, i64 b = 0) const { return ideal(Elem{a, b}); }

  Ideal mul(const Ideal& x, const Ideal& y) const {
    return ideal(x.gen * y.gen);
  }
  Ideal gcd(const Ideal& x, const Ideal& y) const {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    return ideal(gcd_elem(x.gen, y.gen));
  }
  bool coprime(const Ideal& x, const Ideal& y) const {
    return gcd(x, y).is_unit_ideal();
  }
  bool divides_ideal(const Ideal& x, const Ideal& y) const {
    // x | y
    return divides(x.gen, y.gen);
  }
  Ideal div(const Ideal& x, const Ideal& y) const {
    return ideal(div_exact(x.gen, y.gen));
  }
  Ideal pow(const Ideal& x, int e) const {
    Ideal r = ideal_i64(1);
    for (int i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }

  // Number of integral ideals of the given norm.
  int ideal_count(u64 n) const {
    if (n == 0) return 0;
    if (id == FieldId::Q) return 1;
    // multiplicative: sum over d | n of chi_{-4}(d)
    int c = 1;
    u64 m = n;
    for (u64 p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      int e = 0;
      while (m % p == 0) { m /= p; ++e; }
      if (p == 2) continue;              // ramified: one ideal each level
      if (p % 4 == 1) c *= (e + 1);      // split
      else if (e % 2 == 1) return 0;     // inert, odd exponent
    }
    if (m > 1) {
      if (m % 4 == 3) return 0;          // inert prime, exponent 1
      if (m % 4 == 1) c *= 2;
    }
    return c;
  }

  std::vector<Ideal> ideals_of_norm(u64 n) const;

  Factorization factor(const Ideal& a) const;

  const FieldSpec* self() const { return this; }

  explicit FieldSpec(FieldId which);

 private:
  mutable std::map<Elem, Factorization> factor_cache_;
  mutable std::mutex cache_mu_;
  Factorization factor_uncached(const Ideal& a) const;
};

namespace detail {

inline std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) { n /= p; ++e; }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline u64 powmod_u64(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = u64((unsigned __int128)r * b % m);
    b = u64((unsigned __int128)b * b % m);
    e >>= 1;
  }
  return r;
}

// Square root of -1 mod p for p = 1 mod 4.
inline u64 sqrt_minus_one(u64 p) {
  for (u64 g = 2; g < p; ++g) {
    if (powmod_u64(g, (p - 1) / 2, p) == p - 1) {
      return powmod_u64(g, (p - 1) / 4, p);
    }
  }
  throw domain_error("no quadratic nonresidue found");
}

}  // namespace detail

inline Factorization FieldSpec::factor_uncached(const Ideal& a) const {
  if (a.is_zero()) throw domain_error("factor of zero ideal");
  Factorization out;
  auto push = [&](Elem prime_gen, int rdeg, u64 p, int e) {
    if (e <= 0) return;
    Ideal pi = ideal(prime_gen);
    out.push_back({PrimeIdeal{pi, rdeg, p}, e});
  };
  if (id == FieldId::Q) {
    for (auto [p, e] : detail::factor_u64(a.norm)) {
      push(Elem{i64(p), 0}, 1, p, e);
    }
  } else {
    Elem rest = a.gen;
    for (auto [p, e] : detail::factor_u64(a.norm)) {
      if (p == 2) {
        push(Elem{1, 1}, 1, 2, e);
        for (int i = 0; i < e; ++i) rest = div_exact(rest, Elem{1, 1});
      } else if (p % 4 == 3) {
        push(Elem{i64(p), 0}, 2, p, e / 2);
        for (int i = 0; i < e / 2; ++i) rest = div_exact(rest, Elem{i64(p), 0});
      } else {
        u64 r = detail::sqrt_minus_one(p);
        Elem pi = gcd_elem(Elem{i64(p), 0}, Elem{i64(r), -1});
        pi = canonicalize(id, pi);
        Elem pib = canonicalize(id, pi.conj());
        int e1 = 0, e2 = 0;
        while (divides(pi, rest)) { rest = div_exact(rest, pi); ++e1; }
        while (divides(pib, rest)) { rest = div_exact(rest, pib); ++e2; }
        if (Ideal{pib, p} < Ideal{pi, p}) {
          push(pib, 1, p, e2);
          push(pi, 1, p, e1);
        } else {
          push(pi, 1, p, e1);
          push(pib, 1, p, e2);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.first.ideal < y.first.ideal;
  });
  return out;
}

inline Factorization FieldSpec::factor(const Ideal& a) const {
  if (a.is_zero()) throw domain_error("factor of zero ideal");
  {
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = factor_cache_.find(a.gen);
    if (it != factor_cache_.end()) return it->second;
  }
  Factorization f = factor_uncached(a);
  std::lock_guard<std::mutex> lk(cache_mu_);
  factor_cache_.emplace(a.gen, f);
  return f;
}

inline std::vector<Ideal> FieldSpec::ideals_of_norm(u64 n) const {
  std::vector<Ideal> out;
  if (n == 0) return out;
  if (id == FieldId::Q) {
    out.push_back(ideal_i64(i64(n)));
    return out;
  }
  for (i64 a = 1; u64(a) * a <= n; ++a) {
    u64 rest = n - u64(a) * a;
    i64 b = i64(std::sqrt(double(rest)));
    while (u64(b) * b < rest) ++b;
    while (b > 0 && u64(b) * b > rest) --b;
    if (u64(b) * b == rest) {
      Elem g{a, b};
      Elem c = canonicalize(id, g);
      Ideal id_ = Ideal{c, n};
      if (std::find(out.begin(), out.end(), id_) == out.end()) out.push_back(id_);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline FieldSpec::FieldSpec(FieldId which) {
  const double pi = 3.14159265358979323846264338328;
  const double two_pi = 2.0 * pi;
  id = which;
  if (which == FieldId::Q) {
    d = 1; r1 = 1; r2 = 0; d_k = 1;
    A_k = std::sqrt(2.0 * 1.0 / two_pi);
    zeta_residue = 1.0;                    // class number formula
    alpha_k = A_k * std::sqrt(pi) * zeta_residue;
    zeta_zero_value = -0.5;                // -hR/w = -1/2
    units = {Elem{1, 0}, Elem{-1, 0}};
  } else {
    d = 2; r1 = 0; r2 = 1; d_k = -4;
    A_k = std::sqrt(4.0 / (two_pi * two_pi));  // = 1/pi
    zeta_residue = pi / 4.0;               // 2pi h / (w sqrt|d|) = pi/4
    alpha_k = A_k * zeta_residue;          // = 1/4
    zeta_zero_value = -0.25;               // -hR/w = -1/4
    units = {Elem{1, 0}, Elem{0, 1}, Elem{-1, 0}, Elem{0, -1}};
  }
}

inline const FieldSpec& field(FieldId id) {
  static FieldSpec q(FieldId::Q);
  static FieldSpec qi(FieldId::Qi);
  return id == FieldId::Q ? q : qi;
}

inline FieldId parse_field(const std::string& s) {
  if (s == "Q" || s == "q") return FieldId::Q;
  if (s == "Qi" || s == "qi" || s == "Q(i)") return FieldId::Qi;
  throw config_error("unknown field id: " + s);
}

inline std::string field_name(FieldId f) { return f == FieldId::Q ? "Q" : "Qi"; }

// ---------------------------------------------------------------------------
// Derived ideal functions.

inline Ideal recompose(const FieldSpec& f, const Factorization& fac) {
  Ideal r = f.ideal_i64(1);
  for (const auto& [p, e] : fac) r = f.mul(r, f.pow(p.ideal, e));
  return r;
}

inline bool is_squarefree(const FieldSpec& f, const Ideal& a) {
  if (a.is_zero()) throw domain_error("squarefree test of zero ideal");
  for (const auto& [p, e] : f.factor(a)) {
    if (e > 1) return false;
  }
  return true;
}

// Norm of the squarefree part of a that is coprime to c: write
// a = a1 a2 a3^2 with a1 | rad(c)-part, a2 squarefree coprime to c.
inline u64 squarefree_part_coprime(const FieldSpec& f, const Ideal& a,
                                   const Ideal& c) {
  if (a.is_zero() || c.is_zero()) throw domain_error("zero ideal");
  u64 s = 1;
  for (const auto& [p, e] : f.factor(a)) {
    if (e % 2 == 0) continue;
    if (f.divides_ideal(p.ideal, c)) continue;
    s *= p.ideal.norm;
  }
  return s;
}

// (mu, phi, tau) of an integral ideal.
struct MultFuncs {
  int mu;
  u64 phi;
  u64 tau;
};

inline MultFuncs multiplicative_funcs(const FieldSpec& f, const Ideal& a) {
  if (a.is_zero()) throw domain_error("zero ideal");
  MultFuncs m{1, 1, 1};
  for (const auto& [p, e] : f.factor(a)) {
    u64 q = p.ideal.norm;
    if (e == 1) m.mu = -m.mu;
    else m.mu = 0;
    u64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= q;
    m.phi *= pe - pe / q;
    m.tau *= u64(e + 1);
  }
  return m;
}

struct IdealFilter {
  bool squarefree = false;
  std::optional<Ideal> coprime_to;
};

// Ideals with norm in (norm_lo, norm_hi] passing the filter, sorted.
inline std::vector<Ideal> enumerate_ideals(const FieldSpec& f, u64 norm_lo,
                                           u64 norm_hi,
                                           const IdealFilter& filter = {}) {
  if (norm_lo > norm_hi) throw domain_error("empty-inverted norm range");
  std::vector<Ideal> out;
  for (u64 n = norm_lo + 1; n <= norm_hi; ++n) {
    if (f.ideal_count(n) == 0) continue;
    for (const Ideal& a : f.ideals_of_norm(n)) {
      if (filter.coprime_to && !f.coprime(a, *filter.coprime_to)) continue;
      if (filter.squarefree && !is_squarefree(f, a)) continue;
      out.push_back(a);
    }
  }
  return out;
}

inline std::vector<Ideal> divisors(const FieldSpec& f, const Ideal& a) {
  Factorization fac = f.factor(a);
  std::vector<Ideal> out{f.ideal_i64(1)};
  for (const auto& [p, e] : fac) {
    size_t base = out.size();
    Ideal pk = f.ideal_i64(1);
    for (int i = 1; i <= e; ++i) {
      pk = f.mul(pk, p.ideal);
      for (size_t j = 0; j < base; ++j) out.push_back(f.mul(out[j], pk));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Ideal radical(const FieldSpec& f, const Ideal& a) {
  Ideal r = f.ideal_i64(1);
  for (const auto& [p, e] : f.factor(a)) r = f.mul(r, p.ideal);
  return r;
}

// ---------------------------------------------------------------------------
// Residue ring O/m with a canonical box of representatives.
//
// The lattice of m inside Z^2 (coords of a + bi) is put in row HNF
// [[p, 0], [q, r]]; residues are represented by (x, y), 0 <= x < p,
// 0 <= y < r. Over Q this degenerates to x in [0, m).

class ResidueBox {
 public:
  ResidueBox(const FieldSpec& f, const Ideal& m) : f_(&f), m_(m) {
    if (m.is_zero() || m.norm == 0) throw domain_error("residue box mod zero");
    if (f.id == FieldId::Q) {
      p_ = i64(m.norm); q_ = 0; r_ = 1;
    } else {
      // rows: m.gen and i*m.gen as (re, im) vectors
      i64 a = m_.gen.a, b = m_.gen.b;
      i64 r1a = a, r1b = b;           // m
      i64 r2a = -b, r2b = a;          // i*m
      // reduce second coordinates to (g, 0) shape by integer row ops
      while (r2b != 0) {
        i64 k = r1b / r2b;
        i64 na = r1a - k * r2a, nb = r1b - k * r2b;
        r1a = r2a; r1b = r2b;
        r2a = na; r2b = nb;
      }
      // now r2 = (r2a, 0); r1 = (r1a, r1b) with r1b = +-gcd of im parts
      if (r1b < 0) { r1a = -r1a; r1b = -r1b; }
      if (r2a < 0) { r2a = -r2a; }
      p_ = r2a; r_ = r1b; q_ = ((r1a % p_) + p_) % p_;
      if (i128(p_) * r_ != i128(m_.norm)) throw domain_error("HNF mismatch");
    }
  }

  u64 size() const { return u64(p_) * u64(r_); }

  // Canonical representative of x mod m.
  Elem reduce(Elem x) const {
    if (f_->id == FieldId::Q) {
      i64 v = x.a % p_;
      if (v < 0) v += p_;
      return {v, 0};
    }
    i64 ky = (x.b % r_ + r_) % r_;
    i64 t = (x.b - ky) / r_;
    i64 xx = x.a - t * q_;
    i64 kx = (xx % p_ + p_) % p_;
    return {kx, ky};
  }

  // Enumerates all residues (box order).
  template <typename F>
  void for_each(F&& fn) const {
    for (i64 y = 0; y < r_; ++y) {
      for (i64 x = 0; x < p_; ++x) {
        fn(Elem{x, y});
      }
    }
  }

  bool is_coprime(Elem x) const {
    Elem g = gcd_elem(x, m_.gen);
    return is_unit(g);
  }

  Elem mul(Elem x, Elem y) const { return reduce(x * y); }

  Elem inverse(Elem x) const {
    Elem g, u, v;
    ext_gcd_elem(x, m_.gen, g, u, v);
    if (!is_unit(g)) throw domain_error("inverse of non-unit residue");
    // u * x = g, so x^{-1} = conj-unit * u with g * gbar = 1
    Elem ginv = g.conj();  // for units, inverse = conjugate
    return reduce(u * ginv);
  }

  Elem pow(Elem x, u64 e) const {
    Elem r{1, 0};
    r = reduce(r);
    x = reduce(x);
    while (e) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }

  const Ideal& modulus() const { return m_; }
  const FieldSpec& spec() const { return *f_; }

 private:
  const FieldSpec* f_;
  Ideal m_;
  i64 p_ = 1, q_ = 0, r_ = 1;
};

// CRT lift: x = a mod m1, x = b mod m2, gcd(m1, m2) = (1).
inline Elem crt(const FieldSpec& f, Elem a, const Ideal& m1, Elem b,
                const Ideal& m2) {
  Elem g, u, v;
  ext_gcd_elem(m1.gen, m2.gen, g, u, v);
  if (!is_unit(g)) throw domain_error("crt with non-coprime moduli");
  Elem ginv = g.conj();
  // x = a + m1 * u * ginv * (b - a)  (mod m1 m2)
  ResidueBox box(f, f.mul(m1, m2));
  Elem x = a + m1.gen * box.reduce(u * ginv * (b - a));
  return box.reduce(x);
}

// ---------------------------------------------------------------------------
// Finite abelian groups given by explicit element lists.
//
// Elements are indices into `elems`. A polycyclic generating sequence is
// found greedily; every element gets an exponent vector (discrete log).

struct AbGroup {
  std::vector<Elem> elems;                 // element representatives
  std::vector<size_t> gens;                // indices into elems
  std::vector<u64> rel_orders;             // relative order of each generator
  std::vector<std::vector<u64>> dlog;      // exponent vector per element
  std::map<Elem, size_t> index;

  u64 order() const { return elems.size(); }

  size_t index_of(Elem e) const {
    auto it = index.find(e);
    if (it == index.end()) throw domain_error("element not in group");
    return it->second;
  }
};

// Builds group structure from an identity, a list of elements and a
// multiplication map. mul must be closed on the list.
template <typename Mul>
inline AbGroup build_ab_group(const std::vector<Elem>& elements, Elem identity,
                              Mul&& mul) {
  AbGroup g;
  g.elems = elements;
  std::sort(g.elems.begin(), g.elems.end());
  for (size_t i = 0; i < g.elems.size(); ++i) g.index[g.elems[i]] = i;

  size_t n = g.elems.size();
  std::vector<char> in_span(n, false);
  std::vector<std::vector<u64>> vec(n);
  size_t id_idx = g.index.at(identity);
  in_span[id_idx] = true;
  vec[id_idx] = {};
  std::vector<size_t> span{id_idx};

  for (size_t cand = 0; cand < n; ++cand) {
    if (in_span[cand]) continue;
    // relative order: least k >= 1 with cand^k in current span
    Elem ck = g.elems[cand];
    u64 k = 1;
    while (!in_span[g.index.at(ck)]) {
      ck = mul(ck, g.elems[cand]);
      ++k;
    }
    size_t gen_pos = g.gens.size();
    g.gens.push_back(cand);
    g.rel_orders.push_back(k);
    // extend span: old elements times cand^j, j in [1, k)
    std::vector<size_t> old_span = span;
    Elem cpow = identity;
    for (u64 j = 1; j < k; ++j) {
      cpow = mul(cpow, g.elems[cand]);
      for (size_t s : old_span) {
        Elem prod = mul(g.elems[s], cpow);
        size_t pi = g.index.at(prod);
        if (!in_span[pi]) {
          in_span[pi] = true;
          std::vector<u64> v = vec[s];
          v.resize(gen_pos + 1, 0);
          v[gen_pos] = j;
          vec[pi] = v;
          span.push_back(pi);
        }
      }
    }
    if (span.size() == n) break;
  }
  for (auto& v : vec) v.resize(g.gens.size(), 0);
  g.dlog = std::move(vec);
  return g;
}

// Unit group of O/m as explicit generator/order data with discrete logs.
inline AbGroup residue_ring_units(const FieldSpec& f, const Ideal& m,
                                  u64 cap = 1u << 20) {
  if (m.norm <= 1) {
    // trivial group
    AbGroup g;
    g.elems = {Elem{0, 0}};
    g.index[Elem{0, 0}] = 0;
    g.dlog = {{}};
    return g;
  }
  ResidueBox box(f, m);
  if (box.size() > cap) throw config_error("residue ring too large");
  std::vector<Elem> units;
  box.for_each([&](Elem e) {
    if (box.is_coprime(e)) units.push_back(e);
  });
  Elem one = box.reduce(Elem{1, 0});
  return build_ab_group(units, one,
                        [&](Elem x, Elem y) { return box.mul(x, y); });
}

}  // namespace heckelab
