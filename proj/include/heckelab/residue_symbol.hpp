#pragma once

// n-th power residue symbols computed by Euler's criterion at prime ideals
// and extended multiplicatively, plus the classical Jacobi symbol over Q
// (reciprocity-based, serving as an independent fast path and oracle).

#include <cmath>
#include <complex>
#include <numeric>

#include "heckelab/number_ring.hpp"

namespace heckelab {

// Element of mu_n U {0}: value e^{2 pi i k / n}, or ZERO.
struct RootOfUnity {
  int n = 1;
  int k = 0;
  bool zero = false;

  static RootOfUnity zero_value(int n) { return {n, 0, true}; }
  static RootOfUnity one(int n = 1) { return {n, 0, false}; }

  bool is_zero() const { return zero; }
  bool is_one() const { return !zero && k % n == 0; }

  RootOfUnity conj() const {
    if (zero) return *this;
    return {n, (n - k % n) % n, false};
  }

  friend RootOfUnity operator*(const RootOfUnity& x, const RootOfUnity& y) {
    int m = std::lcm(x.n, y.n);
    if (x.zero || y.zero) return RootOfUnity::zero_value(m);
    int kk = (x.k * (m / x.n) + y.k * (m / y.n)) % m;
    return {m, kk, false};
  }
  friend bool operator==(const RootOfUnity& x, const RootOfUnity& y) {
    if (x.zero != y.zero) return false;
    if (x.zero) return true;
    int m = std::lcm(x.n, y.n);
    return (x.k * (m / x.n)) % m == (y.k * (m / y.n)) % m;
  }
  friend bool operator!=(const RootOfUnity& x, const RootOfUnity& y) {
    return !(x == y);
  }

  // For quadratic use: value in {-1, 0, +1}.
  int sign_value() const {
    if (zero) return 0;
    if (is_one()) return 1;
    if (2 * k == n) return -1;
    throw domain_error("root of unity is not +-1");
  }

  std::complex<double> value() const {
    if (zero) return {0.0, 0.0};
    double t = 2.0 * 3.14159265358979323846264338328 * k / n;
    return {std::cos(t), std::sin(t)};
  }
};

namespace detail {

// mu_n inside O: powers of the chosen primitive n-th root of unity.
inline std::vector<Elem> roots_of_unity(const FieldSpec& f, int n) {
  Elem zeta;
  switch (n) {
    case 1: zeta = {1, 0}; break;
    case 2: zeta = {-1, 0}; break;
    case 4:
      if (f.id != FieldId::Qi) throw domain_error("mu_4 not contained in Q");
      zeta = {0, 1};
      break;
    default:
      throw domain_error("mu_n not contained in the field: n = " +
                         std::to_string(n));
  }
  std::vector<Elem> out;
  Elem z{1, 0};
  for (int j = 0; j < n; ++j) {
    out.push_back(z);
    z = z * zeta;
  }
  return out;
}

}  // namespace detail

// Euler criterion at a prime: the unique zeta in mu_n with
// a^((Np-1)/n) = zeta mod p; ZERO iff a lies in p.
inline RootOfUnity symbol_at_prime(const FieldSpec& f, Frac a,
                                   const PrimeIdeal& p, int n) {
  if (a.num.is_zero()) throw domain_error("symbol with zero argument");
  u64 q = p.ideal.norm;
  if (q < 2) throw domain_error("symbol at unit ideal");
  if (n < 1) throw domain_error("symbol order must be positive");
  u64 bad = u64(2 * n) * u64(f.d_k < 0 ? -f.d_k : f.d_k);
  if (bad % p.rational_prime == 0) {
    throw domain_error("unsupported prime for the residue symbol: " +
                       to_string(p.ideal.gen));
  }
  if ((q - 1) % u64(n) != 0) {
    throw domain_error("symbol order does not divide Np - 1 at " +
                       to_string(p.ideal.gen));
  }
  ResidueBox box(f, p.ideal);
  Elem num = box.reduce(a.num);
  if (!box.is_coprime(box.reduce(a.den))) {
    throw domain_error("symbol argument has a pole at the prime");
  }
  if (!box.is_coprime(num)) return RootOfUnity::zero_value(n);
  Elem r = box.mul(num, box.inverse(box.reduce(a.den)));
  Elem t = box.pow(r, (q - 1) / u64(n));
  auto mu = detail::roots_of_unity(f, n);
  for (int j = 0; j < n; ++j) {
    if (box.reduce(mu[j]) == t) return RootOfUnity{n, j, false};
  }
  throw domain_error("Euler criterion value not a root of unity");
}

inline RootOfUnity symbol_at_prime(const FieldSpec& f, Elem a,
                                   const PrimeIdeal& p, int n) {
  return symbol_at_prime(f, Frac{a, Elem{1, 0}}, p, n);
}

// Multiplicative extension (a / b) over the factorization of b.
inline RootOfUnity symbol(const FieldSpec& f, Frac a, const Ideal& b, int n) {
  if (b.is_zero()) throw domain_error("symbol with zero lower entry");
  RootOfUnity v = RootOfUnity::one(n);
  for (const auto& [p, e] : f.factor(b)) {
    RootOfUnity s = symbol_at_prime(f, a, p, n);
    for (int i = 0; i < e; ++i) v = v * s;
    if (v.is_zero()) return RootOfUnity::zero_value(n);
  }
  return v;
}

inline RootOfUnity symbol(const FieldSpec& f, Elem a, const Ideal& b, int n) {
  return symbol(f, Frac{a, Elem{1, 0}}, b, n);
}

// Classical Jacobi symbol, by reciprocity-based reduction.
inline int jacobi(i64 a, i64 b) {
  if (b <= 0 || b % 2 == 0) throw domain_error("jacobi needs odd positive b");
  a %= b;
  if (a < 0) a += b;
  int s = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 m = b % 8;
      if (m == 3 || m == 5) s = -s;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) s = -s;
    a %= b;
  }
  return b == 1 ? s : 0;
}

}  // namespace heckelab
