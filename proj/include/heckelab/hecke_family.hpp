#pragma once

// Quadratic Hecke families over Q and Q(i): modulus construction over the
// primes above 2, narrow ray class machinery, representative ideals with
// fixed generators, the character evaluator chi_a(b), conductor search,
// primitive-character extension, and the axiom verification harness.

#include <fstream>
#include <memory>
#include <sstream>

#include "heckelab/number_ring.hpp"
#include "heckelab/residue_symbol.hpp"

namespace heckelab {

// ---------------------------------------------------------------------------
// Modulus over 2: smallest exponent e per prime p | (2) such that every
// unit x = 1 mod p^e is a square in the completion. A unit is a local
// square iff it is a square modulo p^(2 v(2) + 1); the search checks this
// criterion and re-checks two levels higher for stability.

inline Ideal build_modulus(const FieldSpec& f) {
  Ideal two = f.ideal_i64(2);
  Ideal c = f.ideal_i64(1);
  for (const auto& [p, vp2] : f.factor(two)) {
    int stable = 2 * vp2 + 1;
    auto minimal_exponent = [&](int level) -> int {
      Ideal pm = f.pow(p.ideal, level);
      ResidueBox box(f, pm);
      std::vector<Elem> squares;
      box.for_each([&](Elem u) {
        if (box.is_coprime(u)) squares.push_back(box.mul(u, u));
      });
      std::sort(squares.begin(), squares.end());
      squares.erase(std::unique(squares.begin(), squares.end()),
                    squares.end());
      for (int e = 1; e <= level; ++e) {
        Elem pe = f.pow(p.ideal, e).gen;
        bool all_square = true;
        box.for_each([&](Elem u) {
          if (!all_square || !box.is_coprime(u)) return;
          if (!divides(pe, u - Elem{1, 0})) return;
          if (!std::binary_search(squares.begin(), squares.end(), u)) {
            all_square = false;
          }
        });
        if (all_square) return e;
      }
      return level;
    };
    int e = minimal_exponent(stable);
    if (minimal_exponent(stable + 2) != e) {
      throw domain_error("square-level search did not stabilize");
    }
    c = f.mul(c, f.pow(p.ideal, e));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Narrow ray classes modulo c, and their exponent-2 quotient.
//
// Over Q a residue carries an extra sign bit, stored in the imaginary slot
// of the representative (the slot is otherwise identically zero over Q).

class RayClassTable {
 public:
  RayClassTable(const FieldSpec& f, const Ideal& c)
      : f_(&f), c_(c), box_(f, c) {
    // unit group of O/c, with the sign coordinate over Q
    std::vector<Elem> elems;
    box_.for_each([&](Elem e) {
      if (!box_.is_coprime(e)) return;
      if (f.id == FieldId::Q) {
        elems.push_back(Elem{e.a, 0});
        elems.push_back(Elem{e.a, 1});
      } else {
        elems.push_back(e);
      }
    });
    Elem one = u_reduce(Elem{1, 0});
    u_ = build_ab_group(elems, one, [&](Elem x, Elem y) { return u_mul(x, y); });

    // subgroup generated by the global torsion units
    std::vector<Elem> unit_imgs;
    for (Elem u : f.units) unit_imgs.push_back(u_elem_of(u));
    std::vector<Elem> w = subgroup_closure(unit_imgs);

    build_quotient(w, h_index_, h_reps_, h_mul_, h_inv_);

    // R = U / (W * U^2)
    std::vector<Elem> wsq = unit_imgs;
    for (const Elem& e : u_.elems) wsq.push_back(u_mul(e, e));
    std::vector<Elem> w2 = subgroup_closure(wsq);
    build_quotient(w2, r_index_, r_reps_, r_mul_, r_inv_);

    // square roots in H
    h_sqrts_.assign(h_reps_.size(), {});
    for (size_t x = 0; x < h_reps_.size(); ++x) {
      h_sqrts_[h_mul(x, x)].push_back(x);
    }
  }

  const FieldSpec& spec() const { return *f_; }
  const Ideal& modulus() const { return c_; }
  const AbGroup& unit_group() const { return u_; }

  size_t h_order() const { return h_reps_.size(); }
  size_t order() const { return r_reps_.size(); }  // |R_c|

  size_t h_class(const Ideal& a) const {
    return h_index_.at(u_.index_of(u_elem_of_ideal(a)));
  }
  size_t r_class(const Ideal& a) const {
    return r_index_.at(u_.index_of(u_elem_of_ideal(a)));
  }
  size_t h_mul(size_t x, size_t y) const { return h_mul_[x][y]; }
  size_t h_inv(size_t x) const { return h_inv_[x]; }
  size_t r_mul(size_t x, size_t y) const { return r_mul_[x][y]; }
  size_t r_inv(size_t x) const { return r_inv_[x]; }
  size_t h_identity() const { return h_index_.at(u_.index_of(u_elem_of(Elem{1, 0}))); }
  size_t r_identity() const { return r_index_.at(u_.index_of(u_elem_of(Elem{1, 0}))); }

  const std::vector<size_t>& h_sqrts(size_t target) const {
    return h_sqrts_[target];
  }

  // R written as a product of cyclic groups: (class index, order) pairs.
  std::vector<std::pair<size_t, u64>> r_cyclic_basis() const {
    std::vector<std::pair<size_t, u64>> out;
    AbGroup rg = build_ab_group(
        r_reps_, r_reps_[r_identity_rep_pos()], [&](Elem x, Elem y) {
          size_t xi = r_index_.at(u_.index_of(x));
          size_t yi = r_index_.at(u_.index_of(y));
          return r_reps_[r_mul(xi, yi)];
        });
    for (size_t i = 0; i < rg.gens.size(); ++i) {
      out.push_back({r_index_.at(u_.index_of(rg.elems[rg.gens[i]])),
                     rg.rel_orders[i]});
    }
    return out;
  }

  // Class of the element y itself (sign-aware over Q).
  size_t h_class_of_elem(Elem y) const {
    return h_index_.at(u_.index_of(u_elem_of(y)));
  }

 private:
  const FieldSpec* f_;
  Ideal c_;
  ResidueBox box_;
  AbGroup u_;
  std::vector<size_t> h_index_, r_index_;  // U element index -> class index
  std::vector<Elem> h_reps_, r_reps_;
  std::vector<std::vector<size_t>> h_mul_, r_mul_;
  std::vector<size_t> h_inv_, r_inv_;
  std::vector<std::vector<size_t>> h_sqrts_;

  size_t r_identity_rep_pos() const { return r_identity(); }

  Elem u_reduce(Elem x) const {
    if (f_->id == FieldId::Q) {
      Elem r = box_.reduce(Elem{x.a, 0});
      return Elem{r.a, ((x.b % 2) + 2) % 2};
    }
    return box_.reduce(x);
  }
  Elem u_mul(Elem x, Elem y) const {
    if (f_->id == FieldId::Q) {
      Elem r = box_.reduce(Elem{x.a * y.a, 0});
      return Elem{r.a, (x.b + y.b) % 2};
    }
    return box_.mul(x, y);
  }
  // element of U corresponding to the ring element y (sign over Q)
  Elem u_elem_of(Elem y) const {
    if (f_->id == FieldId::Q) {
      int sign_bit = y.a < 0 ? 1 : 0;
      Elem r = box_.reduce(Elem{y.a, 0});
      return Elem{r.a, sign_bit};
    }
    return box_.reduce(y);
  }
  Elem u_elem_of_ideal(const Ideal& a) const {
    if (!f_->coprime(a, c_)) throw domain_error("ideal not coprime to modulus");
    return u_elem_of(a.gen);  // canonical generator; positive over Q
  }

  std::vector<Elem> subgroup_closure(const std::vector<Elem>& gens) const {
    std::vector<Elem> sub{u_reduce(Elem{1, 0})};
    std::vector<Elem> frontier = sub;
    auto contains = [&](Elem e) {
      return std::find(sub.begin(), sub.end(), e) != sub.end();
    };
    while (!frontier.empty()) {
      std::vector<Elem> next;
      for (Elem e : frontier) {
        for (Elem g : gens) {
          Elem p = u_mul(e, g);
          if (!contains(p)) {
            sub.push_back(p);
            next.push_back(p);
          }
        }
      }
      frontier = std::move(next);
    }
    std::sort(sub.begin(), sub.end());
    return sub;
  }

  void build_quotient(const std::vector<Elem>& sub,
                      std::vector<size_t>& index, std::vector<Elem>& reps,
                      std::vector<std::vector<size_t>>& mul,
                      std::vector<size_t>& inv) const {
    size_t n = u_.elems.size();
    index.assign(n, SIZE_MAX);
    // coset of e = { e * s : s in sub }; canonical rep = min element
    for (size_t i = 0; i < n; ++i) {
      if (index[i] != SIZE_MAX) continue;
      std::vector<size_t> coset;
      Elem mn = u_.elems[i];
      for (const Elem& s : sub) {
        Elem p = u_mul(u_.elems[i], s);
        size_t pi = u_.index_of(p);
        coset.push_back(pi);
        if (p < mn) mn = p;
      }
      size_t ci = reps.size();
      reps.push_back(mn);
      for (size_t pi : coset) index[pi] = ci;
    }
    size_t m = reps.size();
    mul.assign(m, std::vector<size_t>(m));
    inv.assign(m, 0);
    for (size_t x = 0; x < m; ++x) {
      for (size_t y = 0; y < m; ++y) {
        mul[x][y] = index[u_.index_of(u_mul(reps[x], reps[y]))];
      }
    }
    size_t e = index[u_.index_of(u_reduce(Elem{1, 0}))];
    for (size_t x = 0; x < m; ++x) {
      for (size_t y = 0; y < m; ++y) {
        if (mul[x][y] == e) inv[x] = y;
      }
    }
  }
};

inline RayClassTable ray_class_group(const FieldSpec& f, const Ideal& c) {
  return RayClassTable(f, c);
}

// ---------------------------------------------------------------------------
// Family configuration: frozen choice chain.

struct Decomposition {
  Frac x;     // x = 1 mod c, x > 0 over Q
  Ideal E;
  Ideal g;    // a = (x) E g^2
};

struct FamilyCaches {
  std::map<std::pair<Elem, Elem>, int> chi;
  std::map<Elem, Decomposition> dec;
  std::mutex mu;
};

struct FamilyConfig {
  const FieldSpec* f = nullptr;
  int n = 2;
  Ideal c, s;
  std::shared_ptr<RayClassTable> ray;
  std::vector<std::pair<Ideal, Elem>> reps;  // indexed by R-class
  u64 choices_seed = 1;
  u64 g_search_bound = 200000;

  std::shared_ptr<FamilyCaches> caches = std::make_shared<FamilyCaches>();

  const FieldSpec& spec() const { return *f; }
  size_t group_order() const { return ray->order(); }
};

// Least-norm ideals generating each cyclic factor of R, then all products.
inline std::vector<std::pair<Ideal, Elem>> choose_representatives(
    const FieldSpec& f, const RayClassTable& ray, u64 norm_bound = 10000) {
  auto basis = ray.r_cyclic_basis();
  std::vector<std::pair<Ideal, Elem>> base_reps;
  for (auto [cls, ord] : basis) {
    bool found = false;
    for (u64 n = 1; n <= norm_bound && !found; ++n) {
      for (const Ideal& a : f.ideals_of_norm(n)) {
        if (!f.coprime(a, ray.modulus())) continue;
        if (ray.r_class(a) == cls) {
          base_reps.push_back({a, a.gen});
          found = true;
          break;
        }
      }
    }
    if (!found) throw config_error("representative search exhausted");
    (void)ord;
  }
  // all products prod E0^{n}, 0 <= n < order
  size_t count = ray.order();
  std::vector<std::pair<Ideal, Elem>> out(count,
                                          {f.ideal_i64(1), Elem{1, 0}});
  std::vector<char> seen(count, 0);
  size_t k = basis.size();
  std::vector<u64> exps(k, 0);
  while (true) {
    Ideal e = f.ideal_i64(1);
    Elem m{1, 0};
    size_t cls = ray.r_identity();
    for (size_t i = 0; i < k; ++i) {
      for (u64 j = 0; j < exps[i]; ++j) {
        e = f.mul(e, base_reps[i].first);
        m = m * base_reps[i].second;
        cls = ray.r_mul(cls, basis[i].first);
      }
    }
    if (seen[cls]) throw domain_error("representative set is not a transversal");
    seen[cls] = 1;
    out[cls] = {e, m};
    // odometer
    size_t pos = 0;
    while (pos < k) {
      if (++exps[pos] < basis[pos].second) break;
      exps[pos] = 0;
      ++pos;
    }
    if (pos == k) break;
    if (k == 0) break;
  }
  for (char sflag : seen) {
    if (!sflag) throw domain_error("representative set misses a class");
  }
  return out;
}

inline FamilyConfig build_family(const FieldSpec& f) {
  FamilyConfig cfg;
  cfg.f = &f;
  cfg.c = build_modulus(f);
  cfg.s = radical(f, cfg.c);
  cfg.ray = std::make_shared<RayClassTable>(f, cfg.c);
  cfg.reps = choose_representatives(f, *cfg.ray);
  return cfg;
}

inline FamilyConfig build_family(const FieldSpec& f, const Ideal& c) {
  FamilyConfig cfg;
  cfg.f = &f;
  cfg.c = c;
  cfg.s = radical(f, c);
  cfg.ray = std::make_shared<RayClassTable>(f, c);
  cfg.reps = choose_representatives(f, *cfg.ray);
  return cfg;
}

// Write a = (x) E g^2 with x = 1 mod c (x > 0 over Q), E in the fixed
// transversal, (g, avoid) = (1). skip > 0 selects later admissible g's,
// used to confirm that the symbol does not depend on the choice.
inline Decomposition decompose(const FamilyConfig& cfg, const Ideal& a,
                               const Ideal& avoid, size_t skip = 0) {
  const FieldSpec& f = cfg.spec();
  if (!f.coprime(a, cfg.c)) throw domain_error("decompose: not coprime to modulus");
  const RayClassTable& ray = *cfg.ray;
  size_t rc = ray.r_class(a);
  const Ideal& E = cfg.reps[rc].first;
  size_t target = ray.h_mul(ray.h_class(a), ray.h_inv(ray.h_class(E)));
  ResidueBox cbox(f, cfg.c);
  for (u64 n = 1; n <= cfg.g_search_bound; ++n) {
    for (const Ideal& g : f.ideals_of_norm(n)) {
      if (!f.coprime(g, cfg.c)) continue;
      if (!avoid.is_unit_ideal() && !f.coprime(g, avoid)) continue;
      if (ray.h_mul(ray.h_class(g), ray.h_class(g)) != target) continue;
      Elem den = E.gen * g.gen * g.gen;
      for (Elem u : f.units) {
        Frac x = Frac::of(u * a.gen, den);
        if (f.id == FieldId::Q && double(x.num.a) * double(x.den.a) < 0) {
          continue;  // x must be totally positive
        }
        Elem dnum = cbox.reduce(x.num);
        Elem dden = cbox.reduce(x.den);
        if (dnum == dden) {
          if (skip == 0) return Decomposition{x, E, g};
          --skip;
          break;  // next g; same g with another unit is the same symbol
        }
      }
    }
  }
  throw config_error("decompose: no admissible square part found");
}

// chi_a(b) in {-1, 0, +1}; vanishes off ideals coprime to c*a.
inline int chi_eval(const FamilyConfig& cfg, const Ideal& a, const Ideal& b) {
  const FieldSpec& f = cfg.spec();
  if (b.is_zero()) throw domain_error("chi at zero ideal");
  if (!f.coprime(a, cfg.c) || !f.coprime(b, cfg.c) || !f.coprime(a, b)) {
    return 0;
  }
  if (b.is_unit_ideal()) return 1;
  FamilyCaches& cc = *cfg.caches;
  {
    std::lock_guard<std::mutex> lk(cc.mu);
    auto it = cc.chi.find({a.gen, b.gen});
    if (it != cc.chi.end()) return it->second;
  }
  Decomposition dec;
  bool have = false;
  {
    std::lock_guard<std::mutex> lk(cc.mu);
    auto it = cc.dec.find(a.gen);
    if (it != cc.dec.end() && f.coprime(it->second.g, b)) {
      dec = it->second;
      have = true;
    }
  }
  if (!have) {
    dec = decompose(cfg, a, b);
    std::lock_guard<std::mutex> lk(cc.mu);
    cc.dec.emplace(a.gen, dec);
  }
  Frac m = dec.x.times(cfg.reps[cfg.ray->r_class(a)].second);
  int v = symbol(f, m, b, 2).sign_value();
  std::lock_guard<std::mutex> lk(cc.mu);
  cc.chi[{a.gen, b.gen}] = v;
  return v;
}

// m_a as a fraction (for symbol-level identities and diagnostics).
inline Frac family_generator(const FamilyConfig& cfg, const Ideal& a,
                             const Ideal& avoid) {
  Decomposition dec = decompose(cfg, a, avoid);
  return dec.x.times(cfg.reps[cfg.ray->r_class(a)].second);
}

// ---------------------------------------------------------------------------
// Conductor and the primitive character.

namespace detail {

// chi_a((y)) for a ring element y (ideal of its absolute value).
inline int chi_at_element(const FamilyConfig& cfg, const Ideal& a, Elem y) {
  return chi_eval(cfg, a, cfg.spec().ideal(y));
}

}  // namespace detail

// Smallest f | c*a such that chi_a is trivial on every ideal (y) with
// y = 1 mod f; the triviality is certified on all residues of (O/ca)^*
// (exact, not sampled, at these modulus sizes).
inline Ideal conductor_of(const FamilyConfig& cfg, const Ideal& a,
                          u64 enumeration_cap = 5000000) {
  const FieldSpec& f = cfg.spec();
  if (!f.coprime(a, cfg.c)) throw domain_error("conductor: not coprime to c");
  Ideal M = f.mul(cfg.c, a);
  ResidueBox mbox(f, M);
  if (mbox.size() > enumeration_cap) {
    throw config_error("conductor: modulus too large for certification");
  }
  std::vector<Elem> units;
  mbox.for_each([&](Elem u) {
    if (mbox.is_coprime(u)) units.push_back(u);
  });
  std::vector<Ideal> divs = divisors(f, M);
  std::sort(divs.begin(), divs.end());
  for (const Ideal& cand : divs) {
    bool ok = true;
    for (const Elem& u : units) {
      bool test = false;
      if (divides(cand.gen, u - Elem{1, 0})) test = true;
      if (f.id == FieldId::Q && divides(cand.gen, u + Elem{1, 0})) {
        test = true;  // negative lift y < 0 with y = 1 mod cand
      }
      if (!test) continue;
      if (detail::chi_at_element(cfg, a, u) != 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      // shape: cand = c_a * a0 with c_a | c; here a squarefree => a0 = a
      if (!a.is_unit_ideal()) {
        if (!f.divides_ideal(a, cand) ||
            !f.divides_ideal(f.div(cand, a), cfg.c)) {
          throw domain_error("conductor shape violated at " +
                             to_string(a.gen));
        }
      }
      return cand;
    }
  }
  throw domain_error("conductor search failed");
}

// The primitive Hecke character attached to a family index a, evaluable on
// every ideal coprime to its conductor.
class HeckeChar {
 public:
  HeckeChar() = default;
  HeckeChar(const FamilyConfig& cfg, const Ideal& a)
      : cfg_(&cfg), a_(a), modulus_(cfg.spec().mul(cfg.c, a)) {
    conductor_ = conductor_of(cfg, a);
    build_psi([&](Elem y) { return detail::chi_at_element(cfg, a, y); });
  }

  // A primitive character with an externally known conductor, defined by a
  // raw evaluator on elements coprime to the stated modulus. Used for
  // primitive products of two family characters.
  template <typename RawEval>
  HeckeChar(const FamilyConfig& cfg, const Ideal& index, const Ideal& modulus,
            const Ideal& conductor, RawEval&& raw)
      : cfg_(&cfg), a_(index), modulus_(modulus), conductor_(conductor) {
    build_psi(raw);
  }

  const Ideal& index_ideal() const { return a_; }
  const Ideal& modulus() const { return modulus_; }
  const Ideal& conductor() const { return conductor_; }
  bool is_principal() const { return conductor_.is_unit_ideal(); }

  // Primitive character value at any nonzero integral ideal.
  int eval(const Ideal& b) const {
    const FieldSpec& f = cfg_->spec();
    if (b.is_zero()) throw domain_error("character at zero ideal");
    if (conductor_.is_unit_ideal()) return 1;
    if (!f.coprime(b, conductor_)) return 0;
    return psi_.at(fbox_->reduce(b.gen));
  }

  const FamilyConfig& family() const { return *cfg_; }

 private:
  const FamilyConfig* cfg_ = nullptr;
  Ideal a_, modulus_, conductor_;
  std::shared_ptr<ResidueBox> fbox_;
  std::map<Elem, int> psi_;

  template <typename RawEval>
  void build_psi(RawEval&& raw) {
    const FieldSpec& f = cfg_->spec();
    if (conductor_.is_unit_ideal()) return;  // principal: eval short-circuits
    fbox_ = std::make_shared<ResidueBox>(f, conductor_);
    fbox_->for_each([&](Elem u) {
      if (!fbox_->is_coprime(u)) return;
      Elem y = u;
      int guard = 0;
      while (y.is_zero() || !f.coprime(f.ideal(y), modulus_)) {
        y = y + conductor_.gen;
        if (++guard > (1 << 16)) throw domain_error("psi lift search failed");
      }
      psi_[u] = raw(y);
    });
  }
};

// Primitive character inducing chi_{b1} chi_{b2}: conductor b1*b2 for
// coprime squarefree indices in the same class. With certify=true the
// conductor claim is checked exhaustively on the residue system.
inline HeckeChar product_char(const FamilyConfig& cfg, const Ideal& b1,
                              const Ideal& b2, bool certify = false,
                              u64 certify_cap = 2000000) {
  const FieldSpec& f = cfg.spec();
  if (!f.coprime(b1, b2)) throw domain_error("product char: indices not coprime");
  if (cfg.ray->r_class(b1) != cfg.ray->r_class(b2)) {
    throw domain_error("product char: indices in different classes");
  }
  Ideal cond = f.mul(b1, b2);
  Ideal modulus = f.mul(cfg.c, cond);
  auto raw = [&cfg, b1, b2](Elem y) {
    Ideal yi = cfg.spec().ideal(y);
    return chi_eval(cfg, b1, yi) * chi_eval(cfg, b2, yi);
  };
  if (certify) {
    ResidueBox mbox(f, modulus);
    if (mbox.size() <= certify_cap) {
      std::vector<Ideal> divs = divisors(f, cond);
      std::sort(divs.begin(), divs.end());
      Ideal found{Elem{0, 0}, 0};
      for (const Ideal& cand : divs) {
        bool trivial = true;
        mbox.for_each([&](Elem u) {
          if (!trivial || !mbox.is_coprime(u)) return;
          bool in_ray = divides(cand.gen, u - Elem{1, 0});
          if (f.id == FieldId::Q && divides(cand.gen, u + Elem{1, 0})) {
            in_ray = true;
          }
          if (!in_ray) return;
          if (raw(u) != 1) trivial = false;
        });
        if (trivial) {
          found = cand;
          break;
        }
      }
      if (!(found == cond)) {
        throw domain_error("product character conductor is not b1*b2");
      }
    }
  }
  return HeckeChar(cfg, cond, modulus, cond, raw);
}

// The family character of smallest nontrivial conductor norm.
inline HeckeChar smallest_nontrivial_char(const FamilyConfig& cfg,
                                          u64 search_norm = 80) {
  const FieldSpec& f = cfg.spec();
  std::optional<HeckeChar> best;
  for (u64 n = 2; n <= search_norm; ++n) {
    for (const Ideal& a : f.ideals_of_norm(n)) {
      if (!f.coprime(a, cfg.c) || !is_squarefree(f, a)) continue;
      HeckeChar ch(cfg, a);
      if (ch.is_principal()) continue;
      if (!best || ch.conductor().norm < best->conductor().norm) {
        best = ch;
      }
    }
  }
  if (!best) throw config_error("no nontrivial family character found");
  return *best;
}

// ---------------------------------------------------------------------------
// Axiom verification.

struct ReciprocityTable {
  size_t order = 0;
  std::vector<std::vector<int>> c;  // 0 = unseen, else +-1

  int at(size_t x, size_t y) const { return c[x][y]; }
};

struct AxiomReport {
  bool axiom1_ok = true;       // values lie in mu_2 U {0}
  bool axiom2_ok = true;       // reciprocity defect is a class function
  bool axiom3_ok = true;       // chi_a chi_b trivial on rays mod ab
  bool hecke_trivial_ok = true;  // chi_a trivial on rays mod c*a
  ReciprocityTable recip;
  std::string witness;
  u64 pairs_checked = 0;

  bool all_ok() const {
    return axiom1_ok && axiom2_ok && axiom3_ok && hecke_trivial_ok;
  }
};

inline AxiomReport verify_axioms(const FamilyConfig& cfg, u64 norm_bound,
                                 int ray_samples = 8) {
  const FieldSpec& f = cfg.spec();
  const RayClassTable& ray = *cfg.ray;
  AxiomReport rep;
  rep.recip.order = ray.order();
  rep.recip.c.assign(ray.order(), std::vector<int>(ray.order(), 0));

  std::vector<Ideal> sf =
      enumerate_ideals(f, 0, norm_bound, {true, cfg.c});

  auto note = [&](const std::string& w) {
    if (rep.witness.empty()) rep.witness = w;
  };

  for (size_t i = 0; i < sf.size(); ++i) {
    for (size_t j = 0; j < sf.size(); ++j) {
      const Ideal& a = sf[i];
      const Ideal& b = sf[j];
      if (a == b || !f.coprime(a, b)) continue;
      ++rep.pairs_checked;
      int vab = chi_eval(cfg, a, b);
      int vba = chi_eval(cfg, b, a);
      if (vab * vab != 1 || vba * vba != 1) {
        rep.axiom1_ok = false;
        note("nonunit value at (" + to_string(a.gen) + "," + to_string(b.gen) + ")");
        continue;
      }
      size_t ra = ray.r_class(a), rb = ray.r_class(b);
      int cval = vab * vba;  // chi_a(b) / chi_b(a) for quadratic values
      int& slot = rep.recip.c[ra][rb];
      if (slot == 0) {
        slot = cval;
      } else if (slot != cval) {
        rep.axiom2_ok = false;
        note("reciprocity defect not a class function at (" +
             to_string(a.gen) + "," + to_string(b.gen) + ")");
      }
    }
  }

  // Property 3: for coprime pairs in the same class, chi_a * chi_b kills
  // every ideal (y), y = 1 mod ab. Certified on generators of the full
  // residue system mod c lifted to 1 mod ab (these generate all such rays
  // modulo c*a*b), plus sign checks over Q.
  const AbGroup& ug = ray.unit_group();
  for (size_t i = 0; i < sf.size() && rep.axiom3_ok; ++i) {
    for (size_t j = i + 1; j < sf.size() && rep.axiom3_ok; ++j) {
      const Ideal& a = sf[i];
      const Ideal& b = sf[j];
      if (!f.coprime(a, b)) continue;
      if (ray.r_class(a) != ray.r_class(b)) continue;
      Ideal ab = f.mul(a, b);
      Ideal cab = f.mul(cfg.c, ab);
      auto check_elem = [&](Elem y) {
        if (f.id == FieldId::Qi) {
          // minimal representative mod c*a*b: keeps factorizations cheap
          y = y - div_round(y, cab.gen) * cab.gen;
        }
        if (y.is_zero()) return;
        Ideal yi = f.ideal(y);
        if (!f.coprime(yi, cab)) return;
        int v = chi_eval(cfg, a, yi) * chi_eval(cfg, b, yi);
        if (v != 1) {
          rep.axiom3_ok = false;
          note("product character nontrivial on ray 1 mod " +
               to_string(ab.gen) + " at y=" + to_string(y));
        }
      };
      for (size_t gi : ug.gens) {
        Elem u = ug.elems[gi];
        Elem ures = (f.id == FieldId::Q) ? Elem{u.a, 0} : u;
        Elem y = crt(f, ures, cfg.c, Elem{1, 0}, ab);
        check_elem(y);
        if (f.id == FieldId::Q) {
          // negative lift in the same class mod c and mod ab
          i64 m = cfg.c.gen.a * ab.gen.a;
          Elem yn{y.a - (y.a / m + 1) * m, 0};
          check_elem(yn);
        }
      }
      for (int k = 1; k <= ray_samples; ++k) {
        check_elem(Elem{1, 0} + ab.gen * Elem{k, 0});
        if (f.id == FieldId::Q) check_elem(Elem{1, 0} - ab.gen * Elem{k, 0});
      }
    }
  }

  // Hecke triviality: chi_a((y)) = 1 for y = 1 mod c*a.
  for (const Ideal& a : sf) {
    if (!rep.hecke_trivial_ok) break;
    Ideal ca = f.mul(cfg.c, a);
    for (int k = 1; k <= ray_samples; ++k) {
      for (int sgn : {+1, -1}) {
        if (sgn < 0 && f.id != FieldId::Q) continue;
        Elem y = Elem{1, 0} + ca.gen * Elem{sgn * k, 0};
        if (y.is_zero()) continue;
        Ideal yi = f.ideal(y);
        if (!f.coprime(yi, ca)) continue;
        if (chi_eval(cfg, a, yi) != 1) {
          rep.hecke_trivial_ok = false;
          note("chi_" + to_string(a.gen) + " nontrivial at ray element " +
               to_string(y));
          break;
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Family cache file: header + (a, b, value) rows. Reload requires the
// header to match exactly.

inline std::string family_header(const FamilyConfig& cfg) {
  std::ostringstream os;
  os << "heckelab-family-cache v1"
     << "; field=" << field_name(cfg.f->id) << "; c=" << to_string(cfg.c.gen)
     << "; seed=" << cfg.choices_seed << "; reps=";
  for (const auto& [e, m] : cfg.reps) {
    os << "(" << to_string(e.gen) << "|" << to_string(m) << ")";
  }
  return os.str();
}

inline void save_family_cache(const FamilyConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write cache file " + path);
  out << family_header(cfg) << "\n";
  std::lock_guard<std::mutex> lk(cfg.caches->mu);
  for (const auto& [key, v] : cfg.caches->chi) {
    out << to_string(key.first) << "," << to_string(key.second) << "," << v
        << "\n";
  }
}

inline Elem parse_elem(const std::string& s);

inline bool load_family_cache(const FamilyConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  std::string header;
  if (!std::getline(in, header)) return false;
  if (header != family_header(cfg)) return false;
  std::string line;
  std::lock_guard<std::mutex> lk(cfg.caches->mu);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t c1 = line.find(',');
    size_t c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) return false;
    Elem a = parse_elem(line.substr(0, c1));
    Elem b = parse_elem(line.substr(c1 + 1, c2 - c1 - 1));
    int v = std::stoi(line.substr(c2 + 1));
    cfg.caches->chi[{a, b}] = v;
  }
  return true;
}

// Parses "a", "a+bi", "a-bi", "bi", "i".
inline Elem parse_elem(const std::string& s) {
  if (s.empty()) throw config_error("empty element literal");
  std::string t = s;
  bool has_i = false;
  if (t.back() == 'i') {
    has_i = true;
    t.pop_back();
  }
  if (!has_i) return Elem{std::stoll(t), 0};
  // split into real and imaginary parts
  size_t pos = std::string::npos;
  for (size_t k = t.size(); k-- > 1;) {
    if (t[k] == '+' || t[k] == '-') {
      pos = k;
      break;
    }
  }
  if (pos == std::string::npos) {
    if (t.empty() || t == "+") return Elem{0, 1};
    if (t == "-") return Elem{0, -1};
    return Elem{0, std::stoll(t)};
  }
  std::string re = t.substr(0, pos);
  std::string im = t.substr(pos);
  if (im == "+") im = "1";
  if (im == "-") im = "-1";
  return Elem{std::stoll(re), std::stoll(im)};
}

}  // namespace heckelab
