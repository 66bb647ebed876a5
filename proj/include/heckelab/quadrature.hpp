#pragma once

// Adaptive Gauss-Kronrod (G7/K15) quadrature for real and complex
// integrands, fixed-order Gauss-Legendre rules, and a fixed-shape
// pairwise summation helper. Subdivision order is deterministic, so
// results are bit-stable for a given tolerance.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "heckelab/number_ring.hpp"

namespace heckelab {

namespace detail {

// K15 nodes (positive half) and weights; G7 weights on the shared nodes.
inline constexpr double kK15Nodes[8] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329,
};
inline constexpr double kK15Weights[8] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970,
};
inline constexpr double kG7Weights[4] = {
    0.417959183673469387755102040816327, 0.381830050505118944950369775488975,
    0.279705391489276667901467771423780, 0.129484966168869693270611432679082,
};

template <typename T, typename F>
void gk15(F&& f, double a, double b, T& kronrod, double& err) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  T fv[15];
  fv[7] = f(c);
  for (int i = 1; i < 8; ++i) {
    double dx = h * kK15Nodes[i];
    fv[7 - i] = f(c - dx);
    fv[7 + i] = f(c + dx);
  }
  T k = kK15Weights[0] * fv[7];
  for (int i = 1; i < 8; ++i) {
    k += kK15Weights[i] * (fv[7 - i] + fv[7 + i]);
  }
  T g = kG7Weights[0] * fv[7];
  for (int i = 1; i < 4; ++i) {
    g += kG7Weights[i] * (fv[7 - 2 * i] + fv[7 + 2 * i]);
  }
  kronrod = k * h;
  double raw = std::abs(k - g) * std::abs(h);
  err = std::min(raw, std::pow(200.0 * raw, 1.5));
}

}  // namespace detail

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
};

struct CQuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
};

// Adaptive bisection with a work-list ordered by construction (leftmost
// first), which keeps evaluation order deterministic.
template <typename T, typename F>
inline void adaptive_gk(F&& f, double a, double b, double abs_tol, T& out,
                        double& err_out, int max_depth = 28) {
  struct Seg {
    double a, b;
    int depth;
  };
  std::vector<Seg> stack{{a, b, 0}};
  T total{};
  double err_total = 0.0;
  while (!stack.empty()) {
    Seg s = stack.back();
    stack.pop_back();
    T v;
    double e;
    detail::gk15(f, s.a, s.b, v, e);
    double local_tol = abs_tol * (s.b - s.a) / (b - a);
    if (e <= std::max(local_tol, 1e-300) || s.depth >= max_depth) {
      total += v;
      err_total += e;
    } else {
      double m = 0.5 * (s.a + s.b);
      stack.push_back({m, s.b, s.depth + 1});
      stack.push_back({s.a, m, s.depth + 1});
    }
  }
  out = total;
  err_out = err_total;
}

template <typename F>
inline QuadResult integrate(F&& f, double a, double b, double abs_tol = 1e-12) {
  QuadResult r;
  adaptive_gk<double>(f, a, b, abs_tol, r.value, r.error);
  return r;
}

template <typename F>
inline CQuadResult integrate_c(F&& f, double a, double b,
                               double abs_tol = 1e-12) {
  CQuadResult r;
  adaptive_gk<cplx>(f, a, b, abs_tol, r.value, r.error);
  return r;
}

// Fixed-shape pairwise sum: identical result for identical input order.
template <typename T>
inline T pairwise_sum(const std::vector<T>& xs, size_t lo, size_t hi) {
  if (hi - lo == 0) return T{};
  if (hi - lo == 1) return xs[lo];
  size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

template <typename T>
inline T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(xs, 0, xs.size());
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration; cached
// per order. Used for smooth compact-support integrands.
struct GLRule {
  std::vector<double> x, w;
};

inline const GLRule& gauss_legendre(int n) {
  static std::map<int, GLRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const double pi = 3.14159265358979323846264338328;
  GLRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  auto [pos, ok] = cache.emplace(n, std::move(r));
  (void)ok;
  return pos->second;
}

}  // namespace heckelab
