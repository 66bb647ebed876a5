#pragma once

// Vertical-line (inverse Mellin) machinery: the field kernel K(t), the
// companion transforms of a smooth weight, the positive weights
// rho_{a,b}, and the incomplete-Mellin window used for completed
// L-values. All contours are evaluated by adaptive quadrature; where an
// integrand decays only polynomially along the line, the contour is bent
// into 45-degree rays past the stationary region, where decay becomes
// exponential. No poles are crossed by the bend (the rays stay off the
// real axis).

#include "heckelab/gamma.hpp"
#include "heckelab/number_ring.hpp"
#include "heckelab/quadrature.hpp"
#include "heckelab/test_function.hpp"

namespace heckelab {

struct ContourConfig {
  double sigma = 0.25;         // kernel line, inside (0, 1/2)
  double sigma_transform = 0.5;  // line for the weight transforms
  double sigma_series = 1.5;   // line right of s = 1 for series uses
  double t_max = 400.0;        // hard cap on transform-line truncation
  int n_points = 0;            // 0 = adaptive
  double tolerance = 1e-10;    // absolute quadrature target
};

struct KernelValue {
  double value = 0.0;
  double tail_budget = 0.0;
};

namespace detail {

// log of Gamma(s/2)^r1 Gamma(s)^r2 / (Gamma((1-s)/2)^r1 Gamma(1-s)^r2)
inline cplx log_gamma_ratio(const FieldSpec& f, cplx s) {
  cplx lg{0.0, 0.0};
  if (f.r1) lg += double(f.r1) * (clgamma(0.5 * s) - clgamma(0.5 * (1.0 - s)));
  if (f.r2) lg += double(f.r2) * (clgamma(s) - clgamma(1.0 - s));
  return lg;
}

inline cplx gamma_ratio_kernel(const FieldSpec& f, cplx s, double log_y) {
  return std::exp(log_gamma_ratio(f, s) - s * log_y);
}

}  // namespace detail

// K(t) = (A^-1 / 2 pi i) Int (Gamma ratios) (t / A^2)^(-s) ds.
// Closed forms used as oracles elsewhere: pi J0(2 pi sqrt(t)) for the
// imaginary quadratic field, 2 cos(2 pi t) for Q.
inline KernelValue kernel_K(const FieldSpec& f, double t,
                            const ContourConfig& cc = {}) {
  if (!(t > 0.0)) throw domain_error("kernel needs t > 0");
  const double pi = detail::kPi;
  double y = t / (f.A_k * f.A_k);
  double log_y = std::log(y);
  double sigma = cc.sigma;
  if (!(sigma > 0.0 && sigma < 0.5)) sigma = 0.25;
  // past the stationary height the slanted rays decay exponentially
  double t_star = f.r2 ? std::sqrt(y) : 2.0 * y;
  double T0 = 1.3 * t_star + 15.0;

  auto vertical = [&](double T) {
    return detail::gamma_ratio_kernel(f, cplx(sigma, T), log_y).real();
  };
  double vert, vert_err;
  adaptive_gk<double>(vertical, 0.0, T0, cc.tolerance * 0.25, vert, vert_err);

  // upper ray s = sigma + i T0 + u(-1 + i); lower ray is its conjugate
  cplx dir(-1.0, 1.0);
  cplx ray_total{0.0, 0.0};
  double u0 = 0.0;
  const double chunk = 8.0;
  double tail = 0.0;
  for (int iter = 0; iter < 600; ++iter) {
    auto ray = [&](double u) {
      cplx s = cplx(sigma, T0) + dir * u;
      return detail::gamma_ratio_kernel(f, s, log_y);
    };
    cplx v;
    double e;
    adaptive_gk<cplx>(ray, u0, u0 + chunk, cc.tolerance * 0.25, v, e);
    ray_total += v;
    u0 += chunk;
    double edge = std::abs(ray(u0));
    if (std::abs(v) < cc.tolerance * 1e-3 && edge < cc.tolerance * 1e-4) {
      tail = edge * chunk * 10.0;
      break;
    }
    if (iter == 599) {
      throw precision_error(
          "kernel tail did not close; raise t_max or tolerance");
    }
  }
  // assemble: (A^-1/pi) [ Int_0^T0 Re F dT - Im((1 - i) * Int_ray F du) ]
  KernelValue out;
  cplx one_minus_i(1.0, -1.0);
  out.value = (1.0 / (f.A_k * pi)) *
              (vert - (one_minus_i * ray_total).imag());
  out.tail_budget = (vert_err + tail) / (f.A_k * pi);
  return out;
}

// Mellin transform of a test function at Re(w) > 0. When the support
// reaches zero with h(0) != 0, one integration by parts is applied:
// hhat(w) = -(1/w) Int h'(t) t^w dt. This keeps the integrand free of an
// endpoint jump, so values decay superpolynomially along vertical lines.
inline cplx mellin(const TestFunction& h, cplx w,
                   const ContourConfig& cc = {}) {
  if (h.lo == 0.0) {
    if (w.real() <= 0.0) {
      throw domain_error("mellin needs Re(s) > 0 when the support hits 0");
    }
    auto g = [&](double t) {
      return cplx(h.deriv(t), 0.0) * std::exp(w * std::log(t));
    };
    CQuadResult r = integrate_c(g, 1e-300, h.hi, cc.tolerance * 0.01);
    return -r.value / w;
  }
  auto g = [&](double t) {
    return cplx(h(t), 0.0) * std::exp((w - 1.0) * std::log(t));
  };
  CQuadResult r = integrate_c(g, h.lo, h.hi, cc.tolerance * 0.01);
  return r.value;
}

// h-dot(x) = Int h(t) K(t x) dt, evaluated as a single vertical-line
// integral against the Mellin transform of h (the kernel-route
// evaluation below is the direct form; both agree and are cross-checked
// in the tests). half_argument selects the transform of h(t^2).
inline double dot_transform_line(const FieldSpec& f, const TestFunction& h,
                                 double x, const ContourConfig& cc = {},
                                 bool half_argument = false) {
  if (!(x > 0.0)) throw domain_error("transform needs x > 0");
  const double pi = detail::kPi;
  double sigma = cc.sigma_transform;
  double logx = std::log(x);
  double logA = std::log(f.A_k);
  auto integrand = [&](double T) {
    cplx s(sigma, T);
    cplx hat = half_argument ? 0.5 * mellin(h, 0.5 * (1.0 - s), cc)
                             : mellin(h, 1.0 - s, cc);
    cplx val = std::exp(detail::log_gamma_ratio(f, s) +
                        (2.0 * s - 1.0) * logA - s * logx);
    return (val * hat).real();
  };
  // the Mellin factor decays superpolynomially; march in chunks
  double total = 0.0;
  double T = 0.0;
  const double chunk = 8.0;
  int quiet = 0;
  while (T < cc.t_max) {
    double v, e;
    adaptive_gk<double>(integrand, T, T + chunk, cc.tolerance * 0.1, v, e);
    total += v;
    T += chunk;
    if (std::abs(v) < cc.tolerance * 1e-2) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  return total / pi;
}

// Direct form: quadrature of h against the kernel.
inline double dot_transform_kernel(const FieldSpec& f, const TestFunction& h,
                                   double x, const ContourConfig& cc = {}) {
  if (!(x > 0.0)) throw domain_error("transform needs x > 0");
  auto g = [&](double t) { return h(t) * kernel_K(f, t * x, cc).value; };
  QuadResult r = integrate(g, h.lo, h.hi, cc.tolerance);
  return r.value;
}

inline double dot_transform(const FieldSpec& f, const TestFunction& h,
                            double x, const ContourConfig& cc = {}) {
  return dot_transform_line(f, h, x, cc, false);
}

// h-ddot(x) = Int h(t^2) K(t x) dt.
inline double ddot_transform(const FieldSpec& f, const TestFunction& h,
                             double x, const ContourConfig& cc = {}) {
  return dot_transform_line(f, h, x, cc, true);
}

namespace detail {

// Mellin value of h at w by composite Gauss-Legendre in log coordinates;
// panel length tracks the oscillation rate Im(w). For supports reaching
// zero the integrated-by-parts form is used and panels march down in u
// until their contribution dies (all library functions there have
// h'(t) = O(t), so this terminates quickly).
inline cplx mellin_log_gl(const TestFunction& h, cplx w) {
  const GLRule& rule = gauss_legendre(32);
  double T = std::abs(w.imag());
  double panel_len = std::min(1.5, 32.0 * (2.0 * kPi / std::max(T, 4.0)) / 8.0);
  auto panel = [&](double ua, double ub, auto&& g) {
    cplx acc{0.0, 0.0};
    double c = 0.5 * (ua + ub), r = 0.5 * (ub - ua);
    for (int i = 0; i < 32; ++i) {
      double u = c + r * rule.x[i];
      acc += rule.w[i] * g(u);
    }
    return acc * r;
  };
  if (h.lo > 0.0) {
    auto g = [&](double u) {
      double t = std::exp(u);
      return cplx(h(t) * t, 0.0) * std::exp((w - 1.0) * u);
    };
    double ua = std::log(h.lo), ub = std::log(h.hi);
    int n = std::max(1, int(std::ceil((ub - ua) / panel_len)));
    cplx total{0.0, 0.0};
    double step = (ub - ua) / n;
    for (int i = 0; i < n; ++i) {
      total += panel(ua + i * step, ua + (i + 1) * step, g);
    }
    return total;
  }
  if (w.real() <= 0.0) {
    throw domain_error("mellin needs Re(w) > 0 when the support hits 0");
  }
  // -(1/w) Int h'(t) t^w dt in u = log t
  auto g = [&](double u) {
    double t = std::exp(u);
    return cplx(h.deriv(t) * t, 0.0) * std::exp(w * u);
  };
  double ub = std::log(h.hi);
  cplx total{0.0, 0.0};
  int quiet = 0;
  double u = ub;
  for (int i = 0; i < 4000; ++i) {
    cplx v = panel(u - panel_len, u, g);
    total += v;
    u -= panel_len;
    if (u < -8.0 && std::abs(v) < 3e-17) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    if (u < -44.0) break;
  }
  return -total / w;
}

}  // namespace detail

// Precomputed vertical-line grids for one transform: evaluating the
// transform at an argument is then a short weighted sum, so the
// summation formulas can consume thousands of arguments cheaply.
//
// Two lines are kept. Arguments >= 1/2 use Re(s) = 1/2. For small
// arguments the line sits at Re(s) = -1/4, which crosses the simple pole
// of the Gamma ratio at s = 0; its residue is the x -> 0 limit of the
// transform and is added back explicitly. This keeps the x^(-sigma)
// prefactor from amplifying quadrature noise at either end.
class TransformTable {
 public:
  TransformTable(const FieldSpec& f, const TestFunction& h,
                 const ContourConfig& cc = {}, bool half_argument = false) {
    right_ = LineGrid(f, h, cc, half_argument, 0.5, 9.0);
    left_ = LineGrid(f, h, cc, half_argument, -0.25, 12.5);
    const double rpi = std::sqrt(detail::kPi);
    double c0 = f.r2 ? 1.0 / f.A_k : 2.0 / (rpi * f.A_k);
    auto hat = [&](cplx w) {
      return half_argument ? 0.5 * detail::mellin_log_gl(h, 0.5 * w)
                           : detail::mellin_log_gl(h, w);
    };
    residue_ = c0 * hat(cplx(1.0, 0)).real();
    // slope of the expansion at 0 (next Gamma-ratio pole, s = -1)
    if (f.r2 == 1 && f.r1 == 0) {
      linear_ = -hat(cplx(2.0, 0)).real() / std::pow(f.A_k, 3.0);
    }
  }

  // transform value at x > 0
  double at(double x) const {
    if (!(x > 0.0)) throw domain_error("transform needs x > 0");
    if (x < 1e-5) return residue_ + linear_ * x;  // expansion at 0
    if (x < 0.5) return residue_ + left_.at(x);
    return right_.at(x);
  }

  // x -> 0 limit (the residue term alone)
  double at_zero() const { return residue_; }

  size_t grid_size() const { return right_.nodes.size() + left_.nodes.size(); }

 private:
  struct LineGrid {
    double sigma = 0.5;
    std::vector<double> nodes;
    std::vector<cplx> coef;
    std::vector<double> wts;

    LineGrid() = default;
    LineGrid(const FieldSpec& f, const TestFunction& h,
             const ContourConfig& cc, bool half_argument, double sig,
             double lx_budget)
        : sigma(sig) {
      const GLRule& rule = gauss_legendre(32);
      double logA = std::log(f.A_k);
      // phase-rate budget: Gamma ratio + A factor + |log x| allowance
      auto panel_len = [&](double T) {
        double rate = (f.r1 + 2.0 * f.r2) * std::log(2.0 + T) +
                      2.0 * std::abs(logA) + lx_budget + 2.0;
        return std::clamp(32.0 * (2.0 * detail::kPi / rate) / 10.0, 0.15, 1.2);
      };
      int quiet = 0;
      double T0 = 0.0;
      double scale = 0.0;
      for (int p = 0; p < 8000 && T0 < cc.t_max; ++p) {
        double len = panel_len(T0);
        double c = T0 + 0.5 * len, r = 0.5 * len;
        double panel_mag = 0.0;
        for (int i = 0; i < 32; ++i) {
          double T = c + r * rule.x[i];
          cplx s(sigma, T);
          cplx hat = half_argument
                         ? 0.5 * detail::mellin_log_gl(h, 0.5 * (1.0 - s))
                         : detail::mellin_log_gl(h, 1.0 - s);
          cplx cval = std::exp(detail::log_gamma_ratio(f, s) +
                               (2.0 * s - 1.0) * logA) *
                      hat;
          nodes.push_back(T);
          coef.push_back(cval);
          wts.push_back(rule.w[i] * r);
          panel_mag = std::max(panel_mag, std::abs(hat));
        }
        scale = std::max(scale, panel_mag);
        T0 += len;
        if (panel_mag < 1e-15 * std::max(scale, 1e-30)) {
          if (++quiet >= 2) break;
        } else {
          quiet = 0;
        }
      }
    }

    double at(double x) const {
      double lx = std::log(x);
      std::vector<double> terms(nodes.size());
      for (size_t i = 0; i < nodes.size(); ++i) {
        cplx rot(std::cos(nodes[i] * lx), -std::sin(nodes[i] * lx));
        terms[i] = wts[i] * (coef[i] * rot).real();
      }
      return pairwise_sum(terms) * std::pow(x, -sigma) / detail::kPi;
    }
  };

  LineGrid right_, left_;
  double residue_ = 0.0;
  double linear_ = 0.0;
};

// rho_{a,b}(t) = (1/2 pi i) Int Gamma(s/2)^a Gamma(s)^b t^{-s} ds.
// The line is moved right toward the saddle for large t so the integral
// is not evaluated by cancellation. rho_{0,1}(t) = e^{-t} and
// rho_{1,0}(t) = 2 e^{-t^2} serve as oracles in the tests.
inline double rho_weight(int a, int b, double t, const ContourConfig& cc = {}) {
  if (a < 0 || b < 0 || a + b == 0) throw domain_error("rho needs a+b >= 1");
  if (!(t > 0.0)) throw domain_error("rho needs t > 0");
  const double pi = detail::kPi;
  double logt = std::log(t);
  // saddle of a*lgamma(s/2) + b*lgamma(s) - s log t along the real axis
  double sigma = cc.sigma_series;
  if (logt > 0.0) {
    double lo = 0.5, hi = 4096.0;
    auto dphi = [&](double s) {
      const double eps = 1e-6;
      double f1 = a * (clgamma(cplx((s + eps) / 2, 0)).real() -
                       clgamma(cplx((s - eps) / 2, 0)).real()) /
                  (2 * eps);
      double f2 = b * (clgamma(cplx(s + eps, 0)).real() -
                       clgamma(cplx(s - eps, 0)).real()) /
                  (2 * eps);
      return f1 + f2 - logt;
    };
    if (dphi(hi) > 0.0) {
      for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (lo + hi);
        (dphi(mid) < 0.0 ? lo : hi) = mid;
      }
      sigma = std::max(cc.sigma_series, 0.5 * (lo + hi));
    } else {
      sigma = hi;
    }
  }
  auto integrand = [&](double T) {
    cplx s(sigma, T);
    cplx lg = double(a) * clgamma(0.5 * s) + double(b) * clgamma(s);
    return std::exp(lg - s * logt).real();
  };
  // Gamma factors decay like exp(-(a pi/4 + b pi/2)|T|)
  double rate = a * pi / 4.0 + b * pi / 2.0;
  double T_hi = 60.0 + 60.0 / rate;
  double v, e;
  adaptive_gk<double>(integrand, 0.0, T_hi, cc.tolerance * 1e-3, v, e);
  return v / pi;
}

// Incomplete-Mellin window Psi_s(x) = (1/2 pi i) Int_(c) gamma(s+w) x^{-w} dw / w
// with gamma(s) = Gamma(s/2)^r1 Gamma(s)^r2; used by the completed
// L-value evaluation.
inline cplx mellin_window(const FieldSpec& f, cplx s, double x, double c,
                          const ContourConfig& cc = {}) {
  if (!(x > 0.0)) throw domain_error("window needs x > 0");
  double logx = std::log(x);
  auto gamma_log = [&](cplx z) {
    cplx lg{0.0, 0.0};
    if (f.r1) lg += double(f.r1) * clgamma(0.5 * z);
    if (f.r2) lg += double(f.r2) * clgamma(z);
    return lg;
  };
  auto integrand = [&](double T) {
    cplx w(c, T);
    return std::exp(gamma_log(s + w) - w * logx) / w;
  };
  const double pi = detail::kPi;
  double rate = f.r1 * pi / 4.0 + f.r2 * pi / 2.0;
  double T_hi = 60.0 + 60.0 / rate;
  cplx up, down;
  double e1, e2;
  adaptive_gk<cplx>(integrand, 0.0, T_hi, cc.tolerance * 1e-2, up, e1);
  adaptive_gk<cplx>(integrand, -T_hi, 0.0, cc.tolerance * 1e-2, down, e2);
  return (up + down) / cplx(0.0, 2.0 * pi);
}

}  // namespace heckelab
