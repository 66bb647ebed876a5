#pragma once

// Complex log-gamma via a Lanczos approximation with reflection for
// Re z < 1/2. The imaginary part is only meaningful modulo 2*pi here;
// every caller exponentiates differences, where the branch drops out.

#include <cmath>
#include <complex>

namespace heckelab {

using cplx = std::complex<double>;

namespace detail {

inline constexpr double kPi = 3.14159265358979323846264338328;
inline constexpr double kLogTwoPiHalf = 0.91893853320467274178032973640562;

// g = 7, n = 9 coefficients (Godfrey).
inline constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

inline cplx lgamma_half_plane(cplx z) {
  // requires Re z >= 1/2
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  cplx t = z + 7.5;
  return (z + 0.5) * std::log(t) - t + kLogTwoPiHalf + std::log(x);
}

// log(sin(pi z)) stable for large |Im z| (branch only mod 2 pi i).
inline cplx log_sin_pi(cplx z) {
  double y = z.imag();
  if (std::abs(y) < 8.0) return std::log(std::sin(kPi * z));
  if (y > 0) {
    cplx i(0.0, 1.0);
    // sin(pi z) = -(e^{-i pi z} / (2i)) (1 - e^{2 i pi z})
    cplx small = std::exp(2.0 * i * kPi * z);
    return -i * kPi * z - std::log(2.0) + i * (kPi / 2.0) +
           std::log(1.0 - small);
  }
  cplx c = log_sin_pi(std::conj(z));
  return std::conj(c);
}

}  // namespace detail

inline cplx clgamma(cplx z) {
  if (z.real() >= 0.5) return detail::lgamma_half_plane(z);
  // reflection: log G(z) = log pi - log sin(pi z) - log G(1 - z)
  return std::log(detail::kPi) - detail::log_sin_pi(z) -
         detail::lgamma_half_plane(1.0 - z);
}

inline cplx cgamma(cplx z) { return std::exp(clgamma(z)); }

inline double real_gamma(double x) {
  if (x >= 0.5) return std::exp(detail::lgamma_half_plane(cplx(x, 0)).real());
  return detail::kPi /
         (std::sin(detail::kPi * x) *
          std::exp(detail::lgamma_half_plane(cplx(1.0 - x, 0)).real()));
}

}  // namespace heckelab
