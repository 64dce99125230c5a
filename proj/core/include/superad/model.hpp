#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace superad {

using complexd = std::complex<double>;

/// Problem instance: coupling strength gamma, pole distance t_c > 0,
/// adiabatic parameter eps > 0.
struct ModelParams {
  double gamma = 0.5;
  double t_c = 1.0;
  double eps = 0.1;

  void validate() const {
    if (!(t_c > 0.0) || !std::isfinite(t_c)) throw std::invalid_argument("t_c must be > 0");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be > 0");
    if (!std::isfinite(gamma)) throw std::invalid_argument("gamma must be finite");
  }
};

struct Mat2R {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;

  friend Mat2R operator*(const Mat2R& x, const Mat2R& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2R operator+(const Mat2R& x, const Mat2R& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }
  friend Mat2R operator-(const Mat2R& x, const Mat2R& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
  }
  friend Mat2R operator*(double s, const Mat2R& x) {
    return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
  }
  double norm_inf() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
};

struct Mat2C {
  complexd a11{0, 0}, a12{0, 0}, a21{0, 0}, a22{0, 0};

  static Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2C from_real(const Mat2R& m) { return {m.a11, m.a12, m.a21, m.a22}; }

  Mat2C adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
  }
  friend Mat2C operator*(const Mat2C& x, const Mat2C& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Mat2C operator+(const Mat2C& x, const Mat2C& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }
  friend Mat2C operator-(const Mat2C& x, const Mat2C& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
  }
  friend Mat2C operator*(complexd s, const Mat2C& x) {
    return {s * x.a11, s * x.a12, s * x.a21, s * x.a22};
  }
  double norm_inf() const {
    return std::max(std::max(std::abs(a11), std::abs(a12)),
                    std::max(std::abs(a21), std::abs(a22)));
  }
  /// ||K* K - id||, the unitarity defect.
  double unitarity_defect() const {
    Mat2C d = adjoint() * (*this) - identity();
    return d.norm_inf();
  }
};

/// theta(t) = 2 gamma arctan(t / t_c); odd, theta(+-inf) = +-gamma pi.
double theta(double t, const ModelParams& p);

/// theta'(t) = 2 gamma t_c / (t^2 + t_c^2) = (gamma/t_c)(f + conj f).
double theta_prime(double t, const ModelParams& p);

/// H(t) = (1/2) [[cos theta, sin theta], [sin theta, -cos theta]].
Mat2R hamiltonian(double t, const ModelParams& p);

/// U_0(t) = [[cos(theta/2), sin(theta/2)], [sin(theta/2), -cos(theta/2)]];
/// orthogonal involution diagonalizing H.
Mat2R adiabatic_frame(double t, const ModelParams& p);

/// Spectral projectors in the adiabatic representation.
Mat2R projector_plus();
Mat2R projector_minus();

/// pi_0(t) = U_0 P_+ U_0, the adiabatic projector in the original basis.
Mat2R pi0(double t, const ModelParams& p);

struct BasisXYZW {
  Mat2R x, y, z, w;
};

/// X = [[0,-1],[1,0]], Y = -2H, Z = -Y'/theta', W = id.
BasisXYZW basis_xyzw(double t, const ModelParams& p);

/// f(t)^m with f = i t_c/(t + i t_c), computed in polar form:
/// |f| = t_c/sqrt(t^2+t_c^2), arg f = arctan(t/t_c).
complexd f_power(double t, int m, const ModelParams& p);

/// Delta(t,s) = arctan(t) - arctan(s), the time-localization weight.
inline double delta_weight(double t, double s) { return std::atan(t) - std::atan(s); }

}  // namespace superad
