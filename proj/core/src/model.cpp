#include "superad/model.hpp"

namespace superad {

double theta(double t, const ModelParams& p) {
  return 2.0 * p.gamma * std::atan(t / p.t_c);
}

double theta_prime(double t, const ModelParams& p) {
  return 2.0 * p.gamma * p.t_c / (t * t + p.t_c * p.t_c);
}

Mat2R hamiltonian(double t, const ModelParams& p) {
  double th = theta(t, p);
  double c = std::cos(th), s = std::sin(th);
  return {0.5 * c, 0.5 * s, 0.5 * s, -0.5 * c};
}

Mat2R adiabatic_frame(double t, const ModelParams& p) {
  double h = 0.5 * theta(t, p);
  double c = std::cos(h), s = std::sin(h);
  return {c, s, s, -c};
}

Mat2R projector_plus() { return {1, 0, 0, 0}; }
Mat2R projector_minus() { return {0, 0, 0, 1}; }

Mat2R pi0(double t, const ModelParams& p) {
  double th = theta(t, p);
  double c = std::cos(th), s = std::sin(th);
  return {0.5 * (1 + c), 0.5 * s, 0.5 * s, 0.5 * (1 - c)};
}

BasisXYZW basis_xyzw(double t, const ModelParams& p) {
  double th = theta(t, p);
  double c = std::cos(th), s = std::sin(th);
  BasisXYZW b;
  b.x = {0, -1, 1, 0};
  b.y = {-c, -s, -s, c};
  b.z = {-s, c, c, s};
  b.w = {1, 0, 0, 1};
  return b;
}

complexd f_power(double t, int m, const ModelParams& p) {
  if (m < 1) throw std::invalid_argument("f_power: m must be >= 1");
  double log_mag = std::log(p.t_c) - 0.5 * std::log(t * t + p.t_c * p.t_c);
  double phase = std::atan(t / p.t_c);
  double r = std::exp(m * log_mag);
  return {r * std::cos(m * phase), r * std::sin(m * phase)};
}

}  // namespace superad
