#include "superad/frames.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace superad {

double ScaledComplex::abs_log() const {
  double am = std::abs(mantissa);
  if (am == 0.0) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(am);
}

TruncationChoice choose_truncation(const ModelParams& p, Parity parity) {
  p.validate();
  double r = p.t_c / p.eps - 1.0;
  if (r < 2.0 - 1e-12)
    throw std::invalid_argument("choose_truncation: eps too large, need t_c/eps >= 3");
  // snap near-integer r so sigma comes out exactly 0 in round cases
  double rr = std::round(r);
  if (std::abs(r - rr) < 1e-9) r = rr;
  int n = static_cast<int>(std::ceil(r));
  bool want_odd = parity == Parity::odd;
  if ((n % 2 != 0) != want_odd) ++n;
  TruncationChoice ch;
  ch.n = n;
  ch.sigma = n - r;
  ch.parity = parity;
  return ch;
}

FrameBank::FrameBank(const ModelParams& p, int n)
    : p_(p), n_(n), table_(n + 2 - (n % 2), p.gamma) {
  p.validate();
  if (n < 1) throw std::invalid_argument("FrameBank: order must be >= 1");
  chi_.resize(static_cast<size_t>(n) + 2);
  y_.resize(static_cast<size_t>(n) + 2);
  z_.resize(static_cast<size_t>(n) + 2);
  dchi_.resize(static_cast<size_t>(n) + 2);
  dy_.resize(static_cast<size_t>(n) + 2);
  dz_.resize(static_cast<size_t>(n) + 2);
  for (int k = 1; k <= n + 1; ++k) {
    if (k % 2 == 1) {
      chi_[static_cast<size_t>(k)] = xn_series(k, table_, p_);
      dchi_[static_cast<size_t>(k)] = derivative(chi_[static_cast<size_t>(k)], p_);
    } else {
      y_[static_cast<size_t>(k)] = yn_series(k, table_, p_);
      z_[static_cast<size_t>(k)] = zn_series(k, table_, p_);
      dy_[static_cast<size_t>(k)] = derivative(y_[static_cast<size_t>(k)], p_);
      dz_[static_cast<size_t>(k)] = derivative(z_[static_cast<size_t>(k)], p_);
    }
  }
}

struct FrameBank::Eval {
  // eps^k-weighted values and derivatives, index by order k
  std::vector<double> vx, vy, vz, dx, dy, dz;
  double chi_next_mantissa = 0;  // order n+1 series mantissa (no prefactor)
  double z_next_mantissa = 0;
  double next_log = 0;  // scale_log + (n+1) log eps
  PartialSums sums;
  double gd = 0;  // g'
};

FrameBank::Eval FrameBank::evaluate(double t) const {
  Eval e;
  int n = n_;
  std::vector<double> ref, imf;
  f_power_table(t, n + 2, p_, ref, imf);
  double leps = std::log(p_.eps);
  e.vx.assign(static_cast<size_t>(n) + 2, 0.0);
  e.vy.assign(static_cast<size_t>(n) + 2, 0.0);
  e.vz.assign(static_cast<size_t>(n) + 2, 0.0);
  e.dx.assign(static_cast<size_t>(n) + 2, 0.0);
  e.dy.assign(static_cast<size_t>(n) + 2, 0.0);
  e.dz.assign(static_cast<size_t>(n) + 2, 0.0);
  for (int k = 1; k <= n + 1; ++k) {
    auto ks = static_cast<size_t>(k);
    if (k % 2 == 1) {
      double w = std::exp(chi_[ks].scale_log + k * leps);
      e.vx[ks] = w * chi_[ks].evaluate_mantissa(ref, imf);
      e.dx[ks] = w * dchi_[ks].evaluate_mantissa(ref, imf);
    } else {
      double w = std::exp(y_[ks].scale_log + k * leps);
      e.vy[ks] = w * y_[ks].evaluate_mantissa(ref, imf);
      e.vz[ks] = w * z_[ks].evaluate_mantissa(ref, imf);
      e.dy[ks] = w * dy_[ks].evaluate_mantissa(ref, imf);
      e.dz[ks] = w * dz_[ks].evaluate_mantissa(ref, imf);
    }
  }
  for (int k = 1; k <= n; ++k) {
    auto ks = static_cast<size_t>(k);
    e.sums.xi += e.vx[ks];
    e.sums.eta += e.vy[ks];
    e.sums.zeta += e.vz[ks];
  }
  // g = sum_k eps^{n+k} g_{n+1,k}, g_{n+1,k} = sum_j (chi chi + y y + z z)
  double g = 0.0;
  auto ns = static_cast<size_t>(n);
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j <= n - k; ++j) {
      auto aj = static_cast<size_t>(j + k);
      auto bj = static_cast<size_t>(n - j);
      g += e.vx[aj] * e.vx[bj] + e.vy[aj] * e.vy[bj] + e.vz[aj] * e.vz[bj];
    }
  }
  e.sums.g = g;
  // g' from the telescoped identity g'_{n+1,k} = 2 (chi_k z_{n+1} - z_k chi_{n+1})
  double gd = 0.0;
  auto n1 = static_cast<size_t>(n + 1);
  for (int k = 1; k <= n; ++k) {
    auto ks = static_cast<size_t>(k);
    gd += 2.0 * (e.vx[ks] * e.vz[n1] - e.vz[ks] * e.vx[n1]) / p_.eps;
  }
  e.gd = gd;
  (void)ns;
  if ((n + 1) % 2 == 1) {
    e.next_log = chi_[n1].scale_log + (n + 1) * leps;
    e.chi_next_mantissa = chi_[n1].evaluate_mantissa(ref, imf);
  } else {
    e.next_log = z_[n1].scale_log + (n + 1) * leps;
    e.z_next_mantissa = z_[n1].evaluate_mantissa(ref, imf);
  }
  return e;
}

PartialSums FrameBank::partial_sums(double t) const { return evaluate(t).sums; }

FrameBank::OrderValues FrameBank::order_values(double t) const {
  Eval e = evaluate(t);
  return {std::move(e.vx), std::move(e.vy), std::move(e.vz)};
}

FrameEvaluation FrameBank::frame_at(double t) const {
  Eval e = evaluate(t);
  FrameEvaluation fr;
  fr.t = t;
  fr.sums = e.sums;
  double g = e.sums.g;
  double disc = 1.0 + 4.0 * g;
  if (disc <= 0.0) throw std::domain_error("frame_at: 1 + 4g <= 0, outside the valid regime");
  double s = std::sqrt(disc);
  fr.lambda1 = 0.5 * (1.0 + s);
  fr.lambda2 = -2.0 * g / (1.0 + s);
  double a2 = (1.0 + s - 2.0 * e.sums.eta) / (2.0 * s);
  if (a2 <= 0.0) throw std::domain_error("frame_at: alpha^2 <= 0, outside the valid regime");
  double alpha = std::sqrt(a2);
  complexd beta = -complexd(e.sums.zeta, e.sums.xi) / (s * alpha);
  fr.alpha = alpha;
  fr.beta = beta;

  // derivatives for rho: s' = 2g'/s, (a^2)' = [(s'-2 eta')s - (1+s-2 eta)s']/(2s^2)
  double xid = 0, etad = 0, zetad = 0;
  for (int k = 1; k <= n_; ++k) {
    auto ks = static_cast<size_t>(k);
    xid += e.dx[ks];
    etad += e.dy[ks];
    zetad += e.dz[ks];
  }
  double sd = 2.0 * e.gd / s;
  double a2d = ((sd - 2.0 * etad) * s - (1.0 + s - 2.0 * e.sums.eta) * sd) / (2.0 * s * s);
  double alphad = a2d / (2.0 * alpha);
  complexd num(e.sums.zeta, e.sums.xi);
  complexd numd(zetad, xid);
  complexd betad = -numd / (s * alpha) + num * (sd * alpha + s * alphad) / (s * s * a2);

  double thp = theta_prime(t, p_);
  fr.rho = 0.5 - std::norm(beta) +
           p_.eps * (std::imag(std::conj(beta) * betad) + alpha * thp * beta.imag());

  // c = eps^{n+1} [alpha^2 (x_{n+1} - z_{n+1}) - conj(beta)^2 (x_{n+1} + z_{n+1})]/(l1 - l2)
  complexd b2 = std::conj(beta) * std::conj(beta);
  complexd mant;
  if ((n_ + 1) % 2 == 1) {
    mant = complexd(0.0, e.chi_next_mantissa) * (a2 - b2) / s;
  } else {
    mant = -e.z_next_mantissa * (a2 + b2) / s;
  }
  fr.c = ScaledComplex{mant, e.next_log};

  double h = 0.5 * theta(t, p_);
  double c0 = std::cos(h), s0 = std::sin(h);
  complexd bc = std::conj(beta);
  fr.U = Mat2C{alpha * c0 + bc * s0, alpha * s0 - bc * c0,
               alpha * s0 - beta * c0, -alpha * c0 - beta * s0};
  return fr;
}

ScaledComplex FrameBank::coupling_exact(double t) const { return frame_at(t).c; }

PartialSums partial_sums(double t, int n, const ModelParams& p, const CoefficientTable& table) {
  if (n + 1 > table.n_max() + 1)
    throw std::invalid_argument("partial_sums: table too small for requested order");
  FrameBank bank(p, n);
  return bank.partial_sums(t);
}

FrameEvaluation frame_at(double t, const TruncationChoice& choice, const ModelParams& p) {
  FrameBank bank(p, choice.n);
  return bank.frame_at(t);
}

ScaledComplex coupling_exact(double t, const TruncationChoice& choice, const ModelParams& p) {
  FrameBank bank(p, choice.n);
  return bank.coupling_exact(t);
}

ScaledComplex coupling_asymptotic(double t, const TruncationChoice& choice,
                                  const ModelParams& p, bool simple_cos) {
  double amp = 2.0 * std::sin(std::numbers::pi * p.gamma / 2.0) *
               std::sqrt(2.0 * p.eps / (std::numbers::pi * p.t_c));
  double lg = -p.t_c / p.eps - t * t / (2.0 * p.eps * p.t_c);
  double phase = simple_cos
                     ? t / p.eps
                     : t / p.eps - t * t * t / (3.0 * p.eps * p.t_c * p.t_c) +
                           choice.sigma * t / p.t_c;
  ScaledComplex out;
  out.log_scale = lg + std::log(std::abs(amp) > 0 ? std::abs(amp) : 1.0);
  double sgn = amp >= 0 ? 1.0 : -1.0;
  if (choice.parity == Parity::even) {
    out.mantissa = complexd(0.0, -sgn * std::cos(phase));
  } else {
    out.mantissa = complexd(-sgn * std::sin(phase), 0.0);
  }
  if (amp == 0.0) out.mantissa = 0.0;
  return out;
}

double error_envelope_log(double t, double alpha_exp, const ModelParams& p) {
  if (std::abs(t) < p.t_c) {
    return alpha_exp * std::log(p.eps) -
           (p.t_c / p.eps) * (1.0 + t * t / (4.0 * p.t_c * p.t_c));
  }
  return -std::log1p(t * t) - (p.t_c / p.eps) * (1.0 + 0.5 * std::numbers::ln2);
}

double error_envelope(double t, double alpha_exp, const ModelParams& p) {
  return std::exp(error_envelope_log(t, alpha_exp, p));
}

}  // namespace superad
