#include "superad/propagate.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace superad {

namespace {

using state_type = std::array<complexd, 4>;
namespace ode = boost::numeric::odeint;

Mat2C state_to_mat(const state_type& y) { return {y[0], y[1], y[2], y[3]}; }

class Driver {
 public:
  Driver(std::function<Mat2C(double)> H, double eps, const IntegratorOptions& opts)
      : H_(std::move(H)), eps_(eps), opts_(opts),
        stepper_(ode::make_controlled<ode::runge_kutta_fehlberg78<state_type>>(opts.atol,
                                                                               opts.rtol)) {}

  void rhs(const state_type& y, state_type& dy, double t) const {
    Mat2C h = H_(t);
    const complexd mi_over_eps(0.0, -1.0 / eps_);
    dy[0] = mi_over_eps * (h.a11 * y[0] + h.a12 * y[2]);
    dy[1] = mi_over_eps * (h.a11 * y[1] + h.a12 * y[3]);
    dy[2] = mi_over_eps * (h.a21 * y[0] + h.a22 * y[2]);
    dy[3] = mi_over_eps * (h.a21 * y[1] + h.a22 * y[3]);
  }

  /// Advances y from t to t_target, landing on the target exactly.
  void advance(state_type& y, double& t, double t_target) {
    auto sys = [this](const state_type& y2, state_type& dy, double tt) { rhs(y2, dy, tt); };
    double dt = std::min(opts_.max_dt_eps_factor * eps_, t_target - t);
    const double snap = (std::abs(t_target) + 1.0) * 1e-14;
    while (t_target - t > snap) {
      dt = std::min({dt, opts_.max_dt_eps_factor * eps_, t_target - t});
      if (dt < eps_ * 1e-12)
        throw NumericalFailure("integrator step size underflow at t = " + std::to_string(t));
      ode::controlled_step_result r = stepper_.try_step(sys, y, t, dt);
      (void)r;  // rejected steps shrink dt and loop again
    }
    t = t_target;
  }

 private:
  std::function<Mat2C(double)> H_;
  double eps_;
  IntegratorOptions opts_;
  ode::controlled_runge_kutta<ode::runge_kutta_fehlberg78<state_type>> stepper_;
};

std::function<Mat2C(double)> make_hamiltonian(Basis basis, const ModelParams& p,
                                              const std::optional<TruncationChoice>& choice) {
  switch (basis) {
    case Basis::original:
      return [p](double t) {
        return Mat2C::from_real(hamiltonian(t, p));
      };
    case Basis::adiabatic:
      return [p](double t) {
        double off = 0.5 * p.eps * theta_prime(t, p);
        return Mat2C{0.5, complexd(0.0, -off), complexd(0.0, off), -0.5};
      };
    case Basis::superadiabatic:
    case Basis::optimal: {
      if (!choice) throw std::invalid_argument("superadiabatic basis needs a TruncationChoice");
      auto bank = std::make_shared<FrameBank>(p, choice->n);
      return [bank](double t) {
        FrameEvaluation fr = bank->frame_at(t);
        complexd c = fr.c.value();
        return Mat2C{fr.rho, c, std::conj(c), -fr.rho};
      };
    }
  }
  throw std::logic_error("unknown basis");
}

}  // namespace

PropagationRecord integrate_hamiltonian(const std::function<Mat2C(double)>& H, double s,
                                        const std::vector<double>& grid, double eps,
                                        const IntegratorOptions& opts) {
  PropagationRecord rec;
  rec.s = s;
  Driver drv(H, eps, opts);
  state_type y{{1.0, 0.0, 0.0, 1.0}};
  double t = s;
  for (double tg : grid) {
    if (tg < t - 1e-12)
      throw std::invalid_argument("integrate: grid must ascend from the start time");
    if (tg > t) drv.advance(y, t, tg);
    Mat2C K = state_to_mat(y);
    double defect = K.unitarity_defect();
    rec.max_unitarity_defect = std::max(rec.max_unitarity_defect, defect);
    if (defect > opts.unitarity_abort)
      throw NumericalFailure("unitarity drift " + std::to_string(defect) + " at t = " +
                             std::to_string(tg));
    rec.t.push_back(tg);
    rec.K.push_back(K);
  }
  return rec;
}

PropagationRecord integrate_propagator(Basis basis, double s, double t_end,
                                       const ModelParams& p,
                                       std::optional<TruncationChoice> choice,
                                       const std::vector<double>& grid,
                                       const IntegratorOptions& opts) {
  p.validate();
  if (!(s < t_end)) throw std::invalid_argument("integrate_propagator: need s < t_end");
  std::vector<double> g = grid;
  if (g.empty() || g.back() < t_end) g.push_back(t_end);
  auto H = make_hamiltonian(basis, p, choice);
  PropagationRecord rec = integrate_hamiltonian(H, s, g, p.eps, opts);
  rec.basis = basis;
  rec.order = choice ? choice->n : 0;
  return rec;
}

complexd erf_reference(double t, double s, const ModelParams& p,
                       const TruncationChoice& choice) {
  (void)choice;
  double w = std::sqrt(2.0 * p.eps * p.t_c);
  double amp = -std::sin(std::numbers::pi * p.gamma / 2.0) * std::exp(-p.t_c / p.eps);
  complexd phase = std::exp(complexd(0.0, -(t + s) / (2.0 * p.eps)));
  return amp * phase * (std::erf(t / w) - std::erf(s / w));
}

HistoryResult transition_history(const ModelParams& p, const TruncationChoice& choice,
                                 double T, const std::vector<double>& grid,
                                 const IntegratorOptions& opts) {
  if (!(T >= 10.0 * std::max(p.t_c, std::sqrt(p.eps * p.t_c))))
    throw std::invalid_argument("transition_history: horizon too short");
  HistoryResult out;
  out.record = integrate_propagator(Basis::optimal, -T, T, p, choice, grid, opts);
  out.record.reference.reserve(out.record.t.size());
  for (size_t i = 0; i < out.record.t.size(); ++i) {
    complexd ref = erf_reference(out.record.t[i], -T, p, choice);
    out.record.reference.push_back(ref);
    out.sup_deviation = std::max(
        out.sup_deviation, std::abs(std::abs(out.record.K[i].a12) - std::abs(ref)));
  }

  // validation: conjugate by diag(1, e^{t_c/eps}) so the upper off-diagonal
  // integrates at O(sqrt(eps)) scale instead of e^{-t_c/eps}
  double boost_log = p.t_c / p.eps;
  FrameBank bank(p, choice.n);
  auto Hs = [&bank, boost_log](double t) {
    FrameEvaluation fr = bank.frame_at(t);
    complexd up = fr.c.rescaled(boost_log).value();
    complexd dn = std::conj(fr.c.rescaled(-boost_log).value());
    return Mat2C{fr.rho, up, dn, -fr.rho};
  };
  IntegratorOptions o2 = opts;
  o2.unitarity_abort = std::numeric_limits<double>::infinity();  // not unitary by design
  PropagationRecord scaled = integrate_hamiltonian(Hs, -T, out.record.t, p.eps, o2);
  double scale = std::exp(-boost_log);
  for (size_t i = 0; i < out.record.t.size(); ++i) {
    double a = std::abs(out.record.K[i].a12);
    double b = std::abs(scaled.K[i].a12) * scale;
    double ref = std::max(std::abs(out.record.reference[i]), 1e-3 * std::exp(-boost_log));
    out.rescaled_mismatch = std::max(out.rescaled_mismatch, std::abs(a - b) / ref);
  }
  out.precision_flag = out.rescaled_mismatch > 0.01;
  return out;
}

namespace {

ScatterResult scatter_once(const ModelParams& p, double T, const IntegratorOptions& opts,
                           Parity parity) {
  TruncationChoice ch = choose_truncation(p, parity);
  PropagationRecord rec =
      integrate_propagator(Basis::optimal, -T, T, p, ch, {T}, opts);
  Mat2C K = rec.K.back();
  complexd ph = std::exp(complexd(0.0, 0.5 * T / p.eps));
  Mat2C E{ph, 0.0, 0.0, std::conj(ph)};
  ScatterResult r;
  r.eps = p.eps;
  r.T = T;
  r.S = E * K * E;
  r.amplitude_measured = std::abs(r.S.a21);
  r.amplitude_theory =
      2.0 * std::sin(std::numbers::pi * p.gamma / 2.0) * std::exp(-p.t_c / p.eps);
  r.relative_error = r.amplitude_theory != 0.0
                         ? r.amplitude_measured / r.amplitude_theory - 1.0
                         : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace

ScatterResult scattering(const ModelParams& p, double T, const IntegratorOptions& opts,
                         Parity parity, bool validate_horizon) {
  ScatterResult r = scatter_once(p, T, opts, parity);
  if (validate_horizon) {
    ScatterResult r2 = scatter_once(p, 2.0 * T, opts, parity);
    double denom = std::max(r.amplitude_measured, 1e-300);
    r.doubling_change = std::abs(r2.amplitude_measured - r.amplitude_measured) / denom;
    r.horizon_flag = r.doubling_change > 0.005;
  }
  return r;
}

complexd dyson_offdiagonal(const ModelParams& p, const TruncationChoice& choice, double s,
                           double t) {
  if (t == s) return {0.0, 0.0};
  if (t < s) return -dyson_offdiagonal(p, choice, t, s);
  // the integrand dies like e^{-tau^2/(2 eps t_c)}; clip to the support
  double width = std::sqrt(p.eps * p.t_c);
  double lo = std::max(s, -12.0 * width);
  double hi = std::min(t, 12.0 * width);
  if (lo >= hi) return {0.0, 0.0};
  double scale_log = -p.t_c / p.eps;  // factored out of the quadrature
  auto integrand_re = [&](double tau) {
    ScaledComplex c = coupling_asymptotic(tau, choice, p);
    complexd v = std::exp(complexd(0.0, tau / p.eps)) * c.rescaled(-scale_log).value();
    return v.real();
  };
  auto integrand_im = [&](double tau) {
    ScaledComplex c = coupling_asymptotic(tau, choice, p);
    complexd v = std::exp(complexd(0.0, tau / p.eps)) * c.rescaled(-scale_log).value();
    return v.imag();
  };
  using gk = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err1 = 0, err2 = 0;
  double re = gk::integrate(integrand_re, lo, hi, 12, 1e-12, &err1);
  double im = gk::integrate(integrand_im, lo, hi, 12, 1e-12, &err2);
  double tol = 1e-6 * (std::abs(re) + std::abs(im) + 1e-30);
  if (err1 > tol || err2 > tol)
    throw NumericalFailure("dyson_offdiagonal: quadrature did not converge");
  complexd integral(re, im);
  complexd phase = std::exp(complexd(0.0, -(t + s) / (2.0 * p.eps)));
  return phase * complexd(0.0, -1.0 / p.eps) * integral * std::exp(scale_log);
}

}  // namespace superad
