#include <doctest.h>

#include <cmath>
#include <numbers>

#include "superad/propagate.hpp"

using namespace superad;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}
}  // namespace

TEST_CASE("gamma=0 decouples in every basis") {
  ModelParams p{0.0, 1.0, 0.1};
  TruncationChoice ch{4, 0.0, Parity::even};
  for (Basis b : {Basis::original, Basis::adiabatic, Basis::superadiabatic}) {
    std::optional<TruncationChoice> c;
    if (b == Basis::superadiabatic) c = ch;
    PropagationRecord rec = integrate_propagator(b, -4.0, 4.0, p, c, linspace(-4, 4, 9));
    for (size_t i = 0; i < rec.t.size(); ++i) {
      complexd phase = std::exp(complexd(0.0, -(rec.t[i] + 4.0) / (2 * p.eps)));
      CHECK(std::abs(rec.K[i].a11 - phase) < 1e-10);
      CHECK(std::abs(rec.K[i].a22 - std::conj(phase)) < 1e-10);
      CHECK(std::abs(rec.K[i].a12) < 1e-12);
      CHECK(std::abs(rec.K[i].a21) < 1e-12);
    }
  }
}

TEST_CASE("propagators are unitary, K(s,s)=id, composition holds") {
  ModelParams p{0.5, 1.0, 0.1};
  PropagationRecord rec =
      integrate_propagator(Basis::original, -3.0, 5.0, p, std::nullopt, {-3.0, 1.0, 5.0});
  CHECK((rec.K[0] - Mat2C::identity()).norm_inf() == 0.0);
  CHECK(rec.max_unitarity_defect < 1e-10);
  PropagationRecord tail =
      integrate_propagator(Basis::original, 1.0, 5.0, p, std::nullopt, {5.0});
  Mat2C composed = tail.K.back() * rec.K[1];
  CHECK((composed - rec.K[2]).norm_inf() < 1e-9);
}

TEST_CASE("erf reference values") {
  ModelParams p{0.5, 1.0, 0.2};
  TruncationChoice ch = choose_truncation(p);
  CHECK(std::abs(erf_reference(0.7, 0.7, p, ch)) == 0.0);
  double lim = std::abs(erf_reference(1e4, -1e4, p, ch));
  CHECK(lim == doctest::Approx(2.0 * std::sin(kPi / 4) * std::exp(-5.0)).epsilon(1e-12));
  CHECK(lim == doctest::Approx(9.5296e-3).epsilon(1e-4));
}

TEST_CASE("transition history follows the erf law and flags nothing") {
  ModelParams p{0.5, 1.0, 0.1};
  TruncationChoice ch = choose_truncation(p);
  double T = 50.0;
  std::vector<double> grid;
  for (double t : linspace(-T, -3.0, 30)) grid.push_back(t);
  for (double t : linspace(-2.98, 2.98, 200)) grid.push_back(t);
  for (double t : linspace(3.0, T, 30)) grid.push_back(t);
  HistoryResult h = transition_history(p, ch, T, grid);
  CHECK(h.sup_deviation < 0.5 * std::sqrt(p.eps) * std::exp(-10.0));
  CHECK_FALSE(h.precision_flag);
  // final amplitude ~ 2 sin(pi/4) e^{-10} within 10%
  double fin = std::abs(h.record.K.back().a12);
  CHECK(fin == doctest::Approx(6.4205e-5).epsilon(0.1));
  // half amplitude at t=0
  for (size_t i = 0; i < h.record.t.size(); ++i) {
    if (std::abs(h.record.t[i]) < 0.02) {
      CHECK(std::abs(h.record.K[i].a12) ==
            doctest::Approx(std::sin(kPi / 4) * std::exp(-10.0)).epsilon(0.1));
    }
  }
  CHECK_THROWS_AS(transition_history(p, ch, 1.0, grid), std::invalid_argument);
}

TEST_CASE("scattering against closed-form numbers") {
  ModelParams p{0.5, 1.0, 0.2};
  ScatterResult r = scattering(p, 50.0, {}, Parity::even, true);
  CHECK(r.amplitude_theory == doctest::Approx(9.5296e-3).epsilon(1e-4));
  CHECK(std::abs(r.relative_error) < 0.1);
  CHECK_FALSE(r.horizon_flag);
  CHECK(r.S.unitarity_defect() < 1e-9);
  // diagonal moduli 1 + O(eps)
  CHECK(std::abs(std::abs(r.S.a11) - 1.0) < p.eps);
  CHECK(std::abs(std::abs(r.S.a22) - 1.0) < p.eps);
  CHECK(r.amplitude_measured >= 0.0);
  CHECK(r.amplitude_measured <= 1.0);
}

TEST_CASE("scattering guard at gamma=2") {
  ModelParams p{2.0, 1.0, 0.1};
  ScatterResult r = scattering(p, 50.0, {}, Parity::even, false);
  CHECK(r.amplitude_theory == doctest::Approx(0.0));
  // leading term vanishes; subleading transitions are O(eps) e^{-t_c/eps}
  CHECK(r.amplitude_measured <= 10.0 * p.eps * std::exp(-10.0));
}

TEST_CASE("dyson integral reproduces the erf reference") {
  ModelParams p{0.5, 1.0, 0.1};
  TruncationChoice ch = choose_truncation(p);
  double scale = std::sqrt(p.eps) * std::exp(-10.0);
  for (auto [s, t] : std::vector<std::pair<double, double>>{{-50, 50}, {-50, 0}, {-1, 2}}) {
    complexd dy = dyson_offdiagonal(p, ch, s, t);
    complexd ref = erf_reference(t, s, p, ch);
    CHECK(std::abs(dy - ref) < 0.5 * scale);
  }
  CHECK(std::abs(dyson_offdiagonal(p, ch, 0.4, 0.4)) == 0.0);
  // orientation: swapping the limits conjugates up to the dynamical phase
  complexd fwd = dyson_offdiagonal(p, ch, -1.0, 2.0);
  complexd bwd = dyson_offdiagonal(p, ch, 2.0, -1.0);
  CHECK(std::abs(fwd + bwd) < 1e-15 + 1e-12 * std::abs(fwd));
}

TEST_CASE("integrator error paths") {
  ModelParams p{0.5, 1.0, 0.1};
  CHECK_THROWS_AS(
      integrate_propagator(Basis::original, 2.0, -1.0, p, std::nullopt, {}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      integrate_propagator(Basis::superadiabatic, -1.0, 1.0, p, std::nullopt, {1.0}),
      std::invalid_argument);
}
