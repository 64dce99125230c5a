// Property-style checks over randomly sampled parameters (fixed seed, so
// runs stay reproducible).

#include <doctest.h>

#include <cmath>
#include <random>

#include "superad/coeffs.hpp"
#include "superad/frames.hpp"

using namespace superad;

namespace {

std::mt19937_64 rng(0x5eed5eed);

double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

TEST_CASE("property: basis algebra holds for random (gamma, t_c, t)") {
  for (int trial = 0; trial < 200; ++trial) {
    ModelParams p{uniform(-2.0, 2.0), uniform(0.2, 5.0), 0.1};
    double t = uniform(-20.0, 20.0);
    BasisXYZW b = basis_xyzw(t, p);
    Mat2R P0 = pi0(t, p);
    CHECK((b.x * b.y + b.y * b.x).norm_inf() < 1e-14);
    CHECK((b.y * b.z + b.z * b.y).norm_inf() < 1e-14);
    CHECK((b.y * b.y - b.w).norm_inf() < 1e-14);
    CHECK(((-1.0) * (b.x * b.x) - b.w).norm_inf() < 1e-14);
    CHECK((b.x * P0 - P0 * b.x - b.z).norm_inf() < 1e-14);
    CHECK((b.z * P0 - P0 * b.z - b.x).norm_inf() < 1e-14);
    CHECK((b.y * P0 - P0 * b.y).norm_inf() < 1e-14);
    CHECK((b.w - (b.w * P0 + P0 * b.w) - b.y).norm_inf() < 1e-14);
    // projector: P0^2 = P0
    CHECK((P0 * P0 - P0).norm_inf() < 1e-14);
  }
}

TEST_CASE("property: f-power calculus for random parameters and orders") {
  for (int trial = 0; trial < 100; ++trial) {
    ModelParams p{uniform(0.1, 1.8), uniform(0.3, 3.0), 0.1};
    double t = uniform(-8.0, 8.0);
    int m = 1 + static_cast<int>(uniform(0.0, 12.0));
    // (f^m)' = i m f^{m+1} / t_c  against a central difference
    double h = 1e-6 * p.t_c;
    complexd fd = (f_power(t + h, m, p) - f_power(t - h, m, p)) / (2.0 * h);
    complexd exact = complexd(0.0, m / p.t_c) * f_power(t, m + 1, p);
    CHECK(std::abs(fd - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
    // conjugation symmetry f(-t) = conj f(t)
    complexd mirrored = f_power(-t, m, p);
    CHECK(std::abs(mirrored - std::conj(f_power(t, m, p))) < 1e-14);
    // |f|^2 = Re f
    complexd f1 = f_power(t, 1, p);
    CHECK(std::norm(f1) == doctest::Approx(f1.real()).epsilon(1e-13));
  }
}

TEST_CASE("property: series chain consistency at random parameters") {
  for (int trial = 0; trial < 20; ++trial) {
    ModelParams p{uniform(0.2, 1.6), uniform(0.4, 2.5), 0.1};
    CoefficientTable tb = build_coefficients(10, p.gamma);
    double t = uniform(-3.0, 3.0);
    double h = 1e-5 * p.t_c;
    for (int n : {2, 4, 6}) {
      // z_{n} = chi_{n-1}', y_n' = -theta' z_n, chi_{n+1} = theta' y_n - z_n'
      FSeries chi_prev = xn_series(n - 1, tb, p);
      FSeries z = zn_series(n, tb, p);
      FSeries y = yn_series(n, tb, p);
      FSeries chi_next = xn_series(n + 1, tb, p);
      double dchi = (chi_prev.evaluate(t + h, p) - chi_prev.evaluate(t - h, p)) / (2 * h);
      CHECK(z.evaluate(t, p) == doctest::Approx(dchi).epsilon(1e-6));
      double dy = (y.evaluate(t + h, p) - y.evaluate(t - h, p)) / (2 * h);
      CHECK(dy == doctest::Approx(-theta_prime(t, p) * z.evaluate(t, p)).epsilon(1e-6));
      double dz = (z.evaluate(t + h, p) - z.evaluate(t - h, p)) / (2 * h);
      CHECK(chi_next.evaluate(t, p) ==
            doctest::Approx(theta_prime(t, p) * y.evaluate(t, p) - dz).epsilon(1e-6));
    }
  }
}

TEST_CASE("property: truncation choice is the unique in-window order") {
  for (int trial = 0; trial < 300; ++trial) {
    ModelParams p{0.5, uniform(0.3, 3.0), 0.0};
    p.eps = p.t_c / uniform(3.2, 30.0);
    for (Parity parity : {Parity::even, Parity::odd}) {
      TruncationChoice ch = choose_truncation(p, parity);
      CHECK(ch.sigma >= 0.0);
      CHECK(ch.sigma < 2.0);
      CHECK((ch.n % 2 == 0) == (parity == Parity::even));
      CHECK(ch.n == doctest::Approx(p.t_c / p.eps - 1.0 + ch.sigma).epsilon(1e-9));
      CHECK(ch.n >= 2 - (parity == Parity::odd ? 1 : 0));
    }
  }
}

TEST_CASE("property: frame normalization and diagonalization at random params") {
  for (int trial = 0; trial < 15; ++trial) {
    ModelParams p{uniform(0.2, 1.5), uniform(0.5, 2.0), 0.0};
    p.eps = p.t_c / uniform(4.0, 15.0);
    TruncationChoice ch = choose_truncation(p);
    FrameBank bank(p, ch.n);
    double t = uniform(-4.0 * p.t_c, 4.0 * p.t_c);
    FrameEvaluation fr = bank.frame_at(t);
    CHECK(std::abs(fr.alpha * fr.alpha + std::norm(fr.beta) - 1.0) < 1e-12);
    CHECK(fr.U.unitarity_defect() < 1e-12);
    CHECK(std::abs(fr.lambda1 * fr.lambda1 - fr.lambda1 - fr.sums.g) < 1e-13);
    CHECK(fr.rho == doctest::Approx(0.5).epsilon(0.2));
    // coupling magnitude is even in t up to higher order phase structure
    double ca = std::abs(coupling_asymptotic(t, ch, p).value());
    double cb = std::abs(coupling_asymptotic(-t, ch, p).value());
    CHECK(ca == doctest::Approx(cb).epsilon(1e-10));
  }
}
