#include <doctest.h>

#include <cmath>
#include <numbers>

#include "superad/model.hpp"

using namespace superad;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("theta and theta_prime") {
  ModelParams p{1.0, 1.0, 0.1};
  CHECK(theta(0.0, p) == 0.0);
  CHECK(theta(1.0, p) == doctest::Approx(kPi / 2).epsilon(1e-15));
  ModelParams ph{0.5, 1.0, 0.1};
  CHECK(theta(1e9, ph) == doctest::Approx(kPi / 2).epsilon(1e-8));

  // theta' is the derivative of theta: 2 gamma t_c/(t^2 + t_c^2)
  CHECK(theta_prime(0.0, p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(theta_prime(1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
  ModelParams p2{0.5, 2.0, 0.1};
  CHECK(theta_prime(3.0, p2) == doctest::Approx(2.0 / 13.0).epsilon(1e-15));
  double h = 1e-6;
  for (double t : {-2.0, 0.3, 1.7}) {
    double fd = (theta(t + h, p2) - theta(t - h, p2)) / (2 * h);
    CHECK(theta_prime(t, p2) == doctest::Approx(fd).epsilon(1e-8));
  }
  CHECK(theta_prime(5.0, p) == theta_prime(-5.0, p));
  CHECK(theta_prime(5.0, p) > 0);
}

TEST_CASE("hamiltonian is symmetric, traceless, det -1/4") {
  ModelParams p{1.0, 1.0, 0.1};
  Mat2R h0 = hamiltonian(0.0, p);
  CHECK(h0.a11 == doctest::Approx(0.5));
  CHECK(h0.a12 == doctest::Approx(0.0));
  CHECK(h0.a22 == doctest::Approx(-0.5));
  Mat2R h1 = hamiltonian(1.0, p);  // theta = pi/2
  CHECK(h1.a11 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(h1.a12 == doctest::Approx(0.5));
  for (double t : {-3.0, 0.4, 2.2}) {
    Mat2R h = hamiltonian(t, p);
    CHECK(h.a12 == h.a21);
    CHECK(h.a11 + h.a22 == doctest::Approx(0.0));
    CHECK(h.a11 * h.a22 - h.a12 * h.a21 == doctest::Approx(-0.25).epsilon(1e-15));
  }
}

TEST_CASE("adiabatic frame diagonalizes H and squares to id") {
  ModelParams p{1.0, 1.0, 0.1};
  Mat2R u0 = adiabatic_frame(0.0, p);
  CHECK(u0.a11 == doctest::Approx(1.0));
  CHECK(u0.a22 == doctest::Approx(-1.0));
  Mat2R u1 = adiabatic_frame(1.0, p);
  CHECK(u1.a11 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(u1.a12 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  for (double t : {-2.0, 0.7, 4.0}) {
    Mat2R u = adiabatic_frame(t, p);
    Mat2R sq = u * u;
    CHECK(sq.a11 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sq.a12 == doctest::Approx(0.0).epsilon(1e-15));
    Mat2R d = u * hamiltonian(t, p) * u;
    CHECK(d.a11 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.a12 == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(d.a22 == doctest::Approx(-0.5).epsilon(1e-15));
  }
}

TEST_CASE("xyzw basis values and relations") {
  ModelParams p{1.0, 1.0, 0.1};
  BasisXYZW b0 = basis_xyzw(0.0, p);
  CHECK(b0.x.a12 == -1.0);
  CHECK(b0.x.a21 == 1.0);
  CHECK(b0.y.a11 == doctest::Approx(-1.0));
  CHECK(b0.y.a22 == doctest::Approx(1.0));
  // Z = -Y'/theta' at theta=0 is [[0,1],[1,0]]
  CHECK(b0.z.a12 == doctest::Approx(1.0));
  CHECK(b0.z.a21 == doctest::Approx(1.0));
  CHECK(b0.z.a11 == doctest::Approx(0.0));

  // X constant in t
  BasisXYZW b1 = basis_xyzw(2.3, p);
  CHECK(b1.x.a12 == b0.x.a12);
  CHECK(b1.x.a21 == b0.x.a21);

  // Y = -2H and Z = -Y'/theta' via finite differences
  double h = 1e-5;
  for (double t : {-1.2, 0.0, 0.8}) {
    BasisXYZW b = basis_xyzw(t, p);
    Mat2R expect_y = (-2.0) * hamiltonian(t, p);
    CHECK((b.y - expect_y).norm_inf() == doctest::Approx(0.0).epsilon(1e-15));
    Mat2R yp = (1.0 / (2 * h)) * (basis_xyzw(t + h, p).y - basis_xyzw(t - h, p).y);
    Mat2R z_fd = (-1.0 / theta_prime(t, p)) * yp;
    CHECK((b.z - z_fd).norm_inf() < 1e-8);
  }
}

TEST_CASE("f_power polar form") {
  ModelParams p{1.0, 1.0, 0.1};
  for (int m : {1, 3, 17}) {
    complexd f0 = f_power(0.0, m, p);
    CHECK(f0.real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(f0.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
  complexd f2 = f_power(1.0, 2, p);  // (i/(1+i))^2 = i/2
  CHECK(f2.real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f2.imag() == doctest::Approx(0.5).epsilon(1e-14));

  // |f^m| = (1 + t^2/t_c^2)^{-m/2}, and the polar form agrees with naive
  // repeated multiplication
  ModelParams p2{1.0, 1.3, 0.1};
  for (double t : {-4.0, 0.6, 2.9}) {
    complexd acc(1.0, 0.0);
    complexd f1 = f_power(t, 1, p2);
    for (int m = 1; m <= 40; ++m) {
      acc *= f1;
      complexd fp = f_power(t, m, p2);
      CHECK(std::abs(fp - acc) < 1e-13 * std::max(1.0, std::abs(acc)));
      CHECK(std::abs(fp) ==
            doctest::Approx(std::pow(1.0 + t * t / (p2.t_c * p2.t_c), -0.5 * m))
                .epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(f_power(0.0, 0, p), std::invalid_argument);
}

TEST_CASE("model params validation") {
  CHECK_THROWS_AS((ModelParams{0.5, -1.0, 0.1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{0.5, 1.0, 0.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{std::nan(""), 1.0, 0.1}.validate()), std::invalid_argument);
}
