#pragma once

#include <vector>

#include "superad/fseries.hpp"
#include "superad/model.hpp"

namespace superad {

/// Recursion coefficients a_j^{(n)}, b_j^{(n)} for even n up to n_max.
///
///   a_0^{(2)} = 1, a_1^{(2)} = 0
///   a_j^{(n+2)} = (n+1-j)/((n+1)n) [ (n-j) a_j^{(n)} - gamma^2 sum_{k<=j} b_k^{(n)} ]   (j < n)
///   a_n^{(n+2)} = a_{n-1}^{(n+2)},  a_{n+1}^{(n+2)} = 0
///   b_j^{(n)} = (1/(n-j)) sum_{k<=j} a_k^{(n)}
class CoefficientTable {
 public:
  CoefficientTable(int n_max, double gamma);

  int n_max() const { return n_max_; }
  double gamma() const { return gamma_; }

  double a(int n, int j) const { return row_a(n).at(static_cast<size_t>(j)); }
  double b(int n, int j) const { return row_b(n).at(static_cast<size_t>(j)); }

  const std::vector<double>& row_a(int n) const;
  const std::vector<double>& row_b(int n) const;

 private:
  int n_max_;
  double gamma_;
  std::vector<std::vector<double>> a_;  // index n/2 - 1
  std::vector<std::vector<double>> b_;
};

/// Rejects odd or sub-2 n_max.
CoefficientTable build_coefficients(int n_max, double gamma);

/// lim_n a_0^{(n)} = sin(gamma pi/2) / (gamma pi/2); 1 at gamma = 0.
double a0_limit(double gamma);

/// Real companions of the pi_n basis coefficients (x_n = i * chi_n):
///   chi_n = -gamma (n-1)!/t_c^n sum_j 2^{-j} (n/(n-j)) a_j^{(n+1)} Re(f^{n-j})   (n odd)
///   z_n   = +gamma (n-1)!/t_c^n sum_j 2^{-j} a_j^{(n)} Im(f^{n-j})               (n even)
///   y_n   = +gamma^2 (n-1)!/t_c^n sum_j 2^{-j} b_j^{(n)} Re(f^{n-j})             (n even)
/// The (n-1)!/t_c^n prefactor lives in scale_log.
FSeries xn_series(int n, const CoefficientTable& table, const ModelParams& p);
FSeries zn_series(int n, const CoefficientTable& table, const ModelParams& p);
FSeries yn_series(int n, const CoefficientTable& table, const ModelParams& p);

/// One step of the exact f-basis recursion (the E1a-E1c chain):
/// from (chi_n, y_{n-1}, z_{n-1}) with n odd produce
///   z_{n+1}  = chi_n'
///   y_{n+1}  = -int_{-inf}^t theta' z_{n+1}
///   chi_{n+2} = theta' y_{n+1} - z_{n+1}'
struct OracleTriple {
  int n = 1;   // odd order of chi
  FSeries chi;  // order n
  FSeries y;    // order n - 1 (empty at n = 1)
  FSeries z;    // order n - 1
};

/// Starting point chi_1 = -theta'/2 = -(gamma/t_c) Re(f).
OracleTriple oracle_exact_start(const ModelParams& p);
OracleTriple oracle_exact_step(const OracleTriple& cur, const ModelParams& p);

/// Numeric matrix recursion pi_{n+1} = G - pi0 G - G pi0 - i [pi_n', pi0],
/// G = sum_{j=1..n} pi_j pi_{n+1-j}, with pi_n' by 7-point central differences
/// (step fd_step * t_c) in extended precision.  Returns pi_1..pi_n at each
/// grid time, plus a flag when the estimated differentiation error exceeds
/// 1e-6 of the matrix norm.
struct MatrixOracleResult {
  std::vector<std::vector<Mat2C>> pi;  // pi[k-1][i] = pi_k(snapped_t[i]), k = 1..n
  std::vector<double> snapped_t;       // grid times snapped to the FD lattice
  bool fd_warning = false;
  double fd_error_estimate = 0.0;
};

MatrixOracleResult oracle_matrix_step(int n, const ModelParams& p,
                                      const std::vector<double>& t_grid,
                                      double fd_step = 0.01);

/// Projection of a 2x2 matrix onto the X/Y/Z basis at time t
/// (the basis is Frobenius-orthogonal with norm^2 = 2).
struct XYZComponents {
  complexd x, y, z;
};
XYZComponents decompose_xyz(const Mat2C& m, double t, const ModelParams& p);

}  // namespace superad
