#pragma once

#include <vector>

#include "superad/model.hpp"

namespace superad {

/// Finite expansion  exp(scale_log) * sum_m [ re[m] Re(f^m) + im[m] Im(f^m) ],
/// f = i t_c/(t + i t_c).  The family is closed under d/dt, antidifferentiation
/// (for m >= 2) and multiplication by theta'; scale_log absorbs the factorial
/// prefactors so coefficients stay O(1).
struct FSeries {
  std::vector<double> re;  // re[m], index 0 unused
  std::vector<double> im;
  double scale_log = 0.0;

  explicit FSeries(int max_m = 0) : re(max_m + 1, 0.0), im(max_m + 1, 0.0) {}

  int max_m() const { return static_cast<int>(re.size()) - 1; }

  /// Value including the exp(scale_log) prefactor.
  double evaluate(double t, const ModelParams& p) const;

  /// Value without the prefactor (caller combines scale_log externally).
  double evaluate_mantissa(double t, const ModelParams& p) const;

  /// Mantissa evaluated from precomputed Re(f^m), Im(f^m) tables (index m).
  double evaluate_mantissa(const std::vector<double>& ref,
                           const std::vector<double>& imf) const;
};

/// d/dt:  Re(f^m) -> -(m/t_c) Im(f^{m+1}),  Im(f^m) -> (m/t_c) Re(f^{m+1}).
FSeries derivative(const FSeries& s, const ModelParams& p);

/// int_{-inf}^t, valid when all terms have m >= 2 (every f^m with m >= 2
/// vanishes at -inf):  Im(f^m) -> -(t_c/(m-1)) Re(f^{m-1}),
/// Re(f^m) -> (t_c/(m-1)) Im(f^{m-1}).  Throws if an m=1 term is present.
FSeries antiderivative(const FSeries& s, const ModelParams& p);

/// theta'(t) * s(t), using the partial-fraction closure:
///   theta' Im(f^m) = (gamma/t_c) sum_{k=0}^{m-1} 2^{-k} Im(f^{m+1-k})
///   theta' Re(f^m) = (gamma/t_c) sum_{k=0}^{m-1} 2^{-k} Re(f^{m+1-k}) + 2^{-m} theta'
/// with theta' = (2 gamma/t_c) Re(f).
FSeries theta_prime_multiply(const FSeries& s, const ModelParams& p);

/// Fills ref[m] = Re(f^m), imf[m] = Im(f^m) for m = 1..max_m.
void f_power_table(double t, int max_m, const ModelParams& p,
                   std::vector<double>& ref, std::vector<double>& imf);

}  // namespace superad
