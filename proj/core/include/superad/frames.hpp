#pragma once

#include <memory>
#include <vector>

#include "superad/coeffs.hpp"
#include "superad/fseries.hpp"
#include "superad/model.hpp"

namespace superad {

enum class Parity { even, odd };

/// Optimal truncation order: the unique n = t_c/eps - 1 + sigma of the
/// requested parity with sigma in [0, 2).
struct TruncationChoice {
  int n = 2;
  double sigma = 0.0;
  Parity parity = Parity::even;
};

/// Requires t_c/eps >= 3 (so that n >= 2).
TruncationChoice choose_truncation(const ModelParams& p, Parity parity = Parity::even);

/// Exponentially small quantity as mantissa * exp(log_scale); the mantissa is
/// kept O(1)-ish so products like e^{-t_c/eps} * sqrt(eps) survive underflow.
struct ScaledComplex {
  complexd mantissa{0.0, 0.0};
  double log_scale = 0.0;

  complexd value() const { return std::exp(log_scale) * mantissa; }
  double abs_log() const;  // log |value|, -inf when mantissa == 0
  ScaledComplex rescaled(double extra_log) const { return {mantissa, log_scale + extra_log}; }
};

struct PartialSums {
  double xi = 0;    // real companion of sum eps^k x_k (x_k = i * xi-part)
  double eta = 0;   // sum eps^k y_k
  double zeta = 0;  // sum eps^k z_k
  double g = 0;     // sum eps^{n+k} g_{n+1,k}
};

struct FrameEvaluation {
  double t = 0;
  PartialSums sums;
  double lambda1 = 1, lambda2 = 0;
  double alpha = 1;
  complexd beta{0, 0};
  Mat2C U;
  double rho = 0.5;
  ScaledComplex c;
};

/// Precomputed series bank for all orders k <= n+1 at fixed (p, n); frame and
/// coupling evaluations at a time t are then O(n^2).
class FrameBank {
 public:
  FrameBank(const ModelParams& p, int n);

  const ModelParams& params() const { return p_; }
  int order() const { return n_; }

  PartialSums partial_sums(double t) const;
  FrameEvaluation frame_at(double t) const;
  ScaledComplex coupling_exact(double t) const;

  const CoefficientTable& table() const { return table_; }

  /// eps^k-weighted per-order values (index k = 1..n+1); x_k = i * x[k].
  struct OrderValues {
    std::vector<double> x, y, z;
  };
  OrderValues order_values(double t) const;

 private:
  struct Eval;
  Eval evaluate(double t) const;

  ModelParams p_;
  int n_;
  CoefficientTable table_;
  std::vector<FSeries> chi_, y_, z_;     // index by order k, empty slots for wrong parity
  std::vector<FSeries> dchi_, dy_, dz_;  // exact derivatives
};

/// Convenience wrappers building a one-shot bank.
PartialSums partial_sums(double t, int n, const ModelParams& p, const CoefficientTable& table);
FrameEvaluation frame_at(double t, const TruncationChoice& choice, const ModelParams& p);
ScaledComplex coupling_exact(double t, const TruncationChoice& choice, const ModelParams& p);

/// Leading-order explicit coupling:
///   even:  -2i sqrt(2 eps/(pi t_c)) sin(pi gamma/2) e^{-t_c/eps}
///            e^{-t^2/(2 eps t_c)} cos(t/eps - t^3/(3 eps t_c^2) + sigma t/t_c)
///   odd:   same with -2 sin(...) and the sine of the phase.
/// simple_cos replaces the cosine argument by t/eps.
ScaledComplex coupling_asymptotic(double t, const TruncationChoice& choice,
                                  const ModelParams& p, bool simple_cos = false);

/// Error envelope phi^alpha(eps, t): eps^alpha exp(-(t_c/eps)(1 + t^2/(4 t_c^2)))
/// for |t| < t_c; (1/(1+t^2)) exp(-(t_c/eps)(1 + ln2/2)) for |t| >= t_c.
double error_envelope(double t, double alpha_exp, const ModelParams& p);
double error_envelope_log(double t, double alpha_exp, const ModelParams& p);

}  // namespace superad
