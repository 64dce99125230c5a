#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "superad/frames.hpp"
#include "superad/model.hpp"

namespace superad {

enum class Basis { original, adiabatic, superadiabatic, optimal };

struct IntegratorOptions {
  double rtol = 1e-12;
  double atol = 1e-14;
  double max_dt_eps_factor = 0.25;     // dt <= factor * eps
  double unitarity_abort = 1e-8;       // drift that aborts the run
};

struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

struct PropagationRecord {
  Basis basis = Basis::original;
  int order = 0;  // superadiabatic order when applicable
  double s = 0;
  std::vector<double> t;
  std::vector<Mat2C> K;                 // K(t_i, s)
  std::vector<complexd> reference;      // erf-law values when recorded
  double max_unitarity_defect = 0;
};

/// Solves i eps dK/dt = H_basis(t) K, K(s,s) = id, sampling K on `grid`
/// (ascending, grid.front() >= s).  For superadiabatic/optimal bases a
/// TruncationChoice supplies the order.
PropagationRecord integrate_propagator(Basis basis, double s, double t_end,
                                       const ModelParams& p,
                                       std::optional<TruncationChoice> choice,
                                       const std::vector<double>& grid,
                                       const IntegratorOptions& opts = {});

/// Generic propagator for a caller-supplied Hamiltonian.
PropagationRecord integrate_hamiltonian(const std::function<Mat2C(double)>& H, double s,
                                        const std::vector<double>& grid, double eps,
                                        const IntegratorOptions& opts = {});

/// First-order history law in the optimal basis:
///   -sin(pi gamma/2) e^{-t_c/eps} e^{-i(t+s)/(2 eps)}
///     (erf(t/sqrt(2 eps t_c)) - erf(s/sqrt(2 eps t_c)))
complexd erf_reference(double t, double s, const ModelParams& p, const TruncationChoice& choice);

struct HistoryResult {
  PropagationRecord record;             // optimal basis, from s = -T
  double sup_deviation = 0;             // sup_t | |k_off| - |reference| |
  double rescaled_mismatch = 0;         // relative |k_off| disagreement of the
                                        // e^{+t_c/eps}-rescaled integration
  bool precision_flag = false;          // rescaled_mismatch > 1%
};

/// Integrates in the optimal basis from -T, recording |k_off(t, -T)| against
/// the erf law on `grid`, and validates against a rescaled integration where
/// the off-diagonal block is scaled by e^{+t_c/eps}.
HistoryResult transition_history(const ModelParams& p, const TruncationChoice& choice,
                                 double T, const std::vector<double>& grid,
                                 const IntegratorOptions& opts = {});

struct ScatterResult {
  double eps = 0;
  double T = 0;
  Mat2C S;
  double amplitude_measured = 0;
  double amplitude_theory = 0;
  double relative_error = 0;
  double doubling_change = 0;  // relative amplitude change when T is doubled
  bool horizon_flag = false;   // doubling_change > 0.5%
};

/// S = e^{i H_0 T/eps} K^{n_eps}(T, -T) e^{i H_0 T/eps}; amplitude = |S_21|
/// against 2 sin(pi gamma/2) e^{-t_c/eps}.
ScatterResult scattering(const ModelParams& p, double T, const IntegratorOptions& opts = {},
                         Parity parity = Parity::even, bool validate_horizon = true);

/// First-order Dyson integral -(i/eps) int_s^t e^{i tau/eps} c_asym(tau) dtau,
/// by adaptive quadrature; semi-analytic check of erf_reference.
complexd dyson_offdiagonal(const ModelParams& p, const TruncationChoice& choice, double s,
                           double t);

}  // namespace superad
