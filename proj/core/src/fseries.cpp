#include "superad/fseries.hpp"

#include <cmath>

namespace superad {

void f_power_table(double t, int max_m, const ModelParams& p,
                   std::vector<double>& ref, std::vector<double>& imf) {
  ref.assign(max_m + 1, 0.0);
  imf.assign(max_m + 1, 0.0);
  double den = t * t + p.t_c * p.t_c;
  double fr = p.t_c * p.t_c / den;
  double fi = p.t_c * t / den;
  double cr = 1.0, ci = 0.0;
  for (int m = 1; m <= max_m; ++m) {
    double nr = cr * fr - ci * fi;
    double ni = cr * fi + ci * fr;
    cr = nr;
    ci = ni;
    ref[m] = cr;
    imf[m] = ci;
  }
}

double FSeries::evaluate_mantissa(const std::vector<double>& ref,
                                  const std::vector<double>& imf) const {
  double acc = 0.0;
  for (int m = max_m(); m >= 1; --m) acc += re[m] * ref[m] + im[m] * imf[m];
  return acc;
}

double FSeries::evaluate_mantissa(double t, const ModelParams& p) const {
  std::vector<double> ref, imf;
  f_power_table(t, max_m(), p, ref, imf);
  return evaluate_mantissa(ref, imf);
}

double FSeries::evaluate(double t, const ModelParams& p) const {
  return std::exp(scale_log) * evaluate_mantissa(t, p);
}

FSeries derivative(const FSeries& s, const ModelParams& p) {
  FSeries d(s.max_m() + 1);
  d.scale_log = s.scale_log;
  for (int m = 1; m <= s.max_m(); ++m) {
    d.im[m + 1] -= s.re[m] * m / p.t_c;
    d.re[m + 1] += s.im[m] * m / p.t_c;
  }
  return d;
}

FSeries antiderivative(const FSeries& s, const ModelParams& p) {
  if (s.max_m() >= 1 && (s.re[1] != 0.0 || s.im[1] != 0.0))
    throw std::domain_error("antiderivative: m=1 term is not integrable within the f basis");
  FSeries a(std::max(s.max_m() - 1, 0));
  a.scale_log = s.scale_log;
  for (int m = 2; m <= s.max_m(); ++m) {
    a.re[m - 1] -= s.im[m] * p.t_c / (m - 1);
    a.im[m - 1] += s.re[m] * p.t_c / (m - 1);
  }
  return a;
}

FSeries theta_prime_multiply(const FSeries& s, const ModelParams& p) {
  double c = p.gamma / p.t_c;
  FSeries out(s.max_m() + 1);
  out.scale_log = s.scale_log;
  for (int m = 1; m <= s.max_m(); ++m) {
    double pw = 1.0;
    for (int k = 0; k < m; ++k) {
      out.im[m + 1 - k] += c * pw * s.im[m];
      out.re[m + 1 - k] += c * pw * s.re[m];
      pw *= 0.5;
    }
    // 2^{-m} theta' contribution from the Re(f^m) part; theta' = (2 gamma/t_c) Re f
    out.re[1] += 2.0 * c * pw * s.re[m];
  }
  return out;
}

}  // namespace superad
