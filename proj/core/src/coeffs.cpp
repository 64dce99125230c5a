#include "superad/coeffs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace superad {

CoefficientTable::CoefficientTable(int n_max, double gamma) : n_max_(n_max), gamma_(gamma) {
  if (n_max < 2 || n_max % 2 != 0)
    throw std::invalid_argument("CoefficientTable: n_max must be even and >= 2");
  a_.reserve(static_cast<size_t>(n_max / 2));
  b_.reserve(static_cast<size_t>(n_max / 2));
  double g2 = gamma * gamma;

  std::vector<double> cur = {1.0, 0.0};
  for (int n = 2; n <= n_max; n += 2) {
    // b row from prefix sums of the current a row
    std::vector<double> brow(static_cast<size_t>(n));
    double prefix = 0.0;
    for (int j = 0; j < n; ++j) {
      prefix += cur[static_cast<size_t>(j)];
      brow[static_cast<size_t>(j)] = prefix / (n - j);
    }
    a_.push_back(cur);
    b_.push_back(brow);
    if (n == n_max) break;

    // advance to row n+2; running sum of b keeps the step O(1) per j
    std::vector<double> nxt(static_cast<size_t>(n + 2), 0.0);
    double bsum = 0.0;
    for (int j = 0; j < n; ++j) {
      bsum += brow[static_cast<size_t>(j)];
      nxt[static_cast<size_t>(j)] = (n + 1.0 - j) / ((n + 1.0) * n) *
                                    ((n - j) * cur[static_cast<size_t>(j)] - g2 * bsum);
    }
    nxt[static_cast<size_t>(n)] = nxt[static_cast<size_t>(n - 1)];
    nxt[static_cast<size_t>(n + 1)] = 0.0;
    cur = std::move(nxt);
  }
}

const std::vector<double>& CoefficientTable::row_a(int n) const {
  if (n < 2 || n > n_max_ || n % 2 != 0)
    throw std::out_of_range("CoefficientTable: n out of range or odd");
  return a_[static_cast<size_t>(n / 2 - 1)];
}

const std::vector<double>& CoefficientTable::row_b(int n) const {
  if (n < 2 || n > n_max_ || n % 2 != 0)
    throw std::out_of_range("CoefficientTable: n out of range or odd");
  return b_[static_cast<size_t>(n / 2 - 1)];
}

CoefficientTable build_coefficients(int n_max, double gamma) {
  return CoefficientTable(n_max, gamma);
}

double a0_limit(double gamma) {
  double x = gamma * std::numbers::pi / 2.0;
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

static double series_scale_log(int n, const ModelParams& p) {
  return std::lgamma(static_cast<double>(n)) - n * std::log(p.t_c);
}

FSeries xn_series(int n, const CoefficientTable& table, const ModelParams& p) {
  if (n % 2 == 0) throw std::invalid_argument("xn_series: n must be odd");
  const auto& arow = table.row_a(n + 1);
  FSeries s(n);
  s.scale_log = series_scale_log(n, p);
  double pw = 1.0;
  for (int j = 0; j < n; ++j) {
    s.re[static_cast<size_t>(n - j)] =
        -p.gamma * pw * (static_cast<double>(n) / (n - j)) * arow[static_cast<size_t>(j)];
    pw *= 0.5;
  }
  return s;
}

FSeries zn_series(int n, const CoefficientTable& table, const ModelParams& p) {
  if (n % 2 != 0) throw std::invalid_argument("zn_series: n must be even");
  const auto& arow = table.row_a(n);
  FSeries s(n);
  s.scale_log = series_scale_log(n, p);
  double pw = 1.0;
  for (int j = 0; j < n; ++j) {
    s.im[static_cast<size_t>(n - j)] = p.gamma * pw * arow[static_cast<size_t>(j)];
    pw *= 0.5;
  }
  return s;
}

FSeries yn_series(int n, const CoefficientTable& table, const ModelParams& p) {
  if (n % 2 != 0) throw std::invalid_argument("yn_series: n must be even");
  const auto& brow = table.row_b(n);
  FSeries s(n);
  s.scale_log = series_scale_log(n, p);
  double pw = 1.0;
  for (int j = 0; j < n; ++j) {
    s.re[static_cast<size_t>(n - j)] = p.gamma * p.gamma * pw * brow[static_cast<size_t>(j)];
    pw *= 0.5;
  }
  return s;
}

OracleTriple oracle_exact_start(const ModelParams& p) {
  OracleTriple t;
  t.n = 1;
  t.chi = FSeries(1);
  t.chi.re[1] = -p.gamma / p.t_c;
  t.y = FSeries(0);
  t.z = FSeries(0);
  return t;
}

OracleTriple oracle_exact_step(const OracleTriple& cur, const ModelParams& p) {
  OracleTriple nxt;
  nxt.n = cur.n + 2;
  nxt.z = derivative(cur.chi, p);
  FSeries tz = theta_prime_multiply(nxt.z, p);
  FSeries integ = antiderivative(tz, p);
  nxt.y = FSeries(integ.max_m());
  nxt.y.scale_log = integ.scale_log;
  for (int m = 1; m <= integ.max_m(); ++m) {
    nxt.y.re[static_cast<size_t>(m)] = -integ.re[static_cast<size_t>(m)];
    nxt.y.im[static_cast<size_t>(m)] = -integ.im[static_cast<size_t>(m)];
  }
  FSeries ty = theta_prime_multiply(nxt.y, p);
  FSeries dz = derivative(nxt.z, p);
  int mm = std::max(ty.max_m(), dz.max_m());
  nxt.chi = FSeries(mm);
  for (int m = 1; m <= mm; ++m) {
    double tr = m <= ty.max_m() ? ty.re[static_cast<size_t>(m)] : 0.0;
    double ti = m <= ty.max_m() ? ty.im[static_cast<size_t>(m)] : 0.0;
    double dr = m <= dz.max_m() ? dz.re[static_cast<size_t>(m)] : 0.0;
    double di = m <= dz.max_m() ? dz.im[static_cast<size_t>(m)] : 0.0;
    nxt.chi.re[static_cast<size_t>(m)] = tr - dr;
    nxt.chi.im[static_cast<size_t>(m)] = ti - di;
  }
  return nxt;
}

XYZComponents decompose_xyz(const Mat2C& m, double t, const ModelParams& p) {
  BasisXYZW b = basis_xyzw(t, p);
  auto dot = [&](const Mat2R& e) {
    return 0.5 * (e.a11 * m.a11 + e.a12 * m.a12 + e.a21 * m.a21 + e.a22 * m.a22);
  };
  return {dot(b.x), dot(b.y), dot(b.z)};
}

namespace {

// extended-precision complex 2x2 for the nested finite differences
struct LMat {
  long double r11 = 0, r12 = 0, r21 = 0, r22 = 0;
  long double i11 = 0, i12 = 0, i21 = 0, i22 = 0;

  friend LMat operator+(const LMat& a, const LMat& b) {
    return {a.r11 + b.r11, a.r12 + b.r12, a.r21 + b.r21, a.r22 + b.r22,
            a.i11 + b.i11, a.i12 + b.i12, a.i21 + b.i21, a.i22 + b.i22};
  }
  friend LMat operator-(const LMat& a, const LMat& b) {
    return {a.r11 - b.r11, a.r12 - b.r12, a.r21 - b.r21, a.r22 - b.r22,
            a.i11 - b.i11, a.i12 - b.i12, a.i21 - b.i21, a.i22 - b.i22};
  }
  friend LMat operator*(long double s, const LMat& a) {
    return {s * a.r11, s * a.r12, s * a.r21, s * a.r22,
            s * a.i11, s * a.i12, s * a.i21, s * a.i22};
  }
  friend LMat operator*(const LMat& a, const LMat& b) {
    LMat o;
    o.r11 = a.r11 * b.r11 + a.r12 * b.r21 - (a.i11 * b.i11 + a.i12 * b.i21);
    o.r12 = a.r11 * b.r12 + a.r12 * b.r22 - (a.i11 * b.i12 + a.i12 * b.i22);
    o.r21 = a.r21 * b.r11 + a.r22 * b.r21 - (a.i21 * b.i11 + a.i22 * b.i21);
    o.r22 = a.r21 * b.r12 + a.r22 * b.r22 - (a.i21 * b.i12 + a.i22 * b.i22);
    o.i11 = a.r11 * b.i11 + a.r12 * b.i21 + a.i11 * b.r11 + a.i12 * b.r21;
    o.i12 = a.r11 * b.i12 + a.r12 * b.i22 + a.i11 * b.r12 + a.i12 * b.r22;
    o.i21 = a.r21 * b.i11 + a.r22 * b.i21 + a.i21 * b.r11 + a.i22 * b.r21;
    o.i22 = a.r21 * b.i12 + a.r22 * b.i22 + a.i21 * b.r12 + a.i22 * b.r22;
    return o;
  }
  LMat times_minus_i() const {
    return {i11, i12, i21, i22, -r11, -r12, -r21, -r22};
  }
  Mat2C to_mat2c() const {
    return {complexd(static_cast<double>(r11), static_cast<double>(i11)),
            complexd(static_cast<double>(r12), static_cast<double>(i12)),
            complexd(static_cast<double>(r21), static_cast<double>(i21)),
            complexd(static_cast<double>(r22), static_cast<double>(i22))};
  }
  double norm_inf() const { return to_mat2c().norm_inf(); }
};

class MatrixRecursion {
 public:
  MatrixRecursion(const ModelParams& p, double h) : p_(p), h_(h) {}

  const LMat& pi(int k, long ti) {
    auto key = std::make_pair(k, ti);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    LMat out;
    if (k == 0) {
      out = pi0_at(ti);
    } else {
      LMat g;
      for (int j = 1; j < k; ++j) g = g + pi(j, ti) * pi(k - j, ti);
      LMat dp = fd7(k - 1, ti);
      const LMat& p0 = pi(0, ti);
      LMat comm = dp * p0 - p0 * dp;
      out = g - p0 * g - g * p0 + comm.times_minus_i();
    }
    return cache_.emplace(key, out).first->second;
  }

  LMat fd7(int k, long ti) {
    // 7-point central difference, O(h^6)
    LMat acc = (-1.0L) * pi(k, ti - 3) + 9.0L * pi(k, ti - 2) + (-45.0L) * pi(k, ti - 1) +
               45.0L * pi(k, ti + 1) + (-9.0L) * pi(k, ti + 2) + 1.0L * pi(k, ti + 3);
    return (1.0L / (60.0L * static_cast<long double>(h_) * p_.t_c)) * acc;
  }

 private:
  LMat pi0_at(long ti) {
    long double t = static_cast<long double>(ti) * h_ * p_.t_c;
    long double th = 2.0L * static_cast<long double>(p_.gamma) *
                     std::atan(t / static_cast<long double>(p_.t_c));
    long double c = std::cos(th), s = std::sin(th);
    LMat m;
    m.r11 = 0.5L * (1.0L + c);
    m.r12 = 0.5L * s;
    m.r21 = 0.5L * s;
    m.r22 = 0.5L * (1.0L - c);
    return m;
  }

  struct KeyHash {
    size_t operator()(const std::pair<int, long>& k) const {
      return std::hash<long>()(k.second * 64 + k.first);
    }
  };

  ModelParams p_;
  double h_;
  std::unordered_map<std::pair<int, long>, LMat, KeyHash> cache_;
};

}  // namespace

MatrixOracleResult oracle_matrix_step(int n, const ModelParams& p,
                                      const std::vector<double>& t_grid, double fd_step) {
  MatrixOracleResult res;
  res.pi.assign(static_cast<size_t>(n), {});
  MatrixRecursion rec(p, fd_step);
  MatrixRecursion rec2(p, 2.0 * fd_step);
  for (double t : t_grid) {
    long ti = std::lround(t / (fd_step * p.t_c));
    if (ti % 2 != 0) ++ti;  // keep the coarse-grid error probe aligned
    long ti2 = ti / 2;
    res.snapped_t.push_back(static_cast<double>(ti) * fd_step * p.t_c);
    for (int k = 1; k <= n; ++k) {
      const LMat& m = rec.pi(k, ti);
      res.pi[static_cast<size_t>(k - 1)].push_back(m.to_mat2c());
      if (k == n) {
        // Richardson estimate for the O(h^6) stencil: err(h) ~ |pi_h - pi_2h| / 63
        LMat d = m - rec2.pi(k, ti2);
        double scale = std::max(m.norm_inf(), 1e-300);
        double est = d.norm_inf() / (scale * 63.0);
        res.fd_error_estimate = std::max(res.fd_error_estimate, est);
        if (est > 1e-6) res.fd_warning = true;
      }
    }
  }
  return res;
}

}  // namespace superad
