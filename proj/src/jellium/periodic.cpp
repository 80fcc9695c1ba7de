#include "ldrop/jellium/periodic.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "ldrop/simd/kernels.hpp"

namespace ldrop {

PeriodicJellium::PeriodicJellium(double side, std::size_t n, double tail_tol, double alpha)
    : side_(side), n_(n) {
  if (!(side > 0)) throw ArgumentError("periodic jellium: side must be positive");
  if (!(tail_tol > 0 && tail_tol < 1)) throw ArgumentError("periodic jellium: tail tolerance must be in (0, 1)");
  if (alpha <= 0) {
    // real space ~ N^2 (c / beta)^3, reciprocal ~ N (c beta / pi)^3, with beta = sqrt(alpha) l;
    // the factor 4 is the measured cost ratio of one erfc pair to one phase product
    const double beta = std::sqrt(kPi) * std::pow(4.0 * std::max<std::size_t>(n, 1), 1.0 / 6.0);
    alpha = beta * beta / (side * side);
  }
  alpha_ = alpha;
  const double c = std::sqrt(-std::log(tail_tol)) + 1.0;
  rc_ = c / std::sqrt(alpha_);
  const double kc = 2.0 * c * std::sqrt(alpha_);
  const double reach = rc_ + std::sqrt(3.0) * side_ / 2.0;
  const int m = int(std::ceil(reach / side_));
  for (int a = -m; a <= m; ++a)
    for (int b = -m; b <= m; ++b)
      for (int d = -m; d <= m; ++d) {
        const Vec3 t = side_ * Vec3(a, b, d);
        if (t.norm() <= reach) images_.push_back(t);
      }
  const double dk = 2.0 * kPi / side_;
  nmax_ = int(std::floor(kc / dk));
  const double vol = side_ * side_ * side_;
  for (int a = 0; a <= nmax_; ++a)
    for (int b = -nmax_; b <= nmax_; ++b)
      for (int d = -nmax_; d <= nmax_; ++d) {
        if (a == 0 && (b < 0 || (b == 0 && d <= 0))) continue;
        const double k2 = dk * dk * double(a * a + b * b + d * d);
        if (k2 > kc * kc) continue;
        kidx_.push_back({a, b, d});
        kweight_.push_back(4.0 * kPi / vol * std::exp(-k2 / (4.0 * alpha_)) / k2);
      }
}

Vec3 PeriodicJellium::wrap(const Vec3& p) const {
  Vec3 out;
  for (int d = 0; d < 3; ++d) {
    double v = std::fmod(p[d], side_);
    if (v < 0) v += side_;
    if (v >= side_) v = 0.0;
    out[d] = v;
  }
  return out;
}

double PeriodicJellium::min_separation(const std::vector<Vec3>& x) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      Vec3 d = x[i] - x[j];
      for (int a = 0; a < 3; ++a) d[a] -= side_ * std::round(d[a] / side_);
      best = std::min(best, d.norm());
    }
  return best;
}

double PeriodicJellium::pair_energy(const std::vector<Vec3>& x, std::vector<Vec3>* grad) const {
  const std::size_t n = x.size();
  if (n != n_) throw ArgumentError("periodic jellium: evaluator built for a different particle count");
  if (grad) grad->assign(n, Vec3::Zero());
  if (n < 2) return 0.0;

  const double sa = std::sqrt(alpha_);
  const double two_over_sqrtpi = 2.0 / std::sqrt(kPi);
  const double rc2 = rc_ * rc_;
  double real = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec3 d = x[i] - x[j];
      for (int a = 0; a < 3; ++a) d[a] -= side_ * std::round(d[a] / side_);
      Vec3 g = Vec3::Zero();
      for (const auto& t : images_) {
        const Vec3 r = d + t;
        const double r2 = r.squaredNorm();
        if (r2 > rc2) continue;
        if (r2 < 1e-300) throw PoleError("periodic jellium: coincident points " + std::to_string(i) + " and " + std::to_string(j));
        const double rr = std::sqrt(r2);
        const double e = std::erfc(sa * rr) / rr;
        real += e;
        if (grad) {
          const double dfdr = -(e + two_over_sqrtpi * sa * std::exp(-alpha_ * r2)) / rr;
          g += (dfdr / rr) * r;
        }
      }
      if (grad) {
        (*grad)[i] += g;
        (*grad)[j] -= g;
      }
    }

  // phase tables e^{i 2 pi m x_d / l} for m in [-nmax, nmax], rows of length n
  const int width = 2 * nmax_ + 1;
  std::array<std::vector<double>, 3> re, im;
  for (int d = 0; d < 3; ++d) {
    re[d].assign(std::size_t(width) * n, 0.0);
    im[d].assign(std::size_t(width) * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double th = 2.0 * kPi * x[j][d] / side_;
      const std::complex<double> step(std::cos(th), std::sin(th));
      std::complex<double> up(1.0, 0.0);
      for (int m = 0; m <= nmax_; ++m) {
        re[d][std::size_t(nmax_ + m) * n + j] = up.real();
        im[d][std::size_t(nmax_ + m) * n + j] = up.imag();
        re[d][std::size_t(nmax_ - m) * n + j] = up.real();
        im[d][std::size_t(nmax_ - m) * n + j] = -up.imag();
        // renormalize every step so long products stay on the unit circle
        up *= step;
        up /= std::abs(up);
      }
    }
  }
  auto row = [&](int d, int m) {
    const std::size_t off = std::size_t(nmax_ + m) * n;
    return simd::PhaseRow{re[d].data() + off, im[d].data() + off};
  };
  const std::vector<double> ones(n, 1.0);
  std::vector<double> gx, gy, gz;
  if (grad) {
    gx.assign(n, 0.0);
    gy.assign(n, 0.0);
    gz.assign(n, 0.0);
  }
  const double dk = 2.0 * kPi / side_;
  double recip = 0.0;
  for (std::size_t q = 0; q < kidx_.size(); ++q) {
    const auto& m = kidx_[q];
    const auto a = row(0, m[0]), b = row(1, m[1]), c = row(2, m[2]);
    const std::complex<double> s = simd::triple_product_sum(a, b, c, ones.data(), n);
    recip += kweight_[q] * (std::norm(s) - double(n));
    if (grad) {
      const double coef[3] = {-2.0 * kweight_[q] * dk * m[0], -2.0 * kweight_[q] * dk * m[1],
                              -2.0 * kweight_[q] * dk * m[2]};
      simd::accumulate_phase_projection(a, b, c, s, ones.data(), coef, gx.data(), gy.data(), gz.data(), n);
    }
  }
  if (grad)
    for (std::size_t j = 0; j < n; ++j) (*grad)[j] += Vec3(gx[j], gy[j], gz[j]);

  const double vol = side_ * side_ * side_;
  const double neutral = -kPi / (alpha_ * vol) * 0.5 * double(n) * double(n - 1);
  return real + recip + neutral;
}

namespace {

void check_coincident(const PeriodicJellium& ev, const std::vector<Vec3>& x) {
  if (x.size() >= 2 && ev.min_separation(x) <= 1e-12 * ev.side())
    throw PoleError("periodic jellium: coincident points (modulo the period)");
}

}  // namespace

JelliumEnergyReport periodic_energy(const PointConfiguration& cfg, const PeriodicKernel& kernel,
                                    bool include_madelung) {
  const PeriodicJellium ev(kernel.side(), cfg.size());
  check_coincident(ev, cfg.x);
  JelliumEnergyReport r;
  const double q2 = cfg.q * cfg.q;
  r.pair = q2 * ev.pair_energy(cfg.x);
  if (include_madelung) r.madelung_self = double(cfg.size()) * q2 * madelung_z3() / (2.0 * kernel.side());
  return finish_report(r, cfg.size());
}

std::vector<Vec3> periodic_gradient(const PointConfiguration& cfg, const PeriodicKernel& kernel) {
  const PeriodicJellium ev(kernel.side(), cfg.size());
  check_coincident(ev, cfg.x);
  std::vector<Vec3> g;
  ev.pair_energy(cfg.x, &g);
  for (auto& v : g) v *= cfg.q * cfg.q;
  return g;
}

}  // namespace ldrop
