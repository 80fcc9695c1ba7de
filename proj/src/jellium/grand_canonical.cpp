#include "ldrop/jellium/grand_canonical.hpp"

#include <cmath>

#include "ldrop/core/parallel.hpp"

namespace ldrop {

double averaged_energy(int n, double A, double q, double self) {
  const double a3 = A * A * A;
  return (double(n) * (n - 1) / (2.0 * a3 * a3) * q * q - q * n / a3 + 0.5) * 2.0 * self;
}

GcPointJelliumResult grand_canonical_point_jellium(double A, const Domain& delta, double q,
                                                   const GcPointJelliumParams& p) {
  if (!(A > 0)) throw ArgumentError("grand-canonical jellium: A must be positive");
  if (!(q > 0)) throw ArgumentError("grand-canonical jellium: charge must be positive");
  if (p.starts < 1) throw ArgumentError("grand-canonical jellium: need at least one start");
  const double vol = domain_measure(delta).volume;
  if (std::abs(vol - 1.0) > 1e-9) throw ArgumentError("grand-canonical jellium: the reference domain must have unit volume");
  const Domain dom = scaled_translate(delta, A);
  const FiniteJellium ev(dom, q, 1.0, p.tol);

  const double target = A * A * A / q;
  const int pad = int(std::ceil(A * A));
  const int lo = std::max(0, int(std::floor(target)) - pad);
  const int hi = int(std::ceil(target)) + pad;
  const int counts = hi - lo + 1;

  std::vector<LocalResult> slots(std::size_t(counts) * p.starts);
  parallel_for(slots.size(), [&](std::size_t idx) {
    const int n = lo + int(idx / p.starts);
    Rng rng(stream_seed(p.seed, idx));
    PointConfiguration seed;
    seed.q = q;
    for (int i = 0; i < n; ++i) seed.x.push_back(random_point_in(dom, rng));
    if (n == 0) {
      slots[idx].cfg = seed;
      slots[idx].energy = ev.background_self();
      slots[idx].converged = true;
      return;
    }
    slots[idx] = minimize_finite(seed, ev, p.local);
  });

  GcPointJelliumResult out;
  out.background_self = ev.background_self();
  bool first = true;
  for (int c = 0; c < counts; ++c) {
    const int n = lo + c;
    const LocalResult* best = nullptr;
    for (int s = 0; s < p.starts; ++s) {
      const auto& r = slots[std::size_t(c) * p.starts + s];
      if (!best || r.energy < best->energy) best = &r;
    }
    out.rows.push_back({n, best->energy, averaged_energy(n, A, q, out.background_self)});
    if (first || best->energy < out.value) {
      out.value = best->energy;
      out.best = best->cfg;
      out.best_n = n;
      first = false;
    }
  }
  const double N = std::floor(target), t = target - N;
  const double a3 = A * A * A;
  out.interpolated_bound = -(N + t * t) * q * q / (2.0 * a3 * a3) * 2.0 * out.background_self;
  return out;
}

}  // namespace ldrop
