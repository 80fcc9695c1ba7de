#include <atomic>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "ldrop/core/csv.hpp"
#include "ldrop/core/parallel.hpp"
#include "ldrop/core/rng.hpp"
#include "ldrop/simd/kernels.hpp"

using namespace ldrop;

TEST_SUITE("core") {

TEST_CASE("splitmix64 matches the reference generator") {
  // first output of the reference splitmix64 stream seeded with 0
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(stream_seed(7, 0) != stream_seed(7, 1));
  CHECK(stream_seed(7, 3) == stream_seed(7, 3));
}

TEST_CASE("rng draws are reproducible and well formed") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  Rng r(1);
  double mean = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) mean += r.uniform();
  mean /= n;
  CHECK(std::abs(mean - 0.5) < 5.0 / std::sqrt(12.0 * n));
  for (int i = 0; i < 20; ++i) {
    const Mat3 R = r.rotation();
    CHECK((R * R.transpose() - Mat3::Identity()).norm() < 1e-13);
    CHECK(std::abs(R.determinant() - 1.0) < 1e-13);
    CHECK(std::abs(r.unit_vector().norm() - 1.0) < 1e-14);
  }
}

TEST_CASE("haar rotations have the uniform mean of the trace") {
  // tr R = 1 + 2 cos(angle) has mean 0 and variance 1 under the Haar measure
  Rng r(9);
  const int n = 100000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.rotation().trace();
  CHECK(std::abs(s / n) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("parallel_for reduction is independent of the thread count") {
  auto run = [](unsigned t) {
    set_thread_count(t);
    std::vector<double> slot(1000);
    parallel_for(slot.size(), [&](std::size_t i) { slot[i] = std::sin(double(i)) / (i + 1.0); });
    double s = 0.0;
    for (double v : slot) s += v;
    return s;
  };
  const double a = run(1), b = run(7);
  CHECK(a == b);
  set_thread_count(1);
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  set_thread_count(4);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 63) throw std::runtime_error(std::to_string(i));
    });
    FAIL("no exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
  // nested loops run inline
  std::atomic<int> count{0};
  parallel_for(4, [&](std::size_t) { parallel_for(5, [&](std::size_t) { ++count; }); });
  CHECK(count == 20);
  set_thread_count(1);
}

TEST_CASE("csv quoting and line endings") {
  std::ostringstream os;
  CsvWriter w(os);
  w.row({"a", "b,c", "say \"hi\""});
  CHECK(os.str() == "a,\"b,c\",\"say \"\"hi\"\"\"\r\n");
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02e23}) CHECK(std::stod(format_double(v)) == v);
}

TEST_CASE("simd kernels agree with the scalar reference") {
  if (!simd::backend_available(simd::Backend::Avx2)) return;
  Rng r(5);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 257u}) {
    std::vector<double> ar(n), ai(n), br(n), bi(n), cr(n), ci(n), w(n), z(2 * n);
    for (std::size_t j = 0; j < n; ++j) {
      const double t1 = r.uniform(0, 6.3), t2 = r.uniform(0, 6.3), t3 = r.uniform(0, 6.3);
      ar[j] = std::cos(t1), ai[j] = std::sin(t1);
      br[j] = std::cos(t2), bi[j] = std::sin(t2);
      cr[j] = std::cos(t3), ci[j] = std::sin(t3);
      w[j] = r.uniform(0.5, 2.0);
      z[2 * j] = r.uniform(-1, 1), z[2 * j + 1] = r.uniform(-1, 1);
    }
    simd::PhaseRow a{ar.data(), ai.data()}, b{br.data(), bi.data()}, c{cr.data(), ci.data()};
    const auto s0 = simd::scalar::triple_product_sum(a, b, c, w.data(), n);
    const auto s1 = simd::avx2::triple_product_sum(a, b, c, w.data(), n);
    CHECK(std::abs(s0 - s1) <= 1e-13 * (1.0 + double(n)));
    const double p0 = simd::scalar::weighted_power_sum(z.data(), w.data(), n);
    const double p1 = simd::avx2::weighted_power_sum(z.data(), w.data(), n);
    CHECK(std::abs(p0 - p1) <= 1e-13 * (1.0 + std::abs(p0)));
    const double coef[3] = {0.3, -1.1, 2.0};
    std::vector<double> x0(n, 1.0), y0(n, 2.0), q0(n, 3.0);
    auto x1 = x0, y1 = y0, q1 = q0;
    simd::scalar::accumulate_phase_projection(a, b, c, {0.7, -0.2}, w.data(), coef, x0.data(), y0.data(), q0.data(), n);
    simd::avx2::accumulate_phase_projection(a, b, c, {0.7, -0.2}, w.data(), coef, x1.data(), y1.data(), q1.data(), n);
    for (std::size_t j = 0; j < n; ++j) {
      CHECK(std::abs(x0[j] - x1[j]) < 1e-14);
      CHECK(std::abs(y0[j] - y1[j]) < 1e-14);
      CHECK(std::abs(q0[j] - q1[j]) < 1e-14);
    }
  }
}

TEST_CASE("backend switch is honored") {
  const auto before = simd::active_backend();
  simd::set_backend(simd::Backend::Scalar);
  CHECK(simd::active_backend() == simd::Backend::Scalar);
  simd::set_backend(before);
}

}
