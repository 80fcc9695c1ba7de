#include "ldrop/thermo/swiss_cheese.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <algorithm>

#include "ldrop/core/types.hpp"

namespace ldrop {

namespace bmp = boost::multiprecision;
using Rational = bmp::cpp_rational;
using Integer = bmp::cpp_int;

SwissCheeseSchedule swiss_cheese(int K) {
  if (K < 1 || K > 14) throw ArgumentError("swiss cheese: K must lie in [1, 14]");
  SwissCheeseSchedule s;
  const Integer p = 26, q = 27;  // q = 1 + p
  const Rational gamma(p, q);
  std::vector<Rational> R(K + 1), n(K + 1), gpow(K + 1), tpow(K + 1);
  for (int j = 0; j <= K; ++j) {
    const Integer qj = bmp::pow(q, unsigned(j));
    R[j] = Rational(qj) - Rational(1, 2);  // (1+p)^j (1 - theta^j / 2)
    n[j] = j == 0 ? Rational(1, 26) : Rational(bmp::pow(p, unsigned(j - 1)) * bmp::pow(q, unsigned(2 * j)));
    gpow[j] = Rational(bmp::pow(p, unsigned(j)), qj);
    tpow[j] = Rational(Integer(1), qj);
  }
  double worst = 1.0;
  for (int j = 0; j <= K; ++j) {
    // volumes and perimeters carry common factors 4 pi / 3 and 4 pi, so the ratios are rational
    Rational filled = 0, area = 0;
    for (int i = 0; i < j; ++i) {
      filled += n[j - i] * R[i] * R[i] * R[i];
      area += n[j - i] * R[i] * R[i];
    }
    const Rational vol = R[j] * R[j] * R[j];
    CheeseRow row;
    row.j = j;
    row.R = R[j].str();
    row.n = n[j].str();
    row.R_value = R[j].convert_to<double>();
    row.n_value = n[j].convert_to<double>();
    row.leftover_ratio = Rational((vol - filled) / (gpow[j] * vol)).convert_to<double>();
    row.perimeter_ratio = Rational(3 * area / (gpow[j] * vol)).convert_to<double>();
    row.boundary_ratio = Rational(3 * R[j] * R[j] / (tpow[j] * vol)).convert_to<double>();
    if (j >= 2) {
      for (double r : {row.leftover_ratio, row.perimeter_ratio}) {
        if (!(r > 0)) throw NumericError("swiss cheese: nonpositive ratio at j=" + std::to_string(j));
        worst = std::max({worst, r, 1.0 / r});
      }
    }
    s.rows.push_back(row);
  }
  s.bound_constant = worst;
  return s;
}

nlohmann::json to_json(const SwissCheeseSchedule& s) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : s.rows)
    rows.push_back({{"j", r.j}, {"R", r.R}, {"n", r.n}, {"leftover_ratio", r.leftover_ratio},
                    {"perimeter_ratio", r.perimeter_ratio}, {"boundary_ratio", r.boundary_ratio}});
  return {{"p", s.p}, {"gamma", s.gamma}, {"theta", s.theta}, {"bound_constant", s.bound_constant}, {"rows", rows}};
}

}  // namespace ldrop
