#pragma once

#include <array>
#include <cmath>
#include <vector>

#include "storagegame/model.hpp"

namespace storagegame::testing {

inline GridConfig reference_grid(double beta = 0.0018, double alpha = 0.25) {
  GridConfig grid;
  grid.background_load_kwh = 200.0;
  grid.beta = beta;
  grid.price_cap = 0.25;
  grid.pricing = PricingScheme::reference_ladder();
  grid.prelec_alpha = alpha;
  return grid;
}

inline std::vector<Customer> reference_customers(double b1 = 0.06, double b2 = 0.06) {
  return {{20.0, 10.0, b1}, {15.0, 5.0, b2}};
}

inline Scenario reference(double b1 = 0.06, double b2 = 0.06, double beta = 0.0018,
                          double alpha = 0.25) {
  return validate_scenario(reference_customers(b1, b2), reference_grid(beta, alpha));
}

inline Scenario with_alpha(const Scenario& scenario, double alpha) {
  auto grid = scenario.grid();
  grid.prelec_alpha = alpha;
  return validate_scenario(scenario.customers(), grid);
}

/// Independent transcription of the two-player zero-loss game, written
/// directly from the model equations without touching the library. Actions are
/// booleans (true = charge); player indices are 0 and 1.
struct RawGame {
  std::array<double, 2> demand{20.0, 15.0};
  std::array<double, 2> surplus{10.0, 5.0};
  std::array<double, 2> sell{0.06, 0.06};
  double beta = 0.0018;
  double background = 200.0;
  std::vector<std::array<double, 2>> tiers{{0.0, 0.05}, {200.0, 0.10}, {250.0, 0.15}, {300.0, 0.20}};

  double price(double g) const {
    double p = tiers.front()[1];
    for (const auto& t : tiers)
      if (g > t[0]) p = t[1];
    return p;
  }
  double generation(bool c0, bool c1) const {
    return background + (c0 ? demand[0] : -surplus[0]) + (c1 ? demand[1] : -surplus[1]);
  }
  double nominal() const { return background + demand[0] + demand[1]; }
  double utility(int k, bool c0, bool c1) const {
    const bool own = k == 0 ? c0 : c1;
    const double g = generation(c0, c1);
    const double pay = own ? -price(g) * demand[k] : sell[k] * surplus[k];
    return pay - beta * (g - nominal()) * (g - nominal());
  }
  // Opponent probability that makes player k indifferent under EUT.
  double eut_opponent_probability(int k) const {
    auto u = [&](bool own, bool other) { return k == 0 ? utility(0, own, other) : utility(1, other, own); };
    const double a = u(true, true) - u(false, true);
    const double b = u(false, false) - u(true, false);
    return b / (a + b);
  }
  /// The proper-equilibrium sign test: both indifference differences share a sign.
  bool proper_for(int k) const {
    auto u = [&](bool own, bool other) { return k == 0 ? utility(0, own, other) : utility(1, other, own); };
    const double a = u(true, true) - u(false, true);
    const double b = u(false, false) - u(true, false);
    return (a < 0.0 && b < 0.0) || (a > 0.0 && b > 0.0);
  }
  double revenue(double p1, double p2) const {
    const double c11 = price(generation(true, true));
    const double c12 = price(generation(true, false));
    const double c21 = price(generation(false, true));
    return p1 * p2 * c11 * (demand[0] + demand[1]) + p1 * (1 - p2) * c12 * demand[0] +
           (1 - p1) * p2 * c21 * demand[1];
  }
};

inline double raw_prelec(double s, double alpha) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return std::exp(-std::pow(-std::log(s), alpha));
}

}  // namespace storagegame::testing
