#include <doctest.h>

#include <cstdint>

#include "storagegame/power.hpp"
#include "storagegame/pricing.hpp"
#include "storagegame/utility.hpp"
#include "support/fixtures.hpp"

using namespace storagegame;
using storagegame::testing::reference;

constexpr auto C = Action::Charge;
constexpr auto S = Action::Discharge;

TEST_CASE("lmp tiers") {
  const auto ladder = PricingScheme::reference_ladder();
  CHECK(lmp_price(235.0, ladder) == 0.10);
  CHECK(lmp_price(200.0, ladder) == 0.05);
  CHECK(lmp_price(200.0 + 1e-9, ladder) == 0.10);
  CHECK(lmp_price(301.0, ladder) == 0.20);
  CHECK(lmp_price(300.0, ladder) == 0.15);
  CHECK(lmp_price(0.0, ladder) == 0.05);
  CHECK(lmp_price(1e9, ladder) == 0.20);
}

TEST_CASE("lmp is non-decreasing in generation") {
  const auto ladder = PricingScheme::reference_ladder();
  double previous = lmp_price(0.0, ladder);
  for (int i = 1; i <= 4000; ++i) {
    const double price = lmp_price(0.1 * i, ladder);
    CHECK(price >= previous);
    previous = price;
  }
}

TEST_CASE("charging payment") {
  const auto scenario = reference();
  CHECK(charging_payment(0, {C, C}, scenario) == 0.10);
  CHECK(charging_payment(0, {S, C}, scenario) == 0.0);
  // Generation 215 kWh when customer 2 sells, 205 kWh when customer 1 sells.
  CHECK(charging_payment(0, {C, S}, scenario) == 0.10);
  CHECK(charging_payment(1, {S, C}, scenario) == 0.10);
  CHECK(charging_payment(1, {C, S}, scenario) == 0.0);
}

TEST_CASE("discharging payment") {
  const auto scenario = reference(0.06, 0.07);
  CHECK(discharging_payment(0, {S, C}, scenario) == 0.06);
  CHECK(discharging_payment(0, {C, S}, scenario) == 0.0);
  CHECK(discharging_payment(1, {C, S}, scenario) == 0.07);
}

TEST_CASE("exactly one payment is active per player and profile") {
  const auto scenario = reference();
  for (std::uint32_t index = 0; index < 4; ++index) {
    const auto profile = profile_from_index(index, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      const bool charging = charging_payment(k, profile, scenario) != 0.0;
      const bool discharging = discharging_payment(k, profile, scenario) != 0.0;
      CHECK(charging != discharging);
    }
  }
}

TEST_CASE("price when the opponent sells never exceeds the all-charge price") {
  const auto scenario = reference();
  const double all_charge = lmp_price(generation({C, C}, scenario).generation_kwh, scenario.grid().pricing);
  CHECK(lmp_price(generation({C, S}, scenario).generation_kwh, scenario.grid().pricing) <= all_charge);
  CHECK(lmp_price(generation({S, C}, scenario).generation_kwh, scenario.grid().pricing) <= all_charge);
}
