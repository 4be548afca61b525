#pragma once

#include <cstddef>

#include "storagegame/model.hpp"

namespace storagegame {

/// Unit price of the tier containing `generation_kwh`.
double lmp_price(double generation_kwh, const PricingScheme& scheme);

/// Per-kWh price player k pays under `profile`: the LMP at the profile's
/// generation if k charges, 0 otherwise.
double charging_payment(std::size_t k, const ActionProfile& profile, const Scenario& scenario);

/// Per-kWh price player k receives: its own sell price if k discharges, 0 otherwise.
double discharging_payment(std::size_t k, const ActionProfile& profile, const Scenario& scenario);

}  // namespace storagegame
