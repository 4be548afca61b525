#pragma once

#include <cstddef>

#include "storagegame/model.hpp"

namespace storagegame {

struct PowerBalance {
  double generation_kwh = 0.0;
  double nominal_kwh = 0.0;
  double deviation_kwh = 0.0;  // generation_kwh - nominal_kwh
  double losses_kwh = 0.0;
};

/// Total line losses when `charging_demand_kwh` (background included) is served.
double served_losses(const LossModel& model, double charging_demand_kwh);

/// Total line losses under a pure profile.
double total_losses(const ActionProfile& profile, const Scenario& scenario);

/// Loss attributed to player k's own purchase. Zero when k discharges.
double player_loss(std::size_t k, const ActionProfile& profile, const Scenario& scenario);

/// Regulation target: generation when every active customer charges.
double nominal_generation(const Scenario& scenario);

PowerBalance generation(const ActionProfile& profile, const Scenario& scenario);

}  // namespace storagegame
