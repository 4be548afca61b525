#include "storagegame/pricing.hpp"

#include "storagegame/power.hpp"

namespace storagegame {

double lmp_price(double generation_kwh, const PricingScheme& scheme) {
  const auto& tiers = scheme.tiers;
  if (tiers.empty()) throw ScenarioError("pricing.tiers", "at least one tier is required");
  std::size_t tier = 0;
  while (tier + 1 < tiers.size() && generation_kwh > tiers[tier + 1].threshold_kwh) ++tier;
  return tiers[tier].unit_price;
}

double charging_payment(std::size_t k, const ActionProfile& profile, const Scenario& scenario) {
  require_profile_size(profile.size(), scenario);
  if (profile.at(k) != Action::Charge) return 0.0;
  return lmp_price(generation(profile, scenario).generation_kwh, scenario.grid().pricing);
}

double discharging_payment(std::size_t k, const ActionProfile& profile, const Scenario& scenario) {
  require_profile_size(profile.size(), scenario);
  if (profile.at(k) != Action::Discharge) return 0.0;
  return scenario.customer(k).sell_price;
}

}  // namespace storagegame
