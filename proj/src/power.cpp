#include "storagegame/power.hpp"

#include <variant>

namespace storagegame {

namespace {

double charging_demand(const ActionProfile& profile, const Scenario& scenario) {
  double served = scenario.grid().background_load_kwh;
  for (std::size_t k = 0; k < profile.size(); ++k)
    if (profile[k] == Action::Charge) served += scenario.customer(k).demand_kwh;
  return served;
}

}  // namespace

double served_losses(const LossModel& model, double charging_demand_kwh) {
  if (const auto* linear = std::get_if<LinearFractionLoss>(&model))
    return linear->lambda * charging_demand_kwh;
  return 0.0;
}

double total_losses(const ActionProfile& profile, const Scenario& scenario) {
  require_profile_size(profile.size(), scenario);
  return served_losses(scenario.grid().loss_model, charging_demand(profile, scenario));
}

double player_loss(std::size_t k, const ActionProfile& profile, const Scenario& scenario) {
  require_profile_size(profile.size(), scenario);
  if (profile.at(k) != Action::Charge) return 0.0;
  return served_losses(scenario.grid().loss_model, scenario.customer(k).demand_kwh);
}

double nominal_generation(const Scenario& scenario) {
  const ActionProfile all_charge(scenario.num_players(), Action::Charge);
  const double served = charging_demand(all_charge, scenario);
  return served + served_losses(scenario.grid().loss_model, served);
}

PowerBalance generation(const ActionProfile& profile, const Scenario& scenario) {
  require_profile_size(profile.size(), scenario);
  double net = scenario.grid().background_load_kwh;
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const auto& c = scenario.customer(k);
    net += profile[k] == Action::Charge ? c.demand_kwh : -c.surplus_kwh;
  }
  PowerBalance balance;
  balance.losses_kwh = total_losses(profile, scenario);
  balance.generation_kwh = net + balance.losses_kwh;
  balance.nominal_kwh = nominal_generation(scenario);
  balance.deviation_kwh = balance.generation_kwh - balance.nominal_kwh;
  return balance;
}

}  // namespace storagegame
