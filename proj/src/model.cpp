#include "storagegame/model.hpp"

#include <cmath>
#include <string>

namespace storagegame {

namespace {

void require_finite(double value, const std::string& field) {
  if (!std::isfinite(value)) throw ScenarioError(field, "must be finite");
}

void validate_pricing(const PricingScheme& scheme) {
  if (scheme.tiers.empty()) throw ScenarioError("pricing.tiers", "at least one tier is required");
  for (std::size_t i = 0; i < scheme.tiers.size(); ++i) {
    const auto& tier = scheme.tiers[i];
    const std::string prefix = "pricing.tiers[" + std::to_string(i) + "]";
    require_finite(tier.threshold_kwh, prefix + ".threshold_kwh");
    require_finite(tier.unit_price, prefix + ".unit_price");
    if (tier.unit_price < 0.0) throw ScenarioError(prefix + ".unit_price", "must be >= 0");
    if (i == 0) continue;
    const auto& prev = scheme.tiers[i - 1];
    if (!(tier.threshold_kwh > prev.threshold_kwh))
      throw ScenarioError(prefix + ".threshold_kwh", "thresholds must be strictly increasing");
    if (tier.unit_price < prev.unit_price)
      throw ScenarioError(prefix + ".unit_price", "prices must be non-decreasing");
  }
}

void validate_loss(const LossModel& model) {
  if (const auto* linear = std::get_if<LinearFractionLoss>(&model)) {
    require_finite(linear->lambda, "loss_model.lambda");
    if (linear->lambda < 0.0) throw ScenarioError("loss_model.lambda", "must be >= 0");
    if (!(linear->lambda < kMaxLossFraction))
      throw ScenarioError("loss_model.lambda", "must be < 0.1 so that losses stay negligible");
  }
}

}  // namespace

const char* to_string(Action action) noexcept {
  return action == Action::Charge ? "charge" : "discharge";
}

const char* to_string(Theory theory) noexcept { return theory == Theory::EUT ? "EUT" : "PT"; }

PricingScheme PricingScheme::reference_ladder() {
  return PricingScheme{{{0.0, 0.05}, {200.0, 0.10}, {250.0, 0.15}, {300.0, 0.20}}};
}

double MixedProfile::probability(std::size_t k, Action action) const {
  const double p = charge_probability.at(k);
  return action == Action::Charge ? p : 1.0 - p;
}

bool MixedProfile::is_proper() const noexcept {
  for (double p : charge_probability)
    if (!(p > 0.0 && p < 1.0)) return false;
  return true;
}

Scenario validate_scenario(std::vector<Customer> customers, GridConfig grid) {
  require_finite(grid.background_load_kwh, "grid.background_load_kwh");
  if (grid.background_load_kwh < 0.0) throw ScenarioError("grid.background_load_kwh", "must be >= 0");
  require_finite(grid.beta, "grid.beta");
  if (!(grid.beta > 0.0)) throw ScenarioError("grid.beta", "must be > 0");
  if (!(grid.prelec_alpha > 0.0 && grid.prelec_alpha <= 1.0))
    throw ScenarioError("grid.prelec_alpha", "must lie in (0, 1]");
  if (grid.price_cap) {
    require_finite(*grid.price_cap, "grid.price_cap");
    if (!(*grid.price_cap > 0.0)) throw ScenarioError("grid.price_cap", "must be > 0");
  }
  validate_pricing(grid.pricing);
  validate_loss(grid.loss_model);

  for (std::size_t k = 0; k < customers.size(); ++k) {
    const auto& c = customers[k];
    const std::string prefix = "customers[" + std::to_string(k) + "]";
    require_finite(c.demand_kwh, prefix + ".demand_kwh");
    require_finite(c.surplus_kwh, prefix + ".surplus_kwh");
    require_finite(c.sell_price, prefix + ".sell_price");
    if (!(c.demand_kwh > 0.0)) throw ScenarioError(prefix + ".demand_kwh", "demand must be > 0");
    if (!(c.surplus_kwh > 0.0)) throw ScenarioError(prefix + ".surplus_kwh", "surplus must be > 0");
    if (!(c.surplus_kwh < c.demand_kwh))
      throw ScenarioError(prefix + ".surplus_kwh", "surplus must be < demand");
    if (c.sell_price < 0.0) throw ScenarioError(prefix + ".sell_price", "sell_price must be >= 0");
    if (grid.price_cap && !(c.sell_price < *grid.price_cap))
      throw ScenarioError(prefix + ".sell_price", "sell_price must be < price_cap");
  }
  return Scenario(std::move(customers), std::move(grid));
}

void require_profile_size(std::size_t profile_size, const Scenario& scenario) {
  if (profile_size != scenario.num_players())
    throw ScenarioError("profile", "expected " + std::to_string(scenario.num_players()) +
                                       " actions, got " + std::to_string(profile_size));
}

void require_mixed(const MixedProfile& mixed, std::size_t players) {
  if (mixed.size() != players)
    throw ScenarioError("mixed", "expected " + std::to_string(players) + " probabilities, got " +
                                     std::to_string(mixed.size()));
  for (std::size_t k = 0; k < mixed.size(); ++k)
    if (!(mixed[k] >= 0.0 && mixed[k] <= 1.0))
      throw ScenarioError("mixed[" + std::to_string(k) + "]", "probability must lie in [0, 1]");
}

}  // namespace storagegame
