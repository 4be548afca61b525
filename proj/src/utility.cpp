#include "storagegame/utility.hpp"

#include <cmath>
#include <string>

#include "storagegame/power.hpp"
#include "storagegame/pricing.hpp"

namespace storagegame {

namespace {

void require_enumerable(std::size_t players) {
  if (players > kMaxEnumeratedPlayers)
    throw ScenarioError("customers", "cannot enumerate 2^" + std::to_string(players) +
                                         " profiles (limit is " +
                                         std::to_string(kMaxEnumeratedPlayers) + " players)");
}

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ScenarioError("prelec_alpha", "must lie in (0, 1]");
}

// Weight of the event "not sigma" given sigma, without forming 1 - sigma first.
double prelec_complement_weight(double sigma, double alpha) {
  if (sigma == 0.0) return 1.0;
  if (sigma == 1.0) return 0.0;
  if (alpha == 1.0) return 1.0 - sigma;
  return std::exp(-std::pow(-std::log1p(-sigma), alpha));
}

// Weighted sum over all profiles. `weight(l, p, discharges)` maps player l's
// charge probability and chosen action to the factor that enters the product.
template <typename Weight>
double weighted_sum(std::size_t k, const MixedProfile& mixed, const PayoffTable& table,
                    Weight weight) {
  const std::size_t players = table.num_players();
  require_mixed(mixed, players);
  if (k >= players) throw ScenarioError("player", "index out of range");
  double total = 0.0;
  for (std::uint32_t index = 0; index < table.num_profiles(); ++index) {
    double factor = 1.0;
    for (std::size_t l = 0; l < players && factor != 0.0; ++l) {
      const bool discharges = (index >> l) & 1U;
      factor *= weight(l, mixed[l], discharges);
    }
    if (factor != 0.0) total += factor * table.utility(k, index);
  }
  return total;
}

}  // namespace

std::uint32_t profile_index(const ActionProfile& profile) {
  require_enumerable(profile.size());
  std::uint32_t index = 0;
  for (std::size_t k = 0; k < profile.size(); ++k)
    if (profile[k] == Action::Discharge) index |= std::uint32_t{1} << k;
  return index;
}

ActionProfile profile_from_index(std::uint32_t index, std::size_t players) {
  require_enumerable(players);
  ActionProfile profile(players, Action::Charge);
  for (std::size_t k = 0; k < players; ++k)
    if ((index >> k) & 1U) profile[k] = Action::Discharge;
  return profile;
}

PayoffTable::PayoffTable(std::size_t players, std::vector<double> utilities)
    : players_(players), utilities_(std::move(utilities)) {
  require_enumerable(players);
  if (utilities_.size() != num_profiles() * players_)
    throw ScenarioError("payoff_table", "expected one utility per player per profile");
}

double pure_utility(std::size_t k, const ActionProfile& profile, const Scenario& scenario) {
  const auto& customer = scenario.customer(k);
  const auto balance = generation(profile, scenario);
  const double bought = charging_payment(k, profile, scenario) *
                        (customer.demand_kwh + player_loss(k, profile, scenario));
  const double sold = discharging_payment(k, profile, scenario) * customer.surplus_kwh;
  return -bought + sold - scenario.grid().beta * balance.deviation_kwh * balance.deviation_kwh;
}

PayoffTable payoff_table(const Scenario& scenario) {
  const std::size_t players = scenario.num_players();
  require_enumerable(players);
  const std::size_t profiles = std::size_t{1} << players;
  std::vector<double> utilities;
  utilities.reserve(profiles * players);
  for (std::uint32_t index = 0; index < profiles; ++index) {
    const auto profile = profile_from_index(index, players);
    for (std::size_t k = 0; k < players; ++k)
      utilities.push_back(pure_utility(k, profile, scenario));
  }
  return PayoffTable(players, std::move(utilities));
}

double prelec_weight(double sigma, double alpha) {
  require_alpha(alpha);
  if (!(sigma >= 0.0 && sigma <= 1.0))
    throw ScenarioError("sigma", "probability must lie in [0, 1]");
  if (sigma == 0.0) return 0.0;
  if (sigma == 1.0) return 1.0;
  if (alpha == 1.0) return sigma;
  return std::exp(-std::pow(-std::log(sigma), alpha));
}

double eut_expected_utility(std::size_t k, const MixedProfile& mixed, const PayoffTable& table) {
  return weighted_sum(k, mixed, table, [](std::size_t, double p, bool discharges) {
    return discharges ? 1.0 - p : p;
  });
}

double pt_expected_utility(std::size_t k, const MixedProfile& mixed, const PayoffTable& table,
                           double alpha) {
  require_alpha(alpha);
  return weighted_sum(k, mixed, table, [k, alpha](std::size_t l, double p, bool discharges) {
    if (l == k) return discharges ? 1.0 - p : p;
    return discharges ? prelec_complement_weight(p, alpha) : prelec_weight(p, alpha);
  });
}

double expected_utility(Theory theory, std::size_t k, const MixedProfile& mixed,
                        const PayoffTable& table, double alpha) {
  return theory == Theory::EUT ? eut_expected_utility(k, mixed, table)
                               : pt_expected_utility(k, mixed, table, alpha);
}

double action_value(Theory theory, std::size_t k, Action action, const MixedProfile& mixed,
                    const PayoffTable& table, double alpha) {
  MixedProfile committed = mixed;
  committed.charge_probability.at(k) = action == Action::Charge ? 1.0 : 0.0;
  return expected_utility(theory, k, committed, table, alpha);
}

}  // namespace storagegame
