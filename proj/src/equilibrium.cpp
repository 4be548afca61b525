#include "storagegame/equilibrium.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include "storagegame/numeric.hpp"
#include "storagegame/power.hpp"
#include "storagegame/pricing.hpp"

namespace storagegame {

namespace {

constexpr int kMaxBisectionIterations = 200;
// Bracket tolerance on log(q); a relative error of 1e-13 in the minority
// probability keeps |p - p*| well below 1e-12.
constexpr double kLogProbabilityTolerance = 1e-13;

void require_two_players(const Scenario& scenario) {
  if (scenario.num_players() != 2) throw UnsupportedSizeError(scenario.num_players());
}

// Two-player profile with player k playing `own` and the opponent `other`.
ActionProfile pair_profile(std::size_t k, Action own, Action other) {
  ActionProfile profile(2, other);
  profile[k] = own;
  return profile;
}

double price_at(const ActionProfile& profile, const Scenario& scenario) {
  return lmp_price(generation(profile, scenario).generation_kwh, scenario.grid().pricing);
}

// Smallest root of w(q) / w(1 - q) = ratio for ratio in (0, 1], located by
// bisection on log(q) over [log(DBL_MIN), log(1/2)].
double minority_pt_root(double ratio, double alpha) {
  const double log_ratio = std::log(ratio);
  auto excess = [alpha, log_ratio](double log_q) {
    const double q = std::exp(log_q);
    const double neg_log_q = -log_q;
    const double neg_log_not_q = -std::log1p(-q);
    return std::pow(neg_log_not_q, alpha) - std::pow(neg_log_q, alpha) - log_ratio;
  };
  const double lo = std::log(DBL_MIN);
  const double hi = std::log(0.5);
  if (excess(lo) > 0.0)
    throw Error(ErrorKind::Numeric,
                "PT equilibrium probability lies below the representable range");
  const auto result = bisect(excess, lo, hi, kLogProbabilityTolerance, kMaxBisectionIterations);
  return std::exp(result.root);
}

EquilibriumResult finish(Theory theory, MixedProfile mixed, const PayoffTable& table,
                         const ExistenceReport& report, double alpha) {
  EquilibriumResult result;
  result.theory = theory;
  result.mixed = std::move(mixed);
  for (std::size_t k = 0; k < 2; ++k) {
    const double charge = action_value(theory, k, Action::Charge, result.mixed, table, alpha);
    const double discharge = action_value(theory, k, Action::Discharge, result.mixed, table, alpha);
    result.indifference_residuals.push_back(charge - discharge);
    result.existence_satisfied.push_back(report.players[k].satisfied);
  }
  result.is_proper = result.mixed.is_proper();
  return result;
}

template <typename Probability>
EquilibriumResult solve_two_player(Theory theory, const Scenario& scenario,
                                   Probability opponent_probability) {
  require_two_players(scenario);
  const auto report = check_existence(scenario);
  if (!report.satisfied())
    throw NoProperEquilibriumError(
        "no proper mixed equilibrium: existence bounds violated\n" + report.describe(), report);
  const auto table = payoff_table(scenario);
  // Player 0's indifference pins player 1's mix and vice versa.
  const double p2 = opponent_probability(indifference_terms(0, table));
  const double p1 = opponent_probability(indifference_terms(1, table));
  MixedProfile mixed{{p1, p2}};
  if (!mixed.is_proper())
    throw NoProperEquilibriumError(
        "no proper mixed equilibrium: indifference solution leaves (0, 1)", report);
  return finish(theory, std::move(mixed), table, report, scenario.grid().prelec_alpha);
}

}  // namespace

UnsupportedSizeError::UnsupportedSizeError(std::size_t players)
    : Error(ErrorKind::Validation,
            "operation supports exactly 2 active customers, got " + std::to_string(players)) {}

std::string ExistenceReport::describe() const {
  std::ostringstream out;
  out.precision(10);
  for (std::size_t k = 0; k < players.size(); ++k) {
    const auto& bounds = players[k];
    out << "customer " << k + 1 << ": " << bounds.lower << " < b*S = " << bounds.value << " < "
        << bounds.upper << " -> " << (bounds.satisfied ? "satisfied" : "violated") << '\n';
  }
  return out.str();
}

ExistenceReport check_existence(const Scenario& scenario) {
  require_two_players(scenario);
  const auto& a = scenario.customer(0);
  const auto& b = scenario.customer(1);
  const double beta = scenario.grid().beta;
  const double coupling = 2.0 * beta * (a.demand_kwh + a.surplus_kwh) * (b.demand_kwh + b.surplus_kwh);
  const double price_all_charge = price_at(ActionProfile(2, Action::Charge), scenario);

  ExistenceReport report;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& c = scenario.customer(k);
    const double swing = c.demand_kwh + c.surplus_kwh;
    const double price_opponent_sells =
        price_at(pair_profile(k, Action::Charge, Action::Discharge), scenario);
    auto& bounds = report.players[k];
    bounds.lower = -price_all_charge * c.demand_kwh + beta * swing * swing;
    bounds.upper = -price_opponent_sells * c.demand_kwh + beta * swing * swing + coupling;
    bounds.value = c.sell_price * c.surplus_kwh;
    bounds.satisfied = bounds.lower < bounds.value && bounds.value < bounds.upper;
  }
  return report;
}

IndifferenceTerms indifference_terms(std::size_t k, const PayoffTable& table) {
  if (table.num_players() != 2) throw UnsupportedSizeError(table.num_players());
  if (k > 1) throw ScenarioError("player", "index out of range");
  auto u = [&](Action own, Action other) { return table.utility(k, pair_profile(k, own, other)); };
  return {u(Action::Charge, Action::Charge) - u(Action::Discharge, Action::Charge),
          u(Action::Discharge, Action::Discharge) - u(Action::Charge, Action::Discharge)};
}

double eut_indifference_probability(const IndifferenceTerms& terms) {
  const double denominator = terms.charge_advantage + terms.discharge_advantage;
  if (denominator == 0.0 || !std::isfinite(denominator))
    throw DegenerateGameError("degenerate game: indifference denominator is zero");
  return terms.discharge_advantage / denominator;
}

double pt_indifference_probability(const IndifferenceTerms& terms, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ScenarioError("prelec_alpha", "must lie in (0, 1]");
  if (terms.charge_advantage == 0.0)
    throw DegenerateGameError("degenerate game: charge advantage is zero");
  const double ratio = terms.discharge_advantage / terms.charge_advantage;
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw NoProperEquilibriumError("no proper PT equilibrium: indifference ratio is not positive",
                                   std::nullopt);
  if (ratio <= 1.0) return minority_pt_root(ratio, alpha);
  const double q = 1.0 - minority_pt_root(1.0 / ratio, alpha);
  if (q == 1.0)
    throw Error(ErrorKind::Numeric, "PT equilibrium probability rounds to 1 in double precision");
  return q;
}

EquilibriumResult solve_eut(const Scenario& scenario) {
  return solve_two_player(Theory::EUT, scenario, eut_indifference_probability);
}

EquilibriumResult solve_pt(const Scenario& scenario) {
  const double alpha = scenario.grid().prelec_alpha;
  return solve_two_player(Theory::PT, scenario, [alpha](const IndifferenceTerms& terms) {
    return pt_indifference_probability(terms, alpha);
  });
}

EquilibriumResult solve(Theory theory, const Scenario& scenario) {
  return theory == Theory::EUT ? solve_eut(scenario) : solve_pt(scenario);
}

VerificationReport verify_equilibrium(const EquilibriumResult& result, const Scenario& scenario,
                                      std::size_t resolution) {
  require_two_players(scenario);
  if (resolution < 2) throw ScenarioError("resolution", "must be >= 2");
  require_mixed(result.mixed, 2);
  const auto table = payoff_table(scenario);
  const double alpha = scenario.grid().prelec_alpha;

  VerificationReport report;
  report.confirmed = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const double current = expected_utility(result.theory, k, result.mixed, table, alpha);
    double best_gain = -INFINITY;
    MixedProfile deviation = result.mixed;
    for (std::size_t i = 0; i < resolution; ++i) {
      deviation.charge_probability[k] = static_cast<double>(i) / static_cast<double>(resolution - 1);
      const double gain = expected_utility(result.theory, k, deviation, table, alpha) - current;
      if (gain > best_gain) best_gain = gain;
    }
    report.max_gain.push_back(best_gain);
    if (!(best_gain < kEquilibriumGainTolerance)) report.confirmed = false;
  }
  return report;
}

std::vector<ActionProfile> enumerate_pure_nash(const Scenario& scenario) {
  const auto table = payoff_table(scenario);
  const std::size_t players = table.num_players();
  std::vector<ActionProfile> equilibria;
  for (std::uint32_t index = 0; index < table.num_profiles(); ++index) {
    bool stable = true;
    for (std::size_t k = 0; k < players && stable; ++k) {
      const std::uint32_t flipped = index ^ (std::uint32_t{1} << k);
      if (table.utility(k, flipped) > table.utility(k, index)) stable = false;
    }
    if (stable) equilibria.push_back(profile_from_index(index, players));
  }
  return equilibria;
}

}  // namespace storagegame
