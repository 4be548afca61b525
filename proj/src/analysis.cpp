#include "storagegame/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "storagegame/equilibrium.hpp"
#include "storagegame/power.hpp"
#include "storagegame/pricing.hpp"
#include "storagegame/utility.hpp"

namespace storagegame {

double revenue(const MixedProfile& mixed, const Scenario& scenario) {
  const std::size_t players = scenario.num_players();
  require_mixed(mixed, players);
  if (players > kMaxEnumeratedPlayers) throw UnsupportedSizeError(players);
  double total = 0.0;
  for (std::uint32_t index = 0; index < (std::uint32_t{1} << players); ++index) {
    const auto profile = profile_from_index(index, players);
    double probability = 1.0;
    for (std::size_t k = 0; k < players; ++k) probability *= mixed.probability(k, profile[k]);
    if (probability == 0.0) continue;
    double billed = 0.0;
    for (std::size_t k = 0; k < players; ++k) {
      if (profile[k] != Action::Charge) continue;
      billed += charging_payment(k, profile, scenario) *
                (scenario.customer(k).demand_kwh + player_loss(k, profile, scenario));
    }
    total += probability * billed;
  }
  return total;
}

double expected_load(const MixedProfile& mixed, const Scenario& scenario) {
  require_mixed(mixed, scenario.num_players());
  double load = 0.0;
  for (std::size_t k = 0; k < scenario.num_players(); ++k) {
    const auto& c = scenario.customer(k);
    load += mixed[k] * c.demand_kwh - (1.0 - mixed[k]) * c.surplus_kwh;
  }
  return load;
}

const char* to_string(SweepParameter parameter) noexcept {
  switch (parameter) {
    case SweepParameter::SellPrice: return "sell_price";
    case SweepParameter::LmpBasePrice: return "lmp_base_price";
    case SweepParameter::Beta: return "beta";
  }
  return "unknown";
}

SweepParameter parse_sweep_parameter(const std::string& name) {
  if (name == "sell_price" || name == "b") return SweepParameter::SellPrice;
  if (name == "lmp_base_price" || name == "c") return SweepParameter::LmpBasePrice;
  if (name == "beta") return SweepParameter::Beta;
  throw ScenarioError("sweep.parameter", "unknown parameter '" + name +
                                             "' (expected sell_price, lmp_base_price or beta)");
}

std::vector<double> SweepSpec::values() const {
  if (!std::isfinite(start) || !std::isfinite(stop))
    throw ScenarioError("sweep.range", "start and stop must be finite");
  if (!(start < stop)) throw ScenarioError("sweep.range", "start must be < stop");
  if (steps < 2) throw ScenarioError("sweep.steps", "steps must be >= 2");
  std::vector<double> out(steps);
  const double width = stop - start;
  for (std::size_t i = 0; i < steps; ++i)
    out[i] = start + width * static_cast<double>(i) / static_cast<double>(steps - 1);
  out.back() = stop;
  return out;
}

const TheoryOutcome* SweepRow::outcome(Theory theory) const {
  for (const auto& o : outcomes)
    if (o.theory == theory) return &o;
  return nullptr;
}

Scenario apply_sweep_value(const Scenario& scenario, SweepParameter parameter, double value,
                           bool couple_sell_prices) {
  auto customers = scenario.customers();
  auto grid = scenario.grid();
  switch (parameter) {
    case SweepParameter::SellPrice:
      for (std::size_t k = 0; k < customers.size(); ++k)
        if (couple_sell_prices || k == 0) customers[k].sell_price = value;
      break;
    case SweepParameter::LmpBasePrice: {
      // Shift the whole ladder so its cheapest tier costs `value`.
      const double shift = value - grid.pricing.tiers.front().unit_price;
      for (auto& tier : grid.pricing.tiers) tier.unit_price += shift;
      break;
    }
    case SweepParameter::Beta:
      grid.beta = value;
      break;
  }
  return validate_scenario(std::move(customers), std::move(grid));
}

std::vector<SweepRow> sweep(const SweepSpec& spec, const Scenario& scenario) {
  if (scenario.num_players() != 2) throw UnsupportedSizeError(scenario.num_players());
  if (spec.theories.empty()) throw ScenarioError("sweep.theories", "at least one theory is required");
  std::vector<Theory> theories;
  for (Theory t : {Theory::EUT, Theory::PT})
    for (Theory requested : spec.theories)
      if (requested == t) {
        theories.push_back(t);
        break;
      }

  std::vector<SweepRow> rows;
  for (double value : spec.values()) {
    const Scenario point = apply_sweep_value(scenario, spec.parameter, value, spec.couple_sell_prices);
    const auto report = check_existence(point);
    SweepRow row;
    row.value = value;
    for (Theory theory : theories) {
      TheoryOutcome outcome;
      outcome.theory = theory;
      outcome.exists1 = report.players[0].satisfied;
      outcome.exists2 = report.players[1].satisfied;
      try {
        const auto result = solve(theory, point);
        outcome.solved = SolvedPoint{result.mixed[0], result.mixed[1], revenue(result.mixed, point),
                                     expected_load(result.mixed, point)};
      } catch (const Error& e) {
        // Existence failures and unrepresentable roots leave the point unsolved.
        if (e.kind() != ErrorKind::Existence && e.kind() != ErrorKind::Numeric) throw;
      }
      row.outcomes.push_back(outcome);
    }
    rows.push_back(std::move(row));
  }
  if (feasible_points(rows) == 0)
    throw Error(ErrorKind::Existence, "sweep is empty: no swept value admits a proper equilibrium");
  return rows;
}

std::size_t feasible_points(const std::vector<SweepRow>& rows) {
  std::size_t count = 0;
  for (const auto& row : rows) {
    bool all = !row.outcomes.empty();
    for (const auto& o : row.outcomes) all = all && o.solved.has_value();
    if (all) ++count;
  }
  return count;
}

std::string format_number(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return buffer;
}

void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  if (rows.empty()) throw Error(ErrorKind::Io, "emit_csv: no rows to write");
  out << "parameter,theory,p1,p2,revenue,load,exists1,exists2\n";
  for (const auto& row : rows) {
    for (const auto& o : row.outcomes) {
      out << format_number(row.value) << ',' << to_string(o.theory) << ',';
      if (o.solved)
        out << format_number(o.solved->p1) << ',' << format_number(o.solved->p2) << ','
            << format_number(o.solved->revenue) << ',' << format_number(o.solved->expected_load_kwh);
      else
        out << ",,,";
      out << ',' << (o.exists1 ? "true" : "false") << ',' << (o.exists2 ? "true" : "false") << '\n';
    }
  }
}

void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& destination) {
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::Io, "cannot open '" + destination.string() + "' for writing");
  emit_csv(rows, file);
  file.flush();
  if (!file) throw Error(ErrorKind::Io, "failed writing '" + destination.string() + "'");
}

}  // namespace storagegame
