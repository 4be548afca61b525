#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "storagegame/model.hpp"

namespace storagegame {

/// Power company's expected revenue from the active customers under a mix:
/// the expectation over pure profiles of sum_{chargers} c(a) (D_k + L_k(a)).
double revenue(const MixedProfile& mixed, const Scenario& scenario);

/// Expected net grid load of the active customers, losses excluded:
/// sum_k p_k D_k - (1 - p_k) S_k.
double expected_load(const MixedProfile& mixed, const Scenario& scenario);

enum class SweepParameter { SellPrice, LmpBasePrice, Beta };

const char* to_string(SweepParameter parameter) noexcept;
/// Accepts the canonical names (sell_price, lmp_base_price, beta) and the short
/// aliases b and c. Throws ScenarioError on anything else.
SweepParameter parse_sweep_parameter(const std::string& name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::SellPrice;
  double start = 0.0;
  double stop = 0.0;
  std::size_t steps = 2;
  std::vector<Theory> theories{Theory::EUT, Theory::PT};
  /// SellPrice only: true sets every customer's price, false only customer 1's.
  bool couple_sell_prices = true;

  /// The swept values: `steps` evenly spaced points from start to stop inclusive.
  std::vector<double> values() const;
};

struct SolvedPoint {
  double p1 = 0.0;
  double p2 = 0.0;
  double revenue = 0.0;
  double expected_load_kwh = 0.0;
};

struct TheoryOutcome {
  Theory theory = Theory::EUT;
  std::optional<SolvedPoint> solved;  // empty when no proper equilibrium was found
  bool exists1 = false;
  bool exists2 = false;
};

struct SweepRow {
  double value = 0.0;
  std::vector<TheoryOutcome> outcomes;  // EUT before PT

  const TheoryOutcome* outcome(Theory theory) const;
};

/// Scenario with the swept parameter set to `value`, re-validated.
Scenario apply_sweep_value(const Scenario& scenario, SweepParameter parameter, double value,
                           bool couple_sell_prices = true);

/// Solves every requested theory at every swept value. Throws
/// Error(Existence) if no point of the sweep has a proper equilibrium.
std::vector<SweepRow> sweep(const SweepSpec& spec, const Scenario& scenario);

std::size_t feasible_points(const std::vector<SweepRow>& rows);

/// CSV with header `parameter,theory,p1,p2,revenue,load,exists1,exists2`,
/// one line per (value, theory). Numbers use 15 significant digits.
void emit_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void emit_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& destination);

/// 15-significant-digit decimal form used in all machine-readable output.
std::string format_number(double value);

}  // namespace storagegame
