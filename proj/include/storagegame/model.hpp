#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace storagegame {

/// Broad failure classes. The CLI maps each one to a distinct exit code.
enum class ErrorKind : std::uint8_t { Parse, Validation, Existence, Numeric, Io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// An input violated a scenario invariant. `field()` names the offending field.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string field, const std::string& message)
      : Error(ErrorKind::Validation, field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Action : std::uint8_t { Charge, Discharge };
enum class Theory : std::uint8_t { EUT, PT };

const char* to_string(Action action) noexcept;
const char* to_string(Theory theory) noexcept;

/// One active customer: buys `demand_kwh` when charging, sells `surplus_kwh`
/// at `sell_price` per kWh when discharging.
struct Customer {
  double demand_kwh = 0.0;
  double surplus_kwh = 0.0;
  double sell_price = 0.0;
};

struct PriceTier {
  double threshold_kwh = 0.0;  // tier applies for generation above this level
  double unit_price = 0.0;
};

/// Step price ladder. Tier i covers generation in (threshold_i, threshold_{i+1}];
/// the first tier also covers everything at or below its own threshold and the
/// last tier is open-ended.
struct PricingScheme {
  std::vector<PriceTier> tiers;

  /// The four-tier ladder used throughout the reference scenario
  /// ($0.05 / $0.10 / $0.15 / $0.20 with breaks at 200, 250, 300 kWh).
  static PricingScheme reference_ladder();
};

struct ZeroLoss {};

/// Line losses proportional to the charging demand served (background included).
struct LinearFractionLoss {
  double lambda = 0.0;
};

using LossModel = std::variant<ZeroLoss, LinearFractionLoss>;

struct GridConfig {
  double background_load_kwh = 0.0;
  double beta = 0.0;
  std::optional<double> price_cap;
  PricingScheme pricing;
  LossModel loss_model = ZeroLoss{};
  double prelec_alpha = 1.0;
};

using ActionProfile = std::vector<Action>;

/// Per-player probability of choosing Charge.
struct MixedProfile {
  std::vector<double> charge_probability;

  std::size_t size() const noexcept { return charge_probability.size(); }
  double operator[](std::size_t k) const { return charge_probability[k]; }
  /// Probability that player k plays `action`.
  double probability(std::size_t k, Action action) const;
  /// True iff every entry lies strictly inside (0, 1).
  bool is_proper() const noexcept;
};

/// A customer list and grid configuration that passed validation.
/// Only `validate_scenario` creates one.
class Scenario {
 public:
  const std::vector<Customer>& customers() const noexcept { return customers_; }
  const Customer& customer(std::size_t k) const { return customers_.at(k); }
  const GridConfig& grid() const noexcept { return grid_; }
  std::size_t num_players() const noexcept { return customers_.size(); }

 private:
  friend Scenario validate_scenario(std::vector<Customer> customers, GridConfig grid);
  Scenario(std::vector<Customer> customers, GridConfig grid)
      : customers_(std::move(customers)), grid_(std::move(grid)) {}

  std::vector<Customer> customers_;
  GridConfig grid_;
};

/// Solver output: equilibrium mix plus diagnostics.
struct EquilibriumResult {
  MixedProfile mixed;
  Theory theory = Theory::EUT;
  /// Per player: value of pure Charge minus value of pure Discharge against the
  /// opponents' equilibrium mix, under `theory`.
  std::vector<double> indifference_residuals;
  /// Per player: whether the existence bounds hold.
  std::vector<bool> existence_satisfied;
  bool is_proper = false;
};

inline constexpr double kMaxLossFraction = 0.1;

/// Checks every invariant of the scenario types and returns the accepted
/// scenario. Throws ScenarioError naming the first violation found.
Scenario validate_scenario(std::vector<Customer> customers, GridConfig grid);

/// Checks an ActionProfile/MixedProfile against a scenario's player count.
void require_profile_size(std::size_t profile_size, const Scenario& scenario);
void require_mixed(const MixedProfile& mixed, std::size_t players);

}  // namespace storagegame
