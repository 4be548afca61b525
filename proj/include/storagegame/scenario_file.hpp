#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "storagegame/model.hpp"

namespace storagegame {

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

// Scenario files are TOML:
//
//   [grid]
//   background_load_kwh = 200.0
//   beta = 0.0018
//   prelec_alpha = 0.25        # optional, default 1
//   price_cap = 0.25           # optional
//   loss_model = "zero"        # or "linear_fraction"; optional, default "zero"
//   loss_lambda = 0.02         # required iff loss_model = "linear_fraction"
//
//   [[tiers]]                  # one per price tier, ascending
//   threshold = 0.0
//   price = 0.05
//
//   [[customers]]              # one per active customer
//   demand = 20.0
//   surplus = 10.0
//   sell_price = 0.06
//
// Unknown keys are rejected. Syntax and schema problems raise ParseError;
// values that break a scenario invariant raise ScenarioError.

Scenario parse_scenario(std::string_view text, std::string_view source_name = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

/// Text of the bundled reference scenario (scenarios/reference.toml).
std::string_view reference_scenario_text() noexcept;
Scenario reference_scenario();

}  // namespace storagegame
