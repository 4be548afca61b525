#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "storagegame/model.hpp"

namespace storagegame {

/// Upper bound on K for anything that enumerates all 2^K pure profiles.
inline constexpr std::size_t kMaxEnumeratedPlayers = 20;

/// Pure profiles are indexed by a bit mask: bit k set means player k discharges,
/// so index 0 is the all-charge profile.
std::uint32_t profile_index(const ActionProfile& profile);
ActionProfile profile_from_index(std::uint32_t index, std::size_t players);

/// Per-player utilities for all 2^K pure profiles.
class PayoffTable {
 public:
  PayoffTable(std::size_t players, std::vector<double> utilities);

  std::size_t num_players() const noexcept { return players_; }
  std::size_t num_profiles() const noexcept { return std::size_t{1} << players_; }

  double utility(std::size_t k, std::uint32_t profile) const {
    return utilities_[profile * players_ + k];
  }
  double utility(std::size_t k, const ActionProfile& profile) const {
    return utility(k, profile_index(profile));
  }
  std::span<const double> at(std::uint32_t profile) const {
    return {utilities_.data() + profile * players_, players_};
  }

 private:
  std::size_t players_;
  std::vector<double> utilities_;  // row-major: profile, then player
};

/// u_k(a) = -c(a)(D_k + L_k(a)) [if charging] + b_k S_k [if discharging] - beta (G(a) - G_nominal)^2
double pure_utility(std::size_t k, const ActionProfile& profile, const Scenario& scenario);

/// Enumerates every pure profile. Throws ScenarioError when K exceeds kMaxEnumeratedPlayers.
PayoffTable payoff_table(const Scenario& scenario);

/// Prelec probability weighting exp(-(-ln sigma)^alpha), extended by
/// continuity with w(0) = 0 and w(1) = 1.
double prelec_weight(double sigma, double alpha);

/// Objective expected utility of player k.
double eut_expected_utility(std::size_t k, const MixedProfile& mixed, const PayoffTable& table);

/// Subjective expected utility of player k: opponents' probabilities pass
/// through the Prelec weight, k's own probability does not.
double pt_expected_utility(std::size_t k, const MixedProfile& mixed, const PayoffTable& table,
                           double alpha);

/// Expected utility under the given theory; `alpha` is ignored for EUT.
double expected_utility(Theory theory, std::size_t k, const MixedProfile& mixed,
                        const PayoffTable& table, double alpha);

/// Expected utility of player k committing to a pure action while everyone
/// else keeps their mix.
double action_value(Theory theory, std::size_t k, Action action, const MixedProfile& mixed,
                    const PayoffTable& table, double alpha);

}  // namespace storagegame
