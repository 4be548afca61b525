#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "storagegame/model.hpp"
#include "storagegame/utility.hpp"

namespace storagegame {

/// Existence bounds for one player of the two-player game:
///   lower = -c(D_k, D_-k) D_k + beta (D_k + S_k)^2
///   upper = -c(D_k, S_-k) D_k + beta (D_k + S_k)^2 + 2 beta (D_1 + S_1)(D_2 + S_2)
/// and the condition lower < b_k S_k < upper.
struct PlayerBounds {
  double lower = 0.0;
  double upper = 0.0;
  double value = 0.0;  // b_k S_k
  bool satisfied = false;
};

struct ExistenceReport {
  std::array<PlayerBounds, 2> players{};

  bool satisfied() const noexcept { return players[0].satisfied && players[1].satisfied; }
  std::string describe() const;
};

/// No proper mixed equilibrium: the existence bounds fail, or the indifference
/// equations have no root strictly inside (0, 1).
class NoProperEquilibriumError : public Error {
 public:
  NoProperEquilibriumError(const std::string& what, std::optional<ExistenceReport> report)
      : Error(ErrorKind::Existence, what), report_(std::move(report)) {}
  const std::optional<ExistenceReport>& report() const noexcept { return report_; }

 private:
  std::optional<ExistenceReport> report_;
};

class DegenerateGameError : public Error {
 public:
  explicit DegenerateGameError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

/// Thrown by two-player-only operations when K != 2.
class UnsupportedSizeError : public Error {
 public:
  explicit UnsupportedSizeError(std::size_t players);
};

ExistenceReport check_existence(const Scenario& scenario);

/// Player k's payoff differences against each pure opponent action, k in {0, 1}:
///   charge_advantage    = u_k(D, D) - u_k(S, D)
///   discharge_advantage = u_k(S, S) - u_k(D, S)
/// (own action first). Player k is indifferent iff the opponent's charge
/// probability q satisfies q * charge_advantage = (1 - q) * discharge_advantage.
struct IndifferenceTerms {
  double charge_advantage = 0.0;
  double discharge_advantage = 0.0;
};

IndifferenceTerms indifference_terms(std::size_t k, const PayoffTable& table);

/// Opponent charge probability that makes a player indifferent under EUT:
/// discharge_advantage / (charge_advantage + discharge_advantage).
double eut_indifference_probability(const IndifferenceTerms& terms);

/// Opponent charge probability q with w(q) / w(1 - q) = discharge_advantage / charge_advantage.
double pt_indifference_probability(const IndifferenceTerms& terms, double alpha);

EquilibriumResult solve_eut(const Scenario& scenario);
EquilibriumResult solve_pt(const Scenario& scenario);
EquilibriumResult solve(Theory theory, const Scenario& scenario);

struct VerificationReport {
  std::vector<double> max_gain;  // per player, best deviation gain on the grid
  bool confirmed = false;
};

inline constexpr double kEquilibriumGainTolerance = 1e-8;

/// Scans each player's unilateral deviations over `resolution` evenly spaced
/// charge probabilities (0 and 1 included) under the result's theory.
VerificationReport verify_equilibrium(const EquilibriumResult& result, const Scenario& scenario,
                                      std::size_t resolution);

/// Pure profiles where no single player gains by switching its action.
std::vector<ActionProfile> enumerate_pure_nash(const Scenario& scenario);

}  // namespace storagegame
