#pragma once

#include <string>
#include <vector>

#include "feint/reward.hpp"

namespace feint {

/// A mixed strategy: probabilities sum to 1, none negative.
struct Policy {
    std::vector<double> probabilities;
    std::vector<std::string> labels;
};

/// Maximin solution for the row player: the guaranteed expected reward
/// `value` and a policy achieving it against every opponent column.
struct GameSolution {
    Policy agent_policy;
    double value = 0.0;
};

/// Solves max_v { v : R^T pi >= v 1, sum pi = 1, pi >= 0 } for the row
/// player of R via a dense simplex on the positive-shift reduction of the
/// matrix game. Deterministic (lowest-index pivoting). Throws on non-finite
/// entries or an empty matrix. The opponent's policy is the row solution of
/// the negated transpose.
GameSolution solve_maximin(const RewardMatrix& R);

/// View of the same game from the other side: -R^T with labels swapped.
RewardMatrix negate_transpose(const RewardMatrix& R);

/// Bilinear expected reward: agent over rows, opponent over columns.
double expected_reward(const RewardMatrix& R, const Policy& agent, const Policy& opp);

/// Shannon entropy in bits, with 0 log 0 = 0.
double policy_entropy(const Policy& p);

} // namespace feint
