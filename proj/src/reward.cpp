#include "feint/reward.hpp"

#include <algorithm>
#include <ostream>

#include "feint/num_format.hpp"

namespace feint {

RewardMatrix single_action_matrix(const ActionSet& set) {
    std::vector<const ActionSpec*> attacks;
    for (const ActionSpec& a : set.actions) {
        if (a.kind == ActionKind::attack) attacks.push_back(&a);
    }
    if (attacks.empty()) throw ValidationError("action set has no attack actions");

    RewardMatrix m;
    for (const ActionSpec* a : attacks) {
        m.rows.push_back(a->id);
        m.cols.push_back(a->id);
    }
    m.values.resize(attacks.size(), std::vector<double>(attacks.size(), 0.0));
    for (std::size_t r = 0; r < attacks.size(); ++r) {
        for (std::size_t c = 0; c < attacks.size(); ++c) {
            m.values[r][c] = attacks[r]->damage - attacks[c]->damage;
        }
    }
    return m;
}

std::vector<CompetingPair> align_pairs(const ActionCombination& agent,
                                       const ActionCombination& opp) {
    if (agent.units.empty() && opp.units.empty()) {
        throw std::invalid_argument("empty combination");
    }
    const std::size_t n = std::max(agent.units.size(), opp.units.size());
    std::vector<CompetingPair> pairs(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i < agent.units.size()) pairs[i].agent = agent.units[i];
        if (i < opp.units.size()) pairs[i].opp = opp.units[i];
    }
    return pairs;
}

namespace {

bool is_feint_id(const ActionSet& set, const std::string& id) {
    const ActionSpec* spec = set.find(id);
    if (!spec) throw ValidationError("unknown action id '" + id + "'");
    return spec->kind == ActionKind::feint;
}

// Folds sequence positions [start, start+len) into one unit. A two-action
// block leads with its first member: wind-up = lead total + final wind-up.
EffectiveUnit fold_block(const ActionSet& set, const ActionCombination& combo,
                         std::size_t start, std::size_t len) {
    const ActionSpec* last = set.find(combo.sequence[start + len - 1]);
    if (last->kind == ActionKind::feint) {
        throw std::invalid_argument("misaligned feint at end of block in '" + combo.label() + "'");
    }
    EffectiveUnit unit;
    unit.attack = last->id;
    unit.stretch_out = last->stretch_out_time;
    unit.damage = last->damage;
    if (len == 2) {
        const ActionSpec* lead = set.find(combo.sequence[start]);
        unit.feint = lead->id;
        unit.stretch_out += lead->total_time;
        unit.damage += lead->damage;
    }
    return unit;
}

} // namespace

std::vector<CompetingPair> align_pairs_by_action(const ActionCombination& agent,
                                                 const ActionCombination& opp,
                                                 const ActionSet& set) {
    if (agent.sequence.empty() && opp.sequence.empty()) {
        throw std::invalid_argument("empty combination");
    }
    if (agent.sequence.size() != opp.sequence.size()) {
        throw std::invalid_argument("raw alignment requires equal action counts");
    }
    std::vector<CompetingPair> pairs;
    std::size_t pos = 0;
    const std::size_t n = agent.sequence.size();
    while (pos < n) {
        const bool feint_here = is_feint_id(set, agent.sequence[pos]) ||
                                is_feint_id(set, opp.sequence[pos]);
        const std::size_t len = (feint_here && pos + 1 < n) ? 2 : 1;
        CompetingPair pair;
        pair.agent = fold_block(set, agent, pos, len);
        pair.opp = fold_block(set, opp, pos, len);
        pairs.push_back(std::move(pair));
        pos += len;
    }
    return pairs;
}

double pair_reward(const CompetingPair& pair) {
    if (!pair.agent && !pair.opp) throw std::invalid_argument("empty competing pair");
    if (!pair.opp) return pair.agent->damage;
    if (!pair.agent) return -pair.opp->damage;
    if (pair.agent->stretch_out < pair.opp->stretch_out) return pair.agent->damage;
    if (pair.agent->stretch_out > pair.opp->stretch_out) return -pair.opp->damage;
    return pair.agent->damage - pair.opp->damage;
}

RewardMatrix combination_matrix(const std::vector<ActionCombination>& agent_combos,
                                const std::vector<ActionCombination>& opp_combos) {
    if (agent_combos.empty() || opp_combos.empty()) {
        throw std::invalid_argument("combination lists must be non-empty");
    }
    RewardMatrix m;
    for (const auto& c : agent_combos) m.rows.push_back(c.label());
    for (const auto& c : opp_combos) m.cols.push_back(c.label());
    m.values.resize(agent_combos.size(), std::vector<double>(opp_combos.size(), 0.0));
    for (std::size_t r = 0; r < agent_combos.size(); ++r) {
        for (std::size_t c = 0; c < opp_combos.size(); ++c) {
            double sum = 0.0;
            for (const CompetingPair& p : align_pairs(agent_combos[r], opp_combos[c])) {
                sum += pair_reward(p);
            }
            m.values[r][c] = sum;
        }
    }
    return m;
}

void write_matrix_csv(const RewardMatrix& matrix, std::ostream& out) {
    out << "agent\\opponent";
    for (const std::string& c : matrix.cols) out << "," << c;
    out << "\n";
    for (std::size_t r = 0; r < matrix.rows.size(); ++r) {
        out << matrix.rows[r];
        for (double v : matrix.values[r]) out << "," << format_double(v);
        out << "\n";
    }
}

} // namespace feint
