#include "feint/combo_enum.hpp"

#include <algorithm>
#include <limits>

namespace feint {

std::string EffectiveUnit::label() const {
    return feint ? *feint + "+" + attack : attack;
}

std::string ActionCombination::label() const {
    std::string out;
    for (const std::string& id : sequence) {
        if (!out.empty()) out += "+";
        out += id;
    }
    return out;
}

ActionCombination make_combination(const ActionSet& set, const std::vector<std::string>& ids) {
    ActionCombination combo;
    combo.sequence = ids;
    const ActionSpec* pending_feint = nullptr;
    for (const std::string& id : ids) {
        const ActionSpec* spec = set.find(id);
        if (!spec) throw ValidationError("unknown action id '" + id + "'");
        combo.total_time += spec->total_time;
        if (spec->kind == ActionKind::feint) {
            if (pending_feint) {
                throw ValidationError("feint '" + pending_feint->id +
                                      "' must be immediately followed by an attack");
            }
            pending_feint = spec;
            continue;
        }
        EffectiveUnit unit;
        unit.attack = spec->id;
        unit.stretch_out = spec->stretch_out_time;
        unit.damage = spec->damage;
        if (pending_feint) {
            unit.feint = pending_feint->id;
            unit.stretch_out += pending_feint->total_time;
            pending_feint = nullptr;
        }
        combo.units.push_back(std::move(unit));
    }
    if (pending_feint) {
        throw ValidationError("feint '" + pending_feint->id +
                              "' must be immediately followed by an attack");
    }
    return combo;
}

bool check_physical_link(const ActionSpec& prev, const ActionSpec& next, double eps) {
    if (prev.frames && next.frames) {
        return pose_distance(prev.frames->frames.back(), next.frames->frames.front()) <= eps;
    }
    return prev.stance_end == next.stance_start;
}

namespace {

struct Enumerator {
    const EnumerationConfig& cfg;
    std::vector<const ActionSpec*> candidates; // sorted by id
    double band_lo = 0.0;
    std::vector<const ActionSpec*> stack;
    std::vector<ActionCombination> out;

    void emit(double total) {
        ActionCombination combo;
        combo.total_time = total;
        combo.sequence.reserve(stack.size());
        const ActionSpec* pending = nullptr;
        for (const ActionSpec* spec : stack) {
            combo.sequence.push_back(spec->id);
            if (spec->kind == ActionKind::feint) {
                pending = spec;
                continue;
            }
            EffectiveUnit unit;
            unit.attack = spec->id;
            unit.stretch_out = spec->stretch_out_time;
            unit.damage = spec->damage;
            if (pending) {
                unit.feint = pending->id;
                unit.stretch_out += pending->total_time;
                pending = nullptr;
            }
            combo.units.push_back(std::move(unit));
        }
        out.push_back(std::move(combo));
    }

    void dfs(double total, int feints_used, bool last_was_feint) {
        if (!last_was_feint && !stack.empty() && total >= band_lo) {
            // Inside the admissible band nothing more fits below L.
            emit(total);
            return;
        }
        for (const ActionSpec* cand : candidates) {
            const bool is_feint = cand->kind == ActionKind::feint;
            if (is_feint && (last_was_feint || feints_used >= cfg.max_feints_per_combo)) continue;
            if (cfg.enforce_stance_links && !stack.empty() &&
                !check_physical_link(*stack.back(), *cand, cfg.link_eps)) {
                continue;
            }
            const double next_total = total + cand->total_time;
            if (next_total >= cfg.lookahead) continue;
            stack.push_back(cand);
            dfs(next_total, feints_used + (is_feint ? 1 : 0), is_feint);
            stack.pop_back();
        }
    }
};

} // namespace

std::vector<ActionCombination> enumerate_combinations(const ActionSet& set,
                                                      const EnumerationConfig& cfg) {
    Enumerator e{cfg, {}, 0.0, {}, {}};
    const bool feints_eligible = cfg.allow_feints && cfg.max_feints_per_combo > 0;
    for (const ActionSpec& a : set.actions) {
        if (a.kind == ActionKind::attack || (feints_eligible && a.kind == ActionKind::feint)) {
            e.candidates.push_back(&a);
        }
    }
    std::sort(e.candidates.begin(), e.candidates.end(),
              [](const ActionSpec* a, const ActionSpec* b) { return a->id < b->id; });

    double min_time = std::numeric_limits<double>::infinity();
    for (const ActionSpec* c : e.candidates) min_time = std::min(min_time, c->total_time);
    if (e.candidates.empty()) return {};
    e.band_lo = cfg.lookahead - min_time;

    e.dfs(0.0, 0, false);
    std::sort(e.out.begin(), e.out.end(), [](const ActionCombination& a, const ActionCombination& b) {
        return a.sequence < b.sequence;
    });
    return e.out;
}

const char* to_string(FeintTimingRegime regime) {
    switch (regime) {
    case FeintTimingRegime::too_short: return "too_short";
    case FeintTimingRegime::proper: return "proper";
    case FeintTimingRegime::too_long: return "too_long";
    }
    return "proper";
}

FeintTimingRegime classify_feint_timing(const TimingMarks& marks) {
    if (marks.t_a2 < marks.t_b1) return FeintTimingRegime::too_short;
    if (marks.t_a2 < marks.t_b2) return FeintTimingRegime::proper;
    return FeintTimingRegime::too_long;
}

TimingMarks compute_timing_marks(const EffectiveUnit& agent_first,
                                 const ActionSpec& opp_first_action,
                                 const std::optional<EffectiveUnit>& opp_second) {
    if (!agent_first.feint) {
        throw std::invalid_argument("agent's first unit carries no feint");
    }
    if (!opp_second) {
        throw std::invalid_argument("opponent second unit required");
    }
    TimingMarks marks;
    marks.t_a2 = agent_first.stretch_out;
    marks.t_b1 = opp_first_action.total_time;
    marks.t_b2 = marks.t_b1 + opp_second->stretch_out;
    return marks;
}

} // namespace feint
