#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feint/errors.hpp"

namespace feint {

/// One sampled body configuration: a flat vector of joint coordinates and
/// stretching angles. No skeleton hierarchy; the generation math only needs
/// a distance metric and reversal.
using Pose = std::vector<double>;

enum class ActionKind { attack, defense, feint };

const char* to_string(ActionKind kind);
ActionKind action_kind_from_string(std::string_view name);

/// Ordered pose samples at a fixed time step.
struct FrameSequence {
    std::vector<Pose> frames;
    double frame_dt = 0.0; // unit time per frame, > 0

    bool operator==(const FrameSequence&) const = default;
};

/// Boundaries of the three execution stages over a frame sequence:
///   stage 1 (wind-up)   = [0, stage1_end)
///   stage 2 (damage)    = [stage1_end, damage_end]
///   stage 3 (retract)   = (damage_end, last frame]
/// All three must be non-empty: 0 < stage1_end <= damage_end < frame count - 1.
struct StageAnnotation {
    std::size_t stage1_end = 0;
    std::size_t damage_end = 0;

    bool operator==(const StageAnnotation&) const = default;
};

/// A timed attack/defense/feint action. Times are in abstract unit time,
/// damage in reward units. Frames and stages are optional: datasets that
/// only carry timing (like the bundled five-action set) omit them.
struct ActionSpec {
    std::string id;
    ActionKind kind = ActionKind::attack;
    double damage = 0.0;
    double total_time = 0.0;
    double stretch_out_time = 0.0; // wind-up duration; damage lands this long after start
    std::string stance_start = "neutral";
    std::string stance_end = "neutral";
    std::optional<FrameSequence> frames;
    std::optional<StageAnnotation> stages;

    bool operator==(const ActionSpec&) const = default;
};

struct ActionSet {
    std::vector<ActionSpec> actions;
    int joint_dimension = 1;

    /// nullptr when no action has this id.
    const ActionSpec* find(std::string_view id) const;

    bool operator==(const ActionSet&) const = default;
};

/// Euclidean distance between two poses of equal dimension.
/// Zero iff the poses are componentwise equal.
double pose_distance(const Pose& a, const Pose& b);

/// Soft stage checks for an annotated action: returns the list of violated
/// invariants (empty list means consistent). Requires frames and stages.
/// Checks stage non-emptiness and that stretch_out_time matches the stage-1
/// duration within one frame_dt.
std::vector<std::string> validate_stages(const ActionSpec& spec);

/// Throws ValidationError naming the offending action and invariant.
void validate_action_set(const ActionSet& set);

/// Loads and validates an action set from the documented JSON format.
/// Throws IoError (unreadable file), ParseError (malformed JSON/shape) or
/// ValidationError (invariant violation).
ActionSet load_action_set(const std::filesystem::path& path);

/// Same as load_action_set but from an in-memory JSON string.
ActionSet parse_action_set(const std::string& text);

std::string action_set_to_json(const ActionSet& set);

/// Serializes in the same format load_action_set reads; reloading yields an
/// equal ActionSet.
void save_action_set(const ActionSet& set, const std::filesystem::path& path);

} // namespace feint
