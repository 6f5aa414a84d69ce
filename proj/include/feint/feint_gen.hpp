#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "feint/action_model.hpp"

namespace feint {

/// How a feint's frames were extracted from its source attack.
///   identical_pair — keep the stage-1 prefix up to frame i and the stage-3
///                    suffix from frame j, where poses i and j already match.
///   forward_cut    — stage-1 prefix up to the cut, then the same frames
///                    played back in reverse.
///   backward_cut   — stage-3 suffix from the cut, prefixed by its reverse,
///                    so the motion starts and ends at the rest pose.
enum class FeintMethod { identical_pair, forward_cut, backward_cut };

const char* to_string(FeintMethod method);

/// A damage-free action extracted from an attack's wind-up/retract frames.
/// Frames never include a damage-stage index of the source; the motion is
/// time-symmetric (exactly for cut methods, up to the matching tolerance at
/// the junction for identical_pair), and shorter than the source.
struct FeintAction {
    std::string source_id;
    FeintMethod method = FeintMethod::forward_cut;
    std::vector<std::size_t> cut_params; // {i, j} for identical_pair, {cut} otherwise
    FrameSequence frames;
    double total_time = 0.0;
    ActionSpec spec; // kind=feint, damage 0, loadable as a first-class action
};

/// All (i, j) with i in stage 1, j in stage 3 and pose_distance(i, j) <= eps,
/// ordered by i then j. Requires frames and stages; eps must be >= 0.
std::vector<std::pair<std::size_t, std::size_t>>
find_identical_pairs(const ActionSpec& action, double eps);

/// Feint from an identical pair: source frames [0..i] ++ [j..end]. The two
/// junction frames are both kept; they already match within the pair's eps.
FeintAction gen_feint_identical(const ActionSpec& action,
                                std::pair<std::size_t, std::size_t> pair);

/// Feint from a stage-1 cut (0 < cut < stage1_end): frames [0..cut] followed
/// by the reverse of [0..cut-1]; an exact palindrome of length 2*cut + 1.
FeintAction gen_feint_forward_cut(const ActionSpec& action, std::size_t cut);

/// Feint from a stage-3 cut (damage_end < cut < last): the tail [cut..end]
/// prefixed by the reverse of its own later frames; an exact palindrome that
/// starts and ends at the source's rest pose.
FeintAction gen_feint_backward_cut(const ActionSpec& action, std::size_t cut);

/// Every feint the three methods can produce whose duration falls in
/// [duration_min, duration_max] and stays below the source duration,
/// deduplicated by frame content. Deterministic order.
std::vector<FeintAction> enumerate_feints(const ActionSpec& action, double duration_min,
                                          double duration_max, double eps);

/// Writes feints in the action-set file format so they load as first-class
/// actions.
void export_feints(const std::vector<FeintAction>& feints, int joint_dimension,
                   const std::filesystem::path& path);

} // namespace feint
