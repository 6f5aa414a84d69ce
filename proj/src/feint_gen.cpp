#include "feint/feint_gen.hpp"

#include <algorithm>
#include <stdexcept>

namespace feint {

namespace {

void require_frames_and_stages(const ActionSpec& action) {
    if (!action.frames || !action.stages) {
        throw std::invalid_argument("action '" + action.id +
                                    "' needs frames and stages for feint generation");
    }
}

std::string feint_id(const ActionSpec& source, FeintMethod method,
                     const std::vector<std::size_t>& params) {
    std::string id = source.id;
    switch (method) {
    case FeintMethod::identical_pair:
        id += "_ip_" + std::to_string(params[0]) + "_" + std::to_string(params[1]);
        break;
    case FeintMethod::forward_cut:
        id += "_fc_" + std::to_string(params[0]);
        break;
    case FeintMethod::backward_cut:
        id += "_bc_" + std::to_string(params[0]);
        break;
    }
    return id;
}

FeintAction assemble(const ActionSpec& source, FeintMethod method,
                     std::vector<std::size_t> params, std::vector<Pose> poses) {
    FeintAction f;
    f.source_id = source.id;
    f.method = method;
    f.cut_params = std::move(params);
    f.frames.frame_dt = source.frames->frame_dt;
    f.frames.frames = std::move(poses);
    f.total_time = static_cast<double>(f.frames.frames.size()) * f.frames.frame_dt;

    ActionSpec& spec = f.spec;
    spec.id = feint_id(source, method, f.cut_params);
    spec.kind = ActionKind::feint;
    spec.damage = 0.0;
    spec.total_time = f.total_time;
    spec.stretch_out_time = f.total_time / 2.0; // apex of the palindrome
    // The body returns to its starting configuration, so both stances match
    // the source's opening stance.
    spec.stance_start = source.stance_start;
    spec.stance_end = source.stance_start;
    spec.frames = f.frames;
    return f;
}

} // namespace

const char* to_string(FeintMethod method) {
    switch (method) {
    case FeintMethod::identical_pair: return "identical_pair";
    case FeintMethod::forward_cut: return "forward_cut";
    case FeintMethod::backward_cut: return "backward_cut";
    }
    return "forward_cut";
}

std::vector<std::pair<std::size_t, std::size_t>>
find_identical_pairs(const ActionSpec& action, double eps) {
    require_frames_and_stages(action);
    if (eps < 0.0) throw std::invalid_argument("eps must be >= 0");

    const auto& frames = action.frames->frames;
    const StageAnnotation& st = *action.stages;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < st.stage1_end; ++i) {
        for (std::size_t j = st.damage_end + 1; j < frames.size(); ++j) {
            if (pose_distance(frames[i], frames[j]) <= eps) pairs.emplace_back(i, j);
        }
    }
    return pairs;
}

FeintAction gen_feint_identical(const ActionSpec& action,
                                std::pair<std::size_t, std::size_t> pair) {
    require_frames_and_stages(action);
    const auto& frames = action.frames->frames;
    const StageAnnotation& st = *action.stages;
    const auto [i, j] = pair;
    if (i >= st.stage1_end) throw std::invalid_argument("pair index i must lie in stage 1");
    if (j <= st.damage_end || j >= frames.size()) {
        throw std::invalid_argument("pair index j must lie in stage 3");
    }

    std::vector<Pose> poses(frames.begin(), frames.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    poses.insert(poses.end(), frames.begin() + static_cast<std::ptrdiff_t>(j), frames.end());
    return assemble(action, FeintMethod::identical_pair, {i, j}, std::move(poses));
}

FeintAction gen_feint_forward_cut(const ActionSpec& action, std::size_t cut) {
    require_frames_and_stages(action);
    const auto& frames = action.frames->frames;
    const StageAnnotation& st = *action.stages;
    if (cut == 0 || cut >= st.stage1_end) {
        throw std::invalid_argument("cut must precede damage stage");
    }

    std::vector<Pose> poses(frames.begin(), frames.begin() + static_cast<std::ptrdiff_t>(cut) + 1);
    for (std::size_t k = cut; k-- > 0;) poses.push_back(frames[k]);
    return assemble(action, FeintMethod::forward_cut, {cut}, std::move(poses));
}

FeintAction gen_feint_backward_cut(const ActionSpec& action, std::size_t cut) {
    require_frames_and_stages(action);
    const auto& frames = action.frames->frames;
    const StageAnnotation& st = *action.stages;
    if (cut <= st.damage_end || cut + 1 >= frames.size()) {
        throw std::invalid_argument("cut must follow damage stage");
    }

    std::vector<Pose> poses;
    for (std::size_t k = frames.size(); k-- > cut + 1;) poses.push_back(frames[k]);
    poses.insert(poses.end(), frames.begin() + static_cast<std::ptrdiff_t>(cut), frames.end());
    return assemble(action, FeintMethod::backward_cut, {cut}, std::move(poses));
}

std::vector<FeintAction> enumerate_feints(const ActionSpec& action, double duration_min,
                                          double duration_max, double eps) {
    if (duration_min < 0.0 || duration_min > duration_max) {
        throw std::invalid_argument("duration bounds must satisfy 0 <= min <= max");
    }
    require_frames_and_stages(action);

    const StageAnnotation& st = *action.stages;
    const std::size_t n = action.frames->frames.size();

    std::vector<FeintAction> candidates;
    for (const auto& pair : find_identical_pairs(action, eps)) {
        candidates.push_back(gen_feint_identical(action, pair));
    }
    for (std::size_t cut = 1; cut < st.stage1_end; ++cut) {
        candidates.push_back(gen_feint_forward_cut(action, cut));
    }
    for (std::size_t cut = st.damage_end + 1; cut + 1 < n; ++cut) {
        candidates.push_back(gen_feint_backward_cut(action, cut));
    }

    std::vector<FeintAction> result;
    for (FeintAction& f : candidates) {
        // A mirror around a late cut can outlast the source; such candidates
        // are not feints and are dropped.
        if (!(f.total_time < action.total_time)) continue;
        if (f.total_time < duration_min || f.total_time > duration_max) continue;
        const bool duplicate = std::any_of(result.begin(), result.end(), [&](const FeintAction& g) {
            return g.frames.frames == f.frames.frames;
        });
        if (!duplicate) result.push_back(std::move(f));
    }
    return result;
}

void export_feints(const std::vector<FeintAction>& feints, int joint_dimension,
                   const std::filesystem::path& path) {
    ActionSet set;
    set.joint_dimension = joint_dimension;
    for (const FeintAction& f : feints) set.actions.push_back(f.spec);
    save_action_set(set, path);
}

} // namespace feint
