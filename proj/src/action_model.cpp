#include "feint/action_model.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace feint {

namespace {

using nlohmann::json;

bool is_finite_pose(const Pose& p) {
    for (double v : p) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

} // namespace

const char* to_string(ActionKind kind) {
    switch (kind) {
    case ActionKind::attack: return "attack";
    case ActionKind::defense: return "defense";
    case ActionKind::feint: return "feint";
    }
    return "attack";
}

ActionKind action_kind_from_string(std::string_view name) {
    if (name == "attack") return ActionKind::attack;
    if (name == "defense") return ActionKind::defense;
    if (name == "feint") return ActionKind::feint;
    throw ParseError("unknown action kind '" + std::string(name) + "'");
}

const ActionSpec* ActionSet::find(std::string_view id) const {
    for (const auto& a : actions) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

double pose_distance(const Pose& a, const Pose& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("pose dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

std::vector<std::string> validate_stages(const ActionSpec& spec) {
    if (!spec.frames || !spec.stages) {
        throw std::invalid_argument("validate_stages requires frames and stages (action '" +
                                    spec.id + "')");
    }
    std::vector<std::string> violations;
    const std::size_t n = spec.frames->frames.size();
    const StageAnnotation& st = *spec.stages;
    if (st.stage1_end == 0) violations.push_back("stage 1 empty");
    if (st.stage1_end > st.damage_end) violations.push_back("stage 2 empty");
    if (st.damage_end + 1 >= n) violations.push_back("stage 3 empty");
    if (violations.empty()) {
        const double dt = spec.frames->frame_dt;
        const double stage1_duration = static_cast<double>(st.stage1_end) * dt;
        if (std::abs(spec.stretch_out_time - stage1_duration) > dt) {
            violations.push_back("stretch-out time inconsistent with stage 1 duration");
        }
    }
    return violations;
}

void validate_action_set(const ActionSet& set) {
    if (set.actions.empty()) throw ValidationError("action set empty");
    if (set.joint_dimension < 1) throw ValidationError("joint_dimension must be >= 1");

    std::set<std::string> seen;
    for (const ActionSpec& a : set.actions) {
        const std::string where = "action '" + a.id + "': ";
        if (a.id.empty()) throw ValidationError("action with empty id");
        if (!seen.insert(a.id).second) throw ValidationError(where + "duplicate id");
        if (!(a.total_time > 0.0)) throw ValidationError(where + "total_time must be > 0");
        if (a.damage < 0.0) throw ValidationError(where + "damage must be >= 0");
        if (a.stretch_out_time < 0.0) throw ValidationError(where + "stretch_out_time must be >= 0");
        if (a.stretch_out_time > a.total_time) {
            throw ValidationError(where + "stretch_out_time exceeds total_time");
        }
        if (a.kind == ActionKind::feint && a.damage != 0.0) {
            throw ValidationError(where + "feint must have zero damage");
        }
        if (a.stages && !a.frames) {
            throw ValidationError(where + "stages require frames");
        }
        if (a.frames) {
            const FrameSequence& fs = *a.frames;
            if (!(fs.frame_dt > 0.0)) throw ValidationError(where + "frame_dt must be > 0");
            if (fs.frames.size() < 2) throw ValidationError(where + "frame sequence too short");
            for (const Pose& p : fs.frames) {
                if (p.size() != static_cast<std::size_t>(set.joint_dimension)) {
                    throw ValidationError(where + "frame dimension differs from joint_dimension");
                }
                if (!is_finite_pose(p)) throw ValidationError(where + "non-finite joint value");
            }
            const double span = static_cast<double>(fs.frames.size()) * fs.frame_dt;
            if (std::abs(span - a.total_time) > fs.frame_dt) {
                throw ValidationError(where + "frame count x frame_dt inconsistent with total_time");
            }
        }
        if (a.stages) {
            const std::size_t n = a.frames->frames.size();
            const StageAnnotation& st = *a.stages;
            if (!(st.stage1_end > 0 && st.stage1_end <= st.damage_end && st.damage_end + 1 < n)) {
                throw ValidationError(where + "stage boundaries must satisfy 0 < stage1_end <= "
                                              "damage_end < frame count - 1");
            }
        }
    }
}

namespace {

json pose_to_json(const Pose& p) { return json(p); }

json action_to_json(const ActionSpec& a) {
    json j;
    j["id"] = a.id;
    j["kind"] = to_string(a.kind);
    j["damage"] = a.damage;
    j["total_time"] = a.total_time;
    j["stretch_out_time"] = a.stretch_out_time;
    j["stance_start"] = a.stance_start;
    j["stance_end"] = a.stance_end;
    if (a.frames) {
        j["frame_dt"] = a.frames->frame_dt;
        json fr = json::array();
        for (const Pose& p : a.frames->frames) fr.push_back(pose_to_json(p));
        j["frames"] = std::move(fr);
    }
    if (a.stages) {
        j["stages"] = {{"stage1_end", a.stages->stage1_end},
                       {"damage_end", a.stages->damage_end}};
    }
    return j;
}

ActionSpec action_from_json(const json& j) {
    ActionSpec a;
    a.id = j.at("id").get<std::string>();
    a.kind = action_kind_from_string(j.at("kind").get<std::string>());
    a.damage = j.at("damage").get<double>();
    a.total_time = j.at("total_time").get<double>();
    a.stretch_out_time = j.at("stretch_out_time").get<double>();
    a.stance_start = j.value("stance_start", std::string("neutral"));
    a.stance_end = j.value("stance_end", std::string("neutral"));
    if (j.contains("frames")) {
        FrameSequence fs;
        fs.frame_dt = j.at("frame_dt").get<double>();
        for (const json& row : j.at("frames")) {
            fs.frames.push_back(row.get<Pose>());
        }
        a.frames = std::move(fs);
    }
    if (j.contains("stages")) {
        StageAnnotation st;
        st.stage1_end = j.at("stages").at("stage1_end").get<std::size_t>();
        st.damage_end = j.at("stages").at("damage_end").get<std::size_t>();
        a.stages = st;
    }
    return a;
}

} // namespace

ActionSet parse_action_set(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("action set: ") + e.what());
    }
    ActionSet set;
    try {
        set.joint_dimension = j.at("joint_dimension").get<int>();
        for (const json& aj : j.at("actions")) {
            set.actions.push_back(action_from_json(aj));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("action set: ") + e.what());
    }
    validate_action_set(set);
    return set;
}

ActionSet load_action_set(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_action_set(buf.str());
}

std::string action_set_to_json(const ActionSet& set) {
    json j;
    j["joint_dimension"] = set.joint_dimension;
    json arr = json::array();
    for (const ActionSpec& a : set.actions) arr.push_back(action_to_json(a));
    j["actions"] = std::move(arr);
    return j.dump(2) + "\n";
}

void save_action_set(const ActionSet& set, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out << action_set_to_json(set);
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace feint
