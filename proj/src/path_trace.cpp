#include "gridnav/path_trace.hpp"

#include <json.hpp>

namespace gridnav {

double trace_cost(const PathTrace& trace) {
    double cost = 0.0;
    for (Action a : trace.actions) cost += action_cost(a);
    return cost;
}

std::string path_trace_to_json(const PathTrace& trace) {
    nlohmann::json j;
    auto& states = j["states"] = nlohmann::json::array();
    for (const AgentState& s : trace.states) states.push_back({s.x, s.y});
    auto& actions = j["actions"] = nlohmann::json::array();
    for (Action a : trace.actions) actions.push_back(action_name(a));
    j["rewards"] = trace.rewards;
    j["total_reward"] = trace.total_reward;
    j["steps"] = trace.steps;
    j["reached_goal"] = trace.reached_goal;
    return j.dump(2) + "\n";
}

PathTrace path_trace_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    PathTrace trace;
    for (const auto& s : j.at("states")) {
        trace.states.push_back(AgentState{s.at(0).get<int>(), s.at(1).get<int>()});
    }
    for (const auto& a : j.at("actions")) {
        const std::string name = a.get<std::string>();
        bool found = false;
        for (Action act : kAllActions) {
            if (name == action_name(act)) {
                trace.actions.push_back(act);
                found = true;
                break;
            }
        }
        if (!found) throw Error("unknown action name in trace: " + name);
    }
    trace.rewards = j.at("rewards").get<std::vector<double>>();
    trace.total_reward = j.at("total_reward").get<double>();
    trace.steps = j.at("steps").get<int>();
    trace.reached_goal = j.at("reached_goal").get<bool>();
    return trace;
}

}  // namespace gridnav
