#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gridnav/oracle.hpp"
#include "gridnav/svg.hpp"
#include "gridnav/trainer.hpp"

namespace py = pybind11;
using namespace gridnav;

namespace {

const char* voxel_state_name(VoxelState s) {
    switch (s) {
        case VoxelState::Occupied: return "occupied";
        case VoxelState::Free: return "free";
        case VoxelState::Outside: return "outside";
    }
    return "?";
}

const char* cell_state_name(CellState s) {
    switch (s) {
        case CellState::Occupied: return "occupied";
        case CellState::Free: return "free";
        case CellState::Unknown: return "unknown";
    }
    return "?";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "point-cloud to grid-map conversion and value-learning path planning";

    py::register_exception<Error>(m, "GridnavError");

    py::class_<Point3>(m, "Point3")
        .def(py::init<>())
        .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
        .def_readwrite("x", &Point3::x)
        .def_readwrite("y", &Point3::y)
        .def_readwrite("z", &Point3::z)
        .def("__repr__", [](const Point3& p) {
            return "Point3(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ", " +
                   std::to_string(p.z) + ")";
        });

    py::class_<Aabb>(m, "Aabb")
        .def_readwrite("lo", &Aabb::lo)
        .def_readwrite("hi", &Aabb::hi)
        .def("contains", &Aabb::contains);

    py::class_<PointCloud>(m, "PointCloud")
        .def(py::init<>())
        .def_readwrite("points", &PointCloud::points)
        .def("__len__", &PointCloud::size);

    m.def("parse_pcd", &parse_pcd, py::arg("text"));
    m.def("write_pcd", &write_pcd, py::arg("cloud"));
    m.def("load_pcd_file", &load_pcd_file, py::arg("path"));
    m.def("save_pcd_file", &save_pcd_file, py::arg("cloud"), py::arg("path"));
    m.def("bounding_box", &bounding_box, py::arg("cloud"));

    py::class_<OctreeConfig>(m, "OctreeConfig")
        .def(py::init<>())
        .def(py::init([](double resolution, int max_depth, int split_threshold) {
                 return OctreeConfig{resolution, max_depth, split_threshold};
             }),
             py::arg("resolution") = 1.0, py::arg("max_depth") = 8,
             py::arg("split_threshold") = 1)
        .def_readwrite("resolution", &OctreeConfig::resolution)
        .def_readwrite("max_depth", &OctreeConfig::max_depth)
        .def_readwrite("split_threshold", &OctreeConfig::split_threshold);

    py::class_<OctoMap>(m, "OctoMap")
        .def_property_readonly("root_bounds", &OctoMap::root_bounds)
        .def_property_readonly("cloud_bounds", &OctoMap::cloud_bounds)
        .def("occupied_leaves",
             [](const OctoMap& map) {
                 py::list out;
                 for (const auto& leaf : map.occupied_leaves()) {
                     out.append(py::make_tuple(leaf.bounds, leaf.depth, leaf.point_count));
                 }
                 return out;
             })
        .def("query_voxel",
             [](const OctoMap& map, const Point3& p) {
                 return std::string(voxel_state_name(map.query_voxel(p)));
             })
        .def("occupied_max_depth_voxels",
             [](const OctoMap& map) {
                 py::list out;
                 for (const auto& v : map.occupied_max_depth_voxels()) {
                     out.append(py::make_tuple(v.x, v.y, v.z));
                 }
                 return out;
             })
        .def("dump_occupied", &OctoMap::dump_occupied);

    m.def("build_octree", &build_octree, py::arg("cloud"), py::arg("config"));

    py::class_<ZBand>(m, "ZBand")
        .def(py::init([](double z_min, double z_max) { return ZBand{z_min, z_max}; }),
             py::arg("z_min"), py::arg("z_max"))
        .def_readwrite("z_min", &ZBand::z_min)
        .def_readwrite("z_max", &ZBand::z_max);

    py::class_<OccupancyGrid>(m, "OccupancyGrid")
        .def(py::init<>())
        .def(py::init<int, int, double, double, double>(), py::arg("width"), py::arg("height"),
             py::arg("cell_size"), py::arg("origin_x"), py::arg("origin_y"))
        .def_property_readonly("width", &OccupancyGrid::width)
        .def_property_readonly("height", &OccupancyGrid::height)
        .def_property_readonly("cell_size", &OccupancyGrid::cell_size)
        .def_property_readonly("origin_x", &OccupancyGrid::origin_x)
        .def_property_readonly("origin_y", &OccupancyGrid::origin_y)
        .def("at",
             [](const OccupancyGrid& g, int x, int y) {
                 return std::string(cell_state_name(g.at(x, y)));
             })
        .def("count_occupied",
             [](const OccupancyGrid& g) { return g.count(CellState::Occupied); })
        .def("count_free", [](const OccupancyGrid& g) { return g.count(CellState::Free); })
        .def("count_unknown",
             [](const OccupancyGrid& g) { return g.count(CellState::Unknown); })
        .def("__eq__", [](const OccupancyGrid& a, const OccupancyGrid& b) { return a == b; });

    m.def("project_octree", &project_octree, py::arg("map"), py::arg("band"),
          py::arg("cell_size"));
    m.def(
        "write_grid",
        [](const OccupancyGrid& grid, const std::string& image_name) {
            GridFiles files = write_grid(grid, image_name);
            return py::make_tuple(py::bytes(files.pgm), files.metadata);
        },
        py::arg("grid"), py::arg("image_name") = "map.pgm");
    m.def(
        "read_grid",
        [](const py::bytes& pgm, const std::string& metadata) {
            return read_grid(std::string(pgm), metadata);
        },
        py::arg("pgm"), py::arg("metadata"));
    m.def("save_grid_files", &save_grid_files, py::arg("grid"), py::arg("prefix"));
    m.def("load_grid_files", &load_grid_files, py::arg("prefix"));
    m.def("footprint_collides", &footprint_collides, py::arg("grid"), py::arg("x"),
          py::arg("y"), py::arg("w"), py::arg("h"));

    py::class_<AgentState>(m, "AgentState")
        .def(py::init<>())
        .def(py::init([](int x, int y) { return AgentState{x, y}; }), py::arg("x"),
             py::arg("y"))
        .def_readwrite("x", &AgentState::x)
        .def_readwrite("y", &AgentState::y)
        .def("__eq__", [](const AgentState& a, const AgentState& b) { return a == b; })
        .def("__repr__", [](const AgentState& s) {
            return "AgentState(" + std::to_string(s.x) + ", " + std::to_string(s.y) + ")";
        });

    py::enum_<Action>(m, "Action")
        .value("UP", Action::Up)
        .value("DOWN", Action::Down)
        .value("LEFT", Action::Left)
        .value("RIGHT", Action::Right)
        .value("UP_LEFT", Action::UpLeft)
        .value("UP_RIGHT", Action::UpRight)
        .value("DOWN_LEFT", Action::DownLeft)
        .value("DOWN_RIGHT", Action::DownRight);

    py::enum_<StepEvent>(m, "StepEvent")
        .value("MOVED", StepEvent::Moved)
        .value("MOVED_DIAGONAL", StepEvent::MovedDiagonal)
        .value("COLLIDED", StepEvent::Collided)
        .value("REACHED_GOAL", StepEvent::ReachedGoal)
        .value("TRUNCATED", StepEvent::Truncated);

    py::class_<EnvConfig>(m, "EnvConfig")
        .def(py::init<>())
        .def_readwrite("grid", &EnvConfig::grid)
        .def_readwrite("d", &EnvConfig::d)
        .def_readwrite("footprint_w", &EnvConfig::footprint_w)
        .def_readwrite("footprint_h", &EnvConfig::footprint_h)
        .def_readwrite("start", &EnvConfig::start)
        .def_readwrite("goal", &EnvConfig::goal)
        .def_readwrite("max_steps", &EnvConfig::max_steps)
        .def_readwrite("collision_terminates", &EnvConfig::collision_terminates);

    py::class_<StepOutcome>(m, "StepOutcome")
        .def_readonly("next_state", &StepOutcome::next_state)
        .def_readonly("reward", &StepOutcome::reward)
        .def_readonly("done", &StepOutcome::done)
        .def_readonly("event", &StepOutcome::event);

    m.def("default_paper_layout", &default_paper_layout);
    m.def("step", &step, py::arg("cfg"), py::arg("s"), py::arg("a"), py::arg("steps_so_far"));
    m.def("state_index", &state_index, py::arg("cfg"), py::arg("s"));
    m.def("num_states", &num_states, py::arg("cfg"));
    m.def("episode_return", &episode_return, py::arg("rewards"), py::arg("gamma"));

    py::class_<PathTrace>(m, "PathTrace")
        .def_readonly("states", &PathTrace::states)
        .def_readonly("actions", &PathTrace::actions)
        .def_readonly("rewards", &PathTrace::rewards)
        .def_readonly("total_reward", &PathTrace::total_reward)
        .def_readonly("steps", &PathTrace::steps)
        .def_readonly("reached_goal", &PathTrace::reached_goal);

    m.def("trace_cost", &trace_cost, py::arg("trace"));
    m.def("path_trace_to_json", &path_trace_to_json, py::arg("trace"));

    py::enum_<Algo>(m, "Algo")
        .value("QLEARNING", Algo::QLearning)
        .value("SARSA", Algo::Sarsa)
        .value("DQN", Algo::Dqn);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("algo", &TrainConfig::algo)
        .def_readwrite("gamma", &TrainConfig::gamma)
        .def_readwrite("eps_initial", &TrainConfig::eps_initial)
        .def_readwrite("eps_final", &TrainConfig::eps_final)
        .def_readwrite("buffer_capacity", &TrainConfig::buffer_capacity)
        .def_readwrite("batch_size", &TrainConfig::batch_size)
        .def_readwrite("episodes", &TrainConfig::episodes)
        .def_readwrite("alpha", &TrainConfig::alpha)
        .def_readwrite("eta", &TrainConfig::eta)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("env", &TrainConfig::env)
        .def_readwrite("record_wall_time", &TrainConfig::record_wall_time);

    py::class_<EpisodeMetrics>(m, "EpisodeMetrics")
        .def_readonly("episode", &EpisodeMetrics::episode)
        .def_readonly("steps", &EpisodeMetrics::steps)
        .def_readonly("accumulated_reward", &EpisodeMetrics::accumulated_reward)
        .def_readonly("epsilon", &EpisodeMetrics::epsilon)
        .def_readonly("reached_goal", &EpisodeMetrics::reached_goal)
        .def_readonly("wall_ms", &EpisodeMetrics::wall_ms);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("metrics", &TrainResult::metrics)
        .def_property_readonly("model_text",
                               [](const TrainResult& r) { return save_model(r.model); });

    m.def("train", &train, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "evaluate_greedy",
        [](const TrainResult& r, const EnvConfig& env) { return evaluate_greedy(r.model, env); },
        py::arg("result"), py::arg("env"));
    m.def(
        "evaluate_greedy_model_text",
        [](const std::string& model_text, const EnvConfig& env) {
            return evaluate_greedy(load_model(model_text), env);
        },
        py::arg("model_text"), py::arg("env"));
    m.def("metrics_to_csv", [](const std::vector<EpisodeMetrics>& metrics) {
        return metrics_to_csv(metrics);
    });
    m.def("parse_config", &parse_config, py::arg("text"), py::arg("base"));
    m.def("write_config", &write_config, py::arg("config"));

    py::class_<OracleResult>(m, "OracleResult")
        .def_readonly("cost", &OracleResult::cost)
        .def_readonly("trace", &OracleResult::trace);

    m.def("shortest_path", &shortest_path, py::arg("env"));

    m.def("svg_line_chart", &svg_line_chart, py::arg("values"), py::arg("title"),
          py::arg("y_label"));
    m.def("svg_grid_path", &svg_grid_path, py::arg("grid"), py::arg("trace"), py::arg("env"));
}
