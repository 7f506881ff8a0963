#include "gridnav/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "gridnav/oracle.hpp"
#include "gridnav/svg.hpp"
#include "gridnav/trainer.hpp"

namespace gridnav::cli {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << contents;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOpts {
    std::string config_path;
    std::string map_prefix;
};

TrainConfig make_base_config(const CommonOpts& opts) {
    TrainConfig cfg;
    cfg.env = default_paper_layout();
    if (!opts.map_prefix.empty()) {
        cfg.env.grid = load_grid_files(opts.map_prefix);
    }
    if (!opts.config_path.empty()) {
        cfg = parse_config(read_file(opts.config_path), std::move(cfg));
    }
    return cfg;
}

struct ConvertOpts {
    std::string pcd_path;
    double resolution = 1.0;
    int max_depth = 8;
    int threshold = 1;
    double z_min = 0.0;
    double z_max = 0.0;
    bool z_min_set = false;
    bool z_max_set = false;
    double cell_size = 0.0;  // 0 = use resolution
    std::string out_prefix;
    std::string dump_voxels_path;
};

int cmd_convert(const ConvertOpts& o) {
    const PointCloud cloud = load_pcd_file(o.pcd_path);
    OctreeConfig cfg{o.resolution, o.max_depth, o.threshold};
    const OctoMap map = build_octree(cloud, cfg);

    ZBand band{o.z_min, o.z_max};
    if (!o.z_min_set) band.z_min = map.cloud_bounds().lo.z - 0.5 * o.resolution;
    if (!o.z_max_set) band.z_max = map.cloud_bounds().hi.z + 0.5 * o.resolution;

    const double cell = o.cell_size > 0.0 ? o.cell_size : o.resolution;
    const OccupancyGrid grid = project_octree(map, band, cell);
    save_grid_files(grid, o.out_prefix);

    if (!o.dump_voxels_path.empty()) {
        write_file(o.dump_voxels_path, map.dump_occupied());
    }

    const auto pgm_size = fs::file_size(o.out_prefix + ".pgm");
    const auto meta_size = fs::file_size(o.out_prefix + ".meta");
    std::cout << "grid " << grid.width() << "x" << grid.height() << ", occupied cells: "
              << grid.count(CellState::Occupied) << "\n"
              << o.out_prefix << ".pgm: " << pgm_size << " bytes\n"
              << o.out_prefix << ".meta: " << meta_size << " bytes\n";
    return 0;
}

int cmd_train(TrainConfig cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    const TrainResult result = train(cfg);

    write_file(fs::path(out_dir) / "metrics.csv", metrics_to_csv(result.metrics));
    save_model_file(result.model, (fs::path(out_dir) / "model.txt").string());

    std::vector<double> rewards, steps;
    for (const EpisodeMetrics& m : result.metrics) {
        rewards.push_back(m.accumulated_reward);
        steps.push_back(static_cast<double>(m.steps));
    }
    const std::string algo = algo_name(cfg.algo);
    write_file(fs::path(out_dir) / "reward.svg",
               svg_line_chart(rewards, algo + std::string(": accumulated reward per episode"),
                              "accumulated reward"));
    write_file(fs::path(out_dir) / "steps.svg",
               svg_line_chart(steps, algo + std::string(": steps per episode"), "steps"));

    const int first_goal = episodes_to_first_goal(result.metrics);
    std::cout << algo << ": " << result.metrics.size() << " episodes, first goal at "
              << (first_goal < 0 ? std::string("never") : std::to_string(first_goal))
              << ", final-window median reward "
              << final_window_median(result.metrics) << "\n";
    return 0;
}

int cmd_evaluate(const TrainConfig& cfg, const std::string& model_path,
                 const std::string& out_dir) {
    fs::create_directories(out_dir);
    const Model model = load_model_file(model_path);
    const PathTrace trace = evaluate_greedy(model, cfg.env);

    write_file(fs::path(out_dir) / "path.json", path_trace_to_json(trace));
    write_file(fs::path(out_dir) / "path.svg", svg_grid_path(cfg.env.grid, trace, cfg.env));

    std::cout << "greedy path: " << trace.steps << " steps, total reward "
              << trace.total_reward << ", reached goal: " << (trace.reached_goal ? "yes" : "no")
              << "\n";
    return trace.reached_goal ? 0 : 3;
}

int cmd_oracle(const TrainConfig& cfg, const std::string& out_dir) {
    fs::create_directories(out_dir);
    OracleResult res;
    try {
        res = shortest_path(cfg.env);
    } catch (const Unreachable& e) {
        std::cerr << "oracle: " << e.what() << "\n";
        return 3;
    }
    write_file(fs::path(out_dir) / "oracle.json", path_trace_to_json(res.trace));
    std::cout << "oracle path: cost " << res.cost << ", " << res.trace.steps << " steps\n";
    return 0;
}

int cmd_compare(const TrainConfig& base, const std::vector<std::uint64_t>& seeds,
                const std::string& out_dir, int jobs) {
    fs::create_directories(out_dir);
    const ComparisonReport report = run_comparison(base, seeds, jobs);
    write_file(fs::path(out_dir) / "report.csv", comparison_to_csv(report));
    for (const AlgoAggregate& agg : report.aggregates) {
        std::cout << algo_name(agg.algo) << ": goal rate " << agg.goal_rate
                  << ", median final-50 reward " << agg.median_final_window_reward
                  << ", median greedy cost " << agg.median_greedy_cost << "\n";
    }
    return 0;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::string tok;
    std::istringstream in(text);
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            seeds.push_back(std::stoull(tok));
        } catch (const std::exception&) {
            throw BadConfig("bad seed value: " + tok);
        }
    }
    if (seeds.empty()) throw BadConfig("--seeds needs at least one seed");
    return seeds;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"point-cloud to grid-map conversion and value-learning path planning"};
    app.require_subcommand(1);

    // convert
    auto* convert = app.add_subcommand("convert", "convert a PCD cloud to a 2D grid map");
    ConvertOpts conv;
    convert->add_option("--pcd", conv.pcd_path, "input ASCII PCD file")->required();
    convert->add_option("--resolution", conv.resolution, "octree leaf edge (map units)");
    convert->add_option("--max-depth", conv.max_depth, "octree maximum depth");
    convert->add_option("--threshold", conv.threshold, "octree split threshold (points)");
    auto* zmin_opt = convert->add_option("--zmin", conv.z_min, "lower z bound of the slab");
    auto* zmax_opt = convert->add_option("--zmax", conv.z_max, "upper z bound of the slab");
    convert->add_option("--cell-size", conv.cell_size, "grid cell size (default: resolution)");
    convert->add_option("--out", conv.out_prefix, "output prefix for .pgm/.meta")->required();
    convert->add_option("--dump-voxels", conv.dump_voxels_path,
                        "also write one line per occupied octree leaf");

    // shared train/evaluate/oracle/compare options
    CommonOpts common_train, common_eval, common_oracle, common_cmp;
    std::string algo_flag, out_dir_train, out_dir_eval, out_dir_oracle, out_dir_cmp;
    std::string model_path, seeds_text = "0,1,2,3,4,5,6,7,8,9";
    std::uint64_t seed_flag = 0;
    bool timing = false;
    int jobs = 0;

    auto* train_cmd = app.add_subcommand("train", "train one algorithm on the grid world");
    train_cmd->add_option("--algo", algo_flag, "qlearning, sarsa or dqn")->required();
    train_cmd->add_option("--config", common_train.config_path, "key = value config file");
    auto* seed_opt = train_cmd->add_option("--seed", seed_flag, "run seed");
    train_cmd->add_option("--map", common_train.map_prefix, "grid map prefix (.pgm/.meta)");
    train_cmd->add_option("--out", out_dir_train, "output directory")->required();
    train_cmd->add_flag("--timing", timing,
                        "record real wall time per episode (outputs stop being reproducible)");

    auto* eval_cmd = app.add_subcommand("evaluate", "roll out a trained model greedily");
    eval_cmd->add_option("--model", model_path, "model file from train")->required();
    eval_cmd->add_option("--config", common_eval.config_path, "key = value config file");
    eval_cmd->add_option("--map", common_eval.map_prefix, "grid map prefix (.pgm/.meta)");
    eval_cmd->add_option("--out", out_dir_eval, "output directory")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "exact shortest path for the environment");
    oracle_cmd->add_option("--config", common_oracle.config_path, "key = value config file");
    oracle_cmd->add_option("--map", common_oracle.map_prefix, "grid map prefix (.pgm/.meta)");
    oracle_cmd->add_option("--out", out_dir_oracle, "output directory")->required();

    auto* cmp_cmd = app.add_subcommand("compare", "train all three algorithms over seeds");
    cmp_cmd->add_option("--seeds", seeds_text, "comma-separated seed list");
    cmp_cmd->add_option("--config", common_cmp.config_path, "key = value config file");
    cmp_cmd->add_option("--map", common_cmp.map_prefix, "grid map prefix (.pgm/.meta)");
    cmp_cmd->add_option("--out", out_dir_cmp, "output directory")->required();
    cmp_cmd->add_option("--jobs", jobs, "parallel training runs (default: hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (convert->parsed()) {
            conv.z_min_set = zmin_opt->count() > 0;
            conv.z_max_set = zmax_opt->count() > 0;
            return cmd_convert(conv);
        }
        if (train_cmd->parsed()) {
            TrainConfig cfg = make_base_config(common_train);
            cfg.algo = algo_from_name(algo_flag);
            if (seed_opt->count() > 0) cfg.seed = seed_flag;
            cfg.record_wall_time = timing;
            return cmd_train(std::move(cfg), out_dir_train);
        }
        if (eval_cmd->parsed()) {
            return cmd_evaluate(make_base_config(common_eval), model_path, out_dir_eval);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(make_base_config(common_oracle), out_dir_oracle);
        }
        if (cmp_cmd->parsed()) {
            return cmd_compare(make_base_config(common_cmp), parse_seed_list(seeds_text),
                               out_dir_cmp, jobs);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace gridnav::cli
