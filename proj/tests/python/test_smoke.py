"""End-to-end smoke tests for the gridnav python module."""

import math

import pytest

gridnav = pytest.importorskip("gridnav")


def test_pcd_round_trip():
    cloud = gridnav.PointCloud()
    cloud.points = [gridnav.Point3(1, 2, 3), gridnav.Point3(-0.5, 0.25, 9.125)]
    text = gridnav.write_pcd(cloud)
    back = gridnav.parse_pcd(text)
    assert len(back) == 2
    assert back.points[1].z == 9.125

    box = gridnav.bounding_box(back)
    assert box.lo.x == -0.5
    assert box.hi.z == 9.125


def test_pcd_errors():
    with pytest.raises(gridnav.GridnavError):
        gridnav.parse_pcd("VERSION .7\n")


def test_cloud_to_grid_pipeline():
    cloud = gridnav.PointCloud()
    cloud.points = [
        gridnav.Point3(x + 0.5, 4.5, 0.5) for x in range(8)
    ] + [gridnav.Point3(0.5, 0.5, 0.1), gridnav.Point3(7.5, 7.5, 0.1)]
    octree = gridnav.build_octree(cloud, gridnav.OctreeConfig(1.0, 4, 1))
    assert octree.query_voxel(gridnav.Point3(0.5, 4.5, 0.5)) == "occupied"
    assert octree.query_voxel(gridnav.Point3(1e6, 0, 0)) == "outside"

    grid = gridnav.project_octree(octree, gridnav.ZBand(0.0, 1.0), 1.0)
    assert grid.count_occupied() >= 8

    pgm, meta = gridnav.write_grid(grid)
    back = gridnav.read_grid(pgm, meta)
    assert back == grid


def test_env_step_rewards():
    env = gridnav.default_paper_layout()
    assert env.grid.count_occupied() == 1200

    out = gridnav.step(env, gridnav.AgentState(0, 0), gridnav.Action.RIGHT, 0)
    assert out.reward == -1.0
    out = gridnav.step(env, gridnav.AgentState(0, 0), gridnav.Action.LEFT, 0)
    assert out.reward == -20.0
    assert out.next_state == gridnav.AgentState(0, 0)
    out = gridnav.step(env, gridnav.AgentState(80, 80), gridnav.Action.UP_RIGHT, 0)
    assert out.reward == 20.0
    assert out.done

    assert gridnav.episode_return([-1.0, -1.0, 20.0], 1.0) == 18.0
    assert gridnav.num_states(env) == 100


def test_oracle_on_default_layout():
    env = gridnav.default_paper_layout()
    res = gridnav.shortest_path(env)
    assert res.cost == 19.5
    assert res.trace.total_reward == 0.5
    assert res.trace.steps == 15


def test_training_is_deterministic():
    cfg = gridnav.TrainConfig()
    cfg.env = gridnav.default_paper_layout()
    cfg.algo = gridnav.Algo.QLEARNING
    cfg.episodes = 5
    cfg.seed = 12

    a = gridnav.train(cfg)
    b = gridnav.train(cfg)
    assert len(a.metrics) == 5
    assert gridnav.metrics_to_csv(a.metrics) == gridnav.metrics_to_csv(b.metrics)
    assert a.model_text == b.model_text

    trace = gridnav.evaluate_greedy(a, cfg.env)
    assert trace.steps == len(trace.actions)
    assert math.isclose(sum(trace.rewards), trace.total_reward)


def test_config_text_round_trip():
    base = gridnav.TrainConfig()
    base.env = gridnav.default_paper_layout()
    cfg = gridnav.parse_config("algo = dqn\nepisodes = 7\nseed = 3\n", base)
    assert cfg.algo == gridnav.Algo.DQN
    assert cfg.episodes == 7
    assert cfg.seed == 3
    with pytest.raises(gridnav.GridnavError):
        gridnav.parse_config("unknown_key = 1\n", base)
