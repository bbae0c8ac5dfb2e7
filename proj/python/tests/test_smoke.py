import json
import math

import pytest

import sstrpvst as s


def t1():
    p = s.InstanceParams()
    p.num_sprayers = 1
    p.sprayer_cap = 6.0
    p.tanker_cap = 60.0
    p.spray_rate = 2.0
    p.refill_time = 1.0
    p.speed_factor = 2.0
    p.horizon = 100.0
    p.zone_radius = 4.0
    return s.Instance((0.0, 0.0), [(1, 0, 4, 8), (2, 0, 4, 8)], p)


def test_t1_solve():
    inst = t1()
    best = s.solve(inst, seed=1, iters=200)
    assert best.objective == pytest.approx(1.0)
    sol = best.solution
    assert sol.routes == [[1, 2]]
    assert sol.refills == [1]
    assert sol.service[1] == pytest.approx(3.0)
    assert s.check_feasibility(inst, sol) == []


def test_oracle_and_bounds():
    inst = t1()
    feasible, best = s.exact_solve(inst)
    assert feasible
    assert best.objective == pytest.approx(1.0)
    assert s.composite_lower_bound(inst) == pytest.approx(-4.0)
    assert s.relaxed_exact_bound(inst) == pytest.approx(-1.0)
    assert s.service_upper_bound(inst) == pytest.approx(8.0)
    assert s.practice_policy(inst).objective == pytest.approx(2.6)


def test_service_lp():
    feasible, service, value = s.optimize_service_times(t1(), [[1, 2]], [1], [1])
    assert feasible
    assert service[1:] == pytest.approx([3.0, 3.0])
    assert value == pytest.approx(1.0)


def test_generate_and_json_round_trip():
    inst = s.generate("small", num_sprayers=2, seed=3)
    assert 15 <= inst.num_nodes <= 25
    doc = json.loads(inst.to_json())
    assert doc["schema"] == "sstrpvst/1"
    again = s.Instance.from_json(inst.to_json())
    assert again.to_json() == inst.to_json()

    start = s.construct(inst)
    improved = s.local_search(inst, start, 1)
    assert improved.objective <= start.objective + 1e-9
    text = s.solution_to_json(inst, improved.solution)
    back = s.solution_from_json(inst, text)
    assert back.routes == improved.solution.routes
    assert s.check_feasibility(inst, back) == []


def test_line_search_matches_alpha_grid():
    inst = s.generate("small", seed=4)
    routes = s.construct(inst).solution.routes
    best = s.line_search(inst, routes).objective
    grid = min(s.evaluate_at_alpha(inst, routes, a / 100).objective for a in range(1, 101))
    assert best <= grid + 1e-9
    assert math.isfinite(best)


def test_errors_are_typed():
    with pytest.raises(s.ParseError):
        s.Instance.from_json("{}")
    with pytest.raises(ValueError):
        t1().travel(0, 9)
