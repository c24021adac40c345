"""Smoke test for the guesswork_py extension module.

Build and install with:

    maturin build --release -m crates/py/Cargo.toml -o dist
    pip install dist/guesswork_py-*.whl
"""

import json
import math

import guesswork_py as gw


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    pair = gw.Ensemble.polygon(2)
    s = pair.solve()
    assert s.status == "Certified" and s.g_min == 1.0, s

    trine = gw.Ensemble.polygon(3)
    s = trine.solve()
    assert close(s.g_min, 2 - math.sqrt(3) / 3), s
    assert s.decreasing
    assert close(gw.polygon_trace_norm(3), 2 / math.sqrt(3))

    octa = gw.Ensemble.polyhedron("octahedron")
    s = octa.solve(method="symmetric")
    assert close(s.g_min, gw.polyhedron_reference(6)), s
    assert octa.check_condition(s.ordering)
    assert close(octa.certified_value(s.ordering), s.g_min)

    e = octa.score_operator(s.ordering)
    assert abs(sum(e[i][i] for i in range(2))) < 1e-12

    again = gw.Ensemble.from_json(octa.to_json())
    assert json.loads(again.solve().to_json())["g_min"] == octa.solve().g_min

    try:
        gw.Ensemble.polygon(12).solve(method="brute")
    except gw.CapExceededError:
        pass
    else:
        raise AssertionError("expected CapExceededError")

    try:
        gw.Ensemble.uniform_qubit([[0.0, 0.0, 2.0]])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("ok")


if __name__ == "__main__":
    main()
