"""Smoke test for the algapprox_py extension.

Install first:  pip install --no-build-isolation -e crates/py
"""
import json

import algapprox_py as aa

F = [1, -3, 5, -5, 5, -3, 1]
G = [1, -1, 0, 2, 0, -1, 1]


def main():
    assert aa.is_totally_complex(F)
    assert aa.is_galois(F) is True
    assert aa.is_galois(G) is False
    assert [aa.norm_of_vector(F, [0] * k + [1]) for k in range(5)] == [1] * 5
    assert aa.norm_of_vector(F, [2]) == 64

    rep = json.loads(aa.classify(F))
    labels = sorted({c["label"] for c in rep["conjugates"]})
    assert labels == ["xi1", "xi2", "xi3"], labels
    assert all(c["wstar"]["4"] == "2" for c in rep["conjugates"])

    g = json.loads(aa.classify(G))
    assert sorted(c["wstar"]["4"] for c in g["conjugates"][::2]) == ["2", "3/2", "3/2"]

    pell = json.loads(aa.pell(2, 3, 6))
    assert all(r["bound_value"] and r["bound_height"] and r["bound_distance"] for r in pell)
    lo, hi = pell[-1]["exponent"]
    assert 1.8 <= lo <= hi <= 2.0

    sols = json.loads(aa.enumerate_solutions(F, 4, 1, 1))["solutions"]
    assert len(sols) >= 10

    golden = json.loads(aa.golden_suite())
    assert golden["passed"], [c for c in golden["checks"] if not c["passed"]]
    print("smoke test ok:", len(golden["checks"]), "golden checks")


if __name__ == "__main__":
    main()
