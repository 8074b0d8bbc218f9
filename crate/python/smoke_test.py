"""Smoke test for the frobsum Python extension.

Build first with `cargo build -p frobsum-py --release` (or without
`--release`), then run `python3 python/smoke_test.py`. Set FROBSUM_LIB to
point at a specific shared library.
"""

import importlib.util
import json
import os
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    candidates = [os.environ.get("FROBSUM_LIB")] + [
        str(ROOT / "target" / profile / name)
        for profile in ("release", "debug")
        for name in ("libfrobsum_py.so", "libfrobsum_py.dylib", "frobsum_py.dll")
    ]
    for path in candidates:
        if path and Path(path).exists():
            spec = importlib.util.spec_from_file_location("frobsum", path)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module, path
    sys.exit("frobsum extension not found; run `cargo build -p frobsum-py` first")


def main():
    fs, path = load()
    print(f"loaded {path}")

    assert fs.c_constant(5, 20) == 10720
    rows = fs.comparison_tables(5, [2, 20])
    assert [r["c_value"] for r in rows] == [16, 10720, 32, 1356608411506872363943501]
    assert rows[1]["power_value"] == 4**20

    k = fs.FiniteField(3, 2)
    assert k.size == 9 and len(k.elements()) == 9
    for a in k.elements()[1:]:
        assert k.mul(a, k.inv(a)) == "1"
    assert k.inv("0") is None

    tower = fs.Tower(3, 1, 2)
    top = tower.top()
    traces = [tower.trace(y) for y in top.elements()]
    assert sorted(traces.count(a) for a in tower.base().elements()) == [3, 3, 3]

    sums = fs.restricted_sums(3, 1, 2, "0,0,1", mode="trace")
    assert [s["exact"] for s in sums] == [2, -1, -1]
    assert [s["status"] for s in sums] == ["not-asserted", "holds", "holds"]

    curve = fs.count_points("as", 3, 1, 2, "0,0,1")
    assert curve["N"] == 15 and curve["identity_ok"]

    for mode in ("trace", "norm"):
        assert fs.fubini_check(3, 1, 2, "0,1,0,1", mode)["holds"]

    induced = fs.tensor_induce_cyclic(6, 2, [[0, -1], [1, -1]])
    assert induced["dim"] == 4
    assert induced["frobenius"] and all(c["holds"] for c in induced["frobenius"])

    spec = {
        "group": {"dihedral": 3},
        "subgroup": [0, 1, 2],
        "generators": [{"element": 1, "matrix": [["0", "-1"], ["1", "-1"]]}],
    }
    induced = fs.tensor_induction(json.dumps(spec))
    assert induced["dim"] == 4 and "frobenius" not in induced

    report = fs.graded_trace({-1: [[2, 1], [1, 1]], 0: [[3]]}, 2)
    assert report["per_degree_ok"] and report["alternating_ok"] and report["rth_power_ok"]

    records, summary = fs.run(["sweep", "--kind", "as", "--p", "3", "--r", "2", "--d", "2", "--summary-only"])
    assert records[0]["total"] == 81 and summary["failed"] == 0

    try:
        fs.FiniteField(4, 1)
    except ValueError as e:
        assert "prime" in str(e).lower()
    else:
        raise AssertionError("GF(4) as a prime field should be rejected")

    print("python smoke test passed")


if __name__ == "__main__":
    main()
