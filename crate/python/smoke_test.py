"""Smoke test for the qline extension module.

Build first with `pip install --no-build-isolation -e crates/py`, then run
`python3 python/smoke_test.py`.
"""

import json
import sys

import qline


def main() -> int:
    assert "lemma3" in qline.suite_names()

    ones = qline.LambdaMatrix.preset("ones", 3)
    assert ones.get(1, 2) == "1"
    assert ones.jacobi_defect(1, 2, 3) == "0"

    alg = qline.PointAlgebra(ones)
    assert alg.graded_dimension(3) == 10
    assert alg.normal_form("v2*v1 - q^2*v1*v2 - (1-q^2)*v1^2") == "0"

    lam = qline.LambdaMatrix.from_json('{"points":[1,2,3],"lambda":{"1,2":"2","1,3":"7/5","2,3":"3"}}')
    assert lam.jacobi_defect(1, 2, 3) == "0"
    lam.set(1, 3, "5")
    assert lam.jacobi_defect(1, 2, 3) != "0"

    coords = qline.CoordinateAlgebra([1, 2])
    assert coords.lambda_of(1, 2) == "1"
    assert coords.normal_form("y2*y1 - q^2*y1*y2") == "0"

    assert qline.act("E", "v1") == "1"
    assert qline.act("K", "x1*y1", algebra="coordinates") == "s^2*y1*x1"

    c = qline.cross_ratio("ilkj")
    assert c["value"] == "1/C[1,2,3,4]"

    report = qline.run_suite("cross-table", seed=11)
    assert report.passed and report.seed == 11
    data = json.loads(report.to_json())
    assert data["suite"] == "cross-table"
    assert all(ch["status"] == "pass" for ch in report.checks())

    try:
        qline.run_suite("nope")
    except ValueError as e:
        assert "unknown suite" in str(e)
    else:
        raise AssertionError("unknown suite accepted")

    try:
        qline.parse_scalar("q s")
    except ValueError as e:
        assert "missing '*'" in str(e)
    else:
        raise AssertionError("juxtaposition accepted")

    print("smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
