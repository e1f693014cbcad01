"""Builds the extension module and exercises it end to end.

Usage: python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "-p", "pyvanishlab", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "debug" / "libpyvanishlab.so"
    out = Path(tempfile.mkdtemp()) / "pyvanishlab.so"
    shutil.copy(lib, out)
    return out.parent


def fields(report, kind):
    return [dict(f) for k, f in report.records() if k == kind]


def main() -> None:
    sys.path.insert(0, str(build()))
    import pyvanishlab as vl

    p = vl.Poly("x^2 + y^2")
    assert str(p * p) == "x^4 + 2*x^2*y^2 + y^4", str(p * p)
    assert (p ** 2) == p * p
    assert p.coeff([2, 0]) == "1"
    assert vl.Poly("x^2*x", "x") == vl.Poly("x^3", "x")

    op = vl.Operator("dx*dy")
    assert op.apply_power(2, p ** 2).constant_term() == "8"
    profile = vl.vanishing_profile(op, p, horizon=3)
    assert profile.status == "hypothesis-fails"
    assert fields(profile, "profile")[0]["plain-residual"] == "8"

    sigma = vl.Polytope([[-2, 1], [1, -2]])
    meet = sigma.orthant_meet()
    assert meet.status == "disjoint"
    assert fields(meet, "certificate")[0] == {"c": "(1/2,1/2)", "delta": "1/2"}
    assert sigma.moveaway_bound([3, 3]) == 7
    assert vl.Polytope([[-1, 1], [1, -1]]).moveaway_bound([0, 0]) is None
    assert vl.Polytope([[0, 0], [2, 0], [0, 2]]).contains(["1/2", 1]) is not None

    assert vl.counterexample_ddv(5, 12).status == "confirmed"
    dk = vl.counterexample_dk(8, 12)
    assert dk.status == "confirmed"
    assert fields(dk, "row")[3]["constant-with-x"] == "1/6"

    rays = vl.ray_hits_support(vl.Poly("x + y"), ["1/2", "1/2"], 3)
    assert rays.status == "found"
    assert fields(rays, "ray-search")[0]["first-hit"] == "2"

    phi, f = vl.Poly("y^2", "y"), vl.Poly("y", "y")
    flow = vl.phi_flow(phi, f)
    assert vl.Operator("dx - dy^2").apply(flow).is_zero()
    verdict = vl.phi_case_check(phi, f, vl.Poly("x*y"), 8)
    assert verdict.status == "confirmed"
    assert fields(verdict, "case")[0]["bound"] == "3"

    two = vl.two_monomial_check(vl.Operator("dx^2 + dy"), vl.Poly("x"), vl.Poly("y"), 5)
    assert two.status == "confirmed"
    assert vl.monomial_case_check(vl.Operator("dx*dy"), "(2,0)", vl.Poly("1"), 4).status == "confirmed"
    assert vl.binomial_gap_check(10, 3)

    try:
        vl.Poly("x + z")
    except ValueError as e:
        assert "unknown variable" in str(e)
    else:
        raise AssertionError("expected a parse error")

    print("smoke test passed")


if __name__ == "__main__":
    main()
