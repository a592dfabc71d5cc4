#!/usr/bin/env python3
"""Smoke test for the celab_py extension module.

Builds nothing itself: run `cargo build -p celab-py` first (or pass
--release and build in release mode). The script locates the compiled
cdylib, stages it under an importable name, and drives the main entry
points end to end.
"""

import json
import pathlib
import shutil
import sys
import tempfile


def locate_cdylib(root: pathlib.Path) -> pathlib.Path:
    profiles = ["release", "debug"] if "--release" in sys.argv else ["debug", "release"]
    names = ["libcelab_py.so", "libcelab_py.dylib", "celab_py.dll"]
    for profile in profiles:
        for name in names:
            candidate = root / "target" / profile / name
            if candidate.exists():
                return candidate
    raise SystemExit(
        "celab_py cdylib not found; run `cargo build -p celab-py` first"
    )


def main() -> None:
    repo = pathlib.Path(__file__).resolve().parent.parent
    cdylib = locate_cdylib(repo)
    staging = pathlib.Path(tempfile.mkdtemp(prefix="celab-py-"))
    suffix = ".pyd" if cdylib.suffix == ".dll" else ".so"
    shutil.copy2(cdylib, staging / f"celab_py{suffix}")
    sys.path.insert(0, str(staging))

    import celab_py as celab

    # group structure
    g1 = celab.Group.heisenberg(2, 1)
    assert g1.order == 8
    assert g1.center_order() == 2
    assert g1.derived_order() == 2
    assert g1.nilpotency_class() == 2
    assert g1.conjugacy_class_count() == 5
    assert g1.subgroup_count() == 10
    assert g1.verify_commutator_formula()
    value, witness_order = g1.min_index_bound()
    assert value >= 2, (value, witness_order)

    q8 = celab.Group.quaternion8()
    assert q8.order == 8
    assert q8.subgroup_count() == 6

    # centrally essential: positive and negative fixtures
    a1 = celab.Algebra.from_spec("ga:2:1")
    assert a1.dim == 8
    assert a1.center_dim() == 5
    assert not a1.is_commutative()
    report = json.loads(a1.ce_check())
    assert report["verdict"] == "essential", report
    assert report["certificate_counts"] == {"probed": 255, "certified": 255}

    m2 = celab.Algebra.matrix(2, 2)
    report = json.loads(m2.ce_check())
    assert report["verdict"] == "not-essential", report
    assert report["witness"] == [1, 0, 0, 0]

    # standard identities: Amitsur-Levitzki boundary on M2(F2)
    report = json.loads(m2.min_standard_degree(d_max=5))
    assert report["d_min"] == 4 and report["proof_grade"], report

    # algebraic degree over the center
    report = json.loads(a1.m1_estimate())
    assert report["m1"] == 2 and report["exact"], report
    relation = json.loads(a1.element_degree([0, 0, 0, 0, 1, 0, 0, 0]))
    assert relation["degree"] == 2, relation

    # products: combination rule and the assembled escape element
    aq8 = celab.Algebra.group_algebra(2, q8)
    prod = celab.Algebra.product([a1, aq8])
    assert prod.dim == 16
    combined = json.loads(prod.ce_product_check())
    assert combined["verdict"] == "essential", combined

    big = celab.Algebra.from_spec("prod:ga:2:1,ga:2:2")
    escape = json.loads(big.escape_element(seed=42))
    assert escape["degree"] == max(escape["component_degrees"]), escape

    assert celab.d_of_m(1) == 2
    assert celab.d_of_m(4) == 14

    print("celab_py smoke test: all checks passed")


if __name__ == "__main__":
    main()
