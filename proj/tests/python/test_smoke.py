import os
from fractions import Fraction
from pathlib import Path

import pytest

import orbidx

ROOT = Path(__file__).resolve().parents[2]
CATALOG = Path(os.environ.get("ORBIDX_CATALOG_DIR", ROOT / "catalog"))
DATA = Path(os.environ.get("ORBIDX_TEST_DATA_DIR", ROOT / "tests" / "data"))


def test_verify_saddle():
    report = orbidx.verify(str(CATALOG / "disk_z2_saddle.json"))
    assert report["verdict"] == "pass"
    assert report["lhs"] == {"num": -1, "den": 2}


def test_index_and_chi():
    total, zeros = orbidx.index_sum(str(CATALOG / "disk_z3_radial.json"))
    assert total == Fraction(1, 3)
    assert len(zeros) == 1
    assert zeros[0]["isotropy_order"] == 3
    chi = orbidx.chi_orb(str(CATALOG / "disk_z3_radial.json"))
    assert chi["chi_orb"] == Fraction(1, 3)
    assert chi["chi_inertia"] == chi["chi_underlying"] == 1


def test_chain_terms():
    assert orbidx.chain_terms(str(CATALOG / "annulus_trivial_spiral.json")) == [-2, 3]


def test_winding():
    assert orbidx.winding_number(["x1^2 - x2^2", "2*x1*x2"], [0.0, 0.0], 0.5) == 2


def test_checks_subset_and_tolerances():
    report = orbidx.verify(str(CATALOG / "interval_outflow.json"), ["theorem"], {"newton": 1e-11})
    assert [c["name"] for c in report["checks"]] == ["theorem"]
    assert "newton" in orbidx.tolerance_names()


def test_errors_carry_codes():
    with pytest.raises(orbidx.OrbidxError) as info:
        orbidx.verify(str(DATA / "disk_reflection.json"))
    assert info.value.code == "ValidationError"
    with pytest.raises(orbidx.OrbidxError) as info:
        orbidx.verify(str(DATA / "malformed.json"))
    assert info.value.code == "ParseError"
