import json

import pytest

import pbgroupoids as pbg


def test_catalog_round_trip():
    for name, text in pbg.catalog_files():
        assert pbg.roundtrip(text) == text, name
    names = [n for n, _ in pbg.stanzas(pbg.catalog_document())]
    assert "A3_S3" in names


def test_crossed_modules():
    assert pbg.check_crossed_module("A3_S3")["pass"]
    assert pbg.check_crossed_module("Z3_Z2_dtrivial")["pass"]
    with pytest.raises(pbg.PbgError):
        pbg.check_crossed_module("nope")


def test_phi_and_nerve():
    arrows, base_arrows, report = pbg.gauge_phi(2, 2)
    assert (arrows, base_arrows) == (32, 16)
    assert report["pass"]
    # |G^(k)| |M^(k)| = 2^(k+1) 2^(k+1)
    assert pbg.gauge_nerve_sizes(2, 2, 2) == [4, 16, 64]


def test_aut():
    a = pbg.gauge_aut(2, 2, 0)
    assert a["ok"] and a["aut"] == "4"
    b = pbg.gauge_aut(2, 2, 1)
    assert b["aut"] == "256" and b["pi_image"] == b["equivariant_h"] == "16"


def test_morita():
    r = pbg.fiber_product_morita(["y0", "y1", "y2"], ["m0", "m1"], [0, 0, 1])
    assert r["pass"]


def test_cli(tmp_path):
    code, report, _ = pbg.run("catalog", "--emit", tmp_path)
    assert code == 0 and report["ok"]
    code, report, _ = pbg.run("aut", tmp_path / "pbgauge0_Z2_M2.json", "-k", "1")
    assert code == 0
    assert report["report"]["notes"]["aut.aut"] == "256"
    code, _, err = pbg.run("frobnicate")
    assert code == 2 and err
