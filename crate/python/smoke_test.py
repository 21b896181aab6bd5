"""Exercises the Python bindings against the shipped fixtures.

Build first:  pip install --no-build-isolation -e crates/py
Run:          python3 python/smoke_test.py
"""

from fractions import Fraction
from pathlib import Path

import bfshvs

FIXTURES = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"


def main():
    doc = bfshvs.Document.load(FIXTURES / "examples.hvs")
    assert doc.spaces == ["Z4", "Z5"], doc.spaces
    assert bfshvs.Document.parse(doc.serialize()) == doc

    z4, z5 = doc.space("Z4"), doc.space("Z5")
    axioms = z4.check_axioms()
    assert axioms["H2"] is None and axioms["srd"] is not None
    assert z5.is_hvs()
    assert z4.span(["2"]) == ["0", "2"]
    assert z5.enumerate_subhyperspaces() == [["0"], ["0", "1", "2", "3", "4"]]

    g = doc.bfs("G_ex29")
    for method in ("direct", "iff1", "levels"):
        assert g.check(method) == (True, None), method
    try:
        g.check("combo")
    except bfshvs.HvsError:
        pass
    else:
        raise AssertionError("combo should refuse a non-sld space")

    assert g.level(Fraction(1, 2), "-1/2") == [("c", []), ("d", ["0", "2"]), ("e", ["0", "2"])]
    holds, witness = doc.bfs("G_ex38").check("levels")
    assert not holds and "cut {3}" in witness

    scaled = g.normalize("scale")
    assert scaled.is_normal()
    assert scaled.grades()["c"]["1"] == ("3/5", "-1/2")
    assert (g + g).is_contained_in(g)
    assert (-g).is_bfs_hvs()

    spike = doc.bfs("F_spike")
    generated, shells = spike.generate()
    assert generated == bfshvs.brute_force_min(spike)
    assert [s[2] for s in shells] == [["0", "2"], ["1", "3"]]
    assert bfshvs.Document.parse(generated.to_hvs("H")).bfs("H") == generated

    try:
        bfshvs.Document.parse("field K\n  elements 0\nend\n")
    except bfshvs.ParseError as e:
        assert "line" in str(e)
    else:
        raise AssertionError("malformed text should not parse")

    report = z5.verify(50, 42)
    assert report["disagreements"] == [] and report["instances"] == 50
    assert z4.random_bfs(["p"], 42).grades() == z4.random_bfs(["p"], 42).grades()
    print("smoke test passed")


if __name__ == "__main__":
    main()
