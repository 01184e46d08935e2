"""Smoke test for the vanishing_py extension module.

Build and install it first:

    pip install --no-build-isolation ./crates/python
    python python/smoke_test.py
"""

from fractions import Fraction

import vanishing_py as v


def frac(pair):
    return Fraction(*pair)


def main():
    threshold = frac(v.threshold())
    assert threshold == Fraction(1067, 1260)

    s4 = v.Group.from_spec("SYM(4)")
    assert s4.order == 24
    assert frac(s4.proportion()) == Fraction(5, 6)
    assert sorted(s4.character_degrees()) == [1, 1, 2, 3, 3]
    verdict = s4.classify()
    assert verdict.below and verdict.case == "b2", verdict
    assert verdict.witnesses["C"] == 2

    d8 = v.Group.from_file_text("name D8\nperm 4\ngen (1,2,3,4)\ngen (1,3)\n")
    assert frac(v.proportion(d8)) == Fraction(3, 4)
    assert v.classify_theorem_a(d8).case == "b1"

    a7 = v.Group.from_spec("A7")
    assert frac(a7.proportion()) == threshold
    assert not a7.classify().below

    b41 = v.Group.from_spec("B4_1(1,C2xC2)")
    text = b41.to_file_text()
    again = v.Group.from_file_text(text)
    assert again.order == b41.order
    assert again.classify().case == "b4.1"

    try:
        v.Group.from_file_text("perm 3\ngen (1,2,x)\n")
    except ValueError as err:
        assert "line 2" in str(err), err
    else:
        raise AssertionError("malformed group file was accepted")

    rows = v.run_campaign(count=30, only=["s4", "b4", "sixsum"])
    assert {r["check"] for r in rows} == {"b4_1_pair", "s4_end_to_end", "sixsum_exhaustive"}, rows
    assert all(r["status"] == "pass" for r in rows), rows
    assert len(v.check_names()) == 12

    print("smoke test passed:", s4, verdict, a7)


if __name__ == "__main__":
    main()
