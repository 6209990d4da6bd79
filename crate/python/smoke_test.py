"""Smoke test for the `thh` extension module.

Build and install first:  cd crates/py && maturin develop --release
"""

import json

import thh


def main():
    a = thh.alpha(3, 4)
    assert a.residue % 9 == 7, a
    w = thh.teichmuller(2, 5, 6)
    assert (w ** 4) == thh.PadicInt(5, 6, 1)

    x = thh.PadicInt(7, 3, 10)
    assert int(x * x.invert()) == 1

    s = thh.Series.parse("(1 - x)^2", 3, 4, 3)
    assert thh.rezk_log(s).coefficients() == [0, 0, 0]

    u = thh.solve_unit(thh.Series(3, 4, 3, []), omega=1, line=1)
    assert u.coefficients() == [1, -1, 0], u

    t = thh.Series(5, 4, 5, [0, 0, 5, 25])
    back = thh.rezk_log(thh.solve_unit(t))
    assert back.coefficients()[:4] == [0, 0, 5, 25], back

    p = thh.projector(2, thh.Series.parse("x", 5, 4, 5))
    c = p.coefficients()
    assert c[0] == c[1] == 0 and c[2] != 0, p

    report = json.loads(thh.torsion_rank(3, example="worked"))
    assert report["rank"] == 2, report["rank"]
    assert json.loads(thh.torsion_rank(5, line_bundle=1))["rank"] == 1
    assert json.loads(thh.torsion_rank(7, summands=[(3, 1)]))["rank"] == 3

    try:
        thh.solve_unit(thh.Series.parse("x", 3, 4, 3))
    except thh.NotInImageError:
        pass
    else:
        raise AssertionError("x should not be in the image")

    print("ok")


if __name__ == "__main__":
    main()
