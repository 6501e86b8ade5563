"""Smoke test for the descartes_py extension.

Build first:  pip install --no-build-isolation -e crates/python
"""

import json

import descartes_py as d


def main():
    totals = [sum(d.count_scps(k).values()) for k in range(1, 6)]
    assert totals == [2, 6, 20, 82, 340], totals

    assert [len(d.enumerate_orbits(k)) for k in range(1, 5)] == [1, 3, 6, 17]
    assert len(d.enumerate_scps(4)) == 82

    p = d.SignPattern("+-+")
    assert p.degree == 2 and p.sign_changes() == 2
    assert p.im() == d.SignPattern("+++")
    assert d.SignPattern.from_blocks([1, 3, 1]) == d.SignPattern("+---+")

    c = d.CompatibleCouple("+---+", 0, 2)
    assert len(c.orbit()) == 2

    star = d.Scp([(0, 2), (1, 2), (1, 1), (1, 0)])
    assert star.couple() in c.orbit()
    out = d.realize_scp(star, seed=1, budget=2000)
    assert out["status"] == "exhausted", out

    good = d.Scp([(0, 2), (1, 2), (1, 1), (1, 0)]).truncate()
    out = d.realize_scp(good, seed=1)
    assert out["status"] == "found", out
    assert d.verify_witness(json.dumps(out["witness"]))

    target = json.dumps({"kind": "couple", "pattern": "++-+", "pair": [0, 1]})
    out = d.realize_json(target, seed=3)
    assert out["status"] == "found", out

    cat = d.catalog(4)
    assert len(cat["scps"]) == 2

    assert d.classify_quartic("0", "0", "0", "1") != ""
    report = d.verify_identities()
    assert isinstance(report, dict)

    print("smoke test ok")


if __name__ == "__main__":
    main()
