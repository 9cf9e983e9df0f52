"""Smoke test for the `mendlab` Python module.

Build first, e.g. `maturin develop -m crates/mendlab-py/Cargo.toml`, then
run `python python/smoke_test.py`.
"""

import json

import mendlab


def main():
    ids = mendlab.problem_ids()
    assert ids == sorted(ids)
    assert "coloring:3" in ids and "pointer_lcl" in ids

    p = mendlab.Problem("coloring:3")
    assert p.labels == ["1", "2", "3"]

    doc = json.loads(mendlab.generate("path", n=4))
    doc["labels"] = {"0": None, "1": "1", "2": "1", "3": None}
    inst = json.dumps(doc)
    accepted, unhappy = p.verify(inst)
    assert accepted and unhappy == []

    assert p.find_mend(inst, 0, 0) is None
    m = p.find_mend(inst, 0, 1)
    assert m.radius == 1 and m.center == 0
    assert p.verify(m.instance)[0]
    assert p.mend_radius(inst, 0) == 1

    ab = mendlab.Problem("ab123")
    hard = mendlab.lower_bound_instance("ab123", 9)
    assert ab.mend_radius(hard, 4) == 4

    assert mendlab.census_134() == (1296, 1296, 0)

    layers = mendlab.rake_compress(mendlab.generate("path", n=3), 1)
    assert layers == ["R1", "R2", "R1"]

    tree = mendlab.generate("random_tree", n=40, seed=3)
    sampled = p.sample(tree, hole_prob=0.3, seed=5)
    assert p.verify(sampled)[0]

    code, out = mendlab.run_cli(["census-134"])
    assert code == 0 and "1296/1296" in out

    for bad in (lambda: mendlab.Problem("nonsense"), lambda: p.verify("{")):
        try:
            bad()
        except (KeyError, ValueError):
            pass
        else:
            raise AssertionError("expected an error")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
