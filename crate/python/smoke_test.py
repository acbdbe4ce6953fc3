"""Smoke test for the moufang extension module.

Build and install first:  pip install -e crates/py --no-build-isolation
"""

import json

import moufang


def main():
    z3 = moufang.Loop([[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert z3.order == 3 and z3.identity == 0
    assert z3.mul(1, 2) == 0
    assert z3.is_cml().passed
    assert z3.analyze(rank=True)["special_rank"] == 1

    l = moufang.Loop.construct("cml81")
    assert len(l) == 81
    assert not l.is_associative().passed
    e1, e2, e3 = 27, 9, 3
    assert l.associator(e1, e2, e3) == 1
    assert l.center() == [0, 1, 2]
    assert l.nilpotency_class() == 2
    assert sorted(l.generate([e1, e2, e3])) == list(range(81))
    assert len(l.min_generators()) == 3
    assert l.special_rank() == 3
    q, proj = l.quotient([1])
    assert q.order == 27 and proj[1] == q.identity
    assert moufang.Loop.from_text(l.to_text()).rows() == l.rows()

    mg = l.multiplication_group()
    assert mg.degree == 81 and mg.is_transitive() and mg.is_p_group(3)
    assert mg.order() == 81 * l.inner_mapping_group().order()
    assert mg.nilpotency_class() is not None
    assert mg.center().order() > 1

    s3 = moufang.PermGroup(3, [[1, 2, 0], [1, 0, 2]])
    assert s3.order() == 6 and s3.center().order() == 1
    assert s3.nilpotency_class() is None
    assert [2, 1, 0] in s3
    assert moufang.commutator([1, 2, 0], [1, 0, 2]) == [1, 2, 0]

    reports = l.verify()
    assert [r.name for r in reports] == sorted(r.name for r in reports)
    assert not any(r.status == "fail" for r in reports)
    eq2 = next(r for r in reports if r.name == "eq2.associator-expansion")
    assert eq2.sampled is None and eq2.checked == 81**4
    assert set(json.loads(eq2.to_json())) == {"name", "status", "mode", "counterexample", "timing_ms"}

    try:
        moufang.Loop([[0, 1], [1, 1]])
    except ValueError as e:
        assert "Latin" in str(e)
    else:
        raise AssertionError("expected ValueError")
    try:
        moufang.Loop.construct("product(cml81, cyclic(4))").special_rank()
    except moufang.BudgetExceeded:
        pass
    else:
        raise AssertionError("expected BudgetExceeded")

    print("smoke test passed")


if __name__ == "__main__":
    main()
