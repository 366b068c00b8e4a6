"""Smoke test for the Python bindings.

Build and install the extension first:

    pip install maturin
    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/incorp-*.whl

then run `python python/smoke_test.py`.
"""

import incorp


def check_clauses():
    th = incorp.UnitClauses()
    db = th.parse("-q r\n")
    new = [incorp.Clause("q")]

    for mode in ("direct", "limbo"):
        out, stats = th.incorporate(new, db, mode=mode)
        assert [str(c) for c in out] == ["r", "q"], out
        assert th.irreducible(out)
        assert stats.back_simplifications == 1
    _, stats = th.incorporate(new, db)
    assert stats.measure_trace == [(8, 4), (7, 4), (7, 1)], stats.measure_trace

    c = incorp.Clause("-p -q r")
    assert th.simplify(c, th.parse("p\nq\n")) == incorp.Clause("r")
    assert th.simplify(c, [incorp.Clause("r s"), incorp.Clause("-p")]).is_true()
    assert th.rewritable(c, [incorp.Clause("p")])
    assert c.literals() == ["-p", "-q", "r"]
    assert c.scount() == 4
    assert th.ceval(c, {"p": True, "q": True, "r": False}) is False
    assert th.render(out) == "r\nq\n"

    try:
        incorp.Clause("p ?")
    except ValueError as e:
        assert "column" in str(e)
    else:
        raise AssertionError("malformed clause accepted")

    reports = th.conform(seed=7, iters=300)
    assert len(reports) == 8 and all(r.passed for r in reports), reports


def check_equations():
    th = incorp.GroundEquations()
    db = th.parse("(= (g (f a)) b)\n")
    out, stats = th.incorporate([incorp.Equation("(= (f a) a)")], db, mode="limbo")
    assert [str(e) for e in out] == ["(= (g a) b)", "(= (f a) a)"], out
    assert stats.iterations == 2

    e = incorp.Equation("(= a (f a))")
    assert e.sides() == ("(f a)", "a")
    algebra = "carrier 2\na 0\nb 1\nf/1 0 0\ng/2 0 1 1 0\n"
    assert th.ceval(e, algebra) is True
    assert th.ceval(incorp.Equation("(= a b)"), algebra) is False
    assert all(r.passed for r in th.conform(seed=7, iters=300))


if __name__ == "__main__":
    check_clauses()
    check_equations()
    print("python smoke test passed")
