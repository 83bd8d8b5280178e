import pytest
from hypothesis import given, settings, strategies as st

from oracles import count_scripts

from sparseset import SparseSet, new_full
from sparseset.mutants import MUTANTS
from sparseset.oracle import (
    MARK,
    POP,
    AbstractDomain,
    Bind,
    Implementation,
    OpScript,
    Remove,
    ScriptError,
    abstract_bind,
    abstract_remove,
    enumerate_scripts,
    exhaustive_suite,
    gluing_check,
    random_script,
    run_script,
)


def dom(n, *values):
    return AbstractDomain(n, frozenset(values))


# -- abstract model ---------------------------------------------------------


def test_abstract_remove():
    assert abstract_remove(dom(3, 0, 1, 2), 1).values == {0, 2}
    assert abstract_remove(dom(1, 0), 0).values == set()
    with pytest.raises(ScriptError):
        abstract_remove(dom(3, 0, 2), 1)


def test_abstract_bind():
    assert abstract_bind(dom(3, 0, 1, 2), 2).values == {2}
    assert abstract_bind(dom(4, 3), 3).values == {3}
    with pytest.raises(ScriptError):
        abstract_bind(dom(3, 0, 2), 1)


def test_abstract_domain_bounds():
    with pytest.raises(ValueError):
        dom(2, 0, 2)
    with pytest.raises(ValueError):
        AbstractDomain.full(0)


def test_gluing():
    assert gluing_check(new_full(4), AbstractDomain.full(4))
    s = new_full(5)
    s.remove(2)
    assert list(s.dom) == [0, 1, 4, 3, 2]
    assert gluing_check(s, dom(5, 0, 1, 3, 4))
    assert not gluing_check(new_full(4), dom(4, 0, 1, 2))
    with pytest.raises(ValueError):
        gluing_check(new_full(3), AbstractDomain.full(4))


@pytest.mark.parametrize("n", [1, 2, 7, 64, 1024])
def test_gluing_at_initialisation(n):
    assert gluing_check(new_full(n), AbstractDomain.full(n))


# -- run_script -------------------------------------------------------------


def test_run_script_removes():
    assert run_script(OpScript(5, (Remove(2), Remove(0)))) is None


def test_run_script_with_frame():
    assert run_script(OpScript(5, (MARK, Remove(2), Bind(4), POP))) is None


def test_run_script_catches_broken_remove():
    bad = run_script(OpScript(5, (MARK, Remove(2), Bind(4), POP)), MUTANTS["double-decrement"])
    assert bad is not None
    assert bad.label in ("gluing", "size-decrease")
    assert bad.step == 2 and bad.op == Remove(2)
    assert "violation of" in bad.describe()


def test_run_script_catches_suffix_write():
    def clobber_suffix(s, v):
        SparseSet.remove(s, v)
        if s.size + 1 < s.n:
            s.swap_entries(s.size, s.n - 1)

    impl = Implementation("clobber", clobber_suffix, SparseSet.bind)
    bad = run_script(OpScript(4, (Remove(0), Remove(1))), impl)
    assert bad.label == "suffix-frame"


def test_run_script_catches_bad_restore():
    # remove that secretly swaps a removed value back below size
    def leaky(s, v):
        SparseSet.remove(s, v)
        if s.size and s.size < s.n - 1:
            s.swap_entries(0, s.n - 1)

    bad = run_script(OpScript(4, (MARK, Remove(3), Remove(2), POP)), Implementation("leaky", leaky, SparseSet.bind))
    assert bad is not None


def test_run_script_guard_errors():
    with pytest.raises(ScriptError):
        run_script(OpScript(3, (Remove(1), Remove(1))))
    with pytest.raises(ScriptError):
        run_script(OpScript(3, (POP,)))
    with pytest.raises(ScriptError):
        OpScript(3, (Remove(3),))
    with pytest.raises(ScriptError):
        OpScript(0, ())


# -- text format ------------------------------------------------------------


def test_script_text_roundtrip():
    sc = OpScript(5, (MARK, Remove(2), Bind(4), POP))
    text = sc.to_text()
    assert text == "universe 5\nmark\nremove 2\nbind 4\npop\n"
    assert OpScript.from_text(text) == sc


def test_script_text_comments_and_blanks():
    assert OpScript.from_text("# c\nuniverse 2\n\nremove 1\n") == OpScript(2, (Remove(1),))


@pytest.mark.parametrize(
    "text",
    ["", "remove 1\n", "universe x\n", "universe 3\nremove\n", "universe 3\nremove a\n",
     "universe 3\nREMOVE 1\n", "universe 3\nremove 5\n", "universe 0\n", "universe 3\npush\n"],
)
def test_script_text_errors(text):
    with pytest.raises(ScriptError):
        OpScript.from_text(text)


# -- enumeration ------------------------------------------------------------


def test_enumerate_base_case():
    ops = {sc.ops for sc in enumerate_scripts(1, 1)}
    assert {(Remove(0),), (Bind(0),), (MARK,)} <= ops
    assert (POP,) not in ops


def test_enumerate_respects_guards():
    ops = {sc.ops for sc in enumerate_scripts(2, 2)}
    assert (Remove(0), Remove(1)) in ops
    assert (Remove(0), Remove(0)) not in ops


@pytest.mark.parametrize("n, max_len, expected", [(2, 3, 83), (1, 5, 295), (3, 5, 2375)])
def test_enumerate_count_matches_recursive_count(n, max_len, expected):
    assert count_scripts(n, max_len) == expected
    assert sum(1 for _ in enumerate_scripts(n, max_len)) == expected


def test_enumerate_shortest_first():
    lengths = [len(sc) for sc in enumerate_scripts(2, 3)]
    assert lengths == sorted(lengths)


def test_enumerate_scripts_distinct():
    scripts = [sc.ops for sc in enumerate_scripts(2, 4)]
    assert len(scripts) == len(set(scripts))


# -- random scripts ---------------------------------------------------------


def test_random_script_deterministic():
    assert random_script(7, 20, 300) == random_script(7, 20, 300)
    assert random_script(7, 20, 300) != random_script(8, 20, 300)


def test_random_script_long_run():
    sc = random_script(123, 64, 1000)
    assert len(sc) == 1000
    assert run_script(sc) is None


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 50), st.integers(0, 200), st.integers(0, 8))
def test_random_scripts_well_formed(seed, n, length, depth):
    sc = random_script(seed, n, length, depth)
    assert all(op.v < n for op in sc.ops if isinstance(op, (Remove, Bind)))
    open_frames = 0
    for op in sc.ops:
        open_frames += (op == MARK) - (op == POP)
        assert 0 <= open_frames <= depth
    assert run_script(sc) is None


# -- suites -----------------------------------------------------------------


def test_exhaustive_small():
    r = exhaustive_suite(2, 4)
    assert r.ok and r.scripts == count_scripts(1, 4) + count_scripts(2, 4)


@pytest.mark.parametrize("name", sorted(MUTANTS))
def test_each_mutant_caught_small(name):
    assert not exhaustive_suite(3, 5, MUTANTS[name]).ok
