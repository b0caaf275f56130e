import json
import os
from pathlib import Path

import pytest

import opstrict

DATA = Path(os.environ.get("OPSTRICT_TEST_DATA", Path(__file__).parents[2] / "tests" / "data"))


def test_terminal_operad_composes_by_arity():
    P = opstrict.terminal_operad(3)
    assert len(P) == 4
    assert P.compose("t2", ["t1", "t2"]) == "t3"
    assert P.check_laws()["passed"]


def test_free_binary_operad_substitutes_words():
    P = opstrict.free_binary_operad(3)
    assert P.compose("mxx", ["mxx", "x"]) == "mmxxx"
    assert P.compose("mxx", ["x", "mxx"]) == "mxmxx"


def test_compose_over_the_cap_raises():
    P = opstrict.terminal_operad(3)
    with pytest.raises(opstrict.CapExceeded):
        P.compose("t2", ["t3", "t1"])


def test_trees_of_the_terminal_operad_form_one_class():
    P = opstrict.terminal_operad(3)
    trees = opstrict.enumerate_trees(P, 3, 3)
    assert len(trees) == 47
    assert all(opstrict.has_two_cell(P, trees[0], t) for t in trees)
    assert {opstrict.eval_tree(P, t) for t in trees} == {"t3"}


def test_regularity_verdicts():
    monoid = opstrict.check_strong_regularity((DATA / "monoid.theory").read_text())
    group = opstrict.check_strong_regularity((DATA / "group.theory").read_text())
    assert monoid["regular"]
    assert not group["regular"]
    assert group["violations"]


def test_monoid_compiles_to_the_terminal_operad():
    P = opstrict.compile_theory((DATA / "monoid.theory").read_text(), 3, 4)
    assert [len(P.of_arity(n)) for n in range(4)] == [1, 1, 1, 1]


def test_parse_errors_are_typed():
    with pytest.raises(opstrict.ParseError):
        opstrict.parse_operad("not an operad")


def test_validation_and_localization():
    assert opstrict.validate(opstrict.indiscrete_fixture(3))["passed"]
    bad = opstrict.validate(opstrict.load_wpc(str(DATA / "cyclic_corrupt.wpc")), 3)
    assert not bad["passed"]
    assert bad["suspects"] == ["gamma t2 (t1 t1) @ (x x)"]


def test_strictification():
    W = opstrict.cyclic_twisted_fixture(3, [0, 1, 1, 0])
    assert not opstrict.is_strict(W)
    S = opstrict.strictify(W)
    assert opstrict.is_strict(S.strict)
    assert S.check_strict()["passed"]
    eq = S.check_equivalence()
    assert eq["passed"] and eq["equivalence"]["passed"]
    assert S.check_unit()["passed"]
    self_map = S.self_factorization()
    assert self_map["passed"] and self_map["identity_on_objects"]
    assert self_map["solutions"] == 1


def test_commands_are_deterministic():
    first = opstrict.cmd_validate(str(DATA / "cyclic_twisted.wpc"), tree_size_cap=3)
    second = opstrict.cmd_validate(str(DATA / "cyclic_twisted.wpc"), tree_size_cap=3)
    assert first["exit_code"] == 0
    assert first["report"] == second["report"]
    assert opstrict.report_json(first)["command"] == "validate"


def test_command_exit_codes():
    assert opstrict.cmd_compile_theory(str(DATA / "group.theory"))["exit_code"] == 1
    assert opstrict.cmd_validate(str(DATA / "broken.wpc"))["exit_code"] == 2
    assert opstrict.cmd_validate(str(DATA / "cyclic_strict.wpc"), arity_cap=2)["exit_code"] == 3
    listing = opstrict.cmd_enumerate(str(DATA / "terminal3.operad"), 2, tree_size_cap=2)
    assert listing["exit_code"] == 0
    assert listing["artifact"]
    json.loads(listing["report"])
