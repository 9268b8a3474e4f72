"""Exact separation-number solver tests."""

import itertools
import random
from dataclasses import replace

import pytest

from sepwords.dfa import BudgetError, Dfa, accepts
from sepwords.lang import build_H_k, finite_language
from sepwords.solver import (
    DEFAULT_BUDGET,
    SearchBudget,
    SepCertificate,
    check_separates,
    exact_sep,
    lsep_forbidden_states,
    lsep_lower_check,
    no_separator_up_to,
    raw_separable,
)


def test_budget_validation():
    with pytest.raises(ValueError):
        SearchBudget(max_states=0)
    with pytest.raises(ValueError):
        SearchBudget(wall_limit=0)


def test_equal_words_rejected():
    with pytest.raises(ValueError):
        exact_sep("01", "01")
    with pytest.raises(ValueError):
        no_separator_up_to("", "", 2)


def test_small_known_values():
    assert exact_sep("01", "10").value == 2
    assert exact_sep("", "0").value == 2
    assert exact_sep("0", "1").value == 2


def test_unary_known_values():
    # runs differing by 6: the least non-divisor of 6 is 4, capped by a+2
    assert exact_sep("0", "0" * 7).value == 3
    assert exact_sep("00", "0" * 122).value == 4  # 2..6 all divide 120
    assert exact_sep("", "0" * 6).value == 2  # the short side has length 0


def test_unary_fast_path_matches_search():
    rng = random.Random(7)
    for _ in range(30):
        a = rng.randrange(0, 7)
        b = rng.randrange(0, 12)
        if a == b:
            continue
        w, x = "1" * a, "1" * b
        fast = exact_sep(w, x).value
        slow = exact_sep(w, x, use_unary_fast_path=False).value
        assert fast == slow, (a, b)


def test_certificate_witness_separates():
    for w, x in (("0110", "1001"), ("0", "0000000"), ("", "010")):
        cert = exact_sep(w, x)
        assert cert.exact
        assert cert.witness is not None
        assert cert.witness.state_count == cert.value
        assert check_separates(cert.witness, w, x)
        # minimality: exhaustion one level below
        assert no_separator_up_to(w, x, cert.value - 1)


def test_solver_agrees_with_raw_oracle():
    words = [""] + ["".join(t) for L in range(1, 4)
                    for t in itertools.product("01", repeat=L)]
    for w, x in itertools.combinations(words, 2):
        for p in (1, 2):
            assert (not no_separator_up_to(w, x, p)) == raw_separable(w, x, p)


def test_certificate_json_roundtrip():
    cert = exact_sep("001", "100")
    back = SepCertificate.from_json(cert.to_json())
    assert (back.w, back.x, back.lower, back.upper) == (
        cert.w, cert.x, cert.lower, cert.upper)
    assert back.witness == cert.witness
    assert back.exact


def test_budget_bounded_certificate():
    tiny = replace(DEFAULT_BUDGET, max_states=2)
    cert = exact_sep("00", "0" * 122, budget=tiny, use_unary_fast_path=False)
    assert not cert.exact
    assert cert.lower == 3  # exhausted 2 states
    assert cert.upper >= cert.lower
    with pytest.raises(ValueError):
        cert.value


def test_node_budget_raises_only_inside_search():
    # a 1-node budget still resolves pairs settled by analytic paths
    starved = replace(DEFAULT_BUDGET, max_nodes=1)
    assert exact_sep("0", "00", budget=starved).exact
    cert = exact_sep("0101", "1010", budget=starved)
    assert cert.lower <= cert.upper  # degrades to bounds, never raises
    assert isinstance(cert, SepCertificate)


def test_check_separates():
    parity = Dfa(2, ((1, 0), (0, 1)), frozenset({1}))  # odd number of 0s
    assert check_separates(parity, "0", "00")
    assert not check_separates(parity, "00", "0")
    assert not check_separates(parity, "0", "000")


def test_lsep_forbidden_states():
    lang = finite_language(["1", "22"], "probe")
    # 1-state structure: its only state is reachable by every word
    one = Dfa(3, ((0, 0, 0),), frozenset())
    assert lsep_forbidden_states(one, lang) == frozenset({0})


def test_lsep_lower_check_known_instances():
    assert lsep_lower_check("112", build_H_k(1), 1)
    assert lsep_lower_check("112", build_H_k(2), 3)
    # a 4-state acceptor avoiding the level-2 complement exists
    assert not lsep_lower_check("112", build_H_k(2), 4)


def test_lsep_rejects_member_word():
    with pytest.raises(ValueError):
        lsep_lower_check("2112", build_H_k(1), 1)


def test_no_separator_up_to_monotone():
    w, x = "0011", "1100"
    results = [no_separator_up_to(w, x, p) for p in (1, 2, 3)]
    # once a separator exists it exists at every larger level
    assert results == sorted(results, reverse=True)
