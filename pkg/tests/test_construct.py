"""Construction pipeline tests: encodings, searched words, witness assembly."""

import random

import pytest

from sepwords.construct import (
    canonical_triple,
    encode,
    farmand_dfa,
    free_word,
    lower_claim_value,
    search_C_n,
    search_z_k,
    state_limit_for_pairs,
    upper_claim_value,
    verify_witness,
    witness_pair,
    WitnessReport,
)
from sepwords.dfa import accepts, enumerate_canonical, reverse, run
from sepwords.lang import LangHandle, build_G_k, membership, segmented_closure
from sepwords.solver import check_separates, exact_sep, no_separator_up_to


def test_canonical_triple_values():
    t = canonical_triple(1)
    assert (t.f, t.g, t.h) == ("0", "0" * 7, "0" * 6)
    t2 = canonical_triple(2)
    assert (len(t2.f), len(t2.g), len(t2.h)) == (2, 122, 120)
    with pytest.raises(ValueError):
        canonical_triple(0)
    with pytest.raises(ValueError):
        canonical_triple(5)


def test_encodings():
    assert encode("012", "left") == "0" + "11" + "01"
    assert encode("012", "right") == "0" + "11" + "10"
    with pytest.raises(ValueError):
        encode("3", "left")
    with pytest.raises(ValueError):
        encode("0", "middle")


def test_encoding_reversal_identity():
    rng = random.Random(3)
    for _ in range(300):
        w = "".join(rng.choice("012") for _ in range(rng.randrange(15)))
        assert encode(w, "right")[::-1] == encode(w[::-1], "left")


def test_left_encoding_is_injective():
    rng = random.Random(4)
    seen = {}
    for _ in range(2000):
        w = "".join(rng.choice("012") for _ in range(rng.randrange(8)))
        e = encode(w, "left")
        assert seen.setdefault(e, w) == w
        seen[e] = w


def test_search_C_n_base_instance():
    res = search_C_n(1, "1")
    assert res.word == "1001"
    assert res.lower_checked == 3
    t = canonical_triple(1)
    w, x = res.word + t.f + res.word, res.word + t.g + res.word
    assert no_separator_up_to(w, x, 3)
    assert exact_sep(w, x).value == 4  # == 2n + 2, tight


def test_search_C_n_respects_forbidden_run_length():
    res = search_C_n(1, "112", forbid_run_length=1)
    run_lengths = {len(r) for r in res.word.replace("2", "1").split("1") if r}
    assert 1 not in run_lengths
    # the word is segments of the base block glued by 0-runs
    closure = segmented_closure(build_G_k(1))
    assert accepts(closure.dfa, res.word)


def test_search_C_n_rejects_bad_base():
    with pytest.raises(ValueError):
        search_C_n(1, "102")
    with pytest.raises(ValueError):
        search_C_n(1, "")


def test_search_z_k_small_levels_certified():
    z1 = search_z_k(1)
    z2 = search_z_k(2)
    assert z1.word == "112" and z1.certified and z1.checked_states == 1
    assert z2.word == "112" and z2.certified and z2.checked_states == 3
    assert membership(build_G_k(1), z1.word)
    assert membership(build_G_k(2), z2.word)


def test_search_z_k_level_4_is_uncertified():
    z4 = search_z_k(4)
    assert not z4.certified
    assert z4.checked_states == 3
    from sepwords.dfa import BudgetError
    with pytest.raises(BudgetError):
        search_z_k(4, allow_uncertified=False)


def test_state_limit_for_pairs():
    assert [state_limit_for_pairs(k) for k in (1, 2, 3, 4, 6)] == [0, 1, 1, 3, 7]


def test_free_word_is_indistinguishable_and_in_closure():
    rng = random.Random(11)
    structs = [d for d in enumerate_canonical(3, 3)]
    # words of the complement family glued with 0-runs
    from sepwords.lang import build_H_k, iter_words
    h = build_H_k(4)
    blocks = [w for w in iter_words(h.dfa, 5) if w][:10]
    closure_h = segmented_closure(h)
    for _ in range(10):
        d, d2 = rng.choice(structs), rng.choice(structs)
        w = rng.choice(blocks) + "0" + rng.choice(blocks)
        wp = free_word(4, d, d2, w)
        assert run(d, 0, wp) == run(d, 0, w)
        assert run(d2, 0, wp) == run(d2, 0, w)
        assert accepts(closure_h.dfa, wp)


def test_free_word_rejects_oversized_automata():
    big = next(d for d in enumerate_canonical(4, 3) if d.state_count == 4)
    with pytest.raises(ValueError):
        free_word(4, big, big, "112")


def test_farmand_machine_size_and_separation():
    g = build_G_k(1)
    r = LangHandle(reverse(g.dfa), "reversal", base_alphabet_12=True)
    t = r.dfa.state_count
    for n in (1, 2):
        m = farmand_dfa(r, n)
        assert m.state_count <= 2 * t + n + 4
        # suffix-coded segment, middle run of n vs n + (2n+1)! zeros, tail
        seg = encode("211", "right")  # reversal of a generator word
        a = seg + "0" * n + "1"
        b = seg + "0" * (n + canonical_triple(n).h.count("0")) + "1"
        assert check_separates(m, a, b)


def test_farmand_restart_mode_is_smaller():
    g = build_G_k(1)
    r = LangHandle(reverse(g.dfa), "reversal", base_alphabet_12=True)
    t = r.dfa.state_count
    m = farmand_dfa(r, 1, on_mismatch="restart")
    assert m.state_count <= 2 * t + 1 + 3
    with pytest.raises(ValueError):
        farmand_dfa(r, 1, on_mismatch="explode")


def test_claim_values():
    assert lower_claim_value(1, 1) == 2
    assert lower_claim_value(4, 1) == 4
    assert lower_claim_value(10, 3) == 8
    assert upper_claim_value(1, 1) == 21
    assert upper_claim_value(2, 1) == 31


@pytest.mark.parametrize("k,n", [(1, 1), (2, 1)])
def test_witness_pipeline_certifies(k, n):
    rep = verify_witness(witness_pair(k, n))
    assert rep.statuses == {"lower": "certified", "upper": "certified"}
    assert rep.lower_verified_to >= rep.lower_claim
    assert rep.upper_witness is not None
    assert rep.upper_witness.state_count <= rep.upper_claim
    assert check_separates(rep.upper_witness, rep.w_prime[::-1], rep.x_prime[::-1])


def test_witness_negative_control_bit_flip():
    rep = verify_witness(witness_pair(1, 1))
    lc = len(encode(rep.c_word, "left"))
    idx = len(rep.x_prime) - 1 - (lc + rep.n)
    flipped = "1" if rep.x_prime[idx] == "0" else "0"
    corrupted = witness_pair(1, 1)
    corrupted.x_prime = corrupted.x_prime[:idx] + flipped + corrupted.x_prime[idx + 1:]
    corrupted = verify_witness(corrupted)
    assert corrupted.statuses["upper"] == "failed"


def test_witness_report_json_roundtrip():
    rep = verify_witness(witness_pair(1, 1))
    back = WitnessReport.from_json(rep.to_json())
    assert back == rep
