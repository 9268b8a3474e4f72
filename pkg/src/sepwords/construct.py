"""Word-level constructions: the canonical unary triple, the binary
encodings, the certified existential searches, the reversal-side
separator machine, and the end-to-end witness pipeline.

Every search result is re-certified by an independent solver call before
it is returned; nothing trusts the search path itself.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Optional

from .dfa import (
    BudgetError,
    Dfa,
    accepts,
    combine,
    complement,
    dfa_from_text,
    dfa_to_text,
    minimize,
    reverse,
    run,
)
from .lang import (
    LangHandle,
    build_G_k,
    build_H_k,
    finite_language,
    is_zero_free,
    iter_words,
    segclo_of_dfa,
    segmented_closure,
)
from .solver import (
    DEFAULT_BUDGET,
    SearchBudget,
    check_separates,
    lsep_lower_check,
    no_separator_up_to,
)

MAX_TRIPLE_N = 4

# Largest state count we exhaust with no_separator_up_to during witness
# verification; 3 is comfortable at any word length.
EXHAUSTIVE_STATE_CAP = 3


@dataclass(frozen=True)
class CanonicalTriple:
    """The unary words 0^n, 0^{n+(2n+1)!} and 0^{(2n+1)!}."""

    n: int
    f: str
    g: str
    h: str


def canonical_triple(n: int) -> CanonicalTriple:
    if not 1 <= n <= MAX_TRIPLE_N:
        raise ValueError(f"n must be in 1..{MAX_TRIPLE_N}; (2n+1)! grows fast")
    m = math.factorial(2 * n + 1)
    return CanonicalTriple(n=n, f="0" * n, g="0" * (n + m), h="0" * m)


_ENCODINGS = {
    "left": {"0": "0", "1": "11", "2": "01"},
    "right": {"0": "0", "1": "11", "2": "10"},
}


def encode(w: str, side: str) -> str:
    """Homomorphic binary encoding: 1 -> 11 and 2 -> 01 (left) or 10 (right)."""
    try:
        table = _ENCODINGS[side]
    except KeyError:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    try:
        return "".join(table[c] for c in w)
    except KeyError:
        raise ValueError(f"encode expects a word over {{0,1,2}}, got {w!r}")


@lru_cache(maxsize=None)
def _g_handle(k: int) -> LangHandle:
    return build_G_k(k)


@lru_cache(maxsize=None)
def _h_handle(k: int) -> LangHandle:
    return build_H_k(k)


@dataclass(frozen=True)
class CnResult:
    """A certified pick for the blueberry word of a base block."""

    n: int
    w0: str
    word: str
    lower_checked: int  # states exhausted without finding a separator


def _cn_candidates(
    w0: str, max_run: int, forbid_run: Optional[int], max_len: int
) -> Iterator[str]:
    """Words w0 (0^a w0)* in length order, run lengths capped and filtered."""
    allowed = [r for r in range(1, max_run + 1) if r != forbid_run]
    base = len(w0)
    for total in range(base, max_len + 1):
        blocks_max = (total + 1) // (base + 1) + 1
        for m in range(1, blocks_max + 1):
            rest = total - m * base
            if m == 1:
                if rest == 0:
                    yield w0
                continue
            if rest < m - 1:
                continue
            for runs in _compositions(rest, m - 1, allowed):
                yield w0 + "".join("0" * r + w0 for r in runs)


def _compositions(total: int, parts: int, allowed: list[int]) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in allowed:
        if first > total - (parts - 1) * min(allowed, default=total):
            continue
        for rest in _compositions(total - first, parts - 1, allowed):
            yield (first,) + rest


def search_C_n(
    n: int,
    w0: str,
    budget: SearchBudget = DEFAULT_BUDGET,
    forbid_run_length: Optional[int] = None,
    max_len: Optional[int] = None,
) -> CnResult:
    """Shortest certified w in w0 (0^+ w0)* with sep(w f_n w, w g_n w) >= 2n+2.

    Certification is the exhaustive no-separator check at 2n+1 states;
    internal 0-runs are capped at 2n+2 (a completeness cap on the search,
    not on the underlying statement).  forbid_run_length additionally
    excludes one run length; the witness assembly uses it to keep runs of
    length n out of the word.
    """
    if not w0:
        raise ValueError("w0 must be nonempty")
    if "0" in w0:
        raise ValueError("base block must be 0-free so the closure is well formed")
    trip = canonical_triple(n)
    if max_len is None:
        max_len = 12 * len(w0) + 24
    closure = segmented_closure(finite_language([w0], f"{{{w0}}}"))
    for cand in _cn_candidates(w0, 2 * n + 2, forbid_run_length, max_len):
        if not accepts(closure.dfa, cand):
            raise AssertionError(f"candidate {cand!r} escaped the closure")
        target_w = cand + trip.f + cand
        target_x = cand + trip.g + cand
        if no_separator_up_to(target_w, target_x, 2 * n + 1, budget=budget):
            return CnResult(n=n, w0=w0, word=cand, lower_checked=2 * n + 1)
    raise BudgetError(
        f"no certified word up to length {max_len} for n={n}, w0={w0!r}"
    )


@dataclass(frozen=True)
class ZkResult:
    """A hard-to-accept word of the starred language."""

    k: int
    word: str
    certified: bool
    checked_states: int  # lsep lower bound verified through this many states


def search_z_k(
    k: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    max_len: int = 40,
    allow_uncertified: bool = True,
) -> ZkResult:
    """Shortest z in G_k - {eps} with no (2^k - 1)-state acceptor avoiding H_k.

    Fully certified for k <= 2, where 2^k - 1 states are exhaustible.  For
    larger k the exhaustive bound is out of reach; the candidate is vetted
    at the exhaustible cap and flagged uncertified.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    target = 2**k - 1
    certified = target <= EXHAUSTIVE_STATE_CAP
    p = target if certified else EXHAUSTIVE_STATE_CAP
    if not certified and not allow_uncertified:
        raise BudgetError(f"k={k} needs a {target}-state exhaustive check")
    g, h = _g_handle(k), _h_handle(k)
    for z in iter_words(g.dfa, max_len):
        if not z:
            continue
        if lsep_lower_check(z, h, p, budget=budget):
            return ZkResult(k=k, word=z, certified=certified, checked_states=p)
    raise BudgetError(f"no candidate up to length {max_len} for k={k}")


def state_limit_for_pairs(k: int) -> int:
    """The per-automaton state cap 2^{k/2} - 1 from the small-pair lemmas."""
    return math.floor(2 ** (k / 2) - 1 + 1e-12)


def free_word(
    k: int,
    d: Dfa,
    d2: Dfa,
    w: str,
    z_k: Optional[str] = None,
    budget: SearchBudget = DEFAULT_BUDGET,
) -> str:
    """A word of H_k (0^+ H_k)* that neither d nor d2 distinguishes from w.

    Breadth-first search over the product of d, d2 and the closure of H_k,
    targeting w's end-state pair at an accepting closure state; the
    shortest such word is returned.  When z_k is supplied, w is checked
    against the closure of H_k + {z_k}; otherwise the caller vouches for
    the membership precondition.
    """
    limit = state_limit_for_pairs(k)
    if d.state_count > limit or d2.state_count > limit:
        raise ValueError(
            f"automata must have at most {limit} states for k={k} "
            f"(got {d.state_count} and {d2.state_count})"
        )
    if d.alphabet_size != 3 or d2.alphabet_size != 3:
        raise ValueError("free_word expects full-alphabet automata")
    h = _h_handle(k)
    if z_k is not None:
        hp = LangHandle(
            minimize(combine(h.dfa, finite_language([z_k], "z").dfa, "or")),
            f"H'_k k={k}",
            base_alphabet_12=True,
        )
        if not accepts(segmented_closure(hp).dfa, w):
            raise ValueError("w is not in the closure of H'_k")
    a = segmented_closure(h).dfa
    target = (run(d, 0, w), run(d2, 0, w))
    start = (0, 0, 0)
    parent: dict[tuple[int, int, int], tuple[tuple[int, int, int], int]] = {}
    seen = {start}
    queue = deque([start])

    def emit(state):
        syms = []
        while state != start:
            state, sym = parent[state]
            syms.append(sym)
        return "".join(chr(48 + s) for s in reversed(syms))

    if (start[0], start[1]) == target and 0 in a.accepting:
        return ""
    while queue:
        cur = queue.popleft()
        q1, q2, qa = cur
        for s in range(3):
            nxt = (d.transitions[q1][s], d2.transitions[q2][s], a.transitions[qa][s])
            if nxt in seen:
                continue
            seen.add(nxt)
            parent[nxt] = (cur, s)
            if (nxt[0], nxt[1]) == target and nxt[2] in a.accepting:
                return emit(nxt)
            queue.append(nxt)
    # the small-pair lemma rules this out when the preconditions hold
    raise ValueError(
        "no indistinguishable closure word exists; a precondition is violated"
    )


def farmand_dfa(r: LangHandle, n: int, on_mismatch: str = "reject") -> Dfa:
    """Binary separator for encoded words around the unary middle block.

    The machine decodes right-encoded symbols in (1-prefixed) pairs and
    simulates r's automaton on them.  A 0 read at a pair boundary ends the
    current segment: if the segment is in R the machine counts the 0-run
    and, on the next 1, accepts exactly when the count is n; otherwise it
    skips the run and restarts r.  The empty segment never counts as an R
    block, which is what the R - {eps} precondition requires.

    on_mismatch selects what a wrong count does: "reject" (a reject sink,
    the layout with 2t + n + 4 states) or "restart" (rejoin decoding at
    r's start, 2t + n + 3 states; used when R segments may also occur
    before the middle block).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if on_mismatch not in ("reject", "restart"):
        raise ValueError("on_mismatch must be 'reject' or 'restart'")
    if not is_zero_free(r.dfa):
        raise ValueError("R must be a {1,2}-language")
    rd = r.dfa
    t = rd.state_count
    SKIP = 0
    MID = lambda q: 1 + q
    COMP = lambda q: 1 + t + q
    CNT = lambda c: 1 + 2 * t + (c - 1)  # c in 1..n
    OVF = 1 + 2 * t + n
    ACC = 2 + 2 * t + n
    REJ = 3 + 2 * t + n
    total = (REJ if on_mismatch == "reject" else ACC) + 1
    mismatch_to = REJ if on_mismatch == "reject" else MID(0)
    rows = [[0, 0] for _ in range(total)]
    rows[SKIP] = [SKIP, MID(0)]
    for q in range(t):
        rows[MID(q)] = [COMP(rd.transitions[q][2]), COMP(rd.transitions[q][1])]
        rows[COMP(q)] = [CNT(1) if q in rd.accepting else SKIP, MID(q)]
    for c in range(1, n + 1):
        rows[CNT(c)] = [
            CNT(c + 1) if c < n else OVF,
            ACC if c == n else mismatch_to,
        ]
    rows[OVF] = [OVF, mismatch_to]
    rows[ACC] = [ACC, ACC]
    if on_mismatch == "reject":
        rows[REJ] = [REJ, REJ]
    return Dfa(2, tuple(tuple(row) for row in rows), frozenset({ACC}))


@dataclass
class WitnessReport:
    """A (k, n) witness pair with its claimed and certified bounds."""

    k: int
    n: int
    w_prime: str
    x_prime: str
    lower_claim: int
    upper_claim: int
    z_word: str
    c_word: str
    z_certified: bool
    lower_verified_to: int = 0
    upper_witness: Optional[Dfa] = None
    statuses: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "n": self.n,
                "w_prime": self.w_prime,
                "x_prime": self.x_prime,
                "lower_claim": self.lower_claim,
                "upper_claim": self.upper_claim,
                "z_word": self.z_word,
                "c_word": self.c_word,
                "z_certified": self.z_certified,
                "lower_verified_to": self.lower_verified_to,
                "upper_witness": dfa_to_text(self.upper_witness)
                if self.upper_witness
                else None,
                "statuses": self.statuses,
            },
            sort_keys=True,
        )

    @staticmethod
    def from_json(text: str) -> "WitnessReport":
        obj = json.loads(text)
        witness = (
            dfa_from_text(obj["upper_witness"])[0] if obj.get("upper_witness") else None
        )
        return WitnessReport(
            k=obj["k"],
            n=obj["n"],
            w_prime=obj["w_prime"],
            x_prime=obj["x_prime"],
            lower_claim=obj["lower_claim"],
            upper_claim=obj["upper_claim"],
            z_word=obj["z_word"],
            c_word=obj["c_word"],
            z_certified=obj["z_certified"],
            lower_verified_to=obj["lower_verified_to"],
            upper_witness=witness,
            statuses=obj["statuses"],
        )


def lower_claim_value(k: int, n: int) -> int:
    return min(2 * n + 2, math.ceil(2 ** (k / 2)))


def upper_claim_value(k: int, n: int) -> int:
    return n + 10 * k + 10


AssemblyFn = Callable[[int, int, SearchBudget], tuple[str, str, str, str, bool]]
# returns (w, x, z_word, c_word, z_certified) over the full alphabet


def _default_assembly(k: int, n: int, budget: SearchBudget):
    """w = C f_n C and x = C g_n C with C the certified blueberry word of z_k.

    Runs of length exactly n are kept out of C so the reversal-side
    machine can recognize the middle block.
    """
    trip = canonical_triple(n)
    z = search_z_k(k, budget=budget)
    c = search_C_n(n, z.word, budget=budget, forbid_run_length=n)
    w = c.word + trip.f + c.word
    x = c.word + trip.g + c.word
    return w, x, z.word, c.word, z.certified


def witness_pair(
    k: int,
    n: int,
    budget: SearchBudget = DEFAULT_BUDGET,
    assembly: Optional[AssemblyFn] = None,
) -> WitnessReport:
    """Assemble the binary witness pair for the (k, n) instance."""
    if assembly is None:
        assembly = _default_assembly
    w, x, z_word, c_word, z_certified = assembly(k, n, budget)
    w_prime, x_prime = encode(w, "left"), encode(x, "left")
    if w_prime == x_prime:
        raise AssertionError("assembly produced equal encoded words")
    return WitnessReport(
        k=k,
        n=n,
        w_prime=w_prime,
        x_prime=x_prime,
        lower_claim=lower_claim_value(k, n),
        upper_claim=upper_claim_value(k, n),
        z_word=z_word,
        c_word=c_word,
        z_certified=z_certified,
        statuses={"lower": "pending", "upper": "pending"},
    )


def verify_witness(
    report: WitnessReport,
    budget: SearchBudget = DEFAULT_BUDGET,
    exhaust_cap: int = EXHAUSTIVE_STATE_CAP,
) -> WitnessReport:
    """Fill in both bound checks on a witness report.

    Lower side: exhaustive no-separator search at the largest feasible
    state count.  Upper side: the decoder machine over the reversal of the
    starred language, run on the reversed pair; the machine accepts the
    reversed short-block word and rejects the reversed long-block word.
    """
    wp, xp = report.w_prime, report.x_prime
    p = min(exhaust_cap, budget.max_states)
    if no_separator_up_to(wp, xp, p, budget=budget):
        report.lower_verified_to = p + 1
        report.statuses["lower"] = (
            "certified" if report.lower_verified_to >= report.lower_claim
            else "budget-bounded"
        )
    else:
        report.statuses["lower"] = "failed"
        report.lower_verified_to = 0

    g = _g_handle(report.k)
    r = LangHandle(reverse(g.dfa), f"reverse of <{g.provenance}>",
                   base_alphabet_12=True)
    mode = "reject" if "0" not in report.c_word else "restart"
    machine = farmand_dfa(r, report.n, on_mismatch=mode)
    wr, xr = wp[::-1], xp[::-1]
    if machine.state_count <= report.upper_claim and check_separates(machine, wr, xr):
        report.upper_witness = machine
        report.statuses["upper"] = "certified"
    else:
        report.statuses["upper"] = "failed"
    return report
