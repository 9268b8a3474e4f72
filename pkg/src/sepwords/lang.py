"""Builders for the block languages and their closures.

The generator family here lives over {1,2} but every handle is carried
over the full alphabet {0,1,2}: symbol 0 leads straight to the dead state,
so products and concatenations with 0-runs never need an alphabet
conversion.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Optional

from .dfa import (
    BudgetError,
    Dfa,
    accepts,
    combine,
    complement,
    determinize,
    dfa_from_text,
    dfa_to_text,
    equivalent,
    includes,
    is_empty,
    minimize,
    run,
    symbols_word,
)

ALPHABET = 3

# Default cap on subset states during determinization; the starred block
# languages blow up exponentially, which is the point.
DEFAULT_DETERMINIZE_BUDGET = 200_000


@dataclass(frozen=True)
class LangHandle:
    """A regular language: its canonical minimal DFA plus a provenance tag."""

    dfa: Dfa
    provenance: str
    base_alphabet_12: bool = False

    def to_text(self) -> str:
        return dfa_to_text(self.dfa, provenance=self.provenance)

    @staticmethod
    def from_text(text: str) -> "LangHandle":
        d, prov = dfa_from_text(text)
        m = minimize(d)
        return LangHandle(m, prov or "unlabeled", base_alphabet_12=is_zero_free(m))


def universe_12() -> Dfa:
    """All words over {1,2}, embedded over the full alphabet."""
    return Dfa(ALPHABET, ((1, 0, 0), (1, 1, 1)), frozenset({0}))


def is_zero_free(d: Dfa) -> bool:
    """True when no accepted word contains symbol 0."""
    return includes(universe_12(), d)


def words_of_L_k(k: int) -> list[str]:
    """The finite generator set for level k, in shortlex order.

    Two shapes: 1^{2i}2 for 1 <= i <= k, and block words
    1^{i_1}2...1^{i_s}2 whose exponents sum to 2k+1 with every exponent
    before the last even.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    words = {"1" * (2 * i) + "2" for i in range(1, k + 1)}

    def compositions(total: int, prefix: list[int]):
        # remaining parts: all but the last must be even
        if total >= 1:
            yield prefix + [total]
        for part in range(2, total, 2):
            yield from compositions(total - part, prefix + [part])

    for parts in compositions(2 * k + 1, []):
        words.add("".join("1" * p + "2" for p in parts))
    return sorted(words, key=lambda w: (len(w), w))


def _trie_nfa(words: list[str]) -> tuple[list[list[set[int]]], set[int]]:
    """Deterministic trie over {1,2} as an NFA table; returns (table, accepting)."""
    table: list[list[set[int]]] = [[set() for _ in range(ALPHABET)]]
    accepting: set[int] = set()
    for w in words:
        cur = 0
        for c in w:
            s = ord(c) - 48
            nxt = table[cur][s]
            if nxt:
                cur = next(iter(nxt))
            else:
                table.append([set() for _ in range(ALPHABET)])
                table[cur][s].add(len(table) - 1)
                cur = len(table) - 1
        accepting.add(cur)
    return table, accepting


def build_L_k(k: int, budget: Optional[int] = None) -> tuple[list[str], LangHandle]:
    """The finite generator language: its words and its minimal DFA."""
    words = words_of_L_k(k)
    table, acc = _trie_nfa(words)
    d = minimize(determinize(table, {0}, acc, ALPHABET, max_states=budget))
    return words, LangHandle(d, f"L_k k={k}", base_alphabet_12=True)


def build_G_k(k: int, budget: int = DEFAULT_DETERMINIZE_BUDGET) -> LangHandle:
    """Kleene star of the level-k generator set, as a minimal DFA.

    Star of the generator trie: accepting trie states inherit the root's
    outgoing moves, and the root accepts.  Exponential subset growth is
    expected; exceeding the budget raises BudgetError.
    """
    words = words_of_L_k(k)
    table, acc = _trie_nfa(words)
    for q in acc:
        for s in range(ALPHABET):
            table[q][s] |= table[0][s]
    d = minimize(determinize(table, {0}, acc | {0}, ALPHABET, max_states=budget))
    return LangHandle(d, f"G_k k={k}", base_alphabet_12=True)


def build_H_k(k: int, budget: int = DEFAULT_DETERMINIZE_BUDGET) -> LangHandle:
    """The complement of the starred language within {1,2}*."""
    g = build_G_k(k, budget=budget)
    d = minimize(combine(complement(g.dfa), universe_12(), "and"))
    return LangHandle(d, f"H_k k={k}", base_alphabet_12=True)


def finite_language(words: list[str], provenance: str) -> LangHandle:
    """Minimal DFA of a finite set of {1,2}-words (trie then minimize)."""
    for w in words:
        if "0" in w:
            raise ValueError("finite_language expects {1,2}-only words")
    table, acc = _trie_nfa(words)
    d = minimize(determinize(table, {0}, acc, ALPHABET))
    return LangHandle(d, provenance, base_alphabet_12=True)


def segmented_closure(r: LangHandle, budget: int = DEFAULT_DETERMINIZE_BUDGET) -> LangHandle:
    """The closure R (0^+ R)* of a 0-free language R.

    Built as an NFA over the R automaton plus one gap state: finishing an
    R block allows a 0-run, and the run hands control back to R's start.
    """
    if not is_zero_free(r.dfa):
        raise ValueError("segmented_closure requires a 0-free language")
    out = segclo_of_dfa(r.dfa, budget=budget)
    return LangHandle(out, f"segclo of <{r.provenance}>")


def segclo_of_dfa(d: Dfa, budget: int = DEFAULT_DETERMINIZE_BUDGET) -> Dfa:
    """L (0^+ L)* for an arbitrary language; no 0-freeness demanded.

    The public operator restricts to 0-free inputs; invariants about the
    closure of an already-closed language need the unchecked form.
    """
    n = d.state_count
    gap = n
    table: list[list[set[int]]] = [
        [set() for _ in range(ALPHABET)] for _ in range(n + 1)
    ]
    for q in range(n):
        for s in range(ALPHABET):
            table[q][s].add(d.transitions[q][s])
        if q in d.accepting:
            table[q][0].add(gap)
    table[gap][0].add(gap)
    for s in (1, 2):
        table[gap][s].add(d.transitions[0][s])
    acc = set(d.accepting)
    if 0 in d.accepting:  # a trailing block may be empty when R accepts the empty word
        acc.add(gap)
    return minimize(determinize(table, {0}, acc, ALPHABET, max_states=budget))


def state_complexity(l: LangHandle | Dfa) -> int:
    """States of the minimal complete DFA (dead state counted)."""
    if isinstance(l, LangHandle):
        return minimize(l.dfa).state_count
    return minimize(l).state_count


def iter_words(d: Dfa, max_len: int, alphabet: Optional[tuple[int, ...]] = None) -> Iterator[str]:
    """Accepted words in shortlex order, up to max_len.

    Frontier size is exponential in length for rich languages; callers cap
    max_len accordingly.
    """
    syms = alphabet if alphabet is not None else tuple(range(d.alphabet_size))
    frontier: list[tuple[int, str]] = [(0, "")]
    if 0 in d.accepting:
        yield ""
    for _ in range(max_len):
        nxt = []
        for q, w in frontier:
            for s in syms:
                t = d.transitions[q][s]
                nxt.append((t, w + chr(48 + s)))
        # prune states that can never accept again to keep frontiers sane
        frontier = [(q, w) for q, w in nxt if _can_accept(d, q)]
        for q, w in frontier:
            if q in d.accepting:
                yield w


def _can_accept(d: Dfa, q: int, _cache: dict = {}) -> bool:
    key = (d, q)
    if key not in _cache:
        seen = {q}
        queue = deque([q])
        ok = False
        while queue:
            cur = queue.popleft()
            if cur in d.accepting:
                ok = True
                break
            for t in d.transitions[cur]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        _cache[key] = ok
    return _cache[key]


def membership(l: LangHandle, w: str) -> bool:
    return accepts(l.dfa, w)
