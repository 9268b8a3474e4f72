"""Complete deterministic finite automata over small alphabets.

Every automaton here is total: each state has exactly one outgoing
transition per symbol, and the start state is always 0.  Words are plain
strings over "01" or "012"; symbol i is the character chr(ord('0') + i).
All operations are pure and Dfa values are immutable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


MAX_ALPHABET = 3


def word_symbols(w: str, alphabet_size: int) -> list[int]:
    """Convert a word string to symbol ids, validating the alphabet."""
    out = []
    for c in w:
        s = ord(c) - 48
        if not 0 <= s < alphabet_size:
            raise ValueError(f"symbol {c!r} outside alphabet of size {alphabet_size}")
        out.append(s)
    return out


def symbols_word(symbols: Iterable[int]) -> str:
    return "".join(chr(48 + s) for s in symbols)


@dataclass(frozen=True)
class Dfa:
    """A complete DFA.  transitions[q][a] is the target of state q on symbol a."""

    alphabet_size: int
    transitions: tuple[tuple[int, ...], ...]
    accepting: frozenset[int]

    def __post_init__(self):
        if not 2 <= self.alphabet_size <= MAX_ALPHABET:
            raise ValueError(f"alphabet_size must be 2 or 3, got {self.alphabet_size}")
        n = len(self.transitions)
        if n == 0:
            raise ValueError("a DFA needs at least one state")
        for q, row in enumerate(self.transitions):
            if len(row) != self.alphabet_size:
                raise ValueError(f"state {q} has a partial transition row")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError(f"transition target {t} out of range")
        for q in self.accepting:
            if not 0 <= q < n:
                raise ValueError(f"accepting state {q} out of range")

    @property
    def state_count(self) -> int:
        return len(self.transitions)

    @property
    def start(self) -> int:
        return 0


@dataclass(frozen=True)
class StateSet:
    """A set of states tied to the automaton that owns them.

    Operations between sets owned by different automata are rejected so a
    set cannot silently survive a renumbering (e.g. minimization).
    """

    owner: Dfa
    members: frozenset[int]

    def __post_init__(self):
        for q in self.members:
            if not 0 <= q < self.owner.state_count:
                raise ValueError(f"state {q} not in owner automaton")

    def _check(self, other: "StateSet") -> None:
        if self.owner != other.owner:
            raise ValueError("state sets belong to different automata")

    def union(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.owner, self.members | other.members)

    def intersection(self, other: "StateSet") -> "StateSet":
        self._check(other)
        return StateSet(self.owner, self.members & other.members)

    def issubset(self, other: "StateSet") -> bool:
        self._check(other)
        return self.members <= other.members

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, q: int) -> bool:
        return q in self.members


def all_states(d: Dfa) -> StateSet:
    return StateSet(d, frozenset(range(d.state_count)))


def run(d: Dfa, q: int, w: str) -> int:
    """The state reached from q after reading w."""
    if not 0 <= q < d.state_count:
        raise ValueError(f"state {q} out of range")
    for s in word_symbols(w, d.alphabet_size):
        q = d.transitions[q][s]
    return q


def accepts(d: Dfa, w: str) -> bool:
    return run(d, 0, w) in d.accepting


def image_under_word(d: Dfa, s: StateSet, w: str) -> StateSet:
    """The image {run(d, q, w) : q in s}.  Never grows."""
    if s.owner != d:
        raise ValueError("state set does not belong to this automaton")
    return StateSet(d, frozenset(run(d, q, w) for q in s.members))


_COMBINE_OPS = {
    "and": lambda a, b: a and b,
    "or": lambda a, b: a or b,
    "and-not": lambda a, b: a and not b,
    "xor": lambda a, b: a != b,
}


def combine(a: Dfa, b: Dfa, op: str) -> Dfa:
    """Product automaton on reachable state pairs for a boolean combination."""
    if a.alphabet_size != b.alphabet_size:
        raise ValueError("alphabet mismatch in combine")
    try:
        f = _COMBINE_OPS[op]
    except KeyError:
        raise ValueError(f"unknown op {op!r}; expected one of {sorted(_COMBINE_OPS)}")
    k = a.alphabet_size
    index = {(0, 0): 0}
    order = [(0, 0)]
    rows = []
    queue = deque([(0, 0)])
    while queue:
        p, q = queue.popleft()
        row = []
        for s in range(k):
            t = (a.transitions[p][s], b.transitions[q][s])
            if t not in index:
                index[t] = len(order)
                order.append(t)
                queue.append(t)
            row.append(index[t])
        rows.append(tuple(row))
    acc = frozenset(
        i for i, (p, q) in enumerate(order) if f(p in a.accepting, q in b.accepting)
    )
    return Dfa(k, tuple(rows), acc)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet_size, d.transitions,
               frozenset(range(d.state_count)) - d.accepting)


def is_empty(d: Dfa) -> tuple[bool, Optional[str]]:
    """Emptiness check; returns a shortest accepted word when nonempty."""
    if 0 in d.accepting:
        return False, ""
    parent: dict[int, tuple[int, int]] = {}
    seen = {0}
    queue = deque([0])
    while queue:
        q = queue.popleft()
        for s in range(d.alphabet_size):
            t = d.transitions[q][s]
            if t not in seen:
                seen.add(t)
                parent[t] = (q, s)
                if t in d.accepting:
                    syms = []
                    cur = t
                    while cur != 0:
                        cur, sym = parent[cur][0], parent[cur][1]
                        syms.append(sym)
                    return False, symbols_word(reversed(syms))
                queue.append(t)
    return True, None


def includes(a: Dfa, b: Dfa) -> bool:
    """L(b) subseteq L(a)."""
    return is_empty(combine(b, a, "and-not"))[0]


def equivalent(a: Dfa, b: Dfa) -> bool:
    return is_empty(combine(a, b, "xor"))[0]


def _reachable(d: Dfa) -> list[int]:
    seen = [False] * d.state_count
    seen[0] = True
    order = [0]
    queue = deque([0])
    while queue:
        q = queue.popleft()
        for t in d.transitions[q]:
            if not seen[t]:
                seen[t] = True
                order.append(t)
                queue.append(t)
    return order


def canonicalize(d: Dfa) -> Dfa:
    """Renumber states in breadth-first first-visit order from the start.

    Unreachable states are dropped.  Language-preserving; equal structures
    over equal languages get byte-identical encodings only after minimize().
    """
    order = _reachable(d)
    index = {q: i for i, q in enumerate(order)}
    rows = tuple(
        tuple(index[d.transitions[q][s]] for s in range(d.alphabet_size))
        for q in order
    )
    acc = frozenset(index[q] for q in d.accepting if q in index)
    return Dfa(d.alphabet_size, rows, acc)


def minimize(d: Dfa) -> Dfa:
    """The canonical minimal complete DFA for L(d).

    Moore partition refinement on the reachable part, followed by the
    breadth-first canonical renumbering, so two language-equal inputs
    produce structurally identical outputs.  A dead state survives exactly
    when the language is not total.
    """
    reach = _reachable(d)
    # Refine classes until stable; class id 0/1 seeded by acceptance.
    cls = {q: (1 if q in d.accepting else 0) for q in reach}
    while True:
        sig = {
            q: (cls[q],) + tuple(cls[d.transitions[q][s]] for s in range(d.alphabet_size))
            for q in reach
        }
        renum: dict[tuple, int] = {}
        new = {}
        for q in reach:
            new[q] = renum.setdefault(sig[q], len(renum))
        if len(set(new.values())) == len(set(cls.values())):
            cls = new
            break
        cls = new
    reps: dict[int, int] = {}
    for q in reach:
        reps.setdefault(cls[q], q)
    rows = tuple(
        tuple(cls[d.transitions[reps[c]][s]] for s in range(d.alphabet_size))
        for c in range(len(reps))
    )
    acc = frozenset(c for c, q in reps.items() if q in d.accepting)
    # Class ids are assigned in reach order and reach[0] is the start, so
    # the start's class is always 0.
    quotient = Dfa(d.alphabet_size, rows, acc)
    return canonicalize(quotient)


def determinize(
    transitions: list[list[frozenset[int] | set[int]]],
    start: Iterable[int],
    accepting: Iterable[int],
    alphabet_size: int,
    max_states: Optional[int] = None,
) -> Dfa:
    """Subset construction for an internal NFA (no public NFA type).

    transitions[q][a] is a set of targets; missing moves are empty sets.
    Raises BudgetError when the subset count exceeds max_states.
    """
    acc = set(accepting)
    start_set = frozenset(start)
    index = {start_set: 0}
    order = [start_set]
    rows = []
    queue = deque([start_set])
    while queue:
        cur = queue.popleft()
        row = []
        for s in range(alphabet_size):
            nxt = frozenset(t for q in cur for t in transitions[q][s])
            if nxt not in index:
                if max_states is not None and len(order) >= max_states:
                    raise BudgetError(
                        f"determinization exceeded {max_states} subset states"
                    )
                index[nxt] = len(order)
                order.append(nxt)
                queue.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
    dfa_acc = frozenset(i for i, sub in enumerate(order) if sub & acc)
    return Dfa(alphabet_size, tuple(rows), dfa_acc)


class BudgetError(RuntimeError):
    """A construction or search ran out of its explicit resource budget."""


def reverse(d: Dfa) -> Dfa:
    """Minimal complete DFA for the reversal of L(d)."""
    n = d.state_count
    rev: list[list[set[int]]] = [[set() for _ in range(d.alphabet_size)] for _ in range(n)]
    for q in range(n):
        for s in range(d.alphabet_size):
            rev[d.transitions[q][s]][s].add(q)
    if not d.accepting:
        return minimize(Dfa(d.alphabet_size,
                            tuple((0,) * d.alphabet_size for _ in range(1)),
                            frozenset()))
    sub = determinize(rev, d.accepting, {0}, d.alphabet_size)
    return minimize(sub)


def zero_cycle_length(d: Dfa, q: int) -> Optional[int]:
    """Least i >= 1 with run(d, q, 0^i) == q, if q lies on a 0-cycle."""
    if not 0 <= q < d.state_count:
        raise ValueError(f"state {q} out of range")
    cur = q
    for i in range(1, d.state_count + 1):
        cur = d.transitions[cur][0]
        if cur == q:
            return i
    return None


def zpath(d: Dfa, q: int, i: Optional[int] = None) -> StateSet:
    """States reached from q by 0^j for j <= i that are not in a zero-cycle.

    With i omitted, uses the automaton's state count (the full zpath).
    """
    if i is None:
        i = d.state_count
    traj = []
    cur = q
    for _ in range(i + 1):
        traj.append(cur)
        cur = d.transitions[cur][0]
    members = frozenset(s for s in set(traj) if zero_cycle_length(d, s) is None)
    return StateSet(d, members)


def enumerate_canonical(p: int, alphabet_size: int) -> Iterator[Dfa]:
    """One representative per isomorphism class of reachable structures.

    Yields every complete transition structure with at most p states, all
    reachable from the start, numbered in first-visit order over the scan
    (state 0 symbol 0, state 0 symbol 1, ...).  Accepting sets are left
    empty; use accepting_variants() to expand a structure.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    k = alphabet_size

    def rec(rows: list[list[int]], m: int, idx: int) -> Iterator[Dfa]:
        if idx == m * k:
            yield Dfa(k, tuple(tuple(r) for r in rows), frozenset())
            return
        q, a = divmod(idx, k)
        limit = m + 1 if m < p else m
        for t in range(limit):
            grew = t == m
            if grew:
                rows.append([0] * k)
            rows[q][a] = t
            yield from rec(rows, m + 1 if grew else m, idx + 1)
            if grew:
                rows.pop()

    yield from rec([[0] * k], 1, 0)


def accepting_variants(d: Dfa) -> Iterator[Dfa]:
    """All 2^n accepting-set variants of a transition structure."""
    n = d.state_count
    for mask in range(1 << n):
        yield Dfa(d.alphabet_size, d.transitions,
                  frozenset(q for q in range(n) if mask >> q & 1))


def dfa_to_text(d: Dfa, provenance: Optional[str] = None) -> str:
    """Serialize to the one-automaton text format."""
    lines = []
    if provenance is not None:
        lines.append(f"# provenance: {provenance}")
    lines.append(f"dfa {d.alphabet_size} {d.state_count}")
    lines.append("accepting " + " ".join(str(q) for q in sorted(d.accepting)))
    for q, row in enumerate(d.transitions):
        lines.append(f"state {q}: " + " ".join(str(t) for t in row))
    return "\n".join(lines) + "\n"


def dfa_from_text(text: str) -> tuple[Dfa, Optional[str]]:
    """Parse the text format; returns (dfa, provenance-or-None).

    Rejects partial transition tables and out-of-range ids.
    """
    provenance = None
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("provenance:"):
                provenance = body[len("provenance:"):].strip()
            continue
        lines.append(line)
    if not lines or not lines[0].startswith("dfa "):
        raise ValueError("missing 'dfa <alphabet_size> <state_count>' header")
    _, k_s, n_s = lines[0].split()
    k, n = int(k_s), int(n_s)
    if len(lines) < 2 or not lines[1].startswith("accepting"):
        raise ValueError("missing 'accepting' line")
    acc = frozenset(int(t) for t in lines[1].split()[1:])
    rows: dict[int, tuple[int, ...]] = {}
    for line in lines[2:]:
        if not line.startswith("state "):
            raise ValueError(f"unexpected line: {line!r}")
        head, _, rest = line.partition(":")
        q = int(head.split()[1])
        targets = tuple(int(t) for t in rest.split())
        if len(targets) != k:
            raise ValueError(f"state {q} has {len(targets)} targets, expected {k}")
        if q in rows:
            raise ValueError(f"duplicate state line for {q}")
        rows[q] = targets
    if sorted(rows) != list(range(n)):
        raise ValueError("partial transition table")
    return Dfa(k, tuple(rows[q] for q in range(n)), acc), provenance
