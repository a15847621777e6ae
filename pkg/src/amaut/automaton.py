"""Morphological automata: acceptors whose accept states carry payloads.

States are integers ``0..n-1`` with a single start state.  Transitions are
labelled with one canonical symbol or with ``EPS`` (the empty string).
Every accept state holds a non-empty frozenset of :class:`Payload`.
"""

from collections import deque
from dataclasses import dataclass, replace

EPS = ""


class AutomatonError(ValueError):
    pass


class EmptySurface(AutomatonError):
    pass


class NotDeterministic(AutomatonError):
    pass


@dataclass(frozen=True)
class Segment:
    """One morpheme of an accepted word, ``word[start:end]``."""

    cls: str
    component: str
    start: int
    end: int
    role: str = "stem"
    root: str = ""
    originals: tuple = ()

    def shifted(self, offset):
        return replace(self, start=self.start + offset, end=self.end + offset)

    def key(self):
        return (self.start, self.end, self.cls, self.component, self.root)


@dataclass(frozen=True)
class Payload:
    descriptors: frozenset = frozenset()
    rule: str = ""
    segments: tuple = ()

    @property
    def original_refs(self):
        refs = []
        for seg in self.segments:
            refs.extend(o for o in seg.originals if o not in refs)
        return tuple(refs)

    @property
    def length(self):
        return self.segments[-1].end if self.segments else 0

    def compose(self, other):
        """Payload of ``u + v`` given payloads of ``u`` (self) and ``v``."""
        shift = self.length
        if self.rule and other.rule and self.rule != other.rule:
            rule = f"{self.rule}+{other.rule}"
        else:
            rule = self.rule or other.rule
        return Payload(
            self.descriptors | other.descriptors,
            rule,
            self.segments + tuple(s.shifted(shift) for s in other.segments),
        )

    def sort_key(self):
        return (
            self.rule,
            tuple(s.key() for s in self.segments),
            tuple(sorted((d.property, d.code) for d in self.descriptors)),
        )


class Amaut:
    """Immutable automaton ``<Q, Sigma, q0, F, tau>``."""

    __slots__ = ("n_states", "start", "transitions", "accepts", "_closures", "__weakref__")

    def __init__(self, n_states, start, transitions, accepts):
        if not 0 <= start < max(n_states, 1):
            raise AutomatonError("start state out of range")
        trans = []
        for q in range(n_states):
            row = transitions[q] if q < len(transitions) else {}
            frozen = {}
            for sym, dsts in row.items():
                if sym != EPS and len(sym) != 1:
                    raise AutomatonError(f"bad transition symbol {sym!r}")
                if dsts:
                    frozen[sym] = tuple(sorted(set(dsts)))
            trans.append(frozen)
        acc = {}
        for q, payloads in accepts.items():
            payloads = frozenset(payloads)
            if not payloads:
                raise AutomatonError(f"accept state {q} has no payload")
            acc[q] = payloads
        self.n_states = n_states
        self.start = start
        self.transitions = tuple(trans)
        self.accepts = acc
        self._closures = {}

    def __repr__(self):
        return f"<Amaut states={self.n_states} accepts={len(self.accepts)} transitions={self.n_transitions}>"

    @property
    def alphabet(self):
        return frozenset(s for row in self.transitions for s in row if s != EPS)

    @property
    def n_transitions(self):
        return sum(len(d) for row in self.transitions for d in row.values())

    def payloads(self):
        result = set()
        for ps in self.accepts.values():
            result |= ps
        return result

    def is_deterministic(self):
        return all(
            sym != EPS and len(dsts) == 1 for row in self.transitions for sym, dsts in row.items()
        )

    def closure(self, states):
        result = set()
        for q in states:
            c = self._closures.get(q)
            if c is None:
                c = self._closure_of(q)
                self._closures[q] = c
            result |= c
        return frozenset(result)

    def _closure_of(self, q):
        seen = {q}
        stack = [q]
        while stack:
            s = stack.pop()
            for d in self.transitions[s].get(EPS, ()):
                if d not in seen:
                    seen.add(d)
                    stack.append(d)
        return frozenset(seen)

    def step(self, states, sym):
        nxt = set()
        for q in states:
            nxt.update(self.transitions[q].get(sym, ()))
        return self.closure(nxt)


class _Builder:
    def __init__(self):
        self.trans = []
        self.accepts = {}

    def state(self):
        self.trans.append({})
        return len(self.trans) - 1

    def add(self, src, sym, dst):
        self.trans[src].setdefault(sym, []).append(dst)

    def copy(self, a, with_accepts=True):
        offset = len(self.trans)
        for row in a.transitions:
            self.trans.append({sym: [d + offset for d in dsts] for sym, dsts in row.items()})
        if with_accepts:
            for q, ps in a.accepts.items():
                self.accepts[q + offset] = set(ps)
        return offset

    def build(self, start):
        return Amaut(len(self.trans), start, self.trans, self.accepts)


def empty():
    """Automaton with the empty language."""
    return Amaut(1, 0, [{}], {})


def atom(surface, payload):
    """Linear chain accepting exactly ``surface``."""
    if not surface:
        raise EmptySurface("atom needs a non-empty surface")
    b = _Builder()
    q = b.state()
    for ch in surface:
        nxt = b.state()
        b.add(q, ch, nxt)
        q = nxt
    b.accepts[q] = {payload}
    return b.build(0)


def concat(a, b):
    """Language ``{uv}``; each payload of ``u`` is composed with each payload of ``v``.

    ``b`` is copied once per distinct payload of ``a`` so that composition stays
    path-exact (the copy knows which ``u`` payload led into it).
    """
    bld = _Builder()
    bld.copy(a, with_accepts=False)
    entry = {}
    for p in sorted(a.payloads(), key=Payload.sort_key):
        off = bld.copy(b, with_accepts=False)
        for q, ps in b.accepts.items():
            bld.accepts[q + off] = {p.compose(pb) for pb in ps}
        entry[p] = b.start + off
    for q, ps in sorted(a.accepts.items()):
        for p in sorted(ps, key=Payload.sort_key):
            bld.add(q, EPS, entry[p])
    return bld.build(a.start)


def union(*machines):
    """Language union with a fresh start state; payloads stay with their branch."""
    bld = _Builder()
    start = bld.state()
    for m in machines:
        off = bld.copy(m)
        bld.add(start, EPS, m.start + off)
    return bld.build(start)


def map_payloads(a, fn):
    accepts = {q: {fn(p) for p in ps} for q, ps in a.accepts.items()}
    return Amaut(a.n_states, a.start, [dict(row) for row in a.transitions], accepts)


def trim(a):
    """Drop states that are unreachable or cannot reach an accept state."""
    reach = {a.start}
    stack = [a.start]
    while stack:
        q = stack.pop()
        for dsts in a.transitions[q].values():
            for d in dsts:
                if d not in reach:
                    reach.add(d)
                    stack.append(d)
    rev = {}
    for q, row in enumerate(a.transitions):
        for dsts in row.values():
            for d in dsts:
                rev.setdefault(d, set()).add(q)
    live = set(a.accepts)
    stack = list(live)
    while stack:
        q = stack.pop()
        for p in rev.get(q, ()):
            if p not in live:
                live.add(p)
                stack.append(p)
    keep = sorted((reach & live) | {a.start})
    index = {q: i for i, q in enumerate(keep)}
    trans = []
    for q in keep:
        row = {}
        for sym, dsts in a.transitions[q].items():
            kept = [index[d] for d in dsts if d in index]
            if kept:
                row[sym] = kept
        trans.append(row)
    accepts = {index[q]: ps for q, ps in a.accepts.items() if q in index}
    return Amaut(len(keep), index[a.start], trans, accepts)


def determinize(a):
    """Subset construction; an accept subset carries the union of member payloads."""
    start = a.closure([a.start])
    ids = {start: 0}
    order = [start]
    trans = [{}]
    accepts = {}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        i = ids[cur]
        payloads = set()
        for q in cur:
            payloads |= a.accepts.get(q, frozenset())
        if payloads:
            accepts[i] = payloads
        syms = sorted({s for q in cur for s in a.transitions[q] if s != EPS})
        for sym in syms:
            nxt = a.step(cur, sym)
            if not nxt:
                continue
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
                trans.append({})
                queue.append(nxt)
            trans[i][sym] = [ids[nxt]]
    return Amaut(len(order), 0, trans, accepts)


def minimize(a):
    """Moore partition refinement; states with different payload sets never merge."""
    if not a.is_deterministic():
        raise NotDeterministic("minimize needs a deterministic automaton")
    a = trim(a)
    n = a.n_states
    initial = {}
    block = []
    for q in range(n):
        key = tuple(sorted(a.accepts.get(q, ()), key=Payload.sort_key))
        block.append(initial.setdefault(key, len(initial)))
    while True:
        sigs = {}
        new_block = []
        for q in range(n):
            sig = (block[q],) + tuple(
                (sym, block[dsts[0]]) for sym, dsts in sorted(a.transitions[q].items())
            )
            new_block.append(sigs.setdefault(sig, len(sigs)))
        stable = len(sigs) == len(set(block))
        block = new_block
        if stable:
            break
    # renumber blocks in BFS order from the start state
    numbering = {block[a.start]: 0}
    rep = {}
    queue = deque([a.start])
    seen = {a.start}
    while queue:
        q = queue.popleft()
        rep.setdefault(block[q], q)
        for sym, dsts in sorted(a.transitions[q].items()):
            d = dsts[0]
            if block[d] not in numbering:
                numbering[block[d]] = len(numbering)
            if d not in seen:
                seen.add(d)
                queue.append(d)
    trans = [{} for _ in numbering]
    accepts = {}
    for b, q in rep.items():
        i = numbering[b]
        for sym, dsts in a.transitions[q].items():
            trans[i][sym] = [numbering[block[dsts[0]]]]
        if q in a.accepts:
            accepts[i] = a.accepts[q]
    return Amaut(len(numbering), 0, trans, accepts)


def lookup(a, word):
    """All payloads of accepting runs on ``word``, in (rule, decomposition) order."""
    cur = a.closure([a.start])
    for ch in word:
        cur = a.step(cur, ch)
        if not cur:
            return []
    payloads = set()
    for q in cur:
        payloads |= a.accepts.get(q, frozenset())
    return sorted(payloads, key=Payload.sort_key)


def enumerate_payloads(a, max_len):
    """Map every accepted word of length <= ``max_len`` to its payloads."""
    result = {}
    start = a.closure([a.start])
    frontier = [("", start)]
    while frontier:
        nxt_frontier = []
        for word, states in frontier:
            payloads = set()
            for q in states:
                payloads |= a.accepts.get(q, frozenset())
            if payloads:
                result[word] = sorted(payloads, key=Payload.sort_key)
            if len(word) == max_len:
                continue
            syms = sorted({s for q in states for s in a.transitions[q] if s != EPS})
            for sym in syms:
                nxt = a.step(states, sym)
                if nxt:
                    nxt_frontier.append((word + sym, nxt))
        frontier = nxt_frontier
    return result


def enumerate_language(a, max_len):
    if max_len < 0:
        raise AutomatonError("max_len must be >= 0")
    return set(enumerate_payloads(a, max_len))


def count_words(a):
    """Number of distinct accepted words, or ``None`` for an infinite language."""
    d = trim(determinize(a))
    memo = {}
    on_path = set()
    stack = [(d.start, iter(d.transitions[d.start].values()))]
    on_path.add(d.start)
    while stack:
        q, it = stack[-1]
        for dsts in it:
            t = dsts[0]
            if t in on_path:
                return None
            if t not in memo:
                on_path.add(t)
                stack.append((t, iter(d.transitions[t].values())))
                break
        else:
            stack.pop()
            on_path.discard(q)
            memo[q] = (1 if q in d.accepts else 0) + sum(
                memo[ds[0]] for ds in d.transitions[q].values()
            )
    return memo[d.start]
