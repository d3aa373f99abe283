"""In-memory triple store with SPO, POS and OSP indexes."""

from __future__ import annotations

import threading
from collections.abc import Iterable, Iterator

from .terms import Triple, TriplePattern, Variable


def _add(index: dict, a, b, c) -> None:
    # Nested dicts keep insertion order, which makes match order deterministic.
    index.setdefault(a, {}).setdefault(b, {})[c] = None


class Graph:
    """A set of triples.

    Writes take a lock; :meth:`match` materialises its results under the
    same lock, so a reader never observes a half-applied insert.
    """

    def __init__(self, triples: Iterable[Triple] = ()):
        self._spo: dict = {}
        self._pos: dict = {}
        self._osp: dict = {}
        self._size = 0
        self._lock = threading.Lock()
        self.update(triples)

    def __len__(self) -> int:
        return self._size

    def __contains__(self, t: Triple) -> bool:
        return t.object in self._spo.get(t.subject, {}).get(t.predicate, {})

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.match(TriplePattern(Variable("s"), Variable("p"), Variable("o"))))

    def insert(self, t: Triple) -> bool:
        """Add ``t``; returns False if it was already present."""
        if not isinstance(t, Triple):
            raise TypeError(f"expected a Triple, got {type(t).__name__}")
        s, p, o = t.subject, t.predicate, t.object
        with self._lock:
            if o in self._spo.get(s, {}).get(p, {}):
                return False
            _add(self._spo, s, p, o)
            _add(self._pos, p, o, s)
            _add(self._osp, o, s, p)
            self._size += 1
        return True

    def update(self, triples: Iterable[Triple]) -> int:
        added = 0
        for t in triples:
            added += self.insert(t)
        return added

    def match(self, pattern: TriplePattern) -> list[Triple]:
        """All triples matching the concrete positions of ``pattern``."""
        s, p, o = pattern
        s = None if isinstance(s, Variable) else s
        p = None if isinstance(p, Variable) else p
        o = None if isinstance(o, Variable) else o
        with self._lock:
            return list(self._match(s, p, o))

    def _match(self, s, p, o) -> Iterator[Triple]:
        if s is not None:
            by_p = self._spo.get(s)
            if not by_p:
                return
            if p is not None:
                objs = by_p.get(p, {})
                if o is not None:
                    if o in objs:
                        yield Triple(s, p, o)
                else:
                    for oo in objs:
                        yield Triple(s, p, oo)
            elif o is not None:
                # s and o bound: OSP gives the predicates directly.
                for pp in self._osp.get(o, {}).get(s, {}):
                    yield Triple(s, pp, o)
            else:
                for pp, objs in by_p.items():
                    for oo in objs:
                        yield Triple(s, pp, oo)
        elif p is not None:
            by_o = self._pos.get(p)
            if not by_o:
                return
            if o is not None:
                for ss in by_o.get(o, {}):
                    yield Triple(ss, p, o)
            else:
                for oo, subjects in by_o.items():
                    for ss in subjects:
                        yield Triple(ss, p, oo)
        elif o is not None:
            for ss, preds in self._osp.get(o, {}).items():
                for pp in preds:
                    yield Triple(ss, pp, o)
        else:
            for ss, by_p in self._spo.items():
                for pp, objs in by_p.items():
                    for oo in objs:
                        yield Triple(ss, pp, oo)

    def index_sets(self) -> tuple[set, set, set]:
        """Triple sets enumerated from each index, for consistency checks."""
        with self._lock:
            spo = {(s, p, o) for s, d in self._spo.items() for p, e in d.items() for o in e}
            pos = {(s, p, o) for p, d in self._pos.items() for o, e in d.items() for s in e}
            osp = {(s, p, o) for o, d in self._osp.items() for s, e in d.items() for p in e}
        return spo, pos, osp
