"""Exact sparse row reduction over Q(i)."""

from __future__ import annotations

from .scalars import axpy


class EchelonBasis:
    """Incrementally maintained reduced row echelon basis of sparse vectors.

    Rows are dicts ``key -> GaussianRational``; every row has coefficient 1 at
    its pivot and no row mentions another row's pivot.  With ``order`` the
    pivot of a new row is its smallest key under ``order``, so rows whose
    pivot sorts after some column never mention that column.
    """

    def __init__(self, order=None):
        self.rows: dict = {}  # pivot -> row
        self.order = order

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for piv in [k for k in v if k in self.rows]:
            c = v.get(piv)
            if c:
                axpy(v, self.rows[piv], -c)
        return v

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        v = self.reduce(vec)
        if not v:
            return False
        piv = next(iter(v)) if self.order is None else min(v, key=self.order)
        inv = v[piv].inverse()
        v = {k: c * inv for k, c in v.items()}
        for row in self.rows.values():
            c = row.get(piv)
            if c:
                axpy(row, v, -c)
        self.rows[piv] = v
        return True


def rank(vectors) -> int:
    eb = EchelonBasis()
    for v in vectors:
        eb.add(v)
    return eb.rank
