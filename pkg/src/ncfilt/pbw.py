"""PBW straightening of products of Lie basis elements, truncated by NC-order.

A PBW monomial is a nondecreasing tuple of global basis indices (generators
first, then Lie elements of degree >= 2).  Rewriting uses ``v u -> u v + [v, u]``
for ``v > u``; every bracket raises the NC-order by one, and terms whose order
exceeds the truncation are discarded.  Termination: at fixed NC-order the
inversion count drops with every swap, and the NC-order is bounded.
"""

from gmpy2 import mpq


class PBWEngine:
    """Memoized straightening for a fixed Lie basis and truncation ``d``."""

    def __init__(self, basis, d):
        self.basis = basis
        self.d = d
        self.ords = basis.ords
        self._memo = {}

    def order(self, seq):
        o = self.ords
        return sum(o[i] for i in seq)

    def mul_elem(self, seq, u):
        """Normal form of ``seq * u`` for a normal monomial ``seq``."""
        if not seq or seq[-1] <= u:
            if self.order(seq) + self.ords[u] > self.d:
                return {}
            return {seq + (u,): mpq(1)}
        key = (seq, u)
        r = self._memo.get(key)
        if r is not None:
            return r
        if self.order(seq) + self.ords[u] > self.d:
            self._memo[key] = {}
            return {}
        v = seq[-1]
        head = seq[:-1]
        out = {}
        for s, c in self.mul_elem(head, u).items():
            for s2, c2 in self.mul_elem(s, v).items():
                out[s2] = out.get(s2, 0) + c * c2
        for w, cw in self.basis.bracket(v, u).items():
            for s2, c2 in self.mul_elem(head, w).items():
                out[s2] = out.get(s2, 0) + cw * c2
        r = {s: c for s, c in out.items() if c}
        self._memo[key] = r
        return r

    def mul_nf_seq(self, nf, seq):
        """Right-multiply a normal-form dict by the letters of ``seq`` in turn."""
        cur = nf
        for u in seq:
            nxt = {}
            for s, c in cur.items():
                for s2, c2 in self.mul_elem(s, u).items():
                    nxt[s2] = nxt.get(s2, 0) + c * c2
            cur = {s: c for s, c in nxt.items() if c}
            if not cur:
                break
        return cur

    def normalize(self, seq):
        """Normal form of an arbitrary sequence of basis indices."""
        return self.mul_nf_seq({(): mpq(1)}, seq)
