"""Index-set tracer used for symbolic Jacobian sparsity detection.

Each traced value carries the set of input indices it depends on, plus a
reference primal value so that branches in user code resolve the same way
they would at the supplied reference point.  Every operation unions the
operand sets; constants contribute nothing.
"""

from __future__ import annotations

import math

_EMPTY = frozenset()


class IndexSet:
    __slots__ = ("deps", "val")

    def __init__(self, deps=_EMPTY, val=0.0):
        self.deps = frozenset(deps)
        self.val = float(val)

    def __repr__(self):
        return f"IndexSet({sorted(self.deps)}, val={self.val})"

    def _combine(self, other, fn):
        if isinstance(other, IndexSet):
            return IndexSet(self.deps | other.deps, fn(self.val, other.val))
        return IndexSet(self.deps, fn(self.val, float(other)))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: b - a)

    def __neg__(self):
        return IndexSet(self.deps, -self.val)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._combine(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._combine(other, lambda a, b: b / a)

    def __pow__(self, other):
        return self._combine(other, lambda a, b: a ** b)

    def __rpow__(self, other):
        return self._combine(other, lambda a, b: b ** a)

    def _map(self, fn):
        return IndexSet(self.deps, fn(self.val))

    # comparisons resolve branches at the reference point
    def __lt__(self, other):
        return self.val < _val(other)

    def __le__(self, other):
        return self.val <= _val(other)

    def __gt__(self, other):
        return self.val > _val(other)

    def __ge__(self, other):
        return self.val >= _val(other)


def _val(x):
    return x.val if isinstance(x, IndexSet) else float(x)


def elementary(name, x: IndexSet) -> IndexSet:
    fn = getattr(math, name)
    return x._map(fn)
