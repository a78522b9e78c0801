"""Tensor powers A^{(x)n} of a graded algebra, modelling H*(X^n), together
with the diagonal pullback (n-fold multiplication) and its kernel.

Basis elements of the tensor power are n-tuples of base basis indices,
ordered lexicographically.  Products of basic tensors are computed on
demand with the Koszul sign

    (a_1 x ... x a_n)(b_1 x ... x b_n)
        = (-1)^{sum_{i>j} |a_i||b_j|} (a_1 b_1 x ... x a_n b_n).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .algebra import AlgebraError, Element, GradedAlgebra
from .scalar import row_reduce

Key = Tuple[int, ...]


class TensorAlgebra:
    """The n-fold graded tensor power of ``base``."""

    def __init__(self, base: GradedAlgebra, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError("tensor power needs n >= 1, got %r" % (n,))
        self.base = base
        self.n = n
        self.field = base.field
        self._mul_cache: Dict[Tuple[Key, Key], Dict[Key, object]] = {}
        self._pull_cache: Dict[Key, Dict[int, object]] = {}
        self._by_degree: Optional[Dict[int, List[Key]]] = None

    @property
    def dim(self) -> int:
        return self.base.dim ** self.n

    @property
    def top_degree(self) -> int:
        return self.n * self.base.top_degree

    @property
    def unit_key(self) -> Key:
        return (self.base.unit_index,) * self.n

    def degree(self, key: Key) -> int:
        degs = self.base.degrees
        return sum(degs[i] for i in key)

    def basis_name(self, key: Key) -> str:
        return "⊗".join(self.base.names[i] for i in key)

    def basis(self) -> Iterator[Key]:
        return itertools.product(range(self.base.dim), repeat=self.n)

    def basis_in_degree(self, d: int) -> List[Key]:
        if self._by_degree is None:
            buckets: Dict[int, List[Key]] = {}
            for key in self.basis():
                buckets.setdefault(self.degree(key), []).append(key)
            self._by_degree = buckets
        return list(self._by_degree.get(d, []))

    def degrees_present(self) -> List[int]:
        self.basis_in_degree(0)
        return sorted(self._by_degree)

    def __eq__(self, other):
        if not isinstance(other, TensorAlgebra):
            return NotImplemented
        return self.n == other.n and (self.base is other.base or self.base == other.base)

    def __hash__(self):
        return hash((self.n, self.base))

    def __repr__(self):
        return "TensorAlgebra(%r, n=%d)" % (self.base, self.n)

    # multiplication

    def koszul_sign(self, a: Key, b: Key) -> int:
        degs = self.base.degrees
        total = 0
        moved = 0
        # b_j moves left past a_{j+1}, ..., a_n
        for i in range(self.n):
            total += degs[a[i]] * moved
            moved += degs[b[i]]
        return -1 if total % 2 else 1

    def mul_basis(self, a: Key, b: Key) -> Dict[Key, object]:
        hit = self._mul_cache.get((a, b))
        if hit is not None:
            return hit
        f = self.field
        slots = []
        for ai, bi in zip(a, b):
            p = self.base.mul_basis(ai, bi)
            if not p:
                self._mul_cache[a, b] = {}
                return {}
            slots.append(list(p.items()))
        sign = f.coerce(self.koszul_sign(a, b))
        out: Dict[Key, object] = {}
        for combo in itertools.product(*slots):
            c = sign
            for _, v in combo:
                c = f.mul(c, v)
            if c != 0:
                out[tuple(k for k, _ in combo)] = c
        self._mul_cache[a, b] = out
        return out

    # elements

    def element(self, coeffs: Mapping[Key, object]) -> Element:
        for key in coeffs:
            self._check_key(key)
        return Element(self, {tuple(k): v for k, v in coeffs.items()})

    def _check_key(self, key) -> None:
        if len(key) != self.n or not all(0 <= i < self.base.dim for i in key):
            raise AlgebraError("%r is not a basis tuple of %r" % (key, self))

    def basis_element(self, key: Key) -> Element:
        self._check_key(key)
        return Element._raw(self, {tuple(key): self.field.one})

    def unit(self) -> Element:
        return Element._raw(self, {self.unit_key: self.field.one})

    def zero(self) -> Element:
        return Element._raw(self, {})

    def pure(self, factors) -> Element:
        """The tensor e_1 x ... x e_n of base elements, expanded linearly."""
        if len(factors) != self.n:
            raise ValueError("need %d factors" % self.n)
        f = self.field
        terms: Dict[Key, object] = {(): f.one}
        for e in factors:
            if e.algebra != self.base:
                raise AlgebraError("factor is not in the base algebra")
            terms = {k + (i,): f.mul(c, v) for k, c in terms.items()
                     for i, v in e.raw_terms().items()}
        return Element(self, terms)

    def slot_class(self, e: Element, i: int) -> Element:
        return slot_class(self, e, i)

    def diagonal_pullback(self, e: Element) -> Element:
        return diagonal_pullback(self, e)

    def _pullback_key(self, key: Key) -> Dict[int, object]:
        hit = self._pull_cache.get(key)
        if hit is not None:
            return hit
        base = self.base
        f = self.field
        acc: Dict[int, object] = {base.unit_index: f.one}
        for i in key:
            nxt: Dict[int, object] = {}
            for k, c in acc.items():
                for r, v in base.mul_basis(k, i).items():
                    nv = f.add(nxt.get(r, f.zero), f.mul(c, v))
                    if nv == 0:
                        nxt.pop(r, None)
                    else:
                        nxt[r] = nv
            acc = nxt
            if not acc:
                break
        self._pull_cache[key] = acc
        return acc


def tensor_power(base: GradedAlgebra, n: int) -> TensorAlgebra:
    return TensorAlgebra(base, n)


def slot_class(T: TensorAlgebra, e: Element, i: int) -> Element:
    """The pullback p_i^*(e) = 1 x ... x e x ... x 1 (slot ``i`` is 1-based)."""
    if not 1 <= i <= T.n:
        raise IndexError("slot %d out of range 1..%d" % (i, T.n))
    if e.algebra != T.base:
        raise AlgebraError("element is not in the base algebra")
    if not e.is_homogeneous():
        raise AlgebraError("slot_class expects a homogeneous element")
    u = T.base.unit_index
    terms = {}
    for k, v in e.raw_terms().items():
        key = [u] * T.n
        key[i - 1] = k
        terms[tuple(key)] = v
    return Element._raw(T, terms)


def diagonal_pullback(T: TensorAlgebra, e: Element) -> Element:
    """d_n^*: the multiplication map a_1 x ... x a_n -> a_1 ... a_n."""
    if e.algebra != T:
        raise AlgebraError("element is not in %r" % (T,))
    f = T.field
    out: Dict[int, object] = {}
    for key, c in e.raw_terms().items():
        for r, v in T._pullback_key(key).items():
            nv = f.add(out.get(r, f.zero), f.mul(c, v))
            if nv == 0:
                out.pop(r, None)
            else:
                out[r] = nv
    return Element._raw(T.base, out)


@dataclass
class KernelBasis:
    """A basis of ker(d_n^*), degree by degree (positive degrees only)."""

    tensor: TensorAlgebra
    by_degree: Dict[int, List[Element]] = dc_field(default_factory=dict)
    image_rank: Dict[int, int] = dc_field(default_factory=dict)

    def dim(self, d: int) -> int:
        return len(self.by_degree.get(d, []))

    def degrees(self) -> List[int]:
        return sorted(d for d, v in self.by_degree.items() if v)

    def elements(self) -> List[Element]:
        return [e for d in sorted(self.by_degree) for e in self.by_degree[d]]

    def __len__(self):
        return sum(len(v) for v in self.by_degree.values())


def kernel_in_degree(T: TensorAlgebra, d: int) -> Tuple[List[Element], int]:
    """Kernel basis of d_n^* on the degree-``d`` part, and the rank of the map."""
    cols = T.basis_in_degree(d)
    if not cols:
        return [], 0
    targets = T.base.basis_in_degree(d)
    row_of = {b: r for r, b in enumerate(targets)}
    rows: List[Dict[int, object]] = [{} for _ in targets]
    for c, key in enumerate(cols):
        for b, v in T._pullback_key(key).items():
            rows[row_of[b]][c] = v
    red = row_reduce(rows, T.field, ncols=len(cols))
    kernel = [Element._raw(T, {cols[c]: v for c, v in vec.items()}) for vec in red.kernel_basis()]
    return kernel, red.rank


def kernel_of_diagonal(T: TensorAlgebra, max_degree: Optional[int] = None) -> KernelBasis:
    """Exact basis of ker(d_n^*) in degrees 1 .. min(max_degree, top degree)."""
    top = T.top_degree if max_degree is None else min(max_degree, T.top_degree)
    kb = KernelBasis(T)
    for d in range(1, top + 1):
        elems, r = kernel_in_degree(T, d)
        kb.by_degree[d] = elems
        kb.image_rank[d] = r
    return kb
