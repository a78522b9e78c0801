"""Lower and upper bounds for the higher topological complexity TC_n(X).

The lower bound comes from the zero-divisor cup-length: if m classes in
the kernel of d_n^*: H*(X)^{(x)n} -> H*(X) have nonzero product, then
TC_n(X) >= m + 1.  For a space with nontrivial cohomology this is always
at least n.  Upper bounds come from the category, TC_n(X) <= n cat(X) + 1,
and from the growth estimate TC_n(X) <= n TC_2(X) - n + 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from functools import reduce
from typing import Dict, List, Optional, Tuple

from .algebra import Element, GradedAlgebra, SpaceDescriptor, mk_sphere, mk_torus
from .scalar import EchelonSpace, FieldSpec, Q
from .tensor import KernelBasis, TensorAlgebra, diagonal_pullback, kernel_of_diagonal

log = logging.getLogger(__name__)


class MetadataError(ValueError):
    """Space metadata is missing or contradicts the computed bounds."""


@dataclass
class Certificate:
    """Zero divisors whose product (taken left to right) is nonzero."""

    factors: List[Element]
    product: Element

    def verify(self) -> List[str]:
        """Recompute everything from scratch; return a list of problems."""
        problems = []
        if not self.factors:
            return ["empty certificate"]
        T = self.factors[0].algebra
        for i, z in enumerate(self.factors):
            if not diagonal_pullback(T, z).is_zero():
                problems.append("factor %d is not in ker d_n^*" % (i + 1))
        prod = reduce(lambda a, b: a * b, self.factors)
        if prod != self.product:
            problems.append("stored product does not match the recomputed one")
        if prod.is_zero():
            problems.append("product vanishes")
        return problems


@dataclass
class ZclResult:
    n: int
    m: int
    field: FieldSpec
    certificate: Optional[Certificate] = None
    # dimension of the k-th power of the kernel ideal, k = 1..m
    power_dims: List[int] = dc_field(default_factory=list)


def _ideal_generators(T: TensorAlgebra, kernel: KernelBasis) -> List[Element]:
    """A subset of the kernel basis generating ker d_n^* as an ideal."""
    f = T.field
    spans: Dict[int, EchelonSpace] = {}
    basis = [T.basis_element(k) for d in T.degrees_present() for k in T.basis_in_degree(d)]
    gens = []
    for d in kernel.degrees():
        for z in kernel.by_degree[d]:
            space = spans.setdefault(d, EchelonSpace(f))
            if space.contains(z.raw_terms()):
                continue
            gens.append(z)
            for a in basis:
                if T.degree(next(iter(a.raw_terms()))) + d > T.top_degree:
                    continue
                p = a * z
                if p:
                    spans.setdefault(p.degree, EchelonSpace(f)).insert(p.raw_terms())
    return gens


def zero_divisor_cup_length(base: GradedAlgebra, n: int, want_certificate: bool = False) -> ZclResult:
    """Largest m such that some m elements of ker d_n^* have nonzero product.

    Computed by iterating powers Z, Z^2, ... of the kernel ideal Z as graded
    subspaces until they vanish.  Z^{k+1} is spanned by products w*g with w
    running over a spanning set of Z^k and g over ideal generators of Z.
    """
    if not isinstance(n, int) or n <= 0:
        raise ValueError("n must be a positive integer, got %r" % (n,))
    f = base.field
    if n == 1:
        return ZclResult(1, 0, f)
    T = TensorAlgebra(base, n)
    kernel = kernel_of_diagonal(T)
    if not len(kernel):
        return ZclResult(n, 0, f)
    gens = _ideal_generators(T, kernel)
    log.debug("n=%d: kernel dim %d, %d ideal generators", n, len(kernel), len(gens))

    # spanning vectors of the current power, with the factors producing them
    current: List[Tuple[Element, List[Element]]] = [(z, [z]) for z in kernel.elements()]
    dims = [len(current)]
    k = 1
    while True:
        spaces: Dict[int, EchelonSpace] = {}
        nxt = []
        for w, factors in current:
            dw = w.degree
            for g in gens:
                if dw + g.degree > T.top_degree:
                    continue
                p = w * g
                if not p:
                    continue
                space = spaces.setdefault(p.degree, EchelonSpace(f))
                if space.insert(p.raw_terms()):
                    nxt.append((p, factors + [g]))
        if not nxt:
            break
        current = nxt
        dims.append(len(nxt))
        k += 1
    cert = None
    if want_certificate:
        product, factors = current[0]
        cert = Certificate(factors, product)
    return ZclResult(n, k, f, cert, dims)


def tc_lower(desc: SpaceDescriptor, n: int, zcl: Optional[ZclResult] = None) -> Tuple[int, str]:
    """Cohomological lower bound for TC_n, tagged with its source."""
    if n == 1:
        return 1, "nontrivial-cohomology"
    if n < 1:
        raise ValueError("n must be >= 1")
    if zcl is None:
        zcl = zero_divisor_cup_length(desc.algebra, n)
    general = 1 if desc.algebra.is_trivial() else n
    if zcl.m + 1 >= general:
        return zcl.m + 1, "zcl"
    return general, "nontrivial-cohomology"


def tc_upper(desc: SpaceDescriptor, n: int) -> Tuple[int, Dict[str, Optional[int]]]:
    """Upper bound min(n cat + 1, n TC_2 - n + 1) and its breakdown."""
    if n < 2:
        raise ValueError("upper bounds need n >= 2")
    if desc.cat_upper is None:
        raise MetadataError("space %s has no cat upper bound; supply meta.cat_upper" % desc.name)
    upper_cat = n * desc.cat_upper + 1
    upper_growth = None if desc.tc2_known is None else n * desc.tc2_known - n + 1
    candidates = [upper_cat] + ([upper_growth] if upper_growth is not None else [])
    return min(candidates), {"cat": upper_cat, "growth": upper_growth}


@dataclass
class BoundReport:
    space: str
    n: int
    field: FieldSpec
    lower: int
    lower_source: str
    zcl: ZclResult
    upper_cat: int
    upper_growth: Optional[int]
    upper: int
    exact: Optional[int]

    def to_dict(self) -> dict:
        cert = None
        if self.zcl.certificate is not None:
            c = self.zcl.certificate
            cert = {"factors": [_element_json(z) for z in c.factors],
                    "product": _element_json(c.product)}
        return {
            "space": self.space, "n": self.n, "field": str(self.field),
            "lower": self.lower, "lower_source": self.lower_source, "zcl": self.zcl.m,
            "upper": self.upper, "upper_cat": self.upper_cat, "upper_growth": self.upper_growth,
            "exact": self.exact, "certificate": cert,
        }


def _element_json(e: Element) -> List[list]:
    out = []
    for key, c in e.terms():
        v = c.value
        coeff = str(v) if getattr(v, "denominator", 1) != 1 else str(int(v))
        out.append([e.algebra.basis_name(key), coeff])
    return out


def bounds_report(desc: SpaceDescriptor, n: int, want_certificate: bool = False) -> BoundReport:
    if n < 2:
        raise ValueError("bounds_report needs n >= 2")
    zcl = zero_divisor_cup_length(desc.algebra, n, want_certificate)
    lower, source = tc_lower(desc, n, zcl)
    upper, parts = tc_upper(desc, n)
    if lower > upper:
        raise MetadataError(
            "%s, n=%d: cohomological lower bound %d exceeds upper bound %d "
            "(cat_upper=%s, tc2_known=%s); the metadata is inconsistent"
            % (desc.name, n, lower, upper, desc.cat_upper, desc.tc2_known))
    return BoundReport(desc.name, n, desc.field, lower, source, zcl, parts["cat"],
                       parts["growth"], upper, lower if lower == upper else None)


@dataclass
class GapRecord:
    n: int
    sphere: BoundReport
    torus: BoundReport

    def __str__(self):
        return "S²: %d (exact) | T²: ≥%d" % (self.sphere.exact, self.torus.lower)


def gap_demo(n: int, field: FieldSpec = Q) -> GapRecord:
    """Witness that TC_n separates S^2 and T^2 although both have TC_2 = 3."""
    if n < 3:
        raise ValueError("the S^2 / T^2 gap needs n >= 3 (TC_2 agrees)")
    s2 = bounds_report(mk_sphere(2, field), n)
    t2 = bounds_report(mk_torus(2, field), n, want_certificate=True)
    if s2.exact != n + 1:
        raise AssertionError("TC_%d(S^2) should be exactly %d, got %r" % (n, n + 1, s2.exact))
    if t2.lower < 2 * n - 1:
        raise AssertionError("TC_%d(T^2) lower bound %d below %d" % (n, t2.lower, 2 * n - 1))
    if not t2.lower > s2.exact:
        raise AssertionError("no gap at n=%d" % n)
    return GapRecord(n, s2, t2)
