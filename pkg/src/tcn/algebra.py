"""Finite-dimensional graded-commutative algebras given by a basis and
structure constants.

A :class:`GradedAlgebra` is the model of a cohomology ring H*(X; F).  The
builders ``mk_sphere``, ``mk_torus``, ``mk_rp``, ``mk_cp`` and ``product``
return :class:`SpaceDescriptor` objects that bundle an algebra with the
geometric metadata used by the bound combinators.

Example::

    >>> T = mk_torus(2)
    >>> x, y = T.algebra.gen("x"), T.algebra.gen("y")
    >>> x * y
    xy
    >>> y * x
    -xy
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple

from .scalar import FieldSpec, Q, Scalar

Table = Dict[Tuple[int, int], Dict[int, object]]


class AlgebraError(ValueError):
    """Invalid algebra data, or an operation mixing different algebras."""


class Element:
    """A sparse linear combination of basis keys of a (tensor-)algebra.

    The owning algebra must provide ``field``, ``degree(key)`` and
    ``mul_basis(k1, k2) -> {key: raw coefficient}``.  Zero coefficients are
    never stored.
    """

    __slots__ = ("algebra", "_terms")

    def __init__(self, algebra, terms: Optional[Mapping[Hashable, object]] = None):
        self.algebra = algebra
        f = algebra.field
        clean = {}
        if terms:
            for k, v in terms.items():
                v = f.coerce(v)
                if v != 0:
                    clean[k] = v
        self._terms = clean

    @classmethod
    def _raw(cls, algebra, terms: Dict[Hashable, object]) -> "Element":
        # trusted constructor: terms are already canonical and nonzero
        e = cls.__new__(cls)
        e.algebra = algebra
        e._terms = terms
        return e

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field

    def terms(self) -> List[Tuple[Hashable, Scalar]]:
        return [(k, Scalar(self.field, v)) for k, v in sorted(self._terms.items())]

    def raw_terms(self) -> Dict[Hashable, object]:
        return dict(self._terms)

    def coeff(self, key) -> Scalar:
        return Scalar(self.field, self._terms.get(key, 0))

    def support(self) -> List[Hashable]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set:
        return {self.algebra.degree(k) for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> Optional[int]:
        """Degree of a nonzero homogeneous element; None for zero."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise AlgebraError("element %s is not homogeneous" % self)
        return degs.pop()

    def _same(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError("expected an Element, got %r" % (other,))
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._same(other)
        f = self.field
        out = dict(self._terms)
        for k, v in other._terms.items():
            nv = f.add(out.get(k, f.zero), v)
            if nv == 0:
                out.pop(k, None)
            else:
                out[k] = nv
        return Element._raw(self.algebra, out)

    def __neg__(self):
        f = self.field
        return Element._raw(self.algebra, {k: f.neg(v) for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Element":
        f = self.field
        c = f.coerce(c)
        if c == 0:
            return Element._raw(self.algebra, {})
        return Element._raw(self.algebra, {k: f.mul(c, v) for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._same(other)
            return Element._raw(self.algebra, _multiply(self.algebra, self._terms, other._terms))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.algebra.unit()
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        same = self.algebra is other.algebra or self.algebra == other.algebra
        return same and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, v in sorted(self._terms.items()):
            name = self.algebra.basis_name(k)
            if v == 1:
                parts.append("+%s" % name)
            elif self.field.p is None and v == -1:
                parts.append("-%s" % name)
            else:
                s = str(v)
                parts.append(("%s*%s" % (s, name)) if s.startswith("-") else "+%s*%s" % (s, name))
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


def _multiply(algebra, left: Dict, right: Dict) -> Dict:
    f = algebra.field
    out: Dict = {}
    mul_basis = algebra.mul_basis
    for ka, va in left.items():
        for kb, vb in right.items():
            prod = mul_basis(ka, kb)
            if not prod:
                continue
            c = f.mul(va, vb)
            for k, v in prod.items():
                nv = f.add(out.get(k, f.zero), f.mul(c, v))
                if nv == 0:
                    out.pop(k, None)
                else:
                    out[k] = nv
    return out


@dataclass(frozen=True)
class Violation:
    """One failed algebra axiom, with the offending basis indices."""

    kind: str
    indices: Tuple[int, ...]
    message: str

    def __str__(self):
        return "%s at %s: %s" % (self.kind, self.indices, self.message)


class GradedAlgebra:
    """A graded-commutative algebra over an exact field.

    Parameters
    ----------
    field : FieldSpec
    basis : sequence of ``(name, degree)`` pairs
    unit_index : index of the degree-0 unit
    products : mapping ``(i, j) -> {k: coeff}``; absent pairs multiply to
        zero.  Products with the unit are filled in when absent.
    check : run :meth:`validate` and raise :class:`AlgebraError` on failure
    check_associativity : include the O(dim^3) associativity check
    """

    def __init__(self, field: FieldSpec, basis: Sequence[Tuple[str, int]], unit_index: int,
                 products: Mapping[Tuple[int, int], Mapping[int, object]],
                 check: bool = True, check_associativity: bool = True):
        self.field = field
        self.names = tuple(str(n) for n, _ in basis)
        self.degrees = tuple(int(d) for _, d in basis)
        if len(set(self.names)) != len(self.names):
            raise AlgebraError("duplicate basis names")
        if not 0 <= unit_index < len(self.names):
            raise AlgebraError("unit index %r out of range" % (unit_index,))
        self.unit_index = unit_index
        self._index = {n: i for i, n in enumerate(self.names)}
        table: Table = {}
        for (i, j), res in products.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise AlgebraError("product index (%d, %d) out of range" % (i, j))
            row = {}
            for k, v in res.items():
                if not 0 <= k < self.dim:
                    raise AlgebraError("result index %d out of range" % k)
                v = field.coerce(v)
                if v != 0:
                    row[k] = v
            if row:
                table[i, j] = row
        u = unit_index
        for b in range(self.dim):
            if (u, b) not in products:
                table[u, b] = {b: field.one}
            if (b, u) not in products:
                table[b, u] = {b: field.one}
        self._table = table
        self._check_assoc = check_associativity
        if check:
            problems = self.validate(check_associativity)
            if problems:
                raise AlgebraError("invalid algebra: " + "; ".join(map(str, problems[:5])))

    # basic structure

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def top_degree(self) -> int:
        return max(self.degrees)

    @property
    def reduced_dim(self) -> int:
        return self.dim - 1

    def is_trivial(self) -> bool:
        """True when the reduced (positive-degree) part is zero."""
        return self.dim == 1

    def degree(self, i: int) -> int:
        return self.degrees[i]

    def basis_name(self, i: int) -> str:
        return self.names[i]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError("no basis element named %r" % name) from None

    def basis_in_degree(self, d: int) -> List[int]:
        return [i for i, deg in enumerate(self.degrees) if deg == d]

    def mul_basis(self, i: int, j: int) -> Dict[int, object]:
        return self._table.get((i, j), {})

    def structure_constants(self) -> Dict[Tuple[int, int], Dict[int, object]]:
        return {k: dict(v) for k, v in self._table.items()}

    # elements

    def element(self, coeffs: Mapping) -> Element:
        """Build an element from ``{name or index: coefficient}``."""
        terms = {}
        for k, v in coeffs.items():
            i = self.index(k) if isinstance(k, str) else int(k)
            terms[i] = self.field.add(terms.get(i, self.field.zero), self.field.coerce(v))
        return Element(self, terms)

    def basis_element(self, i: int) -> Element:
        return Element._raw(self, {i: self.field.one})

    def gen(self, name: str) -> Element:
        return self.basis_element(self.index(name))

    def unit(self) -> Element:
        return self.basis_element(self.unit_index)

    def zero(self) -> Element:
        return Element._raw(self, {})

    def __eq__(self, other):
        if not isinstance(other, GradedAlgebra):
            return NotImplemented
        return (self.field == other.field and self.names == other.names
                and self.degrees == other.degrees and self.unit_index == other.unit_index
                and self._table == other._table)

    def __hash__(self):
        return hash((self.field, self.names, self.degrees))

    def __repr__(self):
        return "GradedAlgebra(%s, %s)" % (
            self.field, ", ".join("%s:%d" % nd for nd in zip(self.names, self.degrees)))

    # validation

    def validate(self, check_associativity: Optional[bool] = None) -> List[Violation]:
        """Every violated axiom, as a list of :class:`Violation` records."""
        if check_associativity is None:
            check_associativity = self._check_assoc
        f = self.field
        out: List[Violation] = []
        degs = self.degrees
        zeros = [i for i, d in enumerate(degs) if d == 0]
        if any(d < 0 for d in degs):
            out.append(Violation("grading", tuple(i for i, d in enumerate(degs) if d < 0),
                                 "negative degree"))
        if zeros != [self.unit_index]:
            out.append(Violation("unit", tuple(zeros),
                                 "degree-0 part must be exactly the unit %r" % self.names[self.unit_index]))
        u = self.unit_index
        for b in range(self.dim):
            want = {b: f.one}
            if self.mul_basis(u, b) != want or self.mul_basis(b, u) != want:
                out.append(Violation("unit", (u, b), "1*%s or %s*1 differs from %s"
                                     % ((self.names[b],) * 3)))
        for (i, j), res in sorted(self._table.items()):
            bad = [k for k in res if degs[k] != degs[i] + degs[j]]
            if bad:
                out.append(Violation("degree", (i, j), "%s*%s has a term of degree %d, expected %d"
                                     % (self.names[i], self.names[j], degs[bad[0]], degs[i] + degs[j])))
        for i in range(self.dim):
            for j in range(i, self.dim):
                ab = self.mul_basis(i, j)
                ba = self.mul_basis(j, i)
                if (degs[i] * degs[j]) % 2:
                    ba = {k: f.neg(v) for k, v in ba.items()}
                if ab != ba:
                    out.append(Violation("commutativity", (i, j),
                                         "%s*%s != (-1)^(|%s||%s|) %s*%s"
                                         % (self.names[i], self.names[j], self.names[i],
                                            self.names[j], self.names[j], self.names[i])))
        if check_associativity:
            basis = [self.basis_element(i) for i in range(self.dim)]
            for i, j, k in itertools.product(range(self.dim), repeat=3):
                a, b, c = basis[i], basis[j], basis[k]
                if (a * b) * c != a * (b * c):
                    out.append(Violation("associativity", (i, j, k),
                                         "(%s*%s)*%s != %s*(%s*%s)"
                                         % (self.names[i], self.names[j], self.names[k],
                                            self.names[i], self.names[j], self.names[k])))
        return out


def validate(alg: GradedAlgebra) -> List[Violation]:
    return alg.validate(True)


@dataclass(frozen=True)
class SpaceDescriptor:
    """A cohomology algebra together with geometric metadata.

    ``cat_upper`` is an upper bound for the LS category of the space and
    ``tc2_known`` a known value (or upper bound) of TC_2.
    """

    name: str
    algebra: GradedAlgebra
    formal_dim: int
    connectivity: int
    cat_upper: Optional[int]
    tc2_known: Optional[int] = None

    def __post_init__(self):
        if self.formal_dim < self.algebra.top_degree:
            raise AlgebraError("formal dimension %d below top degree %d"
                               % (self.formal_dim, self.algebra.top_degree))
        if self.cat_upper is not None:
            if self.cat_upper < 0:
                raise AlgebraError("cat_upper must be nonnegative")
            if self.cat_upper == 0 and not self.algebra.is_trivial():
                raise AlgebraError("cat_upper = 0 claims contractibility but the cohomology "
                                   "of %s is nontrivial" % self.name)

    @property
    def field(self) -> FieldSpec:
        return self.algebra.field


# builders

def _check_positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise AlgebraError("%s must be a positive integer, got %r" % (name, value))


def mk_point(field: FieldSpec = Q) -> SpaceDescriptor:
    """The one-point space.  Its connectivity is recorded as a large sentinel
    so that ``product(X, point)`` keeps the connectivity of X."""
    alg = GradedAlgebra(field, [("1", 0)], 0, {})
    return SpaceDescriptor("pt", alg, 0, 10 ** 9, 0, 1)


def _truncated_poly(field: FieldSpec, deg: int, m: int, var: str = "x") -> GradedAlgebra:
    names = ["1", var] + ["%s^%d" % (var, e) for e in range(2, m + 1)]
    basis = [(names[e], deg * e) for e in range(m + 1)]
    products = {(a, b): {a + b: 1} for a in range(m + 1) for b in range(m + 1) if a + b <= m}
    return GradedAlgebra(field, basis, 0, products)


def mk_sphere(k: int, field: FieldSpec = Q) -> SpaceDescriptor:
    """H*(S^k): a unit and one class u of degree k with u^2 = 0."""
    _check_positive("sphere dimension", k)
    alg = GradedAlgebra(field, [("1", 0), ("u", k)], 0, {})
    return SpaceDescriptor("S^%d" % k, alg, k, k - 1, 1, 2 if k % 2 else 3)


def _exterior(field: FieldSpec, gens: Sequence[str]) -> GradedAlgebra:
    m = len(gens)
    subsets = [s for r in range(m + 1) for s in itertools.combinations(range(m), r)]
    index = {s: i for i, s in enumerate(subsets)}
    basis = [("".join(gens[g] for g in s) or "1", len(s)) for s in subsets]
    products = {}
    for s, t in itertools.product(subsets, repeat=2):
        if set(s) & set(t):
            continue
        inversions = sum(1 for a in s for b in t if a > b)
        products[index[s], index[t]] = {index[tuple(sorted(s + t))]: (-1) ** inversions}
    return GradedAlgebra(field, basis, 0, products)


def mk_torus(m: int, field: FieldSpec = Q) -> SpaceDescriptor:
    """H*(T^m): the exterior algebra on m degree-one generators.

    Generators are named ``x, y`` for the 2-torus and ``x1 .. xm`` otherwise.
    """
    _check_positive("torus dimension", m)
    gens = ["x", "y"] if m == 2 else (["x"] if m == 1 else ["x%d" % (i + 1) for i in range(m)])
    alg = _exterior(field, gens)
    return SpaceDescriptor("T^%d" % m, alg, m, 0, m, 3 if m == 2 else (2 if m == 1 else None))


def mk_rp(m: int) -> SpaceDescriptor:
    """H*(RP^m; F_2) = F_2[x]/(x^(m+1)), |x| = 1."""
    _check_positive("projective space dimension", m)
    alg = _truncated_poly(FieldSpec(2), 1, m)
    # TC(RP^1) = TC(S^1) = 2; other values are not recorded
    return SpaceDescriptor("RP^%d" % m, alg, m, 0, m, 2 if m == 1 else None)


def mk_cp(m: int, field: FieldSpec = Q) -> SpaceDescriptor:
    """H*(CP^m) = F[x]/(x^(m+1)), |x| = 2."""
    _check_positive("projective space dimension", m)
    alg = _truncated_poly(field, 2, m)
    return SpaceDescriptor("CP^%d" % m, alg, 2 * m, 1, m, 3 if m == 1 else None)


def tensor_product(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """Graded tensor product with the Koszul sign (a x b)(a' x b') = (-1)^{|b||a'|} aa' x bb'."""
    if a.field != b.field:
        raise AlgebraError("cannot multiply spaces over %s and %s" % (a.field, b.field))
    f = a.field
    pairs = list(itertools.product(range(a.dim), range(b.dim)))
    index = {p: i for i, p in enumerate(pairs)}
    taken = set(a.names)
    suffix = ""
    while taken & {nm + suffix for k, nm in enumerate(b.names) if k != b.unit_index}:
        suffix += "'"

    def name(i, j):
        na = a.names[i]
        nb = b.names[j] + suffix
        if i == a.unit_index and j == b.unit_index:
            return "1"
        if j == b.unit_index:
            return na
        if i == a.unit_index:
            return nb
        return "%s.%s" % (na, nb)

    names = [name(i, j) for i, j in pairs]
    if len(set(names)) != len(names):
        # bracketed pairs are unambiguous however deeply products nest
        names = ["1" if (i, j) == (a.unit_index, b.unit_index)
                 else "[%s|%s]" % (a.names[i], b.names[j]) for i, j in pairs]
    basis = [(nm, a.degrees[i] + b.degrees[j]) for nm, (i, j) in zip(names, pairs)]
    products = {}
    for (i, j), (k, l) in itertools.product(pairs, repeat=2):
        pa, pb = a.mul_basis(i, k), b.mul_basis(j, l)
        if not pa or not pb:
            continue
        sign = -1 if (b.degrees[j] * a.degrees[k]) % 2 else 1
        res = {}
        for r, va in pa.items():
            for s, vb in pb.items():
                res[index[r, s]] = f.mul(f.coerce(sign), f.mul(va, vb))
        products[index[i, j], index[k, l]] = res
    return GradedAlgebra(f, basis, index[a.unit_index, b.unit_index], products, check=False)


def product(a: SpaceDescriptor, b: SpaceDescriptor) -> SpaceDescriptor:
    """The product space X x Y, with cohomology given by the Kunneth formula."""
    alg = tensor_product(a.algebra, b.algebra)
    cat = None if a.cat_upper is None or b.cat_upper is None else a.cat_upper + b.cat_upper
    return SpaceDescriptor("%s*%s" % (a.name, b.name), alg, a.formal_dim + b.formal_dim,
                           min(a.connectivity, b.connectivity), cat, None)


# file format

def _fmt_coeff(v) -> str:
    if isinstance(v, Fraction) and v.denominator != 1:
        return "%d/%d" % (v.numerator, v.denominator)
    return str(int(v))


def space_from_dict(data: Mapping, check_associativity: bool = True,
                    check: bool = True) -> SpaceDescriptor:
    """Build a space from the JSON custom-algebra schema.

    Only one of each pair ``left*right`` / ``right*left`` needs to be given;
    the other is filled in with the graded-commutativity sign.  Missing
    ``cat_upper`` defaults to the formal dimension.
    """
    try:
        field = FieldSpec.parse(data.get("field", "Q"))
        basis = [(b["name"], int(b["degree"])) for b in data["basis"]]
        names = [n for n, _ in basis]
        if len(set(names)) != len(names):
            raise AlgebraError("duplicate basis names")
        idx = {n: i for i, n in enumerate(names)}
        unit_name = data.get("unit", "1")
        if unit_name not in idx:
            raise AlgebraError("unit %r is not a basis element" % unit_name)
        products: Dict[Tuple[int, int], Dict[int, object]] = {}
        for entry in data.get("products", []):
            i, j = idx[entry["left"]], idx[entry["right"]]
            if (i, j) in products:
                raise AlgebraError("product %s*%s given twice" % (entry["left"], entry["right"]))
            res: Dict[int, object] = {}
            for term in entry.get("result", []):
                k = idx[term["basis"]]
                res[k] = field.add(res.get(k, field.zero), field.coerce(str(term["coeff"])))
            products[i, j] = res
        for (i, j), res in list(products.items()):
            if (j, i) not in products:
                sign = -1 if (basis[i][1] * basis[j][1]) % 2 else 1
                products[j, i] = {k: field.mul(field.coerce(sign), v) for k, v in res.items()}
    except KeyError as exc:
        raise AlgebraError("missing or unknown key %s" % exc) from None
    alg = GradedAlgebra(field, basis, idx[unit_name], products, check=False)
    if check:
        problems = alg.validate(check_associativity)
        if problems:
            raise AlgebraError("invalid algebra: " + "; ".join(map(str, problems[:5])))
    meta = data.get("meta", {}) or {}
    dim = meta.get("dim")
    dim = alg.top_degree if dim is None else int(dim)
    conn = meta.get("conn")
    conn = 0 if conn is None else int(conn)
    cat = meta.get("cat_upper")
    # cat X <= dim X for connected CW complexes
    cat = (0 if alg.is_trivial() else dim) if cat is None else int(cat)
    tc2 = meta.get("tc2")
    return SpaceDescriptor(data.get("name", "custom"), alg, dim, conn, cat,
                           None if tc2 is None else int(tc2))


def space_to_dict(desc: SpaceDescriptor) -> dict:
    alg = desc.algebra
    products = []
    for (i, j), res in sorted(alg.structure_constants().items()):
        if alg.unit_index in (i, j):
            continue
        products.append({"left": alg.names[i], "right": alg.names[j],
                         "result": [{"basis": alg.names[k], "coeff": _fmt_coeff(v)}
                                    for k, v in sorted(res.items())]})
    return {
        "name": desc.name,
        "field": str(alg.field),
        "basis": [{"name": n, "degree": d} for n, d in zip(alg.names, alg.degrees)],
        "unit": alg.names[alg.unit_index],
        "products": products,
        "meta": {"dim": desc.formal_dim, "conn": desc.connectivity,
                 "cat_upper": desc.cat_upper, "tc2": desc.tc2_known},
    }


def load_space(path, check_associativity: bool = True, check: bool = True) -> SpaceDescriptor:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise AlgebraError("cannot read %s: %s" % (path, exc.strerror)) from None
    except json.JSONDecodeError as exc:
        raise AlgebraError("%s: not valid JSON (%s)" % (path, exc)) from None
    return space_from_dict(data, check_associativity, check)


def save_space(desc: SpaceDescriptor, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(space_to_dict(desc), fh, indent=2)
