"""Independent reference computations used to check the package.

Nothing here goes through tcn.tensor, tcn.bounds or tcn.scalar.row_reduce:
tensor products are multiplied by explicitly shuffling the 2n factors,
kernels come from a dense textbook elimination, and the cup-length is found
by exhaustive search over products of kernel-basis vectors.
"""

import itertools
import random
from fractions import Fraction

from tcn.algebra import space_from_dict


class Arith:
    def __init__(self, p):
        self.p = p

    def norm(self, x):
        return Fraction(x) if self.p is None else x % self.p

    def inv(self, x):
        return 1 / Fraction(x) if self.p is None else pow(x, -1, self.p)


_TABLES = {}


def raw_table(alg):
    """Structure constants as plain nested dicts of ints/Fractions."""
    key = id(alg)
    if key not in _TABLES:
        _TABLES[key] = (alg, alg.structure_constants())
    return _TABLES[key][1]


def shuffle_sign(degs_a, degs_b):
    """Sign of reordering a1..an b1..bn into a1 b1 a2 b2 .. an bn.

    Computed from the permutation directly: the sign is (-1)^(sum of
    deg(x) deg(y) over pairs of factors whose order is reversed).
    """
    n = len(degs_a)
    seq = [("a", i, d) for i, d in enumerate(degs_a)] + [("b", i, d) for i, d in enumerate(degs_b)]
    target = []
    for i in range(n):
        target += [("a", i), ("b", i)]
    pos = {t: j for j, t in enumerate(target)}
    total = 0
    for x, y in itertools.combinations(seq, 2):
        if pos[x[:2]] > pos[y[:2]]:
            total += x[2] * y[2]
    return -1 if total % 2 else 1


def tensor_mul(alg, n, a, b, ar):
    """Product of two dense dict vectors {tuple: coeff} in the n-fold power."""
    table = raw_table(alg)
    degs = alg.degrees
    out = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            slots = []
            for x, y in zip(ka, kb):
                r = table.get((x, y))
                if not r:
                    break
                slots.append(list(r.items()))
            else:
                s = shuffle_sign([degs[i] for i in ka], [degs[i] for i in kb])
                for combo in itertools.product(*slots):
                    c = ca * cb * s
                    for _, v in combo:
                        c = c * v
                    key = tuple(k for k, _ in combo)
                    out[key] = ar.norm(out.get(key, 0) + c)
    return {k: v for k, v in out.items() if v != 0}


def multiply_out(alg, key):
    """a_1 a_2 ... a_n in the base, as a dense dict."""
    table = raw_table(alg)
    acc = {alg.unit_index: 1}
    for i in key:
        nxt = {}
        for k, c in acc.items():
            for r, v in table.get((k, i), {}).items():
                nxt[r] = nxt.get(r, 0) + c * v
        acc = nxt
    return acc


def dense_nullspace(M, ncols, ar):
    """Null space of a dense matrix by Gauss-Jordan elimination."""
    A = [[ar.norm(x) for x in row] for row in M]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = ar.inv(A[r][c])
        A[r] = [ar.norm(x * inv) for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [ar.norm(x - f * y) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in enumerate(pivots):
            v[pc] = ar.norm(-A[row][free])
        basis.append(v)
    return basis


def kernel_basis(alg, n):
    """List of (degree, dense-dict vector) spanning ker d_n^* in positive degrees."""
    p = alg.field.p
    ar = Arith(p)
    keys = list(itertools.product(range(alg.dim), repeat=n))
    by_deg = {}
    for k in keys:
        by_deg.setdefault(sum(alg.degrees[i] for i in k), []).append(k)
    out = []
    for d in sorted(by_deg):
        if d == 0:
            continue
        cols = by_deg[d]
        targets = [i for i in range(alg.dim) if alg.degrees[i] == d]
        M = [[0] * len(cols) for _ in targets]
        for c, key in enumerate(cols):
            for b, v in multiply_out(alg, key).items():
                M[targets.index(b)][c] = v
        for vec in dense_nullspace(M, len(cols), ar):
            out.append((d, {cols[i]: x for i, x in enumerate(vec) if x != 0}))
    return out


def brute_force_zcl(alg, n):
    """Exhaustive search for the longest nonzero product of kernel-basis vectors.

    Sequences are taken nondecreasing in the (degree-sorted) basis order;
    reordering homogeneous factors only changes the sign.  A branch is cut
    once even the cheapest continuation cannot beat the best length found.
    """
    if n < 2:
        return 0
    ar = Arith(alg.field.p)
    kb = kernel_basis(alg, n)
    if not kb:
        return 0
    cap = n * alg.top_degree
    best = 0

    def search(start, prod, deg, count, last_deg):
        nonlocal best
        best = max(best, count)
        for i in range(start, len(kb)):
            d, z = kb[i]
            if deg + d > cap:
                continue
            if count + 1 + (cap - deg - d) // d <= best:
                # factors are sorted by degree, so later ones are no cheaper
                break
            p = tensor_mul(alg, n, prod, z, ar) if prod is not None else z
            if p:
                search(i, p, deg + d, count + 1, d)

    search(0, None, 0, 0, 0)
    return best


# random valid algebras

def random_algebra_dicts(count, seed=0, max_basis=4, field="Q"):
    """Seeded random graded-commutative algebras (as JSON dicts) that validate."""
    rng = random.Random(seed)
    found = []
    tries = 0
    while len(found) < count:
        tries += 1
        assert tries < 100000
        size = rng.randint(2, max_basis)
        names = ["1", "a", "b", "c"][:size]
        degs = [0] + sorted(rng.randint(1, 4) for _ in range(size - 1))
        products = []
        for i in range(1, size):
            for j in range(i, size):
                d = degs[i] + degs[j]
                targets = [k for k in range(size) if degs[k] == d]
                if not targets or rng.random() < 0.3:
                    continue
                k = rng.choice(targets)
                c = rng.choice([-2, -1, 1, 1, 2])
                products.append({"left": names[i], "right": names[j],
                                 "result": [{"basis": names[k], "coeff": str(c)}]})
        data = {"name": "rand%d" % len(found), "field": field,
                "basis": [{"name": nm, "degree": dg} for nm, dg in zip(names, degs)],
                "unit": "1", "products": products,
                "meta": {"dim": max(degs), "conn": 0, "cat_upper": None, "tc2": None}}
        try:
            space_from_dict(data)
        except ValueError:
            continue
        found.append(data)
    return found


def random_spaces(count, seed=0, max_basis=4):
    return [space_from_dict(d) for d in random_algebra_dicts(count, seed, max_basis)]
