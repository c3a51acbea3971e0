"""Classical positive root systems with exact integer combinatorics.

Roots are coefficient tuples in the standard epsilon basis.  Indexing is
1-based and follows the embedded reference tables where available (A2-A7,
B2-B7, C2-C7, D4-D8); outside that coverage a deterministic order (height,
then lexicographically decreasing simple-root coefficients) is used and the
system is flagged ``order_source='generated'``.

Structure constants come from exact multiplication of sparse matrix
realizations of the four classical algebras.  The short-root vectors of the
B family are rescaled to drop the sqrt(2) factor, keeping all constants
integral; this is a graded rescaling and does not affect orbit structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import datafiles

Root = tuple  # coefficient tuple in the epsilon basis

FAMILIES = ("A", "B", "C", "D")


class InvalidRank(ValueError):
    pass


class NotAPositiveRoot(ValueError):
    pass


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidRank(f"unknown family {self.family!r}")
        if self.rank < 1:
            raise InvalidRank("rank must be positive")
        if self.family == "D" and self.rank < 4:
            raise InvalidRank("D requires rank >= 4 (use A3 instead of D3)")

    @property
    def ncoords(self) -> int:
        return self.rank + 1 if self.family == "A" else self.rank

    def __str__(self):
        return f"{self.family}{self.rank}"


def _eps(n, pairs):
    v = [0] * n
    for i, c in pairs:
        v[i - 1] += c
    return tuple(v)


def positive_roots(spec: RootSystemSpec) -> set:
    n = spec.ncoords
    if spec.family == "A":
        return {_eps(n, [(i, 1), (j, -1)]) for i in range(1, n + 1)
                for j in range(i + 1, n + 1)}
    s = {_eps(n, [(i, 1), (j, -1)]) for i in range(1, n)
         for j in range(i + 1, n + 1)}
    s |= {_eps(n, [(i, 1), (j, 1)]) for i in range(1, n)
          for j in range(i + 1, n + 1)}
    if spec.family == "B":
        s |= {_eps(n, [(i, 1)]) for i in range(1, n + 1)}
    if spec.family == "C":
        s |= {_eps(n, [(i, 2)]) for i in range(1, n + 1)}
    return s


def simple_roots(spec: RootSystemSpec) -> list:
    """Simple roots in reference index order (index 1 first)."""
    n = spec.ncoords
    fam = spec.family
    chain = [_eps(n, [(n - k, 1), (n - k + 1, -1)]) for k in range(1, n)]
    if fam == "A":
        return chain
    if fam == "B":
        return [_eps(n, [(n, 1)])] + chain
    if fam == "C":
        return [_eps(n, [(n, 2)])] + chain
    # D: the two fork ends, then the tail
    return [_eps(n, [(n - 1, 1), (n, 1)])] + [_eps(n, [(n - 1, 1), (n, -1)])] + chain[1:]


def dynkin_edges(spec: RootSystemSpec) -> list:
    """Edges of the Dynkin diagram on simple-root indices 1..rank."""
    r = spec.rank
    if spec.family == "D":
        return [(1, 3), (2, 3)] + [(i, i + 1) for i in range(3, r)]
    return [(i, i + 1) for i in range(1, r)]


def component_label(spec: RootSystemSpec, verts: frozenset) -> tuple:
    """(family, rank) of the root subsystem generated by a connected set of
    simple-root vertices."""
    m = len(verts)
    if m == 1:
        return ("A", 1)
    if spec.family in ("B", "C") and 1 in verts:
        return (spec.family, m)
    if spec.family == "D" and 1 in verts and 2 in verts:
        return ("D", m) if m >= 4 else ("A", 3)
    return ("A", m)


# --- matrix realizations ---------------------------------------------------

def _matrix_indices(spec):
    n = spec.ncoords if spec.family != "A" else None
    if spec.family == "A":
        return list(range(1, spec.ncoords + 1))
    idx = list(range(1, n + 1))
    if spec.family == "B":
        idx += [0]
    idx += list(range(-n, 0))
    return idx


def root_vector_matrix(spec: RootSystemSpec, root: Root) -> dict:
    """Sparse matrix {(row, col): value} of the root vector e_root."""
    pos = [i + 1 for i, c in enumerate(root) if c > 0]
    neg = [i + 1 for i, c in enumerate(root) if c < 0]
    fam = spec.family
    if fam == "A":
        return {(pos[0], neg[0]): 1}
    if max(abs(c) for c in root) == 2:  # 2e_i (C only)
        i = pos[0]
        return {(i, -i): 1}
    if len(pos) == 1 and not neg:  # e_i (B only, rescaled integral form)
        i = pos[0]
        return {(i, 0): 1, (0, -i): -1}
    if neg:  # e_i - e_j
        i, j = pos[0], neg[0]
        return {(i, j): 1, (-j, -i): -1}
    i, j = pos  # e_i + e_j
    if fam == "C":
        return {(i, -j): 1, (j, -i): 1}
    return {(i, -j): 1, (j, -i): -1}


def _sparse_mul(a, b):
    bycol = {}
    for (r, c), v in b.items():
        bycol.setdefault(r, []).append((c, v))
    out = {}
    for (r, c), v in a.items():
        for c2, v2 in bycol.get(c, ()):
            key = (r, c2)
            out[key] = out.get(key, 0) + v * v2
    return {k: v for k, v in out.items() if v}


def _sparse_bracket(a, b):
    ab, ba = _sparse_mul(a, b), _sparse_mul(b, a)
    out = dict(ab)
    for k, v in ba.items():
        out[k] = out.get(k, 0) - v
    return {k: v for k, v in out.items() if v}


def _form_matrix(spec):
    """Gram matrix of the defining bilinear form, as a sparse dict."""
    n = spec.ncoords
    J = {}
    for i in range(1, n + 1):
        J[(i, -i)] = 1
        J[(-i, i)] = -1 if spec.family == "C" else 1
    if spec.family == "B":
        J[(0, 0)] = 1
    return J


def _check_in_algebra(spec, x):
    if spec.family == "A":
        return
    J = _form_matrix(spec)
    xt = {(c, r): v for (r, c), v in x.items()}
    lhs = _sparse_mul(xt, J)
    rhs = _sparse_mul(J, x)
    total = dict(lhs)
    for k, v in rhs.items():
        total[k] = total.get(k, 0) + v
    if any(v for v in total.values()):
        raise AssertionError(f"root vector not in the algebra for {spec}")


# --- root system -----------------------------------------------------------

class RootSystem:
    """Immutable after construction; safe to share across threads."""

    def __init__(self, spec: RootSystemSpec):
        self.spec = spec
        roots = positive_roots(spec)
        simples = simple_roots(spec)

        table = datafiles.root_index_table(spec.family, spec.rank)
        gen_order = self._generated_order(roots, simples)
        if table is not None:
            self.order_source = "table"
            order = [table[i] for i in range(1, len(table) + 1)]
            if set(order) != roots:
                raise AssertionError(f"index table for {spec} is not a bijection")
        else:
            self.order_source = "generated"
            order = gen_order

        self.roots = [None] + order
        self.nroots = len(order)
        self.index_of = {r: i for i, r in enumerate(order, start=1)}
        for k, s in enumerate(simples, start=1):
            if self.index_of[s] != k:
                raise AssertionError(f"simple root order mismatch for {spec}")
        self.simple_coeffs = _simple_coefficients(roots, simples)

        self._build_sums_and_constants()
        self._build_order()
        self._build_diagram_data()

    # construction ----------------------------------------------------------

    def _generated_order(self, roots, simples):
        coeff = _simple_coefficients(roots, simples)
        return sorted(roots, key=lambda r: (sum(coeff[r]),
                                            tuple(-c for c in coeff[r])))

    def _build_sums_and_constants(self):
        n = self.nroots
        mats = {}
        for i in range(1, n + 1):
            m = root_vector_matrix(self.spec, self.roots[i])
            _check_in_algebra(self.spec, m)
            mats[i] = m
        self.sum_index = [[0] * (n + 1) for _ in range(n + 1)]
        self.nconst = [[0] * (n + 1) for _ in range(n + 1)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                s = tuple(a + b for a, b in zip(self.roots[i], self.roots[j]))
                k = self.index_of.get(s, 0)
                br = _sparse_bracket(mats[i], mats[j])
                if k:
                    self.sum_index[i][j] = k
                    target = mats[k]
                    anchor = next(iter(target))
                    c, rem = divmod(br.get(anchor, 0), target[anchor])
                    if rem or c == 0:
                        raise AssertionError(f"bad structure constant {self.spec} {i},{j}")
                    if br != {key: c * v for key, v in target.items()}:
                        raise AssertionError(f"bracket not proportional {self.spec} {i},{j}")
                    self.nconst[i][j] = c
                elif br:
                    raise AssertionError(f"nonzero bracket off the root lattice {self.spec} {i},{j}")
        self.succ_pairs = [()] * (n + 1)
        self.decomp_pairs = [()] * (n + 1)
        succ = [[] for _ in range(n + 1)]
        dec = [[] for _ in range(n + 1)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                k = self.sum_index[i][j]
                if k:
                    succ[i].append((j, k))
                    if i < j:
                        dec[k].append((i, j))
        for i in range(1, n + 1):
            self.succ_pairs[i] = tuple(succ[i])
            self.decomp_pairs[i] = tuple(sorted(dec[i]))

    def _build_order(self):
        n = self.nroots
        up = [0] * (n + 1)  # bitmask of {j : root_i <= root_j}
        order_pass = sorted(range(1, n + 1), key=lambda i: -self.height(i))
        for i in order_pass:
            m = 1 << (i - 1)
            for _j, k in self.succ_pairs[i]:
                m |= up[k]
            up[i] = m
        self.up_mask = up
        dn = [0] * (n + 1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if up[j] >> (i - 1) & 1:
                    dn[i] |= 1 << (j - 1)
        self.down_mask = dn

    def _build_diagram_data(self):
        self.adjacent_simple_sums = []
        for a, b in dynkin_edges(self.spec):
            k = self.sum_index[a][b]
            if not k:
                raise AssertionError("diagram edge without a root sum")
            self.adjacent_simple_sums.append((a, b, k))
        self.required_mask = 0
        for _a, _b, k in self.adjacent_simple_sums:
            self.required_mask |= 1 << (k - 1)
        self.full_mask = (1 << self.nroots) - 1

    # basic queries ----------------------------------------------------------

    def height(self, i: int) -> int:
        return sum(self.simple_coeffs[self.roots[i]])

    def index(self, root: Root) -> int:
        try:
            return self.index_of[tuple(root)]
        except KeyError:
            raise NotAPositiveRoot(f"{root} is not a positive root of {self.spec}")

    def highest_root_index(self) -> int:
        for i in range(1, self.nroots + 1):
            if self.up_mask[i] == 1 << (i - 1):
                return i
        raise AssertionError("no highest root")

    def mask_of(self, indices) -> int:
        m = 0
        for i in indices:
            m |= 1 << (i - 1)
        return m

    def indices_of(self, mask: int) -> list:
        out = []
        while mask:
            b = mask & -mask
            out.append(b.bit_length())
            mask ^= b
        return out

    def __repr__(self):
        return f"RootSystem({self.spec}, n={self.nroots}, order={self.order_source})"


def _simple_coefficients(roots, simples):
    """Expand every root over the simple roots (all coefficients >= 0)."""
    rootset = set(roots)
    zero = tuple(0 for _ in simples[0])
    coeff = {}
    for r in roots:
        v, out = r, [0] * len(simples)
        guard = 0
        while v != zero:
            for j, s in enumerate(simples):
                w = tuple(a - b for a, b in zip(v, s))
                if w == zero or w in rootset:
                    out[j] += 1
                    v = w
                    break
            else:
                raise AssertionError(f"cannot expand {r} over simple roots")
            guard += 1
            if guard > 4 * len(simples) + 8:
                raise AssertionError("expansion loop")
        coeff[r] = tuple(out)
    return coeff


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int) -> RootSystem:
    return RootSystem(RootSystemSpec(family, rank))


# --- operations ------------------------------------------------------------

def sing(rs: RootSystem, beta) -> frozenset:
    """Indices of roots alpha with beta - alpha again a positive root."""
    b = beta if isinstance(beta, int) else rs.index(beta)
    if not 1 <= b <= rs.nroots:
        raise NotAPositiveRoot(f"index {b} out of range")
    out = set()
    for i, j in rs.decomp_pairs[b]:
        out.add(i)
        out.add(j)
    return frozenset(out)


def leq(rs: RootSystem, alpha, beta) -> bool:
    """Partial order: beta - alpha is a (possibly empty) sum of positive roots."""
    a = alpha if isinstance(alpha, int) else rs.index(alpha)
    b = beta if isinstance(beta, int) else rs.index(beta)
    for i in (a, b):
        if not 1 <= i <= rs.nroots:
            raise NotAPositiveRoot(f"index {i} out of range")
    return bool(rs.up_mask[a] >> (b - 1) & 1)


def support_union(rs: RootSystem, d: int) -> frozenset:
    """Roots that can lie in the support of some orbit of dimension 2d:
    {alpha : some alpha' >= alpha has exactly 2d singular roots}."""
    mask = 0
    for i in range(1, rs.nroots + 1):
        if len(sing(rs, i)) == 2 * d:
            mask |= rs.down_mask[i]
    return frozenset(rs.indices_of(mask))
