"""Linear forms on the nilradical: supports, Dynkin subdiagrams, the
skew form f([x,y]) and its exact rank, and the canonical decomposition of a
form into extensive components plus a character.

Forms are coefficient maps over CHEVIE indices; zero entries may be omitted
and two forms are equal iff their nonzero maps are equal.  The coefficient
field is either the rationals ("Q", values int/Fraction) or a prime field
(field=p, values reduced mod p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .roots import (RootSystem, RootSystemSpec, component_label, dynkin_edges,
                    leq)


class DecompositionMismatch(RuntimeError):
    pass


@dataclass(frozen=True)
class LinearForm:
    field: object  # "Q" or a prime p
    coeffs: tuple  # sorted ((index, value), ...), zero values dropped

    @staticmethod
    def make(field, coeffs: dict) -> "LinearForm":
        if field != "Q":
            coeffs = {i: v % field for i, v in coeffs.items()}
        items = tuple(sorted((i, v) for i, v in coeffs.items() if v))
        return LinearForm(field, items)

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __getitem__(self, i):
        return dict(self.coeffs).get(i, 0)


def support(f: LinearForm) -> frozenset:
    return frozenset(i for i, _v in f.coeffs)


def support_closure(rs: RootSystem, f: LinearForm) -> frozenset:
    """Order ideal generated by the support: every root lying below some
    supported root (the support union over the whole coadjoint orbit)."""
    mask = 0
    for i, _v in f.coeffs:
        mask |= rs.down_mask[i]
    return frozenset(rs.indices_of(mask))


# --- Dynkin subdiagram of a form -------------------------------------------

@dataclass(frozen=True)
class DynSub:
    spec: RootSystemSpec
    edges: frozenset          # pairs (a, b), a < b, of simple-root indices
    components: tuple         # ((family, rank, vertices), ...)
    is_extensive: bool

    @property
    def vertices(self):
        return tuple(range(1, self.spec.rank + 1))


def _components_of(spec: RootSystemSpec, edges) -> tuple:
    parent = {v: v for v in range(1, spec.rank + 1)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[find(a)] = find(b)
    groups: dict = {}
    for v in range(1, spec.rank + 1):
        groups.setdefault(find(v), []).append(v)
    comps = []
    for verts in groups.values():
        fam, rank = component_label(spec, frozenset(verts))
        comps.append((fam, rank, tuple(sorted(verts))))
    return tuple(sorted(comps, key=lambda c: c[2]))


def subdiagram_from_ideal(rs: RootSystem, ideal_mask: int) -> DynSub:
    edges = frozenset((a, b) for a, b, k in rs.adjacent_simple_sums
                      if ideal_mask >> (k - 1) & 1)
    comps = _components_of(rs.spec, edges)
    alle = frozenset((min(a, b), max(a, b)) for a, b in dynkin_edges(rs.spec))
    return DynSub(rs.spec, edges, comps, edges == alle)


def dynkin_subdiagram(rs: RootSystem, f: LinearForm) -> DynSub:
    mask = 0
    for i in support_closure(rs, f):
        mask |= 1 << (i - 1)
    return subdiagram_from_ideal(rs, mask)


def is_extensive(rs: RootSystem, f: LinearForm) -> bool:
    return dynkin_subdiagram(rs, f).is_extensive


_WD_SPECIAL = {"F": {4: 4}, "G": {2: 2}}


def wd_of_label(family: str, rank: int) -> int:
    """Smallest possible extensive-orbit dimension for a connected diagram."""
    if family in ("A", "B", "C"):
        return 2 * (rank // 2)
    if family in ("D", "E"):
        return 2 * ((rank - 1) // 2)
    return _WD_SPECIAL[family][rank]


def wd(sub: DynSub) -> int:
    return sum(wd_of_label(fam, rank) for fam, rank, _v in sub.components)


# --- the skew form and its rank --------------------------------------------

def skew_form_entries(rs: RootSystem, f: LinearForm, mask: int | None = None) -> dict:
    """Sparse entries {(i, j): value} of the form (x, y) -> f([x, y]),
    optionally truncating the bracket to a subset mask of positions."""
    entries = {}
    for k, v in f.coeffs:
        if mask is not None and not mask >> (k - 1) & 1:
            continue
        for i, j in rs.decomp_pairs[k]:
            if mask is not None and not (mask >> (i - 1) & 1 and mask >> (j - 1) & 1):
                continue
            c = rs.nconst[i][j]
            entries[(i, j)] = c * v
            entries[(j, i)] = -c * v
    return entries


def sparse_rank(entries: dict, p=None) -> int:
    """Exact rank of a sparse matrix given as {(row, col): value}; over the
    rationals when p is None, else over GF(p)."""
    rows: dict = {}
    for (i, j), v in entries.items():
        if p is not None:
            v %= p
        if v:
            rows.setdefault(i, {})[j] = v
    rank = 0
    while rows:
        r = min(rows, key=lambda k: (len(rows[k]), k))
        cols = rows.pop(r)
        if not cols:
            continue
        c = min(cols)
        piv = cols[c]
        rank += 1
        if p is not None:
            pinv = pow(piv, -1, p)
        for r2 in list(rows):
            row2 = rows[r2]
            fct = row2.get(c)
            if fct is None:
                continue
            if p is not None:
                scale = fct * pinv % p
                for c2, v in cols.items():
                    nv = (row2.get(c2, 0) - scale * v) % p
                    if nv:
                        row2[c2] = nv
                    else:
                        row2.pop(c2, None)
            else:
                scale = Fraction(fct, piv)
                for c2, v in cols.items():
                    nv = row2.get(c2, 0) - scale * v
                    if nv:
                        row2[c2] = nv
                    else:
                        row2.pop(c2, None)
            if not row2:
                del rows[r2]
    return rank


def bform_rank(rs: RootSystem, f: LinearForm, mask: int | None = None) -> int:
    """Rank of the skew form over the form's own field; equals the dimension
    of the coadjoint orbit of f."""
    entries = skew_form_entries(rs, f, mask)
    return sparse_rank(entries, None if f.field == "Q" else f.field)


def family_generic_rank(rs: RootSystem, supp, mask: int | None = None) -> int:
    """Generic rank of the skew form over the family of forms supported on
    ``supp``, computed symbolically (one indeterminate per support root)."""
    import sympy

    xs = {k: sympy.Symbol(f"x{k}") for k in supp}
    n = rs.nroots
    idx = sorted(rs.indices_of(mask)) if mask is not None else list(range(1, n + 1))
    pos = {i: a for a, i in enumerate(idx)}
    m = sympy.zeros(len(idx), len(idx))
    for k in supp:
        if mask is not None and not mask >> (k - 1) & 1:
            continue
        for i, j in rs.decomp_pairs[k]:
            if i in pos and j in pos:
                c = rs.nconst[i][j]
                m[pos[i], pos[j]] = c * xs[k]
                m[pos[j], pos[i]] = -c * xs[k]
    return m.rank()


# --- canonical decomposition ------------------------------------------------

@dataclass(frozen=True)
class FormComponent:
    family: str
    rank: int
    vertices: tuple
    subsystem: RootSystem
    form: LinearForm
    index_map: dict  # subsystem index -> ambient index


def _component_vertex_order(rs: RootSystem, fam, rank, verts) -> list:
    """Map subsystem simple index j (1-based) to an ambient vertex."""
    verts = sorted(verts)
    if fam in ("B", "C") or (fam == "D" and rank >= 4):
        # component contains the ambient special end; orders coincide
        return verts
    # type A component: walk the induced path from its smallest endpoint
    adjacency = {v: [] for v in verts}
    vset = set(verts)
    for a, b in dynkin_edges(rs.spec):
        if a in vset and b in vset:
            adjacency[a].append(b)
            adjacency[b].append(a)
    if len(verts) == 1:
        return verts
    ends = [v for v in verts if len(adjacency[v]) == 1]
    start = min(ends)
    order, prev = [start], None
    while len(order) < len(verts):
        nxt = [w for w in adjacency[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def decompose(rs: RootSystem, f: LinearForm):
    """Split a form along the components of its Dynkin subdiagram.

    Returns (components, character) where each multi-vertex component carries
    the restriction of f as a form on its own root subsystem, and character
    is the restriction to the singleton-component simple roots.
    """
    from .roots import build_root_system

    sub = dynkin_subdiagram(rs, f)
    fdict = f.as_dict()
    comps = []
    covered = set()
    character = {}
    for fam, rank, verts in sub.components:
        vset = set(verts)
        member_idx = [k for k in range(1, rs.nroots + 1)
                      if {a + 1 for a, c in enumerate(rs.simple_coeffs[rs.roots[k]]) if c}
                      <= vset]
        covered.update(member_idx)
        if len(verts) == 1:
            k = member_idx[0]
            if fdict.get(k):
                character[k] = fdict[k]
            continue
        sub_rs = build_root_system(fam, rank)
        vorder = _component_vertex_order(rs, fam, rank, verts)
        vpos = {v: j for j, v in enumerate(vorder)}  # ambient vertex -> 0-based sub simple
        index_map = {}
        for k in member_idx:
            cs = rs.simple_coeffs[rs.roots[k]]
            sub_coeff = [0] * rank
            for a, c in enumerate(cs):
                if c:
                    sub_coeff[vpos[a + 1]] = c
            vec = tuple(sum(sub_coeff[j] * sub_rs.roots[j + 1][t] for j in range(rank))
                        for t in range(sub_rs.spec.ncoords))
            index_map[sub_rs.index_of[vec]] = k
        if len(index_map) != len(member_idx):
            raise AssertionError("component root matching is not a bijection")
        sub_form = LinearForm.make(f.field, {s: fdict[a] for s, a in index_map.items()
                                             if fdict.get(a)})
        comps.append(FormComponent(fam, rank, tuple(vorder), sub_rs, sub_form, index_map))
    if not set(support(f)) <= covered:
        raise DecompositionMismatch("support escapes the subdiagram components")
    return comps, character


def reassemble(rs: RootSystem, comps, character, field="Q") -> LinearForm:
    out = dict(character)
    for c in comps:
        for s, v in c.form.coeffs:
            out[c.index_map[s]] = v
    return LinearForm.make(field, out)


# --- serialization -----------------------------------------------------------

def form_to_json(f: LinearForm) -> dict:
    if f.field == "Q":
        head = {"field": "Q"}
        enc = {str(i): (str(v) if isinstance(v, Fraction) else v) for i, v in f.coeffs}
    else:
        head = {"field": "Fp", "p": f.field}
        enc = {str(i): v for i, v in f.coeffs}
    return {**head, "coeffs": enc}


def form_from_json(obj: dict) -> LinearForm:
    field = "Q" if obj["field"] == "Q" else int(obj["p"])
    coeffs = {}
    for k, v in obj["coeffs"].items():
        if isinstance(v, str):
            v = Fraction(v)
        coeffs[int(k)] = v
    return LinearForm.make(field, coeffs)


# --- randomized form generators (shared by tests and verify reports) --------

def random_form_on_support(rs, rng, supp, field="Q") -> LinearForm:
    if field == "Q":
        coeffs = {i: rng.randint(1, 97) for i in supp}
    else:
        coeffs = {i: rng.randint(1, field - 1) for i in supp}
    return LinearForm.make(field, coeffs)


def random_form(rs, rng, field="Q", max_support=6) -> LinearForm:
    size = rng.randint(0, min(max_support, rs.nroots))
    supp = rng.sample(range(1, rs.nroots + 1), size)
    return random_form_on_support(rs, rng, supp, field)
