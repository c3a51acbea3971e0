"""Brute-force ground truth over small prime fields: exhaustive coadjoint
orbit enumeration, skew-rank censuses, and set-section checks.

Forms over GF(p) are encoded as base-p integers over the CHEVIE coordinate
order.  The one-parameter generator actions are exact truncated exponentials
(root strings in the classical systems have length at most two, so only
1/2 must be invertible); a cross-check against matrix conjugation in the
defining representation is available for small systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .forms import LinearForm, bform_rank
from .roots import RootSystem, root_vector_matrix


class BudgetExceeded(RuntimeError):
    pass


class CharacteristicTooSmall(ValueError):
    pass


DEFAULT_BUDGET = 2 * 10 ** 7


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def minimal_admissible_prime(rs: RootSystem) -> int:
    """Smallest prime exceeding the height of the highest root."""
    h = rs.height(rs.highest_root_index())
    p = h + 1
    while not _is_prime(p):
        p += 1
    return p


def validate_characteristic(rs: RootSystem, p: int, safe: bool = False) -> None:
    if not _is_prime(p) or p == 2:
        raise CharacteristicTooSmall(f"p={p} must be an odd prime")
    if safe:
        dim_g = {"A": (rs.spec.ncoords ** 2 - 1),
                 "B": (2 * rs.spec.rank + 1) ** 2 // 2,
                 "C": rs.spec.rank * (2 * rs.spec.rank + 1),
                 "D": rs.spec.rank * (2 * rs.spec.rank - 1)}[rs.spec.family]
        if p <= dim_g:
            raise CharacteristicTooSmall(f"safe mode requires p > dim g = {dim_g}")


# --- generator actions -------------------------------------------------------

@lru_cache(maxsize=None)
def _action_table(family, rank):
    """For each generator index g and position b: the linear/quadratic terms
    of f |-> f o Ad(exp(-t e_g)) in coordinates:
    f'_b = f_b + t*c1*f_k1 + t^2*c2*f_k2."""
    from .roots import build_root_system

    rs = build_root_system(family, rank)
    table = []
    for g in range(1, rs.nroots + 1):
        rows = []
        for b in range(1, rs.nroots + 1):
            k1 = rs.sum_index[g][b]
            ent = []
            if k1:
                c1 = -rs.nconst[g][b]
                ent.append((k1, c1, 1))
                k2 = rs.sum_index[g][k1]
                if k2:
                    # t^2/2 * N(g,b) * N(g,g+b)
                    ent.append((k2, rs.nconst[g][b] * rs.nconst[g][k1], 2))
            rows.append(tuple(ent))
        table.append(tuple(rows))
    return tuple(table)


def generator_action(rs: RootSystem, p: int, g: int, t: int):
    """The exact matrix (as a coordinate-update closure) of the coadjoint
    action of the one-parameter element with parameter t on root g."""
    validate_characteristic(rs, p)
    table = _action_table(rs.spec.family, rs.spec.rank)[g - 1]
    inv2 = pow(2, -1, p)
    t %= p
    t2 = t * t * inv2 % p
    updates = []
    for b, ent in enumerate(table):
        terms = []
        for k, c, deg in ent:
            coef = (c * t if deg == 1 else c * t2) % p
            if coef:
                terms.append((k - 1, coef))
        if terms:
            updates.append((b, tuple(terms)))
    n = rs.nroots

    def act(coords):
        out = list(coords)
        for b, terms in updates:
            v = out[b]
            for k, coef in terms:
                v += coef * coords[k]
            out[b] = v % p
        return tuple(out)

    return act


def action_matrix(rs: RootSystem, p: int, g: int, t: int) -> list:
    """Dense matrix M with (f')_b = sum_k M[b][k] f_k, reduced mod p."""
    n = rs.nroots
    m = [[0] * n for _ in range(n)]
    for b in range(n):
        m[b][b] = 1
    act = generator_action(rs, p, g, t)
    for k in range(n):
        basis = tuple(1 if i == k else 0 for i in range(n))
        col = act(basis)
        for b in range(n):
            m[b][k] = col[b]
    return m


def conjugation_action_matrix(rs: RootSystem, p: int, g: int, t: int) -> list:
    """Same matrix computed independently through the matrix realization:
    conjugate each basis vector by exp(-t e_g) and re-expand."""
    from .roots import _matrix_indices

    mats = {i: root_vector_matrix(rs.spec, rs.roots[i])
            for i in range(1, rs.nroots + 1)}
    anchors = {i: min(m) for i, m in mats.items()}

    def mul(a, b):
        byrow = {}
        for (r, c), v in b.items():
            byrow.setdefault(r, []).append((c, v))
        out = {}
        for (r, c), v in a.items():
            for c2, v2 in byrow.get(c, ()):
                out[(r, c2)] = (out.get((r, c2), 0) + v * v2) % p
        return {k: v for k, v in out.items() if v}

    def matexp(scale):
        """exp(scale * e_g) as a sparse matrix mod p (series truncates)."""
        total = {(a, a): 1 for a in _matrix_indices(rs.spec)}
        cur = {k: v % p for k, v in mats[g].items()}
        k = 1
        factor = scale % p
        while cur:
            for key, v in cur.items():
                total[key] = (total.get(key, 0) + factor * v) % p
            cur = mul(cur, mats[g])
            k += 1
            factor = factor * scale % p * pow(k, -1, p) % p
            if k > 16:
                raise AssertionError("matrix exponential did not truncate")
        return {key: v for key, v in total.items() if v}

    gneg = matexp(-t % p)
    gpos = matexp(t % p)
    n = rs.nroots
    out = [[0] * n for _ in range(n)]
    for b in range(1, n + 1):
        conj = mul(mul(gneg, mats[b]), gpos)  # Ad(exp(-t e_g)) e_b
        rem = dict(conj)
        for i in range(1, n + 1):
            anchor = anchors[i]
            c = rem.get(anchor, 0) * pow(mats[i][anchor], -1, p) % p
            if c:
                for key, v in mats[i].items():
                    rem[key] = (rem.get(key, 0) - c * v) % p
                out[b - 1][i - 1] = c
        if any(v % p for v in rem.values()):
            raise AssertionError("conjugated vector leaves the nilradical span")
    return out


# --- orbit enumeration -------------------------------------------------------

@dataclass(frozen=True)
class OrbitCensus:
    family: str
    rank: int
    p: int
    by_dimension: tuple      # ((2e, count), ...)
    total_forms: int
    total_orbits: int

    def counts(self) -> dict:
        return dict(self.by_dimension)


def _check_budget(total, budget):
    if total > budget:
        raise BudgetExceeded(f"state space {total} exceeds budget {budget}")


def enumerate_orbits(rs: RootSystem, p: int, budget: int = DEFAULT_BUDGET,
                     generators: str = "all") -> OrbitCensus:
    """Exhaustive BFS census of the coadjoint orbits over GF(p)."""
    validate_characteristic(rs, p)
    n = rs.nroots
    total = p ** n
    _check_budget(total, budget)
    gens = _transition_updates(rs, p, generators)
    sizes = _orbit_sizes(n, p, total, gens)
    by_dim: dict = {}
    for size, cnt in sizes.items():
        e2 = _even_power_of(size, p)
        by_dim[e2] = by_dim.get(e2, 0) + cnt
    assert sum(c * p ** d for d, c in by_dim.items()) == total
    return OrbitCensus(rs.spec.family, rs.spec.rank, p,
                       tuple(sorted(by_dim.items())), total,
                       sum(by_dim.values()))


def _even_power_of(size: int, p: int) -> int:
    e = 0
    while size > 1:
        if size % p:
            raise AssertionError("orbit size is not a power of p "
                                 "(characteristic too small for this system)")
        size //= p
        e += 1
    if e % 2:
        raise AssertionError("orbit size has odd exponent "
                             "(characteristic too small for this system)")
    return e


def _transition_updates(rs, p, generators):
    """(position, ((source, coeff), ...)) update lists for every generator
    x_g(t), g over the chosen roots, t over 1..p-1."""
    table = _action_table(rs.spec.family, rs.spec.rank)
    inv2 = pow(2, -1, p)
    roots = (range(1, rs.spec.rank + 1) if generators == "simple"
             else range(1, rs.nroots + 1))
    gens = []
    for g in roots:
        rows = table[g - 1]
        for t in range(1, p):
            t2 = t * t * inv2 % p
            updates = []
            for b, ent in enumerate(rows):
                terms = tuple((k - 1, (c * (t if deg == 1 else t2)) % p)
                              for k, c, deg in ent
                              if (c * (t if deg == 1 else t2)) % p)
                if terms:
                    updates.append((b, terms))
            if updates:
                gens.append(tuple(updates))
    return gens


def _orbit_sizes(n, p, total, gens) -> dict:
    powers = [p ** i for i in range(n)]
    seen = bytearray(total)
    sizes: dict = {}
    for seed in range(total):
        if seen[seed]:
            continue
        seen[seed] = 1
        frontier = [seed]
        size = 1
        while frontier:
            new = []
            for code in frontier:
                coords = []
                c = code
                for _ in range(n):
                    c, r = divmod(c, p)
                    coords.append(r)
                for updates in gens:
                    out = None
                    delta = 0
                    for b, terms in updates:
                        v = coords[b]
                        nv = v
                        for k, coef in terms:
                            nv += coef * coords[k]
                        nv %= p
                        if nv != v:
                            delta += (nv - v) * powers[b]
                    code2 = code + delta
                    if not seen[code2]:
                        seen[code2] = 1
                        new.append(code2)
                        size += 1
            frontier = new
        sizes[size] = sizes.get(size, 0) + 1
    return sizes


# --- rank census --------------------------------------------------------------

def rank_census(rs: RootSystem, p: int, budget: int = 64 * DEFAULT_BUDGET,
                block: int = 1 << 16, jobs: int = 1,
                extensive_required: bool = False):
    """Skew-form rank of every form over GF(p), batched with numpy.

    Returns (rank_counts, census): rank_counts maps rank -> number of forms;
    the derived census divides by the orbit sizes p^rank.  With
    ``extensive_required`` only forms whose support closure contains every
    adjacent-simple sum are counted (extensive orbits)."""
    import numpy as np

    validate_characteristic(rs, p)
    n = rs.nroots
    total = p ** n
    _check_budget(total, budget)
    entries = [(i - 1, j - 1, k - 1, rs.nconst[i][j])
               for k in range(1, n + 1)
               for i, j in rs.decomp_pairs[k]]
    I = np.array([e[0] for e in entries])
    J = np.array([e[1] for e in entries])
    K = np.array([e[2] for e in entries])
    C = np.array([e[3] % p for e in entries], dtype=np.int64)
    req = [np.array([j for j in range(n) if rs.up_mask[k] >> j & 1])
           for _a, _b, k in rs.adjacent_simple_sums]

    def process(lo, hi):
        codes = np.arange(lo, hi, dtype=np.int64)
        F = np.empty((hi - lo, n), dtype=np.int64)
        c = codes.copy()
        for i in range(n):
            F[:, i] = c % p
            c //= p
        keep = np.ones(hi - lo, dtype=bool)
        if extensive_required:
            nz = F != 0
            for cols in req:
                keep &= nz[:, cols].any(axis=1)
        M = np.zeros((hi - lo, n, n), dtype=np.int64)
        vals = C[None, :] * F[:, K] % p
        M[:, I, J] = vals
        M[:, J, I] = (p - vals) % p
        r = _batched_rank(M, p)
        if extensive_required:
            r = r[keep]
        return np.bincount(r, minlength=n + 1)

    blocks = [(lo, min(lo + block, total)) for lo in range(0, total, block)]
    if jobs > 1:
        import multiprocessing as mp
        with mp.Pool(jobs) as pool:
            parts = pool.starmap(process, blocks)
    else:
        parts = [process(lo, hi) for lo, hi in blocks]
    counts = sum(parts)
    rank_counts = {r: int(c) for r, c in enumerate(counts) if c}
    census: dict = {}
    for r, c in rank_counts.items():
        if r % 2:
            raise AssertionError("odd skew rank")
        orbits, rem = divmod(c, p ** r)
        if rem:
            raise AssertionError("rank class size not divisible by orbit size")
        census[r] = census.get(r, 0) + orbits
    return rank_counts, census


def _batched_rank(M, p):
    import numpy as np

    B, n, _ = M.shape
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, -1, p)
    r = np.zeros(B, dtype=np.int64)
    rows = np.arange(n)
    for c in range(n):
        col = M[:, :, c]
        cand = (rows[None, :] >= r[:, None]) & (col != 0)
        has = cand.any(axis=1)
        piv = np.where(has, np.argmax(cand, axis=1), 0)
        b = np.nonzero(has)[0]
        if not b.size:
            continue
        rb = r[b]
        pb = piv[b]
        tmp = M[b, rb].copy()
        M[b, rb] = M[b, pb]
        M[b, pb] = tmp
        pivval = M[b, rb, c]
        M[b, rb] = M[b, rb] * inv[pivval][:, None] % p
        colv = M[b, :, c].copy()
        colv[np.arange(b.size), rb] = 0
        M[b] = (M[b] - colv[:, :, None] * M[b, rb][:, None, :]) % p
        r[b] += 1
    return r


# --- section and family checks -------------------------------------------------

def section_check(rs: RootSystem, p: int, strings, dim: int,
                  budget: int = DEFAULT_BUDGET) -> dict:
    """Verify that the V(S) strata of the given classification strings form a
    set-section of the extensive orbits of the given dimension: every such
    orbit meets the union exactly once and nothing else meets it at all."""
    validate_characteristic(rs, p)
    n = rs.nroots
    total = p ** n
    _check_budget(total, budget)
    targets = {}
    for s in strings:
        letters = getattr(s, "letters", s)
        mask = 0
        for i, ch in enumerate(letters):
            if ch == "S":
                mask |= 1 << i
        targets[mask] = letters
    gens = _transition_updates(rs, p, "all")
    powers = [p ** i for i in range(n)]
    seen = bytearray(total)
    report = {"orbits": 0, "extensive_dim_orbits": 0, "section_points": 0,
              "violations": []}
    for seed in range(total):
        if seen[seed]:
            continue
        seen[seed] = 1
        frontier = [seed]
        size = 1
        hits = 0
        support_union = 0
        code = seed
        # walk the orbit
        members_support = 0
        while frontier:
            new = []
            for code in frontier:
                coords = []
                c = code
                for _ in range(n):
                    c, rr = divmod(c, p)
                    coords.append(rr)
                smask = 0
                for i, v in enumerate(coords):
                    if v:
                        smask |= 1 << i
                members_support |= smask
                if smask in targets:
                    hits += 1
                for updates in gens:
                    delta = 0
                    for b, terms in updates:
                        v = coords[b]
                        nv = v
                        for k, coef in terms:
                            nv += coef * coords[k]
                        nv %= p
                        if nv != v:
                            delta += (nv - v) * powers[b]
                    code2 = code + delta
                    if not seen[code2]:
                        seen[code2] = 1
                        new.append(code2)
            frontier, size = new, size + len(new)
        e2 = _even_power_of(size, p)
        extensive = rs.required_mask & ~members_support == 0
        report["orbits"] += 1
        want = 1 if (extensive and e2 == dim) else 0
        if extensive and e2 == dim:
            report["extensive_dim_orbits"] += 1
        report["section_points"] += hits
        if hits != want:
            report["violations"].append(
                {"orbit_seed": seed, "dim": e2, "extensive": extensive,
                 "hits": hits})
    report["ok"] = not report["violations"]
    return report


def family_dim_check(rs: RootSystem, support, p: int, expected_dim: int,
                     budget: int = DEFAULT_BUDGET) -> bool:
    """Every form with support exactly the given set has skew rank equal to
    the expected dimension over GF(p)."""
    import itertools

    validate_characteristic(rs, p)
    supp = sorted(support)
    if (p - 1) ** len(supp) > budget:
        raise BudgetExceeded("family too large")
    for values in itertools.product(range(1, p), repeat=len(supp)):
        f = LinearForm.make(p, dict(zip(supp, values)))
        if bform_rank(rs, f) != expected_dim:
            return False
    return True
