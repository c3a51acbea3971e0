"""Sum-closed root subsets (patterns), quatterns, centres, and saturation.

A pattern is a subset of positive-root indices closed under root addition;
a quattern is a difference X+ \\ X- of patterns where the smaller one cuts
out an ideal.  Quatterns carry a truncated Lie bracket and are the state
space of the classification moves.
"""

from __future__ import annotations

from dataclasses import dataclass

from .roots import RootSystem


class NotAPattern(ValueError):
    pass


class IdealConditionViolated(ValueError):
    pass


def _to_mask(rs, X) -> int:
    return X if isinstance(X, int) else rs.mask_of(X)


def is_pattern(rs: RootSystem, X) -> bool:
    """True iff the subset is closed under adding positive roots inside it."""
    m = _to_mask(rs, X)
    for i in rs.indices_of(m):
        for j, k in rs.succ_pairs[i]:
            if m >> (j - 1) & 1 and not m >> (k - 1) & 1:
                return False
    return True


@dataclass(frozen=True)
class Quattern:
    rs: RootSystem
    members: frozenset
    witness: tuple | None  # (plus frozenset, minus frozenset) when validated

    @property
    def mask(self) -> int:
        return self.rs.mask_of(self.members)

    @property
    def witnessed(self) -> bool:
        return self.witness is not None


def make_quattern(rs: RootSystem, plus, minus) -> Quattern:
    pm, mm = _to_mask(rs, plus), _to_mask(rs, minus)
    if mm & ~pm:
        raise NotAPattern("minus set not contained in plus set")
    if not is_pattern(rs, pm):
        raise NotAPattern("plus set is not sum-closed")
    if not is_pattern(rs, mm):
        raise NotAPattern("minus set is not sum-closed")
    for i in rs.indices_of(mm):
        for j, k in rs.succ_pairs[i]:
            if pm >> (j - 1) & 1 and pm >> (k - 1) & 1 and not mm >> (k - 1) & 1:
                raise IdealConditionViolated(
                    f"{i}+{j} lands in the plus set but not the minus set")
    members = frozenset(rs.indices_of(pm & ~mm))
    return Quattern(rs, members,
                    (frozenset(rs.indices_of(pm)), frozenset(rs.indices_of(mm))))


def truncated_jacobi_holds(rs: RootSystem, X) -> bool:
    """Jacobi identity for the bracket truncated to X, on all triples."""
    m = _to_mask(rs, X)
    idx = rs.indices_of(m)

    def br(i, j):
        k = rs.sum_index[i][j]
        if k and m >> (k - 1) & 1:
            return k, rs.nconst[i][j]
        return 0, 0

    for x in idx:
        for y in idx:
            for z in idx:
                tot = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    k1, c1 = br(b, c)
                    if k1:
                        k2, c2 = br(a, k1)
                        if k2:
                            tot[k2] = tot.get(k2, 0) + c1 * c2
                if any(tot.values()):
                    return False
    return True


def quattern_from_set(rs: RootSystem, X) -> Quattern:
    """Witness-free construction; accepted when the truncated bracket still
    satisfies Jacobi, and flagged by ``witnessed == False``."""
    m = _to_mask(rs, X)
    if not truncated_jacobi_holds(rs, m):
        raise NotAPattern("truncated bracket violates the Jacobi identity")
    return Quattern(rs, frozenset(rs.indices_of(m)), None)


def center_mask(rs: RootSystem, mask: int) -> int:
    out = 0
    for i in rs.indices_of(mask):
        for j, k in rs.succ_pairs[i]:
            if mask >> (j - 1) & 1 and mask >> (k - 1) & 1:
                break
        else:
            out |= 1 << (i - 1)
    return out


def center(rs: RootSystem, X) -> frozenset:
    """Members whose sum with anything in the set leaves the set; the
    combinatorial centre (nonempty whenever the set is)."""
    X = X.members if isinstance(X, Quattern) else X
    return frozenset(rs.indices_of(center_mask(rs, _to_mask(rs, X))))


def is_large(rs: RootSystem, X) -> bool:
    """True iff the complement is an ideal: the set is a quotient-of-everything
    quattern (pairs with plus set equal to all positive roots)."""
    X = X.members if isinstance(X, Quattern) else X
    m = _to_mask(rs, X)
    comp = rs.full_mask & ~m
    for i in rs.indices_of(comp):
        for _j, k in rs.succ_pairs[i]:
            if m >> (k - 1) & 1:
                return False
    return True


def internal_sums_mask(rs: RootSystem, mask: int) -> int:
    out = 0
    for i in rs.indices_of(mask):
        for j, k in rs.succ_pairs[i]:
            if mask >> (j - 1) & 1 and mask >> (k - 1) & 1:
                out |= 1 << (k - 1)
    return out


def zero_dim_locus(rs: RootSystem, X) -> frozenset:
    """Members that are not sums of two members: the positions spanning the
    zero-dimensional orbits of the quattern."""
    X = X.members if isinstance(X, Quattern) else X
    m = _to_mask(rs, X)
    return frozenset(rs.indices_of(m & ~internal_sums_mask(rs, m)))
