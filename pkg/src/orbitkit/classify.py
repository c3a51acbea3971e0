"""Classification engine for extensive coadjoint orbits of dimension <= 6.

A search state is a string with one letter per CHEVIE position:

  Q  undetermined quattern member      S  saturated centre member
  I  removed (coefficient forced 0)    A/L  matched arm/leg pair (reduced)

The underlying quattern is the set of S/Q positions, the saturation set the
S positions.  Two moves shrink the state: splitting a centre position into
its S/I halves, and the arm/leg reduction that removes a matched pair and
lowers every orbit dimension by two.  The engine runs the deterministic
reduction first, falls back to an exhaustive backtracking search, and
resolves the remaining hard cases through a shipped registry of projection
bounds.

Letter convention of the arm/leg move: the printed reference tables put `A`
on the root with a unique successor inside the quattern and `L` on the root
that is not a sum of two members; this module follows the tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from . import datafiles
from .quatterns import center_mask, internal_sums_mask
from .roots import RootSystem, build_root_system, support_union, sing

LETTERS = "SAILQ"


class NotApplicable(ValueError):
    pass


class UnresolvedCase(RuntimeError):
    pass


class IsomorphismFailed(RuntimeError):
    pass


class InvalidMoves(RuntimeError):
    pass


@dataclass(frozen=True)
class ClassString:
    letters: str
    al_pairs: tuple = ()

    def __str__(self):
        return self.letters

    def count(self, ch: str) -> int:
        return self.letters.count(ch)

    @property
    def dimension(self) -> int:
        return 2 * self.letters.count("A")

    def s_set(self) -> frozenset:
        return frozenset(i + 1 for i, c in enumerate(self.letters) if c == "S")

    def quattern_set(self) -> frozenset:
        return frozenset(i + 1 for i, c in enumerate(self.letters) if c in "SQ")


def state_masks(s: ClassString) -> tuple:
    X = Z = 0
    for i, ch in enumerate(s.letters):
        if ch in "SQ":
            X |= 1 << i
        if ch == "S":
            Z |= 1 << i
    return X, Z


def _cache(rs: RootSystem) -> dict:
    c = getattr(rs, "_classify_cache", None)
    if c is None:
        c = {"center": {}, "sums": {}, "win": {}, "est": {}}
        rs._classify_cache = c
    return c


def _center(rs, X):
    c = _cache(rs)["center"]
    m = c.get(X)
    if m is None:
        m = c[X] = center_mask(rs, X)
    return m


def _sums(rs, X):
    c = _cache(rs)["sums"]
    m = c.get(X)
    if m is None:
        m = c[X] = internal_sums_mask(rs, X)
    return m


# --- elementary moves --------------------------------------------------------

def initial_mask(rs: RootSystem, d: int) -> ClassString:
    """Q on every position that can support a 2d-dimensional orbit, I
    elsewhere; all-Q when 2d exceeds the singular count of the highest root."""
    if d < 1:
        raise ValueError("d must be >= 1")
    top = rs.highest_root_index()
    if 2 * d > len(sing(rs, top)):
        members = frozenset(range(1, rs.nroots + 1))
    else:
        members = support_union(rs, d)
    letters = "".join("Q" if i in members else "I" for i in range(1, rs.nroots + 1))
    return ClassString(letters)


def split_positions(rs: RootSystem, s: ClassString) -> list:
    X, Z = state_masks(s)
    return rs.indices_of(_center(rs, X) & ~Z)


def split_at(rs: RootSystem, s: ClassString, i: int) -> tuple:
    """Centre split: returns the (saturated, removed) pair of child states."""
    X, Z = state_masks(s)
    bit = 1 << (i - 1)
    if s.letters[i - 1] != "Q" or not (_center(rs, X) & ~Z) & bit:
        raise NotApplicable(f"position {i} is not an unsaturated centre member")
    sat = s.letters[: i - 1] + "S" + s.letters[i:]
    rem = s.letters[: i - 1] + "I" + s.letters[i:]
    return ClassString(sat, s.al_pairs), ClassString(rem, s.al_pairs)


def _is_sum_inside(rs, b, X):
    for i, j in rs.decomp_pairs[b]:
        if X >> (i - 1) & 1 and X >> (j - 1) & 1:
            return True
    return False


def _unique_successor(rs, a, X, gamma):
    for j, k in rs.succ_pairs[a]:
        if X >> (j - 1) & 1 and X >> (k - 1) & 1 and k != gamma:
            return False
    return True


def arm_leg_candidates(rs: RootSystem, s: ClassString) -> list:
    """All valid (gamma, leg, arm) triples: gamma saturated, leg + arm = gamma,
    the leg is not a sum of two members, and gamma is the arm's only successor
    inside the quattern."""
    X, Z = state_masks(s)
    return _arm_leg_candidates_masks(rs, X, Z)


def _arm_leg_candidates_masks(rs, X, Z) -> list:
    cands = []
    for gamma in rs.indices_of(Z):
        for i, j in rs.decomp_pairs[gamma]:
            if not (X >> (i - 1) & 1 and X >> (j - 1) & 1):
                continue
            for leg, arm in ((i, j), (j, i)):
                if not _is_sum_inside(rs, leg, X) and _unique_successor(rs, arm, X, gamma):
                    cands.append((gamma, leg, arm))
    return sorted(cands)


def apply_arm_leg(rs: RootSystem, s: ClassString, arm: int, leg: int) -> ClassString:
    gamma = rs.sum_index[arm][leg]
    if (gamma, leg, arm) not in arm_leg_candidates(rs, s):
        raise NotApplicable(f"no arm/leg move with arm={arm}, leg={leg}")
    letters = list(s.letters)
    letters[arm - 1] = "A"
    letters[leg - 1] = "L"
    return ClassString("".join(letters), s.al_pairs + ((arm, leg),))


def _apply_pair_fast(s: ClassString, arm, leg) -> ClassString:
    letters = list(s.letters)
    letters[arm - 1] = "A"
    letters[leg - 1] = "L"
    return ClassString("".join(letters), s.al_pairs + ((arm, leg),))


# --- the case search ---------------------------------------------------------

def saturated_cases(rs: RootSystem, d: int) -> list:
    """All fully saturated extensive states reachable from the initial mask
    by centre splits (the case list the reductions run on)."""
    if rs.spec.rank < 2:
        return []
    mask0 = initial_mask(rs, d)
    X0, _ = state_masks(mask0)
    req = rs.required_mask
    if req & ~X0:
        return []
    leaves = []
    stack = [state_masks(mask0)]
    while stack:
        X, Z = stack.pop()
        if req & ~X:
            continue
        todo = _center(rs, X) & ~Z
        if todo:
            bit = todo & -todo
            stack.append((X, Z | bit))
            stack.append((X & ~bit, Z))
        else:
            leaves.append((X, Z))

    def to_string(X, Z):
        out = []
        for i in range(rs.nroots):
            if Z >> i & 1:
                out.append("S")
            elif X >> i & 1:
                out.append("Q")
            else:
                out.append("I")
        return ClassString("".join(out))

    return sorted((to_string(X, Z) for X, Z in leaves), key=lambda s: s.letters)


def reduce_case(rs: RootSystem, case: ClassString) -> tuple:
    """Deterministic reduction: split at the lowest unsaturated centre
    position first, else apply the lexicographically smallest arm/leg move.

    Returns (abelian, finished, stuck): abelian means every leaf lost all its
    Q letters; finished leaves classify complete strata."""
    finished, stuck = [], []
    work = [case]
    while work:
        s = work.pop()
        X, Z = state_masks(s)
        todo = _center(rs, X) & ~Z
        if todo:
            i = (todo & -todo).bit_length()
            work.extend(split_at(rs, s, i))
            continue
        cands = _arm_leg_candidates_masks(rs, X, Z)
        if cands:
            _g, leg, arm = cands[0]
            work.append(_apply_pair_fast(s, arm, leg))
            continue
        (finished if X == Z else stuck).append(s)
    finished.sort(key=lambda s: s.letters)
    stuck.sort(key=lambda s: s.letters)
    return (not stuck, finished, stuck)


def _win(rs, X, Z):
    """Backtracking over every arm/leg choice; memoized winning move per
    (quattern, saturation) state.  A state wins when all Q letters can be
    cleared on every branch of some strategy."""
    memo = _cache(rs)["win"]
    key = (X, Z)
    if key in memo:
        return memo[key] is not None
    todo = _center(rs, X) & ~Z
    if todo:
        bit = todo & -todo
        ok = _win(rs, X, Z | bit) and _win(rs, X & ~bit, Z)
        memo[key] = ("split", bit.bit_length()) if ok else None
    elif X == Z:
        memo[key] = ("done",)
    else:
        memo[key] = None
        for cand in _arm_leg_candidates_masks(rs, X, Z):
            _g, leg, arm = cand
            if _win(rs, X & ~(1 << (arm - 1)) & ~(1 << (leg - 1)), Z):
                memo[key] = ("al", cand)
                break
    return memo[key] is not None


def reduce_case_exhaustive(rs: RootSystem, case: ClassString) -> tuple:
    """Returns (abelian, finished): finished lists the leaves of the first
    winning strategy found (deterministic move order)."""
    X0, Z0 = state_masks(case)
    if not _win(rs, X0, Z0):
        return (False, [])
    memo = _cache(rs)["win"]
    finished = []
    work = [case]
    while work:
        s = work.pop()
        X, Z = state_masks(s)
        move = memo[(X, Z)]
        if move[0] == "done":
            finished.append(s)
        elif move[0] == "split":
            work.extend(split_at(rs, s, move[1]))
        else:
            _g, leg, arm = move[1]
            work.append(_apply_pair_fast(s, arm, leg))
    finished.sort(key=lambda s: s.letters)
    return (True, finished)


def dimension_estimate(rs: RootSystem, case: ClassString) -> int:
    """Certified lower bound for the dimension of every saturated orbit of
    the case: minimum over centre splits, two plus the best arm/leg child,
    and at a dead end the best of the generic 0/2 rule and any matching
    anchor bound (a dead-end quattern isomorphic to one of the certified
    hard cases inherits that case's minimal saturated dimension)."""
    memo = _cache(rs)["est"]

    def go(X, Z):
        key = (X, Z)
        if key in memo:
            return memo[key]
        todo = _center(rs, X) & ~Z
        if todo:
            bit = todo & -todo
            val = min(go(X, Z | bit), go(X & ~bit, Z))
        else:
            cands = _arm_leg_candidates_masks(rs, X, Z)
            if cands:
                val = max(2 + go(X & ~(1 << (a - 1)) & ~(1 << (l - 1)), Z)
                          for _g, l, a in cands)
            else:
                val = 2 if Z & _sums(rs, X) else 0
                val = max(val, _anchor_bound(rs, X, Z))
        memo[key] = val
        return val

    return go(*state_masks(case))


@lru_cache(maxsize=None)
def _anchor_states() -> tuple:
    """Certified hard-case quatterns usable as dead-end bounds: the terminal
    anchor and every case referenced by another registry entry."""
    registry = load_registry()
    names = {e.reference for e in registry.values() if e.reference in registry}
    names |= {e.name for e in registry.values() if e.reference == "terminal"}
    out = []
    for name in sorted(names):
        e = registry[name]
        rsa = build_root_system("D", e.rank)
        Xa, Za = state_masks(ClassString(e.mask))
        out.append((rsa, frozenset(rsa.indices_of(Xa)),
                    frozenset(rsa.indices_of(Za)), e.claimed_bound))
    return tuple(out)


def _anchor_bound(rs, X, Z) -> int:
    nx, nz = bin(X).count("1"), bin(Z).count("1")
    best = 0
    for rsa, xa, za, bound in _anchor_states():
        if len(xa) != nx or len(za) != nz or bound <= best:
            continue
        iso = _quattern_isomorphism(rs, set(rs.indices_of(X)), set(rs.indices_of(Z)),
                                    rsa, set(xa), set(za))
        if iso is not None:
            best = bound
    return best


# --- special-case registry ---------------------------------------------------

@dataclass(frozen=True)
class CaseRegistryEntry:
    name: str
    rank: int
    mask: str
    moves: tuple       # ((gamma, arm, leg), ...) applied before projecting
    red_subset: frozenset
    reference: str     # "terminal", "self", or a registry entry name
    x_ref: int
    claimed_bound: int
    sections: tuple = ()     # V(S) supports emitted when the bound equals the target
    emit: tuple = ()         # the corresponding reference strings


@lru_cache(maxsize=None)
def load_registry() -> dict:
    out = {}
    for raw in datafiles.special_cases():
        entry = CaseRegistryEntry(
            name=raw["name"], rank=raw["rank"], mask=raw["mask"],
            moves=tuple((g, a, l) for g, a, l in raw.get("moves", [])),
            red_subset=frozenset(raw["red"]), reference=raw["ref"],
            x_ref=raw["x_ref"], claimed_bound=raw["claimed"],
            sections=tuple(tuple(s) for s in raw.get("sections", [])),
            emit=tuple(raw.get("emit", [])))
        out[entry.name] = entry
    return out


@lru_cache(maxsize=None)
def _registry_by_state() -> dict:
    out = {}
    for entry in load_registry().values():
        rs = build_root_system("D", entry.rank)
        key = ("D", entry.rank) + state_masks(ClassString(entry.mask))
        out[key] = entry
    return out


def _match_pairs(rs, letters):
    """Perfect arm/leg matching for a finished reference string."""
    A = [i + 1 for i, c in enumerate(letters) if c == "A"]
    L = [i + 1 for i, c in enumerate(letters) if c == "L"]

    def go(rem, used):
        if not rem:
            return []
        a = rem[0]
        for l in L:
            if l in used:
                continue
            g = rs.sum_index[a][l]
            if g and letters[g - 1] == "S":
                rest = go(rem[1:], used | {l})
                if rest is not None:
                    return [(a, l)] + rest
        return None

    pairs = go(A, set())
    if pairs is None:
        raise AssertionError("reference string admits no arm/leg matching")
    return tuple(pairs)


def _quattern_isomorphism(rs1, set1, z1, rs2, set2, z2):
    """Bijection set1 -> set2 preserving membership sums and saturation."""
    e1, e2 = sorted(set1), sorted(set2)
    if len(e1) != len(e2) or len(z1) != len(z2):
        return None

    def sum_map(rs, s):
        out = {}
        for x, y in itertools.combinations(sorted(s), 2):
            k = rs.sum_index[x][y]
            if k and k in s:
                out[(x, y)] = k
        return out

    sums1, sums2 = sum_map(rs1, set(set1)), sum_map(rs2, set(set2))
    if len(sums1) != len(sums2):
        return None

    def profile(e, z, sums):
        deg = {x: 0 for x in e}
        tgt = {x: 0 for x in e}
        for (x, y), k in sums.items():
            deg[x] += 1
            deg[y] += 1
            tgt[k] += 1
        return {x: (x in z, deg[x], tgt[x]) for x in e}

    p1, p2 = profile(e1, z1, sums1), profile(e2, z2, sums2)
    if sorted(p1.values()) != sorted(p2.values()):
        return None
    order = sorted(e1, key=lambda x: (p1[x], x))
    pairs1 = {frozenset((x, y)): k for (x, y), k in sums1.items()}
    pairs2 = {frozenset((x, y)): k for (x, y), k in sums2.items()}

    def backtrack(i, mapping, used):
        if i == len(order):
            return dict(mapping)
        x = order[i]
        for y in e2:
            if y in used or p2[y] != p1[x]:
                continue
            ok = True
            for x2, y2 in mapping.items():
                k1 = pairs1.get(frozenset((x, x2)))
                k2 = pairs2.get(frozenset((y, y2)))
                if (k1 is None) != (k2 is None):
                    ok = False
                    break
                if k1 is not None:
                    m1 = mapping.get(k1)
                    if m1 is not None and m1 != k2:
                        ok = False
                        break
                    # image of the sum must eventually be k2; record it now
            if not ok:
                continue
            mapping[x] = y
            # propagate sum images and check consistency
            consistent = True
            for (a, b), k in pairs1.items():
                if a in mapping and b in mapping:
                    k2 = pairs2.get(frozenset((mapping[a], mapping[b])))
                    if k2 is None or (k in mapping and mapping[k] != k2):
                        consistent = False
                        break
            if consistent:
                res = backtrack(i + 1, mapping, used | {y})
                if res is not None:
                    return res
            del mapping[x]
        return None

    return backtrack(0, {}, set())


def verify_projection_bound(entry: CaseRegistryEntry, target_dim: int,
                            rng=None, samples: int = 200) -> dict:
    """Mechanically re-check one special case: the prior arm/leg pairs, the
    red-subset quattern and its isomorphism with the reference case, an
    empirical saturated-rank certificate, and whether the claimed bound
    exceeds the target dimension."""
    import random

    from .forms import LinearForm, bform_rank

    rng = rng or random.Random(20240 + entry.rank)
    rs = build_root_system("D", entry.rank)
    s = ClassString(entry.mask)
    X, Z = state_masks(s)
    if center_mask(rs, X) != Z:
        raise InvalidMoves(f"{entry.name}: saturation set is not the centre")

    used = set()
    for g, a, l in entry.moves:
        if rs.sum_index[a][l] != g or not Z >> (g - 1) & 1:
            raise InvalidMoves(f"{entry.name}: pair ({a},{l}) does not land on a saturated root")
        if {a, l} & used or Z >> (a - 1) & 1 or Z >> (l - 1) & 1:
            raise InvalidMoves(f"{entry.name}: reused or saturated pair root")
        if not (X >> (a - 1) & 1 and X >> (l - 1) & 1):
            raise InvalidMoves(f"{entry.name}: pair root outside the quattern")
        used |= {a, l}

    red = set(entry.red_subset)
    x_after = {i + 1 for i in range(rs.nroots) if X >> i & 1} - used
    if not red <= x_after:
        raise InvalidMoves(f"{entry.name}: red subset leaves the reduced quattern")
    for x, y in itertools.combinations(sorted(red), 2):
        k = rs.sum_index[x][y]
        if k and k in x_after and k not in red:
            raise InvalidMoves(f"{entry.name}: red subset not closed ({x}+{y})")

    z_red = red & {i + 1 for i in range(rs.nroots) if Z >> i & 1}
    report = {"name": entry.name, "claimed": entry.claimed_bound,
              "x_ref": entry.x_ref, "moves": len(entry.moves)}
    if entry.claimed_bound != entry.x_ref + 2 * len(entry.moves):
        raise InvalidMoves(f"{entry.name}: bookkeeping mismatch")

    registry = load_registry()
    if entry.reference == "terminal":
        report["anchor"] = _terminal_anchor_check(rs, X, Z, entry)
    elif entry.reference == "self":
        red_letters = "".join(
            "S" if i + 1 in z_red else ("Q" if i + 1 in red else "I")
            for i in range(rs.nroots))
        est = dimension_estimate(rs, ClassString(red_letters))
        if est < entry.x_ref:
            raise InvalidMoves(f"{entry.name}: self estimate {est} < {entry.x_ref}")
        report["self_estimate"] = est
    else:
        ref = registry[entry.reference]
        ref_rs = build_root_system("D", ref.rank)
        rX, rZ = state_masks(ClassString(ref.mask))
        ref_set = set(ref_rs.indices_of(rX))
        ref_z = set(ref_rs.indices_of(rZ))
        if ref.claimed_bound != entry.x_ref:
            raise InvalidMoves(f"{entry.name}: reference bound mismatch")
        iso = _quattern_isomorphism(rs, red, z_red, ref_rs, ref_set, ref_z)
        if iso is None:
            raise IsomorphismFailed(f"{entry.name}: red subset != {entry.reference}")
        report["isomorphism"] = iso

    # empirical certificate: saturated forms of the case state respect the bound
    qpos = [i + 1 for i in range(rs.nroots) if X >> i & 1 and not Z >> i & 1]
    zpos = [i + 1 for i in range(rs.nroots) if Z >> i & 1]
    p = 7
    worst = None
    for _ in range(samples):
        coeffs = {i: rng.randint(1, p - 1) for i in zpos}
        for i in qpos:
            v = rng.randint(0, p - 1)
            if v:
                coeffs[i] = v
        r = bform_rank(rs, LinearForm.make(p, coeffs), mask=X)
        worst = r if worst is None else min(worst, r)
        if r < entry.claimed_bound:
            raise InvalidMoves(f"{entry.name}: sampled saturated rank {r} < claimed")
    report["sampled_min_rank"] = worst
    report["excludes"] = entry.claimed_bound > target_dim
    return report


def _terminal_anchor_check(rs, X, Z, entry) -> dict:
    """Exhaustive over GF(3): every saturated form of the anchor case has
    rank exactly the anchor dimension."""
    from .forms import LinearForm, bform_rank

    qpos = [i + 1 for i in range(rs.nroots) if X >> i & 1 and not Z >> i & 1]
    zpos = [i + 1 for i in range(rs.nroots) if Z >> i & 1]
    p = 3
    ranks = set()
    for zvals in itertools.product(range(1, p), repeat=len(zpos)):
        for qvals in itertools.product(range(p), repeat=len(qpos)):
            coeffs = dict(zip(zpos, zvals))
            coeffs.update({i: v for i, v in zip(qpos, qvals) if v})
            ranks.add(bform_rank(rs, LinearForm.make(p, coeffs), mask=X))
    if ranks != {entry.x_ref}:
        raise InvalidMoves(f"{entry.name}: anchor ranks {sorted(ranks)}")
    return {"field": p, "ranks": sorted(ranks)}


# --- the full classification --------------------------------------------------

def classify_extensive(rs: RootSystem, dim: int, use_registry: bool = True) -> list:
    """All extensive orbit strata of the given dimension, as finished
    classification strings (sorted)."""
    if dim not in (2, 4, 6):
        raise ValueError("dimension must be 2, 4 or 6")
    d = dim // 2
    out = []
    for case in saturated_cases(rs, d):
        abelian, finished, _stuck = reduce_case(rs, case)
        if abelian:
            out.extend(s for s in finished if s.count("A") == d)
            continue
        abelian, finished = reduce_case_exhaustive(rs, case)
        if abelian:
            out.extend(s for s in finished if s.count("A") == d)
            continue
        est = dimension_estimate(rs, case)
        if est > dim:
            continue
        if not use_registry:
            raise UnresolvedCase(f"{rs.spec} case {case.letters}")
        key = (rs.spec.family, rs.spec.rank) + state_masks(case)
        entry = _registry_by_state().get(key)
        if entry is None:
            raise UnresolvedCase(f"{rs.spec} case {case.letters} not in registry")
        report = verify_projection_bound(entry, dim)
        if report["excludes"]:
            continue
        if entry.claimed_bound == dim and entry.emit:
            for letters in entry.emit:
                out.append(ClassString(letters, _match_pairs(rs, letters)))
        else:
            raise UnresolvedCase(f"{rs.spec} case {case.letters}: bound does not settle")
    uniq = sorted(set(out), key=lambda s: s.letters)
    if len(uniq) != len(out):
        raise AssertionError("duplicate strata emitted")
    return uniq


@lru_cache(maxsize=None)
def classified_strings(family: str, rank: int, dim: int) -> tuple:
    rs = build_root_system(family, rank)
    return tuple(s.letters for s in classify_extensive(rs, dim))


# --- verification against the reference tables --------------------------------

@dataclass(frozen=True)
class VerificationReport:
    family: str
    rank: int
    dim: int
    exact_match: bool
    weights_equal: bool
    ours: tuple
    reference: tuple
    rank_failures: tuple = ()
    errata_used: tuple = ()

    @property
    def passed(self) -> bool:
        return self.weights_equal and not self.rank_failures


def weight_counter(strings) -> tuple:
    """Multiset of S-letter counts, as a sorted tuple (the v-weight data)."""
    return tuple(sorted(s.count("S") for s in strings))


def verify_against_reference(rs: RootSystem, dim: int, rng=None,
                             check_ranks: bool = True) -> VerificationReport:
    """Compare the regenerated strings with the embedded reference table:
    exact set equality (reported), weight-polynomial equality (the binding
    notion), and a per-string rank spot check.  Documented reference errata
    are supplemented into the table and reported."""
    import random

    from .forms import bform_rank, random_form_on_support

    rng = rng or random.Random(7 * rs.nroots + dim)
    key = (rs.spec.family, rs.spec.rank)
    ref = datafiles.class_string_tables(dim).get(key)
    if ref is None:
        raise KeyError(f"no reference table for {rs.spec} dim {dim}")
    errata = datafiles.table_errata(dim).get(key, [])
    ref_full = list(ref) + list(errata)
    ours = [s.letters for s in classify_extensive(rs, dim)]
    failures = []
    if check_ranks:
        for letters in itertools.chain(ref_full, ours):
            supp = [i + 1 for i, c in enumerate(letters) if c == "S"]
            f = random_form_on_support(rs, rng, supp, "Q")
            r = bform_rank(rs, f)
            if r != dim:
                failures.append((letters, r))
    return VerificationReport(
        rs.spec.family, rs.spec.rank, dim,
        exact_match=sorted(ours) == sorted(ref_full),
        weights_equal=weight_counter(ours) == weight_counter(ref_full),
        ours=tuple(sorted(ours)), reference=tuple(sorted(ref_full)),
        rank_failures=tuple(failures), errata_used=tuple(errata))
