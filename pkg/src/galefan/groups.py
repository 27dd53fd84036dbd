"""Finitely generated abelian groups in invariant factor form.

A group is ``Z^f ⊕ Z/d1 ⊕ ... ⊕ Z/ds`` with 2 <= d1 | d2 | ... | ds.
Elements carry separate free and torsion coordinate tuples, with
torsion coordinates always reduced into [0, dj).  Membership questions
are answered exactly by lifting to integer linear systems: subgroup
membership becomes a Diophantine system, semigroup membership an
integer feasibility problem with non-negative coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import isqrt
from typing import Iterable, Optional, Sequence

from .errors import CapExceededError
from .linalg import (
    IntMatrix,
    LinearSystem,
    Vector,
    ilp_feasible,
    max_minor_bound,
    smith_normal_form,
    solve_diophantine,
)

ENUMERATE_LINKS_CAP = 10


@dataclass(frozen=True)
class AbelianGroup:
    """Invariant factor presentation of a finitely generated abelian group."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion invariant factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def coords(self) -> int:
        return self.free_rank + len(self.torsion)

    def element(self, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> "GroupElement":
        free = tuple(int(c) for c in free)
        tors = tuple(int(c) for c in torsion)
        if len(free) != self.free_rank or len(tors) != len(self.torsion):
            raise ValueError("coordinate count does not match the group")
        tors = tuple(c % d for c, d in zip(tors, self.torsion))
        return GroupElement(self, free, tors)

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.free_rank, (0,) * len(self.torsion))

    def generators(self) -> tuple["GroupElement", ...]:
        """Standard generators: free basis vectors, then torsion basis vectors."""
        gens = []
        for i in range(self.free_rank):
            gens.append(self.element(tuple(1 if j == i else 0 for j in range(self.free_rank)),
                                     (0,) * len(self.torsion)))
        for i in range(len(self.torsion)):
            gens.append(self.element((0,) * self.free_rank,
                                     tuple(1 if j == i else 0 for j in range(len(self.torsion)))))
        return tuple(gens)


@dataclass(frozen=True)
class GroupElement:
    group: AbelianGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def lift(self) -> Vector:
        return self.free + self.torsion

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.free) and all(c == 0 for c in self.torsion)

    def _require_same_group(self, other: "GroupElement") -> None:
        if self.group != other.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._require_same_group(other)
        return self.group.element(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __neg__(self) -> "GroupElement":
        return self.group.element(tuple(-a for a in self.free), tuple(-a for a in self.torsion))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k: int) -> "GroupElement":
        return self.group.element(tuple(k * a for a in self.free), tuple(k * a for a in self.torsion))

    __rmul__ = __mul__


def normalize(group: AbelianGroup, free: Iterable[int] = (), torsion: Iterable[int] = ()) -> GroupElement:
    """Reduce raw coordinates to the canonical representative."""
    return group.element(free, torsion)


@dataclass(frozen=True)
class ElementCollection:
    """Finite indexed collection of elements of one group."""

    group: AbelianGroup
    elements: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        for e in self.elements:
            if e.group != self.group:
                raise ValueError("collection mixes elements of different groups")

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, i: int) -> GroupElement:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def take(self, indices: Iterable[int]) -> tuple[GroupElement, ...]:
        return tuple(self.elements[i] for i in indices)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(len(self.elements)))


@dataclass(frozen=True)
class CokernelMap:
    """A cokernel Z^m / col-span(A) in normal form, with its projection.

    The projection matrix sends ambient coordinates to normal form
    coordinates: first the free ones, then one row per torsion factor
    (to be read modulo that factor).
    """

    group: AbelianGroup
    projection: IntMatrix

    def project(self, vec: Sequence[int]) -> GroupElement:
        y = self.projection.apply(tuple(vec))
        f = self.group.free_rank
        return self.group.element(y[:f], y[f:])


def group_from_cokernel(a: IntMatrix) -> CokernelMap:
    """Normal form of Z^rows(A) modulo the column span of A.

    >>> cok = group_from_cokernel(IntMatrix([[1, 0], [1, 2]]))
    >>> (cok.group.free_rank, cok.group.torsion)
    (0, (2,))
    """
    snf = smith_normal_form(a)
    m = a.rows
    diag = list(snf.diagonal) + [0] * (m - min(m, a.cols))
    free_rows = [i for i in range(m) if diag[i] == 0]
    torsion_rows = [i for i in range(m) if diag[i] >= 2]
    group = AbelianGroup(len(free_rows), tuple(diag[i] for i in torsion_rows))
    proj = IntMatrix(tuple(snf.u.row(i) for i in free_rows + torsion_rows), cols=m)
    return CokernelMap(group, proj)


def _relation_columns(group: AbelianGroup) -> list[Vector]:
    """Columns spanning the lifted relations of the normal form."""
    f, s = group.free_rank, len(group.torsion)
    cols = []
    for j, d in enumerate(group.torsion):
        col = [0] * (f + s)
        col[f + j] = d
        cols.append(tuple(col))
    return cols


def _lifted_matrix(gens: Sequence[GroupElement], group: AbelianGroup) -> IntMatrix:
    cols = [g.lift() for g in gens] + _relation_columns(group)
    return IntMatrix.from_columns(cols, rows=group.coords)


def subgroup_membership(target: GroupElement, gens: Sequence[GroupElement]) -> bool:
    """Is target an integer combination of the generators?"""
    group = target.group
    for g in gens:
        if g.group != group:
            raise ValueError("generators belong to a different group")
    mat = _lifted_matrix(gens, group)
    return solve_diophantine(mat, target.lift()).solvable


def semigroup_membership(
    target: GroupElement, gens: Sequence[GroupElement]
) -> tuple[bool, Optional[Vector]]:
    """Is target a non-negative integer combination of the generators?

    Returns the coefficient vector (one entry per generator) as witness.
    The empty combination is allowed, so zero is always a member.
    """
    group = target.group
    for g in gens:
        if g.group != group:
            raise ValueError("generators belong to a different group")
    return _semigroup_membership_cached(target, tuple(gens))


@lru_cache(maxsize=65536)
def _semigroup_membership_cached(
    target: GroupElement, gens: tuple[GroupElement, ...]
) -> tuple[bool, Optional[Vector]]:
    group = target.group
    r = len(gens)
    s = len(group.torsion)
    mat = _lifted_matrix(gens, group)
    eqs = tuple((mat.row(i), target.lift()[i]) for i in range(group.coords))
    rows = []
    if s:
        # torsion multipliers are unbounded in sign, which can send the
        # branch and bound wandering; box every variable by an a-priori
        # search radius instead (a solution exists iff one exists with
        # coefficients in [0, bound] and multipliers in [-bound, bound])
        bound = _search_radius(target, gens)
        for i in range(r + s):
            unit = tuple(1 if j == i else 0 for j in range(r + s))
            neg = tuple(-c for c in unit)
            rows.append((unit, 0 if i < r else -bound))
            rows.append((neg, -bound))
    else:
        for i in range(r):
            rows.append((tuple(1 if j == i else 0 for j in range(r)), 0))
    ok, witness = ilp_feasible(
        LinearSystem(r + s, equalities=eqs, inequalities=tuple(rows))
    )
    if not ok:
        return False, None
    coeffs = witness[:r]
    check = group.zero()
    for c, g in zip(coeffs, gens):
        check = check + c * g
    assert check == target
    return True, coeffs


def coefficient_bound(target: GroupElement, gens: Sequence[GroupElement]) -> int:
    """Search radius for brute-force semigroup membership.

    If target is a non-negative combination of the generators at all, it
    is one with every coefficient bounded by this number (largest minor
    of the lifted augmented system, with auxiliary torsion columns in
    sign-split form).
    """
    group = target.group
    cols = [g.lift() for g in gens]
    for col in _relation_columns(group):
        cols.append(col)
        cols.append(tuple(-c for c in col))
    mat = IntMatrix.from_columns(cols, rows=group.coords)
    return max_minor_bound(mat, target.lift())


def _search_radius(target: GroupElement, gens: Sequence[GroupElement]) -> int:
    """Cheap upper bound on coefficient_bound via the Hadamard inequality.

    Every minor of the augmented sign-split system is bounded by a
    product of row norms, so the full product bounds the exact search
    radius from above without scanning minors.
    """
    group = target.group
    cols = [g.lift() for g in gens]
    for col in _relation_columns(group):
        cols.append(col)
        cols.append(tuple(-c for c in col))
    lift = target.lift()
    radius = 1
    for i in range(group.coords):
        nsq = sum(col[i] * col[i] for col in cols) + lift[i] * lift[i]
        root = isqrt(nsq)
        if root * root < nsq:
            root += 1
        radius *= max(1, root)
    return radius


def generates_group(coll: ElementCollection, indices: Optional[Iterable[int]] = None) -> bool:
    """Do the chosen elements generate the whole group?"""
    idx = tuple(coll.indices if indices is None else sorted(set(indices)))
    return _generates_group_cached(coll, idx)


@lru_cache(maxsize=65536)
def _generates_group_cached(coll: ElementCollection, idx: tuple[int, ...]) -> bool:
    mat = _lifted_matrix(coll.take(idx), coll.group)
    snf = smith_normal_form(mat)
    if snf.rank < coll.group.coords:
        return False
    return all(d == 1 for d in snf.invariant_factors)


def generates_full_semigroup(coll: ElementCollection, indices: Iterable[int]) -> bool:
    """Does the sub-semigroup spanned by the chosen elements contain all of them?

    True exactly when the chosen elements generate the same semigroup as
    the whole collection.
    """
    return _generates_full_semigroup_cached(coll, tuple(sorted(set(indices))))


@lru_cache(maxsize=65536)
def _generates_full_semigroup_cached(coll: ElementCollection, idx: tuple[int, ...]) -> bool:
    gens = coll.take(idx)
    chosen = set(idx)
    for i in coll.indices:
        if i in chosen:
            continue
        ok, _ = semigroup_membership(coll[i], gens)
        if not ok:
            return False
    return True


@dataclass(frozen=True)
class AdmissibilityResult:
    admissible: bool
    generates: bool
    failing_index: Optional[int] = None


def is_admissible(coll: ElementCollection) -> AdmissibilityResult:
    """A collection is admissible if it generates the group and stays
    semigroup-generating after removing any single element.

    Equivalently: every element is a non-negative combination of the
    others.
    """
    if not generates_group(coll):
        return AdmissibilityResult(False, False, None)
    for i in coll.indices:
        others = coll.take(j for j in coll.indices if j != i)
        ok, _ = semigroup_membership(coll[i], others)
        if not ok:
            return AdmissibilityResult(False, True, i)
    return AdmissibilityResult(True, True, None)


@dataclass(frozen=True)
class Link:
    """Certificate that one element is a strictly positive combination
    of a support set of other elements."""

    target: int
    support: frozenset[int]
    coefficients: tuple[int, ...]  # aligned with sorted(support), all >= 1


def is_link(
    coll: ElementCollection, target: int, support: Iterable[int]
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Is coll[target] a combination of the support with all coefficients >= 1?

    The empty support is a link exactly for the zero element.  The
    strictly positive constraint is reduced to plain semigroup
    membership by first subtracting one copy of every support element.
    """
    sup = sorted(set(support))
    if target in sup:
        raise ValueError("support must not contain the target")
    gens = coll.take(sup)
    residue = coll[target]
    for g in gens:
        residue = residue - g
    ok, coeffs = semigroup_membership(residue, gens)
    if not ok:
        return False, None
    return True, tuple(c + 1 for c in coeffs)


def enumerate_links(coll: ElementCollection) -> tuple[Link, ...]:
    """All links of a collection, smallest supports first.

    Ordered by target index, then support size, then support
    lexicographically.  Guarded by a cap on the collection size since
    the scan is over all support subsets.
    """
    r = len(coll)
    if r > ENUMERATE_LINKS_CAP:
        raise CapExceededError(f"link enumeration needs r <= {ENUMERATE_LINKS_CAP}, got {r}")
    out = []
    for target in coll.indices:
        others = [i for i in coll.indices if i != target]
        for size in range(r):
            for sup in combinations(others, size):
                ok, coeffs = is_link(coll, target, sup)
                if ok:
                    out.append(Link(target, frozenset(sup), coeffs))
    return tuple(out)


@dataclass(frozen=True)
class DirectSum:
    """External direct sum of two groups with its embeddings."""

    group: AbelianGroup
    _cok: CokernelMap
    _left: AbelianGroup
    _right: AbelianGroup

    def embed_left(self, e: GroupElement) -> GroupElement:
        if e.group != self._left:
            raise ValueError("element not in the left summand")
        vec = e.lift() + (0,) * self._right.coords
        return self._cok.project(vec)

    def embed_right(self, e: GroupElement) -> GroupElement:
        if e.group != self._right:
            raise ValueError("element not in the right summand")
        vec = (0,) * self._left.coords + e.lift()
        return self._cok.project(vec)


def direct_sum_collection(left: ElementCollection, right: ElementCollection) -> ElementCollection:
    """Concatenate two collections inside the direct sum of their groups."""
    ds = direct_sum(left.group, right.group)
    elems = tuple(ds.embed_left(a) for a in left) + tuple(ds.embed_right(b) for b in right)
    return ElementCollection(ds.group, elems)


def direct_sum(left: AbelianGroup, right: AbelianGroup) -> DirectSum:
    """Direct sum renormalized to a single invariant factor chain.

    >>> ds = direct_sum(AbelianGroup(0, (2,)), AbelianGroup(0, (3,)))
    >>> ds.group.torsion
    (6,)
    """
    cols = []
    total = left.coords + right.coords
    for col in _relation_columns(left):
        cols.append(tuple(col) + (0,) * right.coords)
    for col in _relation_columns(right):
        cols.append((0,) * left.coords + tuple(col))
    cok = group_from_cokernel(IntMatrix.from_columns(cols, rows=total))
    return DirectSum(cok.group, cok, left, right)
