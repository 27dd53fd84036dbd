"""Vector configurations, simplicial fans and Demazure roots.

Cones are index sets into a fixed configuration of lattice vectors, so
a fan is a finite combinatorial object.  All geometric predicates
(strict convexity, separation of cones, root existence) reduce to exact
rational LP or integer feasibility problems.

A covector e is a Demazure root of a fan when (R1) it pairs to -1 with
exactly one ray and non-negatively with all others, and (R2) every cone
on which e vanishes stays in the fan after adjoining the distinguished
ray.  A cone is connected with a facet by a root when the root is
non-positive on the cone and cuts out exactly that facet; a fan all of
whose nonzero cones are connected with some facet is called strongly
regular here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .errors import DegenerateConfigurationError, InvalidFanError, InvalidRootError
from .linalg import (
    IntMatrix,
    LinearSystem,
    Vector,
    ilp_feasible,
    lp_feasible,
    matrix_rank,
    smith_normal_form,
)

Cone = frozenset


def dot(v: Sequence[int], w: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(v, w))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for c in v:
        g = _gcd(g, abs(c))
    return g == 1


def primitivize(v: Sequence[int]) -> Vector:
    """Divide a nonzero vector by the gcd of its entries."""
    g = 0
    for c in v:
        g = _gcd(g, abs(c))
    if g == 0:
        raise ValueError("cannot primitivize the zero vector")
    return tuple(c // g for c in v)


@dataclass(frozen=True)
class VectorConfiguration:
    """Finite ordered family of integer vectors spanning Q^rank."""

    rank: int
    vectors: tuple[Vector, ...]

    def __post_init__(self):
        vecs = tuple(tuple(int(c) for c in v) for v in self.vectors)
        object.__setattr__(self, "vectors", vecs)
        for v in vecs:
            if len(v) != self.rank:
                raise ValueError("vector length does not match rank")
            if all(c == 0 for c in v):
                raise DegenerateConfigurationError("configuration contains a zero vector")
        if matrix_rank(IntMatrix(vecs, cols=self.rank)) < self.rank:
            raise DegenerateConfigurationError("vectors do not span the ambient space")

    def __len__(self) -> int:
        return len(self.vectors)

    def __getitem__(self, i: int) -> Vector:
        return self.vectors[i]

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(range(len(self.vectors)))

    def column_matrix(self, indices: Optional[Iterable[int]] = None) -> IntMatrix:
        idx = self.indices if indices is None else tuple(indices)
        return IntMatrix.from_columns([self.vectors[i] for i in idx], rows=self.rank)


def cone_key(c: Cone) -> tuple:
    return (len(c), tuple(sorted(c)))


@dataclass(frozen=True)
class SimplicialFan:
    """Set of cones (index sets) over a configuration; the zero cone is
    always present."""

    config: VectorConfiguration
    cones: frozenset[Cone]

    def __post_init__(self):
        normal = {frozenset(int(i) for i in c) for c in self.cones}
        normal.add(frozenset())
        for c in normal:
            for i in c:
                if not 0 <= i < len(self.config):
                    raise ValueError(f"cone index {i} out of range")
        object.__setattr__(self, "cones", frozenset(normal))

    def sorted_cones(self) -> tuple[Cone, ...]:
        return tuple(sorted(self.cones, key=cone_key))

    def nonzero_cones(self) -> tuple[Cone, ...]:
        return tuple(c for c in self.sorted_cones() if c)

    @property
    def rays(self) -> tuple[int, ...]:
        return tuple(sorted(i for c in self.cones if len(c) == 1 for i in c))


def one_skeleton_fan(config: VectorConfiguration) -> SimplicialFan:
    return SimplicialFan(config, frozenset(frozenset((i,)) for i in config.indices))


@dataclass(frozen=True)
class DemazureRoot:
    covector: Vector
    distinguished_ray: int


@dataclass(frozen=True)
class FanViolation:
    code: str
    indices: tuple
    message: str


@dataclass(frozen=True)
class FanReport:
    valid: bool
    violations: tuple[FanViolation, ...] = ()


def is_strictly_convex(config: VectorConfiguration, indices: Iterable[int]) -> bool:
    """Does some covector take strictly positive values on all chosen vectors?

    The empty set gives the zero cone, which is strictly convex.
    """
    return _is_strictly_convex_cached(config, tuple(sorted(set(indices))))


@lru_cache(maxsize=65536)
def _is_strictly_convex_cached(config: VectorConfiguration, idx: tuple[int, ...]) -> bool:
    if not idx:
        return True
    rows = tuple((config[i], 1) for i in idx)
    ok, _ = lp_feasible(LinearSystem(config.rank, inequalities=rows))
    return ok


def is_regular_cone(config: VectorConfiguration, indices: Iterable[int]) -> bool:
    """Are the chosen vectors part of a basis of the ambient lattice?"""
    return _is_regular_cone_cached(config, tuple(sorted(set(indices))))


@lru_cache(maxsize=65536)
def _is_regular_cone_cached(config: VectorConfiguration, idx: tuple[int, ...]) -> bool:
    if not idx:
        return True
    snf = smith_normal_form(config.column_matrix(idx))
    return snf.rank == len(idx) and all(d == 1 for d in snf.invariant_factors)


@lru_cache(maxsize=65536)
def _is_simplicial(config: VectorConfiguration, idx: tuple[int, ...]) -> bool:
    return matrix_rank(config.column_matrix(idx)) == len(idx)


def _require_simplicial(config: VectorConfiguration, idx: Sequence[int], name: str) -> None:
    if not _is_simplicial(config, tuple(idx)):
        raise ValueError(f"{name} does not span a simplicial cone")


def cones_meet_in_common_face(
    config: VectorConfiguration, left: Iterable[int], right: Iterable[int]
) -> bool:
    """Do the two simplicial cones intersect exactly in a common face?

    Decided by searching for a separating covector that vanishes
    precisely on the shared generators, is positive on the rest of the
    left cone and negative on the rest of the right cone.
    """
    li = tuple(sorted(set(left)))
    ri = tuple(sorted(set(right)))
    _require_simplicial(config, li, "left index set")
    _require_simplicial(config, ri, "right index set")
    if ri < li:
        li, ri = ri, li
    return _meet_in_common_face_cached(config, li, ri)


@lru_cache(maxsize=65536)
def _meet_in_common_face_cached(
    config: VectorConfiguration, li: tuple[int, ...], ri: tuple[int, ...]
) -> bool:
    shared = set(li) & set(ri)
    eqs = tuple((config[i], 0) for i in sorted(shared))
    ins = tuple((config[i], 1) for i in li if i not in shared) + tuple(
        (tuple(-c for c in config[j]), 1) for j in ri if j not in shared
    )
    ok, _ = lp_feasible(LinearSystem(config.rank, equalities=eqs, inequalities=ins))
    return ok


def validate_fan(fan: SimplicialFan) -> FanReport:
    """Check the fan axioms and ray conventions, reporting every violation."""
    config = fan.config
    violations: list[FanViolation] = []
    prims = {}
    for i in config.indices:
        v = config[i]
        if not is_primitive(v):
            violations.append(FanViolation("nonprimitive-ray", (i,), f"ray {i} is not primitive"))
        prims[i] = primitivize(v)
    for i, j in combinations(config.indices, 2):
        if prims[i] == prims[j]:
            violations.append(
                FanViolation(
                    "duplicate-ray-direction", (i, j), f"rays {i} and {j} span the same ray"
                )
            )
    declared = set(fan.rays)
    for i in config.indices:
        if i not in declared:
            violations.append(
                FanViolation("missing-ray-cone", (i,), f"index {i} has no one-dimensional cone")
            )
    for c in fan.nonzero_cones():
        idx = tuple(sorted(c))
        if not _is_simplicial(config, idx):
            violations.append(
                FanViolation("dependent-cone", idx, f"cone {idx} is not simplicial")
            )
    # face closure
    for c in fan.nonzero_cones():
        for i in sorted(c):
            if c - {i} not in fan.cones:
                violations.append(
                    FanViolation(
                        "not-face-closed",
                        tuple(sorted(c)),
                        f"facet of {tuple(sorted(c))} missing ray {i} is absent",
                    )
                )
    # pairwise separation, only meaningful for simplicial cones
    simplicial = [
        c for c in fan.sorted_cones() if _is_simplicial(config, tuple(sorted(c)))
    ]
    for a, b in combinations(simplicial, 2):
        if not cones_meet_in_common_face(config, a, b):
            violations.append(
                FanViolation(
                    "bad-intersection",
                    (tuple(sorted(a)), tuple(sorted(b))),
                    f"cones {tuple(sorted(a))} and {tuple(sorted(b))} do not meet in a common face",
                )
            )
    return FanReport(not violations, tuple(violations))


@dataclass(frozen=True)
class SuitabilityResult:
    suitable: bool
    witnesses: Optional[tuple[Vector, ...]] = None
    failing_index: Optional[int] = None


def is_suitable(config: VectorConfiguration) -> SuitabilityResult:
    """For each vector, find an integer covector pairing to -1 with it
    and non-negatively with all the others."""
    witnesses = []
    for i in config.indices:
        eqs = ((config[i], -1),)
        ins = tuple((config[j], 0) for j in config.indices if j != i)
        ok, w = ilp_feasible(LinearSystem(config.rank, equalities=eqs, inequalities=ins))
        if not ok:
            return SuitabilityResult(False, None, i)
        witnesses.append(w)
    return SuitabilityResult(True, tuple(witnesses), None)


def is_demazure_root(fan: SimplicialFan, root: DemazureRoot) -> bool:
    """Check conditions (R1) and (R2) for a covector against a fan."""
    e = root.covector
    rho = root.distinguished_ray
    if len(e) != fan.config.rank or rho not in fan.config.indices:
        return False
    pair = {i: dot(fan.config[i], e) for i in fan.config.indices}
    if pair[rho] != -1:
        return False
    if any(pair[j] < 0 for j in fan.config.indices if j != rho):
        return False
    zeros = {i for i in fan.config.indices if pair[i] == 0}
    for c in fan.cones:
        if c <= zeros and (c | {rho}) not in fan.cones:
            return False
    return True


def roots_in_box(fan: SimplicialFan, bound: int) -> tuple[DemazureRoot, ...]:
    """All Demazure roots with sup-norm at most the bound.

    The fan must validate.  Output is ordered by covector, then ray.
    """
    report = validate_fan(fan)
    if not report.valid:
        raise InvalidFanError(report)
    if bound < 0:
        raise ValueError("negative bound")
    n = fan.config.rank
    out = []
    for e in product(range(-bound, bound + 1), repeat=n):
        if all(c == 0 for c in e):
            continue
        negatives = [i for i in fan.config.indices if dot(fan.config[i], e) < 0]
        if len(negatives) != 1:
            continue
        root = DemazureRoot(tuple(e), negatives[0])
        if is_demazure_root(fan, root):
            out.append(root)
    return tuple(out)


def root_connecting(
    fan: SimplicialFan, cone: Iterable[int], facet: Iterable[int]
) -> tuple[bool, Optional[DemazureRoot]]:
    """Is the cone connected with the given facet by some root of the fan?

    Such a root pairs to -1 with the ray missing from the facet,
    vanishes on the facet, and is non-negative elsewhere.  The search
    enumerates the possible zero sets among the remaining rays, checks
    condition (R2) combinatorially for each, and then asks an integer
    feasibility question for the covector.
    """
    sigma = frozenset(int(i) for i in cone)
    tau = frozenset(int(i) for i in facet)
    if sigma not in fan.cones or tau not in fan.cones:
        raise ValueError("cone or facet not in the fan")
    if not (tau < sigma and len(sigma - tau) == 1):
        raise ValueError("second argument is not a facet of the first")
    (rho,) = sigma - tau
    others = [i for i in fan.config.indices if i not in sigma]
    for size in range(len(others) + 1):
        for zs in combinations(others, size):
            zeros = tau | set(zs)
            ok_r2 = True
            for c in fan.cones:
                if c <= zeros and (c | {rho}) not in fan.cones:
                    ok_r2 = False
                    break
            if not ok_r2:
                continue
            positives = tuple(j for j in others if j not in zeros)
            e = _covector_for_pattern(
                fan.config, rho, tuple(sorted(zeros)), positives
            )
            if e is not None:
                root = DemazureRoot(e, rho)
                assert is_demazure_root(fan, root)
                return True, root
    return False, None


@lru_cache(maxsize=65536)
def _covector_for_pattern(
    config: VectorConfiguration,
    rho: int,
    zeros: tuple[int, ...],
    positives: tuple[int, ...],
) -> Optional[Vector]:
    # integer covector with value -1 on rho, 0 on zeros, >= 1 on positives
    eqs = [(config[rho], -1)]
    eqs += [(config[k], 0) for k in zeros]
    ins = tuple((config[j], 1) for j in positives)
    ok, e = ilp_feasible(LinearSystem(config.rank, equalities=tuple(eqs), inequalities=ins))
    return e if ok else None


@dataclass(frozen=True)
class StrongRegularityResult:
    strongly_regular: bool
    certificate: tuple[tuple[Cone, Cone, DemazureRoot], ...] = ()
    failing_cone: Optional[Cone] = None


def is_strongly_regular(fan: SimplicialFan) -> StrongRegularityResult:
    """Is every nonzero cone connected with one of its facets by a root?

    The fan must validate; the certificate lists one (cone, facet, root)
    triple per nonzero cone.
    """
    report = validate_fan(fan)
    if not report.valid:
        raise InvalidFanError(report)
    cert = []
    for c in fan.nonzero_cones():
        hit = None
        for i in sorted(c):
            ok, root = root_connecting(fan, c, c - {i})
            if ok:
                hit = (c, c - {i}, root)
                break
        if hit is None:
            return StrongRegularityResult(False, (), c)
        cert.append(hit)
    return StrongRegularityResult(True, tuple(cert), None)


def he_connected_pairs(
    fan: SimplicialFan, root: DemazureRoot
) -> tuple[tuple[Cone, Cone], ...]:
    """All (facet, cone) pairs connected by a given root.

    A cone is in such a pair iff it contains the distinguished ray and
    the root vanishes on its other rays; the facet is obtained by
    dropping the distinguished ray.
    """
    report = validate_fan(fan)
    if not report.valid:
        raise InvalidFanError(report)
    if not is_demazure_root(fan, root):
        raise InvalidRootError(f"{root} is not a root of the fan")
    rho = root.distinguished_ray
    pairs = []
    for c in fan.nonzero_cones():
        if rho not in c:
            continue
        if all(dot(fan.config[i], root.covector) == 0 for i in c - {rho}):
            pairs.append((c - {rho}, c))
    return tuple(sorted(pairs, key=lambda p: cone_key(p[1])))


def one_skeleton_strongly_regular(config: VectorConfiguration) -> bool:
    """Strong regularity of the fan consisting of the rays alone.

    With one or two rays this always holds.  With at least three rays
    it holds exactly when the rays generate a strictly convex cone and
    each of them is an extreme ray of it: integrality then upgrades the
    supporting covectors to roots, while a non-extreme or non-pointed
    family leaves some ray with no admissible covector.
    """
    fan = one_skeleton_fan(config)
    report = validate_fan(fan)
    if not report.valid:
        raise InvalidFanError(report)
    r = len(config)
    if r <= 2:
        return True
    if not is_strictly_convex(config, config.indices):
        return False
    for i in config.indices:
        eqs = ((config[i], 0),)
        ins = tuple((config[j], 1) for j in config.indices if j != i)
        ok, _ = lp_feasible(LinearSystem(config.rank, equalities=eqs, inequalities=ins))
        if not ok:
            return False
    return True
