"""Gale duality between vector configurations and element collections.

A spanning configuration of r vectors in rank n determines a finitely
generated abelian group (the cokernel of the transposed configuration)
together with r distinguished elements; conversely a generating
collection in such a group determines a configuration in rank
r - free_rank, unique up to a unimodular change of coordinates.  The
rational version replaces the group by the dual of the kernel space.
"""

from __future__ import annotations

from itertools import permutations

from .errors import CapExceededError, NotGeneratingError
from .groups import (
    AbelianGroup,
    ElementCollection,
    GroupElement,
    _lifted_matrix,
    generates_group,
    group_from_cokernel,
)
from .linalg import IntMatrix, LinearSystem, Vector, integer_kernel, lp_feasible, row_hermite_form
from .fans import VectorConfiguration

PAIR_EQUIVALENCE_CANDIDATE_CAP = 40320


def lattice_gale_transform(config: VectorConfiguration) -> tuple[AbelianGroup, ElementCollection]:
    """Group-with-elements dual to a spanning configuration.

    The i-th element is the image of the i-th coordinate vector in the
    cokernel of the transposed configuration matrix; the collection
    always generates the group.

    >>> g, coll = lattice_gale_transform(VectorConfiguration(2, ((1, 0), (1, 2))))
    >>> (g.free_rank, g.torsion, [e.torsion for e in coll])
    (0, (2,), [(1,), (1,)])
    """
    r = len(config)
    cok = group_from_cokernel(config.column_matrix().transpose())
    elements = tuple(
        cok.project(tuple(1 if j == i else 0 for j in range(r))) for i in range(r)
    )
    return cok.group, ElementCollection(cok.group, elements)


def inverse_gale_transform(coll: ElementCollection) -> VectorConfiguration:
    """Configuration whose Gale transform is the given generating collection.

    Computed from a basis of the lattice of relations among the
    elements; the result is determined up to left unimodular
    equivalence by the choice of that basis.
    """
    if not generates_group(coll):
        raise NotGeneratingError("collection does not generate its group")
    r = len(coll)
    lifted = _lifted_matrix(coll.elements, coll.group)
    kernel = integer_kernel(lifted)
    rank = len(kernel)
    vectors = tuple(tuple(vec[i] for vec in kernel) for i in range(r))
    return VectorConfiguration(rank, vectors)


def linear_gale_transform(config: VectorConfiguration) -> tuple[int, tuple[Vector, ...]]:
    """Rational Gale dual: coordinate functionals restricted to the kernel.

    Returns (dimension, vectors); the defining identity that the sum of
    the tensors v_i (x) w_i vanishes is asserted exactly.
    """
    r = len(config)
    kernel = integer_kernel(config.column_matrix())
    dim = len(kernel)
    assert dim == r - config.rank
    duals = tuple(tuple(vec[i] for vec in kernel) for i in range(r))
    for row in range(config.rank):
        for col in range(dim):
            assert sum(config[i][row] * duals[i][col] for i in range(r)) == 0
    return dim, duals


def canonical_form(config: VectorConfiguration) -> VectorConfiguration:
    """Canonical representative under left unimodular changes of basis.

    Takes the row-style Hermite form of the matrix whose columns are
    the configuration vectors; the vector order is preserved, so two
    configurations are unimodularly equivalent (in the same order) iff
    their canonical forms coincide.

    >>> canonical_form(VectorConfiguration(2, ((1, 0), (-1, 3)))).vectors
    ((1, 0), (2, 3))
    """
    _, h = row_hermite_form(config.column_matrix())
    return VectorConfiguration(config.rank, tuple(h.col(j) for j in range(len(config))))


def configs_equivalent(left: VectorConfiguration, right: VectorConfiguration) -> bool:
    """Same rank, same length, same canonical form (order preserved)."""
    if left.rank != right.rank or len(left) != len(right):
        return False
    return canonical_form(left).vectors == canonical_form(right).vectors


def pairs_equivalent(left: ElementCollection, right: ElementCollection) -> bool:
    """Is there a group isomorphism carrying one collection onto the
    other as multisets?

    Both collections must generate their groups; the search then runs
    over multiplicity-preserving bijections between the distinct
    values, each of which determines the only possible homomorphism.
    A bijection wins when it preserves every relation among the
    elements; surjectivity onto a group of the same normal form makes
    the induced map an isomorphism.
    """
    if left.group != right.group:
        return False
    if len(left) != len(right):
        return False
    lgen = generates_group(left)
    rgen = generates_group(right)
    if lgen != rgen:
        return False
    if not lgen:
        raise NotGeneratingError(
            "equivalence of non-generating collections is not decided by this routine"
        )

    def value_classes(coll):
        classes: dict[GroupElement, list[int]] = {}
        for i, e in enumerate(coll):
            classes.setdefault(e, []).append(i)
        return classes

    lclasses = value_classes(left)
    rclasses = value_classes(right)
    if sorted(len(v) for v in lclasses.values()) != sorted(len(v) for v in rclasses.values()):
        return False

    lvalues = list(lclasses)
    by_mult: dict[int, list[GroupElement]] = {}
    for v in rclasses:
        by_mult.setdefault(len(rclasses[v]), []).append(v)

    candidates = 1
    for mult, vals in by_mult.items():
        n = len([v for v in lvalues if len(lclasses[v]) == mult])
        if n != len(vals):
            return False
        for k in range(2, n + 1):
            candidates *= k
    if candidates > PAIR_EQUIVALENCE_CANDIDATE_CAP:
        raise CapExceededError("too many candidate bijections between value classes")

    kernel = integer_kernel(_lifted_matrix(left.elements, left.group))
    relations = [vec[: len(left)] for vec in kernel]

    group_of = {v: len(lclasses[v]) for v in lvalues}
    mults = sorted(set(group_of.values()))
    lgrouped = [sorted((v for v in lvalues if group_of[v] == m), key=lambda e: e.lift()) for m in mults]
    rgrouped = [sorted(by_mult[m], key=lambda e: e.lift()) for m in mults]

    def assignments(level=0, mapping=None):
        mapping = {} if mapping is None else mapping
        if level == len(mults):
            yield dict(mapping)
            return
        for perm in permutations(rgrouped[level]):
            for lv, rv in zip(lgrouped[level], perm):
                mapping[lv] = rv
            yield from assignments(level + 1, mapping)

    zero = right.group.zero()
    for mapping in assignments():
        images = [mapping[e] for e in left]
        ok = True
        for rel in relations:
            acc = zero
            for c, img in zip(rel, images):
                if c != 0:
                    acc = acc + c * img
            if not acc.is_zero:
                ok = False
                break
        if ok:
            return True
    return False


def cones_meet_by_gale_duality(
    config: VectorConfiguration, left, right
) -> bool:
    """Separation test on the Gale side.

    The cones on the two index sets meet in a common face iff the dual
    cones spanned by the complementary Gale vectors have a common
    relative interior point, i.e. some strictly positive combinations
    of the two complementary families agree.
    """
    li = set(left)
    ri = set(right)
    dim, duals = linear_gale_transform(config)
    lcomp = [i for i in config.indices if i not in li]
    rcomp = [i for i in config.indices if i not in ri]
    nvars = len(lcomp) + len(rcomp)
    eqs = []
    for row in range(dim):
        coeffs = [duals[i][row] for i in lcomp] + [-duals[j][row] for j in rcomp]
        eqs.append((tuple(coeffs), 0))
    ins = tuple(
        (tuple(1 if t == s else 0 for t in range(nvars)), 1) for s in range(nvars)
    )
    ok, _ = lp_feasible(LinearSystem(nvars, equalities=tuple(eqs), inequalities=ins))
    return ok
