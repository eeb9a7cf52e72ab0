"""Subgroup geometry inside the affine group of the line.

Builds the translation subgroup G (an F_p-subspace with its annihilator
polynomial), the scaling subgroup H (a cyclic multiplicative subgroup),
the smallest H-invariant subspace S containing G, the group A = S x| H of
affine maps x -> h*x + s, a free evaluation point, and its orbit.

Enumeration orders are fixed everywhere (subspace points in digit order,
H in generator-power order, A with the translation part outermost) so that
edge and coordinate indexing is reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from orbitcodes.errors import ConfigurationError, InternalError, ParameterError
from orbitcodes.gf import (
    FieldContext,
    FieldElement,
    FpSubspace,
    kernel_subspace,
    primitive_element,
)
from orbitcodes.linalg import rref_mod_p
from orbitcodes.numutil import prime_factors
from orbitcodes.polyring import Poly, translation_invariant_poly, scaling_invariant_poly


@dataclass(frozen=True)
class AffineMap:
    """The map x -> scale*x + shift, an element of AGL(1, F)."""

    shift: FieldElement
    scale: FieldElement

    def __post_init__(self):
        if self.scale.is_zero():
            raise ParameterError("affine map must have nonzero scale")

    @classmethod
    def identity(cls, ctx: FieldContext) -> "AffineMap":
        return cls(ctx.zero(), ctx.one())

    def apply(self, x: FieldElement) -> FieldElement:
        return self.scale * x + self.shift

    def compose(self, other: "AffineMap") -> "AffineMap":
        # (self o other)(x) = scale1*(scale2*x + shift2) + shift1
        return AffineMap(self.shift + self.scale * other.shift, self.scale * other.scale)

    def inverse(self) -> "AffineMap":
        inv = self.scale.inverse()
        return AffineMap(-(inv * self.shift), inv)

    def is_identity(self) -> bool:
        return self.shift.is_zero() and self.scale == self.scale.ctx.one()


def compose(a: AffineMap, b: AffineMap) -> AffineMap:
    """Group law of AGL(1, F): (s1, h1)*(s2, h2) = (s1 + h1*s2, h1*h2)."""
    return a.compose(b)


class TranslationGroup:
    """Additive subgroup acting by translations, with its annihilator polynomial."""

    def __init__(self, points: FpSubspace, invariant_poly: Poly | None = None):
        self.points = points
        self.invariant_poly = invariant_poly if invariant_poly is not None else translation_invariant_poly(points)
        if self.invariant_poly.degree != self.size:
            raise InternalError("annihilator degree does not match subgroup size")

    @property
    def size(self) -> int:
        return self.points.size

    @property
    def ctx(self) -> FieldContext:
        return self.points.ctx

    def __repr__(self) -> str:
        return f"TranslationGroup(size={self.size})"


class ScalingGroup:
    """Cyclic multiplicative subgroup acting by scalings x -> h*x."""

    def __init__(self, generator: FieldElement, order: int):
        if order < 1:
            raise ParameterError(f"scaling group order must be >= 1, got {order}")
        if generator.is_zero():
            raise ParameterError("scaling generator must be nonzero")
        if generator**order != generator.ctx.one():
            raise ParameterError("generator order does not divide the stated order")
        for q in prime_factors(order):
            if generator ** (order // q) == generator.ctx.one():
                raise ParameterError(f"generator has order smaller than {order}")
        self.generator = generator
        self.order = order

    @property
    def ctx(self) -> FieldContext:
        return self.generator.ctx

    @cached_property
    def invariant_poly(self) -> Poly:
        return scaling_invariant_poly(self.ctx, self.order)

    @cached_property
    def _elements(self) -> tuple[FieldElement, ...]:
        out = [self.ctx.one()]
        for _ in range(self.order - 1):
            out.append(out[-1] * self.generator)
        return tuple(out)

    def elements(self) -> tuple[FieldElement, ...]:
        """Powers of the generator, identity first (generator-power order)."""
        return self._elements

    @cached_property
    def inverses(self) -> tuple[FieldElement, ...]:
        els = self._elements
        return tuple(els[(-i) % self.order] for i in range(self.order))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self._elements)

    def __contains__(self, x: FieldElement) -> bool:
        return x in self.element_set

    def __repr__(self) -> str:
        return f"ScalingGroup(order={self.order})"

    def to_json(self) -> dict:
        return {"generator": self.generator.to_json(), "order": self.order}


def scaling_subgroup(ctx: FieldContext, order: int) -> ScalingGroup:
    """The unique multiplicative subgroup of the given order.

    Requires order | (|F| - 1); the generator is a fixed power of the
    deterministic primitive element, so the result is reproducible.
    """
    n = ctx.order - 1
    if order < 1 or n % order != 0:
        raise ParameterError(f"no multiplicative subgroup of order {order} in field of size {ctx.order}")
    prim = primitive_element(ctx)
    return ScalingGroup(prim ** (n // order), order)


def roots_of_linearized(g: Poly, ambient: FieldContext) -> FpSubspace:
    """Root subspace of a squarefree linearized polynomial.

    g must have nonzero X-coefficient (so gcd(g, g') = 1) and only p-power
    exponents; its roots then form an F_p-subspace, recovered here as the
    kernel of the F_p-linear evaluation map on the ambient field.  Raises
    ConfigurationError when the ambient field is too small to split g.
    """
    ints = g.int_coeffs()
    if ints is None:
        raise ParameterError("linearized polynomial must have prime-subfield coefficients")
    if g.ctx.p != ambient.p:
        raise ParameterError("characteristic mismatch")
    p = ambient.p
    terms = []
    for e, c in enumerate(ints):
        if c == 0:
            continue
        i = 0
        pe = 1
        while pe < e:
            pe *= p
            i += 1
        if pe != e:
            raise ParameterError("polynomial is not linearized (non p-power exponent)")
        terms.append((i, c))
    if not terms or terms[0][0] != 0:
        raise ParameterError("linearized polynomial must have nonzero X-coefficient (squarefree)")

    def apply(x: FieldElement) -> FieldElement:
        acc = ambient.zero()
        y = x
        level = 0
        for i, c in terms:
            while level < i:
                y = y**p
                level += 1
            acc = acc + ambient.element([c]) * y
        return acc

    space = kernel_subspace(ambient, apply)
    expected = g.degree
    if space.size != expected:
        raise ConfigurationError(
            f"ambient field F_{p}^{ambient.k} contains {space.size} of {expected} roots"
        )
    return space


def scaling_closure(G: TranslationGroup, H: ScalingGroup) -> FpSubspace:
    """Smallest F_p-subspace containing G and invariant under H.

    Iterates span growth to a fixpoint: fold in h*b for the generator h and
    every current basis vector until nothing new appears.  Closure under
    the generator implies closure under all of H.
    """
    ctx = G.ctx
    current = FpSubspace.from_vectors(ctx, G.points.basis)
    queue = list(current.basis)
    while queue:
        v = queue.pop()
        w = H.generator * v
        if w not in current:
            current = FpSubspace.from_vectors(ctx, list(current.basis) + [w])
            queue.append(w)
    # fixpoint check: one full sweep with no growth
    for b in current.basis:
        if H.generator * b not in current:
            raise InternalError("closure did not stabilize")  # pragma: no cover
    return current


class GroupA:
    """The affine group generated by translations S and scalings H.

    Elements are exactly the maps x -> h*x + s with s in S, h in H, and the
    parametrization (s, h) is a bijection, so |A| = |S|*|H|.
    """

    def __init__(self, S: FpSubspace, H: ScalingGroup, ambient: FieldContext):
        if S.ctx != ambient or H.ctx != ambient:
            raise ParameterError("subgroups must live in the ambient context")
        for b in S.basis:
            if H.generator * b not in S:
                raise ParameterError("translation space is not invariant under the scaling group")
        self.S = S
        self.H = H
        self.ambient = ambient

    @property
    def size(self) -> int:
        return self.S.size * self.H.order

    @cached_property
    def _elements(self) -> tuple[AffineMap, ...]:
        out = []
        for s in self.S.points():
            for h in self.H.elements():
                out.append(AffineMap(s, h))
        return tuple(out)

    def elements(self) -> tuple[AffineMap, ...]:
        """All |S|*|H| maps, S in digit order outermost, H in power order."""
        return self._elements

    def __repr__(self) -> str:
        return f"GroupA(|S|={self.S.size}, |H|={self.H.order})"

    def to_json(self) -> dict:
        return {
            "S": self.S.to_json(),
            "H": self.H.to_json(),
            "ambient": self.ambient.to_json(),
            "size": self.size,
        }


def affine_group(S: FpSubspace, H: ScalingGroup, ambient: FieldContext) -> GroupA:
    return GroupA(S, H, ambient)


def find_free_point(A: GroupA) -> FieldElement:
    """First field element (enumeration order) with trivial stabilizer in A.

    Every non-identity map with scale != 1 fixes exactly (1-h)^-1 * s.
    Pure translations are fixed-point free, so the bad set has at most
    |A| - |S| points and a free point exists whenever |F| >= |A|.
    """
    ambient = A.ambient
    if ambient.order < A.size:
        raise ConfigurationError(f"ambient field size {ambient.order} below group size {A.size}")
    one = ambient.one()
    bad = set()
    for h in A.H.elements():
        if h == one:
            continue
        inv = (one - h).inverse()
        for s in A.S.points():
            bad.add(inv * s)
    for cand in ambient.elements():
        if cand not in bad:
            return cand
    raise ConfigurationError("no free point exists; ambient field too small")


def orbit(A: GroupA, alpha: FieldElement) -> tuple[FieldElement, ...]:
    """Evaluation orbit (phi(alpha) for phi in A), in group enumeration order.

    The free action makes the orbit map injective, which is verified; the
    orbit order matches elements() so edge-to-coordinate indexing is stable.
    """
    pts = tuple(phi.apply(alpha) for phi in A.elements())
    if len(set(pts)) != len(pts):
        raise InternalError("orbit points collide; the base point is not free")
    return pts


def independent_over_subfield(vectors: Iterable[FieldElement], subfield_power_basis: list[FieldElement]) -> bool:
    """Whether vectors are linearly independent over the subfield K.

    subfield_power_basis is a K-basis (w_0, ..., w_{t-1}) of the ambient
    field; each vector is decomposed as sum c_j * w_j with c_j in K by
    F_p-linear algebra, then Gaussian elimination runs over K itself.
    """
    vecs = list(vectors)
    if not vecs:
        return True
    rows = [_subfield_coords(v, subfield_power_basis) for v in vecs]
    # Gaussian elimination with exact field arithmetic over K (inside ambient)
    ncols = len(subfield_power_basis)
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if not rows[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = rows[rank][col].inverse()
        rows[rank] = [c * inv for c in rows[rank]]
        for r in range(len(rows)):
            if r != rank and not rows[r][col].is_zero():
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank == len(vecs)


def _subfield_coords(v: FieldElement, power_basis: list[FieldElement]) -> list[FieldElement]:
    """Write v = sum c_j * power_basis[j] with c_j in the subfield K.

    K is taken to be the field generated by the coordinates; concretely the
    linear system runs over F_p with unknowns the F_p-digits of the c_j,
    where K is the subfield containing all digit combinations.  The power
    basis must be K-linearly independent, e.g. 1, alpha, ..., alpha^{t-1}.
    """
    ambient = v.ctx
    p, k = ambient.p, ambient.k
    t = len(power_basis)
    if k % t != 0:
        raise ParameterError("power basis length must divide the ambient degree")
    sub_dim = k // t
    # K = F_{p^sub_dim}: digits of each c_j range over an F_p-basis of K.
    # We need an F_p-basis of K inside the ambient field: K is the unique
    # subfield of that size, i.e. the kernel of x -> x^(p^sub_dim) - x.
    K = kernel_subspace(ambient, lambda x: x ** (p**sub_dim) - x)
    if K.dim != sub_dim:
        raise InternalError("subfield recovery failed")
    columns = []
    for w in power_basis:
        for kb in K.basis:
            columns.append((kb * w).coeffs)
    mat = np.array(columns, dtype=np.int64).T  # k x (t*sub_dim)
    aug = np.concatenate([mat, np.array(v.coeffs, dtype=np.int64).reshape(k, 1)], axis=1)
    rr, pivots = rref_mod_p(aug, p)
    if (t * sub_dim) in pivots:
        raise InternalError("vector not representable in the power basis")
    sol = np.zeros(t * sub_dim, dtype=np.int64)
    for row, c in enumerate(pivots):
        sol[c] = rr[row, -1]
    coords = []
    for j in range(t):
        c = ambient.zero()
        for i, kb in enumerate(K.basis):
            digit = int(sol[j * sub_dim + i])
            if digit:
                c = c + ambient.element([digit]) * kb
        coords.append(c)
    return coords
