"""Homological model of the compact oriented surface with boundary.

Fixes once and for all the canonical bases of the two homology groups
of a genus-g surface with b boundary circles, the perfect pairing
between them, and the comparison map from absolute to relative classes.
Everything downstream (curve systems, arcs, pairings) is expressed in
these coordinates.

Canonical ordering of the absolute basis: A_1, B_1, ..., A_g, B_g,
then the boundary-parallel classes d_1, ..., d_{b-1}.  The relative
basis A'_i, B'_i, T_j follows the same ordering.  Nonzero pairings:

    <A'_i, B_j> = -delta_ij      <B'_i, A_j> = +delta_ij
    <T_j, d_m>  = delta_jm - delta_(j+1)m

This sign choice makes the round-trip between synthesized diagrams and
their recovered normal forms come out exactly; it is pinned by the
acceptance tests rather than by fiat.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DimensionMismatch, InvalidParams
from .intlin import IntMatrix, determinant, matvec, smith_normal_form


class SurfaceModel:
    """Genus-g surface with b >= 1 boundary components, rank 2g + b - 1."""

    __slots__ = ("g", "b", "rank", "pairing", "to_relative")

    def __init__(self, g: int, b: int):
        if g < 0 or b < 1:
            raise InvalidParams(f"surface must have g >= 0, b >= 1 (got g={g}, b={b})")
        rank = 2 * g + b - 1
        pairing = [[0] * rank for _ in range(rank)]
        for i in range(g):
            pairing[2 * i][2 * i + 1] = -1      # <A'_i, B_i>
            pairing[2 * i + 1][2 * i] = 1       # <B'_i, A_i>
        for j in range(b - 1):
            pairing[2 * g + j][2 * g + j] = 1   # <T_j, d_j>
            if j + 1 < b - 1:
                pairing[2 * g + j][2 * g + j + 1] = -1  # <T_j, d_(j+1)>
        to_rel = [[int(i == j and i < 2 * g) for j in range(rank)]
                  for i in range(rank)]
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "pairing", IntMatrix(pairing, cols=rank))
        object.__setattr__(self, "to_relative", IntMatrix(to_rel, cols=rank))

    def __setattr__(self, name, value):
        raise AttributeError("SurfaceModel is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, SurfaceModel) and (self.g, self.b) == (other.g, other.b)

    def __hash__(self) -> int:
        return hash(("SurfaceModel", self.g, self.b))

    def __repr__(self) -> str:
        return f"SurfaceModel(g={self.g}, b={self.b})"

    # -- basis vectors -------------------------------------------------

    def _unit(self, idx: int) -> tuple[int, ...]:
        return tuple(int(i == idx) for i in range(self.rank))

    def class_a(self, i: int) -> "CurveClass":
        """Absolute class of the i-th handle curve A_i (1-based)."""
        return CurveClass(self, self._unit(2 * (i - 1)))

    def class_b(self, i: int) -> "CurveClass":
        return CurveClass(self, self._unit(2 * (i - 1) + 1))

    def class_boundary(self, j: int) -> "CurveClass":
        """Boundary-parallel class d_j, 1 <= j <= b - 1."""
        return CurveClass(self, self._unit(2 * self.g + (j - 1)))

    def rel_a(self, i: int) -> "ArcClass":
        return ArcClass(self, self._unit(2 * (i - 1)))

    def rel_b(self, i: int) -> "ArcClass":
        return ArcClass(self, self._unit(2 * (i - 1) + 1))

    def rel_t(self, j: int) -> "ArcClass":
        """Relative class of the arc joining boundary j to boundary j+1."""
        return ArcClass(self, self._unit(2 * self.g + (j - 1)))

    def relative(self, curve: "CurveClass") -> tuple[int, ...]:
        """Image of an absolute class under H_1(S) -> H_1(S, dS)."""
        v = curve.vector
        return v[:2 * self.g] + (0,) * (self.b - 1)

    def pairing_image(self, absolute: Sequence[int]) -> tuple[int, ...]:
        """The pairing matrix applied to an absolute class, structurally."""
        g, b = self.g, self.b
        out = [0] * self.rank
        for i in range(g):
            out[2 * i] = -absolute[2 * i + 1]
            out[2 * i + 1] = absolute[2 * i]
        for j in range(b - 1):
            x = absolute[2 * g + j]
            if j + 1 < b - 1:
                x -= absolute[2 * g + j + 1]
            out[2 * g + j] = x
        return tuple(out)

    def pair(self, rel: Sequence[int], absolute: Sequence[int]) -> int:
        """<rel, absolute> under the intersection pairing."""
        if len(rel) != self.rank or len(absolute) != self.rank:
            raise DimensionMismatch("class vector length != surface rank")
        pv = self.pairing_image(absolute)
        return sum(r * x for r, x in zip(rel, pv) if r and x)


@dataclass(frozen=True)
class CurveClass:
    """Element of H_1(S) in the canonical basis."""

    surface: SurfaceModel
    vector: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        if len(self.vector) != self.surface.rank:
            raise DimensionMismatch(
                f"curve vector has length {len(self.vector)}, "
                f"surface rank is {self.surface.rank}")

    def __add__(self, other: "CurveClass") -> "CurveClass":
        self._same_surface(other)
        return CurveClass(self.surface,
                          tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __neg__(self) -> "CurveClass":
        return CurveClass(self.surface, tuple(-x for x in self.vector))

    def _same_surface(self, other):
        if self.surface != other.surface:
            raise DimensionMismatch("classes live on different surfaces")


@dataclass(frozen=True)
class ArcClass:
    """Element of H_1(S, dS) in the canonical relative basis."""

    surface: SurfaceModel
    vector: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))
        if len(self.vector) != self.surface.rank:
            raise DimensionMismatch(
                f"arc vector has length {len(self.vector)}, "
                f"surface rank is {self.surface.rank}")

    def __add__(self, other: "ArcClass") -> "ArcClass":
        if self.surface != other.surface:
            raise DimensionMismatch("classes live on different surfaces")
        return ArcClass(self.surface,
                        tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __neg__(self) -> "ArcClass":
        return ArcClass(self.surface, tuple(-x for x in self.vector))


def build_surface_model(g: int, b: int) -> SurfaceModel:
    return SurfaceModel(g, b)


def pairing_matrix(mu: Sequence[Union[CurveClass, ArcClass]],
                   nu: Sequence[CurveClass]) -> IntMatrix:
    """Matrix of <mu_i, nu_j>; curve entries of mu pass through to_relative.

    Rows index mu, columns index nu.  All classes must live on one
    surface model.
    """
    if not mu or not nu:
        return IntMatrix.zeros(len(mu), len(nu))
    surf = mu[0].surface
    for c in list(mu) + list(nu):
        if c.surface != surf:
            raise DimensionMismatch("classes live on different surfaces")
    for c in nu:
        if not isinstance(c, CurveClass):
            raise DimensionMismatch("second argument must consist of curve classes")
    rel_rows = []
    for c in mu:
        if isinstance(c, CurveClass):
            rel_rows.append(surf.relative(c))
        else:
            rel_rows.append(c.vector)
    return _pairing_from_rows(surf, rel_rows, [c.vector for c in nu])


def _pairing_from_rows(surf: SurfaceModel, rel_rows, abs_cols) -> IntMatrix:
    images = [surf.pairing_image(v) for v in abs_cols]
    out = tuple(
        tuple(sum(r * x for r, x in zip(rel, img) if r and x)
              for img in images)
        for rel in rel_rows)
    return IntMatrix._wrap(out, len(abs_cols))


def pairing_of_systems(surf: SurfaceModel, mu: IntMatrix, nu: IntMatrix,
                       mu_relative: bool = False) -> IntMatrix:
    """pairing_matrix on raw column matrices, skipping class wrappers.

    mu columns are absolute curve classes unless mu_relative is set, in
    which case they are taken as already-relative vectors (arcs).
    """
    if mu_relative:
        rel_rows = [mu.col(j) for j in range(mu.cols)]
    else:
        cut = 2 * surf.g
        pad = (0,) * (surf.b - 1)
        rel_rows = [mu.col(j)[:cut] + pad for j in range(mu.cols)]
    return _pairing_from_rows(surf, rel_rows, [nu.col(j) for j in range(nu.cols)])


@dataclass(frozen=True)
class StandardConfiguration:
    """Reference curve/arc systems on the canonical surface.

    alpha_i = A_i and beta_i = B_i for the first g - p handles; the
    arcs and their dual eta curves account for the page: consecutive
    boundary arcs T_j dual to the partial sums d_1 + ... + d_j, and for
    each page handle the pair A, B with arc duals B', -A'.
    """

    surface: SurfaceModel
    p: int
    alpha: tuple[CurveClass, ...]
    beta: tuple[CurveClass, ...]
    arcs: tuple[ArcClass, ...]
    eta: tuple[CurveClass, ...]

    @property
    def l(self) -> int:
        return len(self.arcs)

    def alpha_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns([c.vector for c in self.alpha],
                                      ambient=self.surface.rank)

    def beta_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns([c.vector for c in self.beta],
                                      ambient=self.surface.rank)


def standard_configuration(g: int, p: int, b: int) -> StandardConfiguration:
    if not (g >= p >= 0) or b < 1:
        raise InvalidParams(f"need g >= p >= 0 and b >= 1 (got g={g}, p={p}, b={b})")
    surf = SurfaceModel(g, b)
    alpha = tuple(surf.class_a(i) for i in range(1, g - p + 1))
    beta = tuple(surf.class_b(i) for i in range(1, g - p + 1))
    arcs: list[ArcClass] = []
    eta: list[CurveClass] = []
    running = CurveClass(surf, (0,) * surf.rank)
    for j in range(1, b):
        arcs.append(surf.rel_t(j))
        running = running + surf.class_boundary(j)
        eta.append(running)
    for h in range(1, p + 1):
        i = g - p + h
        arcs.append(surf.rel_b(i))
        eta.append(surf.class_a(i))
        arcs.append(-surf.rel_a(i))
        eta.append(surf.class_b(i))
    return StandardConfiguration(surface=surf, p=p, alpha=alpha, beta=beta,
                                 arcs=tuple(arcs), eta=tuple(eta))


def standard_sutured_pattern(g: int, p: int, b: int, k: int):
    """Model cut systems of the standard genus-g sutured splitting.

    Returns (delta, epsilon) with pairing_matrix(delta, epsilon) equal
    to the identity on the first g + p + b - 1 - k slots and zero
    after, where the trailing systems share their curves.
    """
    l = 2 * p + b - 1
    if not (g >= p >= 0) or b < 1 or not (l <= k <= g + p + b - 1):
        raise InvalidParams(
            f"standard pattern needs g >= p >= 0, b >= 1, l <= k <= g+p+b-1 "
            f"(got g={g}, p={p}, b={b}, k={k})")
    surf = SurfaceModel(g, b)
    n = g - p
    ndual = g + p + b - 1 - k
    delta = [surf.class_a(i) for i in range(1, n + 1)]
    epsilon = [-surf.class_b(i) for i in range(1, ndual + 1)]
    epsilon += [surf.class_a(i) for i in range(ndual + 1, n + 1)]
    return delta, epsilon


def basis_determinant(classes: Sequence[CurveClass]) -> int:
    """Determinant of a purported basis of H_1(S); 0 if not square."""
    if not classes:
        return 1
    surf = classes[0].surface
    if len(classes) != surf.rank:
        return 0
    return determinant(IntMatrix.from_columns([c.vector for c in classes],
                                              ambient=surf.rank))


def sutured_pattern_holds(pairing: IntMatrix, ones: int) -> bool:
    """Whether SNF(pairing) is the identity of the given size padded by zeros."""
    diag = smith_normal_form(pairing).diagonal()
    expected = tuple([1] * ones + [0] * (len(diag) - ones))
    return diag == expected and pairing.rows == pairing.cols
