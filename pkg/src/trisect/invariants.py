"""Homology of the trisected 4-manifold, linking matrix, form invariants.

The homology comes from the four-term chain complex

    0 -> (L1 ^ L3) (+) (L2 ^ L3) --pi--> L3 --rho--> Hom(L1d ^ L2d, Z) -> Z -> 0

with pi(x, y) = x + y and rho(x)(y) = <y, x>.  Here L_i is the span of
the i-th curve system in H_1(S) and L_id the span of the system plus
the arcs in H_1(S, dS).  All quotients are taken by exact Smith
reduction, so torsion comes out as honest invariant factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diagram import Diagram
from .errors import (ChainConditionViolated, DimensionMismatch, MissingArcs,
                     NotStandardPosition, NotSymmetric)
from .intlin import (IntMatrix, Lattice, determinant, kernel_basis,
                     lattice_intersection, smith_normal_form, solve_matrix)
from .surface import pairing_matrix, pairing_of_systems


@dataclass(frozen=True)
class ChainComplexData:
    """Computed chain groups and boundary maps for one diagram.

    C_3 has rank c3_alpha.cols + c3_beta.cols (bases of L1^L3 and
    L2^L3), C_2 is L3 in the gamma basis, C_1 is dual to the columns of
    c1_basis (a basis of L1d ^ L2d).
    """

    l1: Lattice
    l2: Lattice
    l3: Lattice
    l1_rel: Lattice
    l2_rel: Lattice
    c3_alpha: IntMatrix
    c3_beta: IntMatrix
    c1_basis: IntMatrix
    pi: IntMatrix
    rho: IntMatrix


@dataclass(frozen=True)
class HomologyResult:
    """Degreewise (free rank, invariant factors) for H_0 .. H_4."""

    groups: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def b2(self) -> int:
        return self.groups[2][0]

    def is_zero(self, degree: int) -> bool:
        free, torsion = self.groups[degree]
        return free == 0 and not torsion

    def format_group(self, degree: int) -> str:
        free, torsion = self.groups[degree]
        parts = []
        if free == 1:
            parts.append("Z")
        elif free > 1:
            parts.append(f"Z^{free}")
        parts.extend(f"Z/{t}" for t in torsion)
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return ", ".join(f"H_{i} = {self.format_group(i)}" for i in range(5))


def _relative_span(d: Diagram, system: IntMatrix) -> Lattice:
    rel = d.surface.to_relative @ system
    if d.arcs:
        arc_m = IntMatrix.from_columns([a.vector for a in d.arcs],
                                       ambient=d.surface.rank)
        rel = rel.hstack(arc_m)
    return Lattice.span(rel)


def build_chain_complex(d: Diagram) -> ChainComplexData:
    """Assemble the chain complex of a diagram; raises on a broken one.

    Arcs are required whenever l > 0 (they generate the relative
    spans); the chain condition rho . pi = 0 is verified exactly.
    """
    p = d.params
    if p.l > 0 and d.arcs is None:
        raise MissingArcs(f"diagram has l = {p.l} but carries no arcs")
    surf = d.surface
    # independence of the three systems is validate()'s systems check,
    # which callers are required to have passed
    l1 = Lattice(surf.rank, d.alpha, _trusted=True)
    l2 = Lattice(surf.rank, d.beta, _trusted=True)
    l3 = Lattice(surf.rank, d.gamma, _trusted=True)

    i13 = lattice_intersection(l1, l3)
    i23 = lattice_intersection(l2, l3)
    # gamma-coordinates of the two intersection bases; integral because
    # the intersections sit inside L3 and gamma's columns are a basis.
    coords = []
    for inter in (i13, i23):
        c = solve_matrix(d.gamma, inter.basis)
        assert c is not None, "intersection escaped the span of gamma"
        coords.append(c)
    pi = coords[0].hstack(coords[1])

    l1_rel = _relative_span(d, d.alpha)
    l2_rel = _relative_span(d, d.beta)
    c1 = lattice_intersection(l1_rel, l2_rel)
    rho = pairing_of_systems(surf, c1.basis, d.gamma, mu_relative=True)

    if not (rho @ pi).is_zero():
        raise ChainConditionViolated(
            "rho . pi != 0: some intersection class pairs nontrivially "
            "against the relative span")
    return ChainComplexData(l1=l1, l2=l2, l3=l3, l1_rel=l1_rel, l2_rel=l2_rel,
                            c3_alpha=i13.basis, c3_beta=i23.basis,
                            c1_basis=c1.basis, pi=pi, rho=rho)


def _cokernel(m: IntMatrix) -> tuple[int, tuple[int, ...]]:
    """(free rank, torsion) of Z^rows / column span of m."""
    diag = smith_normal_form(m).diagonal()
    r = sum(1 for x in diag if x)
    return m.rows - r, tuple(x for x in diag if x > 1)


def homology_of_complex(cc: ChainComplexData) -> HomologyResult:
    """Homology groups of an already-built chain complex."""
    h3 = (kernel_basis(cc.pi).rank, ())
    ker_rho = kernel_basis(cc.rho)
    image_in_kernel = solve_matrix(ker_rho.basis, cc.pi)
    assert image_in_kernel is not None, "im(pi) escapes the saturated kernel"
    h2 = _cokernel(image_in_kernel)
    h1 = _cokernel(cc.rho)
    return HomologyResult(groups=((1, ()), h1, h2, h3, (0, ())))


def homology(d: Diagram) -> HomologyResult:
    """H_0 .. H_4 of the trisected 4-manifold, exactly.

    For inputs that validate only homologically the output is still
    well defined (formal homology of the complex) but carries no
    manifold interpretation.
    """
    return homology_of_complex(build_chain_complex(d))


def linking_matrix(d: Diagram) -> IntMatrix:
    """Linking matrix of the gamma curves in the first sector's boundary.

    Only defined in the strict canonical position: alpha_i = A_i,
    beta_i = B_i, and the arcs equal to the standard configuration's
    (boundary arcs first, then the page handle pairs).  The middle
    factor is the half-pairing of that configuration: identity on the
    curve block, zero on boundary arcs, and a one-sided shift on each
    page handle pair.
    """
    from .surface import standard_configuration

    p = d.params
    if p.l > 0 and d.arcs is None:
        raise MissingArcs("linking matrix needs the arc system")
    cfg = standard_configuration(p.g, p.p, p.b)
    if d.alpha != cfg.alpha_matrix() or d.beta != cfg.beta_matrix():
        raise NotStandardPosition(
            "linking matrix requires alpha_i = A_i and beta_i = B_i exactly")
    arcs = list(d.arcs or ())
    if tuple(a.vector for a in arcs) != tuple(a.vector for a in cfg.arcs):
        raise NotStandardPosition(
            "linking matrix requires the canonical arc collection")

    surf = d.surface
    n = p.curves
    left = pairing_of_systems(surf, d.gamma, d.beta)
    right_rows = pairing_of_systems(surf, d.alpha, d.gamma)
    if arcs:
        arc_m = IntMatrix.from_columns([a.vector for a in arcs],
                                       ambient=surf.rank)
        arc_gamma = pairing_of_systems(surf, arc_m, d.gamma, mu_relative=True)
        left = left.hstack(arc_gamma.transpose())
        right_rows = IntMatrix._wrap(right_rows.to_rows() + arc_gamma.to_rows(),
                                     n)

    handle_block = IntMatrix([[0, 0], [1, 0]])
    blocks = [IntMatrix.identity(n), IntMatrix.zeros(p.b - 1, p.b - 1)]
    blocks += [handle_block] * p.p
    middle = IntMatrix.block_diagonal(blocks)
    return left @ middle @ right_rows


@dataclass(frozen=True)
class FormInvariants:
    """Classification data of a symmetric integer bilinear form."""

    rank: int
    signature: int
    parity: str                   # "even" | "odd"
    determinant: int

    def to_dict(self) -> dict:
        return {"rank": self.rank, "signature": self.signature,
                "parity": self.parity, "determinant": self.determinant}


def form_invariants(q: IntMatrix) -> FormInvariants:
    """Rank, signature, parity and determinant of a symmetric form.

    Signature comes from exact rational congruence diagonalization, so
    there is no numerical tolerance anywhere.
    """
    if q.rows != q.cols:
        raise DimensionMismatch("form matrix must be square")
    if not q.is_symmetric():
        raise NotSymmetric("form matrix must be symmetric")
    n = q.rows
    a = [[Fraction(q[i, j]) for j in range(n)] for i in range(n)]

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for r in range(n):
            a[r][i], a[r][j] = a[r][j], a[r][i]

    pos = neg = 0
    for t in range(n):
        if a[t][t] == 0:
            piv = next((i for i in range(t + 1, n) if a[i][i] != 0), None)
            if piv is not None:
                sym_swap(t, piv)
            else:
                hit = next(((i, j) for i in range(t, n) for j in range(i + 1, n)
                            if a[i][j] != 0), None)
                if hit is None:
                    break
                i, j = hit
                # row/col add makes the diagonal entry 2*a[i][j] != 0
                for c in range(n):
                    a[i][c] += a[j][c]
                for r in range(n):
                    a[r][i] += a[r][j]
                if i != t:
                    sym_swap(t, i)
        piv_val = a[t][t]
        if piv_val == 0:
            break
        if piv_val > 0:
            pos += 1
        else:
            neg += 1
        for i in range(t + 1, n):
            f = a[i][t] / piv_val
            if f:
                for c in range(n):
                    a[i][c] -= f * a[t][c]
                for r in range(n):
                    a[r][i] -= f * a[r][t]
    even = all(q[i, i] % 2 == 0 for i in range(n))
    return FormInvariants(rank=pos + neg, signature=pos - neg,
                          parity="even" if even else "odd",
                          determinant=determinant(q))
