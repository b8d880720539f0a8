"""Homological monodromy: pushing arc classes around the three sectors.

One step moves the arcs across a sector boundary.  With kappa and
lambda lifting bases of L_i and L_(i+1) modulo their intersection, the
displacement is pinned down by demanding that the new arcs pair to
zero against the next cut system:

    R = -(a . lambda) (kappa . lambda)^(-1),
    a'_j = a_j + iota( sum_n R[j][n] kappa_n ).

Running the three steps and accumulating displacements in absolute
homology gives the columns [a4_j - a1_j]; on a normal-form diagram
these decompose over {alpha_j + eta_j} and the coefficient matrix is
the monodromy action (the inverse of the diagram's leading block).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .diagram import Diagram
from .errors import MissingArcs, DecompositionFailed
from .intlin import (IntMatrix, Lattice, is_unimodular, lattice_intersection,
                     lattice_quotient, solve_matrix, unimodular_inverse)
from .surface import (ArcClass, CurveClass, SurfaceModel, basis_determinant,
                      pairing_of_systems)


@dataclass(frozen=True)
class QuotientBases:
    """Lifted bases of L_i/(L_i ^ L_j) and L_j/(L_i ^ L_j)."""

    surface: SurfaceModel
    kappa: IntMatrix
    lam: IntMatrix

    def kappa_classes(self) -> list[CurveClass]:
        return [CurveClass(self.surface, self.kappa.col(j))
                for j in range(self.kappa.cols)]

    def lam_classes(self) -> list[CurveClass]:
        return [CurveClass(self.surface, self.lam.col(j))
                for j in range(self.lam.cols)]


@dataclass(frozen=True)
class MonodromyResult:
    """Step matrices, arc history and total displacement of the cycle."""

    R: tuple[IntMatrix, IntMatrix, IntMatrix]
    arc_history: tuple[tuple[ArcClass, ...], ...]   # a^1 .. a^4
    displacement: IntMatrix                         # columns [a4_j - a1_j]
    A_psi: Optional[IntMatrix]


def quotient_bases(li: Lattice, lj: Lattice, surface: SurfaceModel) -> QuotientBases:
    """Lift bases of the two quotients by L_i ^ L_j.

    Raises NotDirectSummand (from lattice_quotient) when the
    intersection has a torsion quotient in either lattice, which
    signals a homologically defective diagram.
    """
    from .errors import NotDirectSummand

    inter = lattice_intersection(li, lj)
    factors_i, kappa = lattice_quotient(inter, li)
    factors_j, lam = lattice_quotient(inter, lj)
    if factors_i or factors_j:
        raise NotDirectSummand(
            f"intersection is not a direct summand (torsion {factors_i or factors_j})")
    return QuotientBases(surface=surface, kappa=kappa, lam=lam)


def arc_step(arcs: Sequence[ArcClass], qb: QuotientBases):
    """One sector crossing: returns (R, new arcs).

    Requires (kappa . lambda) to be square and unimodular; otherwise
    the homological data does not determine the step and NotUnimodular
    propagates.
    """
    surf = qb.surface
    kl = pairing_of_systems(surf, qb.kappa, qb.lam)
    arc_m = IntMatrix.from_columns([a.vector for a in arcs],
                                   ambient=surf.rank)
    al = pairing_of_systems(surf, arc_m, qb.lam, mu_relative=True)
    r = -al @ unimodular_inverse(kl)
    shift = surf.to_relative @ qb.kappa @ r.transpose()
    new_arcs = tuple(
        ArcClass(surf, tuple(v + shift[row, j] for row, v in enumerate(a.vector)))
        for j, a in enumerate(arcs))
    return r, new_arcs


def _standard_position(d: Diagram) -> bool:
    """Whether d carries a dual configuration tying arcs to eta curves.

    This is the precondition for reading off the monodromy action: the
    arc/eta duality, the orthogonality of both cut systems to the
    configuration, and {alpha, beta, eta} a basis of H_1.
    """
    if d.arcs is None or d.eta is None:
        return False
    p = d.params
    if p.l > p.curves:
        return False
    arcs = list(d.arcs)
    eta = list(d.eta)
    alpha_cls = d.curve_classes("alpha")
    beta_cls = d.curve_classes("beta")
    if p.l:
        if pairing_matrix(arcs, eta) != IntMatrix.identity(p.l):
            return False
        if not pairing_matrix(arcs, alpha_cls).is_zero():
            return False
        if not pairing_matrix(arcs, beta_cls).is_zero():
            return False
        if not pairing_matrix(alpha_cls, eta).is_zero():
            return False
        if not pairing_matrix(beta_cls, eta).is_zero():
            return False
    return basis_determinant(alpha_cls + beta_cls + eta) in (1, -1)


def monodromy_action(d: Diagram) -> MonodromyResult:
    """Run the three arc steps around alpha -> beta -> gamma -> alpha.

    The action matrix is extracted only when the diagram carries the
    standard dual configuration: each displacement column is decomposed
    as sum_j c[j][i] (alpha_j + eta_j) and A_psi = c.  If the diagram
    is in that position but a column falls outside the span,
    DecompositionFailed is raised.
    """
    p = d.params
    surf = d.surface
    if p.l > 0 and d.arcs is None:
        raise MissingArcs(f"monodromy needs arcs (l = {p.l})")
    arcs0 = tuple(d.arcs or ())

    systems = [Lattice(surf.rank, d.alpha), Lattice(surf.rank, d.beta),
               Lattice(surf.rank, d.gamma)]
    history = [arcs0]
    steps: list[IntMatrix] = []
    displacement = IntMatrix.zeros(surf.rank, p.l)
    arcs = arcs0
    for i in range(3):
        qb = quotient_bases(systems[i], systems[(i + 1) % 3], surf)
        r, arcs = arc_step(arcs, qb)
        steps.append(r)
        displacement = displacement + qb.kappa @ r.transpose()
        history.append(arcs)

    a_psi = None
    if _standard_position(d):
        if p.l == 0:
            a_psi = IntMatrix.zeros(0, 0)
        else:
            targets = [
                tuple(x + y for x, y in zip(d.alpha.col(j), d.eta[j].vector))
                for j in range(p.l)]
            target_m = IntMatrix.from_columns(targets, ambient=surf.rank)
            coeffs = solve_matrix(target_m, displacement)
            if coeffs is None:
                raise DecompositionFailed(
                    "displacement columns are not integral combinations of "
                    "the alpha_j + eta_j classes")
            a_psi = coeffs
    return MonodromyResult(R=tuple(steps), arc_history=tuple(history),
                           displacement=displacement, A_psi=a_psi)
