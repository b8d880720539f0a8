"""Standardization of gamma systems and the homological Torelli comparison.

The pipeline drives a valid diagram with H_1(X) = 0 into the normal
form

    gamma_i = -alpha_i - sum_j qtilde[j][i] beta_j - d_i eta_i,
    qtilde  = B (+) Q (+) 0,

by recorded unimodular basis changes.  Every gamma change U is
accompanied by the compensating beta change U^-T and alpha change U
(the algebraic shadow of restoring standardness by handle slides), so
the running relations gamma.beta = I and beta.alpha = I are preserved
by construction and the final formula is checked, not assumed.  When
the input is already in normal form every step is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from .diagram import Diagram, TrisectionParams, validate
from .errors import (DimensionMismatch, H1NotZero, NotDirectSummand,
                     NotNormalizable, NotUnimodular, SymmetryViolated)
from .intlin import (IntMatrix, Lattice, is_unimodular, kernel_basis,
                     lattice_quotient, solve_matrix, unimodular_inverse)
from .invariants import (FormInvariants, build_chain_complex, form_invariants,
                         homology_of_complex)
from .monodromy import monodromy_action
from .surface import pairing_of_systems, standard_configuration


@dataclass(frozen=True)
class TransformationRecord:
    """Ordered log of the unimodular basis changes applied per system."""

    size: int
    entries: tuple[tuple[str, IntMatrix], ...] = ()

    def add(self, target: str, u: IntMatrix) -> "TransformationRecord":
        if target not in ("alpha", "beta", "gamma"):
            raise ValueError(f"unknown target {target!r}")
        if u.rows != self.size or u.cols != self.size:
            raise DimensionMismatch("recorded matrix has the wrong size")
        if not is_unimodular(u):
            raise NotUnimodular("recorded basis changes must be unimodular")
        if u == IntMatrix.identity(self.size):
            return self
        return TransformationRecord(self.size, self.entries + ((target, u),))

    def composite(self, target: str) -> IntMatrix:
        out = IntMatrix.identity(self.size)
        for t, u in self.entries:
            if t == target:
                out = out @ u
        return out

    def apply_to(self, d: Diagram) -> Diagram:
        return d.with_systems(alpha=d.alpha @ self.composite("alpha"),
                              beta=d.beta @ self.composite("beta"),
                              gamma=d.gamma @ self.composite("gamma"))

    @property
    def is_identity(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class StandardizationResult:
    """Normal form of a diagram plus the transformation that reached it.

    For a full run, qtilde equals pairing(alpha, gamma) of the
    standardized diagram and the gamma columns satisfy the closed
    formula exactly.  When the recovered intersection form is not
    unimodular the pipeline stops after the splitting step and returns
    a partial result (qtilde and the B block absent).
    """

    standardized: Diagram
    record: TransformationRecord
    Q: IntMatrix
    B: Optional[IntMatrix]
    Qtilde: Optional[IntMatrix]
    b2: int
    form: FormInvariants
    A_psi: Optional[IntMatrix]
    checks: dict = field(default_factory=dict)

    @property
    def partial(self) -> bool:
        return self.Qtilde is None


def orthogonal_split(m: IntMatrix, n1: int):
    """Split off a unimodular leading block of a partially symmetric form.

    Needs m[i][j] == m[j][i] whenever i < n1 or j < n1 and the leading
    n1 x n1 block unimodular.  Returns (u, m1, m2) with u unimodular of
    shape [[I, -b], [0, I]] and u^T m u == m1 (+) m2.
    """
    if m.rows != m.cols:
        raise DimensionMismatch("orthogonal_split needs a square matrix")
    n = m.rows
    if not 0 <= n1 <= n:
        raise DimensionMismatch(f"n1 = {n1} out of range for size {n}")
    for i in range(n):
        for j in range(n):
            if (i < n1 or j < n1) and m[i, j] != m[j, i]:
                raise SymmetryViolated(
                    f"m[{i}][{j}] != m[{j}][{i}] inside the symmetric range")
    m1 = m.take_rows(range(n1)).take_columns(range(n1))
    d_block = m.take_rows(range(n1)).take_columns(range(n1, n))
    b = unimodular_inverse(m1) @ d_block
    u_rows = []
    for i in range(n):
        if i < n1:
            u_rows.append(tuple(int(i == j) for j in range(n1))
                          + tuple(-b[i, j] for j in range(n - n1)))
        else:
            u_rows.append((0,) * n1
                          + tuple(int(i - n1 == j) for j in range(n - n1)))
    u = IntMatrix(u_rows, cols=n)
    split = u.transpose() @ m @ u
    m2 = split.take_rows(range(n1, n)).take_columns(range(n1, n))
    assert split == IntMatrix.block_diagonal([m1, m2]), "split left cross terms"
    return u, m1, m2


def _solve_unimodular_change(current: IntMatrix, target: IntMatrix,
                             what: str) -> IntMatrix:
    u = solve_matrix(current, target)
    if u is None or u.rows != u.cols or not is_unimodular(u):
        raise NotNormalizable(
            f"{what} system cannot be moved onto the canonical one by a "
            f"unimodular change of basis")
    return u


class _Pipeline:
    """Mutable state of one standardization run."""

    def __init__(self, d: Diagram):
        self.params = d.params
        self.n = d.params.curves
        self.l = d.params.l
        self.record = TransformationRecord(self.n)
        self.alpha = d.alpha
        self.beta = d.beta
        self.gamma = d.gamma
        cfg = standard_configuration(d.params.g, d.params.p, d.params.b)
        self.cfg = cfg
        self.surface = cfg.surface
        self.checks: dict = {}

    def diagram(self) -> Diagram:
        return Diagram(self.params, self.alpha, self.beta, self.gamma,
                       arcs=self.cfg.arcs, eta=self.cfg.eta)

    def move(self, target: str, u: IntMatrix):
        self.record = self.record.add(target, u)
        if target == "alpha":
            self.alpha = self.alpha @ u
        elif target == "beta":
            self.beta = self.beta @ u
        else:
            self.gamma = self.gamma @ u

    def compensated_gamma_move(self, u: IntMatrix):
        """gamma by u, beta by u^-T, alpha by u: keeps the running relations."""
        if u == IntMatrix.identity(self.n):
            return
        self.move("gamma", u)
        self.move("beta", unimodular_inverse(u).transpose())
        self.move("alpha", u)

    def alpha_gamma(self) -> IntMatrix:
        return pairing_of_systems(self.surface, self.alpha, self.gamma)

    def arcs_matrix(self) -> IntMatrix:
        return IntMatrix.from_columns([a.vector for a in self.cfg.arcs],
                                      ambient=self.surface.rank)


def standardize(d: Diagram) -> StandardizationResult:
    """Drive a diagram into the normal form of the gamma classes.

    Requires a diagram that validates, has k_1 = k_2 = l, whose alpha
    and beta systems span the canonical handle lattices, and whose
    4-manifold has H_1 = 0.  Arcs and eta of the result are the
    canonical configuration.  Raises NotNormalizable when the input is
    homologically valid but cannot reach the normal form by recorded
    moves, H1NotZero when the first homology obstruction fails, and
    returns a partial (flagged) result when the recovered intersection
    form is not unimodular.
    """
    report = validate(d)
    if not report.verdict:
        failing = [c.name for c in report.checks if c.failed]
        raise NotNormalizable(f"diagram fails validation checks: {failing}")
    p = d.params
    if p.k[0] != p.l or p.k[1] != p.l:
        raise NotNormalizable(
            f"standardization applies to (g,(l,l,k);p,b) diagrams; "
            f"got k = {p.k} with l = {p.l}")

    st = _Pipeline(d)
    n, l = st.n, st.l

    # step 0a: alpha and beta onto the canonical systems
    st.move("alpha", _solve_unimodular_change(st.alpha, st.cfg.alpha_matrix(),
                                              "alpha"))
    st.move("beta", _solve_unimodular_change(st.beta, st.cfg.beta_matrix(),
                                             "beta"))

    # step 0b: normalize gamma.beta = I
    gb = pairing_of_systems(st.surface, st.gamma, st.beta)
    try:
        st.move("gamma", unimodular_inverse(gb).transpose())
    except NotUnimodular as exc:
        raise NotNormalizable(f"gamma.beta is not unimodular: {exc}") from exc

    # homology gate (on the canonicalized diagram, with canonical arcs);
    # the complex also hands us the two intersection lattices for step 2
    cc = build_chain_complex(st.diagram())
    hom = homology_of_complex(cc)
    if not hom.is_zero(1):
        raise H1NotZero(f"H_1(X) = {hom.format_group(1)}, not 0")
    b2 = hom.b2
    st.checks["h1_zero"] = True

    # step 1: rho sends the first l gamma columns to the negative arc duals
    arcs_m = st.arcs_matrix()
    z = pairing_of_systems(st.surface, arcs_m, st.gamma, mu_relative=True)
    target = IntMatrix(((-int(i == j) for j in range(n)) for i in range(l)),
                       cols=n)
    if z != target:
        w = solve_matrix(z, -IntMatrix.identity(l))
        if w is None:
            raise H1NotZero("rho is not onto the arc duals over Z")
        u1 = w.hstack(kernel_basis(z).basis)
        assert is_unimodular(u1)
        st.compensated_gamma_move(u1)
        z = pairing_of_systems(st.surface, arcs_m, st.gamma, mu_relative=True)
        assert z == target
    st.checks["rho_pattern"] = True

    # step 2: split the kernel part into H_2 lifts and L1 ^ L3
    # (the intersections are span-level data, so the bases computed on
    # the pre-step-1 diagram are still bases now)
    if cc.c3_beta.cols != 0:
        raise NotNormalizable(
            "L2 ^ L3 is nonzero; the normal form has trivial intersection there")
    inter13 = Lattice(st.surface.rank, cc.c3_alpha, _trusted=True)
    tail = p.k[2] - p.l
    if inter13.rank != tail:
        raise NotNormalizable(
            f"rank(L1 ^ L3) = {inter13.rank}, normal form needs k - l = {tail}")
    if (n - l) - tail != b2:
        raise NotNormalizable(
            f"kernel of rho has rank {n - l} but b_2 + (k - l) = {b2 + tail}")
    tail_cols = st.gamma.take_columns(range(n - tail, n))
    already = (tail == 0 or
               Lattice.span(tail_cols).same_span(inter13))
    if not already:
        kernel_cols = st.gamma.take_columns(range(l, n))
        kl = Lattice(st.surface.rank, kernel_cols, _trusted=True)
        factors, lifts = lattice_quotient(inter13, kl)
        if factors:
            raise NotDirectSummand(
                f"H_2 lift obstructed by torsion factors {factors}")
        new_kernel = lifts.hstack(inter13.basis)
        u2_block = solve_matrix(kernel_cols, new_kernel)
        assert u2_block is not None and is_unimodular(u2_block)
        u2 = IntMatrix.block_diagonal([IntMatrix.identity(l), u2_block])
        st.compensated_gamma_move(u2)
    st.checks["kernel_split"] = True

    # Lemma 4.2 (3) shadow on the intermediate pairing matrix
    t_mat = st.alpha_gamma()
    sym_ok = all(t_mat[i, j] == t_mat[j, i]
                 for i in range(n) for j in range(n) if i >= l or j >= l)
    zero_ok = all(t_mat[i, j] == 0 and t_mat[j, i] == 0
                  for j in range(l + b2, n) for i in range(n))
    if not (sym_ok and zero_ok):
        raise NotNormalizable(
            "alpha.gamma lacks the symmetric-block shape after splitting; "
            "the diagram has no normal form over these systems")
    st.checks["lemma_symmetry"] = True

    q_block = t_mat.take_rows(range(l, l + b2)).take_columns(range(l, l + b2))
    st.checks["q_unimodular"] = is_unimodular(q_block)
    if not st.checks["q_unimodular"]:
        # theorem hypothesis H_1(dX) = 0 fails; stop after step (2)
        return StandardizationResult(
            standardized=st.diagram(), record=st.record, Q=q_block, B=None,
            Qtilde=None, b2=b2, form=form_invariants(q_block), A_psi=None,
            checks={**st.checks, "partial": True})

    # step 3: clear the cross block against the H_2 part
    head = l + b2
    main = t_mat.take_rows(range(head)).take_columns(range(head))
    perm = list(range(l, head)) + list(range(l))
    m_perm = main.take_rows(perm).take_columns(perm)
    u_split, m1, m2 = orthogonal_split(m_perm, b2)
    assert m1 == q_block
    # undo the permutation and pad the untouched zero tail
    pmat = IntMatrix(((int(perm[j] == i) for j in range(head))
                      for i in range(head)), cols=head)
    u3_main = pmat @ u_split @ pmat.transpose()
    u3 = IntMatrix.block_diagonal([u3_main, IntMatrix.identity(tail)])
    st.compensated_gamma_move(u3)

    qtilde = st.alpha_gamma()
    b_block = m2
    expected = IntMatrix.block_diagonal(
        [b_block, q_block, IntMatrix.zeros(tail, tail)])
    if qtilde != expected:
        raise NotNormalizable("alpha.gamma did not reach block-diagonal form")
    st.checks["alpha_gamma_equals_qtilde"] = True

    # closed formula for the standardized gamma classes, checked exactly
    final = st.diagram()
    for i in range(n):
        vec = [-x for x in final.alpha.col(i)]
        for j in range(n):
            c = qtilde[j, i]
            if c:
                bj = final.beta.col(j)
                vec = [v - c * x for v, x in zip(vec, bj)]
        if p.d(i + 1):
            ev = st.cfg.eta[i].vector
            vec = [v - x for v, x in zip(vec, ev)]
        if tuple(vec) != final.gamma.col(i):
            raise NotNormalizable(
                f"gamma_{i + 1} does not satisfy the normal-form formula")
    st.checks["gamma_formula"] = True
    st.checks["canonical_position"] = (final.alpha == st.cfg.alpha_matrix()
                                       and final.beta == st.cfg.beta_matrix())

    mono = monodromy_action(final)
    a_psi = mono.A_psi
    st.checks["monodromy_b_inverse"] = (
        a_psi is not None and b_block @ a_psi == IntMatrix.identity(l))

    return StandardizationResult(
        standardized=final, record=st.record, Q=q_block, B=b_block,
        Qtilde=qtilde, b2=b2, form=form_invariants(q_block), A_psi=a_psi,
        checks={**st.checks, "partial": False})


# -- Torelli comparison ------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of the homological Torelli comparison of two diagrams."""

    params_equal: bool
    monodromy_equal: Optional[bool]
    form_verdict: str            # "congruent" | "not_congruent" | "inconclusive"
    form_detail: str
    equivalent: Optional[bool]   # None = inconclusive
    certificate: Optional[IntMatrix]
    x_form: FormInvariants
    y_form: FormInvariants

    def verdict_text(self) -> str:
        if self.equivalent is True:
            return "equivalent"
        if self.equivalent is False:
            reasons = []
            if not self.params_equal:
                reasons.append("parameters")
            if self.monodromy_equal is False:
                reasons.append("monodromy")
            if self.form_verdict == "not_congruent":
                reasons.append(self.form_detail or "intersection form")
            return "not equivalent: " + ", ".join(reasons)
        return "inconclusive: " + self.form_detail


def _definite_congruent(qx: IntMatrix, qy: IntMatrix, bound: int = 3):
    """Exhaustive search for U with U^T qx U == qy, entries in [-bound, bound].

    Used only for definite forms of small rank, where the diagonal
    constraints cut the candidate sets down hard.
    """
    n = qx.rows
    if n == 0:
        return IntMatrix.zeros(0, 0)

    def qform(u, v):
        return sum(u[i] * qx[i, j] * v[j] for i in range(n) for j in range(n))

    candidates: list[list[tuple[int, ...]]] = []
    for j in range(n):
        want = qy[j, j]
        cand = [v for v in product(range(-bound, bound + 1), repeat=n)
                if qform(v, v) == want]
        if not cand:
            return None
        candidates.append(cand)

    cols: list[tuple[int, ...]] = []

    def extend(j):
        if j == n:
            u = IntMatrix.from_columns(cols, ambient=n)
            return u if is_unimodular(u) else None
        for v in candidates[j]:
            if all(qform(cols[i], v) == qy[i, j] for i in range(j)):
                cols.append(v)
                got = extend(j + 1)
                if got is not None:
                    return got
                cols.pop()
        return None

    return extend(0)


def _compare_forms(qx: IntMatrix, qy: IntMatrix) -> tuple[str, str]:
    fx = form_invariants(qx)
    fy = form_invariants(qy)
    if (fx.rank, fx.signature, fx.parity) != (fy.rank, fy.signature, fy.parity):
        diffs = [name for name, a, b in (
            ("rank", fx.rank, fy.rank),
            ("signature", fx.signature, fy.signature),
            ("parity", fx.parity, fy.parity)) if a != b]
        return "not_congruent", " and ".join(diffs) + " differ"
    if fx.rank == 0:
        return "congruent", "both forms are empty"
    unimodular = abs(fx.determinant) == 1 and abs(fy.determinant) == 1
    definite = abs(fx.signature) == fx.rank
    if not definite and unimodular:
        return ("congruent",
                "indefinite unimodular forms with equal rank/signature/parity")
    if definite and fx.rank <= 4:
        found = _definite_congruent(qx, qy)
        if found is not None:
            return "congruent", "explicit congruence found by bounded search"
        return ("inconclusive",
                "no congruence within the bounded search box")
    return ("inconclusive",
            f"definite form of rank {fx.rank} exceeds the bounded search")


def torelli_compare(dx: Diagram, dy: Diagram) -> ComparisonReport:
    """Compare two diagrams at the level Corollary-style cut-and-reglue
    equivalence is homologically checkable.

    Standardizes both, then matches parameters, monodromy action
    matrices and intersection forms.  When everything agrees and the
    standardized gamma class matrices coincide, that common matrix is
    the certificate: the two gamma systems differ by a class-preserving
    map of the surface.
    """
    rx = standardize(dx)
    ry = standardize(dy)
    params_equal = dx.params == dy.params
    if rx.A_psi is None or ry.A_psi is None:
        monodromy_equal: Optional[bool] = None
    else:
        monodromy_equal = rx.A_psi == ry.A_psi
    form_verdict, form_detail = _compare_forms(rx.Q, ry.Q)

    equivalent: Optional[bool]
    if not params_equal or monodromy_equal is False or form_verdict == "not_congruent":
        equivalent = False
    elif params_equal and monodromy_equal and form_verdict == "congruent":
        equivalent = True
    else:
        equivalent = None

    certificate = None
    if equivalent and rx.standardized.gamma == ry.standardized.gamma:
        certificate = rx.standardized.gamma
    return ComparisonReport(
        params_equal=params_equal, monodromy_equal=monodromy_equal,
        form_verdict=form_verdict, form_detail=form_detail,
        equivalent=equivalent, certificate=certificate,
        x_form=rx.form, y_form=ry.form)


def is_homologically_torelli(record: TransformationRecord, d: Diagram) -> bool:
    """Whether the recorded composite fixes every standard-configuration class.

    Gamma re-presentations never move the alpha, beta, arc or eta
    classes, so only the alpha and beta composites matter: the record
    is homologically Torelli exactly when both are the identity.
    """
    if record.size != d.params.curves:
        raise DimensionMismatch(
            f"record acts on {record.size} curves, diagram has {d.params.curves}")
    eye = IntMatrix.identity(record.size)
    return record.composite("alpha") == eye and record.composite("beta") == eye
