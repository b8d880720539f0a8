"""Relative trisection diagrams: data model, validation, synthesis, files.

A diagram is stored purely homologically: three rank x (g-p) integer
class matrices over the canonical surface basis, plus optional arc and
dual-curve systems.  Validation checks *necessary* homological
conditions only; a passing report never certifies that a diagram is
geometric, it certifies that no homological obstruction was found.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (DimensionMismatch, InvalidParams, MissingArcs,
                     NotSymmetric, NotUnimodular, ParseError)
from .intlin import IntMatrix, Lattice, is_unimodular, lattice_intersection, rank as matrix_rank
from .surface import (ArcClass, CurveClass, SurfaceModel, pairing_matrix,
                      pairing_of_systems, standard_configuration,
                      sutured_pattern_holds)

FORMAT_VERSION = 1
BASIS_TAG = "canonical-v1"
_KNOWN_KEYS = {"format_version", "params", "basis", "alpha", "beta", "gamma",
               "arcs", "eta"}
_PARAM_KEYS = {"g", "b", "p", "k"}


@dataclass(frozen=True)
class TrisectionParams:
    """Numerical data (g, b, p; k_1, k_2, k_3) of a relative trisection."""

    g: int
    b: int
    p: int
    k: tuple[int, int, int]

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if len(self.k) != 3:
            raise InvalidParams("k must be a triple")

    @property
    def l(self) -> int:
        return 2 * self.p + self.b - 1

    @property
    def curves(self) -> int:
        return self.g - self.p

    def d(self, i: int) -> int:
        """Indicator d_i: 1 for 1 <= i <= l, else 0."""
        return 1 if 1 <= i <= self.l else 0

    def constraint_violations(self) -> list[str]:
        out = []
        if not (self.g >= self.p >= 0):
            out.append(f"need g >= p >= 0, got g={self.g}, p={self.p}")
        if self.b < 1:
            out.append(f"need b >= 1, got b={self.b}")
        for i, ki in enumerate(self.k, start=1):
            if not (self.g + self.p + self.b - 1 >= ki >= self.l):
                out.append(
                    f"need g+p+b-1 >= k_{i} >= l, got k_{i}={ki}, "
                    f"l={self.l}, g+p+b-1={self.g + self.p + self.b - 1}")
        return out


class Diagram:
    """Trisection diagram over the canonical surface model.

    Curve systems are rank x (g-p) matrices whose columns are the curve
    classes; arcs and eta are optional length-l systems.  Construction
    enforces shapes only; deeper conditions are validate()'s job, so
    that defective diagrams can still be loaded and reported on.
    """

    __slots__ = ("params", "surface", "alpha", "beta", "gamma", "arcs", "eta")

    def __init__(self, params: TrisectionParams, alpha: IntMatrix,
                 beta: IntMatrix, gamma: IntMatrix,
                 arcs: Optional[Sequence[ArcClass]] = None,
                 eta: Optional[Sequence[CurveClass]] = None):
        if params.g < 0 or params.b < 1 or params.p < 0 or params.p > params.g:
            raise InvalidParams(
                f"cannot build surface for g={params.g}, b={params.b}, p={params.p}")
        surface = SurfaceModel(params.g, params.b)
        n = params.curves
        for name, m in (("alpha", alpha), ("beta", beta), ("gamma", gamma)):
            if m.rows != surface.rank or m.cols != n:
                raise DimensionMismatch(
                    f"{name} must be {surface.rank} x {n}, got {m.rows} x {m.cols}")
        for name, system in (("arcs", arcs), ("eta", eta)):
            if system is not None and len(system) != params.l:
                raise DimensionMismatch(
                    f"{name} must contain l = {params.l} classes, got {len(system)}")
        if arcs is not None:
            for a in arcs:
                if a.surface != surface:
                    raise DimensionMismatch("arc on the wrong surface")
        if eta is not None:
            for e in eta:
                if e.surface != surface:
                    raise DimensionMismatch("eta curve on the wrong surface")
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "surface", surface)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "arcs", tuple(arcs) if arcs is not None else None)
        object.__setattr__(self, "eta", tuple(eta) if eta is not None else None)

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def system(self, name: str) -> IntMatrix:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}[name]

    def curve_classes(self, name: str) -> list[CurveClass]:
        m = self.system(name)
        return [CurveClass(self.surface, m.col(j)) for j in range(m.cols)]

    def with_systems(self, alpha: IntMatrix | None = None,
                     beta: IntMatrix | None = None,
                     gamma: IntMatrix | None = None,
                     arcs=None, eta=None) -> "Diagram":
        return Diagram(self.params,
                       alpha if alpha is not None else self.alpha,
                       beta if beta is not None else self.beta,
                       gamma if gamma is not None else self.gamma,
                       arcs if arcs is not None else self.arcs,
                       eta if eta is not None else self.eta)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Diagram)
                and self.params == other.params
                and self.alpha == other.alpha
                and self.beta == other.beta
                and self.gamma == other.gamma
                and self.arcs == other.arcs
                and self.eta == other.eta)

    def __hash__(self):
        return hash((self.params, self.alpha, self.beta, self.gamma,
                     self.arcs, self.eta))

    def __repr__(self):
        return (f"Diagram(g={self.params.g}, b={self.params.b}, "
                f"p={self.params.p}, k={self.params.k})")


@dataclass(frozen=True)
class CheckResult:
    name: str
    outcome: str                 # "pass" | "fail" | "skipped"
    detail: str = ""
    witness: Optional[IntMatrix] = None

    @property
    def failed(self) -> bool:
        return self.outcome == "fail"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the necessary homological checks.

    A passing verdict means no obstruction was found; it does not
    assert that the diagram is realized by an actual trisection.
    """

    checks: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def verdict(self) -> bool:
        return not any(c.failed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "verdict": "pass" if self.verdict else "fail",
            "necessary_conditions_only": True,
            "checks": [
                {"name": c.name, "outcome": c.outcome, "detail": c.detail,
                 **({"witness": c.witness.to_lists()} if c.witness is not None else {})}
                for c in self.checks
            ],
        }


_PAIR_NAMES = (("alpha", "beta"), ("beta", "gamma"), ("gamma", "alpha"))


def validate(d: Diagram) -> ValidationReport:
    """Run the necessary homological checks on a diagram.

    Checks: parameter constraints; curve-count/independence of each
    system; the sutured pairing pattern SNF = I ++ 0 for each cyclic
    pair; the intersection-rank lower bound; and the chain condition
    rho . pi = 0 (skipped with a note when arcs are absent and l > 0).
    """
    checks: list[CheckResult] = []
    p = d.params

    violations = p.constraint_violations()
    checks.append(CheckResult(
        "params", "fail" if violations else "pass", "; ".join(violations)))

    sys_bad = []
    for name in ("alpha", "beta", "gamma"):
        m = d.system(name)
        if matrix_rank(m) != m.cols:
            sys_bad.append(f"{name} classes are linearly dependent")
    checks.append(CheckResult(
        "systems", "fail" if sys_bad else "pass", "; ".join(sys_bad)))

    params_ok = not violations
    for idx, (n1, n2) in enumerate(_PAIR_NAMES):
        ki = p.k[idx]
        name = f"sutured_pairing[{n1},{n2}]"
        if not params_ok:
            checks.append(CheckResult(name, "skipped", "parameter check failed"))
            continue
        pm = pairing_of_systems(d.surface, d.system(n1), d.system(n2))
        ones = p.curves - ki + p.l
        ok = sutured_pattern_holds(pm, ones)
        checks.append(CheckResult(
            name, "pass" if ok else "fail",
            f"SNF must be I_{ones} padded by zeros (k_{idx + 1}={ki})",
            witness=pm))

    spans = {name: Lattice.span(d.system(name))
             for name in ("alpha", "beta", "gamma")} if params_ok else {}
    for idx, (n1, n2) in enumerate(_PAIR_NAMES):
        ki = p.k[idx]
        name = f"intersection_rank[{n1},{n2}]"
        if not params_ok:
            checks.append(CheckResult(name, "skipped", "parameter check failed"))
            continue
        r = lattice_intersection(spans[n1], spans[n2]).rank
        ok = r >= ki - p.l
        checks.append(CheckResult(
            name, "pass" if ok else "fail",
            f"rank(L_{n1} ^ L_{n2}) = {r}, need >= k_{idx + 1} - l = {ki - p.l}"))

    if not params_ok or sys_bad:
        checks.append(CheckResult("chain_condition", "skipped",
                                  "earlier checks failed"))
    elif d.arcs is None and p.l > 0:
        checks.append(CheckResult("chain_condition", "skipped",
                                  "no arcs present; chain complex not available"))
    else:
        from .invariants import build_chain_complex
        from .errors import ChainConditionViolated
        try:
            build_chain_complex(d)
            checks.append(CheckResult("chain_condition", "pass",
                                      "rho . pi = 0"))
        except ChainConditionViolated as exc:
            checks.append(CheckResult("chain_condition", "fail", str(exc)))

    return ValidationReport(checks=tuple(checks))


def synthesize_diagram(q: IntMatrix, b_matrix: IntMatrix, k: int, p: int,
                       b: int) -> Diagram:
    """Build the normal-form diagram prescribed by algebraic data.

    Given a symmetric block q, a unimodular l x l block b_matrix and a
    surplus k >= l, produces the diagram on genus p + l + size(q) +
    (k - l) whose gamma classes follow the closed formula

        gamma_i = -alpha_i - sum_j qtilde[j][i] beta_j - d_i eta_i

    with qtilde = b_matrix (+) q (+) 0.  The result carries the full
    standard configuration (arcs and eta) and parameters (l, l, k).
    Synthesis never checks |det q| = 1: non-unimodular blocks are
    useful as counterexamples, but only unimodular ones validate.
    """
    if q.rows != q.cols:
        raise DimensionMismatch("q must be square")
    if not q.is_symmetric():
        raise NotSymmetric("q must be symmetric")
    l = 2 * p + b - 1
    if p < 0 or b < 1:
        raise InvalidParams(f"need p >= 0 and b >= 1, got p={p}, b={b}")
    if b_matrix.rows != l or b_matrix.cols != l:
        raise DimensionMismatch(f"b_matrix must be {l} x {l} for p={p}, b={b}")
    if not is_unimodular(b_matrix):
        raise NotUnimodular("b_matrix must have determinant +-1")
    if k < l:
        raise InvalidParams(f"need k >= l = {l}, got k={k}")

    g = p + l + q.rows + (k - l)
    params = TrisectionParams(g=g, b=b, p=p, k=(l, l, k))
    cfg = standard_configuration(g, p, b)
    surf = cfg.surface
    n = params.curves
    qtilde = IntMatrix.block_diagonal(
        [b_matrix, q, IntMatrix.zeros(k - l, k - l)])

    alpha = cfg.alpha_matrix()
    beta = cfg.beta_matrix()
    gamma_cols = []
    for i in range(n):
        vec = [-x for x in alpha.col(i)]
        for j in range(n):
            c = qtilde[j, i]
            if c:
                bj = beta.col(j)
                vec = [v - c * x for v, x in zip(vec, bj)]
        if params.d(i + 1):
            ev = cfg.eta[i].vector
            vec = [v - x for v, x in zip(vec, ev)]
        gamma_cols.append(tuple(vec))
    gamma = IntMatrix.from_columns(gamma_cols, ambient=surf.rank)
    return Diagram(params, alpha, beta, gamma, arcs=cfg.arcs, eta=cfg.eta)


def synthesized_qtilde(q: IntMatrix, b_matrix: IntMatrix, k: int) -> IntMatrix:
    """The block matrix b_matrix (+) q (+) 0^(k-l) used by the synthesizer."""
    return IntMatrix.block_diagonal(
        [b_matrix, q, IntMatrix.zeros(k - b_matrix.rows, k - b_matrix.rows)])


# -- file format -----------------------------------------------------


def _vectors_of(matrix: IntMatrix) -> list[list[int]]:
    return [list(matrix.col(j)) for j in range(matrix.cols)]


def serialize_diagram(d: Diagram) -> str:
    doc: dict = {
        "format_version": FORMAT_VERSION,
        "params": {"g": d.params.g, "b": d.params.b, "p": d.params.p,
                   "k": list(d.params.k)},
        "basis": BASIS_TAG,
        "alpha": _vectors_of(d.alpha),
        "beta": _vectors_of(d.beta),
        "gamma": _vectors_of(d.gamma),
    }
    if d.arcs is not None:
        doc["arcs"] = [list(a.vector) for a in d.arcs]
    if d.eta is not None:
        doc["eta"] = [list(e.vector) for e in d.eta]
    return json.dumps(doc, indent=1) + "\n"


def _expect_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _read_system(doc: dict, name: str, count: int, length: int,
                 required: bool) -> list[tuple[int, ...]] | None:
    if name not in doc:
        if required:
            raise ParseError(f"missing key {name!r}")
        return None
    raw = doc[name]
    if not isinstance(raw, list):
        raise ParseError(f"{name}: expected a list of vectors")
    if len(raw) != count:
        raise DimensionMismatch(
            f"{name}: expected {count} vectors, got {len(raw)}")
    out = []
    for i, vec in enumerate(raw):
        if not isinstance(vec, list):
            raise ParseError(f"{name}[{i}]: expected a vector")
        if len(vec) != length:
            raise DimensionMismatch(
                f"{name}[{i}]: vector has length {len(vec)}, expected {length}")
        out.append(tuple(_expect_int(x, f"{name}[{i}]") for x in vec))
    return out


def parse_diagram(text: str) -> Diagram:
    """Parse the JSON diagram format (format_version 1, canonical basis).

    Unknown keys are rejected.  Parameter *constraints* (the k-range
    inequalities) are deliberately not enforced here so that defective
    diagrams can be loaded and then failed by validate(); only values
    that make the surface itself meaningless raise InvalidParams.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    unknown = set(doc) - _KNOWN_KEYS
    if unknown:
        raise ParseError(f"unknown keys under format_version 1: {sorted(unknown)}")
    for key in ("format_version", "params", "basis", "alpha", "beta", "gamma"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    if doc["format_version"] != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc['format_version']!r}")
    if doc["basis"] != BASIS_TAG:
        raise ParseError(f"unsupported basis {doc['basis']!r}")
    raw_params = doc["params"]
    if not isinstance(raw_params, dict) or set(raw_params) != _PARAM_KEYS:
        raise ParseError("params must carry exactly the keys g, b, p, k")
    k_raw = raw_params["k"]
    if not isinstance(k_raw, list) or len(k_raw) != 3:
        raise ParseError("params.k must be a list of three integers")
    params = TrisectionParams(
        g=_expect_int(raw_params["g"], "params.g"),
        b=_expect_int(raw_params["b"], "params.b"),
        p=_expect_int(raw_params["p"], "params.p"),
        k=tuple(_expect_int(x, "params.k") for x in k_raw))
    if params.g < 0 or params.b < 1 or params.p < 0 or params.p > params.g:
        raise InvalidParams(
            f"no surface for g={params.g}, b={params.b}, p={params.p}")
    rank = 2 * params.g + params.b - 1
    n = params.curves
    systems = {
        name: _read_system(doc, name, n, rank, required=True)
        for name in ("alpha", "beta", "gamma")
    }
    arcs_vecs = _read_system(doc, "arcs", params.l, rank, required=False)
    eta_vecs = _read_system(doc, "eta", params.l, rank, required=False)

    surf = SurfaceModel(params.g, params.b)
    arcs = [ArcClass(surf, v) for v in arcs_vecs] if arcs_vecs is not None else None
    eta = [CurveClass(surf, v) for v in eta_vecs] if eta_vecs is not None else None
    return Diagram(
        params,
        IntMatrix.from_columns(systems["alpha"], ambient=rank),
        IntMatrix.from_columns(systems["beta"], ambient=rank),
        IntMatrix.from_columns(systems["gamma"], ambient=rank),
        arcs=arcs, eta=eta)


def trivial_disk_diagram() -> Diagram:
    """The empty diagram of the 4-ball: g = p = 0, b = 1, k = (0, 0, 0)."""
    params = TrisectionParams(g=0, b=1, p=0, k=(0, 0, 0))
    empty = IntMatrix.zeros(0, 0)
    return Diagram(params, empty, empty, empty, arcs=(), eta=())
