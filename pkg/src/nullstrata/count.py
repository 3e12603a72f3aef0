"""Point counts of nullcones over finite fields, with identity checks."""
from __future__ import annotations

from dataclasses import dataclass, field

from .polynomial import InexactDivision, IntPolynomial
from .repchar import ModuleCharacter, adjoint_character, dual_character
from .rootsys import ConsistencyError, InputError
from .strata import Engine, GroupState, Stratum, default_engine, stratum_poly

__all__ = [
    "CountReport",
    "CheckResult",
    "count_module",
    "projective_poly",
    "verify_identities",
    "group_case_counts",
    "stratum_poly",
]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"passed": self.passed, "detail": self.detail}


@dataclass
class CountReport:
    type: str
    module: str
    character: ModuleCharacter
    n_V: IntPolynomial
    strata: list[Stratum]
    n_prime: IntPolynomial
    nonneg_conjecture_holds: bool
    checks: list[CheckResult] = field(default_factory=list)
    labels: dict = field(default_factory=dict)

    @property
    def max_dim(self) -> int:
        return max((s.dim for s in self.strata), default=0)

    def to_json(self, evals=()) -> dict:
        datum = self.character.datum
        out = {
            "type": self.type,
            "module": self.module,
            "n": self.n_V.tolist(),
            "n_prime": self.n_prime.tolist(),
            "n_prime_nonnegative": self.nonneg_conjecture_holds,
            "strata": [s.to_json(datum) for s in self.strata],
            "checks": {c.name: c.to_json() for c in self.checks},
        }
        if evals:
            out["eval"] = {str(q): self.n_V(q) for q in evals}
        if self.labels:
            out.update(self.labels)
        return out


def projective_poly(n_V: IntPolynomial) -> tuple[IntPolynomial, bool]:
    """(n_V - 1) / (t - 1) and whether all its coefficients are nonnegative."""
    try:
        q = (n_V - 1).exact_div(IntPolynomial([-1, 1]))
    except InexactDivision as exc:
        raise ConsistencyError(f"n_V(1) != 1: {exc}") from exc
    return q, all(c >= 0 for c in q.coeffs)


def count_module(ch: ModuleCharacter, module: str = "", engine: Engine | None = None,
                 with_dual_check: bool = True) -> CountReport:
    engine = engine or default_engine()
    datum = ch.datum
    state = GroupState.top(datum)
    strata = engine.enumerate_strata(state, ch)
    # summed here from the per-stratum contributions, independently of the memo
    n_V = IntPolynomial([1])
    for s in strata:
        n_V = n_V + s.contribution
    n_prime, nonneg = projective_poly(n_V)
    report = CountReport(type=str(datum.type_spec), module=module, character=ch, n_V=n_V,
                         strata=strata, n_prime=n_prime, nonneg_conjecture_holds=nonneg)
    report.checks = verify_identities(report, engine=engine, with_dual=with_dual_check)
    return report


def verify_identities(report: CountReport, engine: Engine | None = None,
                      with_dual: bool = True) -> list[CheckResult]:
    """Partition identity, n_V(1) = 1, degree = max stratum dimension, and
    equality of the counts for V and its dual."""
    engine = engine or default_engine()
    results = []
    total = IntPolynomial([1])
    for s in report.strata:
        total = total + s.contribution
    results.append(CheckResult("partition", total == report.n_V,
                               f"1 + sum(contributions) = {total}; n_V = {report.n_V}"))
    results.append(CheckResult("n_at_1", report.n_V(1) == 1, f"n_V(1) = {report.n_V(1)}"))
    deg_ok = report.n_V.degree == report.max_dim
    results.append(CheckResult("degree", deg_ok,
                               f"deg n_V = {report.n_V.degree}; max stratum dim = {report.max_dim}"))
    if with_dual:
        dual = dual_character(report.character)
        state = GroupState.top(report.character.datum)
        dual_strata = engine.enumerate_strata(state, dual)
        n_dual = IntPolynomial([1])
        for s in dual_strata:
            n_dual = n_dual + s.contribution
        same = n_dual == report.n_V
        results.append(CheckResult("dual", same, f"n_V* = {n_dual}"))
    return results


def group_case_counts(report: CountReport) -> CountReport:
    """Re-label an adjoint report as counts of unipotent pieces of the group.

    Each piece of the unipotent variety has as many F_q-points as the
    corresponding nilpotent piece, so the polynomials carry over unchanged;
    the total must be Steinberg's t^(dim G - rank G).
    """
    datum = report.character.datum
    if report.character.weights != adjoint_character(datum).weights:
        raise InputError("unipotent piece counts need the adjoint module")
    steinberg = IntPolynomial.monomial(datum.dim - datum.rank)
    report.labels = {
        "variety": "unipotent",
        "unipotent_total": report.n_V.tolist(),
        "unipotent_pieces": [s.contribution.tolist() for s in report.strata],
        "steinberg_ok": report.n_V == steinberg,
    }
    report.checks.append(CheckResult("steinberg", report.n_V == steinberg,
                                     f"expected t^{datum.dim - datum.rank}"))
    return report
