"""Run every structural check on an algebra and collect a report."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .algebra import Algebra, AlgebraElement, find_identity, identity_first, is_associative
from .conjugation import (DEFAULT_SEED, CMatrix, InvolutionReport, SelfConjugationReport,
                          involution_check, pick_invertible_c, solve_c_space,
                          verify_self_conjugated)
from .integration import IntegralFunctional, integral_functional, verify_completeness
from .linalg import SquareMatrix


@dataclass
class Check:
    name: str
    passed: Optional[bool]
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class Analysis:
    algebra: Algebra
    checks: list[Check] = dc_field(default_factory=list)
    c_rank: int = 0
    c: Optional[CMatrix] = None
    c_source: str = ""
    identity: Optional[AlgebraElement] = None
    functional: Optional[IntegralFunctional] = None
    self_conjugation: Optional[SelfConjugationReport] = None
    involution: Optional[InvolutionReport] = None

    def check(self, name: str) -> Optional[bool]:
        for c in self.checks:
            if c.name == name:
                return c.passed
        raise KeyError(name)

    @property
    def ok(self) -> bool:
        return all(c.passed is not False for c in self.checks)

    def to_dict(self) -> dict:
        fmt = self.algebra.field.format
        return {
            "checks": [c.to_dict() for c in self.checks],
            "c_rank": self.c_rank,
            "integral": [fmt(v) for v in self.functional.values] if self.functional else [],
        }


def analyze(algebra: Algebra, c: Optional[SquareMatrix] = None,
            reference_c: Optional[SquareMatrix] = None,
            seed: int = DEFAULT_SEED, involution: bool = True) -> Analysis:
    """Associativity, identity, C solution space, self-conjugation,
    completeness and (optionally) the involution structure.

    C precedence: ``c`` (user supplied), then ``reference_c`` (catalog), then
    the solver's pick.
    """
    out = Analysis(algebra)
    assoc = is_associative(algebra)
    out.checks.append(Check("associative", assoc.associative,
                            "" if assoc.associative else
                            f"{len(assoc.triple_violations)} violated triples"))
    e = find_identity(algebra)
    out.identity = e
    if e is None:
        out.checks.append(Check("unital", False, "no identity"))
        return out
    placement = identity_first(algebra) if algebra.identity_index != 0 else None
    detail = placement.note if placement else "identity is x0"
    out.checks.append(Check("unital", True, detail))
    if not assoc.associative:
        return out

    space = solve_c_space(algebra)
    out.c_rank = len(space)
    if c is not None:
        chosen, out.c_source = CMatrix.from_matrix(c, len(space)) if c.det() else None, "user"
    elif reference_c is not None:
        chosen, out.c_source = CMatrix.from_matrix(reference_c, len(space)), "reference"
    else:
        chosen, out.c_source = pick_invertible_c(space, seed=seed, identity=e), "solver"
    if chosen is None:
        msg = "C is singular" if c is not None else \
            ("only C = 0 intertwines" if not space else "no invertible C found")
        out.checks.append(Check("self_conjugated", False, msg))
        return out
    out.c = chosen
    sc = verify_self_conjugated(algebra, chosen)
    out.self_conjugation = sc
    detail = f"C from {out.c_source}; solution space rank {len(space)}"
    if len(space) > 1:
        detail += " (integral depends on the choice of C)"
    if not sc.ok:
        detail += f"; intertwining fails for {list(sc.intertwining_violations)}"
    out.checks.append(Check("self_conjugated", sc.ok, detail))
    if not sc.ok:
        return out

    fn = integral_functional(algebra, chosen, strict=False, identity=e)
    comp = verify_completeness(fn)
    out.checks.append(Check("completeness", comp.ok,
                            "" if comp.ok else f"{len(comp.right_violations)} cells violated"))
    if comp.ok:
        out.functional = fn
    if involution:
        inv = involution_check(algebra, chosen)
        out.involution = inv
        out.checks.append(Check("involution", None if not inv.is_involution else True,
                                f"cc*=1: {inv.cc_star_check}, antihomomorphism violations: "
                                f"{len(inv.antihomomorphism_violations)}, *-rep: {inv.star_rep_check}"))
        if inv.theorem_applies:
            out.checks.append(Check("unitary_symmetric_c", inv.theorem_holds,
                                    "*-representation implies unitary symmetric C"))
    return out
