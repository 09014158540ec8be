"""Arithmetic audits: global cusp identities, bounds, and fibration ledgers.

Every audit produces an AuditReport of named checks carrying both compared
values, so a failure is always reproducible from the report alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .divisor import discriminant, is_negative_definite, resolution_graph
from .families import CurveRecord, FamilySpec, expected_reduced_multiplicities, generate
from .hn import format_hn, standardize, validate
from .invariants import (
    FULL,
    compute_M_I,
    hn_to_multiplicity,
    multiplicity_to_standard_hn,
)

GENERIC = "generic"
Q_ACYCLIC_CSTST = "q_acyclic_Cstst"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: Union[int, str]
    rhs: Union[int, str]


@dataclass(frozen=True)
class AuditReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> tuple[Check, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def to_json_obj(self) -> dict:
        return {
            "checks": [
                {"name": c.name, "pass": c.passed, "lhs": str(c.lhs), "rhs": str(c.rhs)}
                for c in self.checks
            ]
        }

    def extend(self, other: "AuditReport") -> "AuditReport":
        return AuditReport(self.checks + other.checks)


def _eq(name: str, lhs, rhs) -> Check:
    return Check(name, lhs == rhs, lhs, rhs)


def _le(name: str, lhs, rhs) -> Check:
    return Check(name, lhs <= rhs, lhs, rhs)


def check_hn_equations(curve: CurveRecord) -> AuditReport:
    """The three degree/genus identities tying the cusps to the curve.

    (a) gamma - 2 + 3d equals the sum of the M values, (b) gamma + d^2
    equals the sum of the I values, (c) (d-1)(d-2) equals the sum of I - M.
    The third follows from the first two; it is still checked separately.
    """
    d, g = curve.degree, curve.gamma
    ms, is_ = [], []
    for _, std in curve.cusps:
        m, i = compute_M_I(std)
        ms.append(m)
        is_.append(i)
    return AuditReport((
        _eq("hn_equation_a", g - 2 + 3 * d, sum(ms)),
        _eq("hn_equation_b", g + d * d, sum(is_)),
        _eq("hn_equation_c", (d - 1) * (d - 2), sum(is_) - sum(ms)),
    ))


def check_E2_bounds(curve: CurveRecord) -> AuditReport:
    """Self-intersection bounds E^2 <= -2 (one cusp), <= -1 (two), <= 7-3c."""
    c = len(curve.cusps)
    e2 = -curve.gamma
    checks = []
    if c == 1:
        checks.append(_le("E2_single_cusp_bound", e2, -2))
    elif c == 2:
        checks.append(_le("E2_two_cusp_bound", e2, -1))
    checks.append(_le("E2_general_bound", e2, 7 - 3 * c))
    return AuditReport(tuple(checks))


def kkd(curve: CurveRecord) -> int:
    """K.(K+D) of the minimal log resolution, from the blowup counts.

    Each cusp contributes r_j blowups beyond the first: the head quotient
    plus, per later pair, one plus its quotient.  The count is tied to the
    standard form; raw pair lists decompose the same process differently.
    """
    total = 0
    for _, std in curve.cusps:
        pairs = std.pairs
        r = pairs[0].c // pairs[0].p
        for pr in pairs[1:]:
            r += 1 + pr.p // pr.c
        assert r >= len(pairs), (format_hn(std), r)
        total += 2 + r
    return 9 - total - 2 + curve.gamma


@dataclass(frozen=True)
class FibrationLedger:
    """Counting data of one C**-fibration: horizontal components h, the
    number nu of fibers contained in the boundary, and per-degenerate-fiber
    section counts sigma (with optional Euler characteristics)."""

    h: int
    nu: int
    sigmas: tuple[int, ...]
    chis: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "sigmas", tuple(int(s) for s in self.sigmas))
        if self.chis is not None:
            object.__setattr__(self, "chis", tuple(int(x) for x in self.chis))
        if self.h < 1:
            raise ValueError(f"h = {self.h} must be >= 1")
        if self.nu < 0:
            raise ValueError(f"nu = {self.nu} must be >= 0")
        if any(s < 1 for s in self.sigmas):
            raise ValueError(f"every sigma must be >= 1, got {self.sigmas}")
        if self.chis is not None and len(self.chis) != len(self.sigmas):
            raise ValueError("chis must pair up with sigmas")


def fibration_ledger(ledger: FibrationLedger, mode: str = GENERIC) -> AuditReport:
    """Check the fiber-counting identities of a fibration ledger.

    Generic mode: h + nu - 2 equals the sum of (sigma - 1) over degenerate
    fibers.  The q_acyclic_Cstst mode adds the constraints specific to a
    C**-fibration of a Q-acyclic surface: exactly 3 - nu degenerate fibers,
    sigma summing to h + 1, nu <= 1, and (when Euler characteristics are
    supplied) the surface Euler characteristic identity.
    """
    if mode not in (GENERIC, Q_ACYCLIC_CSTST):
        raise ValueError(f"unknown ledger mode {mode!r}")
    checks = [
        _eq("sigma_count_identity", ledger.h + ledger.nu - 2,
            sum(s - 1 for s in ledger.sigmas)),
    ]
    if mode == Q_ACYCLIC_CSTST:
        checks.append(_eq("degenerate_fiber_count", len(ledger.sigmas), 3 - ledger.nu))
        checks.append(_eq("sigma_sum", sum(ledger.sigmas), ledger.h + 1))
        checks.append(_le("nu_bound", ledger.nu, 1))
        if ledger.chis is not None:
            # chi(V) = chi(B)chi(f) + sum (chi(F_b) - chi(f)) with
            # chi(V) = 1, chi(f) = -1, chi(B) = 2 - nu
            rhs = -(2 - ledger.nu) + sum(x + 1 for x in ledger.chis)
            checks.append(_eq("euler_identity", 1, rhs))
    return AuditReport(tuple(checks))


def full_audit(obj: Union[FamilySpec, CurveRecord]) -> AuditReport:
    """Run every per-cusp and per-curve audit on a record or family instance.

    Covers: validity and idempotence of the standard forms, multiplicity
    round-trips, resolution-graph invariants, tabulated multiplicity
    agreement for family records, the three global identities, the E^2
    bounds, and non-negativity of K.(K+D).
    """
    record = generate(obj) if isinstance(obj, FamilySpec) else obj
    checks: list[Check] = []
    for j, (raw, std) in enumerate(record.cusps, start=1):
        tag = f"cusp{j}"
        checks.append(Check(f"{tag}_standard_valid", validate(std).ok,
                            format_hn(std), "standard"))
        restd = standardize(std)
        checks.append(_eq(f"{tag}_standardize_idempotent",
                          format_hn(restd), format_hn(std)))
        raw_std = standardize(raw)
        checks.append(_eq(f"{tag}_raw_standardizes_to", format_hn(raw_std),
                          format_hn(std)))
        full = hn_to_multiplicity(std, FULL)
        back = multiplicity_to_standard_hn(full)
        checks.append(_eq(f"{tag}_multiplicity_round_trip",
                          format_hn(back), format_hn(std)))
        res = resolution_graph(std)
        minus_ones = sum(1 for w in res.tree.weights if w == -1)
        checks.append(_eq(f"{tag}_resolution_unique_minus_one", minus_ones, 1))
        adj = res.tree.adjacency()
        checks.append(_le(f"{tag}_resolution_c_not_tip", 2,
                          len(adj[res.c_vertex])))
        branching = sum(1 for nb in adj.values() if len(nb) >= 3)
        checks.append(_eq(f"{tag}_resolution_branching_count",
                          branching, std.h - 1))
        checks.append(_eq(f"{tag}_resolution_discriminant",
                          discriminant(res.tree), 1))
        checks.append(Check(f"{tag}_resolution_negative_definite",
                            is_negative_definite(res.tree), "definite", "definite"))
        checks.append(_eq(f"{tag}_resolution_multiplicities",
                          res.mult.to_text(), full.to_text()))
    if record.family is not None:
        expected = expected_reduced_multiplicities(record.family)
        for j, ((_, std), want) in enumerate(zip(record.cusps, expected), start=1):
            got = hn_to_multiplicity(std)
            checks.append(_eq(f"cusp{j}_table_multiplicities",
                              got.to_text(), want.to_text()))
    report = AuditReport(tuple(checks))
    report = report.extend(check_hn_equations(record))
    report = report.extend(check_E2_bounds(record))
    value = kkd(record)
    report = report.extend(AuditReport((
        Check("kkd_nonnegative", value >= 0, value, 0),
    )))
    return report
