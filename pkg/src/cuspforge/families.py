"""The ten classified families of rational cuspidal curves with a C** fibration.

Each family is a parametrized list of cusps given by raw HN pair formulas,
together with the curve degree and gamma = -E^2.  Degenerate parameter
choices are emitted through the same uniform formulas and cleaned up by
standardization, so there is a single code path per family.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParamOutOfDomain
from .hn import HNPair, HNSequence, RAW, standardize
from .invariants import REDUCED, MultiplicitySequence

FAMILY_IDS = ("FZ1", "A", "B", "C", "D", "E", "F", "G", "OR1", "OR2")

_PARAM_NAMES = {
    "FZ1": ("d", "k"),
    "A": ("gamma", "p", "s"),
    "B": ("gamma", "p", "s"),
    "C": ("gamma", "p", "s"),
    "D": ("gamma", "p", "s"),
    "E": ("k",),
    "F": ("k",),
    "G": ("gamma",),
    "OR1": ("k",),
    "OR2": ("k",),
}


def fibonacci(n: int) -> int:
    """F_0 = 0, F_1 = 1, computed by fast doubling."""
    if n < 0:
        raise ValueError("negative Fibonacci index")
    return _fib_pair(n)[0]


def _fib_pair(n: int) -> tuple[int, int]:
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    return (d, c + d) if n & 1 else (c, d)


@dataclass(frozen=True)
class FamilySpec:
    """A family id with its parameter tuple in declared order."""

    id: str
    params: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.id not in _PARAM_NAMES:
            raise ValueError(f"unknown family {self.id!r}")
        params = tuple(int(v) for v in self.params)
        object.__setattr__(self, "params", params)
        names = _PARAM_NAMES[self.id]
        if len(params) != len(names):
            raise ValueError(
                f"{self.id} takes parameters {names}, got {len(params)} values")

    def named(self) -> dict[str, int]:
        return dict(zip(_PARAM_NAMES[self.id], self.params))

    def __str__(self) -> str:
        return f"{self.id}({','.join(str(v) for v in self.params)})"

    def to_json_obj(self) -> dict:
        return {
            "id": self.id,
            "params": {k: str(v) for k, v in self.named().items()},
        }


def check_domain(spec: FamilySpec) -> None:
    """Raise ParamOutOfDomain naming the violated inequality."""
    pm = spec.named()
    fid = spec.id
    if fid == "FZ1":
        d, k = pm["d"], pm["k"]
        lo = (d + 1) // 2 - 1
        if lo < 1:
            raise ParamOutOfDomain(f"FZ1 requires ceil(d/2)-1 >= 1, got d = {d}")
        if k < lo:
            raise ParamOutOfDomain(f"FZ1 requires k >= ceil(d/2)-1 = {lo}, got k = {k}")
        if k > d - 3:
            raise ParamOutOfDomain(f"FZ1 requires k <= d-3 = {d - 3}, got k = {k}")
    elif fid in ("A", "B", "C", "D"):
        g, p, s = pm["gamma"], pm["p"], pm["s"]
        if g < 1:
            raise ParamOutOfDomain(f"{fid} requires gamma >= 1, got gamma = {g}")
        if p < 2:
            raise ParamOutOfDomain(f"{fid} requires p >= 2, got p = {p}")
        s_min = 2 if fid == "B" else 1
        if s < s_min:
            raise ParamOutOfDomain(f"{fid} requires s >= {s_min}, got s = {s}")
        if fid in ("A", "B") and (g, p) == (1, 2):
            raise ParamOutOfDomain(f"{fid} excludes (gamma,p) = (1,2)")
    elif fid == "G":
        if pm["gamma"] < 3:
            raise ParamOutOfDomain(f"G requires gamma >= 3, got gamma = {pm['gamma']}")
    else:
        if pm["k"] < 1:
            raise ParamOutOfDomain(f"{fid} requires k >= 1, got k = {pm['k']}")


@dataclass(frozen=True)
class CurveRecord:
    """A rational cuspidal plane curve: degree, gamma = -E^2, and its cusps.

    Each cusp is kept both as the raw printed HN sequence and its standard
    form.  The shape constraints (degree >= 3, gamma >= 1, one to three
    cusps) are enforced only for family-generated records, so deliberately
    inconsistent records can still be built for audit failure tests.
    """

    degree: int
    gamma: int
    cusps: tuple[tuple[HNSequence, HNSequence], ...]
    family: FamilySpec | None = None

    def __post_init__(self) -> None:
        if self.family is not None:
            if self.degree < 3:
                raise ValueError(f"family curve degree {self.degree} < 3")
            if self.gamma < 1:
                raise ValueError(f"family curve gamma {self.gamma} < 1")
            if not 1 <= len(self.cusps) <= 3:
                raise ValueError(f"family curve with {len(self.cusps)} cusps")

    @classmethod
    def from_cusps(cls, degree, gamma, seqs, family=None) -> "CurveRecord":
        cusps = tuple((seq, standardize(seq)) for seq in seqs)
        return cls(degree=int(degree), gamma=int(gamma), cusps=cusps, family=family)

    @property
    def standard_cusps(self) -> tuple[HNSequence, ...]:
        return tuple(std for _, std in self.cusps)

    def to_json_obj(self) -> dict:
        return {
            "family": self.family.to_json_obj() if self.family else None,
            "degree": str(self.degree),
            "gamma": str(self.gamma),
            "cusps": [
                {"raw": raw.to_json_obj(), "standard": std.to_json_obj()}
                for raw, std in self.cusps
            ],
        }


def _raw(*pairs: tuple[int, int]) -> HNSequence:
    return HNSequence(tuple(HNPair(c, p) for c, p in pairs), RAW)


def _build(spec: FamilySpec):
    """Raw cusp list, degree, and gamma from the printed formulas."""
    fid = spec.id
    if fid == "FZ1":
        d, k = spec.params
        cusps = [
            _raw((2 * k + 1, 2)),
            _raw((d - 1, d - 2)),
            _raw((2 * (d - 2 - k) + 1, 2)),
        ]
        return cusps, d, d - 2
    if fid == "A":
        g, p, s = spec.params
        cusps = [
            _raw((p * s * (g + 1), p * s * g), (p * s, p), (p, 1)),
            _raw((g * (p * s + 1) + p * (s - 1) + 1, p * s + 1)),
        ]
        return cusps, (g + 1) * p * s + 1, g
    if fid == "B":
        g, p, s = spec.params
        cusps = [
            _raw(((p * s - 1) * (g + 1), (p * s - 1) * g), (p * s - 1, p)),
            _raw((p * (g * s + s - 1), p * s), (p, 1)),
        ]
        return cusps, (g + 1) * p * s - g, g
    if fid == "C":
        g, p, s = spec.params
        cusps = [
            _raw((p * (g * s + s + 1), p * (g * s + 1)), (p, 1)),
            _raw(((g + 1) * (p * s + 1) + p, p * s + 1)),
        ]
        return cusps, (g * s + s + 1) * p + 1, g
    if fid == "D":
        g, p, s = spec.params
        cusps = [
            _raw(((g + 1) * (p * s - 1) + p, g * (p * s - 1) + p)),
            _raw((p * (g * s + s + 1), p * s), (p, 1)),
        ]
        return cusps, (g * s + s + 1) * p - g, g
    if fid == "E":
        (k,) = spec.params
        cusps = [
            _raw((8 * k + 8, 4 * k + 2), (2, 1)),
            _raw((8 * k + 4, 4 * k + 4), (4, 1)),
        ]
        return cusps, 8 * k + 6, 2
    if fid == "F":
        (k,) = spec.params
        cusps = [
            _raw((8 * k, 4 * k + 2), (2, 1)),
            _raw((8 * k + 4, 4 * k), (4, 1)),
        ]
        return cusps, 8 * k + 2, 2
    if fid == "G":
        (g,) = spec.params
        cusps = [_raw((4 * g - 3, g - 1)), _raw((2 * g - 1, 2))]
        return cusps, 2 * g - 1, g
    if fid == "OR1":
        (k,) = spec.params
        cusps = [_raw((fibonacci(4 * k + 4), fibonacci(4 * k)), (3, 1))]
        return cusps, fibonacci(4 * k + 2), 2
    (k,) = spec.params
    cusps = [_raw((2 * fibonacci(4 * k + 4), 2 * fibonacci(4 * k)), (6, 1))]
    return cusps, 2 * fibonacci(4 * k + 2), 2


def generate(spec: FamilySpec) -> CurveRecord:
    """Emit the raw printed cusps plus their standard forms for one instance."""
    check_domain(spec)
    raw_cusps, degree, gamma = _build(spec)
    cusps = tuple((raw, standardize(raw)) for raw in raw_cusps)
    return CurveRecord(degree=degree, gamma=gamma, cusps=cusps, family=spec)


def enumerate_curves(max_degree: int) -> list[CurveRecord]:
    """Every family instance of degree at most max_degree, exactly once.

    Order: family id (FZ1, A, B, C, D, E, F, G, OR1, OR2), then parameters
    ascending lexicographically.  Degrees are monotone in every parameter,
    so each sweep stops at the first overflow.
    """
    out: list[CurveRecord] = []
    if max_degree < 3:
        return out

    for d in range(4, max_degree + 1):
        for k in range((d + 1) // 2 - 1, d - 2):
            out.append(generate(FamilySpec("FZ1", (d, k))))

    g = 1
    while (g + 1) * 2 + 1 <= max_degree:
        p = 2
        while (g + 1) * p + 1 <= max_degree:
            if (g, p) != (1, 2):
                s = 1
                while (g + 1) * p * s + 1 <= max_degree:
                    out.append(generate(FamilySpec("A", (g, p, s))))
                    s += 1
            p += 1
        g += 1

    g = 1
    while 3 * g + 4 <= max_degree:
        p = 2
        while (g + 1) * p * 2 - g <= max_degree:
            if (g, p) != (1, 2):
                s = 2
                while (g + 1) * p * s - g <= max_degree:
                    out.append(generate(FamilySpec("B", (g, p, s))))
                    s += 1
            p += 1
        g += 1

    g = 1
    while (g + 2) * 2 + 1 <= max_degree:
        p = 2
        while (g + 2) * p + 1 <= max_degree:
            s = 1
            while (g * s + s + 1) * p + 1 <= max_degree:
                out.append(generate(FamilySpec("C", (g, p, s))))
                s += 1
            p += 1
        g += 1

    g = 1
    while (g + 2) * 2 - g <= max_degree:
        p = 2
        while (g + 2) * p - g <= max_degree:
            s = 1
            while (g * s + s + 1) * p - g <= max_degree:
                out.append(generate(FamilySpec("D", (g, p, s))))
                s += 1
            p += 1
        g += 1

    k = 1
    while 8 * k + 6 <= max_degree:
        out.append(generate(FamilySpec("E", (k,))))
        k += 1

    k = 1
    while 8 * k + 2 <= max_degree:
        out.append(generate(FamilySpec("F", (k,))))
        k += 1

    g = 3
    while 2 * g - 1 <= max_degree:
        out.append(generate(FamilySpec("G", (g,))))
        g += 1

    k = 1
    while fibonacci(4 * k + 2) <= max_degree:
        out.append(generate(FamilySpec("OR1", (k,))))
        k += 1

    k = 1
    while 2 * fibonacci(4 * k + 2) <= max_degree:
        out.append(generate(FamilySpec("OR2", (k,))))
        k += 1

    return out


@dataclass(frozen=True)
class DistinctnessReport:
    total: int
    collisions: tuple[tuple[CurveRecord, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.collisions


def _cusp_key(record: CurveRecord):
    return tuple(sorted(
        tuple((pr.c, pr.p) for pr in std.pairs) for _, std in record.cusps))


def distinctness_audit(records) -> DistinctnessReport:
    """Group records by their multiset of standardized cusps; report clashes."""
    groups: dict = {}
    total = 0
    for rec in records:
        total += 1
        groups.setdefault(_cusp_key(rec), []).append(rec)
    collisions = tuple(
        tuple(group) for _, group in sorted(groups.items()) if len(group) >= 2)
    return DistinctnessReport(total=total, collisions=collisions)


def expected_reduced_multiplicities(spec: FamilySpec) -> tuple[MultiplicitySequence, ...]:
    """The tabulated reduced multiplicity sequences, one per cusp.

    The run formulas may produce empty runs or trailing 1s at boundary
    parameters; those are dropped, matching the reduced form convention.
    """
    check_domain(spec)
    fid = spec.id
    if fid == "FZ1":
        d, k = spec.params
        runsets = [[(2, k)], [(d - 2, 1)], [(2, d - 2 - k)]]
    elif fid == "A":
        g, p, s = spec.params
        runsets = [
            [(g * p * s, 1), (p * s, g), (p, s)],
            [(p * s + 1, g), (p * (s - 1) + 1, 1), (p, s - 1)],
        ]
    elif fid == "B":
        g, p, s = spec.params
        runsets = [
            [(g * p * s - g, 1), (p * s - 1, g), (p, s - 1), (p - 1, 1)],
            [(p * s, g), (p * (s - 1), 1), (p, s - 1)],
        ]
    elif fid == "C":
        g, p, s = spec.params
        runsets = [
            [(g * p * s + p, 1), (p * s, g), (p, s)],
            [(p * s + 1, g + 1), (p, s)],
        ]
    elif fid == "D":
        g, p, s = spec.params
        runsets = [
            [(g * (p * s - 1) + p, 1), (p * s - 1, g), (p, s - 1), (p - 1, 1)],
            [(p * s, g + 1), (p, s)],
        ]
    elif fid == "E":
        (k,) = spec.params
        runsets = [
            [(4 * k + 2, 2), (4, k), (2, 2)],
            [(4 * k + 4, 1), (4 * k, 1), (4, k)],
        ]
    elif fid == "F":
        (k,) = spec.params
        runsets = [
            [(4 * k + 2, 1), (4 * k - 2, 1), (4, k - 1), (2, 2)],
            [(4 * k, 2), (4, k)],
        ]
    elif fid == "G":
        (g,) = spec.params
        runsets = [[(g - 1, 4)], [(2, g - 1)]]
    elif fid == "OR1":
        (k,) = spec.params
        runsets = [_or_mult_runs(k, 1)]
    else:
        (k,) = spec.params
        runsets = [_or_mult_runs(k, 2)]
    return tuple(_table_reduced(runs) for runs in runsets)


def _or_mult_runs(k: int, scale: int) -> list[tuple[int, int]]:
    runs = [(scale * fibonacci(4 * k), 1)]
    for l in range(k, 0, -1):
        runs.append((scale * fibonacci(4 * l), 5))
        runs.append((scale * (fibonacci(4 * l) - fibonacci(4 * l - 4)), 1))
    return runs


def _table_reduced(runs) -> MultiplicitySequence:
    filtered = [(v, n) for v, n in runs if n > 0]
    while filtered and filtered[-1][0] == 1:
        filtered.pop()
    return MultiplicitySequence.from_runs(filtered, REDUCED)


# Public alias matching the operation name.  No function in this module calls
# the builtin of the same name, so the module-level shadowing is safe.
enumerate = enumerate_curves
