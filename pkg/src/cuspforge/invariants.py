"""Numerical characterizations of a cusp and conversions between them.

Supported descriptions: HN pair sequences, multiplicity sequences, the
Puiseux characteristic (beta0; beta1, ..., beta_g), Puiseux pairs, Zariski
pairs, the value semigroup with its gap set, and the Alexander polynomial.
All conversions are exact integer arithmetic; multiplicities are stored
run-length encoded because family formulas produce long constant runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable

from .errors import Inconsistent, NotRealizable, NotStandard
from .hn import (
    HNPair,
    HNSequence,
    STANDARD,
    format_hn,
    require_valid,
    standardize,
    validate,
)

REDUCED = "reduced"
FULL = "full"

PUISEUX = "puiseux"
ZARISKI = "zariski"


@dataclass(frozen=True)
class MultiplicitySequence:
    """Non-increasing multiplicity sequence, held as (value, count) runs.

    The reduced form drops trailing 1s (so it is empty for a smooth point);
    the full form keeps them and ends in 1.
    """

    runs: tuple[tuple[int, int], ...]
    form: str = REDUCED

    def __post_init__(self) -> None:
        object.__setattr__(self, "runs", tuple((int(v), int(n)) for v, n in self.runs))
        if self.form not in (REDUCED, FULL):
            raise ValueError(f"unknown multiplicity form {self.form!r}")
        for v, n in self.runs:
            if v < 1 or n < 1:
                raise ValueError(f"bad multiplicity run ({v},{n})")
        values = [v for v, _ in self.runs]
        if any(a <= b for a, b in zip(values, values[1:])):
            raise ValueError("multiplicity runs must have strictly decreasing values")
        if self.form == REDUCED and self.runs and values[-1] == 1:
            raise ValueError("reduced multiplicity sequence must not end in 1")
        if self.form == FULL and (not self.runs or values[-1] != 1):
            raise ValueError("full multiplicity sequence must end in 1")

    @classmethod
    def from_entries(cls, entries: Iterable[int], form: str = REDUCED) -> "MultiplicitySequence":
        return cls(_merge_runs((int(e), 1) for e in entries), form)

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int]], form: str = REDUCED) -> "MultiplicitySequence":
        return cls(_merge_runs((int(v), int(n)) for v, n in runs), form)

    def entries(self) -> tuple[int, ...]:
        out: list[int] = []
        for v, n in self.runs:
            out.extend([v] * n)
        return tuple(out)

    def reduced(self) -> "MultiplicitySequence":
        if self.form == REDUCED:
            return self
        runs = self.runs
        if runs and runs[-1][0] == 1:
            runs = runs[:-1]
        return MultiplicitySequence(runs, REDUCED)

    def full(self) -> "MultiplicitySequence":
        """Append the trailing 1-run; its length is the last entry above 1."""
        if self.form == FULL:
            return self
        if not self.runs:
            raise NotRealizable("a smooth point has no full multiplicity sequence")
        return MultiplicitySequence(self.runs + ((1, self.runs[-1][0]),), FULL)

    def total(self) -> int:
        return sum(v * n for v, n in self.runs)

    def to_text(self) -> str:
        return ",".join(str(e) for e in self.entries())

    def __str__(self) -> str:
        return self.to_text()


def _merge_runs(runs: Iterable[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    merged: list[list[int]] = []
    for v, n in runs:
        if n == 0:
            continue
        if merged and merged[-1][0] == v:
            merged[-1][1] += n
        else:
            merged.append([v, n])
    return tuple((v, n) for v, n in merged)


def parse_multiplicity(text: str, form: str = REDUCED) -> MultiplicitySequence:
    """Parse the comma-separated entry syntax, e.g. ``"4,2,2,2"``."""
    compact = "".join(text.split())
    entries = []
    for token in compact.split(","):
        if not token.isdigit():
            raise ValueError(f"invalid multiplicity entry {token!r}")
        entries.append(int(token))
    return MultiplicitySequence.from_entries(entries, form)


@dataclass(frozen=True)
class PuiseuxCharacteristic:
    """The exponent tuple (beta0; beta1, ..., beta_g) of a cusp branch.

    The divisor chain e_0 = beta0, e_i = gcd(e_{i-1}, beta_i) must strictly
    decrease to e_g = 1; it is precomputed and cached in ``e``.
    """

    beta: tuple[int, ...]
    e: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        beta = tuple(int(b) for b in self.beta)
        object.__setattr__(self, "beta", beta)
        if len(beta) < 2:
            raise ValueError("a Puiseux characteristic needs beta0 and at least beta1")
        if beta[0] < 2:
            raise ValueError(f"beta0 = {beta[0]} must be >= 2")
        if any(a >= b for a, b in zip(beta, beta[1:])):
            raise ValueError(f"characteristic exponents must strictly increase: {beta}")
        e = [beta[0]]
        for i in range(1, len(beta)):
            if beta[i] % e[-1] == 0:
                raise ValueError(f"e{i - 1} = {e[-1]} divides beta{i} = {beta[i]}")
            e.append(gcd(e[-1], beta[i]))
        if e[-1] != 1:
            raise ValueError(f"gcd chain ends at e_g = {e[-1]} != 1")
        object.__setattr__(self, "e", tuple(e))

    @property
    def g(self) -> int:
        return len(self.beta) - 1

    def to_text(self) -> str:
        return f"{self.beta[0]};" + ",".join(str(b) for b in self.beta[1:])

    def __str__(self) -> str:
        return self.to_text()


def parse_puiseux_char(text: str) -> PuiseuxCharacteristic:
    """Parse the ``"beta0;beta1,beta2,..."`` syntax, e.g. ``"4;6,9"``."""
    compact = "".join(text.split())
    head, sep, tail = compact.partition(";")
    if not sep:
        raise ValueError(f"missing ';' after beta0 in {text!r}")
    tokens = [head] + tail.split(",")
    if any(not t.isdigit() for t in tokens):
        bad = next(t for t in tokens if not t.isdigit())
        raise ValueError(f"invalid characteristic exponent {bad!r}")
    return PuiseuxCharacteristic(tuple(int(t) for t in tokens))


@dataclass(frozen=True)
class PairList:
    """Puiseux pairs (m_i, n_i) or Zariski pairs (b_i, a_i), in branch order."""

    kind: str
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(x), int(y)) for x, y in self.pairs))
        if self.kind not in (PUISEUX, ZARISKI):
            raise ValueError(f"unknown pair-list kind {self.kind!r}")
        if not self.pairs:
            raise ValueError("pair list must be non-empty")
        if self.kind == PUISEUX:
            for m, n in self.pairs:
                if n < 2:
                    raise ValueError(f"Puiseux pair ({m},{n}) needs n >= 2")
                if gcd(m, n) != 1:
                    raise ValueError(f"Puiseux pair ({m},{n}) must be coprime")
            if self.pairs[0][0] <= self.pairs[0][1]:
                raise ValueError(f"first Puiseux pair {self.pairs[0]} needs m1 > n1")
        else:
            for b, a in self.pairs:
                if b < 2:
                    raise ValueError(f"Zariski pair ({b},{a}) needs b >= 2")
                if gcd(a, b) != 1:
                    raise ValueError(f"Zariski pair ({b},{a}) must be coprime")
            if self.pairs[0][1] <= self.pairs[0][0]:
                raise ValueError(f"first Zariski pair {self.pairs[0]} needs a1 > b1")

    def to_text(self) -> str:
        return ",".join(f"({x},{y})" for x, y in self.pairs)

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class Semigroup:
    """Numerical semigroup given by generators with gcd 1.

    The gap set (complement in the naturals, finite by coprimality) is
    sieved at construction, so instances are freely shareable.
    """

    generators: tuple[int, ...]
    gaps: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        gens = tuple(int(v) for v in self.generators)
        object.__setattr__(self, "generators", gens)
        if not gens or any(v < 1 for v in gens):
            raise ValueError("generators must be positive integers")
        g = 0
        for v in gens:
            g = gcd(g, v)
        if g != 1:
            raise ValueError(f"generators {gens} have gcd {g} != 1")
        object.__setattr__(self, "gaps", _sieve_gaps(gens))

    @property
    def conductor(self) -> int:
        """Least n with every integer >= n in the semigroup."""
        return max(self.gaps) + 1 if self.gaps else 0

    def __contains__(self, n: int) -> bool:
        return n >= 0 and n not in self.gaps


def _sieve_gaps(gens: tuple[int, ...]) -> frozenset[int]:
    ordered = sorted(set(gens))
    lowest = ordered[0]
    if lowest == 1:
        return frozenset()
    # Once `lowest` consecutive integers are representable, everything above
    # them is too; double the sieve window until such a run appears.
    limit = 2 * max(ordered) + 2
    while True:
        reach = bytearray(limit)
        reach[0] = 1
        for n in range(1, limit):
            for v in ordered:
                if v > n:
                    break
                if reach[n - v]:
                    reach[n] = 1
                    break
        run = 0
        for n in range(limit):
            if reach[n]:
                run += 1
                if run == lowest:
                    start = n - lowest + 1
                    return frozenset(m for m in range(start) if not reach[m])
            else:
                run = 0
        limit *= 2


def hn_to_multiplicity(seq: HNSequence, form: str = REDUCED) -> MultiplicitySequence:
    """Concatenate the Euclidean expansions of the pairs.

    Each pair (c/p) contributes the quotient-run sequence of the Euclidean
    algorithm on (max, min); the gcd-chain law makes consecutive pairs'
    contributions join into one non-increasing sequence.
    """
    require_valid(seq)
    runs: list[tuple[int, int]] = []
    for pair in seq.pairs:
        a, b = max(pair.c, pair.p), min(pair.c, pair.p)
        while True:
            q, r = divmod(a, b)
            runs.append((b, q))
            if r == 0:
                break
            a, b = b, r
    full = MultiplicitySequence.from_runs(runs, FULL)
    return full if form == FULL else full.reduced()


def multiplicity_to_standard_hn(mult: MultiplicitySequence) -> HNSequence:
    """Rebuild the standard HN sequence whose multiplicity sequence this is.

    The first pair is (u1*mu1 + mu2 / mu1); each later c_j is the running
    gcd and p_j is read off the run table at the position where c_j occurs.
    The candidate is verified by validation plus a round trip, so any
    sequence not produced by a cusp raises NotRealizable.
    """
    full = mult.full()
    runs = full.runs
    if len(runs) < 2:
        raise NotRealizable("multiplicity sequence of a smooth point")
    values = [v for v, _ in runs]
    counts = [n for _, n in runs]
    index_of = {v: i for i, v in enumerate(values)}

    pairs = [HNPair(counts[0] * values[0] + values[1], values[0])]
    prev = 0
    while True:
        g = gcd(pairs[-1].c, pairs[-1].p)
        if g == 1:
            break
        i = index_of.get(g)
        if i is None or i <= prev or i > len(runs) - 2:
            raise NotRealizable(
                f"gcd chain hits {g}, which has no interior run in {full.to_text()}")
        p_next = values[i + 1] + counts[i] * values[i] - values[i - 1]
        if p_next <= 0:
            raise NotRealizable(f"recursion yields non-positive p = {p_next}")
        pairs.append(HNPair(g, p_next))
        prev = i

    seq = HNSequence(tuple(pairs), STANDARD)
    report = validate(seq)
    if not report.ok:
        raise NotRealizable(
            f"candidate {format_hn(seq)} is not standard: {report.summary()}")
    if hn_to_multiplicity(seq, FULL) != full:
        raise NotRealizable(
            f"candidate {format_hn(seq)} does not reproduce {full.to_text()}")
    return seq


def hn_to_puiseux_char(seq: HNSequence) -> PuiseuxCharacteristic:
    """beta0 = p1, beta1 = c1, beta_i = beta_{i-1} + p_i; g = h."""
    if seq.flavor != STANDARD:
        raise ValueError("Puiseux characteristic is read off the standard form")
    require_valid(seq)
    beta = [seq.pairs[0].p, seq.pairs[0].c]
    for pair in seq.pairs[1:]:
        beta.append(beta[-1] + pair.p)
    return PuiseuxCharacteristic(tuple(beta))


def puiseux_char_to_standard_hn(char: PuiseuxCharacteristic) -> HNSequence:
    """Exact inverse of hn_to_puiseux_char: p_i are consecutive differences."""
    beta = char.beta
    pairs = [HNPair(beta[1], beta[0])]
    for i in range(2, len(beta)):
        c_i = gcd(pairs[-1].c, pairs[-1].p)
        pairs.append(HNPair(c_i, beta[i] - beta[i - 1]))
    seq = HNSequence(tuple(pairs), STANDARD)
    report = validate(seq)
    if not report.ok:
        raise NotStandard(
            f"characteristic {char} yields non-standard {format_hn(seq)}: {report.summary()}")
    return seq


def char_to_puiseux_pairs(char: PuiseuxCharacteristic) -> PairList:
    """(m_i, n_i) = (beta_i/e_i, e_{i-1}/e_i); divisions are exact."""
    pairs = []
    for i in range(1, len(char.beta)):
        pairs.append((char.beta[i] // char.e[i], char.e[i - 1] // char.e[i]))
    return PairList(PUISEUX, tuple(pairs))


def puiseux_pairs_to_char(pairs: PairList) -> PuiseuxCharacteristic:
    """beta0 is the product of the n_i; beta_i = m_i * n_{i+1} * ... * n_g."""
    if pairs.kind != PUISEUX:
        raise ValueError(f"expected puiseux pairs, got {pairs.kind}")
    tail = 1
    beta_rev = []
    for m, n in reversed(pairs.pairs):
        beta_rev.append(m * tail)
        tail *= n
    beta = (tail,) + tuple(reversed(beta_rev))
    return PuiseuxCharacteristic(beta)


def zariski_from_hn(seq: HNSequence) -> PairList:
    """Divide the standard pairs through by the c-chain: (b_i, a_i) per stage."""
    if seq.flavor != STANDARD:
        raise ValueError("Zariski pairs are read off the standard form")
    require_valid(seq)
    pairs = seq.pairs
    h = len(pairs)
    chain = [p.c for p in pairs] + [1]
    out = []
    for k in range(h):
        num_b, num_a = (pairs[0].p, pairs[0].c) if k == 0 else (pairs[k].c, pairs[k].p)
        d = chain[k + 1]
        if num_b % d or num_a % d:
            raise Inconsistent(
                f"c{k + 2} = {d} does not divide stage {k + 1} of {format_hn(seq)}")
        out.append((num_b // d, num_a // d))
    return PairList(ZARISKI, tuple(out))


def hn_from_zariski(pairs: PairList) -> HNSequence:
    """Multiply the Zariski pairs back up by suffix products of the b_i."""
    if pairs.kind != ZARISKI:
        raise ValueError(f"expected zariski pairs, got {pairs.kind}")
    bs = [b for b, _ in pairs.pairs]
    as_ = [a for _, a in pairs.pairs]
    h = len(bs)
    # suffix[k] = b_{k+1} * ... * b_h (1-based), so suffix[h] = 1
    suffix = [1] * (h + 1)
    for k in range(h - 1, -1, -1):
        suffix[k] = bs[k] * suffix[k + 1]
    hn_pairs = [HNPair(as_[0] * suffix[1], bs[0] * suffix[1])]
    for k in range(1, h):
        hn_pairs.append(HNPair(suffix[k], as_[k] * suffix[k + 1]))
    seq = HNSequence(tuple(hn_pairs), STANDARD)
    report = validate(seq)
    if not report.ok:
        raise Inconsistent(
            f"zariski pairs {pairs} yield non-standard {format_hn(seq)}: {report.summary()}")
    return seq


def char_to_multiplicity(char: PuiseuxCharacteristic) -> MultiplicitySequence:
    """Nested Euclidean scheme on the consecutive differences of the beta_i.

    Stage i runs the Euclidean algorithm on (beta_i - beta_{i-1}) against the
    divisor carried out of stage i-1 (initially beta0); agrees with the
    multiplicity sequence computed through the standard HN form.
    """
    beta = char.beta
    runs: list[tuple[int, int]] = [(beta[0], 1)]
    carry = beta[0]
    for i in range(1, len(beta)):
        a, b = beta[i] - beta[i - 1], carry
        while True:
            s, r = divmod(a, b)
            if s:
                runs.append((b, s))
            if r == 0:
                carry = b
                break
            a, b = b, r
    return MultiplicitySequence.from_runs(runs, FULL)


def semigroup_of(char: PuiseuxCharacteristic) -> Semigroup:
    """Generators by the divided-sum recursion over the gcd chain."""
    beta, e = char.beta, char.e
    gens = [beta[0]]
    acc = beta[0] * beta[1]
    for l in range(char.g):
        if l >= 1:
            acc += e[l] * (beta[l + 1] - beta[l])
        q, r = divmod(acc, e[l])
        assert r == 0, (char, l)
        gens.append(q)
    return Semigroup(tuple(gens))


def alexander_polynomial(sg: Semigroup) -> tuple[int, ...]:
    """Coefficients of 1 + (t-1) * sum of t^k over the gaps k, low degree first."""
    gaps = sorted(sg.gaps)
    if not gaps:
        return (1,)
    coeffs = [0] * (gaps[-1] + 2)
    coeffs[0] = 1
    for k in gaps:
        coeffs[k] -= 1
        coeffs[k + 1] += 1
    return tuple(coeffs)


def compute_M_I(seq: HNSequence) -> tuple[int, int]:
    """M = c1 + sum of the p_k - 1 and I = sum of c_k * p_k, on standard form.

    Raw input is standardized first; both quantities are rewrite-invariant,
    the standard form is just the deterministic choice.
    """
    if seq.flavor == STANDARD:
        require_valid(seq)
        std = seq
    else:
        std = standardize(seq)
    m = std.pairs[0].c + sum(p.p for p in std.pairs) - 1
    i = sum(p.c * p.p for p in std.pairs)
    return m, i


@dataclass(frozen=True)
class CuspRecord:
    """Every numerical description of one cusp, mutually consistent."""

    hn: HNSequence
    mult: MultiplicitySequence
    char: PuiseuxCharacteristic
    puiseux: PairList
    zariski: PairList
    semigroup: Semigroup
    M: int
    I: int

    def to_json_obj(self) -> dict:
        """All integers as decimal strings; gaps sorted ascending."""
        return {
            "hn": self.hn.to_json_obj(),
            "mult_reduced": [str(e) for e in self.mult.reduced().entries()],
            "puiseux_char": [str(b) for b in self.char.beta],
            "puiseux_pairs": [[str(m), str(n)] for m, n in self.puiseux.pairs],
            "zariski_pairs": [[str(b), str(a)] for b, a in self.zariski.pairs],
            "semigroup_generators": [str(v) for v in self.semigroup.generators],
            "gaps": [str(k) for k in sorted(self.semigroup.gaps)],
            "alexander_coeffs": [str(c) for c in alexander_polynomial(self.semigroup)],
            "M": str(self.M),
            "I": str(self.I),
        }


def cusp_record(seq: HNSequence) -> CuspRecord:
    """Standardize and fan out to every description at once."""
    std = standardize(seq)
    char = hn_to_puiseux_char(std)
    m, i = compute_M_I(std)
    return CuspRecord(
        hn=std,
        mult=hn_to_multiplicity(std, FULL),
        char=char,
        puiseux=char_to_puiseux_pairs(char),
        zariski=zariski_from_hn(std),
        semigroup=semigroup_of(char),
        M=m,
        I=i,
    )
