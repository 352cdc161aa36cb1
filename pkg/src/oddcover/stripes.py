"""Stripe patterns, their xor-sums, and the translate set U that oddly covers them.

A stripe pattern is stored as a functional: x is in S iff floor(n·x + c) is
even.  Shifting S by v subtracts n·v from c, complementing adds 1, and c only
matters modulo 2.
"""

from __future__ import annotations

import enum
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor, gcd, lcm
from typing import Iterable, NamedTuple, Sequence

from .geometry import ValidationError, Vec2, as_rational, format_rational
from .sweep import Window, clip_segment, decompose


class Membership(enum.Enum):
    IN = "in"
    OUT = "out"
    BOUNDARY = "boundary"


def _mod2(c: Fraction) -> Fraction:
    return c - 2 * floor(c / 2)


@dataclass(frozen=True)
class StripePattern:
    normal: Vec2
    offset: Fraction

    def __init__(self, normal, offset=0):
        normal = normal if isinstance(normal, Vec2) else Vec2(*normal)
        if normal.x == 0 and normal.y == 0:
            raise ValidationError("stripe normal must be nonzero")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "offset", _mod2(as_rational(offset)))

    def value(self, x: Vec2) -> Fraction:
        return self.normal.dot(x) + self.offset

    def member(self, x: Vec2) -> Membership:
        t = self.value(x)
        if t.denominator == 1:
            return Membership.BOUNDARY
        return Membership.IN if floor(t) % 2 == 0 else Membership.OUT

    def shifted(self, v: Vec2) -> StripePattern:
        """The translate S + v."""
        return StripePattern(self.normal, self.offset - self.normal.dot(v))

    def complement(self) -> StripePattern:
        return StripePattern(self.normal, self.offset + 1)

    def parallel_to(self, other: StripePattern) -> bool:
        return self.normal.cross(other.normal) == 0

    @property
    def width_squared(self) -> Fraction:
        """1/|n|^2; the width itself may be irrational."""
        return 1 / self.normal.dot(self.normal)

    def __repr__(self) -> str:
        n = self.normal
        return f"StripePattern(({format_rational(n.x)}, {format_rational(n.y)}), {format_rational(self.offset)})"


def stripe_member(S: StripePattern, x) -> Membership:
    return S.member(x if isinstance(x, Vec2) else Vec2(*x))


class Annihilation(enum.Enum):
    FULL = "full"  # S ⊕ (S+v) = R^2
    HALVED = "halved"  # S ⊕ (S+v) is a stripe pattern of half the width
    KILLED = "killed"  # S ⊕ (S+v) = ∅
    OTHER = "other"


class AnnihilatorResult(NamedTuple):
    kind: Annihilation
    pattern: StripePattern | None


def annihilator_check(S: StripePattern, v) -> AnnihilatorResult:
    """Classify S ⊛ {0, v} by the shift h = n·v measured in stripe widths."""
    v = v if isinstance(v, Vec2) else Vec2(*v)
    h = S.normal.dot(v)
    if h.denominator == 1:
        if h.numerator % 2:
            return AnnihilatorResult(Annihilation.FULL, None)
        return AnnihilatorResult(Annihilation.KILLED, None)
    if h.denominator == 2:
        # floor(t) even xor floor(t - h) even  <=>  floor(2t) + (h-1/2) even
        flip = floor(h) % 2
        return AnnihilatorResult(Annihilation.HALVED, StripePattern(S.normal * 2, 2 * S.offset + flip))
    return AnnihilatorResult(Annihilation.OTHER, None)


@dataclass(frozen=True)
class StripeXor:
    """S_1 ⊕ ... ⊕ S_k with pairwise non-parallel normals.

    A complement is pushed into the first stripe, so the flag survives only
    on the empty list, where it distinguishes R^2 from ∅.
    """

    stripes: tuple[StripePattern, ...]
    complemented: bool = False

    def __init__(self, stripes: Iterable[StripePattern] = (), complemented: bool = False):
        stripes = list(stripes)
        for i in range(len(stripes)):
            for j in range(i + 1, len(stripes)):
                if stripes[i].parallel_to(stripes[j]):
                    raise ValidationError(f"stripes {i} and {j} are parallel")
        if stripes and complemented:
            stripes[0] = stripes[0].complement()
            complemented = False
        object.__setattr__(self, "stripes", tuple(stripes))
        object.__setattr__(self, "complemented", bool(complemented))

    @classmethod
    def full_plane(cls) -> StripeXor:
        return cls((), True)

    def complement(self) -> StripeXor:
        return StripeXor(self.stripes, not self.complemented)

    def __call__(self, x: Vec2) -> Membership:
        return xor_eval(self, x)


def xor_eval(T: StripeXor, x) -> Membership:
    x = x if isinstance(x, Vec2) else Vec2(*x)
    bit = int(T.complemented)
    for s in T.stripes:
        m = s.member(x)
        if m is Membership.BOUNDARY:
            return Membership.BOUNDARY
        bit ^= m is Membership.IN
    return Membership.IN if bit else Membership.OUT


@dataclass(frozen=True)
class WeightedStripeTerm:
    """The set S ⊛ Z for a finite multiset Z of offsets."""

    stripe: StripePattern
    offsets: tuple[Vec2, ...]

    def __init__(self, stripe: StripePattern, offsets: Iterable = (Vec2(0, 0),)):
        offsets = tuple(v if isinstance(v, Vec2) else Vec2(*v) for v in offsets)
        if not offsets:
            raise ValidationError("a weighted stripe term needs at least one offset")
        object.__setattr__(self, "stripe", stripe)
        object.__setattr__(self, "offsets", offsets)


def terms_from_xor(T: StripeXor) -> list[WeightedStripeTerm]:
    return [WeightedStripeTerm(s) for s in T.stripes]


def odd_multiset(vectors: Iterable[Vec2]) -> list[Vec2]:
    """Reduce a multiset mod 2, keeping first-occurrence order."""
    counts = Counter(vectors)
    seen, out = set(), []
    for v in vectors if isinstance(vectors, (list, tuple)) else counts:
        if v not in seen and counts[v] % 2:
            out.append(v)
        seen.add(v)
    return out


def odd_sum(A: Sequence[Vec2], B: Sequence[Vec2]) -> list[Vec2]:
    """A ⊛ B for finite multisets: pairwise sums with mod-2 cancellation."""
    return odd_multiset([a + b for b in B for a in A])


def solve2(n1: Vec2, r1, n2: Vec2, r2) -> Vec2:
    """The unique v with n1·v = r1 and n2·v = r2."""
    det = n1.cross(n2)
    if det == 0:
        raise ValidationError("parallel normals: the 2x2 system is singular")
    r1, r2 = as_rational(r1), as_rational(r2)
    return Vec2((r1 * n2.y - r2 * n1.y) / det, (n1.x * r2 - n2.x * r1) / det)


def stripes2_translates(terms: Sequence[WeightedStripeTerm]) -> list[Vec2]:
    """Finite U with (⊕ S_i ⊛ Z_i) ⊛ U = R^2 up to measure zero.

    Each step kills the last term with a shift v that moves it by one stripe
    width and moves S_1 by half of its width, which halves S_1 and folds the
    killed term into it (as a complement when |Z_k| is odd).  The returned
    set is {0, v_2} ⊛ ... ⊛ {0, v_k}; for a single stripe it is {0, v}.
    """
    if not terms:
        raise ValidationError("need at least one stripe term")
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            if terms[i].stripe.parallel_to(terms[j].stripe):
                raise ValidationError(f"terms {i} and {j} have parallel directions")
    if odd_multiset(list(terms[0].offsets)) != [Vec2(0, 0)]:
        raise ValidationError("the first term must carry the single offset 0")

    first = terms[0].stripe
    rest = [(t.stripe, odd_multiset(list(t.offsets))) for t in terms[1:]]
    rest = [(s, z) for s, z in rest if z]
    shifts: list[Vec2] = []
    while len(rest) > 1:
        sk, zk = rest[-1]
        v = solve2(sk.normal, 1, first.normal, Fraction(1, 2))
        kind, halved = annihilator_check(first, v)
        assert kind is Annihilation.HALVED and halved is not None
        assert annihilator_check(sk, v).kind is Annihilation.FULL
        first = halved.complement() if len(zk) % 2 else halved
        pair = [Vec2(0, 0), v]
        rest = [(s, odd_sum(z, pair)) for s, z in rest[:-1]]
        rest = [(s, z) for s, z in rest if z]
        shifts.append(v)
    if rest:
        s2, _ = rest[0]
        shifts.append(solve2(first.normal, 1, s2.normal, 0))
    else:
        n = first.normal
        shifts.append(n / n.dot(n))
    U = [Vec2(0, 0)]
    for v in reversed(shifts):
        U = odd_sum(U, [Vec2(0, 0), v])
    return U


def size_bound(k: int) -> int:
    """|U| produced for k stripes: 2 for k = 1, else 2^(k-1)."""
    return max(2, 1 << (k - 1)) if k >= 1 else 1


# ---------------------------------------------------------------------------
# verification


class _CoverFunction:
    """x -> (⊕_i S_i ⊛ Z_i ⊛ U)(x), with a constant bit for an empty term list."""

    def __init__(self, terms: Sequence[WeightedStripeTerm], U: Sequence[Vec2], constant: bool = False):
        self.U = [u if isinstance(u, Vec2) else Vec2(*u) for u in U]
        self.constant = int(constant) & (len(self.U) & 1)
        # one (normal, offsets) entry per term: offset of S_i shifted by z + u
        self.parts = []
        for t in terms:
            betas = [t.stripe.offset - t.stripe.normal.dot(z + u) for z in t.offsets for u in self.U]
            self.parts.append((t.stripe.normal, betas))

    def __call__(self, x: Vec2) -> Membership:
        bit = self.constant
        for n, betas in self.parts:
            t = n.dot(x)
            for b in betas:
                v = t + b
                if v.denominator == 1:
                    return Membership.BOUNDARY
                bit ^= floor(v) % 2 == 0
        return Membership.IN if bit else Membership.OUT

    def integer_evaluator(self, q: int):
        """Fast exact evaluation at points (a/q, b/q) using only integer arithmetic."""
        rows = []
        for n, betas in self.parts:
            den = lcm(q * n.x.denominator, q * n.y.denominator, *(b.denominator for b in betas))
            A = int(n.x * den / q)
            B = int(n.y * den / q)
            C = [int(b * den) for b in betas]
            rows.append((A, B, den, C))
        constant = self.constant

        def evaluate(a: int, b: int) -> Membership:
            bit = constant
            for A, B, den, C in rows:
                t = A * a + B * b
                for c in C:
                    v = t + c
                    if v % den == 0:
                        return Membership.BOUNDARY
                    bit ^= (v // den) % 2 == 0
            return Membership.IN if bit else Membership.OUT

        return evaluate


@dataclass
class ExactCoverReport:
    """Outcome of the exact check on one period window.

    ``lines`` counts the boundary lines left after coincident ones cancel in
    pairs; ``cells`` is the subdivision of the window by those lines.
    """

    ok: bool
    value: Membership | None
    lines: int
    cells: int
    cells_in: int
    window: Window | None
    counterexample: Vec2 | None = None


@dataclass
class FullCoverReport:
    ok: bool
    samples: int
    failures: int
    counterexample: Vec2 | None
    exact: ExactCoverReport | None = None
    values: Counter = field(default_factory=Counter)


def _direction_groups(terms, U):
    # group contributions by direction; returns [(m, period, Counter(breakpoint -> multiplicity))]
    groups: list[tuple[Vec2, list[tuple[Fraction, list[Fraction]]]]] = []
    for t in terms:
        n = t.stripe.normal
        betas = [t.stripe.offset - n.dot(z + u) for z in t.offsets for u in U]
        for m, items in groups:
            if m.cross(n) == 0:
                lam = n.x / m.x if m.x != 0 else n.y / m.y
                items.append((lam, betas))
                break
        else:
            groups.append((n, [(Fraction(1), betas)]))
    out = []
    for m, items in groups:
        # h(s) = [floor(lam*s + beta) even] has period 2/|lam| in s = m·x
        periods = [2 / abs(lam) for lam, _ in items]
        num = lcm(*(p.numerator for p in periods))
        den = gcd(*(p.denominator for p in periods))
        period = Fraction(num, den)
        counts: Counter = Counter()
        for lam, betas in items:
            reps = int(period * abs(lam))
            for beta in betas:
                for j in range(reps):
                    s = (j - beta) / lam
                    counts[s - period * floor(s / period)] += 1
        odd = sorted(s for s, c in counts.items() if c % 2)
        out.append((m, period, odd))
    return out


def _period_window(groups) -> Window:
    # window containing a fundamental domain of {v : m_d·v ∈ period_d Z for all d}
    m1, p1, _ = groups[0]
    if len(groups) > 1:
        m2, p2, _ = groups[1]
    else:
        m2, p2 = Vec2(-m1.y, m1.x), Fraction(1)
    det = m1.cross(m2)
    D = 1
    for m, p, _ in groups[2:]:
        # m = alpha*m1 + beta*m2
        alpha = m.cross(m2) / det
        beta = m1.cross(m) / det
        for q in (alpha * p1 / p, beta * p2 / p):
            D = lcm(D, q.denominator)
    a, b = D * p1, D * p2
    corners = [solve2(m1, s, m2, t) for s in (0, a) for t in (0, b)]
    xs = [c.x for c in corners]
    ys = [c.y for c in corners]
    return Window(min(xs), min(ys), max(xs), max(ys))


def _nudged_value(f: _CoverFunction, sample: Vec2, vertices) -> Membership:
    value = f(sample)
    j = 1
    while value is Membership.BOUNDARY:
        vx, vy = vertices[j % len(vertices)]
        step = Fraction(1, 2 + j)
        sample = Vec2(sample.x + (vx - sample.x) * step, sample.y + (vy - sample.y) * step)
        value = f(sample)
        j += 1
    return value


def exact_cover_check(terms: Sequence[WeightedStripeTerm], U: Sequence, constant: bool = False,
                      max_lines: int = 2000) -> ExactCoverReport:
    """Exact decision of whether (⊕ S_i ⊛ Z_i) ⊛ U is the whole plane.

    Per direction, the xor of all parallel stripe translates is a step
    function of one variable; boundary lines hit an even number of times
    cancel.  The period window is then subdivided by the surviving lines
    and every cell is evaluated at an interior point.  When no line
    survives the window is one cell.
    """
    f = _CoverFunction(terms, U, constant)
    if not terms:
        value = Membership.IN if f.constant else Membership.OUT
        return ExactCoverReport(value is Membership.IN, value, 0, 1, int(value is Membership.IN), None)
    U = f.U
    groups = _direction_groups(terms, U)
    window = _period_window(groups)
    segments = []
    corners = [Vec2(window.x0, window.y0), Vec2(window.x1, window.y0), Vec2(window.x0, window.y1), Vec2(window.x1, window.y1)]
    for m, period, odd in groups:
        if not odd:
            continue
        vals = [m.dot(c) for c in corners]
        lo, hi = min(vals), max(vals)
        for b in odd:
            j0 = floor((lo - b) / period)
            j1 = floor((hi - b) / period) + 1
            for j in range(j0, j1 + 1):
                s = b + period * j
                # two points on the line m·x = s spanning the window
                if m.y != 0:
                    p = (window.x0 - 1, (s - m.x * (window.x0 - 1)) / m.y)
                    q = (window.x1 + 1, (s - m.x * (window.x1 + 1)) / m.y)
                else:
                    p = (s / m.x, window.y0 - 1)
                    q = (s / m.x, window.y1 + 1)
                if clip_segment(p, q, window) is not None:
                    segments.append((p, q, 0))
        if len(segments) > max_lines:
            break
    if len(segments) > max_lines:
        # too many to subdivide: a surviving line flips the function, so the
        # two sides of it give a witness
        m, period, odd = next(g for g in groups if g[2])
        witness = _witness_across(f, m, odd[0])
        return ExactCoverReport(False, None, len(segments), 0, 0, window, witness)
    traps = decompose(segments, window, lambda pt: 0)
    cells_in, counterexample, value = 0, None, None
    for t in traps:
        v = _nudged_value(f, Vec2(*t.sample), t.vertices)
        value = v if value is None or value == v else None
        if v is Membership.IN:
            cells_in += 1
        elif counterexample is None:
            counterexample = Vec2(*t.sample)
    ok = cells_in == len(traps)
    return ExactCoverReport(ok, value, len(segments), len(traps), cells_in, window, counterexample)


def _witness_across(f: _CoverFunction, m: Vec2, s: Fraction) -> Vec2:
    base = solve2(m, s, Vec2(-m.y, m.x), Fraction(1, 7919))
    eps = Fraction(1, 1000)
    step = m / m.dot(m)
    while True:
        a, b = f(base + step * eps), f(base - step * eps)
        if Membership.BOUNDARY not in (a, b) and a != b:
            return base + step * eps if a is Membership.OUT else base - step * eps
        eps /= 3
        base = base + Vec2(-m.y, m.x) * (eps / 5)


def check_full_cover(terms: Sequence[WeightedStripeTerm], U: Sequence, samples: int = 10_000,
                     seed: int = 0, exact: bool = True, constant: bool = False) -> FullCoverReport:
    """Randomized (and optionally exact) check that (⊕ S_i ⊛ Z_i) ⊛ U = R^2.

    Samples are rational points (a/q, b/q) with q a large prime; a sample
    on any stripe boundary is redrawn.
    """
    f = _CoverFunction(terms, U, constant)
    report_exact = exact_cover_check(terms, U, constant) if exact else None
    if terms:
        window = _period_window(_direction_groups(terms, f.U))
    else:
        window = Window(0, 0, 1, 1)
    q = 1_000_003
    evaluate = f.integer_evaluator(q)
    rng = random.Random(seed)
    ax0, ax1 = floor(window.x0 * q), floor(window.x1 * q)
    ay0, ay1 = floor(window.y0 * q), floor(window.y1 * q)
    failures, counterexample, values = 0, None, Counter()
    done = 0
    while done < samples:
        a, b = rng.randint(ax0, ax1), rng.randint(ay0, ay1)
        v = evaluate(a, b)
        if v is Membership.BOUNDARY:
            continue
        done += 1
        values[v] += 1
        if v is not Membership.IN:
            failures += 1
            if counterexample is None:
                counterexample = Vec2(Fraction(a, q), Fraction(b, q))
    ok = failures == 0 and (report_exact is None or report_exact.ok)
    if counterexample is None and report_exact is not None and not report_exact.ok:
        counterexample = report_exact.counterexample
    return FullCoverReport(ok, samples, failures, counterexample, report_exact, values)


def cover_value(terms: Sequence[WeightedStripeTerm], U: Sequence, x, constant: bool = False) -> Membership:
    """Membership of x in (⊕ S_i ⊛ Z_i) ⊛ U."""
    return _CoverFunction(terms, U, constant)(x if isinstance(x, Vec2) else Vec2(*x))
