"""Quadratic renormalization dynamics on the 3-dimensional four-box space.

Coordinates (p, q, r) refer to the basis {b1, b2, b3} where b1 is the
two-vertex four-box and b2, b3 the two diagrammatic four-boxes without
vertices; the squaring map sends b3 to b1.  The raw polynomial map is

    p' = (d^2-5d+7)/(d-1)^2 p^2 + 2pq + 2(d-2)/(d-1) pr + q^2 + r^2
    q' = -( p^2/(d-1)^3 + (2pq + q^2)/(d-1) )
    r' = (d^2-3d+3)/(d-1)^3 p^2 + (2pq + q^2)/(d-1)

and for d >= 2 the l1 norm obeys |map(a)| <= M |a|^2 with

    M = (d+1)/(d-1) + ((d-2)/(d-1))^2 + d(d+1)(d-2)/(d-1)^3.

A decay certificate is a step n with M * |map^n(b1)|_1 < 1; by the
quadratic bound the iterates then collapse to zero doubly exponentially.
Rational loop parameters are handled in exact big-rational arithmetic;
cosine-parametrized ones (d = 4 cos^2(pi/m) +- 1) use outward-rounded
interval arithmetic, so every reported norm is a true upper bound and a
strict certificate inequality is rigorous.  Below d = 2 the displayed M
is not a valid bound (its derivation needs d >= 2, and it goes negative
near the golden ratio), so certification is refused there rather than
reporting a vacuous product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv, mp

#: Exact values of cos^2(pi/m) at the rational spots.
_EXACT_COS2 = {2: Fraction(0), 3: Fraction(1, 4), 4: Fraction(1, 2), 6: Fraction(3, 4)}

DEFAULT_DIGITS = 60
DEFAULT_NMAX = 64


class PrecisionError(RuntimeError):
    """Exact denominators blew past the guard, or intervals got too wide."""


def _endpoint_raw(x):
    """(sign, mantissa, exponent) of an interval's upper endpoint."""
    sign, man, exp, _ = x._mpi_[1]
    return sign, int(man), int(exp)


def upper_decimal(x, digits: int) -> str:
    """Decimal string that is a true upper bound for x, rounded outward.

    x is an interval scalar (its upper endpoint is used) or a Fraction;
    the string carries `digits` significant digits, positional when the
    magnitude is moderate and scientific otherwise.  Rounding is exact
    integer arithmetic: the printed value never drops below x.
    """
    if isinstance(x, Fraction):
        if x == 0:
            return "0"
        negative = x < 0
        mag = abs(x)
        num, den = mag.numerator, mag.denominator
    else:
        sign, man, exp = _endpoint_raw(x)
        if man == 0:
            return "0"
        negative = bool(sign)
        if abs(exp) > (1 << 20):
            # Magnitude beyond printable range: one power of ten past the
            # binary estimate is still a rigorous outward bound.
            log_est = (exp + man.bit_length()) * math.log10(2)
            n10 = math.floor(log_est) - 2 if negative else math.ceil(log_est) + 1
            return f"{'-' if negative else ''}1.0e{'+' if n10 >= 0 else '-'}{abs(n10)}"
        num = man * (2**exp if exp > 0 else 1)
        den = 2**-exp if exp < 0 else 1

    def at_least(t: int) -> bool:
        return num * (10**-t if t < 0 else 1) >= den * (10**t if t > 0 else 1)

    e10 = 0
    while at_least(e10 + 1):
        e10 += 1
    while not at_least(e10):
        e10 -= 1
    k = digits - 1 - e10
    scaled_num = num * (10**k if k > 0 else 1)
    scaled_den = den * (10**-k if k < 0 else 1)
    if negative:
        mantissa = scaled_num // scaled_den  # magnitude down: value up
    else:
        mantissa = -(-scaled_num // scaled_den)  # magnitude up
    if mantissa >= 10**digits:
        mantissa //= 10
        e10 += 1
    text = str(mantissa).rstrip("0") or "0"
    prefix = "-" if negative else ""
    if -4 <= e10 < digits:
        if e10 >= 0:
            head = text[: e10 + 1].ljust(e10 + 1, "0")
            tail = text[e10 + 1 :]
            body = f"{head}.{tail}" if tail else f"{head}.0"
        else:
            body = "0." + "0" * (-e10 - 1) + text
        return prefix + body
    frac = text[1:]
    return f"{prefix}{text[0]}.{frac or '0'}e{'+' if e10 >= 0 else '-'}{abs(e10)}"


@dataclass(frozen=True)
class LoopParameter:
    """Loop parameter: an exact rational, or 4cos^2(pi/m) +- 1."""

    exact: Fraction | None = None
    m: int | None = None
    variant: str | None = None

    def __post_init__(self):
        if (self.exact is None) == (self.m is None):
            raise ValueError("give exactly one of an exact value or (m, variant)")
        if self.exact is not None and self.exact <= 1:
            raise ValueError("the loop parameter must exceed 1")
        if self.m is not None:
            if self.variant not in ("plus", "minus"):
                raise ValueError("variant must be 'plus' or 'minus'")
            if self.m < 2:
                raise ValueError("m must be at least 2")

    @classmethod
    def from_rational(cls, value) -> LoopParameter:
        return cls(exact=Fraction(value))

    @classmethod
    def cosine(cls, m: int, variant: str) -> LoopParameter:
        """d = 4 cos^2(pi/m) + 1 ("plus") or - 1 ("minus").

        At m in {2, 3, 4, 6} the cosine is rational and the parameter is
        stored exactly (minus at m = 6 gives d = 2 on the nose).
        """
        if m in _EXACT_COS2:
            base = 4 * _EXACT_COS2[m]
            return cls.from_rational(base + 1 if variant == "plus" else base - 1)
        return cls(m=m, variant=variant)

    @classmethod
    def coerce(cls, d) -> LoopParameter:
        if isinstance(d, LoopParameter):
            return d
        return cls.from_rational(d)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def interval(self, digits: int):
        """Rigorous enclosure of d at the stated working precision."""
        iv.dps = digits
        if self.is_exact:
            return iv.mpf(self.exact.numerator) / iv.mpf(self.exact.denominator)
        c = iv.cos(iv.pi / self.m)
        d = 4 * c * c
        return d + 1 if self.variant == "plus" else d - 1

    def label(self, digits: int = DEFAULT_DIGITS) -> str:
        if self.is_exact:
            return str(self.exact)
        return upper_decimal(self.interval(digits), digits)


@dataclass(frozen=True)
class Q4Vector:
    """Coordinates in the basis {b1, b2, b3}; scalars are Fraction or interval."""

    p: object
    q: object
    r: object

    @classmethod
    def basis(cls, i: int) -> Q4Vector:
        coords = [Fraction(0)] * 3
        coords[i - 1] = Fraction(1)
        return cls(*coords)

    @classmethod
    def zero(cls) -> Q4Vector:
        return cls(Fraction(0), Fraction(0), Fraction(0))

    def __add__(self, other: Q4Vector) -> Q4Vector:
        return Q4Vector(self.p + other.p, self.q + other.q, self.r + other.r)

    def __sub__(self, other: Q4Vector) -> Q4Vector:
        return Q4Vector(self.p - other.p, self.q - other.q, self.r - other.r)

    def scale(self, s) -> Q4Vector:
        return Q4Vector(s * self.p, s * self.q, s * self.r)

    def l1(self):
        return abs(self.p) + abs(self.q) + abs(self.r)


B1 = Q4Vector.basis(1)
B2 = Q4Vector.basis(2)
B3 = Q4Vector.basis(3)


@dataclass(frozen=True)
class _Coeffs:
    """The rational functions of d appearing in the raw polynomial."""

    d: object
    p_sq: object  # (d^2-5d+7)/(d-1)^2
    pr: object  # 2(d-2)/(d-1)
    q_p_sq: object  # 1/(d-1)^3
    inv: object  # 1/(d-1)
    r_p_sq: object  # (d^2-3d+3)/(d-1)^3

    @classmethod
    def at(cls, d) -> _Coeffs:
        e = d - 1
        return cls(
            d=d,
            p_sq=(d * d - 5 * d + 7) / (e * e),
            pr=2 * (d - 2) / e,
            q_p_sq=1 / (e * e * e),
            inv=1 / e,
            r_p_sq=(d * d - 3 * d + 3) / (e * e * e),
        )

    def apply(self, a: Q4Vector) -> Q4Vector:
        p, q, r = a.p, a.q, a.r
        pp = p * p
        cross = 2 * p * q + q * q
        return Q4Vector(
            self.p_sq * pp + 2 * p * q + self.pr * p * r + q * q + r * r,
            -(self.q_p_sq * pp + self.inv * cross),
            self.r_p_sq * pp + self.inv * cross,
        )


def _scalarize(d, digits: int):
    """(scalar d, exact flag) in the field matching the parameter."""
    param = LoopParameter.coerce(d)
    if param.is_exact:
        return param.exact, True
    return param.interval(digits), False


def _to_field(x, exact: bool):
    if exact:
        return Fraction(x)
    f = Fraction(x)
    return iv.mpf(f.numerator) / iv.mpf(f.denominator)


def renorm_map(a: Q4Vector, d, digits: int = DEFAULT_DIGITS) -> Q4Vector:
    """One application of the squaring map, exact when d and a are rational."""
    scalar, exact = _scalarize(d, digits)
    if not exact:
        a = Q4Vector(*(_to_field(c, False) for c in (a.p, a.q, a.r)))
    return _Coeffs.at(scalar).apply(a)


def bilinear_map(x: Q4Vector, y: Q4Vector, d, digits: int = DEFAULT_DIGITS) -> Q4Vector:
    """Polarization of the squaring map: (R(x+y) - R(x) - R(y)) / 2."""
    total = renorm_map(x + y, d, digits) - renorm_map(x, d, digits) - renorm_map(y, d, digits)
    return total.scale(Fraction(1, 2))


def m_constant(d, digits: int = DEFAULT_DIGITS):
    """The quadratic-growth constant M(d)."""
    scalar, _ = _scalarize(d, digits)
    e = scalar - 1
    return (scalar + 1) / e + ((scalar - 2) / e) ** 2 + scalar * (scalar + 1) * (scalar - 2) / (e * e * e)


def bound_expression(a: Q4Vector, d):
    """The convex upper bound for the l1 norm of the squaring map (d >= 2).

    A(p+q)^2 + (r + (d-2)/(d-1) p)^2 + B p^2 with A = (d+1)/(d-1) and
    B = d(d+1)(d-2)/(d-1)^3; its maximum on the unit l1 ball is attained
    at +-b1 where it equals M(d).
    """
    scalar, _ = _scalarize(d, DEFAULT_DIGITS)
    e = scalar - 1
    big_a = (scalar + 1) / e
    big_b = scalar * (scalar + 1) * (scalar - 2) / (e * e * e)
    alpha = (scalar - 2) / e
    p, q, r = a.p, a.q, a.r
    return big_a * (p + q) ** 2 + (r + alpha * p) ** 2 + big_b * p * p


def _guard_bits(value: Fraction, max_bits: int):
    if (
        value.numerator.bit_length() > max_bits
        or value.denominator.bit_length() > max_bits
    ):
        raise PrecisionError(
            f"exact iteration exceeded {max_bits} bits; rerun with interval digits"
        )


def iterate_norms(
    x0: Q4Vector,
    d,
    steps: int,
    digits: int = DEFAULT_DIGITS,
    max_bits: int = 1 << 20,
) -> list[tuple[int, object]]:
    """l1 norms of the first `steps` iterates of x0.

    Exact rationals when d and x0 are rational (raising PrecisionError if
    the guard is exceeded, never rounding silently); otherwise each norm
    is an outward-rounded interval upper bound at the stated precision.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    scalar, exact = _scalarize(d, digits)
    coeffs = _Coeffs.at(scalar)
    x = x0 if exact else Q4Vector(*(_to_field(c, False) for c in (x0.p, x0.q, x0.r)))
    out = []
    for n in range(1, steps + 1):
        x = coeffs.apply(x)
        norm = x.l1()
        if exact:
            _guard_bits(norm, max_bits)
            out.append((n, norm))
        else:
            out.append((n, norm.b))
    return out


@dataclass(frozen=True)
class Certificate:
    """A rigorous decay certificate: M * |iterate n|_1 < 1 strictly."""

    n: int
    norm_bound: object  # K (upper bound in interval mode)
    m_bound: object  # M
    product: object  # upper bound for M * K
    exact: bool
    digits: int | None

    def __post_init__(self):
        if not self.product < 1:
            raise ValueError("certificate product must be strictly below 1")


@dataclass(frozen=True)
class CertificateFailure:
    reason: str
    m_bound: object | None
    best_n: int | None
    best_product: object | None
    exact: bool
    digits: int | None


def find_certificate(
    d,
    n_max: int = DEFAULT_NMAX,
    digits: int = DEFAULT_DIGITS,
    max_bits: int = 1 << 20,
) -> Certificate | CertificateFailure:
    """Smallest n <= n_max with M * |map^n(b1)|_1 < 1, or the best failure.

    Refuses d < 2, where the displayed M is not a valid quadratic bound
    and a product below 1 would certify nothing.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    param = LoopParameter.coerce(d)
    scalar, exact = _scalarize(param, digits)
    dig = None if exact else digits

    if exact:
        below_two = scalar < 2
    elif scalar.b < 2:
        below_two = True
    elif scalar.a >= 2:
        below_two = False
    else:
        raise PrecisionError("cannot separate d from 2 at this precision")
    if below_two:
        return CertificateFailure(
            reason="quadratic growth bound is only valid for d >= 2",
            m_bound=None,
            best_n=None,
            best_product=None,
            exact=exact,
            digits=dig,
        )

    m_bound = m_constant(param, digits)
    coeffs = _Coeffs.at(scalar)
    x = B1 if exact else Q4Vector(*(_to_field(c, False) for c in (1, 0, 0)))
    best_n, best_upper = None, None
    for n in range(1, n_max + 1):
        x = coeffs.apply(x)
        norm = x.l1()
        product = m_bound * norm
        if exact:
            _guard_bits(norm, max_bits)
            norm_up, prod_up = norm, product
        else:
            norm_up, prod_up = norm.b, product.b
        if best_upper is None or prod_up < best_upper:
            best_n, best_upper = n, prod_up
        if prod_up < 1:
            return Certificate(
                n=n,
                norm_bound=norm_up,
                m_bound=m_bound if exact else m_bound.b,
                product=prod_up,
                exact=exact,
                digits=dig,
            )
    return CertificateFailure(
        reason=f"no certificate within n_max={n_max}",
        m_bound=m_bound if exact else m_bound.b,
        best_n=best_n,
        best_product=best_upper,
        exact=exact,
        digits=dig,
    )


@dataclass(frozen=True)
class DecayRow:
    n: int
    norm: object
    log_norm: float
    log_ratio: float | None


def _log_value(x) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(float(x))


def decay_profile(
    d,
    steps: int,
    digits: int = DEFAULT_DIGITS,
    max_bits: int = 1 << 20,
) -> list[DecayRow]:
    """Log-norms of the orbit of b1 and successive log-norm ratios.

    Requires a decay certificate at d; past the certificate step the
    ratios approach 2 (doubly exponential decay).
    """
    cert = find_certificate(d, max(steps, DEFAULT_NMAX), digits, max_bits)
    if isinstance(cert, CertificateFailure):
        raise ValueError(f"no decay certificate at d={LoopParameter.coerce(d).label()}: {cert.reason}")
    norms = iterate_norms(B1, d, steps, digits, max_bits)
    logs = [_log_value(k) for _, k in norms]
    rows = []
    for i, (n, k) in enumerate(norms):
        ratio = logs[i + 1] / logs[i] if i + 1 < len(logs) and logs[i] != 0 else None
        rows.append(DecayRow(n=n, norm=k, log_norm=logs[i], log_ratio=ratio))
    return rows


# --------------------------------------------------------------------------
# Parameter scans
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    m: int | None
    variant: str | None
    d_label: str
    outcome: Certificate | CertificateFailure

    @property
    def certified(self) -> bool:
        return isinstance(self.outcome, Certificate)


@dataclass(frozen=True)
class ScanReport:
    rows: tuple[ScanRow, ...]
    n_max: int
    digits: int

    def variant_rows(self, variant: str) -> list[ScanRow]:
        return [r for r in self.rows if r.variant == variant]

    def _matches_expected_pattern(self, variant: str) -> bool:
        rows = self.variant_rows(variant)
        if not rows:
            return False
        for row in rows:
            expected = row.m >= 7
            if row.certified != expected:
                return False
        return True

    def verdict(self) -> str:
        variants = sorted({r.variant for r in self.rows if r.variant})
        matching = [v for v in variants if self._matches_expected_pattern(v)]
        if not matching:
            return "no variant certifies exactly for m >= 7 and fails for m in {5, 6}"
        names = " and ".join(matching)
        return (
            f"variant {names} reproduces the expected pattern: "
            "certificates for m >= 7, failures for m in {5, 6}"
        )


def scan(
    m_from: int,
    m_to: int,
    variant: str = "both",
    include_d3: bool = False,
    n_max: int = DEFAULT_NMAX,
    digits: int = DEFAULT_DIGITS,
) -> ScanReport:
    """Certificate search over the cosine family, one row per (m, variant)."""
    if not 5 <= m_from <= m_to:
        # Below m = 5 the minus variant leaves the d > 1 domain entirely.
        raise ValueError("need 5 <= m_from <= m_to")
    if variant not in ("plus", "minus", "both"):
        raise ValueError("variant must be 'plus', 'minus' or 'both'")
    variants = ("plus", "minus") if variant == "both" else (variant,)
    rows = []
    for var in variants:
        for m in range(m_from, m_to + 1):
            param = LoopParameter.cosine(m, var)
            rows.append(
                ScanRow(
                    m=m,
                    variant=var,
                    d_label=param.label(digits),
                    outcome=find_certificate(param, n_max, digits),
                )
            )
    if include_d3:
        param = LoopParameter.from_rational(3)
        rows.append(
            ScanRow(
                m=None,
                variant=None,
                d_label="3",
                outcome=find_certificate(param, n_max, digits),
            )
        )
    return ScanReport(rows=tuple(rows), n_max=n_max, digits=digits)


# --------------------------------------------------------------------------
# Reports on the printed formulas
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SquareFormsReport:
    """Raw polynomial versus the completed-squares display.

    The b1 coordinate agrees identically.  The displayed b2 line only
    agrees after replacing its (d-1)^2 denominator by (d-1)^3 (as printed
    it overshoots by d(d-2)^2/(d-1)^3 p^2).  The displayed b3 line
    repeats the b1 squares and disagrees with the raw b3 outright:
    witness (0, 0, 1), where the raw coordinate is 0 and the display
    gives 1.
    """

    d: Fraction
    samples: int
    b1_max_discrepancy: Fraction
    b2_printed_max_discrepancy: Fraction
    b2_corrected_max_discrepancy: Fraction
    b3_printed_max_discrepancy: Fraction


def compare_square_forms(d, sample_count: int = 1000, seed: int = 0) -> SquareFormsReport:
    import random

    param = LoopParameter.coerce(d)
    if not param.is_exact:
        raise ValueError("the algebraic comparison runs over exact rationals")
    dd = param.exact
    e = dd - 1
    alpha = (dd - 2) / e
    beta = (dd + 1) * (dd - 2) / (e * e)
    coeffs = _Coeffs.at(dd)

    rng = random.Random(seed)
    points = [B1, B2, B3, Q4Vector(Fraction(0), Fraction(0), Fraction(1))]
    for _ in range(sample_count):
        points.append(
            Q4Vector(*(Fraction(rng.randrange(-64, 65), rng.randrange(1, 17)) for _ in range(3)))
        )

    maxes = [Fraction(0)] * 4
    for a in points:
        p, q, r = a.p, a.q, a.r
        raw = coeffs.apply(a)
        square = (p + q) ** 2 + (r + alpha * p) ** 2 - beta * p * p
        b2_printed = -((p + q) ** 2 / e - dd * (dd - 2) / (e * e) * p * p)
        b2_corrected = -((p + q) ** 2 / e - dd * (dd - 2) / (e * e * e) * p * p)
        deltas = (
            abs(square - raw.p),
            abs(b2_printed - raw.q),
            abs(b2_corrected - raw.q),
            abs(square - raw.r),
        )
        maxes = [max(m, x) for m, x in zip(maxes, deltas)]
    return SquareFormsReport(
        d=dd,
        samples=len(points),
        b1_max_discrepancy=maxes[0],
        b2_printed_max_discrepancy=maxes[1],
        b2_corrected_max_discrepancy=maxes[2],
        b3_printed_max_discrepancy=maxes[3],
    )


@dataclass(frozen=True)
class BoundReport:
    d: Fraction
    samples: int
    violations: int
    extreme_values: dict[str, Fraction]
    max_attained_at_b1: bool

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.max_attained_at_b1


def bound_check(d, sample_count: int = 100_000, seed: int = 0) -> BoundReport:
    """Sample the unit l1 sphere and verify |map(a)|_1 <= M(d).

    The map is homogeneous of degree two, so integer triples (i, j, k)
    with s = |i|+|j|+|k| stand in for points on the sphere: the check is
    |map(i, j, k)|_1 <= M * s^2, carried out in pure integer arithmetic
    after clearing the coefficient denominators.
    """
    import random

    param = LoopParameter.coerce(d)
    if not param.is_exact:
        raise ValueError("bound_check runs over exact rationals")
    dd = param.exact
    if dd < 2:
        raise ValueError("the quadratic bound is only valid for d >= 2")

    coeffs = _Coeffs.at(dd)
    m_val = m_constant(dd)
    # Clear denominators: scaled integer coefficients over the common w.
    fracs = [coeffs.p_sq, coeffs.pr, coeffs.q_p_sq, coeffs.inv, coeffs.r_p_sq]
    w = math.lcm(*(f.denominator for f in fracs))
    c_p, c_pr, c_qp, c_inv, c_rp = (int(f * w) for f in fracs)
    mk_num, mk_den = m_val.numerator, m_val.denominator

    rng = random.Random(seed)
    violations = 0
    for _ in range(sample_count):
        i = rng.randrange(-(10**6), 10**6 + 1)
        j = rng.randrange(-(10**6), 10**6 + 1)
        k = rng.randrange(-(10**6), 10**6 + 1)
        s = abs(i) + abs(j) + abs(k)
        if s == 0:
            continue
        pp = i * i
        cross = 2 * i * j + j * j
        n1 = c_p * pp + w * (2 * i * j) + c_pr * i * k + w * (j * j + k * k)
        n2 = -(c_qp * pp + c_inv * cross)
        n3 = c_rp * pp + c_inv * cross
        # n1..n3 are w times the image coordinates, so the bound reads
        # (|n1|+|n2|+|n3|) / w <= (mk_num/mk_den) * s^2.
        if (abs(n1) + abs(n2) + abs(n3)) * mk_den > mk_num * s * s * w:
            violations += 1

    extremes = {
        "b1": bound_expression(B1, dd),
        "b2": bound_expression(B2, dd),
        "b3": bound_expression(B3, dd),
    }
    neg = {
        "b1": bound_expression(B1.scale(Fraction(-1)), dd),
        "b2": bound_expression(B2.scale(Fraction(-1)), dd),
        "b3": bound_expression(B3.scale(Fraction(-1)), dd),
    }
    max_at_b1 = (
        extremes["b1"] == m_val
        and neg["b1"] == m_val
        and all(v <= m_val for v in extremes.values())
        and all(v <= m_val for v in neg.values())
    )
    return BoundReport(
        d=dd,
        samples=sample_count,
        violations=violations,
        extreme_values=extremes,
        max_attained_at_b1=max_at_b1,
    )
