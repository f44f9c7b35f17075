"""Exact linear angle forms ``p*a + q*b + r*c + s*tau``.

Every angle label in every diagram is such a form.  The three letters are
tied together by the constraint ``a + b + c = tau/(2n)``, where ``n`` is the
sector count of the ambient diagram, and a prime adds ``tau/(2n)``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

import numpy as np

from .errors import ConstraintViolation, DegenerateAngle

TAU = 2.0 * math.pi

Rational = Union[int, Fraction, str]

_SYMBOLS = ("a", "b", "c", "tau")


@dataclass(frozen=True)
class AngleForm:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    tau: Fraction = Fraction(0)

    def __post_init__(self):
        for name in _SYMBOLS:
            value = getattr(self, name)
            if isinstance(value, float):
                raise TypeError("angle form coefficients must be exact, got float")
            object.__setattr__(self, name, Fraction(value))

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.tau)

    def __add__(self, other: "AngleForm") -> "AngleForm":
        if not isinstance(other, AngleForm):
            return NotImplemented
        return AngleForm(*(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AngleForm") -> "AngleForm":
        if not isinstance(other, AngleForm):
            return NotImplemented
        return AngleForm(*(x - y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "AngleForm":
        return AngleForm(*(-x for x in self.coeffs))

    def __mul__(self, k: Rational) -> "AngleForm":
        if isinstance(k, float):
            raise TypeError("scalar must be exact")
        k = Fraction(k)
        return AngleForm(*(k * x for x in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def canonical(self, n: int) -> tuple[Fraction, Fraction, Fraction]:
        """Representative modulo the constraint: eliminate ``c = tau/(2n) - a - b``.

        Returns the ``(a, b, tau)`` coefficients of the equivalent form.
        """
        p, q, r, s = self.coeffs
        return (p - r, q - r, s + r / (2 * n))

    def equivalent(self, other: "AngleForm", n: int) -> bool:
        return self.canonical(n) == other.canonical(n)

    def evaluate(self, assignment: "Assignment", n: int) -> float:
        check_assignment(assignment, n)
        return self._value(assignment)

    def _value(self, assignment: "Assignment") -> float:
        p, q, r, s = self.coeffs
        return math.fsum(
            (float(p) * assignment.a, float(q) * assignment.b,
             float(r) * assignment.c, float(s) * TAU)
        )

    def __str__(self) -> str:
        parts = []
        for name, coef in zip(_SYMBOLS, self.coeffs):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            body = name if mag == 1 else f"{mag}*{name}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"AngleForm({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "AngleForm":
        return parse_form(text)


ZERO = AngleForm()
A = AngleForm(a=1)
B = AngleForm(b=1)
C = AngleForm(c=1)
TAU_FORM = AngleForm(tau=1)


def make_form(coeff_a: Rational = 0, coeff_b: Rational = 0, coeff_c: Rational = 0,
              coeff_tau: Rational = 0) -> AngleForm:
    return AngleForm(Fraction(coeff_a), Fraction(coeff_b), Fraction(coeff_c), Fraction(coeff_tau))


def prime(form: AngleForm, n: int, times: int = 1) -> AngleForm:
    """Add ``times * tau/(2n)``: the primed angle x' = x + tau/(2n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return form + AngleForm(tau=Fraction(times, 2 * n))


_TERM = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?\s*\*?\s*(?P<sym>a|b|c|tau)(?:\s*/\s*(?P<den>\d+))?$"
)


def parse_form(text: str) -> AngleForm:
    """Parse ``"p*a + q*b + r*c + s*tau"``; unit coefficients and order are free.

    Also accepts ``tau/4`` style divisors and the bare literal ``0``.
    """
    src = text.replace("τ", "tau").replace("−", "-").strip()
    if not src:
        raise ValueError("empty angle form")
    if src[0] not in "+-":
        src = "+" + src
    coeffs = dict.fromkeys(_SYMBOLS, Fraction(0))
    pieces = re.findall(r"([+-])\s*([^+-]+)", src)
    if "".join(s + t for s, t in pieces).replace(" ", "") != src.replace(" ", ""):
        raise ValueError(f"cannot parse angle form {text!r}")
    for sign, body in pieces:
        body = body.strip()
        if re.fullmatch(r"0+", body):
            continue
        m = _TERM.match(body)
        if m is None:
            raise ValueError(f"bad term {body!r} in angle form {text!r}")
        coef = Fraction(m["coef"]) if m["coef"] else Fraction(1)
        if m["den"]:
            coef /= int(m["den"])
        if sign == "-":
            coef = -coef
        coeffs[m["sym"]] += coef
    return AngleForm(*(coeffs[s] for s in _SYMBOLS))


@dataclass(frozen=True)
class Shape:
    """Similarity class Δ(A, B, C), angles listed counter-clockwise."""

    angles: tuple[AngleForm, AngleForm, AngleForm]

    def __post_init__(self):
        angles = tuple(f if isinstance(f, AngleForm) else parse_form(f) for f in self.angles)
        if len(angles) != 3:
            raise ValueError("a shape has exactly three angles")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def of(cls, *angles) -> "Shape":
        return cls(tuple(angles))

    def __getitem__(self, i: int) -> AngleForm:
        return self.angles[i % 3]

    def rotated(self, k: int) -> "Shape":
        return Shape(tuple(self.angles[(i + k) % 3] for i in range(3)))

    def equivalent(self, other: "Shape", n: int) -> bool:
        return all(x.equivalent(y, n) for x, y in zip(self.angles, other.angles))

    def key(self, n: int) -> tuple:
        """Hashable class of the shape modulo the constraint and cyclic relabeling."""
        reps = [tuple(f.canonical(n) for f in self.rotated(k).angles) for k in range(3)]
        return min(reps)

    def evaluate(self, assignment: "Assignment", n: int) -> tuple[float, float, float]:
        check_assignment(assignment, n)
        return tuple(f._value(assignment) for f in self.angles)

    def __str__(self) -> str:
        return "Δ(" + ", ".join(str(f) for f in self.angles) + ")"


def shape_sum_check(shape: Shape, n: int) -> bool:
    """True iff the three angles sum to exactly tau/2 modulo the constraint."""
    total = shape.angles[0] + shape.angles[1] + shape.angles[2]
    return total.equivalent(AngleForm(tau=Fraction(1, 2)), n)


class Assignment(NamedTuple):
    a: float
    b: float
    c: float


def check_assignment(assignment: Assignment, n: int, rel_tol: float = 1e-12) -> None:
    a, b, c = assignment
    target = TAU / (2 * n)
    if min(a, b, c) <= 0:
        raise ConstraintViolation(f"a, b, c must be positive, got {tuple(assignment)}")
    if abs((a + b + c) - target) > rel_tol * target:
        raise ConstraintViolation(
            f"a + b + c = {a + b + c!r} but the constraint for n={n} needs {target!r}"
        )


def eval_form(form: AngleForm, assignment: Assignment, n: int) -> float:
    return form.evaluate(assignment, n)


def evaluate_realizable(shape: Shape, assignment: Assignment, n: int, eps: float = 1e-12):
    """Evaluate a shape and insist every angle lies strictly inside (0, tau/2)."""
    vals = shape.evaluate(assignment, n)
    for v in vals:
        if v <= eps or v >= TAU / 2 - eps:
            raise DegenerateAngle(f"{shape} evaluates to angle {v!r} at {tuple(assignment)}")
    return vals


def equilateral_assignment(n: int) -> Assignment:
    x = TAU / (6 * n)
    return Assignment(x, x, x)


def random_assignment(n: int, rng: np.random.Generator, margin: float | None = None) -> Assignment:
    """Uniform draw from the simplex {a, b, c > tau/(40n), a + b + c = tau/(2n)}."""
    total = TAU / (2 * n)
    lo = TAU / (40 * n) if margin is None else margin
    w = rng.dirichlet((1.0, 1.0, 1.0))
    a, b = lo + (total - 3 * lo) * w[0], lo + (total - 3 * lo) * w[1]
    # close the constraint exactly in floating point
    return Assignment(a, b, total - a - b)


def assignment_from_ratios(n: int, ratios: tuple[float, float, float]) -> Assignment:
    s = sum(ratios)
    total = TAU / (2 * n)
    a, b = total * ratios[0] / s, total * ratios[1] / s
    return Assignment(a, b, total - a - b)
