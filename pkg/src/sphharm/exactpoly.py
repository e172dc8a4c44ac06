"""Sparse multivariate polynomials over the rationals.

The :class:`MultiPoly` value type carries every symbolic identity in the
library: coefficients are exact :class:`fractions.Fraction` end to end,
and floats appear only at the evaluation boundary.  Instances are
immutable; every operation returns a new polynomial, so values can be
shared freely across threads.

Conventions
-----------
* Variables are x1 .. xd and axis arguments are 1-based, matching the
  mathematical notation used throughout.
* The canonical term order is graded lexicographic with x1 < x2 < ... < xd
  (compare total degree first, then exponents from xd down); repr, JSON
  output and float evaluation all use it.
* The degree of the zero polynomial is ``None``, a sentinel rather than a
  number, so nothing ever does arithmetic on it.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from sphharm import _poly_core as _core

Rational = Fraction
MultiIndex = tuple  # tuple[int, ...] of length d

_ZERO = Fraction(0)
_ONE = Fraction(1)


def grlex_key(alpha: Sequence[int]) -> tuple:
    """Sort key for the canonical graded-lex order (x1 < x2 < ... < xd)."""
    return (sum(alpha), tuple(reversed(alpha)))


class MultiPoly:
    """Immutable sparse polynomial in ``dimension`` variables."""

    __slots__ = ("_d", "_terms")

    def __init__(self, dimension: int, terms: Mapping | None = None):
        if dimension < 1:
            raise ValueError("dimension must be at least 1")
        clean: dict = {}
        if terms:
            for alpha, c in terms.items():
                alpha = tuple(int(e) for e in alpha)
                if len(alpha) != dimension:
                    raise ValueError(
                        f"exponent tuple {alpha} has length {len(alpha)}, expected {dimension}"
                    )
                if any(e < 0 for e in alpha):
                    raise ValueError(f"negative exponent in {alpha}")
                c = Fraction(c)
                if c:
                    acc = clean.get(alpha, _ZERO) + c
                    if acc:
                        clean[alpha] = acc
                    else:
                        clean.pop(alpha, None)
        object.__setattr__(self, "_d", dimension)
        object.__setattr__(self, "_terms", clean)

    # internal fast path: adopt a canonical dict produced by the kernels
    @classmethod
    def _raw(cls, dimension: int, terms: dict) -> "MultiPoly":
        self = object.__new__(cls)
        object.__setattr__(self, "_d", dimension)
        object.__setattr__(self, "_terms", terms)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def zero(cls, dimension: int) -> "MultiPoly":
        return cls(dimension)

    @classmethod
    def one(cls, dimension: int) -> "MultiPoly":
        return cls.constant(dimension, 1)

    @classmethod
    def constant(cls, dimension: int, value) -> "MultiPoly":
        return cls(dimension, {(0,) * dimension: Fraction(value)})

    @classmethod
    def variable(cls, dimension: int, i: int) -> "MultiPoly":
        """The coordinate polynomial x_i (1-based axis)."""
        if not 1 <= i <= dimension:
            raise ValueError(f"axis {i} out of range for dimension {dimension}")
        alpha = [0] * dimension
        alpha[i - 1] = 1
        return cls(dimension, {tuple(alpha): _ONE})

    @classmethod
    def monomial(cls, dimension: int, alpha: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(dimension, {tuple(alpha): Fraction(coeff)})

    @classmethod
    def norm_sq(cls, dimension: int) -> "MultiPoly":
        """x1^2 + ... + xd^2."""
        terms = {}
        for i in range(dimension):
            alpha = [0] * dimension
            alpha[i] = 2
            terms[tuple(alpha)] = _ONE
        return cls._raw(dimension, terms)

    # ------------------------------------------------------------------
    # basic queries
    # ------------------------------------------------------------------
    @property
    def dimension(self) -> int:
        return self._d

    @property
    def terms(self) -> dict:
        """Copy of the term map (exponent tuple -> Fraction)."""
        return dict(self._terms)

    def items(self) -> list:
        """Terms in canonical graded-lex order."""
        return [(alpha, self._terms[alpha]) for alpha in sorted(self._terms, key=grlex_key)]

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int | None:
        """Total degree, or None for the zero polynomial."""
        if not self._terms:
            return None
        return max(sum(alpha) for alpha in self._terms)

    def is_homogeneous(self) -> bool:
        """True for the zero polynomial and for single-degree polynomials."""
        degrees = {sum(alpha) for alpha in self._terms}
        return len(degrees) <= 1

    def coefficient(self, alpha: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(alpha), _ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._d == other._d and self._terms == other._terms

    def __hash__(self):
        return hash((self._d, frozenset(self._terms.items())))

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def _check_dim(self, other: "MultiPoly") -> None:
        if self._d != other._d:
            raise ValueError(f"dimension mismatch: {self._d} vs {other._d}")

    def __add__(self, other):
        if isinstance(other, MultiPoly):
            self._check_dim(other)
            return MultiPoly._raw(self._d, _core.add_terms(self._terms, other._terms))
        if isinstance(other, (int, Fraction)):
            return self + MultiPoly.constant(self._d, other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MultiPoly):
            self._check_dim(other)
            return MultiPoly._raw(self._d, _core.sub_terms(self._terms, other._terms))
        if isinstance(other, (int, Fraction)):
            return self - MultiPoly.constant(self._d, other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly._raw(self._d, _core.neg_terms(self._terms))

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            self._check_dim(other)
            return MultiPoly._raw(self._d, _core.mul_terms(self._terms, other._terms))
        if isinstance(other, (int, Fraction)):
            return MultiPoly._raw(self._d, _core.scale_terms(self._terms, Fraction(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = MultiPoly.one(self._d)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # ------------------------------------------------------------------
    # calculus and sphere reduction
    # ------------------------------------------------------------------
    def partial(self, i: int) -> "MultiPoly":
        """Formal partial derivative with respect to x_i (1-based)."""
        if not 1 <= i <= self._d:
            raise ValueError(f"axis {i} out of range for dimension {self._d}")
        return MultiPoly._raw(self._d, _core.partial_terms(self._terms, i - 1))

    def laplacian(self) -> "MultiPoly":
        """Sum of second partials over all axes, exact."""
        return MultiPoly._raw(self._d, _core.laplacian_terms(self._terms, self._d))

    def sphere_reduce(self) -> "MultiPoly":
        """Canonical representative of the restriction to the unit sphere.

        Rewrites xd^2 -> 1 - x1^2 - ... - x_{d-1}^2 until xd appears with
        exponent 0 or 1 only; two polynomials agree on the sphere exactly
        when their reduced forms are identical.
        """
        if self._d < 2:
            raise ValueError("sphere reduction needs dimension >= 2")
        return MultiPoly._raw(self._d, _core.sphere_reduce_terms(self._terms, self._d))

    def homogeneous_components(self) -> list[tuple[int, "MultiPoly"]]:
        """Split into homogeneous parts, ascending degree; empty for 0."""
        buckets: dict[int, dict] = {}
        for alpha, c in self._terms.items():
            buckets.setdefault(sum(alpha), {})[alpha] = c
        return [(k, MultiPoly._raw(self._d, buckets[k])) for k in sorted(buckets)]

    def homogeneous_component(self, k: int) -> "MultiPoly":
        terms = {a: c for a, c in self._terms.items() if sum(a) == k}
        return MultiPoly._raw(self._d, terms)

    def divide_norm_sq(self) -> "MultiPoly":
        """Exact quotient self / (x1^2 + ... + xd^2); raises if not divisible."""
        s = MultiPoly.norm_sq(self._d)._terms
        rem = dict(self._terms)
        out: dict = {}
        while rem:
            lead = max(rem, key=grlex_key)
            if lead[-1] < 2:
                raise ValueError("polynomial is not divisible by ||x||^2")
            q = lead[:-1] + (lead[-1] - 2,)
            c = rem[lead]
            out[q] = c
            rem = _core.sub_terms(rem, _core.mul_monomial_terms(s, q, c))
        return MultiPoly._raw(self._d, out)

    # ------------------------------------------------------------------
    # evaluation
    # ------------------------------------------------------------------
    def eval_rational(self, xs: Sequence) -> Fraction:
        """Exact evaluation at a rational point."""
        if len(xs) != self._d:
            raise ValueError(f"point has length {len(xs)}, expected {self._d}")
        return Fraction(_core.eval_terms(self._terms, tuple(Fraction(x) for x in xs)))

    def eval_float(self, xs: Sequence[float]) -> float:
        """Float evaluation (double precision), deterministic term order."""
        if len(xs) != self._d:
            raise ValueError(f"point has length {len(xs)}, expected {self._d}")
        return float(_core.eval_terms(self._terms, tuple(float(x) for x in xs)))

    def __call__(self, point) -> float:
        """Float evaluation; accepts a coordinate sequence or SpherePoint."""
        cart = getattr(point, "cartesian", point)
        return self.eval_float(cart)

    def eval_many(self, points) -> "np.ndarray":
        """Vectorized float evaluation at an (m, d) array of points."""
        import numpy as np

        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != self._d:
            raise ValueError(f"expected an (m, {self._d}) array of points")
        out = np.zeros(pts.shape[0])
        # cache integer powers per variable to keep the term loop cheap
        pows: list[dict] = [{} for _ in range(self._d)]
        for alpha in sorted(self._terms, key=grlex_key):
            term = np.full(pts.shape[0], float(self._terms[alpha]))
            for i, e in enumerate(alpha):
                if e:
                    p = pows[i].get(e)
                    if p is None:
                        p = pts[:, i] ** e
                        pows[i][e] = p
                    term = term * p
            out += term
        return out

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------
    def to_json_dict(self) -> dict:
        """Schema: {"d": int, "terms": [{"alpha": [...], "num": str, "den": str}]}.

        Terms come in graded-lex order and integers are decimal strings so
        consumers never overflow.
        """
        return {
            "d": self._d,
            "terms": [
                {"alpha": list(alpha), "num": str(c.numerator), "den": str(c.denominator)}
                for alpha, c in self.items()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "MultiPoly":
        try:
            d = int(data["d"])
            raw = data["terms"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed polynomial JSON: missing or bad field {exc}") from exc
        terms = {}
        for entry in raw:
            try:
                alpha = tuple(int(e) for e in entry["alpha"])
                c = Fraction(int(entry["num"]), int(entry["den"]))
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed polynomial term {entry!r}: {exc}") from exc
            if c:
                terms[alpha] = terms.get(alpha, _ZERO) + c
        return cls(d, terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_dict(json.loads(text))

    # ------------------------------------------------------------------
    def __repr__(self) -> str:
        if not self._terms:
            return "MultiPoly(0)"
        parts = []
        for alpha, c in self.items():
            factors = [
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(alpha)
                if e
            ]
            mono = "*".join(factors) if factors else "1"
            if c == 1 and factors:
                parts.append(mono)
            elif c == -1 and factors:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}" if factors else f"{c}")
        body = " + ".join(parts).replace("+ -", "- ")
        return f"MultiPoly({body})"


def poly_vars(dimension: int) -> tuple[MultiPoly, ...]:
    """Convenience tuple (x1, ..., xd)."""
    return tuple(MultiPoly.variable(dimension, i) for i in range(1, dimension + 1))
