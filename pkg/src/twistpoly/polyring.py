"""Exact sparse Laurent polynomial arithmetic with half-integer exponents.

Polynomials are stored as dictionaries mapping *doubled* exponents to nonzero
integer coefficients, so ``t^{3/2}`` is the key ``3`` and ``t^2`` is the key
``4``.  All arithmetic stays in arbitrary-precision integers; nothing here is
floating point.  Two shapes are provided:

  HalfLaurent1   one variable, ``{doubled_exponent: coeff}``
  HalfLaurentN   named variables, ``{(d1, ..., dk): coeff}``

Zero coefficients are never stored; the zero polynomial is the empty dict.
Values are immutable after construction and safe to share between threads.

Specialization that must divide by a non-unit (clearing ``z`` against
``t^{1/2} - t^{-1/2}`` for split links) tracks the leftover denominator power
explicitly instead of failing silently; see ``specialize_tracked``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class InexactDivisionError(ArithmeticError):
    """Raised when an exact polynomial division leaves a remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


def _clean(terms: Mapping) -> dict:
    return {k: c for k, c in terms.items() if c != 0}


class HalfLaurent1:
    """Integer Laurent polynomial in one variable with half-integer exponents."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        object.__setattr__(self, "terms", _clean(terms or {}))

    def __setattr__(self, name, value):
        raise AttributeError("HalfLaurent1 is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "HalfLaurent1":
        return cls()

    @classmethod
    def const(cls, c: int) -> "HalfLaurent1":
        return cls({0: c})

    @classmethod
    def monomial(cls, dexp: int, coeff: int = 1) -> "HalfLaurent1":
        """coeff * t^(dexp/2)."""
        return cls({dexp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], low_dexp: int = 0) -> "HalfLaurent1":
        """Dense coefficient list, ascending from t^(low_dexp/2) in t^{1/2} steps."""
        return cls({low_dexp + i: c for i, c in enumerate(coeffs)})

    # -- queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_unit(self) -> bool:
        """True for +-t^(k/2)."""
        return len(self.terms) == 1 and abs(next(iter(self.terms.values()))) == 1

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def min_dexp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return min(self.terms)

    def max_dexp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.terms)

    def coeff(self, dexp: int) -> int:
        return self.terms.get(dexp, 0)

    def dense_coeffs(self) -> tuple[list[int], int]:
        """(ascending coefficient list, low doubled exponent)."""
        if not self.terms:
            return [], 0
        lo, hi = self.min_dexp(), self.max_dexp()
        out = [0] * (hi - lo + 1)
        for d, c in self.terms.items():
            out[d - lo] = c
        return out, lo

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurent1.const(other)
        if not isinstance(other, HalfLaurent1):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = HalfLaurent1.const(other)
        if not isinstance(other, HalfLaurent1):
            return NotImplemented
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return HalfLaurent1(out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurent1({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = HalfLaurent1.const(other)
        if not isinstance(other, HalfLaurent1):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfLaurent1({d: c * other for d, c in self.terms.items()})
        if not isinstance(other, HalfLaurent1):
            return NotImplemented
        out: dict[int, int] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                k = d1 + d2
                out[k] = out.get(k, 0) + c1 * c2
        return HalfLaurent1(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = HalfLaurent1.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, dexp: int) -> "HalfLaurent1":
        """Multiply by t^(dexp/2)."""
        return HalfLaurent1({d + dexp: c for d, c in self.terms.items()})

    def reciprocal(self) -> "HalfLaurent1":
        """Substitute t -> t^{-1}."""
        return HalfLaurent1({-d: c for d, c in self.terms.items()})

    def __repr__(self):
        return f"HalfLaurent1({format_poly1(self)!r})"

    def __str__(self):
        return format_poly1(self)


class HalfLaurentN:
    """Integer Laurent polynomial in named variables, half-integer exponents."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, int] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"duplicate variable names in {vars}")
        cleaned = {}
        for k, c in (terms or {}).items():
            if len(k) != len(vars):
                raise ValueError(f"exponent vector {k} does not match variables {vars}")
            if c != 0:
                cleaned[tuple(k)] = c
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("HalfLaurentN is immutable")

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "HalfLaurentN":
        return cls(vars)

    @classmethod
    def const(cls, vars: Sequence[str], c: int) -> "HalfLaurentN":
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def monomial(cls, vars: Sequence[str], dexps: Sequence[int], coeff: int = 1) -> "HalfLaurentN":
        return cls(vars, {tuple(dexps): coeff})

    @classmethod
    def variable(cls, vars: Sequence[str], name: str, dexp: int = 2) -> "HalfLaurentN":
        """The monomial name^(dexp/2) inside the given variable list."""
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = dexp
        return cls(vars, {tuple(e): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def _check_compatible(self, other: "HalfLaurentN"):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def __eq__(self, other):
        if isinstance(other, int):
            other = HalfLaurentN.const(self.vars, other)
        if not isinstance(other, HalfLaurentN):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        if isinstance(other, int):
            other = HalfLaurentN.const(self.vars, other)
        if not isinstance(other, HalfLaurentN):
            return NotImplemented
        self._check_compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return HalfLaurentN(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return HalfLaurentN(self.vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = HalfLaurentN.const(self.vars, other)
        if not isinstance(other, HalfLaurentN):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfLaurentN(self.vars, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, HalfLaurentN):
            return NotImplemented
        self._check_compatible(other)
        out: dict[tuple, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return HalfLaurentN(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = HalfLaurentN.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def var_dexps(self, name: str) -> set[int]:
        i = self.vars.index(name)
        return {k[i] for k in self.terms}

    def slice_by(self, name: str) -> dict[int, "HalfLaurentN"]:
        """Group terms by the doubled exponent of one variable (variable removed)."""
        i = self.vars.index(name)
        rest = self.vars[:i] + self.vars[i + 1:]
        groups: dict[int, dict] = {}
        for k, c in self.terms.items():
            key = k[:i] + k[i + 1:]
            groups.setdefault(k[i], {})[key] = c
        return {d: HalfLaurentN(rest, g) for d, g in sorted(groups.items())}

    def __repr__(self):
        return f"HalfLaurentN({self.vars}, {format_polyn(self)!r})"

    def __str__(self):
        return format_polyn(self)


@dataclass(frozen=True)
class UnitNormalForm:
    """Decomposition p = unit_sign * t^(unit_doubled_shift/2) * poly.

    ``poly`` has lowest doubled exponent 0 and positive lowest coefficient.
    """

    poly: HalfLaurent1
    unit_sign: int
    unit_doubled_shift: int


# ----------------------------------------------------------------------
# module-level operations
# ----------------------------------------------------------------------

def length(p) -> int:
    """Sum of absolute values of the coefficients; length(0) = 0."""
    return sum(abs(c) for c in p.terms.values())


def nonzero_count(p) -> int:
    """Number of stored (nonzero) terms."""
    return len(p.terms)


def unit_normalize(p: HalfLaurent1) -> UnitNormalForm:
    """Factor out the sign and monomial unit; idempotent on normalized input.

    The normalized polynomial has lowest doubled exponent 0 and a positive
    leading (highest-degree) coefficient.
    """
    if p.is_zero():
        raise ValueError("cannot unit-normalize the zero polynomial")
    lo = p.min_dexp()
    sign = 1 if p.terms[p.max_dexp()] > 0 else -1
    poly = HalfLaurent1({d - lo: sign * c for d, c in p.terms.items()})
    return UnitNormalForm(poly=poly, unit_sign=sign, unit_doubled_shift=lo)


def eq_up_to_units(p: HalfLaurent1, q: HalfLaurent1) -> bool:
    """Equality modulo multiplication by +-t^(k/2)."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return unit_normalize(p).poly == unit_normalize(q).poly


def substitute_monomials(f: HalfLaurentN, q: Sequence[int]) -> HalfLaurent1:
    """Substitute y_i -> x^{q_i} in f(x, y_1, ..., y_n); exact collection.

    The first variable of ``f`` is kept; all remaining variables are replaced
    by integer powers of it.
    """
    q = list(q)
    if len(q) != len(f.vars) - 1:
        raise ValueError(f"need {len(f.vars) - 1} exponents, got {len(q)}")
    out: dict[int, int] = {}
    for k, c in f.terms.items():
        d = k[0] + sum(ki * qi for ki, qi in zip(k[1:], q))
        out[d] = out.get(d, 0) + c
    return HalfLaurent1(out)


def divide_exact_1(p: HalfLaurent1, d: HalfLaurent1) -> HalfLaurent1:
    """Exact division in Z[t^{+-1/2}]; raises InexactDivisionError otherwise."""
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return HalfLaurent1.zero()
    # Work with ordinary polynomials in u = t^{1/2} by shifting both to 0.
    pn, plo = p.dense_coeffs()
    dn, dlo = d.dense_coeffs()
    quot = [0] * (len(pn) - len(dn) + 1)
    if len(pn) < len(dn):
        raise InexactDivisionError("degree too small for exact division", remainder=p)
    rem = list(pn)
    lead = dn[-1]
    for i in range(len(pn) - len(dn), -1, -1):
        c = rem[i + len(dn) - 1]
        if c == 0:
            continue
        if c % lead != 0:
            raise InexactDivisionError(
                "leading coefficient does not divide", remainder=HalfLaurent1(
                    {j + plo: v for j, v in enumerate(rem) if v != 0}))
        f = c // lead
        quot[i] = f
        for j, dc in enumerate(dn):
            rem[i + j] -= f * dc
    if any(rem):
        raise InexactDivisionError(
            "nonzero remainder", remainder=HalfLaurent1(
                {j + plo: v for j, v in enumerate(rem) if v != 0}))
    shift = plo - dlo
    return HalfLaurent1({i + shift: c for i, c in enumerate(quot) if c != 0})


def divide_exact_n(p: HalfLaurentN, var: str, d: HalfLaurent1) -> HalfLaurentN:
    """Exact division of a multivariate polynomial by a 1-variable polynomial.

    The divisor lives in variable ``var``; the division is performed slice by
    slice over the remaining exponents.
    """
    i = p.vars.index(var)
    groups: dict[tuple, dict[int, int]] = {}
    for k, c in p.terms.items():
        key = k[:i] + k[i + 1:]
        groups.setdefault(key, {})[k[i]] = c
    out: dict[tuple, int] = {}
    for key, slice_terms in groups.items():
        q = divide_exact_1(HalfLaurent1(slice_terms), d)
        for dd, c in q.terms.items():
            out[key[:i] + (dd,) + key[i:]] = c
    return HalfLaurentN(p.vars, out)


def _bind_unit_inverse(binding: HalfLaurent1) -> HalfLaurent1:
    d = binding.min_dexp()
    c = binding.terms[d]
    return HalfLaurent1({-d: c})


def specialize_tracked(
    p: HalfLaurentN,
    bindings: Mapping[str, "HalfLaurent1 | int"],
):
    """Substitute variables by 1-variable polynomials over a common target.

    Returns ``(result, denom_power, denom)``: the exact result times
    ``denom^-denom_power``.  The denominator is reduced by exact division as
    far as possible and is only nonzero when a bound variable with negative
    exponents received a non-unit polynomial (split-link territory).

    Unbound variables survive; if any binding is a genuine polynomial the
    target variable ``t`` is appended to the result's variables.  When every
    variable is eliminated the result is a HalfLaurent1.
    """
    normalized: dict[str, HalfLaurent1] = {}
    for name, val in bindings.items():
        if name not in p.vars:
            raise ValueError(f"unknown variable {name!r}")
        normalized[name] = HalfLaurent1.const(val) if isinstance(val, int) else val
        idx = p.vars.index(name)
        if any(k[idx] % 2 for k in p.terms):
            raise ValueError(
                f"cannot specialize {name!r}: it occurs with half-integer exponents")

    keep = [v for v in p.vars if v not in normalized]
    denom: HalfLaurent1 | None = None
    denom_power = 0

    # Accumulate into exponent vectors over (keep..., t).
    out: dict[tuple, HalfLaurent1] = {}
    # Pre-plan: a non-unit binding used with negative exponents becomes the
    # tracked denominator; only one such binding is supported.
    neg_nonunit = []
    for name, val in normalized.items():
        if val.is_zero():
            continue
        if not val.is_unit() and any(k[p.vars.index(name)] < 0 for k in p.terms):
            neg_nonunit.append(name)
    if len(neg_nonunit) > 1:
        raise InexactDivisionError(
            f"multiple non-unit bindings with negative exponents: {neg_nonunit}")
    denom_var = neg_nonunit[0] if neg_nonunit else None
    if denom_var is not None:
        denom = normalized[denom_var]
        denom_power = -min(k[p.vars.index(denom_var)] for k in p.terms) // 2

    for k, c in p.terms.items():
        factor = HalfLaurent1.const(c)
        for name, val in normalized.items():
            e = k[p.vars.index(name)] // 2
            if name == denom_var:
                e = e + denom_power  # cleared below by denom^denom_power
            if e == 0:
                continue
            if e > 0:
                factor = factor * val ** e
            else:
                if val.is_zero():
                    raise ZeroDivisionError(f"binding {name} -> 0 with negative exponent")
                if not val.is_unit():
                    raise InexactDivisionError(
                        f"negative exponent of {name} under non-unit binding")
                factor = factor * _bind_unit_inverse(val) ** (-e)
        kv = tuple(k[p.vars.index(v)] for v in keep)
        out[kv] = out.get(kv, factor) if kv not in out else out[kv] + factor

    # Assemble the result polynomial over keep + t.
    res_terms: dict[tuple, int] = {}
    for kv, poly in out.items():
        for d, c in poly.terms.items():
            res_terms[kv + (d,)] = res_terms.get(kv + (d,), 0) + c
    res = HalfLaurentN(tuple(keep) + ("t",), res_terms)

    # Reduce the tracked denominator while division stays exact.
    while denom_power > 0:
        try:
            res = divide_exact_n(res, "t", denom)
        except InexactDivisionError:
            break
        denom_power -= 1

    # Drop the t slot if unused and no denominator remains.
    def finalize(poly: HalfLaurentN):
        if not keep:
            return HalfLaurent1({k[0]: c for k, c in poly.terms.items()})
        if all(k[-1] == 0 for k in poly.terms):
            return HalfLaurentN(tuple(keep), {k[:-1]: c for k, c in poly.terms.items()})
        return poly

    return finalize(res), denom_power, denom


def specialize(p: HalfLaurentN, bindings: Mapping[str, "HalfLaurent1 | int"]):
    """Exact specialization; raises InexactDivisionError on leftover denominator."""
    res, denom_power, _denom = specialize_tracked(p, bindings)
    if denom_power:
        raise InexactDivisionError(
            f"specialization leaves denominator power {denom_power}")
    return res


# ----------------------------------------------------------------------
# text format: "t^2 - 3*t + 5 - 3*t^-1 + t^-2", "t^{1/2} - t^{-1/2}"
# ----------------------------------------------------------------------

def _format_power(var: str, dexp: int) -> str:
    if dexp == 0:
        return ""
    if dexp % 2 == 0:
        e = dexp // 2
        return var if e == 1 else f"{var}^{e}"
    return f"{var}^{{{dexp}/2}}"


def _format_term(coeff: int, powers: str) -> str:
    a = abs(coeff)
    if not powers:
        return str(a)
    if a == 1:
        return powers
    return f"{a}*{powers}"


def format_poly1(p: HalfLaurent1, var: str = "t") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for d in sorted(p.terms, reverse=True):
        c = p.terms[d]
        body = _format_term(c, _format_power(var, d))
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def format_polyn(p: HalfLaurentN) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in sorted(p.terms, reverse=True):
        c = p.terms[k]
        powers = "*".join(
            s for s in (_format_power(v, d) for v, d in zip(p.vars, k)) if s)
        body = _format_term(c, powers)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_POWER_RE = re.compile(r"^([A-Za-z_]\w*)(?:\^(?:(-?\d+)|\{(-?\d+)/2\}))?$")


class PolyParseError(ValueError):
    pass


def _split_terms(text: str):
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError("empty polynomial text")
    # A +/- separates terms unless it follows '^' or '{' (exponent sign).
    pieces = re.split(r"(?<![\^{])([+-])", s)
    if pieces[0]:
        yield 1, pieces[0]
    elif len(pieces) == 1:
        raise PolyParseError("empty polynomial text")
    for i in range(1, len(pieces), 2):
        sign = -1 if pieces[i] == "-" else 1
        term = pieces[i + 1] if i + 1 < len(pieces) else ""
        if not term:
            raise PolyParseError(f"misplaced sign in {text!r}")
        yield sign, term


def _parse_term(term: str) -> tuple[int, dict[str, int]]:
    pieces = term.split("*")
    coeff = 1
    start = 0
    if pieces[0].isdigit():
        coeff = int(pieces[0])
        start = 1
        if len(pieces) == 1:
            return coeff, {}
    powers: dict[str, int] = {}
    for piece in pieces[start:]:
        pm = _POWER_RE.match(piece)
        if not pm:
            raise PolyParseError(f"cannot parse factor {piece!r} in {term!r}")
        var = pm.group(1)
        if pm.group(2) is not None:
            d = 2 * int(pm.group(2))
        elif pm.group(3) is not None:
            d = int(pm.group(3))
        else:
            d = 2
        powers[var] = powers.get(var, 0) + d
    return coeff, powers


def parse_poly1(text: str, var: str = "t") -> HalfLaurent1:
    """Parse the 1-variable text format; inverse of ``format_poly1``."""
    if text.strip() == "0":
        return HalfLaurent1.zero()
    terms: dict[int, int] = {}
    for sign, term in _split_terms(text):
        coeff, powers = _parse_term(term)
        bad = set(powers) - {var}
        if bad:
            raise PolyParseError(f"unexpected variable(s) {sorted(bad)} in {text!r}")
        d = powers.get(var, 0)
        terms[d] = terms.get(d, 0) + sign * coeff
    return HalfLaurent1(terms)


def parse_polyn(text: str, vars: Sequence[str]) -> HalfLaurentN:
    """Parse the multivariate text format over a declared variable list."""
    vars = tuple(vars)
    if text.strip() == "0":
        return HalfLaurentN.zero(vars)
    terms: dict[tuple, int] = {}
    for sign, term in _split_terms(text):
        coeff, powers = _parse_term(term)
        bad = set(powers) - set(vars)
        if bad:
            raise PolyParseError(f"unexpected variable(s) {sorted(bad)} in {text!r}")
        k = tuple(powers.get(v, 0) for v in vars)
        terms[k] = terms.get(k, 0) + sign * coeff
    return HalfLaurentN(vars, terms)
