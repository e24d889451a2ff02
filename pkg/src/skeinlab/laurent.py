"""Exact Laurent polynomials in one variable (half-integer exponents) and in
the two HOMFLY variables (l, m).

Exponents of :class:`LaurentPoly` are stored in half-units: the key ``e``
stands for ``var**(e/2)``.  Coefficients are Python integers, so there is
no overflow.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Mapping


class PolyError(ValueError):
    """Raised on variable mismatches, inexact division or bad parses."""


class Gaussian:
    """A Gaussian integer ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        self.re = re
        self.im = im

    def __add__(self, other: "Gaussian") -> "Gaussian":
        return Gaussian(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Gaussian") -> "Gaussian":
        return Gaussian(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "Gaussian") -> "Gaussian":
        return Gaussian(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def __neg__(self) -> "Gaussian":
        return Gaussian(-self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.re == other and self.im == 0
        return isinstance(other, Gaussian) and self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"Gaussian({self.re}, {self.im})"

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def conj(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def divexact(self, other: "Gaussian") -> "Gaussian":
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("Gaussian division by zero")
        p = self * other.conj()
        if p.re % n or p.im % n:
            raise PolyError(f"{self!r} is not divisible by {other!r}")
        return Gaussian(p.re // n, p.im // n)


I = Gaussian(0, 1)


def _clean(terms: Mapping) -> dict:
    return {k: v for k, v in terms.items() if v}


class LaurentPoly:
    """Immutable one-variable Laurent polynomial with integer coefficients.

    >>> A = LaurentPoly.monomial(1)
    >>> str((A**2 + A**-2) * (A**2 + A**-2))
    'A^4 + 2 + A^-4'
    """

    __slots__ = ("_terms", "var", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, var: str = "A"):
        self._terms = _clean(terms or {})
        self.var = var
        self._hash = None

    # construction helpers
    @classmethod
    def monomial(cls, power: int | float = 1, coeff: int = 1, var: str = "A") -> "LaurentPoly":
        """``coeff * var**power``; ``power`` may be a half-integer."""
        twice = power * 2
        if twice != int(twice):
            raise PolyError(f"exponent {power} is not a multiple of 1/2")
        return cls({int(twice): coeff}, var)

    @classmethod
    def constant(cls, c: int, var: str = "A") -> "LaurentPoly":
        return cls({0: c}, var)

    @classmethod
    def one(cls, var: str = "A") -> "LaurentPoly":
        return cls({0: 1}, var)

    @classmethod
    def zero(cls, var: str = "A") -> "LaurentPoly":
        return cls({}, var)

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[int, int]]:
        """(half-unit exponent, coefficient) pairs in descending exponent order."""
        return sorted(self._terms.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_span(self) -> tuple[int, int]:
        """(min, max) stored exponents; raises on zero."""
        if not self._terms:
            raise PolyError("zero polynomial has no degree")
        return min(self._terms), max(self._terms)

    # arithmetic
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.var != self.var and other._terms and self._terms:
                if not (other.is_constant() or self.is_constant()):
                    raise PolyError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        if isinstance(other, int):
            return LaurentPoly({0: other}, self.var)
        return NotImplemented

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._terms)

    def _result_var(self, other: "LaurentPoly") -> str:
        if self.is_constant() and not other.is_constant():
            return other.var
        return self.var

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out, self._result_var(other))

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()}, self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                k = e1 + e2
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly(out, self._result_var(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1:
                raise PolyError("only monomials have negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise PolyError("monomial coefficient is not a unit")
            return LaurentPoly({e * n: c ** (-n)}, self.var)
        return poly_pow(self, n)

    def shift(self, half_units: int) -> "LaurentPoly":
        """Multiply by ``var**(half_units/2)``."""
        return LaurentPoly({e + half_units: c for e, c in self._terms.items()}, self.var)

    def divexact(self, divisor: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises :class:`PolyError` when a remainder is left."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly({}, self.var)
        dmax = max(divisor._terms)
        dlead = divisor._terms[dmax]
        dmin = min(divisor._terms)
        rem = dict(self._terms)
        floor = min(rem) - dmin
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            q_e = top - dmax
            if q_e < floor:
                break
            c = rem[top]
            if c % dlead:
                break
            q_c = c // dlead
            quot[q_e] = q_c
            for e, dc in divisor._terms.items():
                k = e + q_e
                v = rem.get(k, 0) - q_c * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        if rem:
            raise PolyError(f"{self} is not divisible by {divisor}")
        return LaurentPoly(quot, self.var)

    def substitute_inverse(self) -> "LaurentPoly":
        """The image under ``var -> var**-1`` (mirror image for brackets)."""
        return LaurentPoly({-e: c for e, c in self._terms.items()}, self.var)

    def coefficient_sum(self) -> int:
        return sum(self._terms.values())

    def with_var(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self._terms, var)

    # comparison
    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other}, self.var)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self._terms != other._terms:
            return False
        return self.var == other.var or self.is_constant()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # text and json
    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r}, var={self.var!r})"

    def to_json(self) -> list[dict]:
        return [{"exponent": e, "coefficient": c} for e, c in self.items()]

    @classmethod
    def from_json(cls, records: Iterable[Mapping], var: str = "A") -> "LaurentPoly":
        out: dict[int, int] = {}
        for r in records:
            e = int(r["exponent"])
            out[e] = out.get(e, 0) + int(r["coefficient"])
        return cls(out, var)


def poly_arith(a, b, kind: str):
    """Ring operation dispatcher: ``kind`` is ``add``, ``sub`` or ``mul``."""
    if type(a) is not type(b):
        raise PolyError("operands are of different polynomial types")
    if isinstance(a, LaurentPoly) and a.var != b.var and not (a.is_constant() or b.is_constant()):
        raise PolyError(f"variable mismatch: {a.var} vs {b.var}")
    if isinstance(a, LaurentPoly2) and a.vars != b.vars:
        raise PolyError(f"variable mismatch: {a.vars} vs {b.vars}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise PolyError(f"unknown operation {kind!r}")


def poly_pow(p, n: int):
    """Square-and-multiply power for either polynomial type; ``p**0`` is 1."""
    if n < 0:
        raise PolyError("negative power")
    if isinstance(p, LaurentPoly):
        result = LaurentPoly.one(p.var)
    else:
        result = LaurentPoly2.one(p.vars)
    base = p
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def _fmt_exp(half: int) -> str:
    if half % 2 == 0:
        return str(half // 2)
    return f"{half}/2"


def render(p: LaurentPoly) -> str:
    """Canonical text: descending exponents, e.g. ``-A^10 + A^6 - A^-6``."""
    if p.is_zero():
        return "0"
    pieces = []
    for e, c in p.items():
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            power = p.var if e == 2 else f"{p.var}^{_fmt_exp(e)}"
            body = power if mag == 1 else f"{mag}{power}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"""\s*([+-]?)\s*(\d*)\s*\*?\s*
        (?:([A-Za-z])\s*(?:\^\s*(?:\{\s*([+-]?\d+(?:/2)?)\s*\}|([+-]?\d+(?:/2)?)))?)?\s*""",
    re.VERBOSE,
)


def _parse_exp(s: str) -> int:
    if s.endswith("/2"):
        return int(s[:-2])
    return 2 * int(s)


def parse(text: str, var: str | None = None) -> LaurentPoly:
    """Parse the canonical rendering (``^{..}`` braces and unicode minus accepted)."""
    text = text.replace("−", "-").strip()
    if text == "0":
        return LaurentPoly({}, var or "A")
    pos = 0
    out: dict[int, int] = {}
    seen_var = var
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, digits, v, exp_b, exp_p = m.groups()
        if not first and not sign:
            raise PolyError(f"missing operator near {text[pos:]!r}")
        if not digits and not v:
            raise PolyError(f"empty term near {text[pos:]!r}")
        first = False
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        if v:
            if seen_var is None:
                seen_var = v
            elif v != seen_var:
                raise PolyError(f"mixed variables {seen_var} and {v}")
            exp_s = exp_b or exp_p
            e = _parse_exp(exp_s) if exp_s else 2
        else:
            e = 0
        out[e] = out.get(e, 0) + coeff
        pos = m.end()
    return LaurentPoly(out, seen_var or "A")


class LaurentPoly2:
    """Immutable Laurent polynomial in two variables, default ``(l, m)``.

    Keys are integer exponent pairs ``(e_l, e_m)``; coefficients are integers.
    """

    __slots__ = ("_terms", "vars", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None,
                 vars: tuple[str, str] = ("l", "m")):
        self._terms = _clean(terms or {})
        self.vars = tuple(vars)
        self._hash = None

    @classmethod
    def one(cls, vars=("l", "m")) -> "LaurentPoly2":
        return cls({(0, 0): 1}, vars)

    @classmethod
    def zero(cls, vars=("l", "m")) -> "LaurentPoly2":
        return cls({}, vars)

    @classmethod
    def monomial(cls, el: int, em: int, coeff: int = 1, vars=("l", "m")) -> "LaurentPoly2":
        return cls({(el, em): coeff}, vars)

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other):
        if isinstance(other, LaurentPoly2):
            if other.vars != self.vars:
                raise PolyError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return LaurentPoly2({(0, 0): other}, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out, self.vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self._terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly2(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return poly_pow(self, n)

    def shift(self, dl: int, dm: int) -> "LaurentPoly2":
        return LaurentPoly2({(a + dl, b + dm): c for (a, b), c in self._terms.items()}, self.vars)

    def substitute_l_inverse(self) -> "LaurentPoly2":
        return LaurentPoly2({(-a, b): c for (a, b), c in self._terms.items()}, self.vars)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly2({(0, 0): other}, self.vars)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms and (self.vars == other.vars or not self._terms)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def items(self) -> list[tuple[tuple[int, int], int]]:
        """Terms ordered by descending m exponent, then ascending l exponent.

        That is the order used in the printed HOMFLY tables (``M^{-2}L^{-2} + ...``
        reads from the lowest m power); see :func:`render2`.
        """
        return sorted(self._terms.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def __str__(self) -> str:
        return render2(self)

    def __repr__(self) -> str:
        return f"LaurentPoly2({str(self)!r})"

    def to_json(self) -> list[dict]:
        return [{"exponents": [a, b], "coefficient": c} for (a, b), c in self.items()]

    @classmethod
    def from_json(cls, records: Iterable[Mapping], vars=("l", "m")) -> "LaurentPoly2":
        out: dict[tuple[int, int], int] = {}
        for r in records:
            a, b = r["exponents"]
            out[(int(a), int(b))] = out.get((int(a), int(b)), 0) + int(r["coefficient"])
        return cls(out, vars)


def render2(p: LaurentPoly2) -> str:
    """Text such as ``m^-2l^-2 + 2m^-2 + ...``: ascending m, then ascending l."""
    if p.is_zero():
        return "0"
    lv, mv = p.vars
    out = ""
    for i, ((a, b), c) in enumerate(p.items()):
        mono = ""
        if b:
            mono += mv if b == 1 else f"{mv}^{b}"
        if a:
            mono += lv if a == 1 else f"{lv}^{a}"
        mag = abs(c)
        body = str(mag) if not mono else (mono if mag == 1 else f"{mag}{mono}")
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += (" - " if c < 0 else " + ") + body
    return out


_TERM2 = re.compile(r"\s*([+-]?)\s*(\d*)((?:\s*\*?\s*[A-Za-z]\s*(?:\^\s*(?:\{\s*[+-]?\d+\s*\}|[+-]?\d+))?)*)\s*")
_FACTOR = re.compile(r"\s*\*?\s*([A-Za-z])\s*(?:\^\s*(?:\{\s*([+-]?\d+)\s*\}|([+-]?\d+)))?")


def parse2(text: str, vars=("l", "m")) -> LaurentPoly2:
    """Parse two-variable text; ``M, L`` and ``m, l`` are treated alike."""
    text = text.replace("−", "-").strip()
    if text == "0":
        return LaurentPoly2({}, vars)
    names = {vars[0].lower(): 0, vars[1].lower(): 1}
    out: dict[tuple[int, int], int] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM2.match(text, pos)
        if not m or m.end() == pos:
            raise PolyError(f"cannot parse near {text[pos:]!r}")
        sign, digits, factors = m.groups()
        if not first and not sign:
            raise PolyError(f"missing operator near {text[pos:]!r}")
        if not digits and not factors.strip():
            raise PolyError(f"empty term near {text[pos:]!r}")
        first = False
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        exps = [0, 0]
        for f in _FACTOR.finditer(factors):
            v, eb, ep = f.groups()
            if v.lower() not in names:
                raise PolyError(f"unknown variable {v}")
            exps[names[v.lower()]] += int(eb or ep or 1)
        k = (exps[0], exps[1])
        out[k] = out.get(k, 0) + coeff
        pos = m.end()
    return LaurentPoly2(out, vars)


# Gaussian-coefficient one-variable polynomials, used only inside substitution.

def _g_mul(p: dict, q: dict) -> dict:
    out: dict[int, Gaussian] = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            k = e1 + e2
            out[k] = out.get(k, Gaussian()) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _g_pow(p: dict, n: int) -> dict:
    result = {0: Gaussian(1, 0)}
    base = p
    while n:
        if n & 1:
            result = _g_mul(result, base)
        n >>= 1
        if n:
            base = _g_mul(base, base)
    return result


def _g_divexact(num: dict, den: dict) -> dict:
    if not den:
        raise ZeroDivisionError("division by zero polynomial")
    if not num:
        return {}
    dmax = max(den)
    dlead = den[dmax]
    dmin = min(den)
    rem = dict(num)
    floor = min(rem) - dmin
    quot: dict[int, Gaussian] = {}
    while rem:
        top = max(rem)
        q_e = top - dmax
        if q_e < floor:
            break
        q_c = rem[top].divexact(dlead)
        quot[q_e] = q_c
        for e, dc in den.items():
            k = e + q_e
            v = rem.get(k, Gaussian()) - q_c * dc
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    if rem:
        raise PolyError("substitution produced a non-Laurent quotient")
    return quot


def gaussian_image(terms: Mapping[int, tuple[int, int] | int]) -> dict:
    """Build a Gaussian-coefficient polynomial from ``{half_exp: (re, im)}``."""
    out = {}
    for e, c in terms.items():
        g = Gaussian(c, 0) if isinstance(c, int) else Gaussian(*c)
        if g:
            out[e] = g
    return out


def poly_substitute(p: LaurentPoly2, l_image: Mapping, m_image: Mapping, var: str = "q") -> LaurentPoly:
    """Substitute Gaussian-coefficient images for ``l`` and ``m``.

    ``l_image`` must be a monomial with unit coefficient (so it is invertible);
    negative powers of ``m`` are handled by clearing denominators and dividing
    exactly at the end.  The result must be real, otherwise
    :class:`PolyError` is raised.
    """
    limg = gaussian_image(l_image)
    mimg = gaussian_image(m_image)
    if len(limg) != 1:
        raise PolyError("l image must be a monomial")
    (le, lc), = limg.items()
    if lc.norm() != 1:
        raise PolyError("l image coefficient must be a unit")
    if p.is_zero():
        return LaurentPoly({}, var)
    m_min = min(b for (_, b) in p.terms)
    shift = -m_min if m_min < 0 else 0
    total: dict[int, Gaussian] = {}
    m_pows: dict[int, dict] = {}
    for (a, b), c in p.terms.items():
        # l^a is a monomial; compute its coefficient as a unit power
        unit = Gaussian(1, 0)
        base = lc if a >= 0 else lc.conj()
        for _ in range(abs(a)):
            unit = unit * base
        k = b + shift
        if k not in m_pows:
            m_pows[k] = _g_pow(mimg, k)
        for e, g in m_pows[k].items():
            key = e + le * a
            total[key] = total.get(key, Gaussian()) + g * unit * Gaussian(c, 0)
    total = {k: v for k, v in total.items() if v}
    if shift:
        total = _g_divexact(total, _g_pow(mimg, shift))
    out = {}
    for e, g in total.items():
        if g.im:
            raise PolyError("nonzero imaginary residue after substitution")
        out[e] = g.re
    return LaurentPoly(out, var)
