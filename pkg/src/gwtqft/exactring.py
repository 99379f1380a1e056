"""Exact arithmetic over Q[t0, t1, t2] and its fraction field.

TPoly is a sparse trivariate polynomial with Fraction coefficients.  TRat is
a gcd-reduced fraction num/den of two TPoly with a monic denominator, so that
structural equality coincides with mathematical equality.  All values are
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

Exponent = tuple[int, int, int]

VAR_NAMES = ("t0", "t1", "t2")
_ZERO_EXP: Exponent = (0, 0, 0)


class NonHomogeneousDenominator(ValueError):
    """Raised when a degree decomposition needs a homogeneous denominator."""


def _grlex(e: Exponent) -> tuple[int, Exponent]:
    # graded lexicographic order with t0 > t1 > t2
    return (e[0] + e[1] + e[2], e)


class TPoly:
    """Sparse polynomial in t0, t1, t2 over Q.

    ``terms`` maps exponent triples to nonzero coefficients; the zero
    polynomial is the empty map.  Instances are treated as immutable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exponent, Fraction | int] | None = None):
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[exp] = c
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction]) -> "TPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "TPoly":
        return cls._raw({})

    @classmethod
    def const(cls, c: Fraction | int) -> "TPoly":
        c = Fraction(c)
        return cls._raw({_ZERO_EXP: c} if c else {})

    @classmethod
    def one(cls) -> "TPoly":
        return cls.const(1)

    @classmethod
    def var(cls, i: int) -> "TPoly":
        e = [0, 0, 0]
        e[i] = 1
        return cls._raw({tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exp: Exponent, coeff: Fraction | int = 1) -> "TPoly":
        return cls({tuple(exp): coeff})

    # -- basic structure ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def const_value(self) -> Fraction:
        if not self.is_const:
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ZERO_EXP, Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[0] + e[1] + e[2] for e in self.terms)

    def deg_in(self, v: int) -> int:
        if not self.terms:
            return -1
        return max(e[v] for e in self.terms)

    def lead_exp(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex)

    def lead_coeff(self) -> Fraction:
        return self.terms[self.lead_exp()]

    def monic(self) -> "TPoly":
        if not self.terms:
            return self
        lc = self.lead_coeff()
        return self if lc == 1 else self.scale(Fraction(1, 1) / lc)

    def scale(self, c: Fraction | int) -> "TPoly":
        c = Fraction(c)
        if not c:
            return TPoly._raw({})
        return TPoly._raw({e: cf * c for e, cf in self.terms.items()})

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "TPoly | None":
        if isinstance(other, TPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for e, c in o.terms.items():
            v = acc.get(e)
            if v is None:
                acc[e] = c
            else:
                v = v + c
                if v:
                    acc[e] = v
                else:
                    del acc[e]
        return TPoly._raw(acc)

    __radd__ = __add__

    def __neg__(self):
        return TPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return TPoly._raw({})
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                v = acc.get(e)
                acc[e] = c1 * c2 if v is None else v + c1 * c2
        return TPoly._raw({e: c for e, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers need a nonnegative integer")
        result = TPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure operations ----------------------------------------------

    def homogeneous_parts(self) -> dict[int, "TPoly"]:
        """Split into total-degree homogeneous components (degree -> part)."""
        parts: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            parts.setdefault(e[0] + e[1] + e[2], {})[e] = c
        return {d: TPoly._raw(t) for d, t in parts.items()}

    def is_homogeneous(self) -> bool:
        degs = {e[0] + e[1] + e[2] for e in self.terms}
        return len(degs) <= 1

    def divexact(self, d: "TPoly") -> "TPoly | None":
        """Exact quotient self/d, or None when d does not divide self."""
        if not d.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if not self.terms:
            return TPoly._raw({})
        dle = d.lead_exp()
        dlc = d.terms[dle]
        rem = dict(self.terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            re = max(rem, key=_grlex)
            qe = (re[0] - dle[0], re[1] - dle[1], re[2] - dle[2])
            if qe[0] < 0 or qe[1] < 0 or qe[2] < 0:
                return None
            qc = rem[re] / dlc
            quot[qe] = qc
            for de, dc in d.terms.items():
                te = (qe[0] + de[0], qe[1] + de[1], qe[2] + de[2])
                v = rem.get(te, _F0) - qc * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return TPoly._raw(quot)

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        pt = tuple(Fraction(x) for x in point)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * pt[0] ** e[0] * pt[1] ** e[1] * pt[2] ** e[2]
        return total

    def permute_vars(self, perm: Sequence[int]) -> "TPoly":
        """Apply the substitution t_i -> t_perm[i]."""
        acc: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0, 0, 0]
            for i in range(3):
                ne[perm[i]] = e[i]
            acc[tuple(ne)] = c
        return TPoly._raw(acc)

    # -- printing ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out: list[str] = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{VAR_NAMES[i]}^{e[i]}" if e[i] > 1 else VAR_NAMES[i]
                for i in range(3)
                if e[i]
            )
            ac = abs(c)
            if mono and ac == 1:
                body = mono
            elif mono:
                body = f"{ac}*{mono}"
            else:
                body = str(ac)
            if not out:
                out.append(body if c > 0 else "-" + body)
            else:
                out.append((" + " if c > 0 else " - ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"TPoly({self})"


_F0 = Fraction(0)

T0 = TPoly.var(0)
T1 = TPoly.var(1)
T2 = TPoly.var(2)

#: the three pairwise differences; every denominator in the theory divides a
#: product of powers of these
LINEAR_FORMS = (T0 - T1, T0 - T2, T1 - T2)
_LINEAR_PAIRS = ((0, 1), (0, 2), (1, 2))


def _div_linear(p: TPoly, a: int, b: int) -> TPoly | None:
    """Exact quotient p / (t_a - t_b) by synthetic division in t_a.

    One pass over the terms, much faster than generic long division; returns
    None when the form does not divide p.
    """
    if not p.terms:
        return TPoly._raw({})
    slices: dict[int, dict[Exponent, Fraction]] = {}
    for e, c in p.terms.items():
        e0 = list(e)
        k = e0[a]
        e0[a] = 0
        slices.setdefault(k, {})[tuple(e0)] = c
    d = max(slices)
    if d == 0:
        return None
    quot: dict[Exponent, Fraction] = {}
    carry: dict[Exponent, Fraction] = {}
    for k in range(d, 0, -1):
        cur = dict(slices.get(k, {}))
        for e, c in carry.items():
            eb = list(e)
            eb[b] += 1
            eb = tuple(eb)
            v = cur.get(eb, _F0) + c
            if v:
                cur[eb] = v
            else:
                cur.pop(eb, None)
        for e, c in cur.items():
            eq = list(e)
            eq[a] = k - 1
            quot[tuple(eq)] = c
        carry = cur
    rem = dict(slices.get(0, {}))
    for e, c in carry.items():
        eb = list(e)
        eb[b] += 1
        eb = tuple(eb)
        v = rem.get(eb, _F0) + c
        if v:
            rem[eb] = v
        else:
            rem.pop(eb, None)
    if rem:
        return None
    return TPoly._raw(quot)


def gens() -> tuple[TPoly, TPoly, TPoly]:
    return (T0, T1, T2)


# -- multivariate gcd --------------------------------------------------------


def _lead_in(p: TPoly, v: int) -> TPoly:
    d = p.deg_in(v)
    return TPoly._raw(
        {tuple(0 if i == v else e[i] for i in range(3)): c
         for e, c in p.terms.items() if e[v] == d}
    )


def _univar_coeffs(p: TPoly, v: int) -> list[TPoly]:
    by_deg: dict[int, dict[Exponent, Fraction]] = {}
    for e, c in p.terms.items():
        key = tuple(0 if i == v else e[i] for i in range(3))
        by_deg.setdefault(e[v], {})[key] = c
    return [TPoly._raw(t) for t in by_deg.values()]

def _prem(a: TPoly, b: TPoly, v: int) -> TPoly:
    # pseudo-remainder of a by b with respect to variable v
    db = b.deg_in(v)
    lb = _lead_in(b, v)
    r = a
    while r and r.deg_in(v) >= db:
        dr = r.deg_in(v)
        lr = _lead_in(r, v)
        shift = TPoly.monomial(tuple(dr - db if i == v else 0 for i in range(3)))
        r = lb * r - lr * shift * b
    return r


def _content(p: TPoly, v: int) -> TPoly:
    g: TPoly | None = None
    for c in _univar_coeffs(p, v):
        g = c if g is None else _gcd_impl(g, c)
        if g.is_const:
            return TPoly.one()
    assert g is not None
    return g.monic()


def _gcd_impl(p: TPoly, q: TPoly) -> TPoly:
    # both nonzero; returns some associate of the gcd
    if p.is_const or q.is_const:
        return TPoly.one()
    v = next(i for i in range(3) if p.deg_in(i) > 0 or q.deg_in(i) > 0)
    if p.deg_in(v) == 0:
        return _gcd_impl(p, _content(q, v))
    if q.deg_in(v) == 0:
        return _gcd_impl(q, _content(p, v))
    cp, cq = _content(p, v), _content(q, v)
    cont = _gcd_impl(cp, cq)
    a = p.divexact(cp)
    b = q.divexact(cq)
    assert a is not None and b is not None
    if a.deg_in(v) < b.deg_in(v):
        a, b = b, a
    # primitive polynomial remainder sequence
    while b:
        r = _prem(a, b, v)
        if r:
            rc = _content(r, v)
            r2 = r.divexact(rc)
            assert r2 is not None
            r = r2
        a, b = b, r
    return cont * a


def poly_gcd(p: TPoly, q: TPoly) -> TPoly:
    """Greatest common divisor, normalized monic in graded lex order."""
    if not p and not q:
        raise ValueError("gcd(0, 0) is undefined")
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    return _gcd_impl(p, q).monic()


def is_linear_form_product(p: TPoly) -> bool:
    """True when p is a constant times a product of powers of (ti - tj)."""
    if not p:
        return False
    r = p
    for (a, b) in _LINEAR_PAIRS:
        while True:
            nxt = _div_linear(r, a, b)
            if nxt is None:
                break
            r = nxt
    return r.is_const


# -- rational functions ------------------------------------------------------


def _strip_shared_linear(num: TPoly, den: TPoly) -> tuple[TPoly, TPoly]:
    for (a, b) in _LINEAR_PAIRS:
        while True:
            d2 = _div_linear(den, a, b)
            if d2 is None:
                break
            n2 = _div_linear(num, a, b)
            if n2 is None:
                break
            num, den = n2, d2
    return num, den


class TRat:
    """Reduced fraction of two TPoly; the field Q(t0, t1, t2).

    Canonical form: gcd(num, den) = 1, den monic in graded lex, den = 1 when
    num = 0.  Use :meth:`make` to construct from arbitrary num/den.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: TPoly, den: TPoly):
        # trusted constructor; use make() for unreduced input
        self.num = num
        self.den = den

    @classmethod
    def make(cls, num, den=1) -> "TRat":
        num = _as_poly(num)
        den = _as_poly(den)
        if not den:
            raise ZeroDivisionError("denominator is zero")
        if not num:
            return RAT_ZERO
        if not den.is_const:
            num, den = _strip_shared_linear(num, den)
            # den's linear-form factors are now coprime to num; anything left
            # after stripping them needs a general gcd
            probe = den
            for (a, b) in _LINEAR_PAIRS:
                while True:
                    nxt = _div_linear(probe, a, b)
                    if nxt is None:
                        break
                    probe = nxt
            if not probe.is_const:
                g = poly_gcd(num, den)
                if not g.is_const:
                    n2 = num.divexact(g)
                    d2 = den.divexact(g)
                    assert n2 is not None and d2 is not None
                    num, den = n2, d2
        lc = den.lead_coeff()
        if lc != 1:
            inv = Fraction(1) / lc
            num = num.scale(inv)
            den = den.scale(inv)
        return cls(num, den)

    @classmethod
    def const(cls, c) -> "TRat":
        return cls(TPoly.const(c), TPoly.one())

    @classmethod
    def from_poly(cls, p: TPoly) -> "TRat":
        return cls(p, TPoly.one())

    # -- structure -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_poly(self) -> bool:
        return self.den.is_const

    def __eq__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return TRat.make(self.num + o.num, self.den)
        return TRat.make(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return TRat(-self.num, self.den)

    def __sub__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return RAT_ZERO
        # cross-cancel first to keep the polynomial products small
        n1, d2 = _strip_shared_linear(self.num, o.den)
        n2, d1 = _strip_shared_linear(o.num, self.den)
        return TRat.make(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return TRat.make(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = _as_rat(other)
        if o is None:
            return NotImplemented
        return o / self

    def reciprocal(self) -> "TRat":
        if not self.num:
            raise ZeroDivisionError("zero has no reciprocal")
        return TRat.make(self.den, self.num)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ValueError("rational function powers need an integer")
        if n == 0:
            return RAT_ONE
        if n < 0:
            return self.reciprocal() ** (-n)
        # canonical form is preserved by termwise powers
        return TRat(self.num ** n, self.den ** n)

    # -- evaluation and grading ----------------------------------------------

    def evaluate(self, point: Sequence[Fraction | int]) -> Fraction:
        """Exact value at a point with pairwise distinct coordinates."""
        pt = tuple(Fraction(x) for x in point)
        if len(pt) != 3 or len(set(pt)) != 3:
            raise ValueError("evaluation point must have three pairwise distinct coordinates")
        dv = self.den.evaluate(pt)
        if dv == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(pt) / dv

    def homogeneous_component(self, d: int) -> "TRat":
        """Component of homogeneity degree d (num degree minus den degree)."""
        if not self.den.is_homogeneous():
            raise NonHomogeneousDenominator(f"denominator {self.den} is not homogeneous")
        if not self.num:
            return RAT_ZERO
        part = self.num.homogeneous_parts().get(d + self.den.degree())
        if part is None:
            return RAT_ZERO
        return TRat.make(part, self.den)

    def homogeneous_parts(self) -> dict[int, "TRat"]:
        if not self.den.is_homogeneous():
            raise NonHomogeneousDenominator(f"denominator {self.den} is not homogeneous")
        shift = self.den.degree()
        return {
            d - shift: TRat.make(part, self.den)
            for d, part in self.num.homogeneous_parts().items()
        }

    def is_homogeneous(self) -> bool:
        return self.num.is_homogeneous() and self.den.is_homogeneous()

    def permute_vars(self, perm: Sequence[int]) -> "TRat":
        return TRat.make(self.num.permute_vars(perm), self.den.permute_vars(perm))

    # -- printing --------------------------------------------------------------

    def __str__(self) -> str:
        if self.den.is_const:
            return str(self.num)
        return f"{self.num} / {self.den}"

    def __repr__(self) -> str:
        return f"TRat({self})"


RAT_ZERO = TRat(TPoly.zero(), TPoly.one())
RAT_ONE = TRat(TPoly.one(), TPoly.one())


def _as_poly(x) -> TPoly:
    if isinstance(x, TPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return TPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial")


def _as_rat(x) -> TRat | None:
    if isinstance(x, TRat):
        return x
    if isinstance(x, TPoly):
        return TRat.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return TRat.const(x)
    return None


def as_rat(x) -> TRat:
    r = _as_rat(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as a rational function")
    return r


# -- canonical string parsing -------------------------------------------------


def _parse_term(tok: str, pos: int) -> tuple[Exponent, Fraction]:
    coeff = Fraction(1)
    exp = [0, 0, 0]
    saw_var = False
    for piece in tok.split("*"):
        if piece.startswith("t"):
            if "^" in piece:
                name, _, power = piece.partition("^")
                k = int(power)
            else:
                name, k = piece, 1
            if name not in VAR_NAMES:
                raise ValueError(f"bad variable {name!r} near position {pos}")
            exp[VAR_NAMES.index(name)] += k
            saw_var = True
        else:
            try:
                coeff *= Fraction(piece)
            except ValueError:
                raise ValueError(f"bad coefficient {piece!r} near position {pos}") from None
    if not saw_var and tok.startswith("t"):
        raise ValueError(f"bad term {tok!r} near position {pos}")
    return tuple(exp), coeff


def parse_poly(s: str) -> TPoly:
    """Parse the canonical polynomial string form (inverse of str)."""
    s = s.strip()
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return TPoly.zero()
    terms: dict[Exponent, Fraction] = {}
    i = 0
    sign = 1
    if s.startswith("-"):
        sign = -1
        i = 1
    while i < len(s):
        j = s.find(" ", i)
        if j == -1:
            j = len(s)
        exp, coeff = _parse_term(s[i:j], i)
        coeff *= sign
        prev = terms.get(exp, Fraction(0)) + coeff
        if prev:
            terms[exp] = prev
        else:
            terms.pop(exp, None)
        if j == len(s):
            break
        sep = s[j:j + 3]
        if sep == " + ":
            sign = 1
        elif sep == " - ":
            sign = -1
        else:
            raise ValueError(f"bad separator at position {j}")
        i = j + 3
    return TPoly(terms)


def parse_rat(s: str) -> TRat:
    """Parse the canonical fraction string form "num / den"."""
    parts = s.split(" / ")
    if len(parts) == 1:
        return TRat.from_poly(parse_poly(parts[0]))
    if len(parts) == 2:
        return TRat.make(parse_poly(parts[0]), parse_poly(parts[1]))
    raise ValueError("malformed fraction string")
