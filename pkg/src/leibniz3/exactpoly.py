"""Exact rationals and sparse multivariate polynomials over them.

Everything downstream (structure constants, automorphism matrices, traces,
invariants) lives in :class:`Poly`.  Variables are interned :class:`Var`
objects of two kinds: coordinates ``x_<r>_<i>`` (copy ``r``, basis index
``i``) and named parameters such as ``lambda`` or ``alpha5``.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Union

from .kernels import mono_mul, poly_add, poly_mul

Rational = Fraction
Scalar = Union[int, Fraction]

# Parameters sort before coordinates; listed names first, others by name.
PARAM_ORDER = (
    "lambda", "mu", "xi1", "xi2", "nu",
    "alpha1", "alpha2", "alpha3", "alpha4", "alpha5",
    "alpha6", "alpha7", "alpha8", "alpha9", "beta",
)
_PARAM_RANK = {name: k for k, name in enumerate(PARAM_ORDER)}
_COORD_RE = re.compile(r"^x_(\d+)_(\d+)$")
_PARAM_RE = re.compile(r"^[a-z][a-z0-9_]*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; raises ``ValueError`` on junk."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(text)


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class Var:
    """Interned polynomial variable; compare with ``is``."""

    __slots__ = ("name", "id", "key", "copy", "index")
    _registry: dict[str, "Var"] = {}
    _by_id: list["Var"] = []

    def __new__(cls, name: str) -> "Var":
        v = cls._registry.get(name)
        if v is not None:
            return v
        m = _COORD_RE.match(name)
        v = object.__new__(cls)
        v.name = name
        if m:
            r, i = int(m.group(1)), int(m.group(2))
            if r < 1 or i < 1:
                raise ValueError(f"coordinate indices must be >= 1: {name}")
            v.copy, v.index = r, i
            v.key = (1, r, i)
        else:
            if not _PARAM_RE.match(name) or name.startswith("x_"):
                raise ValueError(f"invalid parameter name: {name!r}")
            v.copy = v.index = None
            v.key = (0, _PARAM_RANK.get(name, len(PARAM_ORDER)), name)
        v.id = len(cls._by_id)
        cls._by_id.append(v)
        cls._registry[name] = v
        return v

    @classmethod
    def coord(cls, r: int, i: int) -> "Var":
        return cls(f"x_{r}_{i}")

    @classmethod
    def param(cls, name: str) -> "Var":
        v = cls(name)
        if v.is_coordinate:
            raise ValueError(f"{name} is a coordinate, not a parameter")
        return v

    @classmethod
    def from_id(cls, vid: int) -> "Var":
        return cls._by_id[vid]

    @property
    def is_coordinate(self) -> bool:
        return self.copy is not None

    def __repr__(self) -> str:
        return f"Var({self.name!r})"

    def __reduce__(self):
        return (Var, (self.name,))

    def __lt__(self, other: "Var") -> bool:
        return self.key < other.key


def _mono_key(m: tuple) -> tuple:
    """Sort key putting monomials in descending graded-lex order."""
    byid = Var._by_id
    pairs = sorted((byid[m[k]].key, -m[k + 1]) for k in range(0, len(m), 2))
    pairs.append(((2,),))
    return (-sum(m[1::2]), pairs)


def _mono_div(a: tuple, b: tuple):
    """``a / b`` for flat monomials, or ``None`` if ``b`` does not divide ``a``."""
    if not b:
        return a
    da = dict(zip(a[::2], a[1::2]))
    for k in range(0, len(b), 2):
        e = da.get(b[k], 0) - b[k + 1]
        if e < 0:
            return None
        if e:
            da[b[k]] = e
        else:
            del da[b[k]]
    out = []
    for vid in sorted(da):
        out.append(vid)
        out.append(da[vid])
    return tuple(out)


def _mono_from_dict(d: Mapping[Var, int]) -> tuple:
    out = []
    for v, e in sorted(((v.id, e) for v, e in d.items() if e)):
        if e < 0:
            raise ValueError("negative exponent")
        out.append(v)
        out.append(e)
    return tuple(out)


class Poly:
    """Immutable sparse polynomial with rational coefficients.

    Equality is structural: two polynomials are equal iff they have the same
    term map (zero coefficients are never stored).
    """

    __slots__ = ("_t", "_h")

    def __init__(self, terms: dict | None = None):
        self._t = terms if terms is not None else {}
        self._h = None

    # -- construction -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, v: Var | str) -> "Poly":
        if isinstance(v, str):
            v = Var(v)
        return cls({(v.id, 1): 1})

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff: Scalar = 1) -> "Poly":
        if not coeff:
            return ZERO
        return cls({_mono_from_dict(exps): _norm(Fraction(coeff))})

    # -- inspection ---------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self._t

    @property
    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and () in self._t)

    @property
    def constant_value(self) -> Fraction:
        """Value of a constant polynomial; ``ValueError`` otherwise."""
        if not self.is_constant:
            raise ValueError(f"not a constant: {self}")
        return Fraction(self._t.get((), 0))

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def variables(self) -> set[Var]:
        ids = set()
        for m in self._t:
            ids.update(m[::2])
        return {Var._by_id[i] for i in ids}

    def degree(self, v: Var | None = None) -> int:
        """Total degree, or degree in ``v``; the zero polynomial has degree -1."""
        if not self._t:
            return -1
        if v is None:
            return max(sum(m[1::2]) for m in self._t)
        best = 0
        for m in self._t:
            for k in range(0, len(m), 2):
                if m[k] == v.id and m[k + 1] > best:
                    best = m[k + 1]
        return best

    def terms(self) -> list[tuple[dict[Var, int], Fraction]]:
        """Terms as ``(exponents, coefficient)`` in descending graded-lex order."""
        byid = Var._by_id
        return [
            ({byid[m[k]]: m[k + 1] for k in range(0, len(m), 2)}, Fraction(c))
            for m, c in sorted(self._t.items(), key=lambda t: _mono_key(t[0]))
        ]

    def leading_term(self) -> tuple[tuple, Scalar]:
        m = min(self._t, key=_mono_key)
        return m, self._t[m]

    def split(self, keep: Callable[[Var], bool]) -> dict[tuple, "Poly"]:
        """Group terms by their monomial in the variables selected by ``keep``.

        Returns ``{selected_monomial: coefficient_poly}`` where the coefficient
        polynomial holds the remaining variables.
        """
        byid = Var._by_id
        sel_cache: dict[int, bool] = {}
        out: dict[tuple, dict] = {}
        for m, c in self._t.items():
            a, b = [], []
            for k in range(0, len(m), 2):
                vid = m[k]
                s = sel_cache.get(vid)
                if s is None:
                    s = sel_cache[vid] = bool(keep(byid[vid]))
                (a if s else b).extend((vid, m[k + 1]))
            out.setdefault(tuple(a), {})[tuple(b)] = c
        return {k: Poly(v) for k, v in out.items()}

    def coefficient(self, exps: Mapping[Var, int]) -> Fraction:
        return Fraction(self._t.get(_mono_from_dict(exps), 0))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Poly(poly_add(self._t, other._t, 1))

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Poly(poly_add(self._t, other._t, -1))

    def __rsub__(self, other) -> "Poly":
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Poly(poly_add(other._t, self._t, -1))

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._t.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly({m: _norm(c * other) for m, c in self._t.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self._t or not other._t:
            return ZERO
        return Poly(poly_mul(self._t, other._t))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = 1 / Fraction(other)
            return Poly({m: _norm(c * inv) for m, c in self._t.items()})
        return self.divexact(_coerce(other))

    def __pow__(self, e: int) -> "Poly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative int")
        result, base = ONE, self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divexact(self, other: "Poly") -> "Poly":
        """Exact quotient; ``ValueError`` if ``other`` does not divide ``self``."""
        if not other._t:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant:
            return self / other.constant_value
        lm, lc = other.leading_term()
        rem = dict(self._t)
        quot: dict = {}
        while rem:
            m = min(rem, key=_mono_key)
            q = _mono_div(m, lm)
            if q is None:
                raise ValueError("polynomial division is not exact")
            c = _norm(Fraction(rem[m]) / lc)
            quot[q] = c
            rem = poly_add(rem, poly_mul({q: c}, other._t), -1)
        return Poly(quot)

    def divides(self, other: "Poly") -> bool:
        try:
            other.divexact(self)
        except ValueError:
            return False
        return True

    # -- comparison ---------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._t == other._t
        if isinstance(other, (int, Fraction)):
            return self._t == ({(): other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash(frozenset(self._t.items()))
        return self._h

    # -- content / normalisation -------------------------------------
    def content(self) -> Fraction:
        """Positive rational content (gcd of numerators / lcm of denominators)."""
        from math import gcd, lcm

        if not self._t:
            return Fraction(0)
        num = den = 0
        for c in self._t.values():
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = c.denominator if den == 0 else lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-primitive associate with positive leading coefficient."""
        if not self._t:
            return self
        c = self.content()
        if self.leading_term()[1] < 0:
            c = -c
        return self / c

    # -- substitution / evaluation ------------------------------------
    def subs(self, sigma: Mapping[Var, object]) -> "Poly":
        return substitute(self, sigma)

    def evaluate(self, values: Mapping[Var, Scalar]) -> "Poly":
        return substitute(self, {v: Poly.const(c) for v, c in values.items()})

    # -- printing / serialisation --------------------------------------
    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def to_json(self) -> list[dict]:
        return [
            {"coeff": format_rational(c), "monomial": {v.name: e for v, e in sorted(exps.items())}}
            for exps, c in self.terms()
        ]

    @classmethod
    def from_json(cls, data) -> "Poly":
        """Read the term-list form; a plain string or number is parsed as text."""
        if isinstance(data, str):
            return parse_poly(data)
        if isinstance(data, (int, Fraction)):
            return Poly.const(data)
        acc = ZERO
        for term in data:
            exps = {Var(name): int(e) for name, e in term.get("monomial", {}).items()}
            acc = acc + Poly.monomial(exps, parse_rational(term["coeff"]))
        return acc


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    return NotImplemented


def as_poly(x) -> Poly:
    """Coerce a scalar, variable name, Var or Poly to :class:`Poly`."""
    if isinstance(x, Poly):
        return x
    if isinstance(x, Var):
        return Poly.var(x)
    if isinstance(x, str):
        return parse_poly(x)
    if isinstance(x, (int, Fraction)):
        return Poly.const(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Poly")


ZERO = Poly()
ONE = Poly({(): 1})


def substitute(p: Poly, sigma: Mapping[Var, object]) -> Poly:
    """Simultaneous substitution; variables absent from ``sigma`` are kept."""
    img = {v.id: as_poly(q)._t for v, q in sigma.items()}
    if not img:
        return p
    powers: dict[tuple[int, int], dict] = {}
    acc: dict = {}
    for m, c in p._t.items():
        prod = {(): c}
        fixed = []
        for k in range(0, len(m), 2):
            vid, e = m[k], m[k + 1]
            t = img.get(vid)
            if t is None:
                fixed.append(vid)
                fixed.append(e)
                continue
            pw = powers.get((vid, e))
            if pw is None:
                pw = t
                for _ in range(e - 1):
                    pw = poly_mul(pw, t)
                powers[(vid, e)] = pw
            prod = poly_mul(prod, pw)
            if not prod:
                break
        if fixed and prod:
            prod = poly_mul(prod, {tuple(fixed): 1})
        for m2, c2 in prod.items():
            acc[m2] = acc.get(m2, 0) + c2
    return Poly({m: _norm(c) for m, c in acc.items() if c})


# ---------------------------------------------------------------------------
# printing

SHORTHAND = {1: "x", 2: "y", 3: "z"}


def var_label(v: Var, shorthand: bool = False) -> str:
    if shorthand and v.is_coordinate and v.index in SHORTHAND:
        return f"{SHORTHAND[v.index]}_{v.copy}"
    return v.name


def format_poly(p: Poly, shorthand: bool = False, times: str = "*") -> str:
    """Human-readable form, terms in descending graded-lex order."""
    if p.is_zero:
        return "0"
    parts = []
    for exps, c in p.terms():
        factors = []
        for v, e in sorted(exps.items()):
            lab = var_label(v, shorthand)
            factors.append(lab if e == 1 else f"{lab}^{e}")
        mag = abs(c)
        if not factors:
            body = format_rational(mag)
        elif mag == 1:
            body = times.join(factors)
        else:
            body = times.join([format_rational(mag)] + factors)
        parts.append(("-" if c < 0 else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# parsing

_BINOPS = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def parse_poly(text: str, resolve: Callable[[str], Poly] | None = None) -> Poly:
    """Parse an arithmetic expression such as ``"alpha6**2/2 - lambda*x_1_3"``.

    ``^`` is accepted as a power operator.  Names are resolved through
    ``resolve`` (default: :class:`Var` names).  Division is only allowed by
    nonzero constants.
    """
    src = re.sub(r"\blambda\b", "lambda_", text).replace("^", "**")
    try:
        tree = ast.parse(src.strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}: {exc.msg}") from None

    def name(n: str) -> Poly:
        if n == "lambda_":
            n = "lambda"
        if resolve is not None:
            return resolve(n)
        return Poly.var(Var(n))

    def walk(node) -> Poly:
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Poly.const(node.value)
        if isinstance(node, ast.Name):
            return name(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and isinstance(node.op, _BINOPS):
            a = walk(node.left)
            if isinstance(node.op, ast.Pow):
                b = walk(node.right)
                e = b.constant_value
                if e.denominator != 1 or e < 0:
                    raise ValueError(f"bad exponent in {text!r}")
                return a ** int(e)
            b = walk(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if not b.is_constant or b.is_zero:
                raise ValueError(f"division by non-constant in {text!r}")
            return a / b.constant_value
        raise ValueError(f"unsupported syntax in polynomial {text!r}")

    return walk(tree)


# ---------------------------------------------------------------------------
# gcd


def _univariate(p: Poly, v: Var) -> dict[int, Poly]:
    out: dict[int, dict] = {}
    for m, c in p._t.items():
        e = 0
        rest = []
        for k in range(0, len(m), 2):
            if m[k] == v.id:
                e = m[k + 1]
            else:
                rest.extend((m[k], m[k + 1]))
        out.setdefault(e, {})[tuple(rest)] = c
    return {e: Poly(t) for e, t in out.items()}


def _content_in(p: Poly, v: Var) -> Poly:
    g = ZERO
    for c in _univariate(p, v).values():
        g = _gcd(g, c) if not g.is_zero else c.primitive()
        if g.is_constant:
            return ONE
    return g


def _gcd(a: Poly, b: Poly) -> Poly:
    if a.is_zero:
        return b.primitive()
    if b.is_zero:
        return a.primitive()
    if a.is_constant or b.is_constant:
        return ONE
    va, vb = a.variables(), b.variables()
    v = min(va | vb)
    if v not in va:
        return _gcd(a, _content_in(b, v))
    if v not in vb:
        return _gcd(_content_in(a, v), b)
    ca, cb = _content_in(a, v), _content_in(b, v)
    g_content = _gcd(ca, cb)
    pa, pb = a.divexact(ca), b.divexact(cb)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while not pb.is_zero:
        if pb.degree(v) == 0:
            pa = ONE
            break
        r = _prem(pa, pb, v)
        pa, pb = pb, (r.divexact(_content_in(r, v)) if not r.is_zero else ZERO)
    if pa is not ONE and pa.degree(v) > 0:
        pa = pa.divexact(_content_in(pa, v))
    return (g_content * pa).primitive()


def _prem(a: Poly, b: Poly, v: Var) -> Poly:
    db = b.degree(v)
    lcb = _univariate(b, v)[db]
    xv = Poly.var(v)
    r = a
    while not r.is_zero and r.degree(v) >= db:
        dr = r.degree(v)
        lcr = _univariate(r, v)[dr]
        r = lcb * r - lcr * xv ** (dr - db) * b
    return r


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalised integer-primitive with positive lead."""
    return _gcd(as_poly(a), as_poly(b))


def gcd_all(polys: Iterable[Poly]) -> Poly:
    g = ZERO
    for p in polys:
        if p.is_zero:
            continue
        g = p.primitive() if g.is_zero else _gcd(g, p)
        if g == ONE:
            break
    return g


# ---------------------------------------------------------------------------
# rewriting


class RewriteSystem:
    """Terminating substitution and monomial-reduction rules.

    ``substitutions`` eliminate variables outright (``(var, replacement)``).
    ``power_rules`` are ``(var, threshold, replacement)`` meaning
    ``var**threshold -> replacement``; ``monomial_rules`` generalise this to
    ``({var: exp, ...}, replacement)``.  Every replacement of a monomial rule
    must be strictly smaller than its left-hand side in graded-lex order,
    which makes reduction terminate.
    """

    def __init__(self, substitutions=(), power_rules=(), monomial_rules=(), name: str = ""):
        self.name = name
        self.substitutions = tuple((v, as_poly(q)) for v, q in substitutions)
        eliminated = {v for v, _ in self.substitutions}
        for v, q in self.substitutions:
            if q.variables() & eliminated:
                raise ValueError(f"substitution for {v.name} reintroduces an eliminated variable")
        rules = [({v: k}, q) for v, k, q in power_rules] + list(monomial_rules)
        self.rules: list[tuple[tuple, dict]] = []
        for exps, q in rules:
            q = as_poly(q)
            lead = _mono_from_dict(exps)
            if q.variables() & eliminated:
                raise ValueError("rule replacement reintroduces an eliminated variable")
            lk = _mono_key(lead)
            if any(_mono_key(m) <= lk for m in q._t):
                raise ValueError("rule replacement must be smaller than its lead monomial")
            self.rules.append((lead, q._t))

    def __repr__(self) -> str:
        return f"RewriteSystem({self.name or len(self.rules)})"

    def normal_form(self, p: Poly) -> Poly:
        p = as_poly(p)
        for v, q in self.substitutions:
            p = substitute(p, {v: q})
        if not self.rules:
            return p
        out: dict = {}
        stack = list(p._t.items())
        rules = self.rules
        while stack:
            m, c = stack.pop()
            for lead, rep in rules:
                q = _mono_div(m, lead)
                if q is not None:
                    for rm, rc in rep.items():
                        stack.append((mono_mul(q, rm), c * rc))
                    break
            else:
                out[m] = out.get(m, 0) + c
        return Poly({m: _norm(c) for m, c in out.items() if c})


def normal_form(p: Poly, rw: RewriteSystem | None) -> Poly:
    return p if rw is None else rw.normal_form(p)


LAMBDA = Var.param("lambda")
MU = Var.param("mu")
XI1 = Var.param("xi1")
XI2 = Var.param("xi2")

#: ``xi2 -> -1 - xi1`` then ``xi1^2 -> lambda - xi1``: the two roots of
#: ``t^2 + t - lambda``.
XI_RELATIONS = RewriteSystem(
    substitutions=[(XI2, -1 - Poly.var(XI1))],
    power_rules=[(XI1, 2, Poly.var(LAMBDA) - Poly.var(XI1))],
    name="xi",
)

#: ``lambda*mu -> 1``, i.e. ``mu`` stands for ``1/lambda``.
LAURENT_LAMBDA = RewriteSystem(monomial_rules=[({LAMBDA: 1, MU: 1}, ONE)], name="laurent-lambda")
