"""Sparse multivariate polynomials with packed monomials.

A monomial is stored as one Python ``int`` whose integer order *is* the
monomial order of its ring.  Each variable occupies a 16-bit field (15 data
bits plus a guard bit).  Degree-compatible orders store ``M - e_i``
(``M = 2**15 - 1``) so that a smaller exponent in the last variable gives a
larger key; lex stores the exponents directly.  Keys are affine in the
exponent vector: ``key(m1*m2) = key(m1) + key(m2) - C``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import kernel
from .errors import NotDivisible, PolySyntaxError
from .fields import FieldSpec

__all__ = ["MonomialOrder", "Ring", "Poly", "poly_parse", "partial_derivative", "DEGREVLEX", "LEX"]

_W = 16
_M = (1 << (_W - 1)) - 1
_GUARD = 1 << (_W - 1)


@dataclass(frozen=True)
class MonomialOrder:
    """``degrevlex``, ``lex`` or ``block``.

    ``block`` compares the first ``front`` variables by degrevlex and breaks
    ties by degrevlex on the rest, so it eliminates the front block.
    """

    kind: str = "degrevlex"
    front: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "lex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.front < 1:
            raise ValueError("block order needs a non-empty front block")


DEGREVLEX = MonomialOrder("degrevlex")
LEX = MonomialOrder("lex")


class Ring:
    """Polynomial ring ``field[names]`` with a fixed monomial order."""

    def __init__(self, field: FieldSpec, names, order: MonomialOrder = DEGREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        if order.kind == "block" and order.front >= len(names):
            raise ValueError("block order must leave variables outside the front block")
        self.field = field
        self.names = names
        self.order = order
        self.n = n = len(names)
        self.index = {v: i for i, v in enumerate(names)}

        # field layout, most significant first: ("sum", vars) | ("neg", i) | ("pos", i)
        if order.kind == "lex":
            layout = [("pos", i) for i in range(n)]
        elif order.kind == "degrevlex":
            layout = [("sum", tuple(range(n)))] + [("neg", i) for i in reversed(range(n))]
        else:
            f = order.front
            layout = (
                [("sum", tuple(range(f)))]
                + [("neg", i) for i in reversed(range(f))]
                + [("sum", tuple(range(f, n)))]
                + [("neg", i) for i in reversed(range(f, n))]
            )
        nf = len(layout)
        self._layout = layout
        self._shift = [_W * (nf - 1 - j) for j in range(nf)]
        self.neg = order.kind != "lex"
        self.C = sum(_M << s for (kind, _), s in zip(layout, self._shift) if kind == "neg")
        self.H_all = sum(_GUARD << s for s in self._shift)
        self.H_var = sum(_GUARD << s for (kind, _), s in zip(layout, self._shift) if kind != "sum")
        self._var_shift = [0] * n
        for (kind, payload), s in zip(layout, self._shift):
            if kind != "sum":
                self._var_shift[payload] = s
        self._sum_shifts = [s for (kind, _), s in zip(layout, self._shift) if kind == "sum"]
        self._unpack_cache: dict[int, tuple[int, ...]] = {}
        self._ctx = None
        self.one_key = self.pack((0,) * n)

    # -- identity -------------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"Ring({self.field!r}, {list(self.names)}, {self.order.kind}{'/' + str(self.order.front) if self.order.kind == 'block' else ''})"

    @property
    def ctx(self):
        if self._ctx is None:
            self._ctx = kernel.field_context(self.field)
        return self._ctx

    # -- monomial packing -----------------------------------------------------

    def pack(self, exps) -> int:
        key = 0
        for (kind, payload), s in zip(self._layout, self._shift):
            if kind == "sum":
                v = sum(exps[i] for i in payload)
            elif kind == "neg":
                v = _M - exps[payload]
            else:
                v = exps[payload]
            key |= v << s
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        cached = self._unpack_cache.get(key)
        if cached is not None:
            return cached
        mask = _M
        if self.neg:
            exps = tuple(_M - ((key >> s) & mask) for s in self._var_shift)
        else:
            exps = tuple((key >> s) & mask for s in self._var_shift)
        if len(self._unpack_cache) > 500_000:
            self._unpack_cache.clear()
        self._unpack_cache[key] = exps
        return exps

    def key_degree(self, key: int) -> int:
        return sum((key >> s) & _M for s in self._sum_shifts) if self.neg else sum(self.unpack(key))

    def divides(self, a: int, b: int) -> bool:
        """Whether monomial ``a`` divides monomial ``b``."""
        if self.neg:
            return ((a | self.H_all) - b) & self.H_var == self.H_var
        return ((b | self.H_all) - a) & self.H_var == self.H_var

    def mono_mul(self, a: int, b: int) -> int:
        return a + b - self.C

    def mono_div(self, a: int, b: int) -> int:
        return a - b + self.C

    def lcm(self, a: int, b: int) -> int:
        return self.pack(tuple(map(max, self.unpack(a), self.unpack(b))))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.unpack(a), self.unpack(b)))

    # -- constructors ---------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.one_key: 1})

    def const(self, code) -> "Poly":
        return Poly(self, {self.one_key: code} if code != 0 else {})

    def gen(self, name_or_index) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index[name_or_index]
        exps = [0] * self.n
        exps[i] = 1
        return Poly(self, {self.pack(exps): 1})

    def gens(self) -> list["Poly"]:
        return [self.gen(i) for i in range(self.n)]

    def from_terms(self, terms) -> "Poly":
        """From an iterable of ``(exponent tuple, code)`` pairs, summing repeats."""
        field = self.field
        out: dict[int, object] = {}
        for exps, c in terms:
            k = self.pack(exps)
            out[k] = field.add(out.get(k, 0), c)
        return Poly(self, {k: v for k, v in out.items() if v != 0})

    def monomial(self, exps, code=1) -> "Poly":
        return Poly(self, {self.pack(exps): code} if code != 0 else {})

    def linear_form(self, coeffs, indices=None) -> "Poly":
        indices = range(self.n) if indices is None else indices
        terms = []
        for c, i in zip(coeffs, indices):
            e = [0] * self.n
            e[i] = 1
            terms.append((tuple(e), c))
        return self.from_terms(terms)

    def monomials_of_degree(self, d: int, indices=None) -> list[tuple[int, ...]]:
        indices = list(range(self.n)) if indices is None else list(indices)
        out = []
        for combo in combinations_with_replacement(indices, d):
            e = [0] * self.n
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        return out

    def parse(self, text: str, generator: str = "t") -> "Poly":
        return poly_parse(text, self, generator=generator)

    # -- derived rings ----------------------------------------------------------

    def with_order(self, order: MonomialOrder) -> "Ring":
        return Ring(self.field, self.names, order)

    def with_field(self, field: FieldSpec) -> "Ring":
        return Ring(field, self.names, self.order)

    def with_names(self, names, order: MonomialOrder | None = None) -> "Ring":
        return Ring(self.field, names, order or self.order)


class Poly:
    """Immutable polynomial: a ring and a ``{packed monomial: code}`` dict."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basics -------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(self.ring.field.from_int(other))
        if not isinstance(other, Poly) or other.ring != self.ring:
            return NotImplemented if not isinstance(other, Poly) else False
        if len(self.terms) != len(other.terms):
            return False
        f = self.ring.field
        return all(k in other.terms and f.sub(v, other.terms[k]) == 0 for k, v in self.terms.items())

    def __hash__(self):
        if self._hash is None:
            f = self.ring.field
            self._hash = hash(frozenset((k, f.normalize(v)) for k, v in self.terms.items()))
        return self._hash

    def lm(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def leading_exponents(self) -> tuple[int, ...]:
        return self.ring.unpack(self.lm())

    def items(self):
        """``(exponent tuple, code)`` pairs in decreasing monomial order."""
        unpack = self.ring.unpack
        return [(unpack(k), self.terms[k]) for k in sorted(self.terms, reverse=True)]

    def degree(self) -> int:
        if not self.terms:
            return -1
        kd = self.ring.key_degree
        return max(kd(k) for k in self.terms)

    def block_degrees(self, blocks) -> set[tuple[int, ...]]:
        unpack = self.ring.unpack
        return {tuple(sum(e[i] for i in b) for b in blocks) for e in map(unpack, self.terms)}

    def is_homogeneous(self, blocks=None) -> bool:
        if blocks is None:
            blocks = [range(self.ring.n)]
        return len(self.block_degrees(blocks)) <= 1

    def variables(self) -> set[int]:
        used = set()
        for e in map(self.ring.unpack, self.terms):
            used.update(i for i, x in enumerate(e) if x)
        return used

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(self.ring.field.from_int(other))
        if isinstance(other, Fraction):
            return self.ring.const(self.ring.field.from_fraction(other.numerator, other.denominator))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernel.sub_mul_shift(dict(self.terms), other.terms, 0, self.ring.field.neg(1), self.ring.ctx))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernel.sub_mul_shift(dict(self.terms), other.terms, 0, 1, self.ring.ctx))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {k: f.neg(v) for k, v in self.terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Poly(self.ring, kernel.mul(self.terms, other.terms, self.ring.C, self.ring.ctx))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, code) -> "Poly":
        if code == 0:
            return self.ring.zero()
        f = self.ring.field
        return Poly(self.ring, {k: f.mul(v, code) for k, v in self.terms.items()})

    def shift(self, key: int, code=1) -> "Poly":
        """Multiply by the monomial with packed key ``key`` and scalar ``code``."""
        delta = key - self.ring.C
        f = self.ring.field
        if code == 1:
            return Poly(self.ring, {k + delta: v for k, v in self.terms.items()})
        return Poly(self.ring, {k + delta: f.mul(v, code) for k, v in self.terms.items()})

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def divmod_single(self, g: "Poly") -> tuple["Poly", "Poly"]:
        """Division by one polynomial: ``self = q*g + r`` with no term of ``r``
        divisible by ``lm(g)``."""
        if not g.terms:
            raise ZeroDivisionError("division by zero polynomial")
        ring, field = self.ring, self.ring.field
        glm = g.lm()
        inv = field.inv(g.terms[glm])
        monic = {k: field.mul(v, inv) for k, v in g.terms.items()}
        f = dict(self.terms)
        q: dict[int, object] = {}
        r: dict[int, object] = {}
        ctx = ring.ctx
        while f:
            lm = max(f)
            if ring.divides(glm, lm):
                c = f[lm]
                q[ring.mono_div(lm, glm)] = field.mul(c, inv)
                kernel.sub_mul_shift(f, monic, lm - glm, c, ctx)
            else:
                r[lm] = f.pop(lm)
        return Poly(ring, q), Poly(ring, r)

    def exact_div(self, g: "Poly") -> "Poly":
        q, r = self.divmod_single(g)
        if r.terms:
            raise NotDivisible("nonzero remainder in exact division")
        return q

    def derivative(self, i: int) -> "Poly":
        ring, field = self.ring, self.ring.field
        terms = []
        for e, c in ((ring.unpack(k), v) for k, v in self.terms.items()):
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                terms.append((tuple(e2), field.mul(c, field.from_int(e[i]))))
        return ring.from_terms(terms)

    def evaluate(self, point) -> object:
        """Value at a point given as a sequence of codes."""
        field = self.ring.field
        acc = 0
        for e, c in ((self.ring.unpack(k), v) for k, v in self.terms.items()):
            t = c
            for x, ei in zip(point, e):
                if ei:
                    t = field.mul(t, field.pow(x, ei))
            acc = field.add(acc, t)
        return acc

    def substitute(self, images, target: Ring | None = None) -> "Poly":
        """Compose with ``x_i -> images[i]`` (Polys of ``target``)."""
        target = target or self.ring
        powers: dict[tuple[int, int], Poly] = {}
        acc = target.zero()
        for e, c in ((self.ring.unpack(k), v) for k, v in self.terms.items()):
            t = target.const(c)
            for i, ei in enumerate(e):
                if ei:
                    key = (i, ei)
                    if key not in powers:
                        powers[key] = images[i] ** ei
                    t = t * powers[key]
            acc = acc + t
        return acc

    def to_ring(self, target: Ring, mapping=None, coeff_map=None) -> "Poly":
        """Re-express in ``target``; variables are matched by name unless
        ``mapping`` (source index -> target index) is given."""
        src = self.ring
        if mapping is None:
            mapping = [target.index.get(name, -1) for name in src.names]
        out = {}
        tn = target.n
        for k, v in self.terms.items():
            e = src.unpack(k)
            e2 = [0] * tn
            for i, x in enumerate(e):
                if x:
                    if mapping[i] < 0:
                        raise ValueError(f"variable {src.names[i]} does not exist in the target ring")
                    e2[mapping[i]] += x
            out[target.pack(e2)] = coeff_map(v) if coeff_map else v
        return Poly(target, out)

    def map_coefficients(self, coeff_map, target: Ring) -> "Poly":
        return Poly(target, {k: coeff_map(v) for k, v in self.terms.items()})

    # -- printing -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        ring, field = self.ring, self.ring.field
        out = []
        for e, c in self.items():
            mono = "*".join(
                ring.names[i] if x == 1 else f"{ring.names[i]}^{x}" for i, x in enumerate(e) if x
            )
            neg = False
            if field.kind == "Q":
                c = field.normalize(c)
                if c < 0:
                    neg, c = True, -c
                cs = str(c)
            else:
                cs = field.format(c)
                if field.kind == "Z" and ("+" in cs):
                    cs = f"({cs})"
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            else:
                term = f"{cs}*{mono}"
            if not out:
                out.append(("-" if neg else "") + term)
            else:
                out.append((" - " if neg else " + ") + term)
        return "".join(out)

    def __repr__(self):
        return f"Poly({self})"


def partial_derivative(f: Poly, i: int) -> Poly:
    return f.derivative(i)


# -- parser -----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise PolySyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring, generator: str | None):
        self.text = text
        self.ring = ring
        self.generator = generator
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, tok[2], self.text)

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.error("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                acc = acc * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.error("division is not allowed in polynomial input")
            else:
                return acc

    def unary(self) -> Poly:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            inner = self.unary()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            exp_tok = self.take()
            if exp_tok[0] != "int":
                self.error("exponent must be a non-negative integer literal", exp_tok)
            return base ** exp_tok[1]
        return base

    def atom(self) -> Poly:
        tok = self.take()
        kind, val, _ = tok
        ring = self.ring
        if kind == "int":
            return ring.const(ring.field.from_int(val))
        if kind == "name":
            if val in ring.index:
                return ring.gen(val)
            if val == self.generator and ring.field.kind == "Z":
                return ring.const(ring.field.t())
            self.error(f"unknown variable {val!r}", tok)
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[0] != "op" or close[1] != ")":
                self.error("expected ')'", close)
            return inner
        if kind == "op" and val == "/":
            self.error("division is not allowed in polynomial input", tok)
        self.error("expected a number, a variable or '('", tok)


def poly_parse(text: str, ring_or_field, variables=None, generator: str | None = "t") -> Poly:
    """Parse ``text`` into a polynomial.

    ``ring_or_field`` is a :class:`Ring`, or a field together with a
    ``variables`` sequence (default ``x0, x1, x2``).  Over GF(p^e) the name
    ``generator`` (default ``t``) denotes the class of ``t`` unless it is a
    ring variable.
    """
    if isinstance(ring_or_field, Ring):
        ring = ring_or_field
    else:
        ring = Ring(ring_or_field, variables or ("x0", "x1", "x2"))
    return _Parser(text, ring, generator).parse()
