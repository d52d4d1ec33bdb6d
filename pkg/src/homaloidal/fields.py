"""Exact coefficient fields: the rationals, GF(p) and GF(p^e).

Every field hands out *codes*, the raw values stored inside polynomials:

* over Q a code is an ``int`` or a :class:`fractions.Fraction`;
* over GF(p) a code is an ``int`` in ``[0, p)``;
* over GF(p^e), e > 1, a code is a Zech logarithm: ``0`` is zero and
  ``k >= 1`` stands for ``g**(k - 1)`` where ``g`` is a fixed primitive
  element.  Residue vectors in the basis ``1, t, ..., t^(e-1)`` of
  ``GF(p)[t]/(modulus)`` are available through :meth:`FieldSpec.to_residues`.

:class:`FieldElement` wraps a code together with its field for user-facing
arithmetic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import InvalidField

__all__ = [
    "FieldSpec",
    "FieldElement",
    "field_make",
    "QQ",
    "is_prime",
    "is_irreducible",
]

_ZECH_TABLE_LIMIT = 2_000_000


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- dense univariate polynomials over GF(p), coefficient lists low -> high --

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _upoly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lc = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        c = a[-1] * inv_lc % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _trim(a)
    return a


def _upoly_mulmod(a: list[int], b: list[int], m: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _upoly_mod(prod, m, p)


def _upoly_powmod(a: list[int], k: int, m: list[int], p: int) -> list[int]:
    result = [1]
    base = _upoly_mod(a, m, p)
    while k:
        if k & 1:
            result = _upoly_mulmod(result, base, m, p)
        base = _upoly_mulmod(base, base, m, p)
        k >>= 1
    return result


def _upoly_sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _upoly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _upoly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a


def is_irreducible(m: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial ``m`` (low -> high) over GF(p).

    ``m`` is irreducible iff ``t^(p^e) = t`` mod ``m`` and
    ``gcd(t^(p^(e/l)) - t, m) = 1`` for each prime ``l | e``.
    """
    e = len(m) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    if e <= 3:
        # no root in GF(p) suffices for degree 2 and 3
        for x in range(p):
            if sum(c * pow(x, i, p) for i, c in enumerate(m)) % p == 0:
                return False
        return True
    t = [0, 1]
    for l in _prime_factors(e):
        h = _upoly_powmod(t, p ** (e // l), m, p)
        if len(_upoly_gcd(m, _upoly_sub(h, t, p), p)) != 1:
            return False
    return _upoly_sub(_upoly_powmod(t, p**e, m, p), t, p) == []


def _find_modulus(p: int, e: int, seed: int) -> tuple[int, ...]:
    rng = random.Random(f"modulus:{p}:{e}:{seed}")
    while True:
        m = [rng.randrange(p) for _ in range(e)] + [1]
        if m[0] == 0:
            continue
        if is_irreducible(m, p):
            return tuple(m)


class FieldSpec:
    """A coefficient field: Q (characteristic 0), GF(p) or GF(p^e).

    Instances are immutable value objects; equality is by
    ``(characteristic, extension_degree, modulus)``.  Lookup tables for
    GF(p^e) are built on first use and cached.
    """

    __slots__ = (
        "characteristic",
        "extension_degree",
        "modulus",
        "order",
        "kind",
        "_exp",
        "_log",
        "_zech",
        "_q1",
        "_half",
        "_generator_residues",
    )

    def __init__(self, characteristic: int, extension_degree: int = 1, modulus=None):
        if characteristic != 0 and not is_prime(characteristic):
            raise InvalidField(f"characteristic {characteristic} is neither 0 nor a prime")
        if extension_degree < 1:
            raise InvalidField("extension degree must be >= 1")
        if characteristic == 0 and extension_degree != 1:
            raise InvalidField("extensions of Q are not supported")
        self.characteristic = characteristic
        self.extension_degree = extension_degree
        if extension_degree > 1:
            if modulus is None:
                raise InvalidField("GF(p^e) needs a modulus")
            modulus = tuple(int(c) % characteristic for c in modulus)
            if len(modulus) != extension_degree + 1 or modulus[-1] != 1:
                raise InvalidField("modulus must be monic of degree e")
            if not is_irreducible(list(modulus), characteristic):
                raise InvalidField(f"modulus {modulus} is reducible over GF({characteristic})")
            self.modulus = modulus
        else:
            self.modulus = None
        self.order = None if characteristic == 0 else characteristic**extension_degree
        if characteristic == 0:
            self.kind = "Q"
        elif extension_degree == 1:
            self.kind = "P"
        else:
            self.kind = "Z"
        self._exp = self._log = self._zech = None
        self._q1 = (self.order - 1) if self.order else None
        if self.kind == "Z":
            self._half = 0 if characteristic == 2 else (self.order - 1) // 2

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.characteristic == other.characteristic
            and self.extension_degree == other.extension_degree
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.characteristic, self.extension_degree, self.modulus))

    def __repr__(self):
        if self.kind == "Q":
            return "QQ"
        if self.kind == "P":
            return f"GF({self.characteristic})"
        return f"GF({self.characteristic}^{self.extension_degree}, modulus={list(self.modulus)})"

    def label(self) -> str:
        """Compact string used in reports and the ``--field`` flag."""
        if self.kind == "Q":
            return "0"
        if self.kind == "P":
            return str(self.characteristic)
        return f"{self.characteristic}:{self.extension_degree}"

    def is_finite(self) -> bool:
        return self.characteristic > 0

    # -- Zech tables ------------------------------------------------------

    def _tables(self):
        if self._exp is None:
            self._build_tables()
        return self._exp, self._log, self._zech

    def _build_tables(self):
        p, e, q = self.characteristic, self.extension_degree, self.order
        if q > _ZECH_TABLE_LIMIT:
            raise InvalidField(f"GF({p}^{e}) is too large for table arithmetic")
        m = list(self.modulus)
        g = self._find_primitive()
        self._generator_residues = tuple(g + [0] * (e - len(g)))
        # matrix of multiplication by g on residue vectors (row-vector convention)
        mat = np.zeros((e, e), dtype=np.int64)
        for i in range(e):
            basis = [0] * i + [1]
            img = _upoly_mulmod(basis, g, m, p)
            for j, c in enumerate(img):
                mat[i, j] = c
        block = 1024
        powers = np.zeros((q - 1, e), dtype=np.int64)
        cur = np.zeros((1, e), dtype=np.int64)
        cur[0, 0] = 1
        # first block sequentially, then jump by g^block
        n0 = min(block, q - 1)
        for k in range(n0):
            powers[k] = cur[0]
            cur = (cur @ mat) % p
        if q - 1 > n0:
            jump = np.eye(e, dtype=np.int64)
            for _ in range(n0):
                jump = (jump @ mat) % p
            start = n0
            prev = powers[:n0]
            while start < q - 1:
                nxt = (prev @ jump) % p
                take = min(n0, q - 1 - start)
                powers[start : start + take] = nxt[:take]
                prev = nxt
                start += take
        weights = p ** np.arange(e, dtype=np.int64)
        codes = powers @ weights
        log = np.full(q, -1, dtype=np.int64)
        log[codes] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise AssertionError("generator is not primitive")
        onep = powers.copy()
        onep[:, 0] = (onep[:, 0] + 1) % p
        zcodes = onep @ weights
        zech = log[zcodes] + 1  # 0 marks 1 + g^n = 0
        self._exp = codes.tolist()
        self._log = log.tolist()
        self._zech = zech.tolist()

    def _find_primitive(self) -> list[int]:
        p, e, q = self.characteristic, self.extension_degree, self.order
        m = list(self.modulus)
        factors = _prime_factors(q - 1)
        rng = random.Random(f"primitive:{p}:{e}:{self.modulus}")
        candidates = [[0, 1]]
        while True:
            g = candidates.pop() if candidates else _trim([rng.randrange(p) for _ in range(e)])
            if not g:
                continue
            if all(_upoly_powmod(g, (q - 1) // l, m, p) != [1] for l in factors):
                return _upoly_mod(g, m, p)

    # -- conversions --------------------------------------------------------

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def from_int(self, n: int):
        if self.kind == "Q":
            return n
        p = self.characteristic
        if self.kind == "P":
            return n % p
        return self.from_residues([n % p])

    def from_fraction(self, num: int, den: int):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        return self.div(self.from_int(num), self.from_int(den))

    def from_residues(self, residues) -> int:
        """Code of ``sum(residues[i] * t**i)``; for GF(p) takes ``residues[0]``."""
        p = self.characteristic
        if self.kind == "P":
            return int(residues[0]) % p if len(residues) else 0
        if self.kind == "Q":
            raise InvalidField("Q has no residue representation")
        vec = _upoly_mod([int(c) for c in residues], list(self.modulus), p)
        code = 0
        for i, c in enumerate(vec):
            code += c * p**i
        if code == 0:
            return 0
        _, log, _ = self._tables()
        return log[code] + 1

    def to_residues(self, code) -> tuple[int, ...]:
        p, e = self.characteristic, self.extension_degree
        if self.kind == "P":
            return (code,)
        if self.kind == "Q":
            raise InvalidField("Q has no residue representation")
        if code == 0:
            return (0,) * e
        exp, _, _ = self._tables()
        v = exp[code - 1]
        out = []
        for _ in range(e):
            v, r = divmod(v, p)
            out.append(r)
        return tuple(out)

    def generator(self):
        """Code of a generator of the multiplicative group (finite fields)."""
        if self.kind == "Q":
            raise InvalidField("Q has no multiplicative generator")
        if self.kind == "Z":
            return 2
        p = self.characteristic
        if p == 2:
            return 1
        factors = _prime_factors(p - 1)
        for g in range(2, p):
            if all(pow(g, (p - 1) // l, p) != 1 for l in factors):
                return g
        raise AssertionError("unreachable")

    def t(self):
        """Code of the residue class of ``t`` in ``GF(p)[t]/(modulus)``."""
        if self.kind != "Z":
            raise InvalidField("t only exists in proper extensions")
        return self.from_residues([0, 1])

    # -- arithmetic on codes --------------------------------------------------

    def is_zero(self, a) -> bool:
        return a == 0

    def add(self, a, b):
        k = self.kind
        if k == "P":
            return (a + b) % self.characteristic
        if k == "Q":
            return a + b
        if not a:
            return b
        if not b:
            return a
        q1 = self._q1
        z = self._tables()[2][(b - a) % q1]
        if not z:
            return 0
        return (a + z - 2) % q1 + 1

    def neg(self, a):
        k = self.kind
        if k == "P":
            return (-a) % self.characteristic
        if k == "Q":
            return -a
        if not a:
            return 0
        return (a - 1 + self._half) % self._q1 + 1

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        k = self.kind
        if k == "P":
            return a * b % self.characteristic
        if k == "Q":
            return a * b
        if not a or not b:
            return 0
        return (a + b - 2) % self._q1 + 1

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        k = self.kind
        if k == "P":
            return pow(a, self.characteristic - 2, self.characteristic)
        if k == "Q":
            return Fraction(1) / a
        return (-(a - 1)) % self._q1 + 1

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        k = self.kind
        if k == "P":
            return pow(a, n, self.characteristic)
        if k == "Q":
            return a**n
        if n == 0:
            return 1
        if not a:
            return 0
        return ((a - 1) * n) % self._q1 + 1

    def normalize(self, a):
        """Canonical form of a code (integral fractions become ints over Q)."""
        if self.kind == "Q" and isinstance(a, Fraction) and a.denominator == 1:
            return a.numerator
        return a

    # -- enumeration and randomness -----------------------------------------

    def elements(self):
        if self.kind == "Q":
            raise InvalidField("Q is infinite")
        return range(self.order)

    def random(self, rng: random.Random, bound: int = 2**15):
        """Uniform element; over Q an integer in ``[-bound, bound]``."""
        if self.kind == "Q":
            return rng.randint(-bound, bound)
        return rng.randrange(self.order)

    def random_nonzero(self, rng: random.Random, bound: int = 2**15):
        while True:
            c = self.random(rng, bound)
            if c != 0:
                return c

    def format(self, code) -> str:
        if self.kind == "Q":
            code = self.normalize(code)
            return str(code)
        if self.kind == "P":
            return str(code)
        res = self.to_residues(code)
        parts = []
        for i in reversed(range(len(res))):
            c = res[i]
            if not c:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts) if parts else "0"

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (tuple, list)):
            return FieldElement(self, self.from_residues(value))
        if isinstance(value, Fraction):
            return FieldElement(self, self.from_fraction(value.numerator, value.denominator))
        return FieldElement(self, self.from_int(int(value)))

    # -- extensions -----------------------------------------------------------

    def working_extension(self, min_size: int = 2**16, seed: int = 0):
        """Smallest extension of size >= ``min_size`` plus the embedding of codes.

        Q and large prime fields are returned unchanged.
        """
        if self.kind == "Q" or self.order >= min_size:
            return self, _identity
        p, e = self.characteristic, self.extension_degree
        big_e = e
        while p**big_e < min_size:
            big_e += e
        big = field_make(p, big_e, seed)
        return big, embedding(self, big)


def _identity(code):
    return code


@lru_cache(maxsize=None)
def field_make(characteristic: int, extension_degree: int = 1, seed: int = 0) -> FieldSpec:
    """Build Q, GF(p) or GF(p^e); the GF(p^e) modulus comes from a seeded search."""
    if characteristic != 0 and not is_prime(characteristic):
        raise InvalidField(f"characteristic {characteristic} is neither 0 nor a prime")
    if extension_degree < 1:
        raise InvalidField("extension degree must be >= 1")
    if extension_degree == 1 or characteristic == 0:
        return FieldSpec(characteristic, extension_degree)
    return FieldSpec(characteristic, extension_degree, _find_modulus(characteristic, extension_degree, seed))


QQ = FieldSpec(0)


@lru_cache(maxsize=None)
def _embedding_table(small: FieldSpec, big: FieldSpec) -> tuple:
    p = small.characteristic
    if small.kind == "P":
        return tuple(big.from_int(c) for c in range(p))
    if big.extension_degree % small.extension_degree:
        raise InvalidField(f"{small} does not embed in {big}")
    # a root of the small modulus inside the subfield of order q_small
    step = (big.order - 1) // (small.order - 1)
    m = small.modulus
    root = None
    for k in range(small.order - 1):
        r = (k * step) % (big.order - 1) + 1
        acc = 0
        for c in reversed(m):
            acc = big.add(big.mul(acc, r), big.from_int(c))
        if acc == 0:
            root = r
            break
    if root is None:
        raise AssertionError("no root of the modulus in the extension")
    table = []
    for code in range(small.order):
        res = small.to_residues(code)
        acc = 0
        for c in reversed(res):
            acc = big.add(big.mul(acc, root), big.from_int(c))
        table.append(acc)
    return tuple(table)


def embedding(small: FieldSpec, big: FieldSpec):
    """Code map from ``small`` into an extension ``big`` of the same characteristic."""
    if small == big:
        return _identity
    if small.characteristic != big.characteristic:
        raise InvalidField("fields of different characteristic")
    if small.kind == "Q":
        return _identity
    table = _embedding_table(small, big)
    return table.__getitem__


class FieldElement:
    """An element of a :class:`FieldSpec`, with the usual operators."""

    __slots__ = ("field", "code")

    def __init__(self, field: FieldSpec, code):
        self.field = field
        self.code = field.normalize(code)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidField("elements of different fields")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.add(self.code, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(self.code, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.sub(o, self.code))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.mul(self.code, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, self.field.div(self.code, o))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.code, n))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, int):
            other = FieldElement(self.field, self.field.from_int(other))
        return isinstance(other, FieldElement) and self.field == other.field and self.code == other.code

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    @property
    def residues(self) -> tuple[int, ...]:
        return self.field.to_residues(self.code)

    def __repr__(self):
        return self.field.format(self.code)
