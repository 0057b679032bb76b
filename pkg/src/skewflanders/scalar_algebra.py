"""Arithmetic in a division ring given by structure constants over a base field.

A division ring ``D`` of dimension ``d`` over a central subfield ``F`` is
stored as a ``d x d x d`` table ``c[i][j][k]`` with ``e_i * e_j = sum_k
c[i][j][k] e_k``.  Elements are length-``d`` coordinate tuples over ``F``.

Built-in instances:

* :func:`gf_spec` -- the field ``GF(p^k)`` as a ``k``-dimensional algebra over
  its prime field;
* :func:`quaternion_spec` -- Hamilton's quaternions over the rationals;
* :func:`opposite` -- the opposite ring (reversed product).

Raw coordinate tuples are what matrices store; :class:`Scalar` is the thin
user-facing wrapper with operator overloading.
"""

from __future__ import annotations

import itertools
import random
from functools import lru_cache
from typing import Iterator, Sequence

import gmpy2

from . import field_linalg
from .errors import (
    CompositeCharacteristic,
    InfiniteRing,
    InvalidRingSpec,
    ReducibleModulus,
    RingMismatch,
    SingularElement,
    ZeroInverse,
)

mpq = gmpy2.mpq

#: Number of random elements used to check invertibility over infinite fields.
DEFAULT_SAMPLES = 1000
#: Height bound (numerator and denominator) of sampled rationals.
DEFAULT_HEIGHT = 10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(n**0.5) + 1))


# ---------------------------------------------------------------------------
# Base fields
# ---------------------------------------------------------------------------


class PrimeField:
    """``Z/pZ`` with elements stored as ints in ``range(p)``."""

    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.size = p
        self.zero = 0
        self.one = 1

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def canon(self, x) -> int:
        return int(x) % self.p

    def from_int(self, n: int) -> int:
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroInverse("inverse of 0 in a prime field")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def random(self, rng: random.Random, height: int = DEFAULT_HEIGHT) -> int:
        return rng.randrange(self.p)

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str) -> int:
        return int(s) % self.p

    def to_json(self) -> dict:
        return {"type": "prime", "p": self.p}


class ExtensionField:
    """``GF(p^k) = F_p[x]/(m(x))``; elements are coefficient tuples, low degree first."""

    kind = "extension"

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise CompositeCharacteristic(f"{p} is not prime")
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree k")
        if not _is_irreducible(modulus, p):
            raise ReducibleModulus(f"{modulus} is reducible over F_{p}")
        self.p = p
        self.k = k
        self.modulus = modulus
        self.characteristic = p
        self.size = p**k
        self.zero = (0,) * k
        self.one = (1,) + (0,) * (k - 1)

    def __repr__(self):
        return f"ExtensionField({self.p}, {self.k}, {list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("extension", self.p, self.modulus))

    def canon(self, x):
        return tuple(int(c) % self.p for c in x)

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.k - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        return _polymulmod(a, b, self.modulus, self.p)

    def inv(self, a):
        if not any(a):
            raise ZeroInverse("inverse of 0 in an extension field")
        return _polypow(a, self.size - 2, self.modulus, self.p)

    def is_zero(self, a) -> bool:
        return not any(a)

    def elements(self):
        return (tuple(reversed(t)) for t in itertools.product(range(self.p), repeat=self.k))

    def random(self, rng: random.Random, height: int = DEFAULT_HEIGHT):
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def to_str(self, a) -> str:
        return ",".join(str(c) for c in a)

    def from_str(self, s: str):
        parts = [int(c) for c in s.split(",")]
        if len(parts) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {s!r}")
        return self.canon(parts)

    def to_json(self) -> dict:
        return {"type": "extension", "p": self.p, "k": self.k, "modulus": list(self.modulus)}


class Rationals:
    """The field of rationals with exact ``gmpy2.mpq`` elements."""

    kind = "rationals"
    characteristic = 0
    size = None
    zero = mpq(0)
    one = mpq(1)

    def __repr__(self):
        return "Rationals()"

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("rationals")

    def canon(self, x):
        return mpq(x)

    def from_int(self, n: int):
        return mpq(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroInverse("inverse of 0 in Q")
        return 1 / a

    def is_zero(self, a) -> bool:
        return a == 0

    def elements(self):
        raise InfiniteRing("the rationals cannot be enumerated")

    def random(self, rng: random.Random, height: int = DEFAULT_HEIGHT):
        return mpq(rng.randint(-height, height), rng.randint(1, height))

    def to_str(self, a) -> str:
        return str(a)

    def from_str(self, s: str):
        return mpq(s)

    def to_json(self) -> dict:
        return {"type": "rationals"}


def _polymulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    for deg in range(len(prod) - 1, k - 1, -1):
        c = prod[deg] % p
        if c:
            for t in range(k + 1):
                prod[deg - k + t] -= c * modulus[t]
    return tuple(c % p for c in prod[:k])


def _polypow(a, e, modulus, p):
    k = len(modulus) - 1
    result = (1,) + (0,) * (k - 1)
    while e:
        if e & 1:
            result = _polymulmod(result, a, modulus, p)
        a = _polymulmod(a, a, modulus, p)
        e >>= 1
    return result


def _poly_divides(f, g, p) -> bool:
    """True when monic ``f`` divides ``g`` over F_p (coefficients low first)."""
    g = list(g)
    df = len(f) - 1
    for deg in range(len(g) - 1, df - 1, -1):
        c = g[deg] % p
        if c:
            for t in range(df + 1):
                g[deg - df + t] -= c * f[t]
    return all(c % p == 0 for c in g[:df])


def _is_irreducible(modulus, p) -> bool:
    k = len(modulus) - 1
    for deg in range(1, k):
        for low in itertools.product(range(p), repeat=deg):
            if _poly_divides(tuple(low) + (1,), modulus, p):
                return False
    return True


def conway_like_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree ``k``."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        cand = tuple(reversed(low)) + (1,)
        if cand[0] and _is_irreducible(cand, p):
            return cand
    raise ReducibleModulus(f"no irreducible polynomial of degree {k} over F_{p}")


def field_from_json(obj: dict):
    t = obj.get("type")
    if t == "prime":
        return PrimeField(int(obj["p"]))
    if t == "extension":
        return ExtensionField(int(obj["p"]), int(obj["k"]), obj["modulus"])
    if t == "rationals":
        return Rationals()
    raise ValueError(f"unknown field type {t!r}")


# ---------------------------------------------------------------------------
# Division rings
# ---------------------------------------------------------------------------


class DivisionRingSpec:
    """A division ring presented by structure constants over a central field.

    Construction validates the unit law and associativity on all basis
    triples, then checks that every nonzero element has a nonsingular
    left-multiplication operator: exhaustively when the ring is finite
    (``verification == "proven"``), on ``samples`` seeded random elements
    otherwise (``verification == "sampled"``).
    """

    def __init__(
        self,
        base,
        dim: int,
        table,
        unit_index: int = 0,
        *,
        name: str | None = None,
        json_form: dict | None = None,
        samples: int = DEFAULT_SAMPLES,
        seed: int = 0,
    ):
        if dim < 1:
            raise InvalidRingSpec("dimension must be positive")
        self.base = base
        self.dim = dim
        self.unit_index = unit_index
        self.table = tuple(
            tuple(tuple(base.canon(table[i][j][k]) for k in range(dim)) for j in range(dim))
            for i in range(dim)
        )
        self.name = name
        self._json_form = json_form
        self.size = None if base.size is None else base.size**dim
        self.zero = (base.zero,) * dim
        self.one = tuple(base.one if k == unit_index else base.zero for k in range(dim))
        self._terms = [
            (i, j, k, self.table[i][j][k])
            for i in range(dim)
            for j in range(dim)
            for k in range(dim)
            if not base.is_zero(self.table[i][j][k])
        ]
        self._key = (base, dim, self.table, unit_index)
        self._hash = hash(self._key)
        self._mul_cache: dict | None = {} if self.size is not None and self.size <= 256 else None
        self._inv_cache: dict = {}
        self._check_unit()
        self._check_associative()
        self.verification = self._check_invertibility(samples, seed)

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, DivisionRingSpec) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DivisionRingSpec({self.name or 'custom'}, d={self.dim}, F={self.base!r})"

    @property
    def is_finite(self) -> bool:
        return self.size is not None

    @property
    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(d) for j in range(d))

    # -- raw coordinate arithmetic -------------------------------------
    def basis_element(self, i: int):
        F = self.base
        return tuple(F.one if k == i else F.zero for k in range(self.dim))

    def from_base(self, f):
        """Embed ``f`` in F as ``f * 1``."""
        F = self.base
        f = F.canon(f)
        return tuple(f if k == self.unit_index else F.zero for k in range(self.dim))

    def canon(self, coords):
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return tuple(self.base.canon(c) for c in coords)

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def scale(self, f, a):
        """``f * a`` for ``f`` in the central field F."""
        mul = self.base.mul
        return tuple(mul(f, x) for x in a)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def mul(self, a, b):
        cache = self._mul_cache
        if cache is not None:
            r = cache.get((a, b))
            if r is not None:
                return r
        F = self.base
        if self.dim == 1:
            r = (F.mul(F.mul(a[0], b[0]), self.table[0][0][0]),)
        else:
            acc = list(self.zero)
            fmul, fadd, fzero = F.mul, F.add, F.is_zero
            for i, j, k, c in self._terms:
                x, y = a[i], b[j]
                if fzero(x) or fzero(y):
                    continue
                acc[k] = fadd(acc[k], fmul(fmul(x, y), c))
            r = tuple(acc)
        if cache is not None:
            cache[(a, b)] = r
        return r

    def left_mul_matrix(self, a) -> list[list]:
        """Matrix over F of ``x -> a*x`` in the coordinate basis."""
        d, F = self.dim, self.base
        M = [[F.zero] * d for _ in range(d)]
        for i, l, k, c in self._terms:
            if not F.is_zero(a[i]):
                M[k][l] = F.add(M[k][l], F.mul(a[i], c))
        return M

    def inv(self, a):
        r = self._inv_cache.get(a)
        if r is not None:
            return r
        if self.is_zero(a):
            raise ZeroInverse("0 has no inverse")
        x = field_linalg.solve(self.base, self.left_mul_matrix(a), list(self.one))
        if x is None:
            raise SingularElement(f"{a} is not invertible: not a division ring")
        x = tuple(x)
        if self.mul(x, a) != self.one:
            raise SingularElement(f"{a} has a one-sided inverse only")
        if self.size is not None or len(self._inv_cache) < 4096:
            self._inv_cache[a] = x
        return x

    def elements(self) -> Iterator[tuple]:
        """All elements in lexicographic coordinate order (zero first)."""
        if not self.is_finite:
            raise InfiniteRing("cannot enumerate an infinite division ring")
        return (tuple(t) for t in itertools.product(list(self.base.elements()), repeat=self.dim))

    def random_element(self, rng: random.Random, height: int = DEFAULT_HEIGHT):
        return tuple(self.base.random(rng, height) for _ in range(self.dim))

    def random_nonzero(self, rng: random.Random, height: int = DEFAULT_HEIGHT):
        while True:
            a = self.random_element(rng, height)
            if not self.is_zero(a):
                return a

    # -- user-facing wrappers ------------------------------------------
    def __call__(self, *coords) -> "Scalar":
        if len(coords) == 1 and isinstance(coords[0], (tuple, list)):
            coords = coords[0]
        return Scalar(self, self.canon(coords))

    def element_from_base(self, f) -> "Scalar":
        return Scalar(self, self.from_base(f))

    # -- validation ----------------------------------------------------
    def _check_unit(self):
        d = self.dim
        if not 0 <= self.unit_index < d:
            raise InvalidRingSpec("unit index out of range")
        for i in range(d):
            e = self.basis_element(i)
            if self.mul(self.one, e) != e or self.mul(e, self.one) != e:
                raise InvalidRingSpec(f"basis element {self.unit_index} is not a two-sided unit")

    def _check_associative(self):
        d = self.dim
        basis = [self.basis_element(i) for i in range(d)]
        for a in basis:
            for b in basis:
                ab = self.mul(a, b)
                for c in basis:
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)):
                        raise InvalidRingSpec("structure constants are not associative")

    def _check_invertibility(self, samples: int, seed: int) -> str:
        F = self.base
        if self.is_finite:
            for a in self.elements():
                if not self.is_zero(a) and field_linalg.rank(F, self.left_mul_matrix(a)) < self.dim:
                    raise SingularElement(f"{a} is a zero divisor")
            return "proven"
        rng = random.Random(seed)
        for _ in range(samples):
            a = self.random_nonzero(rng)
            if field_linalg.rank(F, self.left_mul_matrix(a)) < self.dim:
                raise SingularElement(f"{a} is a zero divisor")
        return "sampled"

    # -- serialization -------------------------------------------------
    def to_json(self) -> dict:
        if self._json_form is not None:
            return dict(self._json_form)
        F = self.base
        return {
            "type": "structure_constants",
            "base": F.to_json(),
            "d": self.dim,
            "table": [[[F.to_str(c) for c in row] for row in plane] for plane in self.table],
            "unit": self.unit_index,
        }


class Scalar:
    """An element of a division ring."""

    __slots__ = ("ring", "coords")

    def __init__(self, ring: DivisionRingSpec, coords: tuple):
        self.ring = ring
        self.coords = coords

    def _check(self, other) -> None:
        if not isinstance(other, Scalar):
            raise TypeError(f"expected Scalar, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise RingMismatch("scalars belong to different rings")

    def __add__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.add(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.sub(self.coords, other.coords))

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.coords))

    def __mul__(self, other):
        self._check(other)
        return Scalar(self.ring, self.ring.mul(self.coords, other.coords))

    def inv(self):
        return Scalar(self.ring, self.ring.inv(self.coords))

    def is_zero(self) -> bool:
        return self.ring.is_zero(self.coords)

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.ring == other.ring and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        F = self.ring.base
        return f"Scalar({', '.join(F.to_str(c) for c in self.coords)})"


def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def inv(a: Scalar) -> Scalar:
    return a.inv()


# ---------------------------------------------------------------------------
# Built-in instances
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def gf_spec(p: int, k: int = 1) -> DivisionRingSpec:
    """``GF(p^k)`` as a ``k``-dimensional algebra over ``F_p``.

    The basis is ``1, x, ..., x^(k-1)`` modulo the lexicographically first
    monic irreducible polynomial of degree ``k``.
    """
    if not is_prime(p):
        raise CompositeCharacteristic(f"{p} is not prime")
    if k < 1:
        raise ValueError("degree must be at least 1")
    F = PrimeField(p)
    modulus = conway_like_modulus(p, k)
    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            a = tuple(1 if t == i else 0 for t in range(k))
            b = tuple(1 if t == j else 0 for t in range(k))
            prod = _polymulmod(a, b, modulus, p) if k > 1 else (1,)
            table[i][j] = list(prod)
    ring = DivisionRingSpec(
        F, k, table, 0, name=f"GF({p}^{k})", json_form={"type": "gf", "p": p, "k": k}
    )
    ring.modulus = modulus
    return ring


@lru_cache(maxsize=None)
def quaternion_spec() -> DivisionRingSpec:
    """Rational Hamilton quaternions with basis ``(1, i, j, k)``."""
    # products of basis elements as (sign, index)
    rules = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = [[[0] * 4 for _ in range(4)] for _ in range(4)]
    for (i, j), (sign, k) in rules.items():
        table[i][j][k] = sign
    return DivisionRingSpec(
        Rationals(), 4, table, 0, name="H(Q)", json_form={"type": "quaternion_q"}
    )


_OPPOSITES: dict = {}


def opposite(ring: DivisionRingSpec) -> DivisionRingSpec:
    """The opposite ring: same elements, product ``a o b = b * a``.

    Commutative rings are their own opposite, and ``opposite`` is an
    involution (the result of ``opposite(opposite(R))`` is ``R`` itself).
    """
    if ring.is_commutative:
        return ring
    cached = _OPPOSITES.get(ring)
    if cached is not None:
        return cached
    d = ring.dim
    table = [[[ring.table[j][i][k] for k in range(d)] for j in range(d)] for i in range(d)]
    op = DivisionRingSpec(
        ring.base,
        d,
        table,
        ring.unit_index,
        name=f"{ring.name or 'custom'}^op",
        samples=0,
    )
    # x o a = 1 iff a * x = 1, so invertibility carries over unchanged
    op.verification = ring.verification
    _OPPOSITES[ring] = op
    _OPPOSITES[op] = ring
    return op


def ring_from_json(obj: dict) -> DivisionRingSpec:
    t = obj.get("type")
    if t == "gf":
        return gf_spec(int(obj["p"]), int(obj.get("k", 1)))
    if t == "quaternion_q":
        return quaternion_spec()
    if t == "structure_constants":
        base = field_from_json(obj["base"])
        d = int(obj["d"])
        table = [[[base.from_str(str(c)) for c in row] for row in plane] for plane in obj["table"]]
        return DivisionRingSpec(base, d, table, int(obj.get("unit", 0)))
    raise ValueError(f"unknown ring type {t!r}")


def parse_ring(text: str) -> DivisionRingSpec:
    """Parse ``gf:p[:k]`` or ``quaternion_q``."""
    if text == "quaternion_q":
        return quaternion_spec()
    if text.startswith("gf:"):
        parts = text.split(":")[1:]
        if not 1 <= len(parts) <= 2:
            raise ValueError(f"bad ring {text!r}")
        return gf_spec(int(parts[0]), int(parts[1]) if len(parts) == 2 else 1)
    raise ValueError(f"unknown ring {text!r}")
