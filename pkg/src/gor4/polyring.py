"""Sparse polynomials over a prime field.

Monomials are packed into a single Python int so that monomial products are
integer additions and the monomial order is integer comparison.  Layout, from
the least significant bit upward:

* one 8-bit field per graded variable holding ``127 - exponent``; variable
  ``i`` sits at bit ``8*i`` so the *last* variable is the most significant
  graded field (grevlex, last variable cheapest);
* a 16-bit total-degree field (graded variables only);
* one 8-bit field per auxiliary degree-0 variable holding the plain exponent.

Comparing packed keys therefore compares first the auxiliary exponents
(an elimination block), then the total degree, then grevlex.  Exponents are
limited to 127 per variable.
"""

from __future__ import annotations

import ast
import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

DEFAULT_CHAR = 32003

_W = 8
_EMAX = 127
_DEGW = 16


class RingMismatch(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    r = math.isqrt(n)
    return all(n % k for k in range(3, r + 1, 2))


@dataclass(frozen=True)
class PrimeField:
    characteristic: int = DEFAULT_CHAR

    def __post_init__(self):
        if not is_prime(self.characteristic):
            raise ValueError(f"characteristic {self.characteristic} is not prime")

    def inv(self, a: int) -> int:
        a %= self.characteristic
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.characteristic)

    def normalize(self, a: int) -> int:
        return a % self.characteristic


class SplitMix64:
    """Deterministic 64-bit generator (Steele, Lea & Flood's SplitMix64).

    Step::

        state = (state + 0x9E3779B97F4A7C15) mod 2**64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
        return z ^ (z >> 31)

    Field elements are drawn by rejection: outputs ``>= p * floor(2**64 / p)``
    are discarded and the rest reduced mod ``p``, so draws are exactly uniform.
    """

    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = seed & self.MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & self.MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & self.MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & self.MASK
        return z ^ (z >> 31)

    def element(self, p: int) -> int:
        limit = ((1 << 64) // p) * p
        while True:
            z = self.next()
            if z < limit:
                return z % p

    def nonzero(self, p: int) -> int:
        while True:
            a = self.element(p)
            if a:
                return a


def derived_seed(seed: int, attempt: int) -> int:
    """Seed used for retry number ``attempt`` (attempt 0 is the seed itself)."""
    if attempt == 0:
        return seed
    rng = SplitMix64(seed)
    for _ in range(attempt):
        out = rng.next()
    return out


class PolyRing:
    """Polynomial ring GF(p)[vars] with grevlex order on the graded variables.

    ``aux`` names degree-0 variables (deformation parameters); they form an
    elimination block above the graded part of the order.
    """

    def __init__(self, variables: Sequence[str], char: int = DEFAULT_CHAR,
                 aux: Sequence[str] = ()):
        names = list(variables) + list(aux)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be distinct")
        self.field = PrimeField(char)
        self.p = char
        self.graded = tuple(variables)
        self.aux = tuple(aux)
        self.names = tuple(names)
        self.n = len(self.graded)
        self.naux = len(self.aux)
        n = self.n
        self.degshift = _W * n
        self.auxshift = self.degshift + _DEGW
        self.C = sum(_EMAX << (_W * i) for i in range(n))
        self.one = self.C
        self.gmask = (1 << (_W * n)) - 1
        self.gguard = sum(1 << (_W * i + 7) for i in range(n))
        self.aguard = sum(1 << (_W * i + 7) for i in range(self.naux))
        self.degmask = (1 << _DEGW) - 1
        self.index = {v: i for i, v in enumerate(names)}
        self._vars = None

    # -- identity -------------------------------------------------------
    def _sig(self):
        return (self.graded, self.aux, self.p)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._sig() == other._sig()

    def __hash__(self):
        return hash(self._sig())

    def __repr__(self):
        aux = f", aux={list(self.aux)}" if self.aux else ""
        return f"PolyRing({list(self.graded)}, char={self.p}{aux})"

    def header(self) -> dict:
        h = {"char": self.p, "vars": list(self.graded), "order": "grevlex"}
        if self.aux:
            h["aux"] = list(self.aux)
        return h

    @classmethod
    def from_header(cls, h: Mapping) -> "PolyRing":
        if h.get("order", "grevlex") != "grevlex":
            raise ValueError(f"unsupported order {h['order']!r}")
        return cls(h["vars"], char=int(h["char"]), aux=h.get("aux", ()))

    # -- monomials ------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        n = self.n
        key = 0
        deg = 0
        for i in range(n):
            e = exps[i]
            if not 0 <= e <= _EMAX:
                raise OverflowError(f"exponent {e} out of range")
            key |= (_EMAX - e) << (_W * i)
            deg += e
        key |= deg << self.degshift
        for j in range(self.naux):
            e = exps[n + j]
            if not 0 <= e <= _EMAX:
                raise OverflowError(f"exponent {e} out of range")
            key |= e << (self.auxshift + _W * j)
        return key

    def unpack(self, key: int) -> tuple:
        out = [_EMAX - ((key >> (_W * i)) & 0xFF) for i in range(self.n)]
        for j in range(self.naux):
            out.append((key >> (self.auxshift + _W * j)) & 0xFF)
        return tuple(out)

    def mdeg(self, key: int) -> int:
        return (key >> self.degshift) & self.degmask

    def mdivides(self, a: int, b: int) -> bool:
        """Whether monomial ``a`` divides monomial ``b``."""
        g = self.gguard
        if (((a & self.gmask) | g) - (b & self.gmask)) & g != g:
            return False
        if self.naux:
            s = self.auxshift
            ga = self.aguard
            return (((b >> s) | ga) - (a >> s)) & ga == ga
        return True

    def mlcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    def mquo(self, b: int, a: int) -> int:
        """b / a for a dividing b."""
        return b - a + self.C

    def mmul(self, a: int, b: int) -> int:
        return a + b - self.C

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.unpack(a), self.unpack(b)))

    def monomials(self, degree: int, allowed: Iterable[int] | None = None) -> list[int]:
        """Packed monomials of a given degree in the graded variables, descending."""
        idx = list(range(self.n)) if allowed is None else sorted(allowed)
        out = []
        for combo in itertools.combinations_with_replacement(idx, degree):
            e = [0] * (self.n + self.naux)
            for i in combo:
                e[i] += 1
            out.append(self.pack(e))
        out.sort(reverse=True)
        return out

    # -- element constructors ------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {self.one: c} if c else {})

    def var(self, name: str) -> "Polynomial":
        e = [0] * (self.n + self.naux)
        e[self.index[name]] = 1
        return Polynomial(self, {self.pack(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.names]

    def __getitem__(self, name: str) -> "Polynomial":
        return self.var(name)

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        c = coeff % self.p
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return _PolyParser(self).parse(text)

    def __call__(self, x) -> "Polynomial":
        if isinstance(x, Polynomial):
            if x.ring != self:
                raise RingMismatch("polynomial belongs to another ring")
            return x
        if isinstance(x, int):
            return self.const(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__}")

    def extend(self, variables: Sequence[str] = (), aux: Sequence[str] = ()) -> "PolyRing":
        return PolyRing(list(self.graded) + list(variables), self.p, list(self.aux) + list(aux))

    def imbed(self, f: "Polynomial") -> "Polynomial":
        """Map ``f`` from a ring whose variables all exist here, by name."""
        if f.ring == self:
            return f
        pos = [self.index[v] for v in f.ring.names]
        width = self.n + self.naux
        out = {}
        for k, c in f.terms.items():
            e = [0] * width
            for i, x in zip(pos, f.ring.unpack(k)):
                e[i] = x
            out[self.pack(e)] = c
        return Polynomial(self, out)


class Polynomial:
    """Immutable polynomial; ``terms`` maps packed monomials to nonzero coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list[tuple[int, tuple]]:
        """(coefficient, exponents) pairs, strictly descending in the order."""
        R = self.ring
        return [(self.terms[k], R.unpack(k)) for k in sorted(self.terms, reverse=True)]

    def lead(self) -> int:
        return max(self.terms)

    def lead_coeff(self) -> int:
        return self.terms[max(self.terms)]

    def degree(self) -> int:
        if not self.terms:
            return -1
        R = self.ring
        return max(R.mdeg(k) for k in self.terms)

    def is_homogeneous(self) -> bool:
        R = self.ring
        return len({R.mdeg(k) for k in self.terms}) <= 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.one in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(self.ring.one, 0)

    def variables(self) -> set[str]:
        R = self.ring
        used = set()
        for k in self.terms:
            for name, e in zip(R.names, R.unpack(k)):
                if e:
                    used.add(name)
        return used

    # -- arithmetic -----------------------------------------------------
    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch("operands live in different rings")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, padd(self.terms, other.terms, self.ring.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, psub(self.terms, other.terms, self.ring.p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.ring, pscale(self.terms, other, self.ring.p))
        other = self._check(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, pmul(self.terms, other.terms, self.ring))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.lead_coeff())

    def diff(self, name: str) -> "Polynomial":
        R = self.ring
        i = R.index[name]
        out = {}
        for k, c in self.terms.items():
            e = list(R.unpack(k))
            if e[i]:
                c2 = (c * e[i]) % R.p
                e[i] -= 1
                if c2:
                    out[R.pack(e)] = c2
        return Polynomial(R, out)

    def homogeneous_part(self, degree: int) -> "Polynomial":
        R = self.ring
        return Polynomial(R, {k: c for k, c in self.terms.items() if R.mdeg(k) == degree})

    def substitute(self, images: Mapping[str, "Polynomial | int"],
                   target: PolyRing | None = None, homogeneous: bool = False) -> "Polynomial":
        return substitute(self, images, target, homogeneous)

    def evaluate_aux(self, values: Mapping[str, int]) -> "Polynomial":
        """Set auxiliary (or any) variables to field constants, staying in this ring."""
        R = self.ring
        images = {v: values[v] for v in values}
        return substitute(self, images, R)

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self)

    def to_json(self) -> dict:
        return {"ring": self.ring.header(),
                "terms": [{"coeff": c, "exps": list(e)} for c, e in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: Mapping, ring: PolyRing | None = None) -> "Polynomial":
        R = ring or PolyRing.from_header(obj["ring"])
        return terms_from_json(R, obj["terms"])


# -- raw dict kernels (shared with the Groebner and resolution code) ------

def padd(a: dict, b: dict, p: int) -> dict:
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for k, c in b.items():
        v = (out.get(k, 0) + c) % p
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def psub(a: dict, b: dict, p: int) -> dict:
    out = dict(a)
    for k, c in b.items():
        v = (out.get(k, 0) - c) % p
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def pscale(a: dict, c: int, p: int) -> dict:
    c %= p
    if not c:
        return {}
    return {k: (v * c) % p for k, v in a.items()}


def pmul(a: dict, b: dict, ring: PolyRing) -> dict:
    if len(a) > len(b):
        a, b = b, a
    C = ring.C
    p = ring.p
    acc: dict = {}
    get = acc.get
    for ka, ca in a.items():
        s = ka - C
        for kb, cb in b.items():
            k = kb + s
            acc[k] = get(k, 0) + ca * cb
    return {k: v % p for k, v in acc.items() if v % p}


def pmul_term(a: dict, key: int, c: int, ring: PolyRing) -> dict:
    """a * (c * monomial(key))."""
    s = key - ring.C
    p = ring.p
    return {k + s: (v * c) % p for k, v in a.items()}


def terms_from_json(R: PolyRing, terms: Iterable[Mapping]) -> Polynomial:
    out: dict = {}
    for t in terms:
        k = R.pack(t["exps"])
        out[k] = (out.get(k, 0) + int(t["coeff"])) % R.p
    return Polynomial(R, {k: c for k, c in out.items() if c})


def multiply(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def substitute(f: Polynomial, images: Mapping[str, "Polynomial | int"],
               target: PolyRing | None = None, homogeneous: bool = False) -> Polynomial:
    """Replace each variable of ``f`` by its image in ``target``.

    Variables of ``f`` without an image are kept if ``target`` has a variable of
    the same name, otherwise a KeyError is raised.  With ``homogeneous=True`` each
    graded variable must map to a homogeneous form of degree 1 and each auxiliary
    variable to a constant.
    """
    R = f.ring
    T = target or R
    imgs = []
    for name in R.names:
        if name in images:
            im = images[name]
            im = T.const(im) if isinstance(im, int) else im
            if im.ring != T:
                raise RingMismatch(f"image of {name} is not in the target ring")
        elif name in T.index:
            im = T.var(name)
        else:
            raise KeyError(f"no image for variable {name}")
        if homogeneous:
            want = 1 if name in R.graded else 0
            if im and not (im.is_homogeneous() and im.degree() == want):
                raise ValueError(f"image of {name} is not homogeneous of degree {want}")
        imgs.append(im.terms)
    used = [False] * len(R.names)
    for k in f.terms:
        for i, e in enumerate(R.unpack(k)):
            if e:
                used[i] = True
    powers: list[dict] = [{} for _ in R.names]

    def power(i, e):
        cache = powers[i]
        if e not in cache:
            cache[0] = {T.one: 1}
            top = max(j for j in cache)
            cur = cache[top]
            for j in range(top + 1, e + 1):
                cur = pmul(cur, imgs[i], T)
                cache[j] = cur
        return cache[e]

    out: dict = {}
    p = T.p
    for k, c in f.terms.items():
        term = {T.one: c}
        for i, e in enumerate(R.unpack(k)):
            if e:
                term = pmul(term, power(i, e), T)
                if not term:
                    break
        out = padd(out, term, p)
    return Polynomial(T, out)


def random_form(ring: PolyRing, degree: int, rng: SplitMix64,
                allowed: Iterable[str] | None = None) -> Polynomial:
    """Homogeneous form with uniform coefficients on the monomials of ``allowed``.

    Coefficients are drawn in descending monomial order, one draw per monomial.
    """
    if degree < 0:
        raise ValueError("degree must be non-negative")
    names = ring.graded if allowed is None else list(allowed)
    if not names:
        raise ValueError("empty variable subset")
    idx = [ring.index[v] for v in names]
    if any(i >= ring.n for i in idx):
        raise ValueError("forms are drawn in graded variables only")
    out = {}
    for m in ring.monomials(degree, idx):
        c = rng.element(ring.p)
        if c:
            out[m] = c
    return Polynomial(ring, out)


def random_linear_combination(polys: Sequence[Polynomial], rng: SplitMix64,
                              coeff_ring_forms: Sequence[Polynomial] | None = None) -> Polynomial:
    """sum c_i f_i with uniform field scalars (or given forms as coefficients)."""
    R = polys[0].ring
    out = R.zero()
    for i, f in enumerate(polys):
        if coeff_ring_forms is None:
            out = out + f * rng.element(R.p)
        else:
            out = out + f * coeff_ring_forms[i]
    return out


# -- text form ------------------------------------------------------------

def format_poly(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    R = f.ring
    p = R.p
    parts = []
    for c, e in f.sorted_terms():
        mon = "*".join(n if x == 1 else f"{n}^{x}" for n, x in zip(R.names, e) if x)
        if c > p // 2:
            sign, c = "-", p - c
        else:
            sign = "+"
        if not mon:
            body = str(c)
        elif c == 1:
            body = mon
        else:
            body = f"{c}*{mon}"
        parts.append((sign, body))
    s = parts[0][1] if parts[0][0] == "+" else "-" + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


class _PolyParser:
    """Safe arithmetic-expression parser: + - * ^ ** /int, integers, variables."""

    def __init__(self, ring: PolyRing):
        self.ring = ring

    def parse(self, text: str) -> Polynomial:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
        return self.ring(self._eval(tree.body))

    def _eval(self, node):
        R = self.ring
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return R.const(node.value)
        if isinstance(node, ast.Name):
            if node.id not in R.index:
                raise ValueError(f"unknown variable {node.id!r}")
            return R.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = self._eval(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                e = node.right
                if not (isinstance(e, ast.Constant) and isinstance(e.value, int)):
                    raise ValueError("exponents must be integer literals")
                return self._eval(node.left) ** e.value
            a = self._eval(node.left)
            b = self._eval(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if not b.is_constant() or b.is_zero():
                    raise ValueError("can only divide by nonzero constants")
                return a * R.field.inv(b.constant_value())
        raise ValueError(f"unsupported syntax: {ast.dump(node)}")


def dumps_polys(polys: Sequence[Polynomial], ring: PolyRing | None = None, **extra) -> str:
    R = ring or polys[0].ring
    obj = {"ring": R.header(),
           "generators": [[{"coeff": c, "exps": list(e)} for c, e in f.sorted_terms()]
                          for f in polys]}
    obj.update(extra)
    return json.dumps(obj, indent=1)


def loads_polys(text: str) -> tuple[PolyRing, list[Polynomial]]:
    obj = json.loads(text)
    R = PolyRing.from_header(obj["ring"])
    return R, [terms_from_json(R, g) for g in obj["generators"]]
