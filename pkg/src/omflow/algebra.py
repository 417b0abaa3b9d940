"""Exact polynomial and linear algebra over the rationals.

Everything in this module is exact: coefficients are `fractions.Fraction`,
matrices are tuples of tuples of Fractions, and GF(2) vectors are plain ints
used as bitmasks.  No floats anywhere.

The central object is :class:`Poly`, a sparse polynomial in a fixed, named
tuple of variables.  Exponents are allowed to go negative *internally* (a few
intermediate results are honest Laurent polynomials); serialization refuses
negative exponents, so anything that escapes the package is a genuine
polynomial.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegreeExceedsHomogenizer,
    DuplicateNode,
    NonPolynomialResult,
)

Q = Fraction


def as_frac(x) -> Fraction:
    """Coerce ints, Fractions, and strings like '-3/7' to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# ---------------------------------------------------------------------------
# sparse polynomials
# ---------------------------------------------------------------------------


class Poly:
    """Sparse polynomial with named variables and Fraction coefficients.

    `terms` maps exponent tuples (one entry per variable, ints) to nonzero
    Fractions.  Instances are immutable in spirit; nothing mutates `terms`
    after construction.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple[str, ...], terms: dict | None = None):
        self.vars = tuple(vars)
        clean = {}
        if terms:
            for exp, c in terms.items():
                c = as_frac(c)
                if c:
                    exp = tuple(exp)
                    if len(exp) != len(self.vars):
                        raise ValueError("exponent arity mismatch")
                    clean[exp] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, vars, c) -> "Poly":
        c = as_frac(c)
        return cls(vars, {tuple([0] * len(vars)): c} if c else {})

    @classmethod
    def variable(cls, vars, name) -> "Poly":
        exp = [0] * len(vars)
        exp[tuple(vars).index(name)] = 1
        return cls(vars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, vars, exp, c=1) -> "Poly":
        return cls(vars, {tuple(exp): as_frac(c)})

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def _same(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            raise TypeError(f"cannot combine Poly with {type(other).__name__}")
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
        return other

    def __add__(self, other) -> "Poly":
        other = self._same(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, Fraction(0)) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._same(other))

    def __rsub__(self, other) -> "Poly":
        return self._same(other) + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = as_frac(other)
            if not c:
                return Poly(self.vars, {})
            return Poly(self.vars, {e: k * c for e, k in self.terms.items()})
        other = self._same(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers of polynomials are not defined")
        out = Poly.const(self.vars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    # -- structure ---------------------------------------------------------

    def degree(self, name: str) -> int:
        """Largest exponent of `name`; -1 for the zero polynomial."""
        i = self.vars.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def min_degree(self, name: str) -> int:
        i = self.vars.index(name)
        return min((e[i] for e in self.terms), default=0)

    def coeff(self, name: str, k: int) -> "Poly":
        """Coefficient of name**k, as a Poly in the remaining variables."""
        i = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        out: dict = {}
        for e, c in self.terms.items():
            if e[i] == k:
                re = tuple(x for j, x in enumerate(e) if j != i)
                out[re] = out.get(re, Fraction(0)) + c
        return Poly(rest, out)

    def lift(self, vars: tuple[str, ...]) -> "Poly":
        """Reinterpret over a superset of variables (new ones get exponent 0)."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for p, x in zip(pos, e):
                ne[p] = x
            out[tuple(ne)] = c
        return Poly(vars, out)

    def drop_vars(self, names) -> "Poly":
        """Forget variables that appear nowhere (exponent 0 in every term)."""
        names = set(names)
        keep = [i for i, v in enumerate(self.vars) if v not in names]
        for e in self.terms:
            for i, v in enumerate(self.vars):
                if v in names and e[i] != 0:
                    raise ValueError(f"variable {v} still occurs")
        nvars = tuple(self.vars[i] for i in keep)
        return Poly(nvars, {tuple(e[i] for i in keep): c for e, c in self.terms.items()})

    def as_scalar(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            if all(x == 0 for x in e):
                return c
        raise ValueError("polynomial is not constant")

    # -- evaluation / substitution ------------------------------------------

    def eval_frac(self, point: dict) -> Fraction:
        """Evaluate with every variable bound to a Fraction (or int)."""
        vals = [as_frac(point[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x**k
            total += t
        return total

    def eval_scalars(self, point: dict):
        """Evaluate with variables bound to any ring elements (+, *, ** int).

        Used with :class:`EisensteinScalar` values; negative exponents require
        the value to support them.
        """
        vals = [point[v] for v in self.vars]
        total = None
        for e, c in self.terms.items():
            t = None
            for x, k in zip(vals, e):
                if k:
                    p = x**k
                    t = p if t is None else t * p
            term = c if t is None else t * c
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def subs_scalar(self, name: str, value) -> "Poly":
        """Substitute one variable by a Fraction; result keeps remaining vars."""
        value = as_frac(value)
        i = self.vars.index(name)
        rest = tuple(v for v in self.vars if v != name)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k < 0 and value == 0:
                raise ZeroDivisionError("Laurent term evaluated at 0")
            c2 = c * value**k if k else c
            if not c2:
                continue
            re = tuple(x for j, x in enumerate(e) if j != i)
            s = out.get(re, Fraction(0)) + c2
            if s:
                out[re] = s
            else:
                out.pop(re, None)
        return Poly(rest, out)

    def compose(self, out_vars: tuple[str, ...], mapping: dict) -> "Poly":
        """Substitute every variable by a Poly over `out_vars` (or a scalar).

        Requires all exponents nonnegative.
        """
        out_vars = tuple(out_vars)
        images = []
        for v in self.vars:
            img = mapping[v]
            if isinstance(img, (int, Fraction, str)):
                img = Poly.const(out_vars, as_frac(img))
            elif img.vars != out_vars:
                img = img.lift(out_vars)
            images.append(img)
        # cache powers of each image
        pows: list[dict] = [dict() for _ in images]
        total = Poly(out_vars, {})
        for e, c in self.terms.items():
            term = Poly.const(out_vars, c)
            for idx, k in enumerate(e):
                if k < 0:
                    raise ValueError("compose does not accept Laurent exponents")
                if k:
                    cache = pows[idx]
                    if k not in cache:
                        cache[k] = images[idx] ** k
                    term = term * cache[k]
            total = total + term
        return total

    # -- serialization -------------------------------------------------------

    def to_json_obj(self) -> dict:
        terms = []
        for e in sorted(self.terms):
            if any(x < 0 for x in e):
                raise ValueError("refusing to serialize a Laurent polynomial")
            c = self.terms[e]
            terms.append(
                {"exp": list(e), "num": str(c.numerator), "den": str(c.denominator)}
            )
        return {"vars": list(self.vars), "terms": terms}

    @classmethod
    def from_json_obj(cls, obj) -> "Poly":
        vars = tuple(obj["vars"])
        terms = {}
        for t in obj["terms"]:
            terms[tuple(t["exp"])] = Fraction(int(t["num"]), int(t["den"]))
        return cls(vars, terms)

    def key(self) -> tuple:
        """Deterministic hashable key (used for memoization and comparisons)."""
        return (self.vars, tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mono = "*".join(
                f"{v}^{k}" if k != 1 else v for v, k in zip(self.vars, e) if k
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)


def poly_div_linear(p: Poly, name: str, root) -> Poly:
    """Exact division of `p` by (name - root); raises NonPolynomialResult.

    Handles Laurent input: the quotient may itself be Laurent in `name`.
    """
    root = as_frac(root)
    i = p.vars.index(name)
    shift = min((e[i] for e in p.terms), default=0)
    # group coefficients (as dicts over the other exponents) by name-exponent
    layers: dict[int, dict] = {}
    for e, c in p.terms.items():
        k = e[i] - shift
        re = tuple(x for j, x in enumerate(e) if j != i)
        layers.setdefault(k, {})[re] = c
    if not layers:
        return Poly(p.vars, {})
    top = max(layers)
    carry: dict = {}
    quot_layers: dict[int, dict] = {}
    for k in range(top, -1, -1):
        cur = dict(carry)
        for re, c in layers.get(k, {}).items():
            s = cur.get(re, Fraction(0)) + c
            if s:
                cur[re] = s
            else:
                cur.pop(re, None)
        if k > 0:
            quot_layers[k - 1] = cur
            carry = {re: c * root for re, c in cur.items()} if root else {}
        else:
            if cur:
                raise NonPolynomialResult(
                    f"remainder {cur} after dividing by ({name} - {root})"
                )
    out = {}
    for k, layer in quot_layers.items():
        for re, c in layer.items():
            e = list(re)
            e.insert(i, k + shift)
            out[tuple(e)] = c
    return Poly(p.vars, out)


def poly_div_linear_power(p: Poly, name: str, root, k: int) -> Poly:
    for _ in range(k):
        p = poly_div_linear(p, name, root)
    return p


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------


def interpolate(points, var: str = "q") -> Poly:
    """Exact Lagrange interpolation through (x, y) pairs of rationals."""
    pts = [(as_frac(x), as_frac(y)) for x, y in points]
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicateNode(f"repeated interpolation nodes among {xs}")
    total = Poly((var,), {})
    X = Poly.variable((var,), var)
    for i, (xi, yi) in enumerate(pts):
        if not yi:
            continue
        num = Poly.const((var,), yi)
        den = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            num = num * (X - Poly.const((var,), xj))
            den *= xi - xj
        total = total + num * (Fraction(1) / den)
    return total


# ---------------------------------------------------------------------------
# homogenized substitution
# ---------------------------------------------------------------------------


def homog_general(p: Poly, n: int, num_y: Poly, num_z: Poly, denom: Poly) -> Poly:
    """Clear denominators in p(..., num_y/denom, num_z/denom) * denom**n.

    Every term c * rest * y^i z^j becomes c * rest * num_y^i num_z^j denom^(n-i-j);
    the (y, z) degree of every term must be at most n.
    """
    iy = p.vars.index("y")
    iz = p.vars.index("z")
    num_y = num_y.lift(p.vars) if num_y.vars != p.vars else num_y
    num_z = num_z.lift(p.vars) if num_z.vars != p.vars else num_z
    denom = denom.lift(p.vars) if denom.vars != p.vars else denom
    py: dict[int, Poly] = {0: Poly.const(p.vars, 1)}
    pz: dict[int, Poly] = {0: Poly.const(p.vars, 1)}
    pd: dict[int, Poly] = {0: Poly.const(p.vars, 1)}

    def power(cache, base, k):
        if k not in cache:
            cache[k] = power(cache, base, k - 1) * base
        return cache[k]

    total = Poly(p.vars, {})
    for e, c in p.terms.items():
        i, j = e[iy], e[iz]
        if i < 0 or j < 0:
            raise ValueError("homogenization needs nonnegative exponents")
        if i + j > n:
            raise DegreeExceedsHomogenizer(
                f"term with (y,z)-degree {i + j} exceeds bound {n}"
            )
        rest = list(e)
        rest[iy] = 0
        rest[iz] = 0
        term = Poly.monomial(p.vars, rest, c)
        term = term * power(py, num_y, i)
        term = term * power(pz, num_z, j)
        term = term * power(pd, denom, n - i - j)
        total = total + term
    return total


def homog_substitute(p: Poly, n: int, mode: str) -> Poly:
    """Homogenized reparametrization of a polynomial in (…, y, z).

    mode "shifted": numerators 1+y and 1+z;  mode "plain": numerators y and z.
    The common denominator is 1+y+z, cleared by multiplying through with
    (1+y+z)**n.
    """
    yz = ("y", "z")
    y = Poly.variable(yz, "y")
    z = Poly.variable(yz, "z")
    one = Poly.const(yz, 1)
    if mode == "shifted":
        num_y, num_z = one + y, one + z
    elif mode == "plain":
        num_y, num_z = y, z
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return homog_general(p, n, num_y, num_z, one + y + z)


# ---------------------------------------------------------------------------
# exact matrices (tuples of tuples of Fractions)
# ---------------------------------------------------------------------------


def mat_from_rows(rows) -> tuple:
    return tuple(tuple(as_frac(x) for x in row) for row in rows)


def _eliminate(rows: list) -> int:
    """In-place fraction Gaussian elimination; returns the rank."""
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                piv = r
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = Fraction(1) / prow[col]
        rows[rank] = prow = [x * inv for x in prow]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], prow)]
        rank += 1
        if rank == len(rows):
            break
    return rank


def mat_rank(rows, cols=None) -> int:
    if cols is not None:
        cols = list(cols)
        work = [[row[c] for c in cols] for row in rows]
    else:
        work = [list(row) for row in rows]
    return _eliminate(work)


def column_analysis(rows, cols) -> tuple:
    """Rank of the selected columns, plus a kernel vector when minimal.

    Returns (rank, kernel) where kernel is a tuple of Fractions if the columns
    are minimally dependent (unique kernel line, full support), otherwise None.
    The kernel vector is normalized so its first nonzero entry is positive.
    """
    cols = list(cols)
    k = len(cols)
    work = [[row[c] for c in cols] for row in rows]
    rank = _eliminate(work)
    if rank != k - 1:
        return rank, None
    # nullity one: read the kernel off the reduced rows
    pivots = []
    for r in range(rank):
        for c in range(k):
            if work[r][c]:
                pivots.append(c)
                break
    free = [c for c in range(k) if c not in pivots]
    (fc,) = free
    vec = [Fraction(0)] * k
    vec[fc] = Fraction(1)
    for r, pc in enumerate(pivots):
        vec[pc] = -work[r][fc]
    if any(x == 0 for x in vec):
        return rank, None  # dependent but not minimally so
    first = next(x for x in vec if x)
    if first < 0:
        vec = [-x for x in vec]
    return rank, tuple(vec)


def _det_int(sub) -> int:
    """Determinant of a small integer matrix by fraction-free elimination."""
    m = [list(r) for r in sub]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_is_tu(rows, exhaustive_limit: int = 6) -> str:
    """Total unimodularity check: "true", "false", or "unchecked".

    Exhausts all square submatrices when min(#rows, #cols) is small enough,
    otherwise reports "unchecked" and leaves the decision to the caller.
    """
    rows = mat_from_rows(rows)
    if not rows or not rows[0]:
        return "true"
    nr, nc = len(rows), len(rows[0])
    for row in rows:
        for x in row:
            if x not in (-1, 0, 1):
                return "false"
    if min(nr, nc) > exhaustive_limit:
        return "unchecked"
    irows = [[int(x) for x in row] for row in rows]
    for size in range(2, min(nr, nc) + 1):
        for rset in itertools.combinations(range(nr), size):
            picked = [irows[r] for r in rset]
            for cset in itertools.combinations(range(nc), size):
                sub = [[prow[c] for c in cset] for prow in picked]
                if _det_int(sub) not in (-1, 0, 1):
                    return "false"
    return "true"


def mat_solve(rows, basis_cols, target_col):
    """Solve A[:, basis] * x = A[:, target]; returns tuple of Fractions or None."""
    basis_cols = list(basis_cols)
    work = [[row[c] for c in basis_cols] + [row[target_col]] for row in rows]
    k = len(basis_cols)
    rank = _eliminate(work)
    # inconsistent iff a pivot lies in the augmented column
    sol = [Fraction(0)] * k
    for r in range(rank):
        pc = None
        for c in range(k + 1):
            if work[r][c]:
                pc = c
                break
        if pc == k:
            return None
        sol[pc] = work[r][k]
    return tuple(sol)


# ---------------------------------------------------------------------------
# Eisenstein-style quadratic scalars: a + b*t with t**2 = -1 - t
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EisensteinScalar:
    """Element a + b*t of Q(t) where t is a primitive cube root of unity."""

    a: Fraction
    b: Fraction

    @classmethod
    def of(cls, a, b=0) -> "EisensteinScalar":
        return cls(as_frac(a), as_frac(b))

    def __add__(self, other):
        other = _eis(other)
        return EisensteinScalar(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return EisensteinScalar(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_eis(other))

    def __rsub__(self, other):
        return _eis(other) + (-self)

    def __mul__(self, other):
        other = _eis(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        return EisensteinScalar(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = EisensteinScalar(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conj(self) -> "EisensteinScalar":
        return EisensteinScalar(self.a - self.b, -self.b)

    def divq(self, r) -> "EisensteinScalar":
        r = as_frac(r)
        return EisensteinScalar(self.a / r, self.b / r)

    def is_rational(self) -> bool:
        return self.b == 0


def _eis(x) -> EisensteinScalar:
    if isinstance(x, EisensteinScalar):
        return x
    return EisensteinScalar(as_frac(x), Fraction(0))


# ---------------------------------------------------------------------------
# GF(2) spans of bitmask vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class F2Space:
    """Row-reduced GF(2) span of bitmask vectors."""

    basis: tuple  # ints in reduced echelon form, sorted by leading bit

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: int) -> bool:
        for b in self.basis:
            v = min(v, v ^ b)
        return v == 0

    def reduce(self, v: int) -> int:
        for b in self.basis:
            v = min(v, v ^ b)
        return v


def f2_span(vectors) -> F2Space:
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    # back-reduce for a canonical reduced echelon basis
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j and basis[i] ^ basis[j] < basis[i]:
                basis[i] ^= basis[j]
    basis.sort(reverse=True)
    return F2Space(tuple(basis))


def f2_enumerate(space: F2Space) -> list:
    """All members of the span, sorted ascending (deterministic)."""
    out = [0]
    for b in space.basis:
        out += [x ^ b for x in out]
    return sorted(out)


# ---------------------------------------------------------------------------
# canonical JSON
# ---------------------------------------------------------------------------


def json_dumps_canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
