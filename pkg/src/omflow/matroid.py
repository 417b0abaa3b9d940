"""Oriented matroids of totally unimodular matrices and digraphs.

Elements are matrix columns (or digraph arcs), indexed 0..n-1 and carried
around as bitmasks.  A signed circuit is a pair of disjoint bitmasks
(pos, neg); the stored circuit list keeps one representative per opposite
pair {C, -C}, namely the one whose lowest support element is on the
positive side, sorted for determinism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    as_frac,
    column_analysis,
    mat_from_rows,
    mat_is_tu,
    mat_rank,
    mat_solve,
)
from .errors import GroundTooLarge, NotABasis, NotTotallyUnimodular

CIRCUIT_GROUND_CAP = 16


def bits_of(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def reindex_mask(mask: int, kept: list) -> int:
    """Rewrite a bitmask after dropping elements; `kept` lists old indices."""
    out = 0
    for new, old in enumerate(kept):
        if mask >> old & 1:
            out |= 1 << new
    return out


@dataclass(frozen=True)
class SignedSubset:
    """Disjoint (pos, neg) bitmask pair."""

    pos: int
    neg: int

    @property
    def support(self) -> int:
        return self.pos | self.neg

    def __neg__(self) -> "SignedSubset":
        return SignedSubset(self.neg, self.pos)

    def canonical(self) -> "SignedSubset":
        s = self.support
        if not s:
            return self
        low = s & -s
        return self if self.pos & low else -self

    def reorient(self, smask: int) -> "SignedSubset":
        moved_to_neg = self.pos & smask
        moved_to_pos = self.neg & smask
        return SignedSubset(
            (self.pos & ~smask) | moved_to_pos, (self.neg & ~smask) | moved_to_neg
        )

    def drop(self, drop_mask: int) -> "SignedSubset":
        return SignedSubset(self.pos & ~drop_mask, self.neg & ~drop_mask)

    def reindex(self, kept: list) -> "SignedSubset":
        return SignedSubset(reindex_mask(self.pos, kept), reindex_mask(self.neg, kept))

    def is_positive(self) -> bool:
        return self.neg == 0


def _check_axioms(circuits, n: int) -> None:
    seen = {}
    for c in circuits:
        if not c.support:
            raise ValueError("empty circuit")
        if c.pos & c.neg:
            raise ValueError("overlapping signs")
        low = c.support & -c.support
        if not c.pos & low:
            raise ValueError("circuit not in canonical orientation")
        if c.support in seen and seen[c.support] != c:
            raise ValueError("two distinct circuits share a support")
        seen[c.support] = c
    supports = sorted(seen)
    for i, s in enumerate(supports):
        for t in supports[i + 1 :]:
            if s & t == s and s != t:
                raise ValueError("circuit support strictly contains another")


def _circuits_from_matrix(rows, n: int, cap: int = CIRCUIT_GROUND_CAP):
    if n > cap:
        raise GroundTooLarge(f"{n} elements exceeds the circuit enumeration cap {cap}")
    rank = mat_rank(rows)
    supports: list[int] = []
    out: list[SignedSubset] = []
    for size in range(1, min(rank + 1, n) + 1):
        for cols in itertools.combinations(range(n), size):
            m = mask_of(cols)
            if any(s & m == s for s in supports):
                continue
            _, ker = column_analysis(rows, cols)
            if ker is None:
                continue
            pos = neg = 0
            for c, v in zip(cols, ker):
                if v > 0:
                    pos |= 1 << c
                elif v < 0:
                    neg |= 1 << c
            out.append(SignedSubset(pos, neg).canonical())
            supports.append(m)
    out.sort(key=lambda c: (c.support, c.pos))
    return tuple(out)


def _kernel_rescales_to_unit(ker) -> bool:
    """Does some scalar multiple of `ker` land in {-1, 0, 1}^n?"""
    nonzero = [abs(x) for x in ker if x]
    if not nonzero:
        return True
    lead = nonzero[0]
    return all(x == lead for x in nonzero)


@dataclass(frozen=True)
class Classification:
    cyclic_mask: int
    acyclic_mask: int
    is_acyclic: bool
    is_totally_cyclic: bool


class OrientedMatroid:
    """Column oriented matroid of an exact rational matrix."""

    __slots__ = (
        "labels",
        "rows",
        "tu_status",
        "circuits",
        "_rank",
        "_rank_cache",
        "_dual",
    )

    def __init__(self, labels, rows, tu_status, circuits, check_axioms=False):
        self.labels = tuple(labels)
        self.rows = mat_from_rows(rows)
        self.tu_status = tu_status
        self.circuits = tuple(circuits)
        if check_axioms and self.n <= 12:
            _check_axioms(self.circuits, self.n)
        self._rank = None
        self._rank_cache = {}
        self._dual = None

    # -- construction --------------------------------------------------------

    @classmethod
    def from_matrix(
        cls, rows, labels=None, tu_mode: str = "check", exhaustive_limit: int = 6
    ) -> "OrientedMatroid":
        rows = mat_from_rows(rows)
        n = len(rows[0]) if rows else 0
        if labels is None:
            labels = [f"e{i}" for i in range(n)]
        if len(labels) != n:
            raise ValueError("label count does not match column count")
        if tu_mode not in ("check", "assume"):
            raise ValueError(f"unknown tu_mode {tu_mode!r}")
        if tu_mode == "check":
            status = mat_is_tu(rows, exhaustive_limit)
            if status != "true":
                raise NotTotallyUnimodular(
                    f"matrix is {status}; pass tu_mode='assume' to proceed anyway"
                )
            tu_status = "true"
        else:
            tu_status = "assumed"
        circuits = _circuits_from_matrix(rows, n)
        if tu_status == "assumed":
            # guard: every circuit's kernel vector must rescale to {-1,0,1}
            for c in circuits:
                cols = sorted(bits_of(c.support))
                _, ker = column_analysis(rows, cols)
                if ker is None or not _kernel_rescales_to_unit(ker):
                    tu_status = "not-tu"
                    break
        return cls(labels, rows, tu_status, circuits, check_axioms=True)

    @classmethod
    def from_digraph(cls, d: "Digraph") -> "OrientedMatroid":
        # network matrices are totally unimodular; no exhaustive check needed
        return cls(
            d.labels,
            d.incidence_rows(),
            "true",
            _circuits_from_matrix(d.incidence_rows(), len(d.arcs)),
            check_axioms=True,
        )

    # -- basics ----------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = self.rank_of(self.full_mask)
        return self._rank

    def rank_of(self, mask: int) -> int:
        cached = self._rank_cache.get(mask)
        if cached is not None:
            return cached
        r = mat_rank(self.rows, cols=sorted(bits_of(mask)))
        self._rank_cache[mask] = r
        return r

    @property
    def loops_mask(self) -> int:
        m = 0
        for c in self.circuits:
            if c.support.bit_count() == 1:
                m |= c.support
        return m

    @property
    def coloops_mask(self) -> int:
        covered = 0
        for c in self.circuits:
            covered |= c.support
        return self.full_mask & ~covered

    def opposite_pairs(self) -> list:
        """Element pairs {a, b} whose doubleton is a positive circuit."""
        out = []
        for c in self.circuits:
            if c.support.bit_count() == 2 and c.is_positive():
                i, j = sorted(bits_of(c.support))
                out.append((i, j))
        return out

    def label_mask(self, names) -> int:
        return mask_of(self.labels.index(x) for x in names)

    def canonical_key(self) -> tuple:
        return (self.n, tuple((c.pos, c.neg) for c in self.circuits))

    def perm_canonical_key(self) -> tuple:
        """Minimal canonical key over all relabelings of the elements."""
        best = None
        for perm in itertools.permutations(range(self.n)):
            cs = tuple(
                sorted(
                    (
                        mask_of(perm[i] for i in bits_of(c.pos)),
                        mask_of(perm[i] for i in bits_of(c.neg)),
                    )
                    for c in (x.canonical() for x in self._permed(perm))
                )
            )
            if best is None or cs < best:
                best = cs
        return (self.n, best)

    def _permed(self, perm):
        for c in self.circuits:
            yield SignedSubset(
                mask_of(perm[i] for i in bits_of(c.pos)),
                mask_of(perm[i] for i in bits_of(c.neg)),
            )

    # -- fundamental circuits --------------------------------------------------

    def lex_basis_mask(self) -> int:
        """Lexicographically first basis (greedy over element order)."""
        m = 0
        r = 0
        for i in range(self.n):
            if self.rank_of(m | 1 << i) > r:
                m |= 1 << i
                r += 1
        return m

    def fundamental_circuits(self, basis_mask: int) -> dict:
        """Map each non-basis element a to its circuit inside basis+a.

        The returned circuits place `a` on the positive side (not the stored
        canonical orientation).
        """
        bcols = sorted(bits_of(basis_mask))
        if len(bcols) != self.rank or self.rank_of(basis_mask) != self.rank:
            raise NotABasis(f"columns {bcols} do not form a basis")
        out = {}
        for a in range(self.n):
            if basis_mask >> a & 1:
                continue
            x = mat_solve(self.rows, bcols, a)
            pos, neg = 1 << a, 0
            for b, coef in zip(bcols, x):
                if coef > 0:
                    neg |= 1 << b
                elif coef < 0:
                    pos |= 1 << b
            out[a] = SignedSubset(pos, neg)
        return out

    def fundamental_coefficients(self, basis_mask: int) -> dict:
        """Expansion coefficients of each non-basis column over the basis."""
        bcols = sorted(bits_of(basis_mask))
        if len(bcols) != self.rank or self.rank_of(basis_mask) != self.rank:
            raise NotABasis(f"columns {bcols} do not form a basis")
        return {
            a: dict(zip(bcols, mat_solve(self.rows, bcols, a)))
            for a in range(self.n)
            if not basis_mask >> a & 1
        }

    # -- duality ----------------------------------------------------------------

    def dual(self) -> "OrientedMatroid":
        if self._dual is not None:
            return self._dual
        n, r = self.n, self.rank
        # row-reduce onto the lexicographically first basis
        work = [list(row) for row in self.rows]
        pivots = []
        rr = 0
        for col in range(n):
            piv = None
            for i in range(rr, len(work)):
                if work[i][col]:
                    piv = i
                    break
            if piv is None:
                continue
            work[rr], work[piv] = work[piv], work[rr]
            inv = Fraction(1) / work[rr][col]
            work[rr] = [x * inv for x in work[rr]]
            for i in range(len(work)):
                if i != rr and work[i][col]:
                    f = work[i][col]
                    work[i] = [a - f * b for a, b in zip(work[i], work[rr])]
            pivots.append(col)
            rr += 1
            if rr == r:
                break
        nonbasis = [c for c in range(n) if c not in pivots]
        dual_rows = []
        for j in nonbasis:
            row = [Fraction(0)] * n
            row[j] = Fraction(1)
            for i, b in enumerate(pivots):
                row[b] = -work[i][j]
            dual_rows.append(row)
        dual_om = OrientedMatroid(
            self.labels,
            dual_rows,
            self.tu_status,
            _circuits_from_matrix(mat_from_rows(dual_rows), n),
            check_axioms=True,
        )
        dual_om._dual = self
        if self.n <= 10:
            _check_orthogonality(self.circuits, dual_om.circuits)
        self._dual = dual_om
        return dual_om

    def cocircuits(self) -> tuple:
        return self.dual().circuits

    # -- minors ------------------------------------------------------------------

    def minor(self, delete: int = 0, contract: int = 0) -> "OrientedMatroid":
        """Delete and contract disjoint element sets.

        Contraction pivots the lowest-index nonzero row of each contracted
        column; contracted loops are simply removed.  Circuits come from the
        parent's circuits (restriction plus support-minimal truncation), so no
        fresh enumeration happens.
        """
        if delete & contract:
            raise ValueError("delete and contract sets overlap")
        work = [list(row) for row in self.rows]
        for c in sorted(bits_of(contract)):
            piv = None
            for i, row in enumerate(work):
                if row[c]:
                    piv = i
                    break
            if piv is None:
                continue  # loop: contracting equals deleting
            prow = work[piv]
            inv = Fraction(1) / prow[c]
            prow = [x * inv for x in prow]
            work = [
                [a - row[c] * b for a, b in zip(row, prow)]
                for i, row in enumerate(work)
                if i != piv
            ]
        kept = [i for i in range(self.n) if not (delete | contract) >> i & 1]
        new_rows = [[row[i] for i in kept] for row in work]
        if not new_rows:
            new_rows = [[Fraction(0)] * len(kept)]
        new_labels = [self.labels[i] for i in kept]

        # circuit rule: restrict away deletions, truncate by contractions,
        # keep the support-minimal results
        cand = []
        for c in self.circuits:
            if c.support & delete:
                continue
            x = c.drop(contract)
            if x.support:
                cand.append(x)
        cand.sort(key=lambda c: c.support.bit_count())
        chosen: list[SignedSubset] = []
        supports: list[int] = []
        seen = set()
        for x in cand:
            if x.support in seen:
                continue
            if any(s & x.support == s for s in supports):
                continue
            chosen.append(x.canonical())
            supports.append(x.support)
            seen.add(x.support)
        circuits = tuple(
            sorted((c.reindex(kept) for c in chosen), key=lambda c: (c.support, c.pos))
        )
        return OrientedMatroid(new_labels, new_rows, self.tu_status, circuits)

    def delete(self, mask: int) -> "OrientedMatroid":
        return self.minor(delete=mask)

    def contract(self, mask: int) -> "OrientedMatroid":
        return self.minor(contract=mask)

    # -- reorientation --------------------------------------------------------

    def reorient(self, smask: int) -> "OrientedMatroid":
        rows = [
            [(-x if smask >> j & 1 else x) for j, x in enumerate(row)]
            for row in self.rows
        ]
        circuits = tuple(
            sorted(
                (c.reorient(smask).canonical() for c in self.circuits),
                key=lambda c: (c.support, c.pos),
            )
        )
        out = OrientedMatroid(self.labels, rows, self.tu_status, circuits)
        out._rank = self._rank
        return out

    def classify(self) -> Classification:
        cyc = 0
        for c in self.circuits:
            if c.is_positive():
                cyc |= c.support
        return Classification(
            cyclic_mask=cyc,
            acyclic_mask=self.full_mask & ~cyc,
            is_acyclic=cyc == 0,
            is_totally_cyclic=cyc == self.full_mask,
        )

    def stabilizer(self) -> list:
        """Reorientation sets fixing the circuit signature (as bitmasks)."""
        base = set(self.circuits)
        out = []
        for s in range(1 << self.n):
            if {c.reorient(s).canonical() for c in self.circuits} == base:
                out.append(s)
        return out

    # -- doubling and sums -------------------------------------------------------

    def double(self) -> "OrientedMatroid":
        """Adjoin a negated copy e' of every element e."""
        rows = [list(row) + [-x for x in row] for row in self.rows]
        labels = list(self.labels) + [lab + "'" for lab in self.labels]
        if not self.rows:
            rows = []
        circuits = _circuits_from_matrix(mat_from_rows(rows), 2 * self.n)
        return OrientedMatroid(labels, rows, self.tu_status, circuits, check_axioms=True)

    def direct_sum(self, other: "OrientedMatroid") -> "OrientedMatroid":
        labels = list(self.labels) + list(other.labels)
        if len(set(labels)) != len(labels):
            labels = [f"L.{x}" for x in self.labels] + [f"R.{x}" for x in other.labels]
        r1, r2 = len(self.rows), len(other.rows)
        n1, n2 = self.n, other.n
        rows = [list(row) + [Fraction(0)] * n2 for row in self.rows]
        rows += [[Fraction(0)] * n1 + list(row) for row in other.rows]
        circuits = [c for c in self.circuits]
        circuits += [
            SignedSubset(c.pos << n1, c.neg << n1) for c in other.circuits
        ]
        circuits.sort(key=lambda c: (c.support, c.pos))
        order = {"true": 2, "assumed": 1, "not-tu": 0}
        status = min(self.tu_status, other.tu_status, key=order.get)
        return OrientedMatroid(labels, rows, status, circuits)

    # -- flats ---------------------------------------------------------------------

    def is_flat(self, mask: int) -> bool:
        r = self.rank_of(mask)
        for a in range(self.n):
            if not mask >> a & 1 and self.rank_of(mask | 1 << a) == r:
                return False
        return True

    def cyclic_flats(self) -> list:
        """Flats whose restriction is totally cyclic, as sorted bitmasks."""
        pos_circ = [c.support for c in self.circuits if c.is_positive()]
        out = []
        for mask in range(1 << self.n):
            cov = 0
            for s in pos_circ:
                if s & ~mask == 0:
                    cov |= s
            if cov != mask:
                continue
            if self.is_flat(mask):
                out.append(mask)
        return sorted(out)

    def __repr__(self):
        return (
            f"OrientedMatroid(n={self.n}, rank={self.rank}, "
            f"tu={self.tu_status}, circuits={len(self.circuits)})"
        )


def _check_orthogonality(circuits, cocircuits) -> None:
    for c in circuits:
        for d in cocircuits:
            if not c.support & d.support:
                continue
            agree = (c.pos & d.pos) | (c.neg & d.neg)
            clash = (c.pos & d.neg) | (c.neg & d.pos)
            if not (agree and clash):
                raise ValueError(
                    f"circuit {c} and cocircuit {d} are not sign-orthogonal"
                )


def circuit_in_fundamental_span(
    om: OrientedMatroid, basis_mask: int, circuit: SignedSubset
) -> bool:
    """Is the circuit the forced integer combination of fundamental circuits?

    The coefficient of the fundamental circuit of a non-basis element a is
    the sign of a in the target circuit; the combination must reproduce the
    target exactly (in one of its two orientations).
    """
    fund = om.fundamental_circuits(basis_mask)

    def vec(ss: SignedSubset):
        return [
            (1 if ss.pos >> i & 1 else -1 if ss.neg >> i & 1 else 0)
            for i in range(om.n)
        ]

    for target in (circuit, -circuit):
        total = [0] * om.n
        for a, fc in fund.items():
            lam = 1 if target.pos >> a & 1 else -1 if target.neg >> a & 1 else 0
            if lam:
                fv = vec(fc)
                total = [t + lam * f for t, f in zip(total, fv)]
        if total == vec(target):
            return True
    return False


# ---------------------------------------------------------------------------
# digraphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Digraph:
    vertices: int
    arcs: tuple  # ((u, v), ...)
    labels: tuple

    @classmethod
    def make(cls, vertices: int, arcs, labels=None) -> "Digraph":
        arcs = tuple((int(u), int(v)) for u, v in arcs)
        for u, v in arcs:
            if not (0 <= u < vertices and 0 <= v < vertices):
                raise ValueError(f"arc ({u},{v}) outside vertex range")
        if labels is None:
            labels = tuple(f"e{i}" for i in range(len(arcs)))
        else:
            labels = tuple(str(x) for x in labels)
        if len(labels) != len(arcs):
            raise ValueError("label count does not match arc count")
        return cls(vertices, arcs, labels)

    def incidence_rows(self):
        rows = [[Fraction(0)] * len(self.arcs) for _ in range(self.vertices)]
        for j, (u, v) in enumerate(self.arcs):
            if u != v:
                rows[u][j] -= 1
                rows[v][j] += 1
        return mat_from_rows(rows)

    def components(self) -> int:
        parent = list(range(self.vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.arcs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        return len({find(v) for v in range(self.vertices)})

    def to_json_obj(self) -> dict:
        return {
            "vertices": self.vertices,
            "arcs": [[u, v] for u, v in self.arcs],
            "labels": list(self.labels),
        }


def digraph_from_json(obj) -> Digraph:
    return Digraph.make(int(obj["vertices"]), obj["arcs"], obj.get("labels"))


def matrix_from_json(obj):
    labels = [str(x) for x in obj["labels"]]
    rows = [[as_frac(x) for x in row] for row in obj["rows"]]
    for row in rows:
        if len(row) != len(labels):
            raise ValueError("row length does not match label count")
    return mat_from_rows(rows), labels
