"""Binary linear codes, duals and shadows, and the fixed-code machinery for
fixed-point-free involutions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from . import gf2core
from .errors import CodeError, VerificationError
from .gf2core import DEFAULT_CAP, BitMatrix, BitVector, parity


class LinearCode:
    """Subspace of F_2^n, stored by the RREF of a generator matrix.

    Two codes compare equal exactly when their RREFs agree.
    """

    def __init__(self, n: int, rows: Iterable[int] = ()):
        if n < 0:
            raise CodeError("negative length")
        rref, _, pivots = gf2core.reduce(BitMatrix(n, tuple(rows)))
        self.n = n
        self.gen = rref
        self.pivots = tuple(pivots)
        self._table = dict(zip(pivots, rref.rows))
        self._wd_cache: Optional[list[int]] = None

    @classmethod
    def from_strings(cls, rows: Sequence[str], n: Optional[int] = None) -> "LinearCode":
        m = BitMatrix.from_strings(rows, n)
        return cls(m.ncols, m.rows)

    @classmethod
    def from_vectors(cls, vecs: Sequence[BitVector], n: Optional[int] = None) -> "LinearCode":
        m = BitMatrix.from_vectors(vecs, n)
        return cls(m.ncols, m.rows)

    @classmethod
    def zero(cls, n: int) -> "LinearCode":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "LinearCode":
        return cls(n, BitMatrix.identity(n).rows)

    @property
    def k(self) -> int:
        return self.gen.nrows

    dim = k

    @property
    def rows(self) -> tuple[int, ...]:
        return self.gen.rows

    @property
    def all_ones(self) -> int:
        return (1 << self.n) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}], {self.gen.to_strings()})"

    def __contains__(self, v) -> bool:
        bits = v.bits if isinstance(v, BitVector) else v
        if isinstance(v, BitVector) and v.length != self.n:
            raise ValueError(f"length mismatch: {v.length} != {self.n}")
        return gf2core.reduce_against(self._table, bits) == 0

    def __add__(self, other: "LinearCode") -> "LinearCode":
        if other.n != self.n:
            raise CodeError("length mismatch")
        return LinearCode(self.n, self.rows + other.rows)

    def with_vectors(self, *vecs: int) -> "LinearCode":
        return LinearCode(self.n, self.rows + tuple(vecs))

    def __le__(self, other: "LinearCode") -> bool:
        return self.n == other.n and all(r in other for r in self.rows)

    def __lt__(self, other: "LinearCode") -> bool:
        return self <= other and self.k < other.k

    @cached_property
    def dual(self) -> "LinearCode":
        return LinearCode(self.n, gf2core.kernel(self.gen).rows)

    def intersection(self, other: "LinearCode") -> "LinearCode":
        return (self.dual + other.dual).dual

    def codewords(self) -> list[int]:
        return gf2core.span(self.gen)

    def weight_distribution(self, cap: int = DEFAULT_CAP, threads: int = 1) -> list[int]:
        if self._wd_cache is None:
            self._wd_cache = gf2core.weight_distribution(self.rows, self.n, cap=cap, threads=threads)
        return list(self._wd_cache)

    def min_distance(self, cap: int = DEFAULT_CAP, threads: int = 1) -> Optional[int]:
        """Minimum nonzero weight; ``None`` for the zero code."""
        if self.k == 0:
            return None
        wd = self.weight_distribution(cap=cap, threads=threads)
        return next(w for w in range(1, self.n + 1) if wd[w])

    # predicates; all work on the basis only
    def is_self_orthogonal(self) -> bool:
        rows = self.rows
        for i, u in enumerate(rows):
            for v in rows[i:]:
                if parity(u & v):
                    return False
        return True

    def is_self_dual(self) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal()

    def is_doubly_even(self) -> bool:
        # wt(u+v) = wt u + wt v - 2 wt(u&v): basis weights 0 mod 4 plus
        # pairwise orthogonality closes the property under addition
        return all(r.bit_count() % 4 == 0 for r in self.rows) and self.is_self_orthogonal()

    def contains_all_ones(self) -> bool:
        return self.n > 0 and self.all_ones in self

    def is_semi_self_dual(self) -> bool:
        return (
            self.contains_all_ones()
            and self.is_self_orthogonal()
            and self.n - 2 * self.k == 2
        )

    def params(self, cap: int = DEFAULT_CAP) -> tuple[int, int, Optional[int]]:
        return self.n, self.k, self.min_distance(cap=cap)


def dual(C: LinearCode) -> LinearCode:
    return C.dual


def is_semi_self_dual(D: LinearCode) -> bool:
    return D.is_semi_self_dual()


def is_doubly_even(C: LinearCode) -> bool:
    return C.is_doubly_even()


def is_self_orthogonal(C: LinearCode) -> bool:
    return C.is_self_orthogonal()


def contains_all_ones(C: LinearCode) -> bool:
    return C.contains_all_ones()


def min_distance(C: LinearCode, cap: int = DEFAULT_CAP, threads: int = 1) -> Optional[int]:
    return C.min_distance(cap=cap, threads=threads)


def direct_sum(*codes: LinearCode) -> LinearCode:
    rows: list[int] = []
    shift = 0
    for C in codes:
        rows += [r << shift for r in C.rows]
        shift += C.n
    return LinearCode(shift, rows)


def repetition_pairs(n: int) -> LinearCode:
    """Direct sum of n/2 copies of the [2,1] code <11>."""
    if n % 2:
        raise CodeError("length must be even")
    return LinearCode(n, [0b11 << (2 * i) for i in range(n // 2)])


# --- doubly-even subcode and shadows ----------------------------------------

def doubly_even_subcode(D: LinearCode) -> LinearCode:
    """Kernel of c -> wt(c)/2 mod 2 on a self-orthogonal code."""
    if not D.is_self_orthogonal():
        raise CodeError("doubly-even subcode needs a self-orthogonal code")
    rows = list(D.rows)
    bad = [r for r in rows if r.bit_count() % 4 == 2]
    if not bad:
        return D
    pivot = bad[0]
    return LinearCode(D.n, [r ^ pivot if r.bit_count() % 4 == 2 else r for r in rows if r != pivot])


@dataclass(frozen=True)
class Coset:
    """The set ``rep + base``."""

    rep: int
    base: LinearCode

    @property
    def n(self) -> int:
        return self.base.n

    def __contains__(self, v: int) -> bool:
        return (v ^ self.rep) in self.base

    def __len__(self) -> int:
        return 1 << self.base.k

    def words(self) -> list[int]:
        return [self.rep ^ w for w in self.base.codewords()]

    def weight_distribution(self, cap: int = DEFAULT_CAP, threads: int = 1) -> list[int]:
        return gf2core.weight_distribution(self.base.rows, self.n, offset=self.rep, cap=cap, threads=threads)

    def min_weight(self, cap: int = DEFAULT_CAP) -> int:
        wd = self.weight_distribution(cap=cap)
        return next(w for w, c in enumerate(wd) if c)


def shadow(D: LinearCode) -> Coset:
    """``D_0^perp \\ D^perp`` for self-orthogonal D that is not doubly-even."""
    if not D.is_self_orthogonal():
        raise CodeError("shadow needs a self-orthogonal code")
    D0 = doubly_even_subcode(D)
    if D0 == D:
        raise CodeError(
            "code is doubly-even; use self_dual_shadow(F) for a self-dual F whose "
            "doubly-even subcode is D"
        )
    base = D.dual
    rep = next(r for r in D0.dual.rows if r not in base)
    return Coset(rep, base)


def self_dual_shadow(F: LinearCode) -> Coset:
    """``F_0^perp \\ F`` for a self-dual F that is not doubly-even.

    With ``D = F_0`` this is the set ``D^perp \\ F``.
    """
    if not F.is_self_dual():
        raise CodeError("self_dual_shadow needs a self-dual code")
    if F.is_doubly_even():
        raise CodeError("self-dual code is doubly-even; its shadow is empty")
    D = doubly_even_subcode(F)
    rep = next(r for r in D.dual.rows if r not in F)
    return Coset(rep, F)


def selfdual_between(D: LinearCode) -> tuple[LinearCode, LinearCode, LinearCode]:
    """The three self-dual codes strictly between D and D^perp."""
    if not D.is_semi_self_dual():
        raise CodeError("selfdual_between needs a semi self-dual code")
    reps: list[int] = []
    cur = D
    for r in D.dual.rows:
        if r not in cur:
            reps.append(r)
            cur = cur.with_vectors(r)
        if len(reps) == 2:
            break
    v1, v2 = reps
    out = tuple(D.with_vectors(v) for v in (v1, v2, v1 ^ v2))
    for C in out:
        if not C.is_self_dual():
            raise VerificationError("intermediate code is not self-dual")
    return out  # type: ignore[return-value]


def extract_semi_selfdual(E: LinearCode) -> LinearCode:
    """Grow a self-orthogonal E containing 1 to a semi self-dual code.

    Vectors are adjoined in the RREF basis order of E^perp; when none of
    those is usable the RREF basis of the current dual is used instead.
    """
    if not E.is_self_orthogonal():
        raise CodeError("E must be self-orthogonal")
    if not E.contains_all_ones():
        raise CodeError("E must contain the all-ones vector")
    codim = E.n - 2 * E.k
    if codim < 2 or codim % 2:
        raise CodeError(f"codimension {codim} of E in its dual cannot be reduced to 2")
    D = E
    candidates = E.dual.rows
    while D.n - 2 * D.k > 2:
        pick = next((v for v in candidates if v not in D and all(not parity(v & r) for r in D.rows)), None)
        if pick is None:
            pick = next(v for v in D.dual.rows if v not in D)
        D = D.with_vectors(pick)
    return D


# --- involutions ---------------------------------------------------------------

@dataclass(frozen=True)
class Involution:
    images: tuple[int, ...]

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        if sorted(imgs) != list(range(1, n + 1)):
            raise CodeError("images do not form a permutation of 1..n")
        for i, j in enumerate(imgs, start=1):
            if imgs[j - 1] != i:
                raise CodeError(f"not an involution: {i} -> {j} -> {imgs[j - 1]}")

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[tuple[int, int]]) -> "Involution":
        imgs = list(range(1, n + 1))
        for a, b in cycles:
            imgs[a - 1], imgs[b - 1] = b, a
        return cls(tuple(imgs))

    @property
    def n(self) -> int:
        return len(self.images)

    @property
    def fixed_point_free(self) -> bool:
        return all(j != i for i, j in enumerate(self.images, start=1))

    def apply(self, v: int) -> int:
        out = 0
        while v:
            low = v & -v
            i = low.bit_length() - 1
            out |= 1 << (self.images[i] - 1)
            v ^= low
        return out

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for i, j in enumerate(self.images, start=1):
            if i in seen:
                continue
            seen.update((i, j))
            out.append((i,) if i == j else (min(i, j), max(i, j)))
        return out


@dataclass(frozen=True)
class PairScheme:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((min(a, b), max(a, b)) for a, b in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        flat = [x for p in pairs for x in p]
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise CodeError("pairs must be disjoint and cover 1..n")

    @classmethod
    def from_involution(cls, sigma: Involution) -> "PairScheme":
        if not sigma.fixed_point_free:
            raise CodeError("involution has fixed points; no perfect pairing")
        return cls(tuple(sigma.orbits()))  # type: ignore[arg-type]

    @property
    def n(self) -> int:
        return 2 * len(self.pairs)


def stabilizes(C: LinearCode, sigma: Involution) -> bool:
    if sigma.n != C.n:
        raise CodeError(f"length mismatch: code {C.n}, permutation {sigma.n}")
    return all(sigma.apply(r) in C for r in C.rows)


def _left_kernel(rows: Sequence[int], n: int) -> list[int]:
    """Coefficient vectors a with sum a_i rows[i] == 0."""
    mask = (1 << n) - 1
    table: dict[int, int] = {}
    out = []
    for i, r in enumerate(rows):
        x = r | (1 << (n + i))
        while x & mask:
            low = x & mask
            p = (low & -low).bit_length() - 1
            if p in table:
                x ^= table[p]
            else:
                table[p] = x
                break
        else:
            out.append(x >> n)
    return out


def fixed_code(C: LinearCode, sigma: Involution) -> LinearCode:
    """``{c in C : sigma(c) = c}``, as a code of length n."""
    if not stabilizes(C, sigma):
        raise CodeError("involution does not stabilize the code")
    rows = C.rows
    diffs = [r ^ sigma.apply(r) for r in rows]
    fixed = []
    for coeffs in _left_kernel(diffs, C.n):
        w = 0
        for i, r in enumerate(rows):
            if coeffs >> i & 1:
                w ^= r
        fixed.append(w)
    return LinearCode(C.n, fixed)


def project_pi(Cfix: LinearCode, scheme: PairScheme) -> LinearCode:
    """Read the smaller coordinate of each pair; words must be pair-constant."""
    if scheme.n != Cfix.n:
        raise CodeError("pair scheme length differs from code length")
    out = []
    for r in Cfix.rows:
        w = 0
        for idx, (a, b) in enumerate(scheme.pairs):
            ba, bb = r >> (a - 1) & 1, r >> (b - 1) & 1
            if ba != bb:
                raise CodeError(f"word {BitVector(Cfix.n, r)} is not constant on pair ({a},{b})")
            w |= ba << idx
        out.append(w)
    return LinearCode(len(scheme.pairs), out)


def is_free_module(C: LinearCode, sigma: Involution) -> tuple[bool, LinearCode]:
    """Free-module test over the group algebra of <sigma>.

    Returns ``(pi(C(sigma)) is self-dual, pi(C(sigma)))``.
    """
    if not C.is_self_dual():
        raise CodeError("code is not self-dual")
    if not sigma.fixed_point_free:
        raise CodeError("involution has fixed points")
    if not stabilizes(C, sigma):
        raise CodeError("involution does not stabilize the code")
    scheme = PairScheme.from_involution(sigma)
    image = project_pi(fixed_code(C, sigma), scheme)
    trace = project_pi(LinearCode(C.n, [r ^ sigma.apply(r) for r in C.rows]), scheme)
    if trace != image.dual:
        raise VerificationError("pi(c + sigma(c)) differs from the dual of pi(C(sigma))")
    return image.is_self_dual(), image


# --- extended quadratic-residue codes ------------------------------------------

def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % p for p in range(2, int(q ** 0.5) + 1))


def quadratic_residues(q: int) -> set[int]:
    return {x * x % q for x in range(1, q)}


def _pmod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a and a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def _pmulmod(a: int, b: int, f: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a = _pmod(a << 1, f)
    return _pmod(r, f)


def _ppowmod(a: int, e: int, f: int) -> int:
    r = 1
    a = _pmod(a, f)
    while e:
        if e & 1:
            r = _pmulmod(r, a, f)
        a = _pmulmod(a, a, f)
        e >>= 1
    return r


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def _irreducible(m: int) -> int:
    """Smallest irreducible binary polynomial of degree m (Ben-Or test)."""
    for tail in range(1, 1 << m, 2):
        f = (1 << m) | tail
        x = 0b10
        ok = True
        for _ in range(m // 2):
            x = _pmulmod(x, x, f)
            if _pgcd(f, x ^ 0b10) != 1:
                ok = False
                break
        if ok:
            return f
    raise AssertionError("no irreducible polynomial found")


def _qr_generator(q: int) -> int:
    """Generator polynomial (as a bit mask) with roots beta^r, r a residue."""
    m = 1
    while pow(2, m, q) != 1:
        m += 1
    f = _irreducible(m)
    e = ((1 << m) - 1) // q
    beta = next(b for b in range(2, 1 << m) if _ppowmod(b, e, f) != 1)
    beta = _ppowmod(beta, e, f)
    poly = [1]  # coefficients in GF(2^m), low degree first
    for r in sorted(quadratic_residues(q)):
        root = _ppowmod(beta, r, f)
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(poly):
            nxt[i + 1] ^= c
            nxt[i] ^= _pmulmod(c, root, f)
        poly = nxt
    if any(c not in (0, 1) for c in poly):
        raise VerificationError("QR generator polynomial is not binary")
    return sum(c << i for i, c in enumerate(poly))


def extended_qr_code(q: int) -> LinearCode:
    """Extended binary QR code of length q+1 (coordinates 0..q-1, then infinity)."""
    if not _is_prime(q) or q % 8 not in (1, 7):
        raise CodeError(f"q={q} must be a prime congruent to +-1 mod 8")
    if q > 60:
        raise CodeError(f"q={q} above supported range (<= 60)")
    g = _qr_generator(q)
    k = q - (g.bit_length() - 1)
    rows = []
    for j in range(k):
        r = g << j
        rows.append(r | (parity(r) << q))
    C = LinearCode(q + 1, rows)
    if q % 8 == 7 and not (C.is_self_dual() and C.is_doubly_even()):
        raise VerificationError("extended QR code is not doubly-even self-dual")
    return C


def qr_involution(q: int) -> Involution:
    """z -> -1/z on F_q with 0 <-> infinity; coordinate of z is z+1, infinity is q+1."""
    if not _is_prime(q) or q % 8 not in (1, 7):
        raise CodeError(f"q={q} must be a prime congruent to +-1 mod 8")
    if (q - 1) in quadratic_residues(q):
        raise CodeError(f"-1 is a square mod {q}: involution has fixed points")
    images = [0] * (q + 1)
    images[0] = q + 1
    images[q] = 1
    for z in range(1, q):
        images[z] = (-pow(z, -1, q)) % q + 1
    sigma = Involution(tuple(images))
    if not sigma.fixed_point_free:
        raise VerificationError("involution has fixed points")
    return sigma
