"""Search harnesses: neighbor walks over self-dual codes with hyperplane
scans, and the involution / free-module pipeline on extended QR codes."""

from __future__ import annotations

import dataclasses
import random
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .bounds import theorem_bound
from .codes import (
    Involution,
    LinearCode,
    extended_qr_code,
    extract_semi_selfdual,
    fixed_code,
    is_free_module,
    qr_involution,
    repetition_pairs,
    self_dual_shadow,
    stabilizes,
)
from .enumerators import (
    F_from_decomposition,
    binom_parity,
    build_B,
    gleason_decompose,
    shadow_F,
)
from .errors import CodeError, EnumerationTooLarge, VerificationError
from .gf2core import DEFAULT_CAP, BitVector, parity

__all__ = [
    "SearchConfig",
    "SharpnessResult",
    "neighbor",
    "coset_leader_weights",
    "sharpness_search",
    "merge_results",
    "parallel_sharpness",
    "enumerator_identity_holds",
    "InvolutionReport",
    "involution_pipeline",
    "NonFreeReport",
    "non_free_witness",
]


def neighbor(C: LinearCode, v: BitVector | int) -> LinearCode:
    """The self-dual neighbor ``(C & v^perp) + <v>``."""
    bits = v.bits if isinstance(v, BitVector) else v
    if isinstance(v, BitVector) and v.length != C.n:
        raise CodeError(f"length mismatch: {v.length} != {C.n}")
    if not C.is_self_dual():
        raise CodeError("neighbor needs a self-dual code")
    if bits.bit_count() % 2:
        raise CodeError("v has odd weight")
    if bits in C:
        raise CodeError("v already lies in C")
    rows = C.rows
    odd = [r for r in rows if parity(r & bits)]
    # odd is non-empty: v is not in C = C^perp
    pivot = odd[0]
    kept = [r ^ pivot if parity(r & bits) else r for r in rows if r != pivot]
    out = LinearCode(C.n, kept + [bits])
    if not out.is_self_dual():
        raise VerificationError("neighbor is not self-dual")
    return out


# --- hyperplane scan ------------------------------------------------------------------

def _syndrome_columns(C: LinearCode) -> np.ndarray:
    """Syndrome of each unit vector with respect to the RREF basis of C."""
    cols = []
    for j in range(C.n):
        s = 0
        for i, r in enumerate(C.rows):
            s |= (r >> j & 1) << i
        cols.append(s)
    return np.array(cols, dtype=np.int64)


def coset_leader_weights(C: LinearCode, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Coset leader weight of ``x + C^perp`` indexed by syndrome.

    The syndrome of x has bit i equal to ``x . g_i`` for the RREF rows g_i of
    C.  Leader weights are distances from 0 in the Cayley graph generated by
    the unit-vector syndromes, found breadth first.
    """
    k = C.k
    if k > cap:
        raise EnumerationTooLarge(k, cap)
    cols = np.unique(_syndrome_columns(C))
    dist = np.full(1 << k, -1, dtype=np.int64)
    dist[0] = 0
    frontier = np.array([0], dtype=np.int64)
    w = 0
    while frontier.size:
        w += 1
        nxt = (frontier[:, None] ^ cols[None, :]).ravel()
        nxt = np.unique(nxt[dist[nxt] < 0])
        dist[nxt] = w
        frontier = nxt
    return dist


def _hyperplane(C: LinearCode, s: int) -> LinearCode:
    """``{c in C : c . u = 0}`` where u has syndrome s."""
    rows = C.rows
    hit = [r for i, r in enumerate(rows) if s >> i & 1]
    pivot = hit[0]
    return LinearCode(C.n, [r ^ pivot if s >> i & 1 else r for i, r in enumerate(rows) if r != pivot])


def _de_functional(C: LinearCode) -> int:
    """Syndrome of the functional c -> wt(c)/2 mod 2, whose kernel is C_0."""
    return sum(((r.bit_count() >> 1) & 1) << i for i, r in enumerate(C.rows))


@dataclass(frozen=True)
class SearchConfig:
    n: int
    max_neighbor_steps: int = 10_000
    rng_seed: int = 1
    hyperplane_limit: int = 4095
    doubly_even_only: bool = False
    cap: int = DEFAULT_CAP
    # "auto": repetition code, then the Golay code when n = 24
    start: str = "auto"


@dataclass
class SharpnessResult:
    n: int
    best_dual_distance: int
    witness: Optional[LinearCode]
    bound: int
    is_sharp: bool
    steps: int = 0
    codes_visited: int = 0
    hyperplanes_scanned: int = 0
    start: str = ""
    seed: int = 1


def _random_even(rng: random.Random, n: int, mod4: bool) -> int:
    if mod4:
        w = rng.choice(range(4, n + 1, 4))
        return sum(1 << i for i in rng.sample(range(n), w))
    v = rng.getrandbits(n)
    return v ^ 1 if v.bit_count() % 2 else v


def _step_vector(rng: random.Random, C: LinearCode, cfg: SearchConfig) -> int:
    n = cfg.n
    if cfg.doubly_even_only and n % 8 == 0 and not C.is_doubly_even() and rng.random() < 0.5:
        # a shadow vector of C has weight 0 mod 4 here and leads to a doubly-even neighbor
        S = self_dual_shadow(C)
        coeffs = rng.getrandbits(C.k)
        v = S.rep
        for i, r in enumerate(C.rows):
            if coeffs >> i & 1:
                v ^= r
        return v
    while True:
        v = _random_even(rng, n, cfg.doubly_even_only and n % 4 == 0)
        if v not in C:
            return v


def _walk_starts(cfg: SearchConfig) -> list[tuple[str, LinearCode]]:
    if cfg.start not in ("auto", "repetition", "golay"):
        raise ValueError(f"unknown start {cfg.start!r}")
    if cfg.start == "golay" and cfg.n != 24:
        raise ValueError("the Golay start needs n = 24")
    starts = []
    if cfg.start in ("auto", "repetition"):
        starts.append(("repetition", repetition_pairs(cfg.n)))
    if cfg.start == "golay" or (cfg.start == "auto" and cfg.n == 24):
        starts.append(("golay", extended_qr_code(23)))
    return starts


def sharpness_search(
    cfg: SearchConfig,
    on_code: Optional[Callable[[LinearCode], None]] = None,
    on_semi: Optional[Callable[[LinearCode, int], None]] = None,
) -> SharpnessResult:
    """Largest dual distance of a semi self-dual code found by the walk.

    Every scanned hyperplane is checked against :func:`theorem_bound`; a
    violation raises ``VerificationError``.  ``on_code`` sees every visited
    self-dual code and ``on_semi`` every scanned semi self-dual code with
    its dual distance (building those codes costs extra time).
    """
    n = cfg.n
    if n % 2 or n < 4:
        raise ValueError(f"length {n} must be even and >= 4")
    if cfg.doubly_even_only and n % 4:
        raise ValueError(f"no doubly-even semi self-dual code of length {n}")
    bound_any = theorem_bound(n).bound
    bound_de = theorem_bound(n, doubly_even=True).bound if n % 4 == 0 else None
    target = bound_de if cfg.doubly_even_only else bound_any

    best = SharpnessResult(n, 0, None, target, False, seed=cfg.rng_seed)
    for name, start in _walk_starts(cfg):
        rng = random.Random(f"{cfg.rng_seed}:{name}")
        C = start
        for step in range(cfg.max_neighbor_steps + 1):
            if step:
                C = neighbor(C, _step_vector(rng, C, cfg))
            best.steps += 1 if step else 0
            best.codes_visited += 1
            if on_code is not None:
                on_code(C)
            dd, s = _scan(C, cfg, bound_any, bound_de, on_semi, best)
            if s is not None and dd > best.best_dual_distance:
                best.best_dual_distance = dd
                best.witness = _hyperplane(C, s)
                best.start = name
            if best.best_dual_distance >= target:
                best.is_sharp = True
                return best
    return best


def _scan(C, cfg, bound_any, bound_de, on_semi, tally) -> tuple[int, Optional[int]]:
    k = C.k
    dC = C.min_distance(cap=cfg.cap)
    c_de = C.is_doubly_even()
    if cfg.doubly_even_only and not c_de:
        s0 = _de_functional(C)
        if s0.bit_count() % 2:
            return 0, None
        cand = np.array([s0], dtype=np.int64)
    else:
        cand = np.arange(1, 1 << k, dtype=np.int64)
        # D contains 1 iff the syndrome has even weight (1 has all-one coordinates)
        cand = cand[np.bitwise_count(cand) % 2 == 0][: cfg.hyperplane_limit]
    if cand.size == 0:
        return 0, None
    leaders = coset_leader_weights(C, cap=cfg.cap)
    dd = np.minimum(leaders[cand], dC)
    tally.hyperplanes_scanned += int(cand.size)

    if c_de:
        limit = np.full(cand.size, bound_de)
    else:
        limit = np.full(cand.size, bound_any)
        if bound_de is not None:
            limit[cand == _de_functional(C)] = bound_de
    if np.any(dd > limit):
        j = int(np.argmax(dd > limit))
        raise VerificationError(
            f"dual distance {int(dd[j])} exceeds the bound {int(limit[j])} at n={C.n}; "
            f"code {C!r}, syndrome {int(cand[j])}"
        )
    if on_semi is not None:
        for s, d in zip(cand.tolist(), dd.tolist()):
            on_semi(_hyperplane(C, s), d)
    j = int(np.argmax(dd))
    return int(dd[j]), int(cand[j])


def merge_results(results: Sequence[SharpnessResult]) -> SharpnessResult:
    """Keep the best witness; ties go to the earliest result."""
    if not results:
        raise ValueError("nothing to merge")
    return max(results, key=lambda r: r.best_dual_distance)


def parallel_sharpness(cfg: SearchConfig, seeds: Sequence[int], threads: int = 1) -> SharpnessResult:
    """Independent walks with the given seeds, merged by maximum."""
    cfgs = [dataclasses.replace(cfg, rng_seed=s) for s in seeds]
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(sharpness_search, cfgs))
    return merge_results(results)


def enumerator_identity_holds(D: LinearCode, cap: int = DEFAULT_CAP) -> bool:
    """shadow_F(D) agrees with the Gleason route and every eps_i is a
    non-negative integer."""
    dec = gleason_decompose(build_B(D, cap=cap))
    return shadow_F(D, cap=cap) == F_from_decomposition(dec) and dec.eps_nonnegative_integers()


# --- involution pipeline -----------------------------------------------------------

@dataclass
class InvolutionReport:
    q: int
    code_params: tuple[int, int, int]
    extremal: Optional[bool]
    images: tuple[int, ...]
    fixed_dim: int
    free: bool
    predicted_free: Optional[bool]
    pi_params: tuple[int, int, int]
    pi_self_dual: bool
    notes: list[str] = field(default_factory=list)

    def summary(self) -> str:
        n, k, _ = self.pi_params
        state = "FREE" if self.free else "NOT FREE"
        kind = "self-dual" if self.pi_self_dual else "not self-dual"
        return f"{state}; pi-image {kind} [{n},{k}]"


def _prediction(n: int) -> Optional[bool]:
    """Freeness predicted for an extremal code of length n = 24m, when known."""
    if n % 24:
        return None
    m = n // 24
    if m % 2:
        return True
    return True if binom_parity(m // 2) else None


def involution_pipeline(q: int, cap: int = DEFAULT_CAP, threads: int = 1) -> InvolutionReport:
    if q not in (23, 47):
        warnings.warn(f"q={q} is outside the extremal cases 23 and 47", stacklevel=2)
    sigma = qr_involution(q)
    C = extended_qr_code(q)
    if not C.is_self_dual():
        raise VerificationError(f"extended QR code for q={q} is not self-dual")
    n = C.n
    d = C.min_distance(cap=cap, threads=threads)
    extremal = None
    if n % 24 == 0:
        m = n // 24
        extremal = d == 4 * m + 4
        if q in (23, 47) and not extremal:
            raise VerificationError(f"expected minimum distance {4 * m + 4}, got {d}")
    if not sigma.fixed_point_free:
        raise VerificationError("involution has fixed points")
    if not stabilizes(C, sigma):
        raise VerificationError(f"involution does not stabilize the QR code for q={q}")
    Cfix = fixed_code(C, sigma)
    free, image = is_free_module(C, sigma)
    if free != (Cfix.k == C.k // 2):
        raise VerificationError("free-module test disagrees with the dimension count")
    predicted = _prediction(n)
    if predicted is not None and free != predicted:
        raise VerificationError(f"q={q}: expected a free module, pi-image has dim {image.k}")
    dpi = image.min_distance(cap=cap, threads=threads)
    notes = []
    if dpi is not None and 2 * dpi < d:
        raise VerificationError(f"d(pi) = {dpi} is below d(C)/2 = {d / 2}")
    notes.append(f"d(pi) = {dpi} >= d(C)/2 = {d // 2}")
    return InvolutionReport(
        q=q,
        code_params=(n, C.k, d),
        extremal=extremal,
        images=sigma.images,
        fixed_dim=Cfix.k,
        free=free,
        predicted_free=predicted,
        pi_params=(image.n, image.k, dpi or 0),
        pi_self_dual=image.is_self_dual(),
        notes=notes,
    )


# --- non-free example -------------------------------------------------------------

@dataclass
class NonFreeReport:
    block_free: bool
    block_fixed_dim: int
    control_free: bool
    two_block_free: bool
    pi_image: LinearCode
    extracted: LinearCode
    chain_holds: bool


def non_free_witness() -> NonFreeReport:
    """Length-4 block with sigma = (1,2)(3,4), its two-block sum, and the
    (1,3)(2,4) control."""
    block = LinearCode.from_strings(["1100", "0011"])
    sigma = Involution.from_cycles(4, [(1, 2), (3, 4)])
    block_free, _ = is_free_module(block, sigma)
    block_fixed = fixed_code(block, sigma).k

    control_free, _ = is_free_module(block, Involution.from_cycles(4, [(1, 3), (2, 4)]))

    C = repetition_pairs(8)
    tau = Involution.from_cycles(8, [(1, 2), (3, 4), (5, 6), (7, 8)])
    two_free, image = is_free_module(C, tau)
    E = image.dual.with_vectors(image.all_ones)
    D = extract_semi_selfdual(E)
    if not D.is_semi_self_dual():
        raise VerificationError("extracted code is not semi self-dual")
    chain = (
        D.contains_all_ones()
        and image.dual <= D
        and D <= D.dual
        and D.dual <= image
    )
    return NonFreeReport(block_free, block_fixed, control_free, two_free, image, D, chain)
