"""Command-line front end.

Code files hold a header line ``n k`` followed by k binary rows of length n
(leftmost character is coordinate 1).  Lines starting with ``#`` and blank
lines are ignored.  Permutation files hold one line of n space-separated
1-based images.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from . import __version__
from .bounds import coverage_report, feasibility_search, prove_bound, theorem_bound
from .codes import Involution, LinearCode, is_free_module
from .enumerators import (
    F_from_decomposition,
    alpha,
    binom_parity,
    build_B,
    enumerate_weights,
    gamma,
    gleason_decompose,
)
from .errors import CodeError, EnumerationTooLarge, NotInInvariantModule, VerificationError
from .explorer import SearchConfig, involution_pipeline, sharpness_search
from .gf2core import DEFAULT_CAP, BitMatrix, rank

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class FileFormatError(ValueError):
    def __init__(self, path: str, line: int, msg: str):
        self.path, self.line = path, line
        super().__init__(f"{path}:{line}: {msg}")


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def parse_code_file(text: str, path: str = "<input>") -> LinearCode:
    lines = list(_content_lines(text))
    if not lines:
        raise FileFormatError(path, 1, "missing header 'n k'")
    no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise FileFormatError(path, no, f"bad header {header!r}; expected 'n k'")
    n, k = map(int, parts)
    rows = lines[1:]
    if len(rows) != k:
        last = rows[-1][0] if rows else no
        raise FileFormatError(path, last, f"expected {k} rows, found {len(rows)}")
    for no, row in rows:
        if len(row) != n or any(ch not in "01" for ch in row):
            raise FileFormatError(path, no, f"row {row!r} is not a binary string of length {n}")
    m = BitMatrix.from_strings([r for _, r in rows], n)
    r = rank(m)
    if r < k:
        warnings.warn(f"{path}: {k} rows have rank {r}; reduced on load", stacklevel=2)
    return LinearCode(n, m.rows)


def format_code_file(C: LinearCode, comment: Optional[str] = None) -> str:
    out = [f"# {comment}"] if comment else []
    out.append(f"{C.n} {C.k}")
    out.extend(C.gen.to_strings())
    return "\n".join(out) + "\n"


def parse_perm_file(text: str, path: str = "<input>") -> Involution:
    lines = list(_content_lines(text))
    if len(lines) != 1:
        raise FileFormatError(path, lines[1][0] if len(lines) > 1 else 1, "expected exactly one line of images")
    no, line = lines[0]
    try:
        images = tuple(int(x) for x in line.split())
    except ValueError:
        raise FileFormatError(path, no, "images must be integers") from None
    if sorted(images) != list(range(1, len(images) + 1)):
        raise FileFormatError(path, no, "images are not a permutation of 1..n")
    try:
        return Involution(images)
    except CodeError as exc:
        raise FileFormatError(path, no, str(exc)) from None


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# --- reports ---------------------------------------------------------------------

def _plain(x: Any) -> Any:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def render(report: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(_plain(report), indent=2, sort_keys=True)
    lines = []
    for key, val in report.items():
        val = _plain(val)
        if isinstance(val, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {k}: {v}" for k, v in val.items())
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            lines.append(f"{key}:")
            for item in val:
                lines.append("  - " + ", ".join(f"{k}={v}" for k, v in item.items()))
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def _yn(b: bool) -> str:
    return "yes" if b else "no"


# --- commands --------------------------------------------------------------------

def cmd_analyze(args) -> dict:
    C = parse_code_file(_read(args.path), args.path)
    flags = {
        "self_orthogonal": C.is_self_orthogonal(),
        "doubly_even": C.is_doubly_even(),
        "contains_all_ones": C.contains_all_ones(),
        "semi_self_dual": C.is_semi_self_dual(),
        "self_dual": C.is_self_dual(),
    }
    res: dict[str, Any] = {"n": C.n, "dim": C.k}
    res.update({k: _yn(v) for k, v in flags.items()})

    def capped(f: Callable[[], Any]) -> Any:
        try:
            return f()
        except EnumerationTooLarge as exc:
            return f"not computed ({exc})"

    res["min_distance"] = capped(lambda: C.min_distance(cap=args.cap, threads=args.threads))
    res["dual_distance"] = capped(lambda: C.dual.min_distance(cap=args.cap, threads=args.threads))
    res["weight_enumerator"] = capped(lambda: enumerate_weights(C, cap=args.cap, threads=args.threads).to_str())
    if flags["semi_self_dual"] and not flags["doubly_even"]:
        def gleason():
            dec = gleason_decompose(build_B(C, cap=args.cap))
            return dec

        dec = capped(gleason)
        if isinstance(dec, str):
            res["gleason"] = dec
        else:
            res["e"] = list(dec.e)
            res["eps"] = list(dec.eps)
            res["F"] = F_from_decomposition(dec).to_str()
    return {"command": "analyze", "inputs": {"path": args.path}, "results": res}


def cmd_bound(args) -> dict:
    if args.prove:
        if args.doubly_even:
            raise ValueError("--prove covers the general bound only")
        rep = prove_bound(args.n)
    else:
        rep = theorem_bound(args.n, doubly_even=args.doubly_even)
    res: dict[str, Any] = {"bound": rep.bound, "case": rep.case}
    cert = rep.certificate
    if args.prove:
        if cert is None:
            res["certificate"] = "none (no enumerator obstruction at this length)"
        else:
            if not cert.verify():
                raise VerificationError(f"certificate failed to re-verify: {cert}")
            res["certificate"] = cert.describe()
            res["certificate_index"] = cert.index
            res["certificate_kind"] = cert.kind
            res["certificate_verified"] = "yes"
    inputs = {"n": args.n, "doubly_even": args.doubly_even, "prove": args.prove}
    return {"command": "bound", "inputs": inputs, "results": res}


def cmd_sharpness(args) -> dict:
    cfg = SearchConfig(
        n=args.n,
        max_neighbor_steps=args.steps,
        rng_seed=args.seed,
        doubly_even_only=args.doubly_even,
        cap=args.cap,
        start=args.start,
    )
    r = sharpness_search(cfg)
    res: dict[str, Any] = {
        "best_dual_distance": r.best_dual_distance,
        "bound": r.bound,
        "sharp": _yn(r.is_sharp),
        "steps": r.steps,
        "codes_visited": r.codes_visited,
        "hyperplanes_scanned": r.hyperplanes_scanned,
    }
    if r.witness is not None:
        W = r.witness
        check = W.dual.min_distance(cap=args.cap, threads=args.threads)
        if check != r.best_dual_distance:
            raise VerificationError(f"witness dual distance {check} != reported {r.best_dual_distance}")
        res["start"] = r.start
        res["witness_params"] = f"[{W.n},{W.k}]"
        res["witness_dual_params"] = f"[{W.n},{W.dual.k},{check}]"
        res["witness_doubly_even"] = _yn(W.is_doubly_even())
        res["witness_rows"] = W.gen.to_strings()
    inputs = {"n": args.n, "seed": args.seed, "steps": args.steps, "doubly_even": args.doubly_even,
              "start": args.start}
    return {"command": "sharpness", "inputs": inputs, "results": res}


def cmd_involution(args) -> dict:
    if args.q is not None:
        if args.code or args.perm:
            raise ValueError("give either q or --code/--perm, not both")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rep = involution_pipeline(args.q, cap=args.cap, threads=args.threads)
        n, k, d = rep.code_params
        pn, pk, pd = rep.pi_params
        res = {
            "summary": rep.summary(),
            "code": f"[{n},{k},{d}]",
            "extremal": "n/a" if rep.extremal is None else _yn(rep.extremal),
            "fixed_point_free": "yes",
            "stabilizes": "yes",
            "fixed_code_dim": rep.fixed_dim,
            "pi_image": f"[{pn},{pk},{pd}]",
            "notes": "; ".join(rep.notes),
        }
        return {"command": "involution", "inputs": {"q": args.q}, "results": res}
    if not (args.code and args.perm):
        raise ValueError("need q, or both --code and --perm")
    C = parse_code_file(_read(args.code), args.code)
    sigma = parse_perm_file(_read(args.perm), args.perm)
    if sigma.n != C.n:
        raise ValueError(f"permutation length {sigma.n} differs from code length {C.n}")
    free, image = is_free_module(C, sigma)
    state = "FREE" if free else "NOT FREE"
    kind = "self-dual" if image.is_self_dual() else "not self-dual"
    res = {
        "summary": f"{state}; pi-image {kind} [{image.n},{image.k}]",
        "pi_image_rows": image.gen.to_strings(),
    }
    return {"command": "involution", "inputs": {"code": args.code, "perm": args.perm}, "results": res}


def cmd_series(args) -> dict:
    if args.kind == "alpha":
        i, N = _ints(args.values, 2, "alpha i N")
        value: Any = alpha(i, N)
    elif args.kind == "gamma":
        h, k, N = _ints(args.values, 3, "gamma h k N")
        value = gamma(h, k, N)
    else:
        (mu,) = _ints(args.values, 1, "parity mu")
        value = "odd" if binom_parity(mu) else "even"
    return {"command": "series", "inputs": {"kind": args.kind, "values": args.values}, "results": {"value": value}}


def _ints(vals: Sequence[str], count: int, usage: str) -> list[int]:
    if len(vals) != count:
        raise ValueError(f"usage: series {usage}")
    try:
        return [int(v) for v in vals]
    except ValueError:
        raise ValueError(f"usage: series {usage} (integers)") from None


def cmd_coverage(args) -> dict:
    cov = coverage_report(args.limit)
    res = {
        "covered": cov.covered,
        "total": cov.total,
        "fraction": cov.fraction,
        "summary": f"covered {cov.covered}/{cov.total} ≈ {float(cov.fraction):.2f}",
    }
    return {"command": "coverage", "inputs": {"limit": args.limit}, "results": res}


def cmd_feasible(args) -> dict:
    sols = feasibility_search(args.n, args.d, range_cap=args.cap)
    res: dict[str, Any] = {"solutions": len(sols)}
    if sols:
        s = sols[0]
        res["first_eps_free"] = list(s.eps_free)
        res["first_flags"] = {k: _yn(v) if v is not None else "n/a" for k, v in s.flags.items()}
        res["first_F"] = s.F_poly.to_str()
        res["all_F_ok"] = _yn(all(x.F_ok for x in sols))
        res["all_B_prefix_ok"] = _yn(all(x.B_prefix_ok for x in sols))
        res["eps_free"] = [list(x.eps_free) for x in sols]
    return {"command": "feasible", "inputs": {"n": args.n, "d": args.d, "cap": args.cap}, "results": res}


# --- argument parsing ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap on code dimension")
    common.add_argument("--threads", type=int, default=1, help="worker threads for enumeration")
    common.add_argument("--timing", action="store_true", help="append wall-clock time to the report")

    p = argparse.ArgumentParser(prog="semiselfdual", description="Semi self-dual binary code tools.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="properties of a code file")
    a.add_argument("path")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bound", parents=[common], help="dual-distance bound for length n")
    b.add_argument("n", type=int)
    b.add_argument("--doubly-even", action="store_true")
    b.add_argument("--prove", action="store_true", help="attach an enumerator certificate")
    b.set_defaults(func=cmd_bound)

    s = sub.add_parser("sharpness", parents=[common], help="neighbor-walk search for sharp witnesses")
    s.add_argument("n", type=int)
    s.add_argument("--seed", type=int, default=1)
    s.add_argument("--steps", type=int, default=10_000)
    s.add_argument("--doubly-even", action="store_true")
    s.add_argument("--start", choices=["auto", "repetition", "golay"], default="auto")
    s.set_defaults(func=cmd_sharpness)

    i = sub.add_parser("involution", parents=[common], help="free-module test for an involution")
    i.add_argument("q", type=int, nargs="?")
    i.add_argument("--code")
    i.add_argument("--perm")
    i.set_defaults(func=cmd_involution)

    r = sub.add_parser("series", parents=[common], help="alpha i N | gamma h k N | parity mu")
    r.add_argument("kind", choices=["alpha", "gamma", "parity"])
    r.add_argument("values", nargs="+")
    r.set_defaults(func=cmd_series)

    c = sub.add_parser("coverage", parents=[common], help="share of lengths covered by the free-module criterion")
    c.add_argument("--limit", type=int, default=153)
    c.set_defaults(func=cmd_coverage)

    f = sub.add_parser("feasible", parents=[common], help="putative enumerators at n = 24mu")
    f.add_argument("n", type=int)
    f.add_argument("d", type=int)
    # for this command --cap bounds the free eps values
    f.set_defaults(func=cmd_feasible, cap=64)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except (FileFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (VerificationError, NotInInvariantModule) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (CodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - t0, 3)
    print(render(report, args.json))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
