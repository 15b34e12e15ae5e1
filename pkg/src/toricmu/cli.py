"""Command-line front end.

Every ``--fan`` / ``--polytope`` argument accepts either a JSON file or the
name of a built-in fixture (F1, F2', F3, F2, MF1, T3, ...).  Exit codes: 0 when
everything holds, 1 on an identity violation, 2 on bad input.
"""
from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import fixtures as fx
from .dh import MultiPolytope, count_points, count_via_todd, ehrhart, rigidity_check, volume
from .eq_cohomology import GradedQuotient, XiClass, spanning_set
from .errors import ToricError
from .formats import (
    InputError,
    fan_from_data,
    format_rat,
    load_json,
    polytope_from_data,
    xi_from_data,
)
from .morelli import (
    GrassmannPoint,
    corollary_ak_sum,
    mu_todd,
    sample_generic_E,
    sample_plane_for_cones,
    verify_corollary_main,
    verify_mu_additivity,
    verify_td_additivity,
    verify_theorem_main,
)
from .multifan import SimplicialMultiFan, todd_genus, validate
from .polytope import (
    HRepPolytope,
    brute_count,
    ehrhart_interpolate,
    face_volume_geometric,
    interpolate,
    normal_fan,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

DEFAULT_FANS = ("F1", "F2'", "F3", "MF1")


class Context:
    """Resolved inputs for one command."""

    def __init__(self, fan: SimplicialMultiFan, xi: XiClass | None,
                 polytope: HRepPolytope | None, name: str):
        self.fan, self.xi, self.polytope, self.name = fan, xi, polytope, name


def _resolve(arg: str, kind: str):
    """A file path wins over a fixture name of the same spelling."""
    if Path(arg).is_file():
        return "file", load_json(arg)
    if arg in fx.FIXTURES:
        return "fixture", fx.get(arg)
    raise InputError(f"no such file or fixture: {arg}", kind)


def _context_from_polytope(arg: str) -> Context:
    how, obj = _resolve(arg, "--polytope")
    if how == "fixture":
        if obj.polytope is None:
            raise InputError(f"fixture {arg} is not a polytope", "--polytope")
        return Context(obj.fan, obj.xi, obj.polytope, arg)
    P = polytope_from_data(obj, arg)
    try:
        fan, xi = normal_fan(P)
    except ToricError as exc:
        raise InputError(str(exc), arg) from None
    return Context(fan, xi, P, arg)


def _context_from_fan(arg: str, xi_arg: str | None) -> Context:
    how, obj = _resolve(arg, "--fan")
    if how == "fixture":
        fan, xi, P = obj.fan, obj.xi, obj.polytope
    elif isinstance(obj, dict) and "facets" in obj:
        P = polytope_from_data(obj, arg)
        try:
            fan, xi = normal_fan(P)
        except ToricError as exc:
            raise InputError(str(exc), arg) from None
    else:
        fan, xi, P = fan_from_data(obj, arg), None, None
    if xi_arg is not None:
        xi, P = xi_from_data(load_json(xi_arg), fan, xi_arg), None
    return Context(fan, xi, P, arg)


def _context(args) -> Context:
    if getattr(args, "polytope", None):
        return _context_from_polytope(args.polytope)
    if getattr(args, "fan", None):
        return _context_from_fan(args.fan, getattr(args, "xi", None))
    raise InputError("give --polytope or --fan")


def _need_xi(ctx: Context, cartier: bool = True) -> XiClass:
    if ctx.xi is None:
        raise InputError("this command needs --xi", ctx.name)
    if cartier and not ctx.xi.is_t_cartier:
        raise InputError("xi is not T-Cartier", ctx.name)
    return ctx.xi


def _face(fan: SimplicialMultiFan, text: str | None) -> tuple:
    if not text:
        return ()
    J = fan.simplex(x.strip() for x in text.split(",") if x.strip())
    if not fan.is_face(J):
        raise InputError(f"{fan.names(J)} is not a simplex of the fan", "--face")
    return J


def _plane(text: str, n: int, k: int) -> GrassmannPoint:
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.split(";") if r.strip()]
    except ValueError:
        raise InputError("plane rows must be comma-separated integers", "--plane") from None
    if any(len(r) != n for r in rows):
        raise InputError(f"plane rows need {n} entries", "--plane")
    try:
        return GrassmannPoint.of(k, rows)
    except (ValueError, ToricError) as exc:
        raise InputError(str(exc), "--plane") from None


def _rats(values) -> str:
    return " ".join(format_rat(v) for v in values)


def _rows(E: GrassmannPoint | None) -> str:
    if E is None:
        return "-"
    return ";".join(",".join(str(x) for x in r) for r in E.basis)


def _status(ok: bool) -> str:
    return "ok" if ok else "FAIL"


# --------------------------------------------------------------------------
# commands


def cmd_validate(args, out) -> int:
    how, obj = _resolve(args.path, "validate")
    if how == "fixture":
        fan = obj.fan
    elif isinstance(obj, dict) and "facets" in obj:
        try:
            fan, _ = normal_fan(polytope_from_data(obj, args.path))
        except ToricError as exc:
            raise InputError(str(exc), args.path) from None
    else:
        fan = fan_from_data(obj, args.path)
    diag = validate(fan)
    out(f"rank: {fan.rank}")
    out("faces: " + ", ".join(f"k={k}: {c}" for k, c in enumerate(diag.face_counts)))
    genus = "-" if diag.todd_genus is None else str(diag.todd_genus)
    out(f"complete: {str(diag.complete).lower()}, todd_genus: {genus}")
    return EXIT_OK


def cmd_todd_genus(args, out) -> int:
    ctx = _context(args)
    try:
        out(str(todd_genus(ctx.fan)))
    except ToricError as exc:
        raise InputError(str(exc), ctx.name) from None
    return EXIT_OK


def cmd_ehrhart(args, out) -> int:
    ctx = _context(args)
    xi = _need_xi(ctx)
    fan, n = ctx.fan, ctx.fan.rank
    coeffs = ehrhart(fan, xi)
    out(_rats(coeffs))
    if not args.check:
        return EXIT_OK
    ok = True
    if ctx.polytope is not None:
        oracle = ehrhart_interpolate(ctx.polytope)
        extra = brute_count(ctx.polytope, n + 2)
    else:
        # no polytope: the DHF count of the dilates is the oracle
        counts = [(nu, count_points(MultiPolytope(fan, xi.scaled(nu)))) for nu in range(1, n + 2)]
        oracle = interpolate(counts, n)
        extra = count_points(MultiPolytope(fan, xi.scaled(n + 2)))
    good = oracle == coeffs
    ok &= good
    out(f"check interpolation: {_status(good)} ({_rats(oracle)})")
    predicted = sum(a * (n + 2) ** (n - k) for k, a in enumerate(coeffs))
    good = predicted == extra
    ok &= good
    out(f"check nu={n + 2}: {_status(good)} ({format_rat(predicted)} vs {extra})")
    for k in range(n + 1):
        for t in range(2 if k else 1):
            E = sample_generic_E(fan, k, args.seed + t) if k else None
            total = corollary_ak_sum(fan, xi, k, E)
            good = total == coeffs[k]
            ok &= good
            out(f"check decomposition k={k} E={_rows(E)}: {_status(good)} ({format_rat(total)})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count(args, out) -> int:
    ctx = _context(args)
    xi = _need_xi(ctx)
    K = _face(ctx.fan, args.face)
    if args.nu != 1:
        xi = xi.scaled(args.nu)
    value = count_via_todd(ctx.fan, xi, K)
    out(str(value))
    if not args.check:
        return EXIT_OK
    dhf = count_points(MultiPolytope(ctx.fan, xi, K))
    ok = dhf == value
    out(f"check dhf: {_status(ok)} ({dhf})")
    if ctx.polytope is not None:
        brute = brute_count(ctx.polytope, args.nu, K)
        good = brute == value
        ok &= good
        out(f"check brute force: {_status(good)} ({brute})")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_volume(args, out) -> int:
    ctx = _context(args)
    xi = _need_xi(ctx, cartier=False)
    K = _face(ctx.fan, args.face)
    value = volume(ctx.fan, xi, K)
    out(format_rat(value))
    if args.check and ctx.polytope is not None:
        geo = face_volume_geometric(ctx.polytope, K)
        out(f"check geometric: {_status(geo == value)} ({format_rat(geo)})")
        return EXIT_OK if geo == value else EXIT_FAIL
    return EXIT_OK


def cmd_mu(args, out) -> int:
    ctx = _context(args)
    fan, k = ctx.fan, args.k
    if not 0 <= k <= fan.rank:
        raise InputError(f"k must lie in 0..{fan.rank}", "--k")
    J = _face(fan, args.face)
    if len(J) != k:
        raise InputError(f"face has {len(J)} edges, expected {k}", "--face")
    xi = _need_xi(ctx, cartier=False) if args.xi else None
    samples = max(1, args.samples)
    values, sums = [], []
    for t in range(samples):
        if k == 0:
            E = None
        elif args.plane and t == 0:
            E = _plane(args.plane, fan.rank, k)
        else:
            E = sample_generic_E(fan, k, args.seed + t)
        try:
            value = mu_todd(fan, k, J, E).value
        except ToricError as exc:
            raise InputError(str(exc), "--plane") from None
        values.append(value)
        line = f"{format_rat(value)}  E={_rows(E)}"
        if xi is not None:
            total = corollary_ak_sum(fan, xi, k, E)
            sums.append(total)
            line += f"  weighted_sum={format_rat(total)}"
        out(line)
    if samples > 1:
        out(f"samples agree: {str(len(set(values)) == 1).lower()}")
        if sums:
            out(f"weighted sum constant: {str(len(set(sums)) == 1).lower()}")
            if len(set(sums)) != 1:
                return EXIT_FAIL
    return EXIT_OK


# ---- verify suites --------------------------------------------------------


def _verify_fans(args) -> list[Context]:
    names = [args.fan] if args.fan else list(DEFAULT_FANS)
    return [_context_from_fan(name, args.xi) for name in names]


def _k_range(args, fan) -> list[int]:
    if args.k is None:
        return list(range(1, fan.rank + 1))
    if not 1 <= args.k <= fan.rank:
        raise InputError(f"k must lie in 1..{fan.rank}", "--k")
    return [args.k]


def _random_xis(fan, seed: int, count: int = 3) -> list[XiClass]:
    rng = random.Random(seed)
    return [XiClass(fan, tuple(rng.randint(-3, 3) for _ in range(fan.m))) for _ in range(count)]


def suite_main(args, out) -> bool:
    ok = True
    for ctx in _verify_fans(args):
        fan = ctx.fan
        xis = _random_xis(fan, args.seed)
        for k in _k_range(args, fan):
            xs = spanning_set(fan, k)
            rhs_by_case: dict = {}
            for t in range(args.trials):
                E = sample_generic_E(fan, k, args.seed + t)
                bad = 0
                for a, x in enumerate(xs):
                    for b, xi in enumerate(xis):
                        verdict = verify_theorem_main(x, xi, E)
                        bad += not verdict.ok
                        rhs_by_case.setdefault((a, b), set()).add(verdict.rhs)
                ok &= bad == 0
                out(f"{ctx.name} k={k} E={_rows(E)}: {_status(bad == 0)} "
                    f"({len(xs) * len(xis) - bad}/{len(xs) * len(xis)} cases)")
            constant = all(len(v) == 1 for v in rhs_by_case.values())
            ok &= constant
            out(f"{ctx.name} k={k} constant over {args.trials} planes: {_status(constant)}")
    return ok


def suite_corollary(args, out) -> bool:
    ok = True
    for ctx in _verify_fans(args):
        fan = ctx.fan
        for k in _k_range(args, fan):
            quotient = GradedQuotient(fan, k)
            xs = spanning_set(fan, k)
            for t in range(args.trials):
                E = sample_generic_E(fan, k, args.seed + t)
                bad = sum(not verify_corollary_main(x, E, quotient).ok for x in xs)
                ok &= bad == 0
                out(f"{ctx.name} k={k} E={_rows(E)}: {_status(bad == 0)} "
                    f"({len(xs) - bad}/{len(xs)} reduce to 0 in degree {k}, dim {quotient.dim})")
    return ok


def suite_rigidity(args, out) -> bool:
    ok = True
    for ctx in _verify_fans(args):
        vectors = [ctx.fan.generic_vector(args.seed + t) for t in range(max(args.trials, 1))]
        verdict = rigidity_check(ctx.fan, args.order, vectors)
        ok &= verdict.ok
        out(f"{ctx.name}: {_status(verdict.ok)} {verdict.detail}")
    return ok


ADDITIVITY_CASES = (
    ("quadrant", [(1, 0), (0, 1)], [[(1, 0), (1, 1)], [(1, 1), (0, 1)]]),
    ("singular", [(1, 0), (1, 2)], [[(1, 0), (1, 1)], [(1, 1), (1, 2)]]),
)


def suite_additivity(args, out) -> bool:
    ok = True
    top = args.order if args.order is not None else 3
    for name, parent, pieces in ADDITIVITY_CASES:
        cones = [parent] + pieces
        for t in range(args.trials):
            E = sample_plane_for_cones(cones, 2, args.seed + t)
            verdict = verify_mu_additivity(parent, pieces, E)
            ok &= verdict.ok
            out(f"{name} mu_2 E={_rows(E)}: {_status(verdict.ok)} "
                f"({format_rat(verdict.lhs)} = {format_rat(verdict.rhs)})")
            v = E.basis[0]
            for order in range(top + 1):
                verdict = verify_td_additivity(parent, pieces, v, order)
                ok &= verdict.ok
                out(f"{name} Td v={','.join(map(str, v))} order {order}: {_status(verdict.ok)}")
    return ok


def suite_counts(args, out) -> bool:
    ok = True
    for ctx in _verify_fans(args):
        fan, xi = ctx.fan, ctx.xi
        if xi is None or not xi.is_t_cartier:
            out(f"{ctx.name}: skipped (no T-Cartier xi)")
            continue
        for k in range(fan.rank + 1):
            for K in fan.faces_of_dim(k):
                todd = count_via_todd(fan, xi, K)
                dhf = count_points(MultiPolytope(fan, xi, K))
                good = todd == dhf
                line = f"{ctx.name} K={fan.names(K)}: todd {todd}, dhf {dhf}"
                if ctx.polytope is not None:
                    brute = brute_count(ctx.polytope, 1, K)
                    good &= brute == todd
                    line += f", brute {brute}"
                ok &= good
                out(f"{line}: {_status(good)}")
    return ok


SUITES: dict[str, Callable] = {
    "main": suite_main,
    "corollary": suite_corollary,
    "rigidity": suite_rigidity,
    "additivity": suite_additivity,
    "counts": suite_counts,
}


def cmd_verify(args, out) -> int:
    ok = SUITES[args.suite](args, out)
    out("all identities hold" if ok else "identity violated")
    return EXIT_OK if ok else EXIT_FAIL


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # the copy on each subcommand suppresses defaults so a flag given
        # before the subcommand name is not reset
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--seed", type=int, default=d(0), help="seed for sampled planes and vectors")
        g.add_argument("--order", type=int, default=d(None), help="series truncation order")
        g.add_argument("--samples", type=int, default=d(1), help="number of sampled planes")
        return g

    common = global_flags(True)
    parser = argparse.ArgumentParser(prog="toricmu", parents=[global_flags(False)],
                                     description="Exact toric Todd-class computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def source(p, polytope=True):
        if polytope:
            p.add_argument("--polytope", default=None)
        p.add_argument("--fan", default=None)
        p.add_argument("--xi", default=None)

    p = add("validate", cmd_validate, "check a fan file and print its face table")
    p.add_argument("path")

    p = add("todd-genus", cmd_todd_genus, "Todd genus of a complete multi-fan")
    source(p)

    p = add("ehrhart", cmd_ehrhart, "Ehrhart coefficients a_0..a_n")
    source(p)
    p.add_argument("--check", action="store_true", default=False)

    p = add("count", cmd_count, "lattice points of a face of nu P")
    source(p)
    p.add_argument("--face", default="")
    p.add_argument("--nu", type=int, default=1)
    p.add_argument("--check", action="store_true", default=False)

    p = add("volume", cmd_volume, "lattice-normalized volume of a face")
    source(p)
    p.add_argument("--face", default="")
    p.add_argument("--check", action="store_true", default=False)

    p = add("mu", cmd_mu, "mu_k(J) at sampled planes")
    source(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--face", default="")
    p.add_argument("--plane", default=None, help='basis rows of E, e.g. "1,2" or "1,0,0;0,1,1"')

    p = add("verify", cmd_verify, "run a verifier suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--fan", default=None)
    p.add_argument("--xi", default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--trials", type=int, default=2)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    lines: list[str] = []
    try:
        code = args.func(args, lines.append)
    except InputError as exc:
        code = EXIT_INPUT
        lines.append(f"error: {exc}")
    except ToricError as exc:
        code = EXIT_INPUT
        lines.append(f"error: {exc}")
    for line in lines:
        print(line, file=stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
