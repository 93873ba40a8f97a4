"""Command-line interface: ``ihcyc {betti,ih,cyclic,verify,perversity}``."""
from __future__ import annotations

import argparse
import sys
from typing import Dict, List, Optional, Sequence

from . import control, cyclic, stratified, verify
from .formats import FormatError, parse_algebra, parse_complex
from .report import Report, digest

EXIT_INPUT = 2


class UsageError(Exception):
    pass


def _parse_perversity(text: str) -> stratified.Perversity:
    try:
        vals = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--perversity expects comma-separated integers, got {text!r}") from None
    return stratified.Perversity(vals)


def _parse_codim_map(text: str, flag: str) -> Dict[int, str]:
    out = {}
    for item in text.split(","):
        j, sep, v = item.partition("=")
        if not sep or not j.strip().isdigit():
            raise UsageError(f"{flag} expects j=value pairs, got {item!r}")
        out[int(j)] = v.strip()
    return out


def _control_params(args, n: int) -> Optional[control.ControlParams]:
    if args.alpha is None and args.beta is None:
        return None
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta must be given together")
    return control.ControlParams(n, _parse_codim_map(args.alpha, "--alpha"), _parse_codim_map(args.beta, "--beta"))


def _read(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _betti_rows(rep: Report, b: Dict[int, int], **extra) -> None:
    for k in sorted(b):
        rep.add(record="betti", degree=k, rank=b[k], **extra)


def cmd_betti(args) -> Report:
    data = _read(args.file)
    doc = parse_complex(data.decode("utf-8"))
    rep = Report("betti", {"input": args.file, "input_sha256": digest(data)})
    _betti_rows(rep, doc.complex.betti())
    return rep


def cmd_ih(args) -> Report:
    data = _read(args.file)
    doc = parse_complex(data.decode("utf-8"))
    F = doc.filtration
    if F is None:
        raise UsageError("filtration required for ih")
    params = _control_params(args, F.n)
    if params is not None and args.perversity is not None:
        raise UsageError("give either --perversity or --alpha/--beta, not both")
    header = {"input": args.file, "input_sha256": digest(data)}
    if params is not None:
        p = control.perversity_from_control(params)
        header["alpha"] = {j: params.alpha[j] for j in params.active}
        header["beta"] = {j: params.beta[j] for j in params.active}
        header["pole_exponents"] = {j: control.pole_exponent(params, j) for j in params.active}
        header["perversity_source"] = "control"
    elif args.perversity is not None:
        p = _parse_perversity(args.perversity)
        header["perversity_source"] = "flag"
    else:
        p = stratified.zero_perversity(F.n)
        header["perversity_source"] = "default"
    if p.n != F.n:
        raise UsageError(f"perversity has length {p.n + 1}, filtration needs n = {F.n}")
    header["perversity"] = list(p.values)
    rep = Report("ih", header)
    _betti_rows(rep, stratified.intersection_betti(F, p))
    rep.summary.append(f"perversity {list(p.values)} ({header['perversity_source']})")
    return rep


def cmd_cyclic(args) -> Report:
    data = _read(args.file)
    A = parse_algebra(data.decode("utf-8"))
    K = args.max_degree
    header = {"input": args.file, "input_sha256": digest(data), "algebra": A.name,
              "max_degree": K, "which": args.which}
    rep = Report("cyclic", header)
    if args.which == "hh":
        header["reliable_degrees"] = f"0..{K - 1}"
        _betti_rows(rep, cyclic.hh_betti(A, K))
    elif args.which == "hc":
        header["reliable_degrees"] = f"0..{K - 1}"
        _betti_rows(rep, cyclic.cyclic_betti(cyclic.mixed_from_algebra(A, K), K))
    elif args.which == "hp":
        res = cyclic.periodic_betti(cyclic.mixed_from_algebra(A, K), K)
        header["stabilized"] = {"even": res.stabilized_even, "odd": res.stabilized_odd}
        rep.add(record="periodic", parity="even", rank=res.even, stabilized=res.stabilized_even)
        rep.add(record="periodic", parity="odd", rank=res.odd, stabilized=res.stabilized_odd)
        if not res.stabilized:
            rep.summary.append(f"warning: S has not stabilized below K={K}; raise --max-degree")
    else:
        res = cyclic.sbi_check(cyclic.mixed_from_algebra(A, K), K)
        header["reliable_degrees"] = f"0..{K - 2}"
        for node in res.nodes:
            rep.add(record="sbi", node=node.node, degree=node.degree, dim=node.dim,
                    rank_in=node.rank_in, rank_out=node.rank_out, exact=node.exact)
        rep.summary.append("exact" if res.exact else "NOT exact")
    return rep


def cmd_verify(args) -> Report:
    try:
        checks = verify.run_suite(args.suite, args.max_degree, args.cutoff_convention)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    header = {"suite": args.suite, "max_degree": args.max_degree,
              "cutoff_convention": args.cutoff_convention}
    rep = Report("verify", header)
    for c in checks:
        rep.records.append(c.record())
    failed = sum(not c.passed for c in checks)
    rep.summary.append(f"{len(checks) - failed}/{len(checks)} checks passed")
    return rep


def cmd_perversity(args) -> Report:
    params = _control_params(args, args.dimension)
    if params is None:
        raise UsageError("perversity needs --alpha and --beta")
    p = control.perversity_from_control(params)
    rep = Report("perversity", {"n": args.dimension,
                                "alpha": {j: params.alpha[j] for j in params.active},
                                "beta": {j: params.beta[j] for j in params.active}})
    for j in range(p.n + 1):
        row = {"record": "perversity", "j": j, "p": p[j], "active": j in params.active}
        if j in params.active:
            row["pole_exponent"] = control.pole_exponent(params, j)
        rep.records.append(row)
    return rep


def build_parser() -> argparse.ArgumentParser:
    from . import __version__

    ap = argparse.ArgumentParser(prog="ihcyc", description=__doc__)
    ap.add_argument("--version", action="version", version=f"ihcyc {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default="table")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", parents=[common], help="simplicial betti numbers")
    p.add_argument("file")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("ih", parents=[common], help="intersection betti numbers")
    p.add_argument("file")
    p.add_argument("--perversity", help="p0,p1,...,pn")
    p.add_argument("--alpha", help="j=value,... pinching numbers")
    p.add_argument("--beta", help="j=value,... control numbers")
    p.set_defaults(func=cmd_ih)

    p = sub.add_parser("cyclic", parents=[common], help="Hochschild / cyclic homology of an algebra")
    p.add_argument("file")
    p.add_argument("which", choices=("hh", "hc", "hp", "sbi"))
    p.add_argument("--max-degree", type=int, default=cyclic.DEFAULT_MAX_DEGREE)
    p.set_defaults(func=cmd_cyclic)

    p = sub.add_parser("verify", parents=[common], help="run built-in cross-check suites")
    p.add_argument("suite", help="all, " + ", ".join(verify.SUITES))
    p.add_argument("--max-degree", type=int, default=cyclic.DEFAULT_MAX_DEGREE)
    p.add_argument("--cutoff-convention", choices=("m-1", "m", "both"), default="both")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("perversity", parents=[common], help="perversity from control numbers")
    p.add_argument("--dimension", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(func=cmd_perversity)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_degree", 2) < 2:
        print("ihcyc: error: --max-degree must be >= 2", file=sys.stderr)
        return EXIT_INPUT
    try:
        rep = args.func(args)
    except (UsageError, FormatError, UnicodeDecodeError, ValueError) as exc:
        # ControlError, PerversityError, FiltrationError subclass ValueError
        print(f"ihcyc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(rep.render(args.format))
    return 0


if __name__ == "__main__":
    sys.exit(main())
