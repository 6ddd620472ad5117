"""Command line front end.

Subcommands: ``bound``, ``sweep``, ``decompose``, ``oracle`` and ``export``.
Errors print one line ``error code=<name> exit=<n>: <message>`` to stderr.
Exit codes: 0 ok, 2 domain/input, 3 parse or file, 4 capacity, 5 internal.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

import numpy as np

from . import bounds, dw, io, sweep
from .errors import InputError, KeyWitnessError
from .states import BlockForm, isotropic_state, pbit_state, swap_operator
from .witness import (WitnessSpec, count_settings, pauli_decompose, witness_operator)

EXIT_IO = 3


def _builtin(args_builtin, d=2):
    """``(state, shield operator)`` for a built-in generator."""
    name, *rest = args_builtin
    if name == "pbit-swap":
        if rest:
            raise InputError("pbit-swap takes no value; use --d for the shield dimension")
        return pbit_state(d).assemble(), swap_operator(d)
    if name == "bell":
        if len(rest) != 1:
            raise InputError("usage: --builtin bell F")
        try:
            f = float(rest[0])
        except ValueError:
            raise InputError(f"bell fidelity must be a number, got {rest[0]!r}") from None
        return isotropic_state(f, 2), np.eye(1)
    raise InputError(f"unknown builtin {name!r}; choose pbit-swap or bell")


def _state_and_witness(args):
    if args.builtin:
        return _builtin(args.builtin, args.d)
    if args.state is None:
        raise InputError("give a state file or --builtin")
    state = io.read_state(args.state)
    u = None
    if getattr(args, "witness", None):
        u, _, _ = io.read_operator(args.witness)
    return state, u


def parse_cut(text: str) -> list[str]:
    """``"AA'"`` or ``"A,A'"`` -> ``["A", "A'"]``."""
    if "," in text:
        return [t.strip() for t in text.split(",") if t.strip()]
    labels = re.findall(r"[A-Za-z][0-9]*'*", text)
    if "".join(labels) != text:
        raise InputError(f"cannot parse cut {text!r}")
    return labels


def _print_report(report: bounds.BoundReport, extra: dict, as_json: bool):
    if as_json:
        print(json.dumps({**extra, **report.as_dict()}, sort_keys=True))
        return
    for k, v in extra.items():
        print(f"{k}: {v:.6f}")
    print(f"value: {report.value:.6f}")
    print(f"certified: {'yes' if report.certified else 'no'}")
    print(f"method: {report.method}")
    print(f"branch: {report.branch or '-'}")
    loc = report.location
    if isinstance(loc, tuple):
        loc = ", ".join(f"{x:.9g}" for x in loc)
    elif loc is not None:
        loc = f"{loc:.9g}"
    print(f"location: {loc if loc is not None else '-'}")
    if report.note:
        print(f"note: {report.note}")


SINGLE = {"central": bounds.kd_single_central, "weak1": bounds.kd_single_weak1,
          "weak2": bounds.kd_single_weak2, "approx": bounds.kd_single_approx}
TWO = {"full": bounds.kd_two_full, "weak": bounds.kd_two_weak}


def cmd_bound(args) -> int:
    if args.kind == "single":
        _print_report(SINGLE[args.method](args.w), {}, args.json)
    elif args.kind == "two":
        _print_report(TWO[args.method](args.wx, args.wz), {}, args.json)
    elif args.kind == "wwz":
        _print_report(bounds.kd_w_wz(args.w, args.wz), {}, args.json)
    else:
        state, u = _state_and_witness(args)
        if u is None:
            raise InputError("from-state needs --witness FILE (or --builtin)")
        b = BlockForm.from_state(state)
        measured, report = bounds.bound_from_state(WitnessSpec(u, args.key_pattern), b)
        _print_report(report, measured, args.json)
    return 0


def cmd_sweep(args) -> int:
    ranges = {k: getattr(args, k) for k in ("w", "wx", "wz") if getattr(args, k) is not None}
    spec = sweep.SweepSpec(args.mode, ranges, args.steps, args.output)
    text = sweep.write_sweep(spec, args.threads)
    if args.output is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {len(text.splitlines()) - 1} rows to {args.output}")
    return 0


def cmd_decompose(args) -> int:
    if args.builtin:
        if args.builtin != "pbit-swap":
            raise InputError(f"unknown builtin {args.builtin!r}; only pbit-swap decomposes")
        op = witness_operator(WitnessSpec(swap_operator(2)))
    elif args.witness:
        u, _, _ = io.read_operator(args.witness)
        op = witness_operator(WitnessSpec(u, args.key_pattern))
    elif args.operator:
        op, _, _ = io.read_operator(args.operator)
    else:
        raise InputError("give --builtin, --witness or --operator")
    dec = pauli_decompose(op)
    settings = count_settings(dec)
    tomo = 3 ** dec.n_qubits
    if args.json:
        print(json.dumps({"qubits": dec.n_qubits, "terms": [[c, s] for c, s in dec.terms],
                          "settings": settings, "tomography": tomo}))
        return 0
    for c, s in dec.terms:
        print(f"{c:+.6f} {s}")
    print(f"strings: {len(dec.terms)}")
    print(f"settings: {settings}")
    print(f"tomography: {tomo}")
    return 0


def cmd_oracle(args) -> int:
    if args.kind == "constants":
        c = bounds.find_constants()
        if args.json:
            print(json.dumps({"w_star": c.w_star, "p_star": c.p_star, "wz_min": c.wz_min,
                              "w_star_residual": c.w_star_residual,
                              "p_star_residual": c.p_star_residual}))
        else:
            print(f"w_star: {c.w_star:.6f} (residual {c.w_star_residual:.1e})")
            print(f"p_star: {c.p_star:.6f} (residual {c.p_star_residual:.1e})")
            print(f"wz_min: {c.wz_min:.6f}")
        return 0
    state, _ = _state_and_witness(args)
    if args.kind == "dw":
        val = dw.dw_rate(state, bob_keeps_shield=args.bob_keeps_shield)
    else:
        val = bounds.log_negativity(state, parse_cut(args.cut))
    print(json.dumps({args.kind: val}) if args.json else f"{val:.6f}")
    return 0


def cmd_export(args) -> int:
    state, u = _builtin(args.builtin, args.d)
    io.write_state(args.state, state)
    if args.witness:
        k = int(round(np.sqrt(u.shape[0])))
        dims = [k, k] if k * k == u.shape[0] and u.shape[0] > 1 else [u.shape[0], 1]
        io.write_operator(args.witness, u, dims, ["A'", "B'"], hermitian=True)
    return 0


def _add_state_source(p, witness=False):
    p.add_argument("state", nargs="?", help="state file (JSON)")
    p.add_argument("--state", dest="state_opt", help=argparse.SUPPRESS)
    if witness:
        p.add_argument("--witness", help="shield operator file (JSON)")
    p.add_argument("--builtin", nargs="+", metavar="NAME",
                   help="built-in state: 'pbit-swap' or 'bell F'")
    p.add_argument("--d", type=int, default=2, help="p-bit shield dimension")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="keywitness",
                                 description="Key-rate bounds from privacy witness values.")
    sub = ap.add_subparsers(dest="command", required=True)

    pb = sub.add_parser("bound", help="evaluate a key bound")
    bsub = pb.add_subparsers(dest="kind", required=True)
    p = bsub.add_parser("single")
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--method", choices=sorted(SINGLE), default="central")
    p = bsub.add_parser("two")
    p.add_argument("--wx", type=float, required=True)
    p.add_argument("--wz", type=float, required=True)
    p.add_argument("--method", choices=sorted(TWO), default="full")
    p = bsub.add_parser("wwz")
    p.add_argument("--w", type=float, required=True)
    p.add_argument("--wz", type=float, required=True)
    p = bsub.add_parser("from-state")
    _add_state_source(p, witness=True)
    p.add_argument("--key-pattern", choices=("corner", "xx", "zz"), default="corner")
    for p in bsub.choices.values():
        p.add_argument("--json", action="store_true")
    pb.set_defaults(func=cmd_bound)

    ps = sub.add_parser("sweep", help="write plot data as CSV")
    ps.add_argument("mode", choices=sorted(sweep.MODES))
    ps.add_argument("--output", "-o")
    ps.add_argument("--steps", type=int)
    ps.add_argument("--threads", type=int)
    for v in ("w", "wx", "wz"):
        ps.add_argument(f"--{v}", nargs=2, type=float, metavar=("MIN", "MAX"))
    ps.set_defaults(func=cmd_sweep)

    pd = sub.add_parser("decompose", help="Pauli decomposition and setting count")
    pd.add_argument("--builtin")
    pd.add_argument("--witness", help="shield operator file; the witness is built from it")
    pd.add_argument("--key-pattern", choices=("corner", "xx", "zz"), default="corner")
    pd.add_argument("--operator", help="operator file decomposed as-is")
    pd.add_argument("--json", action="store_true")
    pd.set_defaults(func=cmd_decompose)

    po = sub.add_parser("oracle", help="tomographic cross-checks")
    osub = po.add_subparsers(dest="kind", required=True)
    p = osub.add_parser("dw")
    _add_state_source(p)
    p.add_argument("--bob-keeps-shield", action="store_true")
    p = osub.add_parser("logneg")
    _add_state_source(p)
    p.add_argument("--cut", required=True, help="Alice's side, e.g. AA'")
    osub.add_parser("constants")
    for p in osub.choices.values():
        p.add_argument("--json", action="store_true")
    po.set_defaults(func=cmd_oracle)

    pe = sub.add_parser("export", help="write a built-in state (and witness) to JSON")
    pe.add_argument("--builtin", nargs="+", required=True, metavar="NAME")
    pe.add_argument("--d", type=int, default=2)
    pe.add_argument("--state", required=True)
    pe.add_argument("--witness")
    pe.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "state_opt", None):
        args.state = args.state_opt
    try:
        return args.func(args)
    except KeyWitnessError as exc:
        msg = str(exc).replace("\n", " ")
        print(f"error code={exc.code} exit={exc.exit_code}: {msg}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error code=io exit={EXIT_IO}: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:  # noqa: BLE001
        msg = f"{type(exc).__name__}: {exc}".replace("\n", " ")
        print(f"error code=internal exit=5: {msg}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
