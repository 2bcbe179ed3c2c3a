"""Command-line interface.

Exit status of ``detect`` commands encodes the verdict: 0 = coherence
detected, 2 = undetermined / not detected, 1 = error. Other commands exit
0 on success and 1 on error.
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__, bounds, kernels, moments, multicopy, states, witness
from .errors import CoherenceError
from .fileio import csv_text, dump_matrix, load_state, load_witness, to_json

EXIT_DETECTED = 0
EXIT_ERROR = 1
EXIT_UNDETERMINED = 2


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _report(command: str, inputs: dict, outputs: dict, flags=(), seed=None) -> str:
    doc = {"tool": "cohdetect", "version": __version__, "backend": kernels.BACKEND,
           "command": command, "inputs": inputs, "outputs": outputs,
           "flags": list(flags), "seed": seed}
    return to_json(doc) + "\n"


def _parse_cut(text):
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"cut must look like 3x3, got {text!r}") from None


# -- gen ----------------------------------------------------------------------

_WITNESS_PRESETS = {
    "example2-W": lambda: witness.example2_witnesses()[0],
    "example2-V": lambda: witness.example2_witnesses()[1],
    "example3": witness.example3_witness,
    "example4": witness.example4_witness,
}


def cmd_gen(args) -> int:
    fam = args.family
    if fam == "witness":
        if args.preset == "dephasing":
            if not args.state:
                raise CoherenceError("--preset dephasing needs --state")
            w = witness.dephasing_witness(load_state(args.state))
        else:
            w = _WITNESS_PRESETS[args.preset]()
        name = args.name or w.name
        _emit(dump_matrix(w.mat, w.dims, name, w.convention), args.out)
        return 0
    if fam == "example1":
        rho = states.example1(args.a, args.b)
    elif fam == "x-state":
        rho = states.x_state(args.alpha, args.beta)
    elif fam == "noisy-ghz":
        rho = states.noisy_ghz(args.g)
    elif fam == "rho-c":
        rho = states.rho_c(args.c)
    elif fam == "isotropic":
        rho = states.isotropic(args.v, args.d)
    elif fam == "max-entangled":
        rho = states.max_entangled(args.d)
    elif fam == "random":
        rho = states.random_density(args.dim, args.seed, args.dims)
    elif fam == "random-diagonal":
        rho = states.random_diagonal(args.dim, args.seed, args.dims)
    else:  # pragma: no cover - argparse restricts choices
        raise CoherenceError(f"unknown family {fam}")
    name = args.name or _default_name(fam, args)
    _emit(dump_matrix(rho.mat, rho.dims, name), args.out)
    return 0


def _default_name(fam, args) -> str:
    keys = {"example1": ("a", "b"), "x-state": ("alpha", "beta"), "noisy-ghz": ("g",),
            "rho-c": ("c",), "isotropic": ("v", "d"), "max-entangled": ("d",),
            "random": ("dim", "seed"), "random-diagonal": ("dim", "seed")}[fam]
    return f"{fam}(" + ",".join(f"{k}={getattr(args, k)}" for k in keys) + ")"


# -- detect -------------------------------------------------------------------

def cmd_detect_moments(args) -> int:
    rho = load_state(args.state)
    rep = moments.moment_report(rho, args.cut, args.kmax, args.tol)
    v = rep.verdict
    outputs = {
        "cut": list(rep.cut), "subsystem": rep.subsystem, "kmax": rep.kmax,
        "state_moments": rep.state_moments, "pt_moments": rep.pt_moments,
        "gaps": rep.gaps, "char_coeffs": rep.char_coeffs,
        "verdict": {"status": v.label, "first_k": v.first_k, "gap": v.gap},
    }
    inputs = {"state": str(args.state), "cut": list(rep.cut), "kmax": rep.kmax,
              "tol": args.tol}
    _emit(_report("detect moments", inputs, outputs), args.report)
    return EXIT_DETECTED if v.coherent else EXIT_UNDETERMINED


def cmd_detect_witness(args) -> int:
    rho = load_state(args.state)
    ws = [load_witness(p) for p in args.witness]
    by_name = {}
    for w in ws:
        by_name.setdefault(w.name, w)
    inputs = {"state": str(args.state), "witnesses": [str(p) for p in args.witness],
              "copies": args.copies, "wiring": args.wiring, "cascade": args.cascade,
              "detect_tol": args.tol}
    extra = []
    if args.wiring:
        extra.append(multicopy.parse_wiring(args.wiring, by_name, args.copies))
    if args.cascade:
        rep = multicopy.cascade(ws, rho, args.cascade, args.tol, extra)
        steps = rep.steps
    elif extra:
        wiring = extra[0]
        val = multicopy.nonlinear_expectation(wiring, rho)
        hit = multicopy.is_detected(val, wiring.convention, args.tol)
        steps = (multicopy.CascadeStep(wiring.copies, "user", wiring.text(), val, hit),)
    else:
        rep = multicopy.cascade(ws, rho, 1, args.tol)
        steps = rep.steps
    first = next((s for s in steps if s.detected), None)
    outputs = {
        "steps": [{"level": s.level, "pattern": s.pattern, "wiring": s.wiring,
                   "value": s.value, "detected": s.detected} for s in steps],
        "detected": first is not None,
        "first": None if first is None else {"level": first.level, "wiring": first.wiring,
                                             "value": first.value},
    }
    flags = [] if steps else ["no_applicable_wiring"]
    _emit(_report("detect witness", inputs, outputs, flags), args.report)
    return EXIT_DETECTED if first is not None else EXIT_UNDETERMINED


# -- bounds -------------------------------------------------------------------

def cmd_bounds(args) -> int:
    rho = load_state(args.state)
    w = load_witness(args.witness) if args.witness else witness.dephasing_witness(rho)
    rep = bounds.bounds_report(w, rho, with_E=args.with_E)
    outputs = {k: getattr(rep, k) for k in
               ("lambda_plus", "lambda_minus", "L_WN", "L_R", "L1", "L2", "E", "E_ratio",
                "certified_gap")}
    inputs = {"state": str(args.state), "witness": str(args.witness) if args.witness
              else "dephasing (Delta(rho) - rho)", "with_E": bool(args.with_E)}
    _emit(_report("bounds", inputs, outputs, rep.flags), args.report)
    return 0


# -- scan ---------------------------------------------------------------------

def _grid(lo, hi, steps):
    return [] if steps <= 0 else np.linspace(lo, hi, steps).tolist()


def cmd_scan(args) -> int:
    if args.which == "example1":
        rows = moments.scan_example1(_grid(0.0, 1.0, args.a_steps),
                                     _grid(0.0, 0.5, args.b_steps), args.k)
        _emit(csv_text(["a", "b", "gap"], rows), args.out)
        return 0
    rows = bounds.scan_isotropic(_grid(args.v_min, args.v_max, args.v_steps))
    _emit(csv_text(["v", "L1", "L2", "LR", "flag"], rows), args.out)
    # sign change of L_R - |L1| between neighbouring rows
    for r0, r1 in zip(rows, rows[1:]):
        d0, d1 = r0[3] - abs(r0[1]), r1[3] - abs(r1[1])
        if np.isfinite(d0) and np.isfinite(d1) and d0 < 0 <= d1:
            print(f"L_R overtakes |L1| between v={r0[0]:.6g} and v={r1[0]:.6g}",
                  file=sys.stderr)
    return 0


# -- parser -------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    # argparse's default status 2 would collide with EXIT_UNDETERMINED
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cohdetect", description="Coherence detection and robustness bounds.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="write a state or witness matrix file")
    fams = gen.add_subparsers(dest="family", required=True)

    def fam(name, help_text):
        f = fams.add_parser(name, help=help_text)
        f.add_argument("--out", "-o", default="-", help="output path (default stdout)")
        f.add_argument("--name", default=None)
        return f

    f = fam("example1", "two-qutrit two-parameter family")
    f.add_argument("--a", type=float, required=True)
    f.add_argument("--b", type=float, required=True)
    f = fam("x-state", "two-qubit X state")
    f.add_argument("--alpha", type=float, required=True)
    f.add_argument("--beta", type=float, required=True)
    f = fam("noisy-ghz", "GHZ state with white noise")
    f.add_argument("--g", type=float, required=True)
    f = fam("rho-c", "three-qubit state detected only by three copies")
    f.add_argument("--c", type=float, required=True)
    f = fam("isotropic", "isotropic two-qudit state")
    f.add_argument("--v", type=float, required=True)
    f.add_argument("--d", type=int, default=3)
    f = fam("max-entangled", "maximally entangled two-qudit state")
    f.add_argument("--d", type=int, required=True)
    for name in ("random", "random-diagonal"):
        f = fam(name, "seeded random state (Ginibre / flat Dirichlet diagonal)")
        f.add_argument("--dim", type=int, required=True)
        f.add_argument("--seed", type=int, required=True)
        f.add_argument("--dims", type=int, nargs="+", default=None,
                       help="subsystem dimensions (default: one party)")
    f = fam("witness", "witness file (preset or dephasing witness of a state)")
    f.add_argument("--preset", required=True, choices=sorted(_WITNESS_PRESETS) + ["dephasing"])
    f.add_argument("--state", default=None, help="state file for --preset dephasing")
    gen.set_defaults(func=cmd_gen)

    det = sub.add_parser("detect", help="coherence detection")
    dsub = det.add_subparsers(dest="method", required=True)
    dm = dsub.add_parser("moments", help="partial-transpose moment criterion")
    dm.add_argument("state")
    dm.add_argument("--cut", type=_parse_cut, default=None, help="bipartition MxN")
    dm.add_argument("--kmax", type=int, default=None)
    dm.add_argument("--tol", type=float, default=moments.MOMENT_TOL)
    dm.add_argument("--report", default="-")
    dm.set_defaults(func=cmd_detect_moments)
    dw = dsub.add_parser("witness", help="linear / multi-copy witness detection")
    dw.add_argument("state")
    dw.add_argument("witness", nargs="+")
    dw.add_argument("--copies", type=int, default=None)
    dw.add_argument("--wiring", default=None, help='e.g. "W@A1,A2;V@B1,B2"')
    dw.add_argument("--cascade", type=int, default=None, choices=(1, 2, 3),
                    help="escalate up to this many copies")
    dw.add_argument("--tol", type=float, default=multicopy.DETECT_TOL)
    dw.add_argument("--report", default="-")
    dw.set_defaults(func=cmd_detect_witness)

    b = sub.add_parser("bounds", help="robustness lower bounds for a state/witness pair")
    b.add_argument("state")
    b.add_argument("witness", nargs="?", default=None,
                   help="witness file (default: dephasing witness of the state)")
    b.add_argument("--with-E", dest="with_E", action="store_true",
                   help="also minimise the trace distance to the incoherent set")
    b.add_argument("--report", default="-")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("scan", help="parameter sweeps as CSV")
    ssub = s.add_subparsers(dest="which", required=True)
    s1 = ssub.add_parser("example1", help="columns a,b,gap")
    s1.add_argument("--a-steps", type=int, default=51)
    s1.add_argument("--b-steps", type=int, default=26)
    s1.add_argument("--k", type=int, default=3)
    s1.add_argument("--out", "-o", default="-")
    s2 = ssub.add_parser("isotropic", help="columns v,L1,L2,LR,flag")
    s2.add_argument("--v-steps", type=int, default=200)
    s2.add_argument("--v-min", type=float, default=0.0)
    s2.add_argument("--v-max", type=float, default=1.0)
    s2.add_argument("--out", "-o", default="-")
    s.set_defaults(func=cmd_scan)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CoherenceError, ValueError) as exc:
        print(f"cohdetect: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"cohdetect: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
