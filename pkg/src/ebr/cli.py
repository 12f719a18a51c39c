"""
Command-line harness: ``ebr <command> [options]``.

Commands: generators, measure, verify, volumes, effective, frame.
Exit codes: 0 success, 1 invalid input, 2 a property or statistical check
failed.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time

import numpy as np

from . import checks, config, volumes
from .effective import build_effective_measurement
from .errors import EBRError
from .frame import build_standard_frame, standard_probabilities, to_standard_state
from .generators import GENERATOR_ORDERING, computational_basis, generator_gram
from .hidden import FrequencyReport, run_experiment
from .operators import Ket

EXIT_OK, EXIT_INVALID, EXIT_PROPERTY = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors (1); 2 is reserved for failed checks
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _common():
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--seed", type=int, help="unsigned 64-bit seed")
    g.add_argument("--workers", type=int, help="worker threads for sampling")
    g.add_argument("--out", help="write the main output here instead of stdout")
    g.add_argument("--format", choices=["json", "csv", "text"], help="output format")
    return p


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _dump(obj, args):
    with _output(args.out) as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


def _fmt_complex(z: complex) -> str:
    if abs(z.imag) < 1e-15:
        return f"{z.real:g}"
    if abs(z.real) < 1e-15:
        return f"{z.imag:g}i"
    return f"{z.real:g}{z.imag:+g}i"


def cmd_generators(args) -> int:
    if args.n < 2:
        print("generators: --n must be at least 2", file=sys.stderr)
        return EXIT_INVALID
    ambient = args.ambient or args.n
    if ambient < args.n:
        print("generators: --ambient must be >= --n", file=sys.stderr)
        return EXIT_INVALID
    gb = computational_basis(args.n, ambient)
    defect = float(np.abs(generator_gram(gb) - 2 * np.eye(args.n**2 - 1)).max())
    ok = defect <= 1e-10
    if (args.format or "text") == "json":
        out = gb.to_json()
        out["gram_check"] = {"max_defect": defect, "tolerance": 1e-10, "passed": ok}
        _dump(out, args)
    else:
        with _output(args.out) as fh:
            for label, g in zip(gb.labels, gb.generators):
                fh.write(f"{label}:\n")
                for row in g:
                    fh.write("  [" + ", ".join(f"{_fmt_complex(z):>6}" for z in row) + "]\n")
            fh.write(f"gram: max |Tr(L_i L_j) - 2 delta_ij| = {defect:.3e} -> {'pass' if ok else 'FAIL'}\n")
    return EXIT_OK if ok else EXIT_PROPERTY


def _expand(report: FrequencyReport, n_total: int, surviving) -> FrequencyReport:
    if len(surviving) == n_total:
        return report
    counts, expected = [0] * n_total, [0.0] * n_total
    for k, i in enumerate(surviving):
        counts[i], expected[i] = report.counts[k], report.expected[k]
    return FrequencyReport(report.n_samples, tuple(counts), tuple(expected), report.seed, report.rng)


def cmd_measure(args) -> int:
    file_cfg = config.load_json_file(args.config) if args.config else None
    flags = {
        "preset": args.preset,
        "theta": args.theta,
        "weights": [float(x) for x in args.weights.split(",")] if args.weights else None,
        "n": args.mixed_n,
        "state": config.parse_json_arg(args.state, "--state") if args.state else None,
        "measurement": config.parse_json_arg(args.measurement, "--measurement") if args.measurement else None,
        "n_samples": args.n_samples,
        "seed": args.seed,
        "workers": args.workers,
    }
    cfg = config.resolve(file_cfg, flags)
    res = config.build(cfg)
    if args.seed is None and (file_cfg or {}).get("seed") is None:
        print(f"measure: no seed given, using {cfg['seed']}", file=sys.stderr)

    if args.records:
        with open(args.records, "w") as rec:
            report = run_experiment(res.experiment, records=rec, states=not args.no_states)
    else:
        report = run_experiment(res.experiment)
    report = _expand(report, res.n_total, res.surviving)
    ok = report.max_sigma_deviation < 5.0

    if args.format == "csv":
        with _output(args.out) as fh:
            fh.write(report.to_csv())
    else:
        _dump({
            "config": cfg,
            "config_hash": res.hash,
            "ordering": GENERATOR_ORDERING,
            "report": report.to_json(),
            "passed": ok,
        }, args)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_verify(args) -> int:
    if not 2 <= args.n_max <= 8:
        print("verify: --n-max must be in 2..8", file=sys.stderr)
        return EXIT_INVALID
    seed = 0 if args.seed is None else args.seed
    t0 = time.perf_counter()
    results = checks.run_all(args.n_max, args.trials, seed, perturb=args.perturb)
    passed = all(r.passed for r in results)
    _dump({
        "seed": seed,
        "n_max": args.n_max,
        "trials": args.trials,
        "perturb": args.perturb,
        "elapsed_s": round(time.perf_counter() - t0, 3),
        "checks": [r.to_json() for r in results],
        "passed": passed,
    }, args)
    return EXIT_OK if passed else EXIT_PROPERTY


def cmd_volumes(args) -> int:
    if args.m_max < 1:
        print("volumes: --m-max must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    rows = volumes.volume_table(args.m_max)
    argmax = volumes.unit_ball_argmax(min(args.m_max, 50))
    if args.format == "json":
        _dump({
            "rows": [
                {"M": M, "exact": e, "log_exact": volumes.log_ball_volume(M), "asymptotic": a, "ratio": r}
                for M, e, a, r in rows
            ],
            "argmax": argmax,
        }, args)
    else:
        with _output(args.out) as fh:
            fh.write("M,exact,asymptotic,ratio\n")
            for M, e, a, r in rows:
                fh.write(f"{M},{e!r},{'' if a is None else repr(a)},{'' if r is None else repr(r)}\n")
        print(f"argmax={argmax}", file=sys.stderr)
    return EXIT_OK


def cmd_effective(args) -> int:
    spec = config.parse_json_arg(args.measurement, "--measurement")
    parts, grid_ket = config.parse_partition(spec)
    if grid_ket is None:
        if not args.state:
            print("effective: --state is required for index-set partitions", file=sys.stderr)
            return EXIT_INVALID
        psi = config.parse_state(config.parse_json_arg(args.state, "--state"))
        if not isinstance(psi, Ket):
            print("effective: state must be a ket", file=sys.stderr)
            return EXIT_INVALID
    else:
        psi = grid_ket
    em = build_effective_measurement(psi, parts)
    p = em.probabilities()
    direct = np.linalg.norm(parts.apply(psi.amplitudes), axis=1) ** 2
    born = float(np.abs(p - direct).max())
    recon = float(np.abs(em.reconstruct() - psi.amplitudes).max())
    ok = born <= 1e-12 and recon <= 1e-10
    _dump({
        "n_outcomes": parts.n_outcomes,
        "ambient_dim": parts.ambient_dim,
        "probabilities": p.tolist(),
        "weights": em.weights.tolist(),
        "surviving": list(em.surviving),
        "simplex": em.simplex.to_json(),
        "bloch_state": em.bloch_state.to_json(),
        "checks": {"born_defect": born, "reconstruction_defect": recon, "passed": ok},
    }, args)
    return EXIT_OK if ok else EXIT_PROPERTY


def cmd_frame(args) -> int:
    if args.n < 2:
        print("frame: --n must be at least 2", file=sys.stderr)
        return EXIT_INVALID
    f = build_standard_frame(args.n)
    verts = f.vertices()
    target = (args.n * np.eye(args.n) - 1) / (args.n - 1)
    out = {
        "n": args.n,
        "m": f.m.tolist(),
        "R": f.R.tolist(),
        "R_tilde_norm": float(np.linalg.norm(f.R_tilde)),
        "vertex_gram_defect": float(np.abs(verts @ verts.T - target).max()),
        "limit_defects": {n: build_standard_frame(n).vertex_limit_defect() for n in range(2, max(args.n, 2) + 1)},
    }
    if args.weights:
        w = np.array([float(x) for x in args.weights.split(",")])
        if w.shape != (args.n,) or w.min() < 0 or abs(w.sum() - 1) > 1e-12:
            print(f"frame: --weights must be {args.n} nonnegative numbers summing to 1", file=sys.stderr)
            return EXIT_INVALID
        s = to_standard_state(w, f)
        out["s_tilde"] = s.tolist()
        out["probabilities"] = standard_probabilities(s, f).tolist()
    _dump(out, args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = _Parser(prog="ebr", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generators", parents=[common], help="print the generator basis and its Gram check")
    g.add_argument("--n", type=int, required=True, help="number of outcomes")
    g.add_argument("--ambient", type=int, help="Hilbert space dimension (default: n)")
    g.set_defaults(func=cmd_generators)

    m = sub.add_parser("measure", parents=[common], help="run a hidden-measurement experiment")
    m.add_argument("--config", help="JSON config file")
    m.add_argument("--preset", choices=sorted(config.PRESETS))
    m.add_argument("--theta", type=float, help="polar angle for the qubit-theta preset")
    m.add_argument("--weights", help="comma-separated Born weights for the born-weights preset")
    m.add_argument("--mixed-n", type=int, help="dimension for the maximally-mixed preset")
    m.add_argument("--state", help="state JSON (inline or @file)")
    m.add_argument("--measurement", help="measurement JSON (inline or @file)")
    m.add_argument("--n-samples", type=int)
    m.add_argument("--records", help="write one JSON record per sample to this file")
    m.add_argument("--no-states", action="store_true", help="omit collapsed states from records")
    m.set_defaults(func=cmd_measure)

    v = sub.add_parser("verify", parents=[common], help="run all randomised cross-checks")
    v.add_argument("--n-max", type=int, default=8)
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--perturb", type=float, default=0.0, help="negative control: perturb Bloch vectors")
    v.set_defaults(func=cmd_verify)

    vol = sub.add_parser("volumes", parents=[common], help="ball volumes and their Stirling forms")
    vol.add_argument("--m-max", type=int, default=10)
    vol.set_defaults(func=cmd_volumes)

    e = sub.add_parser("effective", parents=[common], help="degenerate measurement of a high-dimensional state")
    e.add_argument("--measurement", required=True, help="partition JSON (inline or @file)")
    e.add_argument("--state", help="ket JSON (inline or @file); not needed for grid partitions")
    e.set_defaults(func=cmd_effective)

    f = sub.add_parser("frame", parents=[common], help="standard frame quantities")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--weights", help="comma-separated on-simplex weights to map into the frame")
    f.set_defaults(func=cmd_frame)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (EBRError, OSError) as e:
        print(f"{args.command}: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
