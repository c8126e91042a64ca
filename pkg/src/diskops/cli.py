"""Command line: ``diskops {verify,spectrum,angles,geodesic,sweep}``.

Exit codes: 0 every check passed, 1 a mathematical assertion failed,
2 a numerical certificate could not be established, 64 usage error.
"""
import argparse
import datetime
import math
import sys
import warnings
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from . import grassmann as gr
from . import moebius as mb
from . import serialize as ser
from . import verify as vf
from .errors import (
    CertificateInvalid,
    LogBranchFailure,
    NotASymmetry,
    NotInDisk,
    RankDeficient,
    ResidualTooLarge,
    SymbolAliasWarning,
    UnstableRank,
)

EXIT_OK, EXIT_FAIL, EXIT_CERT, EXIT_USAGE = 0, 1, 2, 64
CERT_ERRORS = (ResidualTooLarge, NotASymmetry, CertificateInvalid, RankDeficient, UnstableRank,
               LogBranchFailure)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    a: complex = 0j
    b: complex = 0j
    modes: int = 128
    oversample: int = 8
    tol: float = 1e-6
    out: str = None
    format: str = "json"
    radii: tuple = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6)
    angles: int = 4

    def echo(self):
        d = asdict(self)
        d["a"] = [self.a.real, self.a.imag]
        d["b"] = [self.b.real, self.b.imag]
        d["radii"] = list(self.radii)
        return d


def parse_complex(text):
    try:
        parts = [float(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    if len(parts) == 1:
        parts.append(0.0)
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 're,im', got {text!r}")
    return complex(*parts)


def parse_polar(text):
    r, theta = parse_complex(text).real, parse_complex(text).imag
    return r * complex(math.cos(theta), math.sin(theta))


def build_parser():
    p = argparse.ArgumentParser(prog="diskops", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [("verify", "run the identity and certificate suites at a"),
                        ("spectrum", "spectrum of P_- - P_+ for the eigenspaces of C_a"),
                        ("angles", "principal angles between N(C_a - I) and N(C_b - I)"),
                        ("geodesic", "geodesic joining N(C_a - I) and N(C_a + I)"),
                        ("sweep", "gap edge, triple norm and cosines over a polar grid of a")]:
        s = sub.add_parser(name, help=help_)
        g = s.add_mutually_exclusive_group()
        g.add_argument("--a", type=parse_complex, default=None, help="disk point 're,im'")
        g.add_argument("--a-polar", type=parse_polar, default=None, help="disk point 'r,theta'")
        s.add_argument("--b", type=parse_complex, default=0j, help="second disk point 're,im'")
        s.add_argument("--modes", type=int, default=128, help="truncation order N")
        s.add_argument("--oversample", type=int, default=8)
        s.add_argument("--tol", type=float, default=1e-6)
        s.add_argument("--out", default=None, help="output file (default stdout)")
        s.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "sweep":
            s.add_argument("--radii", type=lambda t: tuple(float(x) for x in t.split(",")),
                           default=(0.1, 0.2, 0.3, 0.4, 0.5, 0.6))
            s.add_argument("--angles", type=int, default=4)
    return p


def make_config(args):
    a = args.a if args.a is not None else (args.a_polar if args.a_polar is not None else 0j)
    cfg = RunConfig(args.command, complex(a), complex(args.b), args.modes, args.oversample,
                    args.tol, args.out, args.format,
                    getattr(args, "radii", RunConfig.radii), getattr(args, "angles", RunConfig.angles))
    if not 16 <= cfg.modes <= 512:
        raise UsageError(f"--modes must lie in [16, 512], got {cfg.modes}")
    if cfg.oversample < 2:
        raise UsageError("--oversample must be at least 2")
    if not 0 < cfg.tol < 1:
        raise UsageError("--tol must lie in (0, 1)")
    for name, v in (("a", cfg.a), ("b", cfg.b)):
        if abs(v) > 1 - mb.DISK_MARGIN:
            raise UsageError(f"--{name} must lie inside the unit disk")
    if any(not 0 <= r < 1 for r in cfg.radii) or cfg.angles < 1:
        raise UsageError("--radii must lie in [0, 1) and --angles must be positive")
    return cfg


# --- commands ---------------------------------------------------------------

def cmd_verify(cfg):
    checks = vf.run_all(cfg.a, cfg.modes, cfg.tol)
    rows = [c.as_dict() for c in checks]
    return {"checks": rows}, all(c.passed for c in checks), \
        ser.rows_to_csv(["name", "residual", "tol", "passed"],
                        [(r["name"], r["residual"], r["tol"], r["passed"]) for r in rows])


def _pm_pair(a, order):
    return gr.align(gr.subspace("C", a, -1, order), gr.subspace("C", a, 1, order))


def cmd_spectrum(cfg):
    pm, pp, degree = _pm_pair(cfg.a, cfg.modes)
    spec = gr.difference_spectrum(pm, pp)
    edge = math.sqrt(1 - abs(cfg.a) ** 2)
    inside = int(np.sum(np.abs(spec) < edge - 0.01))
    pos = spec[spec > 1e-9]
    payload = {
        "a": ser._c(cfg.a), "N": cfg.modes, "degree": degree,
        "gap_edge": edge,
        "eigenvalues_inside_gap": inside,
        "min_positive": float(pos.min()) if pos.size else None,
        "max": float(spec.max()) if spec.size else None,
        "triple_norm": gr.triple_norm(pm, pp),
        "product_norm": gr.product_norm(pm, pp),
        "diff_spectrum": [float(x) for x in spec],
    }
    return payload, inside == 0, ser.spectrum_to_csv(spec)


def cmd_angles(cfg):
    P = gr.subspace("C", cfg.a, 1, cfg.modes)
    Q = gr.subspace("C", cfg.b, 1, cfg.modes)
    rep = gr.pair_report(P, Q, tol=cfg.tol)
    payload = ser.pair_report_to_json(rep, cfg.a, cfg.b)
    # N(C_a - I) meets N(C_b - I) exactly in the constants when a != b
    ok = rep.dim_meet == 1 if cfg.a != cfg.b else True
    csv = ser.rows_to_csv(["index", "cosine"], [(i, float(c)) for i, c in enumerate(rep.principal_cosines)])
    return payload, ok, csv


def offdiag_profile(seg, t):
    """||(I - P) P_t P||, the size of the off-diagonal block of P_t relative to the start."""
    P = seg.start.base.entries
    Pt = gr.geodesic_point(seg, t).base.entries
    return float(np.linalg.norm((np.eye(P.shape[0]) - P) @ Pt @ P, 2))


def cmd_geodesic(cfg):
    if cfg.a == 0:
        raise UsageError("geodesic needs a != 0 (for a = 0 the eigenspaces are E and O)")
    pm, pp, degree = gr.align(gr.subspace("C", cfg.a, 1, cfg.modes),
                              gr.subspace("C", cfg.a, -1, cfg.modes))
    exists = gr.geodesic_exists(pm, pp, cfg.tol)
    seg = gr.geodesic_generator(pm, pp)
    samples = [(t, offdiag_profile(seg, t)) for t in np.linspace(0, 1, 5)]
    payload = ser.geodesic_to_json(seg, cfg.a, samples)
    payload["exists"] = exists
    payload["degree"] = degree
    ok = exists == "yes_unique" and payload["endpoint_residual"] <= 1e-5 and seg.normalized
    return payload, ok, ser.rows_to_csv(["t", "offdiag_profile"], samples)


def cmd_sweep(cfg):
    rows = []
    for r in cfg.radii:
        if r == 0:
            continue
        for k in range(cfg.angles):
            a = complex(r * np.exp(2j * np.pi * k / cfg.angles))
            pm, pp, _ = _pm_pair(a, cfg.modes)
            spec = gr.difference_spectrum(pm, pp)
            pos = spec[spec > 1e-9]
            cos = gr.principal_cosines(pm, pp)
            rows.append({"a": ser._c(a), "gap_edge": float(pos.min()) if pos.size else None,
                         "triple_norm": gr.triple_norm(pm, pp),
                         "top_cosines": [float(c) for c in cos[:3]]})
    csv = ser.rows_to_csv(["re_a", "im_a", "gap_edge", "triple_norm", "top_cosine"],
                          [(r["a"][0], r["a"][1], r["gap_edge"], r["triple_norm"],
                            r["top_cosines"][0] if r["top_cosines"] else None) for r in rows])
    return {"rows": rows}, True, csv


COMMANDS = {"verify": cmd_verify, "spectrum": cmd_spectrum, "angles": cmd_angles,
            "geodesic": cmd_geodesic, "sweep": cmd_sweep}


def envelope(cfg, results, passed, error=None):
    return {
        "tool_version": __version__,
        "config": cfg.echo(),
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "results": results,
        "summary": {"passed": bool(passed), "error": error},
    }


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _glue_values(argv):
    """Rewrite '--b -0.4,0' as '--b=-0.4,0' so argparse does not read the value as a flag."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in ("--a", "--b", "--a-polar"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    argv = _glue_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = make_config(args)
    except UsageError as exc:
        print(f"diskops: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SymbolAliasWarning)
            results, passed, csv = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"diskops: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInDisk as exc:
        print(f"diskops: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CERT_ERRORS as exc:
        _emit(ser.dumps(envelope(cfg, None, False, f"{type(exc).__name__}: {exc}")), cfg.out)
        return EXIT_CERT
    if cfg.format == "csv":
        _emit(csv, cfg.out)
    else:
        _emit(ser.dumps(envelope(cfg, results, passed)), cfg.out)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
