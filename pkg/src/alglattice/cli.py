"""Command-line front end.

Every subcommand reads a JSON job config (``--config``) validated against
``schema/jobconfig.v1.json``; ``check`` and ``decode`` read files written by
``build`` and ``encode``.  Exit status: 0 success, 2 invalid input, 1 internal
inconsistency.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from importlib import resources
from pathlib import Path

import jsonschema
import numpy as np

from . import channelsim as cs
from . import codes
from . import construction as cn
from . import cosetcode as cc
from . import numberfield as nf
from .errors import AlgLatticeError, InconsistencyError

SNR_HELP = ("SNR is per real symbol: mean energy of one constellation coordinate "
            "divided by sigma_b^2. Fading sigma_h is the per-component standard "
            "deviation of complex Gaussian h, so E|h|^2 = 2 sigma_h^2.")


class UsageError(AlgLatticeError):
    pass


def load_schema() -> dict:
    text = resources.files("alglattice").joinpath("schema/jobconfig.v1.json").read_text()
    return json.loads(text)


def load_config(path: str | None) -> dict:
    if path is None:
        raise UsageError("--config is required")
    try:
        cfg = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from exc
    try:
        jsonschema.validate(cfg, load_schema())
    except jsonschema.ValidationError as exc:
        where = "/".join(str(x) for x in exc.absolute_path) or "<root>"
        raise UsageError(f"config {where}: {exc.message}") from exc
    return cfg


def _section(cfg: dict, name: str) -> dict:
    if name not in cfg:
        raise UsageError(f"config needs a '{name}' section")
    return cfg[name]


def field_from_config(cfg: dict) -> nf.FieldSpec:
    f = _section(cfg, "field")
    if "minpoly" in f:
        return nf.field_from_minpoly(nf.parse_poly(f["minpoly"]))
    kind = f["kind"]
    if kind == "rational":
        return nf.rational_field()
    if "p" not in f:
        raise UsageError(f"field kind {kind} needs p")
    ctor = nf.realsubfield_field if kind == "real_subfield" else nf.cyclotomic_field
    return ctor(f["p"], f.get("r", 1))


def code_from_config(cfg: dict, seed: int | None = None) -> codes.LinearCode:
    c = _section(cfg, "code")
    p, N, k = c["p"], c["N"], c["k"]
    if "G" in c and seed is None:
        C = codes.systematic_form(c["G"], p, N)
        if C.k != k or len(c["G"]) != k:
            raise UsageError(f"generator has {len(c['G'])} rows, config says k = {k}")
        return C
    if seed is None:
        seed = c.get("seed")
    if seed is None:
        raise UsageError("code needs either G or seed")
    return codes.random_self_orthogonal(p, N, k, seed)


def spec_from_config(cfg: dict, seed: int | None = None) -> cn.LatticeSpec:
    K = field_from_config(cfg)
    C = code_from_config(cfg, seed)
    lat = cfg.get("lattice", {})
    return cn.make_spec(K, C, alpha_mode=lat.get("alpha", "inv_p"),
                        normalized=lat.get("normalized", True), cm=lat.get("cm", False))


def book_from_config(cfg: dict, precision: int) -> cc.CosetCodebook:
    spec = spec_from_config(cfg)
    B = cfg.get("coset", {}).get("region_B", 1)
    return cc.CosetCodebook(spec, B, precision)


def _precision(args, cfg: dict | None = None) -> int:
    if args.precision is not None:
        return args.precision
    if cfg and "precision" in cfg:
        return cfg["precision"]
    return nf.DEFAULT_PRECISION


def parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_field(args) -> None:
    K = field_from_config(load_config(args.config))
    lines = [K.describe(), f"minpoly: {nf.format_poly(K.minpoly)}",
             f"discriminant: {nf.field_discriminant(K)}"]
    if K.p is not None:
        pd = nf.ramified_prime_data(K, K.p)
        lines.append(f"prime: ({K.p}, theta - {pd.residue_point}), e = {pd.ramification_index}, f = {pd.residue_degree}")
    emit("\n".join(lines) + "\n", args.out)


def cmd_code(args) -> None:
    C = code_from_config(load_config(args.config), args.seed)
    text = codes.format_code(C)
    text += f"# self_orthogonal: {str(codes.is_self_orthogonal(C)).lower()}\n"
    text += f"# self_dual: {str(codes.is_self_dual(C)).lower()}\n"
    emit(text, args.out)


def cmd_build(args) -> None:
    cfg = load_config(args.config)
    spec = spec_from_config(cfg, args.seed)
    L = cn.build_lattice(spec, _precision(args, cfg))
    cn.check_discriminant(spec, L.gram)
    if cn.gram_residual(L) > 1e-10:
        raise InconsistencyError("floating generator disagrees with the exact Gram matrix")
    emit(cn.format_bundle(L), args.out)


def cmd_check(args) -> None:
    bundle = cn.parse_bundle(Path(args.bundle).read_text())
    if "GRAM" not in bundle:
        raise UsageError(f"{args.bundle}: no GRAM block")
    gram = bundle["GRAM"]
    info = cn.classify(gram)
    lines = [f"rank: {len(gram)}", f"det: {info.det}", f"integral: {str(info.integral).lower()}",
             f"unimodular: {str(info.unimodular).lower()}", f"parity: {info.parity or 'n/a'}"]
    if args.zn:
        zn = info.unimodular and cn.is_isometric_zn(gram, max_rank=max(8, len(gram)))
        lines.append(f"isometric_to_Zn: {str(zn).lower()}")
    emit("\n".join(lines) + "\n", args.out)


def cmd_encode(args) -> None:
    cfg = load_config(args.config)
    book = book_from_config(cfg, _precision(args, cfg))
    s = parse_ints(args.secret)
    if args.randomizer is not None:
        r = parse_ints(args.randomizer)
    elif args.seed is not None:
        rng = np.random.default_rng(args.seed)
        B = book.region_B
        r = [int(x) for x in rng.integers(-B, B + 1, size=book.n * book.N)]
    else:
        r = None
    pt = cc.coset_encode(book, s, r)
    text = (f"secret={','.join(map(str, pt.secret))}\n"
            f"randomizer={','.join(map(str, pt.randomizer))}\n"
            f"coords={','.join(map(str, pt.coords))}\n"
            f"embedding={','.join(repr(float(x)) for x in pt.embedding)}\n")
    emit(text, args.out)


def cmd_decode(args) -> None:
    cfg = load_config(args.config)
    book = book_from_config(cfg, _precision(args, cfg))
    if args.vector is not None:
        x = [float(t) for t in args.vector.replace(",", " ").split()]
    else:
        if args.point is None:
            raise UsageError("decode needs a point file or --vector")
        text = sys.stdin.read() if args.point == "-" else Path(args.point).read_text()
        fields = dict(line.split("=", 1) for line in text.splitlines() if "=" in line)
        if "coords" in fields:
            x = parse_ints(fields["coords"])
        elif "embedding" in fields:
            x = [float(t) for t in fields["embedding"].split(",")]
        else:
            raise UsageError("point file has neither coords= nor embedding=")
    s = cc.coset_decode(book, x)
    emit(f"secret={','.join(map(str, s))}\n", args.out)


def cmd_metric(args) -> None:
    cfg = load_config(args.config)
    book = book_from_config(cfg, _precision(args, cfg))
    pts = cc.enumerate_constellation(book, args.lattice)
    rows = cc.constellation_rows(book, pts)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "coefficients", "row_norms", "norm", "term", "term_exact"])
    for r in rows:
        w.writerow([r["index"], " ".join(map(str, r["coefficients"])),
                    " ".join(repr(v) for v in r["row_norms"]), r["norm"], repr(r["term"]),
                    "" if r["term_exact"] is None else str(r["term_exact"])])
    emit(buf.getvalue(), args.out)
    total = cc.confusion_sum(book, pts)
    print(f"points={total.count} direct={total.direct!r} norm_form={total.norm_form!r}"
          + (f" exact={float(total.exact)!r}" if total.exact is not None else ""), file=sys.stderr)


def cmd_simulate(args) -> None:
    cfg = load_config(args.config)
    book = book_from_config(cfg, _precision(args, cfg))
    ch = dict(cfg.get("channel", {}))
    if args.seed is not None:
        ch["seed"] = args.seed
    if "snr_list" in ch:
        ch["snr_list"] = tuple(ch["snr_list"])
    result = cs.simulate(book, cs.ChannelConfig(**ch))
    emit(result.to_csv(), args.out)


def cmd_search(args) -> None:
    cfg = load_config(args.config)
    K = field_from_config(cfg)
    c = _section(cfg, "code")
    normalized = cfg.get("lattice", {}).get("normalized", True)
    B = cfg.get("coset", {}).get("region_B", 1)
    C, value = cc.code_search(c["p"], c["N"], c["k"], K, B, normalized=normalized,
                              precision=min(_precision(args, cfg), 64))
    emit(codes.format_code(C) + f"# confusion_sum: {value!r}\n", args.out)


COMMANDS = {
    "field": (cmd_field, "describe the number field and its ramified prime"),
    "code": (cmd_code, "print the code (from G, or a seeded random self-orthogonal code)"),
    "build": (cmd_build, "build the lattice and write a GRAM/GENERATOR bundle"),
    "check": (cmd_check, "classify the Gram matrix of a bundle"),
    "encode": (cmd_encode, "coset-encode a secret"),
    "decode": (cmd_decode, "recover the secret from an encoded point"),
    "metric": (cmd_metric, "dump the constellation and its confusion sum as CSV"),
    "simulate": (cmd_simulate, "Monte Carlo over the block-fading channel (CSV). " + SNR_HELP),
    "search": (cmd_search, "exhaustive self-orthogonal code search by confusion sum"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON job config")
    common.add_argument("--seed", type=int, metavar="U64", help="override the config seed")
    common.add_argument("--precision", type=int, metavar="BITS", help="working precision for embeddings")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="alglattice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}
    for name, (_, help_text) in COMMANDS.items():
        subs[name] = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    subs["check"].add_argument("bundle", help="bundle file written by build")
    subs["check"].add_argument("--zn", action="store_true", help="test for isometry with Z^n")
    subs["encode"].add_argument("--secret", required=True, help="comma-separated digits")
    subs["encode"].add_argument("--randomizer", help="comma-separated box coefficients (default: zeros, or seeded)")
    subs["decode"].add_argument("point", nargs="?", help="file written by encode, or - for stdin")
    subs["decode"].add_argument("--vector", help="comma-separated real embedding instead of a file")
    subs["metric"].add_argument("--lattice", choices=("e", "b"), default="e",
                                help="enumerate the eavesdropper lattice (e) or the full code (b)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is not None and not 0 <= args.seed < 2 ** 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return 2
    handler = COMMANDS[args.command][0]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            handler(args)
    except InconsistencyError as exc:
        print(f"error: InconsistencyError: {exc}", file=sys.stderr)
        return 1
    except (AlgLatticeError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
