"""Command-line interface: ``qboson <command> ...``.

Exit codes: 0 success, 1 verification failure (including engine
disagreement), 2 input error, 3 size-guard refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import yaml

from .diagrams import form_graph, grdim_hom_a2
from .foundations import CartanError, CartanMatrix, RatScalar, SizeGuardError, series_expand
from .freealg import AlgElement, serre_element
from .gram import gram_matrix, kernel_rank
from .klr import KLRAlgebra, KLRParams, grdim_block, parse_klr, parse_sequence
from .straighten import form_alg, straighten, word_kappa
from .syntax import (ParseError, element_to_json, format_element, format_form_value, format_scalar,
                     parse_element, parse_word, scalar_to_json)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
ENGINES = ("graphical", "algebraic", "both")


class InputError(Exception):
    """Bad command-line input or configuration."""


@dataclass
class RunConfig:
    cartan: CartanMatrix
    klr_params: KLRParams = field(default_factory=KLRParams)
    engine: str = "both"
    window: tuple[int, int] = (-6, 6)
    max_words: int = 200
    klr_size: int = 4
    output: str = "text"
    seed: int | None = None

    def __post_init__(self):
        if self.engine not in ENGINES:
            raise InputError(f"engine must be one of {ENGINES}")
        if self.max_words <= 0 or self.klr_size <= 0:
            raise InputError("size guards must be positive")
        if self.window[0] > self.window[1]:
            raise InputError("window low end exceeds high end")


def load_cartan_file(path: str | Path) -> tuple[CartanMatrix, KLRParams]:
    try:
        data = yaml.safe_load(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise InputError(f"config {path} is not valid YAML: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config must be a mapping with labels, cartan and symmetrizers")
    try:
        labels = [str(x) for x in data["labels"]]
        rows = [[int(x) for x in row] for row in data["cartan"]]
        sym = [int(x) for x in data.get("symmetrizers") or [1] * len(labels)]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed config: {exc}") from exc
    cm = CartanMatrix.checked(labels, rows, sym)
    try:
        params = KLRParams.from_config(data.get("klr_params"), cm)
    except (ValueError, KeyError) as exc:
        raise InputError(f"bad klr_params: {exc}") from exc
    return cm, params


def _scalar_out(x: RatScalar, cfg: RunConfig, kappa=None) -> str:
    if cfg.output == "json":
        return json.dumps(scalar_to_json(x))
    if kappa is not None:
        return format_form_value(x, cfg.cartan, kappa)
    return format_scalar(x)


def _series_text(x: RatScalar, window: tuple[int, int]) -> str:
    """Ascending truncated series, e.g. ``1 + 2*q^2 + O(q^5)``."""
    parts = []
    for e, c in sorted(series_expand(x, *window).items()):
        if not c:
            continue
        mono = "1" if e == 0 else "q" if e == 1 else f"q^{e}"
        if c == 1:
            parts.append(mono)
        elif e == 0:
            parts.append(str(c))
        else:
            parts.append(f"{c}*{mono}" if isinstance(c, int) else f"({c})*{mono}")
    parts.append(f"O(q^{window[1] + 1})")
    return " + ".join(parts).replace("+ -", "- ")


def _common_kappa(x: AlgElement, y: AlgElement, rank: int):
    kappas = {word_kappa(u + v, rank) for u in x.terms for v in y.terms}
    kappas.discard(None)
    return kappas.pop() if len(kappas) == 1 else None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_form(args, cfg: RunConfig) -> int:
    cm = cfg.cartan
    x, y = parse_element(args.x, cm), parse_element(args.y, cm)
    kappa = _common_kappa(x, y, cm.rank)
    engine = args.engine or cfg.engine
    values = {}
    if engine in ("graphical", "both"):
        values["graphical"] = form_graph(x, y)
    if engine in ("algebraic", "both"):
        values["algebraic"] = form_alg(x, y)
    distinct = set(values.values())
    if len(distinct) == 1:
        print(_scalar_out(distinct.pop(), cfg, kappa))
        return EXIT_OK
    for name, v in values.items():
        print(f"{name}: {_scalar_out(v, cfg, kappa)}")
    print("engines disagree", file=sys.stderr)
    return EXIT_VERIFY


def cmd_straighten(args, cfg: RunConfig) -> int:
    x = straighten(parse_element(args.x, cfg.cartan))
    print(json.dumps(element_to_json(x)) if cfg.output == "json" else format_element(x))
    return EXIT_OK


def cmd_homdim(args, cfg: RunConfig) -> int:
    cm = cfg.cartan
    src, tgt = parse_word(args.src, cm), parse_word(args.tgt, cm)
    try:
        g = grdim_hom_a2(src, tgt, cm)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    kappa = word_kappa(src + tgt, cm.rank)
    if cfg.output == "json":
        print(json.dumps({"grdim": scalar_to_json(g.value),
                          "series": {str(e): str(c) for e, c in g.series(*cfg.window).items()}}))
    else:
        print(format_form_value(g.value, cm, kappa) if kappa else format_scalar(g.value))
        print(_series_text(g.value, cfg.window))
    return EXIT_OK


def _read_words(spec: str, cm: CartanMatrix) -> list:
    path = Path(spec)
    if path.is_file():
        lines = [ln.strip() for ln in path.read_text().splitlines()]
    else:
        lines = [part.strip() for part in spec.split(";")]
    return [parse_word(ln, cm) for ln in lines if ln and not ln.startswith("#")]


def cmd_gram(args, cfg: RunConfig) -> int:
    cm = cfg.cartan
    words = _read_words(args.words, cm)
    if len(words) > cfg.max_words:
        raise SizeGuardError("max_words", len(words), cfg.max_words)
    engine = args.engine or cfg.engine
    g = gram_matrix(words, "graphical" if engine == "both" else engine, cm)
    if engine == "both":
        other = gram_matrix(words, "algebraic", cm)
        if other.entries != g.entries:
            print("engines disagree on the Gram matrix", file=sys.stderr)
            return EXIT_VERIFY
    csv_text = g.to_csv()
    if args.csv_out:
        Path(args.csv_out).write_text(csv_text)
    else:
        sys.stdout.write(csv_text)
    if args.kernel:
        rank, kernel = kernel_rank(g)
        payload = {"rank": rank, "kernel": [element_to_json(k) for k in kernel]}
        text = json.dumps(payload)
        if args.json_out:
            Path(args.json_out).write_text(text + "\n")
        else:
            print(text)
    return EXIT_OK


def cmd_klr_dim(args, cfg: RunConfig) -> int:
    cm = cfg.cartan
    try:
        src, dst = parse_sequence(args.iseq, cm), parse_sequence(args.jseq, cm)
    except KeyError as exc:
        raise InputError(str(exc)) from exc
    for seq in (src, dst):
        if len(seq) > cfg.klr_size:
            raise SizeGuardError("klr_size", len(seq), cfg.klr_size)
    g = grdim_block(src, dst, cm)
    if cfg.output == "json":
        print(json.dumps({"grdim": scalar_to_json(g.value)}))
    else:
        counts = [0] * cm.rank
        for v in src:
            counts[v] += 1
        print(format_form_value(g.value, cm, counts) if not g.value.is_zero() else "0")
        print(_series_text(g.value, cfg.window))
    return EXIT_OK


def cmd_klr_mul(args, cfg: RunConfig) -> int:
    alg = KLRAlgebra(cfg.cartan, cfg.klr_params, cfg.klr_size)
    try:
        a, b = parse_klr(args.a, alg), parse_klr(args.b, alg)
        prod = alg.multiply(a, b)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise InputError(str(exc)) from exc
    if cfg.output == "json":
        print(json.dumps([{"idempotent": list(k.idempotent), "permutation": list(k.permutation),
                           "exponents": list(k.exponents), "coeff": str(c)}
                          for k, c in prod.terms.items()]))
    else:
        print(prod)
    return EXIT_OK


def cmd_serre(args, cfg: RunConfig) -> int:
    cm = cfg.cartan
    try:
        i, j = cm.index(args.i), cm.index(args.j)
        s = serre_element(cm, i, j, args.n)
    except (KeyError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    print(json.dumps(element_to_json(s)) if cfg.output == "json" else format_element(s))
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    from .verify import DEFAULT_SEED, SUITES, run_suite
    seed = DEFAULT_SEED if cfg.seed is None else cfg.seed
    names = list(SUITES) if args.suite == "all" else [args.suite]
    ok = True
    report = []
    for name in names:
        res = run_suite(name, seed)
        ok = ok and res.ok
        checks = [{"check": c.name, "checked": c.checked, "failed": len(c.failures)} for c in res.checks]
        report.append({"suite": name, "seconds": round(res.seconds, 3), "ok": res.ok, "checks": checks})
        if cfg.output != "json":
            total = sum(c.checked for c in res.checks)
            failed = sum(len(c.failures) for c in res.checks)
            print(f"[{name}] {'PASS' if res.ok else 'FAIL'}  {total} instances, {failed} failed,"
                  f" {res.seconds:.2f}s")
            for c in res.checks:
                mark = "ok " if c.ok else "BAD"
                print(f"    {mark} {c.name}: {c.checked}" + ("" if c.ok else f" ({len(c.failures)} failed)"))
    if cfg.output == "json":
        print(json.dumps({"seed": seed, "suites": report}))
    return EXIT_OK if ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qboson", description="Exact computations in quantum boson algebras.")
    p.add_argument("--cartan", metavar="FILE", help="YAML file with labels, cartan, symmetrizers, klr_params")
    p.add_argument("--preset", default="A2", help="built-in Cartan datum when no file is given (default A2)")
    p.add_argument("--format", dest="output", choices=("text", "json", "csv"), default="text")
    p.add_argument("--window", nargs=2, type=int, metavar=("LOW", "HIGH"), default=(-6, 6),
                   help="series truncation window")
    p.add_argument("--max-words", type=int, default=200, help="size guard for gram")
    p.add_argument("--klr-size", type=int, default=4, help="size guard for KLR computations")
    p.add_argument("--seed", type=int, default=None)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("form", help="the bilinear form of two elements")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--engine", choices=ENGINES, default=None)
    s.set_defaults(func=cmd_form)

    s = sub.add_parser("straighten", help="reduced normal form")
    s.add_argument("x")
    s.set_defaults(func=cmd_straighten)

    s = sub.add_parser("homdim", help="graded dimension of an A2 Hom space")
    s.add_argument("src")
    s.add_argument("tgt")
    s.set_defaults(func=cmd_homdim)

    s = sub.add_parser("gram", help="Gram matrix and kernel")
    s.add_argument("--words", required=True, help="file with one word per line, or words separated by ';'")
    s.add_argument("--kernel", action="store_true")
    s.add_argument("--engine", choices=ENGINES, default=None)
    s.add_argument("--csv-out")
    s.add_argument("--json-out")
    s.set_defaults(func=cmd_gram)

    s = sub.add_parser("klr-dim", help="graded dimension of 1_j H 1_i")
    s.add_argument("iseq")
    s.add_argument("jseq")
    s.set_defaults(func=cmd_klr_dim)

    s = sub.add_parser("klr-mul", help="product of two KLR elements")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_klr_mul)

    s = sub.add_parser("serre", help="the quantum Serre element")
    s.add_argument("i")
    s.add_argument("j")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_serre)

    s = sub.add_parser("verify", help="run the property suites")
    s.add_argument("--suite", choices=("all", "forms", "klr", "sz"), default="all")
    s.add_argument("--seed", dest="suite_seed", type=int, default=None)
    s.set_defaults(func=cmd_verify)
    return p


def make_config(args) -> RunConfig:
    if args.cartan:
        cm, params = load_cartan_file(args.cartan)
    else:
        try:
            cm, params = CartanMatrix.preset(args.preset), KLRParams()
        except KeyError as exc:
            raise InputError(str(exc)) from exc
    return RunConfig(cm, params, getattr(args, "engine", None) or "both", tuple(args.window),
                     args.max_words, args.klr_size, args.output,
                     getattr(args, "suite_seed", None) if args.seed is None else args.seed)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = make_config(args)
        return args.func(args, cfg)
    except SizeGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, InputError, CartanError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
