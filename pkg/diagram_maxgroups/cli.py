from __future__ import annotations

import argparse
from dataclasses import replace
import json
import logging
from pathlib import Path
import sys
from typing import Callable, Sequence

from .acceptance import run_acceptance
from .biorder import LinkedDiamond, SingularWitness
from .config import FAMILIES, MONOID_KINDS, OUTPUT_FORMATS, TREE_KINDS, RunConfig
from .ghgraph import named_tree, to_dot, tree_to_dict
from .groupid import verdict_to_dict
from .io import write_text
from .pipeline import (
    DClassArtifacts,
    GroupArtifacts,
    build_dclass_artifacts,
    build_group_artifacts,
    load_handle,
    resolve_tree_kind,
)
from .present import (
    emit_semigroup_presentations,
    format_presentation,
    format_semigroup_doc,
    presentation_to_dict,
    to_cas,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DOC_FAMILIES = ("ig", "rig", "pg", "pg-e")

COMMAND_FORMATS = {
    "stats": ("text", "json"),
    "presentation": ("text", "json", "cas"),
    "identify": ("text", "json", "cas"),
    "squares": ("text", "json"),
    "graph": ("text", "json", "dot"),
    "verify": ("text", "json"),
    "emit": ("text",),
}


class UsageError(ValueError):
    pass


def _dumps(payload: dict | list) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=1) + "\n"


def _check_format(command: str, fmt: str) -> None:
    if fmt not in COMMAND_FORMATS[command]:
        allowed = ", ".join(COMMAND_FORMATS[command])
        raise UsageError(f"O comando {command!r} não oferece o formato {fmt!r} (opções: {allowed})")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    base = RunConfig.default()
    cfg = replace(
        base,
        kind=args.monoid,
        n=args.n,
        graph=Path(args.graph) if args.graph else None,
        rank=args.rank if args.rank is not None else (1 if args.monoid in ("Adjacency", "Tn") else 0),
        tree=args.tree,
        family=args.family,
        output_format=args.format,
        cache_dir=Path(args.cache_dir) if args.cache_dir else base.cache_dir,
        max_cosets=args.max_cosets,
        threads=args.threads,
        degree_cap=args.degree_cap,
        progress=args.progress,
        use_cache=not args.no_cache,
    )
    return cfg.validate()


# Comandos


def cmd_stats(cfg: RunConfig) -> tuple[str, int]:
    art = build_dclass_artifacts(cfg)
    s = art.summary
    fmt = cfg.output_format
    if fmt == "json":
        payload = dict(s)
        payload["strata"] = {
            f"{k},{l}": int(art.strata.loc[k, l]) for k in art.strata.index for l in art.strata.columns
        }
        return _dumps(payload), EXIT_OK
    lines = [
        f"{s['monoid']} posto {s['rank']}",
        f"|D|={s['D']} P_D={s['P_D']} E_D={s['E_D']}",
        f"classes R={s['I']} classes L={s['J']}",
        f"grafo GH conexo: {'sim' if s['connected'] else 'não'} (posto de ciclos {s['cycle_rank']})",
        "estratos |E^k_l| (linhas NTu, colunas NTd):",
        art.strata.to_string(),
    ]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_presentation(cfg: RunConfig) -> tuple[str, int]:
    art = build_group_artifacts(cfg)
    fmt = cfg.output_format
    if fmt == "cas":
        return to_cas(art.simplified), EXIT_OK
    if fmt == "json":
        payload = {
            "family": cfg.family,
            "tree": tree_to_dict(art.dclass.handle, art.tree) if art.tree is not None else None,
            "presentation": presentation_to_dict(art.presentation),
            "simplified": presentation_to_dict(art.simplified),
        }
        return _dumps(payload), EXIT_OK
    text = (
        f"# {cfg.family}: apresentação\n{format_presentation(art.presentation)}"
        f"# após Tietze\n{format_presentation(art.simplified)}"
    )
    return text, EXIT_OK


def cmd_identify(cfg: RunConfig) -> tuple[str, int]:
    art = build_group_artifacts(cfg)
    fmt = cfg.output_format
    if fmt == "json":
        return _dumps(verdict_to_dict(art.verdict)), EXIT_OK
    if fmt == "cas":
        return to_cas(art.simplified), EXIT_OK
    out = art.rendered + "\n"
    if logger.isEnabledFor(logging.INFO):
        out += "".join(f"  {line}\n" for line in art.verdict.evidence)
    return out, EXIT_OK


def _witness_row(art: GroupArtifacts, w: SingularWitness) -> dict:
    fmt = art.dclass.format
    return {
        "orientation": w.orientation,
        "corners": [fmt(x) for x in w.square.corners],
        "u": fmt(w.u),
        "degenerate": w.square.is_degenerate,
    }


def _diamond_row(art: GroupArtifacts, dm: LinkedDiamond) -> dict:
    return {
        "s": dm.s,
        "u": dm.u,
        "v": dm.v,
        "w": dm.w,
        "p": art.dclass.format(dm.p),
        "witnesses": dm.witnesses,
        "degenerate": dm.is_degenerate,
    }


def cmd_squares(cfg: RunConfig) -> tuple[str, int]:
    art = build_group_artifacts(cfg)
    rows = [_witness_row(art, w) for w in art.squares] + [_diamond_row(art, dm) for dm in art.diamonds]
    fmt = cfg.output_format
    if fmt == "json":
        return _dumps(rows), EXIT_OK
    if art.squares:
        lines = [f"{len(art.squares)} quadrados singulares"]
        lines.extend(
            f"{r['orientation']} ({r['corners'][0]} | {r['corners'][1]} ; {r['corners'][2]} | {r['corners'][3]}) u={r['u']}"
            for r in rows
        )
    else:
        lines = [f"{len(art.diamonds)} diamantes ligados"]
        lines.extend(f"({r['s']},{r['u']};{r['v']},{r['w']}) p={r['p']} [{r['witnesses']}]" for r in rows)
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_graph(cfg: RunConfig) -> tuple[str, int]:
    art: DClassArtifacts = build_dclass_artifacts(cfg)
    tree = None
    if cfg.family in ("ig", "pg"):
        tree = named_tree(resolve_tree_kind(cfg, art.handle), art.dclass, art.graph)
    fmt = cfg.output_format
    if fmt == "dot":
        return to_dot(art.graph, tree), EXIT_OK
    d = art.dclass
    edges = [
        {"i": i, "j": j, "idempotent": d.format(e), "tree": tree is not None and e in tree.edges}
        for e, (i, j) in art.graph.edges.items()
    ]
    if fmt == "json":
        payload = {
            "edges": edges,
            "tree": tree_to_dict(art.handle, tree) if tree is not None else None,
        }
        return _dumps(payload), EXIT_OK
    lines = [f"I{x['i']} -- J{x['j']}  {x['idempotent']}{'  *' if x['tree'] else ''}" for x in edges]
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_verify(cfg: RunConfig, include_slow: bool = False) -> tuple[str, int]:
    report = run_acceptance(cfg, include_slow=include_slow)
    code = EXIT_OK if bool(report["passed"].all()) else EXIT_FAILED
    if cfg.output_format == "json":
        return report.to_json(orient="records", force_ascii=False, indent=1) + "\n", code
    return report.to_string(index=False) + "\n", code


def cmd_emit(cfg: RunConfig, doc_family: str) -> tuple[str, int]:
    doc = emit_semigroup_presentations(load_handle(cfg), doc_family)
    return format_semigroup_doc(doc), EXIT_OK


# Parser


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--monoid", choices=MONOID_KINDS, default="Pn")
    parent.add_argument("--n", type=int, default=3)
    parent.add_argument("--graph", help="lista de arestas 'u v' para o semigrupo de adjacência")
    parent.add_argument("--rank", type=int, default=None)
    parent.add_argument("--tree", choices=TREE_KINDS, default="auto")
    parent.add_argument("--family", choices=FAMILIES, default="ig")
    parent.add_argument("--format", choices=OUTPUT_FORMATS, default="text")
    parent.add_argument("--cache-dir", default=None)
    parent.add_argument("--no-cache", action="store_true")
    parent.add_argument("--max-cosets", type=int, default=RunConfig.default().max_cosets)
    parent.add_argument("--threads", type=int, default=1)
    parent.add_argument("--degree-cap", type=int, default=RunConfig.default().degree_cap)
    parent.add_argument("--progress", action="store_true")
    parent.add_argument("--output", "-o", default=None, help="grava a saída neste arquivo")
    parent.add_argument("--verbose", "-v", action="count", default=0)
    return parent


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diagram_maxgroups",
        description="Subgrupos maximais de IG(E) e PG(P) para monoides de diagramas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _common_options()
    sub.add_parser("stats", parents=[parent], help="contagens da classe D e estratos")
    sub.add_parser("presentation", parents=[parent], help="apresentação do subgrupo maximal")
    sub.add_parser("identify", parents=[parent], help="identifica o grupo")
    sub.add_parser("squares", parents=[parent], help="quadrados singulares ou diamantes ligados")
    sub.add_parser("graph", parents=[parent], help="grafo de Graham-Houghton")
    verify = sub.add_parser("verify", parents=[parent], help="roda os critérios de aceitação")
    verify.add_argument("--slow", action="store_true", help="inclui os casos com n=5")
    emit = sub.add_parser("emit", parents=[parent], help="apresentações de semigrupo IG/RIG/PG")
    emit.add_argument("--doc", choices=DOC_FAMILIES, default="ig")
    return parser


def _dispatch(args: argparse.Namespace, cfg: RunConfig) -> tuple[str, int]:
    _check_format(args.command, cfg.output_format)
    commands: dict[str, Callable[[RunConfig], tuple[str, int]]] = {
        "stats": cmd_stats,
        "presentation": cmd_presentation,
        "identify": cmd_identify,
        "squares": cmd_squares,
        "graph": cmd_graph,
    }
    if args.command == "verify":
        return cmd_verify(cfg, include_slow=args.slow)
    if args.command == "emit":
        return cmd_emit(cfg, args.doc)
    return commands[args.command](cfg)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = config_from_args(args)
        text, code = _dispatch(args, cfg)
    except ValueError as exc:
        print(f"erro: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output:
        path = write_text(args.output, text)
        logger.info("Saída gravada em %s", path)
    else:
        sys.stdout.write(text)
    return code
