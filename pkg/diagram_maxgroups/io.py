from __future__ import annotations

from hashlib import sha256
import json
import logging
from pathlib import Path

import pandas as pd

from .green import DCLASS_FORMAT_VERSION, DClassData, DClassError, dclass_data, from_dict, to_dict
from .monoids import MonoidHandle

logger = logging.getLogger(__name__)


class CacheError(ValueError):
    pass


class EdgeListError(ValueError):
    pass


def load_edge_list(path: str | Path) -> tuple[list[tuple[str, str]], list[str]]:
    """Lista de arestas `u v` por linha; uma linha com um só vértice o declara isolado.

    Laços e simetria ficam implícitos (o semigrupo de adjacência os acrescenta).
    """
    path = Path(path)
    try:
        df = pd.read_csv(
            path, sep=r"\s+", header=None, names=["u", "v"], comment="#", dtype=str, engine="python"
        )
    except pd.errors.EmptyDataError:
        raise EdgeListError(f"Arquivo de grafo vazio: {path}") from None
    except pd.errors.ParserError as exc:
        raise EdgeListError(f"Linha inválida em {path}: {exc}") from None
    if df.empty:
        raise EdgeListError(f"Arquivo de grafo vazio: {path}")
    pairs = [(u, v) for u, v in df.dropna().itertuples(index=False)]
    isolated = df.loc[df["v"].isna(), "u"].tolist()
    return pairs, isolated


def cache_key(h: MonoidHandle, r: int) -> str:
    if h.kind == "Adjacency":
        edges = ";".join(f"{p},{q}" for p, q in sorted(h.edges))
        tag = sha256(f"{h.vertices}|{edges}".encode("utf-8")).hexdigest()[:12]
        return f"Adjacency-{tag}-r{r}-v{DCLASS_FORMAT_VERSION}"
    return f"{h.kind}-n{h.n}-r{r}-v{DCLASS_FORMAT_VERSION}"


def read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CacheError(f"JSON ilegível em {path}: {exc}") from None


def write_json(path: str | Path, payload: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    return path


def write_text(path: str | Path, text: str) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def load_dclass(
    h: MonoidHandle, r: int, cache_dir: str | Path | None = None, *, use_cache: bool = True
) -> DClassData:
    """Classe D via cache JSON em disco, calculando e gravando quando ausente."""
    if cache_dir is None or not use_cache:
        return dclass_data(h, r)
    path = Path(cache_dir) / f"{cache_key(h, r)}.json"
    if path.exists():
        payload = read_json(path)
        try:
            d = from_dict(h, payload)
        except (DClassError, KeyError) as exc:
            raise CacheError(f"Cache incompatível em {path}: {exc}") from None
        logger.info("Classe D lida do cache: %s", path)
        return d
    d = dclass_data(h, r)
    write_json(path, to_dict(d))
    logger.info("Classe D gravada no cache: %s", path)
    return d
