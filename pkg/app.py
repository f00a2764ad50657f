from __future__ import annotations

from dataclasses import replace
from pathlib import Path

import pandas as pd
import plotly.express as px
import streamlit as st

from diagram_maxgroups import RunConfig, build_dclass_artifacts, build_group_artifacts
from diagram_maxgroups.config import FAMILIES, MONOID_KINDS, TREE_KINDS, ConfigError
from diagram_maxgroups.groupid import UNKNOWN, verdict_to_dict
from diagram_maxgroups.present import format_presentation, to_cas


def _config(kind: str, n: int, rank: int, family: str, tree: str, graph: str | None) -> RunConfig:
    cfg = replace(
        RunConfig.default(),
        kind=kind,
        n=n,
        rank=rank,
        family=family,
        tree=tree,
        graph=Path(graph) if graph else None,
    )
    return cfg.validate()


@st.cache_data(show_spinner="Calculando a classe D...")
def _dclass_tables(cfg: RunConfig) -> tuple[dict, pd.DataFrame, pd.DataFrame]:
    art = build_dclass_artifacts(cfg)
    d = art.dclass
    edges = pd.DataFrame(
        [{"I": i, "J": j, "idempotente": d.format(e)} for e, (i, j) in art.graph.edges.items()]
    )
    return dict(art.summary), art.strata, edges


@st.cache_data(show_spinner="Montando a apresentação...")
def _group_tables(cfg: RunConfig) -> dict:
    art = build_group_artifacts(cfg)
    d = art.dclass
    tree_edges = set(art.tree.edges) if art.tree is not None else set()
    squares = pd.DataFrame(
        [
            {
                "orientação": w.orientation,
                "e": d.format(w.square.e),
                "f": d.format(w.square.f),
                "g": d.format(w.square.g),
                "h": d.format(w.square.h),
                "u": d.format(w.u),
            }
            for w in art.squares
        ]
    )
    diamonds = pd.DataFrame(
        [
            {"s": dm.s, "u": dm.u, "v": dm.v, "w": dm.w, "p": d.format(dm.p), "testemunhas": dm.witnesses}
            for dm in art.diamonds
        ]
    )
    return {
        "tree_kind": art.tree.kind if art.tree is not None else None,
        "tree": sorted(d.format(e) for e in tree_edges),
        "presentation": format_presentation(art.presentation),
        "simplified": format_presentation(art.simplified),
        "cas": to_cas(art.simplified),
        "squares": squares,
        "diamonds": diamonds,
        "verdict": verdict_to_dict(art.verdict),
    }


def main() -> None:
    st.set_page_config(page_title="Subgrupos maximais — monoides de diagramas", layout="wide")
    st.title("Subgrupos maximais de IG(E) e PG(P)")

    with st.sidebar:
        st.header("Entradas")
        kind = st.selectbox("Monoide", MONOID_KINDS, index=0)
        graph = None
        if kind == "Adjacency":
            graph = st.text_input("Lista de arestas (arquivo)", value="")
        n = st.number_input("n", min_value=1, max_value=6, value=3, step=1)
        rank = st.number_input("Posto r", min_value=0, max_value=int(n), value=1 if kind in ("Tn", "Adjacency") else 0)
        st.header("Grupo")
        family = st.radio("Família", FAMILIES, index=0, horizontal=True)
        tree = st.selectbox("Árvore geradora", TREE_KINDS, index=0)
        st.caption("n=5 pode levar minutos na primeira execução; os resultados ficam no cache em disco.")

    try:
        cfg = _config(kind, int(n), int(rank), family, tree, graph)
    except ConfigError as exc:
        st.error(str(exc))
        st.stop()

    try:
        summary, strata, edges = _dclass_tables(cfg)
    except ValueError as exc:
        st.error(f"Falha ao calcular a classe D: {exc}")
        st.stop()

    tabs = st.tabs(["Classe D", "Grafo GH", "Quadrados", "Grupo"])

    with tabs[0]:
        st.subheader(f"{summary['monoid']}, posto {summary['rank']}")
        k1, k2, k3, k4 = st.columns(4)
        k1.metric("|D|", summary["D"])
        k2.metric("Idempotentes", summary["E_D"])
        k3.metric("Projeções", summary["P_D"])
        k4.metric("Classes R × L", f"{summary['I']} × {summary['J']}")
        if strata.size:
            fig = px.imshow(
                strata,
                text_auto=True,
                labels={"x": "NTd", "y": "NTu", "color": "idempotentes"},
                title="Estratos |E^k_l|",
            )
            st.plotly_chart(fig, width="stretch")

    with tabs[1]:
        c1, c2 = st.columns(2)
        c1.metric("Conexo", "sim" if summary["connected"] else "não")
        c2.metric("Posto de ciclos", summary["cycle_rank"])
        st.dataframe(edges, width="stretch", hide_index=True)
        if not edges.empty:
            deg = edges.groupby("I").size().rename("grau").reset_index()
            st.plotly_chart(px.bar(deg, x="I", y="grau", title="Grau das classes R"), width="stretch")

    try:
        group = _group_tables(cfg)
    except ValueError as exc:
        for tab in tabs[2:]:
            with tab:
                st.error(f"Falha ao montar a apresentação: {exc}")
        return

    with tabs[1]:
        if group["tree_kind"]:
            st.markdown(f"**Árvore `{group['tree_kind']}`** ({len(group['tree'])} arestas)")
            st.dataframe(pd.DataFrame({"idempotente": group["tree"]}), width="stretch", hide_index=True)

    with tabs[2]:
        if cfg.family in ("ig", "pg"):
            st.markdown(f"**{len(group['squares'])} quadrados singulares**")
            st.dataframe(group["squares"], width="stretch", hide_index=True)
        else:
            st.markdown(f"**{len(group['diamonds'])} diamantes ligados**")
            st.dataframe(group["diamonds"], width="stretch", hide_index=True)

    with tabs[3]:
        verdict = group["verdict"]
        if verdict["kind"] == UNKNOWN:
            st.warning(verdict["rendered"])
        else:
            st.success(verdict["rendered"])
        with st.expander("Evidências"):
            st.markdown("\n".join(f"- {line}" for line in verdict["evidence"]))
        c1, c2 = st.columns(2)
        with c1:
            st.markdown("**Apresentação**")
            st.code(group["presentation"])
        with c2:
            st.markdown("**Após Tietze**")
            st.code(group["simplified"])
        st.download_button("Baixar para GAP", group["cas"], file_name="presentation.g")


if __name__ == "__main__":
    main()
