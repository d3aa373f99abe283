"""Bundled example data and a synthetic embedding-graph generator."""

from __future__ import annotations

from importlib import resources

import numpy as np

from ..lexical import NUMERIC_DATATENSOR, serialize_tensor
from ..tensor import DataTensor, Dtype
from ..terms import RDF_TYPE, XSD_STRING, IRI, Literal, Triple
from ..turtle import write_turtle

EX = "http://example.org/"


def read_text(name: str) -> str:
    """Contents of a bundled fixture file such as ``tensors.ttl``."""
    return resources.files(__name__).joinpath(name).read_text(encoding="utf-8")


def embedding_triples(entities: int, dim: int, seed: int = 0) -> list[Triple]:
    """Triples for ``entities`` nodes, each with a random unit-scale float32 embedding."""
    rng = np.random.default_rng(seed)
    vectors = rng.standard_normal((entities, dim)).astype(np.float32)
    out = []
    for i in range(entities):
        node = IRI(f"{EX}entity{i}")
        t = DataTensor._wrap(Dtype.FLOAT32, vectors[i].copy())
        out.append(Triple(node, IRI(RDF_TYPE), IRI(EX + "Entity")))
        out.append(Triple(node, IRI(EX + "label"), Literal(f"entity {i}", XSD_STRING)))
        out.append(Triple(node, IRI(EX + "embedding"), Literal(serialize_tensor(t), NUMERIC_DATATENSOR)))
    return out


def embedding_graph_turtle(entities: int, dim: int, seed: int = 0) -> str:
    return write_turtle(
        embedding_triples(entities, dim, seed),
        {"ex": EX, "dt": "https://w3id.org/rdf-tensor/datatypes#"},
    )
