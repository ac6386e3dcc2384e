"""Canonical JSON serialization for rings, modules, and pairings.

Documents use sorted keys and compact separators so that emit(parse(file))
is byte-identical on canonically formatted files.  Field layout:

    ring      {"family", "p", "f", "level", "minimal_poly"}  (poly low-to-high)
    module    {"ring", "witt_degree", "rank", "bounds", "blocks"}
              with blocks = [{"weights": [...], "phi": [[entry, ...], ...]}]
    pairing   optional extra key {"epsilon", "L": {"s", "c"}, "gram"}

Matrix entries are coefficient vectors: a length-f integer vector for Witt
rings, a length-level vector of such vectors for dual numbers.
"""

from __future__ import annotations

import json

from .errors import InvalidInput
from .linalg import Matrix
from .modules import FLBlock, FLModule
from .pairing import LData, PairedFLModule
from .rings import make_ring


def dumps_canonical(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# rings and elements


def ring_to_dict(ring):
    return {
        "family": ring.family,
        "p": ring.p,
        "f": ring.f,
        "level": ring.level,
        "minimal_poly": list(ring.minimal_poly),
    }


def ring_from_dict(doc):
    ring = make_ring(doc["family"], int(doc["p"]), int(doc["f"]), int(doc["level"]))
    stated = [int(c) for c in doc["minimal_poly"]]
    if stated != list(ring.minimal_poly):
        raise InvalidInput(
            f"minimal polynomial {stated} is not the canonical one "
            f"{list(ring.minimal_poly)}"
        )
    return ring


def elem_to_data(x):
    if x.ring.family == "witt":
        return list(x.data)
    return [list(part) for part in x.data]


def elem_from_data(ring, doc):
    if ring.family == "witt":
        data = tuple(int(c) for c in doc)
    else:
        data = tuple(tuple(int(c) for c in part) for part in doc)
    return ring.elem(data)


def matrix_to_rows(mat):
    return [[elem_to_data(entry) for entry in row] for row in mat.rows]


def matrix_from_rows(ring, doc, ncols):
    rows = [[elem_from_data(ring, entry) for entry in row] for row in doc]
    return Matrix(ring, rows, ncols=ncols)


# ---------------------------------------------------------------------------
# modules and pairings


def module_to_dict(module):
    return {
        "ring": ring_to_dict(module.ring),
        "witt_degree": module.witt_degree,
        "rank": module.rank,
        "bounds": list(module.bounds),
        "blocks": [
            {"weights": list(blk.weights), "phi": matrix_to_rows(blk.phi)}
            for blk in module.blocks
        ],
    }


def module_from_dict(doc):
    ring = ring_from_dict(doc["ring"])
    rank = int(doc["rank"])
    bounds = (int(doc["bounds"][0]), int(doc["bounds"][1]))
    blocks = [
        FLBlock(
            tuple(int(w) for w in blk["weights"]),
            matrix_from_rows(ring, blk["phi"], rank),
        )
        for blk in doc["blocks"]
    ]
    if len(blocks) != int(doc["witt_degree"]):
        raise InvalidInput("witt_degree does not match the number of blocks")
    return FLModule(ring, bounds, blocks)


def paired_to_dict(paired):
    doc = module_to_dict(paired.module)
    doc["pairing"] = {
        "epsilon": paired.L.epsilon,
        "L": {
            "s": list(paired.L.s),
            "c": [elem_to_data(c) for c in paired.L.c],
        },
        "gram": [matrix_to_rows(g) for g in paired.gram],
    }
    return doc


def paired_from_dict(doc):
    module = module_from_dict(doc)
    pdoc = doc["pairing"]
    ring = module.ring
    L = LData(
        int(pdoc["epsilon"]),
        tuple(int(s) for s in pdoc["L"]["s"]),
        tuple(elem_from_data(ring, c) for c in pdoc["L"]["c"]),
    )
    gram = tuple(
        matrix_from_rows(ring, rows, module.rank) for rows in pdoc["gram"]
    )
    return PairedFLModule(module, L, gram)


def document_to_object(doc):
    """Dispatch a parsed JSON document to a module or a paired module."""
    if not isinstance(doc, dict):
        raise InvalidInput("top-level document must be a JSON object")
    if "pairing" in doc:
        return paired_from_dict(doc)
    return module_from_dict(doc)


def object_to_document(obj):
    if isinstance(obj, PairedFLModule):
        return paired_to_dict(obj)
    return module_to_dict(obj)


def load_path(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)
