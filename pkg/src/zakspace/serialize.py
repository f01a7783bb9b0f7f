"""JSON and binary codecs for the documented file formats.

Complex scalars and matrices are encoded as [re, im] pairs in row-major
order.  Group/action documents look like

    {"order": n, "table": [[...]], "points": m, "perm": [[...]], "weights": [...]}

with perm indexed by group element; weights are optional (default 1).
Zak coefficient files carry the coefficients plus enough orbit and dual
metadata to invert them; the binary flavor shares the "ZAK1" magic with
lattice grids and stores one record per (representative, irrep) block.
"""

from __future__ import annotations

import struct

import numpy as np

from .actions import GroupAction, make_action
from .duals import DualObject, UnitaryIrrep, validate_dual
from .errors import ConfigError
from .groups import FiniteGroup, make_group
from .lattice import MAGIC
from .zak import ZakCoefficients
from .weil import weil_structure


def encode_complex(z: complex) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def encode_matrix(m: np.ndarray) -> list:
    return [encode_complex(z) for z in np.asarray(m).ravel()]


def decode_matrix(entries, shape) -> np.ndarray:
    return np.array([complex(re, im) for re, im in entries]).reshape(shape)


def encode_vector(v: np.ndarray) -> list:
    return [encode_complex(z) for z in np.asarray(v)]


def decode_vector(entries) -> np.ndarray:
    arr = np.asarray(entries, dtype=float)
    if arr.ndim == 1:  # plain real list
        return arr.astype(complex)
    return np.array([complex(re, im) for re, im in entries])


# ---------------------------------------------------------------------------
# groups and actions


def group_from_dict(doc: dict) -> FiniteGroup:
    if "table" not in doc:
        raise ConfigError("group document needs a 'table'")
    table = doc["table"]
    if "order" in doc and len(table) != doc["order"]:
        raise ConfigError(f"declared order {doc['order']} != table size {len(table)}")
    return make_group(table, name=doc.get("name"))


def action_from_dict(doc: dict) -> GroupAction:
    group = group_from_dict(doc)
    if "perm" not in doc:
        raise ConfigError("action document needs 'perm'")
    perm = doc["perm"]
    if "points" in doc and perm and len(perm[0]) != doc["points"]:
        raise ConfigError(f"declared points {doc['points']} != perm width {len(perm[0])}")
    return make_action(group, perm, doc.get("weights"))


def action_to_dict(action: GroupAction) -> dict:
    return {
        "order": action.group.order,
        "table": action.group.table.tolist(),
        "points": action.npoints,
        "perm": action.perm.tolist(),
        "weights": action.weights.tolist(),
    }


# ---------------------------------------------------------------------------
# duals


def dual_to_dict(dual: DualObject) -> dict:
    return {
        "order": dual.group.order,
        "table": dual.group.table.tolist(),
        "irreps": [
            {"label": s.label, "dim": s.dim, "matrices": [encode_matrix(m) for m in s.matrices]}
            for s in dual.irreps
        ],
    }


def dual_from_dict(doc: dict) -> DualObject:
    group = make_group(doc["table"])
    irreps = []
    for item in doc["irreps"]:
        d = int(item["dim"])
        mats = np.stack(
            [decode_matrix(entries, (d, d)) for entries in item["matrices"]]
        )
        irreps.append(UnitaryIrrep(item["label"], d, mats))
    dual = DualObject(group, irreps)
    validate_dual(dual)
    return dual


# ---------------------------------------------------------------------------
# Zak coefficients


def zak_to_dict(coeffs: ZakCoefficients) -> dict:
    decomp = coeffs.structure.decomp
    return {
        "action": action_to_dict(coeffs.action),
        "dual": dual_to_dict(coeffs.dual),
        "representatives": list(map(int, decomp.representatives)),
        "blocks": [
            {
                "x0": int(x0),
                "label": label,
                "dim": coeffs.data[(x0, label)].shape[0],
                "values": encode_matrix(coeffs.data[(x0, label)]),
            }
            for (x0, label) in sorted(coeffs.data, key=lambda k: (k[0], k[1]))
        ],
        "f_norm": coeffs.f_norm,
    }


def zak_from_dict(doc: dict) -> ZakCoefficients:
    action = action_from_dict(doc["action"])
    dual = dual_from_dict(doc["dual"])
    structure = weil_structure(action)
    data = {}
    for item in doc["blocks"]:
        d = int(item["dim"])
        data[(int(item["x0"]), item["label"])] = decode_matrix(item["values"], (d, d))
    coeffs = ZakCoefficients(action, dual, structure, data, float(doc.get("f_norm", 1.0)))
    coeffs.check_invariants()
    return coeffs


def zak_to_bytes(coeffs: ZakCoefficients) -> bytes:
    """MAGIC, record count, then (x0, label, dim, re/im float64) records."""
    keys = sorted(coeffs.data, key=lambda k: (k[0], k[1]))
    out = [MAGIC, struct.pack("<I", len(keys))]
    for x0, label in keys:
        block = coeffs.data[(x0, label)]
        lab = label.encode()
        out.append(struct.pack("<III", x0, len(lab), block.shape[0]))
        out.append(lab)
        body = np.empty(2 * block.size, dtype="<f8")
        body[0::2], body[1::2] = block.real.ravel(), block.imag.ravel()
        out.append(body.tobytes())
    return b"".join(out)


def zak_blocks_from_bytes(raw: bytes) -> dict:
    """Recover the (x0, label) -> matrix table from the binary record stream."""
    if raw[:4] != MAGIC:
        raise ConfigError("bad magic, not a zak binary file")
    (count,) = struct.unpack_from("<I", raw, 4)
    off = 8
    blocks = {}
    for _ in range(count):
        x0, lab_len, d = struct.unpack_from("<III", raw, off)
        off += 12
        label = raw[off : off + lab_len].decode()
        off += lab_len
        arr = np.frombuffer(raw, dtype="<f8", count=2 * d * d, offset=off)
        off += 16 * d * d
        blocks[(int(x0), label)] = (arr[0::2] + 1j * arr[1::2]).reshape(d, d)
    return blocks
