"""Command-line front end.

    zakspace group inspect doc.json
    zakspace zak forward|inverse|verify config.json
    zakspace poisson check config.json
    zakspace bands run|check model.json
    zakspace euclid generate|certify spec.json
    zakspace diffract run|verify config.json
    zakspace suite all

Shared flags: --seed (all randomness), --jobs (worker bound; never changes
output bytes), --tol (override a command's pass tolerance), --out (write
the artifact to a file instead of stdout).  Relative input paths are also
tried under $ZAKSPACE_DATA.  Exit codes: 0 success, 1 verification
failure, 2 malformed input or schema violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import bloch, euclid, lattice, radiation, reciprocal
from .duals import irreps
from .zak import (
    intertwining_residual,
    verify_roundtrip,
    verify_unitarity,
    zak as zak_transform,
    zak_inverse,
)
from .errors import ConfigError, ZakspaceError
from .fixtures import group_by_name, random_complex
from .groups import FiniteGroup
from .serialize import (
    action_from_dict,
    decode_vector,
    encode_vector,
    group_from_dict,
    zak_from_dict,
    zak_to_bytes,
    zak_to_dict,
)
from .suite import run_suite
from .weil import weil_structure


_SCHEMAS = {
    "group inspect": {"order", "table", "name", "points", "perm", "weights"},
    "zak forward": {"action", "f", "samples", "cells", "sample_shape"},
    "zak inverse": {
        "action", "dual", "representatives", "blocks", "f_norm",
        "cells", "periods", "values", "samples", "sample_shape",
    },
    "zak verify": {"action", "f", "n_random", "samples", "cells", "sample_shape"},
    "poisson check": {"group", "subgroup", "mode", "n_random"},
    "bands run": {"t", "M", "N", "V"},
    "bands check": {"t", "M", "N", "V"},
    "euclid generate": {"dim", "generators", "truncation"},
    "euclid certify": {"dim", "generators", "truncation"},
    "diffract run": {
        "group", "points", "weights", "density", "k", "n", "omega", "c_light", "s0_list",
    },
    "diffract verify": {
        "group", "points", "weights", "density", "k", "n", "omega", "c_light", "s0_list",
    },
}


def _resolve(path: str) -> Path:
    p = Path(path)
    if p.exists():
        return p
    root = os.environ.get("ZAKSPACE_DATA")
    if root and (Path(root) / path).exists():
        return Path(root) / path
    raise ConfigError(f"input file not found: {path}")


def _load_config(path: str, command: str) -> dict:
    text = _resolve(path).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(
            json.dumps({"error": "malformed JSON", "line": err.lineno, "column": err.colno})
        ) from err
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")
    allowed = _SCHEMAS[command]
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise ConfigError(json.dumps({"error": "unknown keys", "keys": unknown}))
    return doc


def _emit(payload, out: str | None, binary: bool = False) -> None:
    if binary:
        if out is None:
            raise ConfigError("binary output needs --out")
        Path(out).write_bytes(payload)
        return
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2)
    if out is None:
        sys.stdout.write(text + ("" if text.endswith("\n") else "\n"))
    else:
        Path(out).write_text(text + ("" if text.endswith("\n") else "\n"))


def _group_from_config(doc) -> FiniteGroup:
    if isinstance(doc, str):
        return group_by_name(doc)
    return group_from_dict(doc)


def _report_exit(checks: list[dict]) -> int:
    return 0 if all(c["pass"] for c in checks) else 1


# ---------------------------------------------------------------------------
# command implementations


def _cmd_group_inspect(args) -> int:
    doc = _load_config(args.config, "group inspect")
    group = group_from_dict(doc)
    out = {
        "order": group.order,
        "identity": group.identity,
        "abelian": group.is_abelian(),
        "element_orders": [group.element_order(g) for g in group.elements()],
        "conjugacy_classes": len(group.conjugacy_classes()),
    }
    if "perm" in doc:
        action = action_from_dict(doc)
        s = weil_structure(action)
        out["points"] = action.npoints
        out["orbits"] = s.decomp.members
        out["representatives"] = s.decomp.representatives
        out["stabilizer_sizes"] = s.decomp.stabilizer_sizes
        out["orbit_measures"] = s.decomp.orbit_measure.tolist()
    _emit(out, args.out)
    return 0


def _cmd_zak_forward(args) -> int:
    doc = _load_config(args.config, "zak forward")
    binary = args.out is not None and args.out.endswith((".bin", ".zak"))
    if "samples" in doc:
        if "cells" not in doc:
            raise ConfigError("lattice mode needs 'cells'")
        samples = decode_vector(doc["samples"])
        shape = doc.get("sample_shape")
        if shape:
            samples = samples.reshape(shape)
        grid = lattice.classic_zak(samples, doc["cells"])
        payload = lattice.grid_to_bytes(grid) if binary else lattice.grid_to_dict(grid)
        _emit(payload, args.out, binary=binary)
        return 0
    if "action" not in doc or "f" not in doc:
        raise ConfigError("finite mode needs 'action' and 'f'")
    action = action_from_dict(doc["action"])
    f = decode_vector(doc["f"])
    dual = irreps(action.group, seed=args.seed)
    coeffs = zak_transform(action, f, dual)
    payload = zak_to_bytes(coeffs) if binary else zak_to_dict(coeffs)
    _emit(payload, args.out, binary=binary)
    return 0


def _cmd_zak_inverse(args) -> int:
    doc = _load_config(args.config, "zak inverse")
    if "values" in doc:  # lattice grid document
        grid = lattice.grid_from_dict(doc)
        rec = lattice.classic_zak_inverse(grid)
        _emit({"f": encode_vector(rec.ravel()), "shape": list(rec.shape)}, args.out)
        return 0
    coeffs = zak_from_dict(doc)
    f = zak_inverse(coeffs)
    _emit({"f": encode_vector(f)}, args.out)
    return 0


def _cmd_zak_verify(args) -> int:
    doc = _load_config(args.config, "zak verify")
    if "samples" in doc:
        return _lattice_verify(doc, args)
    action = action_from_dict(doc["action"])
    dual = irreps(action.group, seed=args.seed)
    rng = np.random.default_rng(args.seed)
    fs = []
    if "f" in doc:
        fs.append(decode_vector(doc["f"]))
    for _ in range(int(doc.get("n_random", 5))):
        fs.append(random_complex(rng, action.npoints))
    checks = []
    for i, f in enumerate(fs):
        coeffs = zak_transform(action, f, dual)
        for rep in (verify_roundtrip(action, f, dual), verify_unitarity(coeffs, f)):
            entry = rep.as_dict()
            entry["check"] = f"{entry['check']}[f{i}]"
            if args.tol is not None:
                entry["tolerance"] = args.tol
                entry["pass"] = entry["residual"] < args.tol
            checks.append(entry)
    worst = intertwining_residual(action, fs[0], dual)
    checks.append(
        {"check": "zak_intertwining", "residual": worst, "tolerance": args.tol or 1e-12,
         "pass": worst < (args.tol or 1e-12)}
    )
    _emit({"checks": checks, "all_pass": all(c["pass"] for c in checks)}, args.out)
    return _report_exit(checks)


def _lattice_verify(doc, args) -> int:
    samples = decode_vector(doc["samples"])
    shape = doc.get("sample_shape")
    if shape:
        samples = samples.reshape(shape)
    cells = doc["cells"]
    grid = lattice.classic_zak(samples, cells)
    tol = args.tol or 1e-10
    fft_resid = float(np.max(np.abs(grid.values - lattice.classic_zak_direct(samples, cells))))
    rt_resid = lattice.roundtrip_residual(samples, cells)
    unit = verify_unitarity(grid, samples.ravel()).as_dict()
    quasi = float(
        max(
            lattice.quasiperiodicity_residual(grid, x0, (0,) * grid.ndim_space)
            for x0 in np.ndindex(*grid.cells)
        )
    )
    checks = [
        {"check": "classic_zak_fft_vs_direct", "residual": fft_resid, "tolerance": tol, "pass": fft_resid < tol},
        {"check": "classic_zak_roundtrip", "residual": rt_resid, "tolerance": tol, "pass": rt_resid < tol},
        unit,
        {"check": "classic_zak_quasiperiodicity", "residual": quasi, "tolerance": tol, "pass": quasi < tol},
    ]
    _emit({"checks": checks, "all_pass": all(c["pass"] for c in checks)}, args.out)
    return _report_exit(checks)


def _cmd_poisson_check(args) -> int:
    doc = _load_config(args.config, "poisson check")
    if "group" not in doc or "subgroup" not in doc:
        raise ConfigError("poisson check needs 'group' and 'subgroup'")
    group = _group_from_config(doc["group"])
    sub = [int(x) for x in doc["subgroup"]]
    mode = doc.get("mode", "abelian" if group.is_abelian() else "compact")
    rng = np.random.default_rng(args.seed)
    dual = irreps(group, seed=args.seed)
    tol = args.tol or 1e-12
    worst = 0.0
    for _ in range(int(doc.get("n_random", 50))):
        f = random_complex(rng, group.order)
        if mode == "abelian":
            _, _, resid = reciprocal.poisson_abelian_check(f, group, sub, dual)
        else:
            _, _, resid = reciprocal.poisson_compact_check(f, group, sub, dual)
        worst = max(worst, resid)
    checks = [
        {"check": f"poisson_{mode}", "residual": worst, "tolerance": tol, "pass": worst < tol}
    ]
    _emit({"checks": checks, "all_pass": checks[0]["pass"]}, args.out)
    return _report_exit(checks)


def _band_model(doc, jobs: int = 1) -> bloch.BandStructure:
    for key in ("t", "M", "N", "V"):
        if key not in doc:
            raise ConfigError(f"band model needs '{key}'")
    return bloch.band_structure(
        float(doc["t"]), int(doc["M"]), int(doc["N"]), doc["V"], jobs=jobs
    )


def _cmd_bands_run(args) -> int:
    doc = _load_config(args.config, "bands run")
    bs = _band_model(doc, jobs=args.jobs)
    lines = ["k_index,k_value,band_index,energy"]
    for j in range(bs.periods):
        for band in range(bs.cell_size):
            lines.append(
                f"{j},{bs.k_values[j]:.12g},{band},{bs.bands[j, band]:.12g}"
            )
    _emit("\n".join(lines), args.out)
    return 0


def _cmd_bands_check(args) -> int:
    doc = _load_config(args.config, "bands check")
    bs = _band_model(doc, jobs=args.jobs)
    tol = args.tol or 1e-9
    union = bloch.band_union_residual(bs)
    even = max(
        float(np.max(np.abs(bs.bands[j] - bs.bands[-j]))) for j in range(1, bs.periods)
    ) if bs.periods > 1 else 0.0
    checks = [
        {"check": "band_union_vs_dense", "residual": union, "tolerance": tol, "pass": union < tol},
        {"check": "bands_even_in_k", "residual": even, "tolerance": 1e-10, "pass": even < 1e-10},
    ]
    _emit({"checks": checks, "all_pass": all(c["pass"] for c in checks)}, args.out)
    return _report_exit(checks)


def _euclid_spec(doc) -> euclid.IsometryGroupSpec:
    if "dim" not in doc or "generators" not in doc:
        raise ConfigError("isometry spec needs 'dim' and 'generators'")
    gens = [
        euclid.IsometryElement(np.asarray(g["Q"], dtype=float), np.asarray(g["c"], dtype=float))
        for g in doc["generators"]
    ]
    tr_doc = doc.get("truncation", {})
    tr = euclid.Truncation(
        word_length=int(tr_doc.get("word_length", 24)),
        radius=float(tr_doc.get("radius", 50.0)),
        max_elements=int(tr_doc.get("max_elements", 20000)),
        tol=float(tr_doc.get("tol", 1e-9)),
    )
    return euclid.IsometryGroupSpec(int(doc["dim"]), gens, tr)


def _cmd_euclid_generate(args) -> int:
    spec = _euclid_spec(_load_config(args.config, "euclid generate"))
    gen = euclid.generate(spec)
    out = {
        "order": gen.order,
        "finite": gen.finite,
        "radius_truncated": gen.radius_truncated,
        "translations": len(euclid.translation_subgroup(gen.elements, spec.truncation.tol)),
        "elements": [
            {"Q": e.q.tolist(), "c": e.c.tolist(), "word_length": int(wl)}
            for e, wl in zip(gen.elements, gen.word_lengths)
        ],
    }
    _emit(out, args.out)
    return 0


def _cmd_euclid_certify(args) -> int:
    spec = _euclid_spec(_load_config(args.config, "euclid certify"))
    cert = euclid.type_one_certificate(spec)
    _emit(cert.as_dict(), args.out)
    return 0 if cert.status == "type_I" else 1


def _diffract_setup(doc):
    for key in ("group", "points", "density", "k", "n", "omega", "c_light", "s0_list"):
        if key not in doc:
            raise ConfigError(f"diffract config needs '{key}'")
    spec = _euclid_spec(doc["group"])
    gen = euclid.generate(spec)
    if not gen.finite:
        raise ConfigError("diffract needs a finite isometry group")
    elements = gen.elements
    group = euclid.isometry_finite_group(elements)
    dual = irreps(group)
    points = np.asarray(doc["points"], dtype=float)
    weights = np.asarray(doc.get("weights", np.ones(len(points))), dtype=float)
    density = np.asarray(doc["density"], dtype=float)
    k = np.asarray(doc["k"], dtype=float)
    n = decode_vector(doc["n"])
    return elements, dual, points, weights, density, k, n, float(doc["omega"]), float(doc["c_light"]), doc["s0_list"]


def _cmd_diffract_run(args) -> int:
    doc = _load_config(args.config, "diffract run")
    elements, dual, points, weights, density, k, n, omega, c_light, s0_list = _diffract_setup(doc)
    labels = dual.labels
    header = "s0_x,s0_y,s0_z,intensity," + ",".join(f"intensity_{lab}" for lab in labels)
    lines = [header]
    for s0 in s0_list:
        s0 = np.asarray(s0, dtype=float)
        s0 = s0 / np.linalg.norm(s0)
        setup = radiation.ScatteringSetup(points, weights, density, omega, c_light, s0)
        report = radiation.symmetry_projected_transform(elements, dual, k, n, setup)
        total = float(np.sum(np.abs(report.combined) ** 2))
        channels = [float(np.sum(np.abs(report.per_irrep[lab]) ** 2)) for lab in labels]
        row = [f"{v:.12g}" for v in (*s0, total, *channels)]
        lines.append(",".join(row))
    _emit("\n".join(lines), args.out)
    return 0


def _cmd_diffract_verify(args) -> int:
    doc = _load_config(args.config, "diffract verify")
    elements, dual, points, weights, density, k, n, omega, c_light, s0_list = _diffract_setup(doc)
    tol = args.tol or 1e-9
    worst = 0.0
    for s0 in s0_list:
        s0 = np.asarray(s0, dtype=float)
        s0 = s0 / np.linalg.norm(s0)
        setup = radiation.ScatteringSetup(points, weights, density, omega, c_light, s0)
        report = radiation.symmetry_projected_transform(elements, dual, k, n, setup)
        worst = max(worst, report.residual)
    checks = [
        {"check": "radiation_recovery", "residual": worst, "tolerance": tol, "pass": worst < tol}
    ]
    _emit({"checks": checks, "all_pass": checks[0]["pass"]}, args.out)
    return _report_exit(checks)


def _cmd_suite_all(args) -> int:
    report = run_suite(seed=args.seed, jobs=args.jobs)
    _emit(report, args.out)
    return 0 if report["all_pass"] else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all randomness")
    common.add_argument("--jobs", type=int, default=1, help="worker bound (outputs unchanged)")
    common.add_argument("--tol", type=float, default=None, help="override pass tolerance")
    common.add_argument("--out", type=str, default=None, help="write output to this path")

    parser = argparse.ArgumentParser(prog="zakspace", description=__doc__)
    top = parser.add_subparsers(dest="command", required=True)

    def leaf(group_parser, name, func, needs_config=True):
        sp = group_parser.add_parser(name, parents=[common])
        if needs_config:
            sp.add_argument("config", help="JSON input document")
        sp.set_defaults(func=func)

    group_p = top.add_parser("group").add_subparsers(dest="sub", required=True)
    leaf(group_p, "inspect", _cmd_group_inspect)

    zak_p = top.add_parser("zak").add_subparsers(dest="sub", required=True)
    leaf(zak_p, "forward", _cmd_zak_forward)
    leaf(zak_p, "inverse", _cmd_zak_inverse)
    leaf(zak_p, "verify", _cmd_zak_verify)

    poisson_p = top.add_parser("poisson").add_subparsers(dest="sub", required=True)
    leaf(poisson_p, "check", _cmd_poisson_check)

    bands_p = top.add_parser("bands").add_subparsers(dest="sub", required=True)
    leaf(bands_p, "run", _cmd_bands_run)
    leaf(bands_p, "check", _cmd_bands_check)

    euclid_p = top.add_parser("euclid").add_subparsers(dest="sub", required=True)
    leaf(euclid_p, "generate", _cmd_euclid_generate)
    leaf(euclid_p, "certify", _cmd_euclid_certify)

    diffract_p = top.add_parser("diffract").add_subparsers(dest="sub", required=True)
    leaf(diffract_p, "run", _cmd_diffract_run)
    leaf(diffract_p, "verify", _cmd_diffract_verify)

    suite_p = top.add_parser("suite").add_subparsers(dest="sub", required=True)
    leaf(suite_p, "all", _cmd_suite_all, needs_config=False)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as err:
        sys.stderr.write(f"{err}\n")
        return 2
    except ZakspaceError as err:
        sys.stderr.write(json.dumps({"error": type(err).__name__, "detail": str(err)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
