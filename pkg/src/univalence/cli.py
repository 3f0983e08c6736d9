"""Command-line front end.

``univalence run`` evaluates one criterion from flags or a JSON manifest and
writes ``report.json`` plus ``grid.csv``. Exit codes: 0 satisfied,
1 violated, 2 input or parameter error, 3 singularity on the grid.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from ._backend import BACKEND
from .criteria import ARITY, CRITERIA, THEOREMS, CriterionParams, GridConfig, evaluate_criterion
from .errors import SingularPoint, UnivalenceError
from .integral import IntegralOperatorInput, f_beta_point, f_beta_series
from .loewner import LoewnerConfig, validate_chain
from .operators import ruscheweyh, salagean
from .oracle import run_oracle
from .series import BUILTINS, DEFAULT_ORDER, Series, builtin

EXIT_OK, EXIT_VIOLATED, EXIT_INPUT, EXIT_SINGULAR = 0, 1, 2, 3

CHAIN_VARIANT = {
    "T2": "T2", "T3": "T2", "T5": "T2", "T4": "T4", "T6": "T4",
    "C1": "T2", "C2": "T2", "C3": "T2", "C4": "T2", "C5": "T2", "C5_realcase": "T2",
    "C6": "T4", "C7": "T4", "C8": "T4", "C9": "T4", "C10": "T4", "R6": "T4",
}
ORACLE_ORDER = 256


class InputError(UnivalenceError, ValueError):
    pass


# -- function specs -----------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\([^)]*\)|[0-9.]+(?:e[+-]?\d+)?i?|i)\s*\*?\s*)?
        (?P<z>z(?:\s*\^\s*(?P<pow>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_complex(text) -> complex:
    """``"1.5"``, ``"0.3i"``, ``"1.5+0.3i"`` or ``[re, im]``."""
    if isinstance(text, (list, tuple)):
        return complex(float(text[0]), float(text[1]))
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "").replace("I", "i")
    if s in ("i", "+i", "-i"):
        s = s.replace("i", "1i")
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise InputError(f"cannot parse complex number {text!r}") from None


def parse_polynomial(text: str) -> list[complex]:
    """Coefficients of a sum of terms ``c*z^k`` such as ``"z + 0.1z^2 - 0.2i z^3"``."""
    pos, coeffs = 0, {}
    s = text.strip()
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m.group("coef") or m.group("z")):
            raise InputError(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
        if pos and not m.group("sign"):
            raise InputError(f"missing '+' or '-' between terms in {text!r}")
        coef = parse_complex(m.group("coef").strip("()")) if m.group("coef") else 1
        if m.group("sign") == "-":
            coef = -coef
        k = (int(m.group("pow")) if m.group("pow") else 1) if m.group("z") else 0
        coeffs[k] = coeffs.get(k, 0) + coef
        pos = m.end()
    if not coeffs:
        raise InputError("empty polynomial")
    out = [0j] * (max(coeffs) + 1)
    for k, v in coeffs.items():
        out[k] = complex(v)
    return out


@dataclass(frozen=True)
class FunctionSpec:
    kind: str  # builtin | polynomial | coefficients
    name: str | None = None
    coeffs: tuple = ()
    truncation_order: int | None = None

    def resolve(self, radius: float = 0.999, what: str = "f") -> Series:
        if self.kind == "builtin":
            s = builtin(self.name, self.truncation_order, radius)
        elif self.kind in ("polynomial", "coefficients"):
            order = self.truncation_order or max(DEFAULT_ORDER, len(self.coeffs) - 1)
            if len(self.coeffs) - 1 > order:
                raise InputError(f"{what}: truncation order {order} is below the degree")
            s = Series.from_coeffs(list(self.coeffs), order)
        else:
            raise InputError(f"{what}: unknown function kind {self.kind!r}")
        try:
            return s.require_normalized(what)
        except ValueError as exc:
            raise InputError(f"{what}: {exc}") from None

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "truncation_order": self.truncation_order}
        if self.kind == "builtin":
            d["name"] = self.name
        else:
            d["coeffs"] = [[c.real, c.imag] for c in self.coeffs]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "FunctionSpec":
        kind = d.get("kind")
        if kind == "builtin":
            return cls("builtin", name=d["name"], truncation_order=d.get("truncation_order"))
        if kind in ("polynomial", "coefficients"):
            return cls(kind, coeffs=tuple(parse_complex(c) for c in d["coeffs"]),
                       truncation_order=d.get("truncation_order"))
        raise InputError(f"unknown function kind {kind!r}")


def parse_function_spec(text) -> FunctionSpec:
    """Builtin name (``koebe`` or ``koebe:4096``), polynomial, JSON list or JSON file."""
    if isinstance(text, dict):
        return FunctionSpec.from_dict(text)
    s = str(text).strip()
    if os.path.isfile(s):
        with open(s) as fh:
            data = json.load(fh)
        if isinstance(data, list):
            return FunctionSpec("coefficients", coeffs=tuple(parse_complex(c) for c in data))
        return FunctionSpec.from_dict(data)
    name, _, order = s.partition(":")
    if name in BUILTINS:
        try:
            return FunctionSpec("builtin", name=name, truncation_order=int(order) if order else None)
        except ValueError:
            raise InputError(f"bad truncation order in {s!r}") from None
    if s.startswith("["):
        try:
            data = json.loads(s)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad coefficient list {s!r}: {exc}") from None
        return FunctionSpec("coefficients", coeffs=tuple(parse_complex(c) for c in data))
    return FunctionSpec("polynomial", coeffs=tuple(parse_polynomial(s)))


# -- manifests ----------------------------------------------------------------

@dataclass
class RunManifest:
    criterion: str
    f: FunctionSpec
    g: FunctionSpec | None = None
    h: FunctionSpec | None = None
    params: CriterionParams = field(default_factory=CriterionParams)
    grid: GridConfig = field(default_factory=GridConfig)
    loewner: LoewnerConfig | None = None
    oracle: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.criterion not in CRITERIA:
            raise InputError(f"unknown criterion {self.criterion!r}; choose from {', '.join(CRITERIA)}")
        for name in self.needs:
            if getattr(self, name) is None:
                raise InputError(f"criterion {self.criterion} needs --{name}")

    @property
    def needs(self) -> str:
        return "fgh" if self.criterion in THEOREMS else ARITY[self.criterion]

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "f": self.f.to_dict(),
            "g": self.g.to_dict() if self.g else None,
            "h": self.h.to_dict() if self.h else None,
            "params": self.params.to_dict(),
            "grid": self.grid.to_dict(),
            "loewner": self.loewner.to_dict() if self.loewner else None,
            "oracle": self.oracle,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "RunManifest":
        try:
            lw = d.get("loewner")
            if lw is not None:
                lw = dict(lw)
                if "grid" in lw:
                    lw["grid"] = GridConfig(**lw["grid"])
                if "t_samples" in lw:
                    lw["t_samples"] = tuple(lw["t_samples"])
                lw = LoewnerConfig(**lw)
            spec = lambda k: parse_function_spec(d[k]) if d.get(k) is not None else None
            return cls(
                criterion=d["criterion"],
                f=spec("f"),
                g=spec("g"),
                h=spec("h"),
                params=CriterionParams.from_dict(d.get("params", {})),
                grid=GridConfig(**d.get("grid", {})),
                loewner=lw,
                oracle=bool(d.get("oracle", False)),
                seed=int(d.get("seed", 0)),
            )
        except KeyError as exc:
            raise InputError(f"manifest is missing {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(f"invalid manifest: {exc}") from None


# -- running ------------------------------------------------------------------

def _clean(obj):
    """Make a payload JSON-safe: NaN/inf become null, numpy scalars plain."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else None
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, complex):
        return [_clean(obj.real), _clean(obj.imag)]
    return obj


def dumps(payload) -> str:
    return json.dumps(_clean(payload), sort_keys=True, indent=2) + "\n"


def _resize(s: Series, order: int) -> Series:
    return Series.from_coeffs(s.coeffs, order)


def _fbeta_target(f: Series, g: Series, beta: complex):
    order = max(f.order, g.order, ORACLE_ORDER)
    return f_beta_series(IntegralOperatorInput(_resize(f, order), _resize(g, order), beta))


@dataclass
class RunResult:
    exit_code: int
    payload: dict
    csv_text: str
    message: str


def grid_csv(report) -> str:
    ineqs = [r for r in report.inequalities if r.grid_z is not None]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["re", "im"] + [f"excess_{r.label}" for r in ineqs])
    if ineqs:
        zs = ineqs[0].grid_z
        cols = [np.asarray(r.grid_values, dtype=float) - (0.0 if r.bound is None else r.bound) for r in ineqs]
        for i, z in enumerate(zs):
            w.writerow([repr(float(z.real)), repr(float(z.imag))] + [repr(float(c[i])) for c in cols])
    return buf.getvalue()


def execute(manifest: RunManifest) -> RunResult:
    """Evaluate a manifest; never raises for mathematical failures."""
    radius = manifest.grid.max_radius
    f = manifest.f.resolve(radius, "f")
    g = manifest.g.resolve(radius, "g") if manifest.g else None
    h = manifest.h.resolve(radius, "h") if manifest.h else None
    cid = manifest.criterion
    rep = evaluate_criterion(cid, f, g, h, manifest.params, manifest.grid)
    payload = {"manifest": manifest.to_dict(), "report": rep.to_dict(), "version": __version__}

    eff = CriterionParams.from_dict(rep.extra["effective_params"]) if "effective_params" in rep.extra else manifest.params
    if cid in ("T5", "T6"):
        eff = eff.with_(operator_kind="salagean")
    gg = g if g is not None else builtin("identity")
    hh = h if h is not None else f

    if not rep.params_ok:
        code = EXIT_INPUT
        msg = f"{cid}: parameter constraint violated: {rep.constraints.message()}"
    elif rep.singular_points:
        code = EXIT_SINGULAR
        pts = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in rep.singular_points[:5])
        msg = f"{cid}: singularity on the grid at {pts}"
    else:
        code = EXIT_OK if rep.satisfied else EXIT_VIOLATED
        msg = f"{cid}: {'satisfied' if rep.satisfied else 'violated'}, margin {rep.margin:.6g}"

    if manifest.loewner is not None and code != EXIT_INPUT:
        if cid in CHAIN_VARIANT:
            try:
                # resolve again so auto-truncated builtins fit the smaller chain disk
                rc = manifest.loewner.grid.max_radius
                fc = manifest.f.resolve(rc, "f")
                gc = manifest.g.resolve(rc, "g") if manifest.g else gg
                hc = manifest.h.resolve(rc, "h") if manifest.h else fc
                chain = validate_chain(fc, gc, hc, eff, manifest.loewner, CHAIN_VARIANT[cid])
                payload["chain"] = chain.to_dict()
            except UnivalenceError as exc:
                payload["chain"] = {"error": f"{type(exc).__name__}: {exc}"}
        else:
            payload["chain"] = {"error": f"{cid} has no Loewner chain"}

    if manifest.oracle and code != EXIT_INPUT:
        try:
            if cid in ("R3", "R4"):
                target = _resize(f, max(f.order, ORACLE_ORDER))
                label = "f"
            else:
                target = _fbeta_target(f, gg, eff.beta)
                label = "F_beta"
            orc = run_oracle(target, seed=manifest.seed).to_dict()
            orc["target"] = label
            payload["oracle"] = orc
        except UnivalenceError as exc:
            payload["oracle"] = {"error": f"{type(exc).__name__}: {exc}"}

    payload["exit_code"] = code
    return RunResult(code, payload, grid_csv(rep), msg)


# -- argument handling --------------------------------------------------------

def _add_function_args(p, names="fgh"):
    for n in names:
        p.add_argument(f"--{n}", help=f"{n}: builtin name[:order], polynomial like 'z+0.1z^2', "
                                      "JSON coefficient list, or JSON file")


def _add_param_args(p):
    p.add_argument("--alpha", default="0")
    p.add_argument("--beta", default="1")
    p.add_argument("--c", default="0")
    p.add_argument("--m", type=float, default=1.0)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--v", type=int, default=0)
    p.add_argument("--lam", type=float, default=None, help="real Ruscheweyh order overriding --n")
    p.add_argument("--operator", choices=("ruscheweyh", "salagean"), default="ruscheweyh")


def _add_grid_args(p):
    d = GridConfig()
    p.add_argument("--grid-radii", type=int, default=d.n_radii)
    p.add_argument("--grid-angles", type=int, default=d.n_angles)
    p.add_argument("--max-radius", type=float, default=d.max_radius)
    p.add_argument("--tolerance", type=float, default=d.tolerance)


def _params(a) -> CriterionParams:
    return CriterionParams(alpha=parse_complex(a.alpha), beta=parse_complex(a.beta), c=parse_complex(a.c),
                           m=a.m, n=a.n, v=a.v, operator_kind=a.operator, lam=a.lam)


def _grid(a) -> GridConfig:
    return GridConfig(n_radii=a.grid_radii, n_angles=a.grid_angles, max_radius=a.max_radius, tolerance=a.tolerance)


def _spec(text):
    return parse_function_spec(text) if text is not None else None


def _loewner_cfg(a) -> LoewnerConfig:
    kw = {"a": a.a, "b": a.b, "dt": a.dt,
          "grid": GridConfig(n_radii=a.chain_radii, n_angles=a.chain_angles, max_radius=a.chain_radius)}
    if a.t_samples:
        kw["t_samples"] = tuple(float(t) for t in a.t_samples.split(","))
    return LoewnerConfig(**kw)


def _add_loewner_args(p):
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--b", type=float, default=None, help="defaults to m*a")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--t-samples", default=None, help="comma separated, starting at 0")
    p.add_argument("--chain-radius", type=float, default=0.9)
    p.add_argument("--chain-radii", type=int, default=4)
    p.add_argument("--chain-angles", type=int, default=16)


def cmd_run(a) -> int:
    if a.manifest:
        with open(a.manifest) as fh:
            data = json.load(fh)
        manifest = RunManifest.from_dict(data.get("manifest", data))
    else:
        if not a.criterion or not a.f:
            raise InputError("run needs --manifest or at least --criterion and --f")
        manifest = RunManifest(
            criterion=a.criterion, f=_spec(a.f), g=_spec(a.g), h=_spec(a.h), params=_params(a), grid=_grid(a),
            loewner=_loewner_cfg(a) if a.loewner else None, oracle=a.oracle, seed=a.seed,
        )
    res = execute(manifest)
    text = dumps(res.payload)
    if a.out:
        os.makedirs(a.out, exist_ok=True)
        with open(os.path.join(a.out, "report.json"), "w") as fh:
            fh.write(text)
        with open(os.path.join(a.out, "grid.csv"), "w") as fh:
            fh.write(res.csv_text)
    else:
        sys.stdout.write(text)
    print(res.message, file=sys.stderr)
    return res.exit_code


def _fmt_coeffs(c: np.ndarray) -> str:
    c = np.asarray(c)
    nz = np.flatnonzero(np.abs(c) > 0)
    c = c[: nz[-1] + 1] if nz.size else c[:1]
    if np.all(c.imag == 0):
        return "[" + ", ".join(f"{x:.17g}" for x in c.real) + "]"
    return json.dumps([[float(x.real), float(x.imag)] for x in c])


def cmd_operators(a) -> int:
    f = _spec(a.f).resolve(what="f")
    if (a.ruscheweyh is None) == (a.salagean is None):
        raise InputError("give exactly one of --ruscheweyh or --salagean")
    out = ruscheweyh(f, a.ruscheweyh) if a.ruscheweyh is not None else salagean(f, a.salagean)
    print(_fmt_coeffs(out.coeffs))
    return EXIT_OK


def cmd_integral(a) -> int:
    f = _spec(a.f).resolve(what="f")
    g = _spec(a.g or "identity").resolve(what="g")
    beta = parse_complex(a.beta)
    inp = IntegralOperatorInput(_resize(f, a.order), _resize(g, a.order), beta)
    F = f_beta_series(inp)
    result = {"beta": beta, "coeffs": [complex(c) for c in F.coeffs[: a.terms]]}
    if a.at is not None:
        z = parse_complex(a.at)
        s_val = complex(F(z))
        q_val = complex(f_beta_point(inp, z))
        result.update({"at": z, "series": s_val, "quadrature": q_val, "abs_diff": abs(s_val - q_val)})
        print(f"{s_val.real:.15g}{s_val.imag:+.15g}i", file=sys.stderr)
    sys.stdout.write(dumps(result))
    return EXIT_OK


def cmd_loewner(a) -> int:
    r = a.chain_radius
    f = _spec(a.f).resolve(r, "f")
    g = _spec(a.g or "identity").resolve(r, "g")
    h = _spec(a.h).resolve(r, "h") if a.h else f
    rep = validate_chain(f, g, h, _params(a), _loewner_cfg(a), a.variant)
    sys.stdout.write(dumps(rep.to_dict()))
    return EXIT_OK if rep.passed else EXIT_VIOLATED


def _parse_range(text: str):
    m = re.fullmatch(r"\s*([-+0-9.eE]+)\s*\.\.\s*([-+0-9.eE]+)\s*", text)
    if not m:
        raise InputError(f"range must look like 'lo..hi', got {text!r}")
    lo, hi = float(m.group(1)), float(m.group(2))
    if not lo < hi:
        raise InputError("range needs lo < hi")
    return lo, hi


def cmd_sweep(a) -> int:
    name, rng = a.vary
    if name not in ("a", "alpha", "beta", "c", "m"):
        raise InputError("--vary takes one of a, alpha, beta, c, m")
    lo, hi = _parse_range(rng)
    values = np.linspace(lo, hi, a.steps)
    base = _params(a)
    grid = _grid(a)
    f0 = _spec(a.f or "identity").resolve(grid.max_radius, "f")
    g = _spec(a.g).resolve(grid.max_radius, "g") if a.g else builtin("identity")
    h = _spec(a.h).resolve(grid.max_radius, "h") if a.h else None
    needs = "fgh" if a.criterion in THEOREMS else ARITY.get(a.criterion, "")
    scan = GridConfig(n_radii=4 * grid.n_radii, n_angles=4 * grid.n_angles, max_radius=grid.max_radius,
                      tolerance=grid.tolerance)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([name, "margin", "satisfied", "params_ok"] + (["scan_margin"] if a.scan else []))
    for val in values:
        f, p = f0, base
        if name == "a":
            c = np.array(f0.coeffs)
            c[2] += val
            f = Series(c)
        else:
            p = base.with_(**{name: val})
        hh = h if h is not None else (f if "h" in needs else None)
        rep = evaluate_criterion(a.criterion, f, g if "g" in needs else None, hh, p, grid)
        row = [repr(float(val)), repr(float(rep.margin)), int(rep.satisfied), int(rep.params_ok)]
        if a.scan:
            srep = evaluate_criterion(a.criterion, f, g if "g" in needs else None, hh, p, scan)
            ms = [r.bound - float(np.max(r.grid_values)) for r in srep.inequalities if r.grid_values is not None]
            row.append(repr(min(ms)) if ms else "nan")
        w.writerow(row)
    if a.out:
        with open(a.out, "w") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="univalence", description="Numerical univalence criteria.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernels)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="evaluate one criterion")
    p.add_argument("--manifest", help="JSON manifest (or a previous report.json)")
    p.add_argument("--criterion", choices=CRITERIA)
    _add_function_args(p)
    _add_param_args(p)
    _add_grid_args(p)
    p.add_argument("--loewner", action="store_true", help="also validate the Loewner chain")
    _add_loewner_args(p)
    p.add_argument("--oracle", action="store_true", help="also run the injectivity oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="directory for report.json and grid.csv (default: JSON to stdout)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("operators", help="print Ruscheweyh or Salagean coefficients")
    _add_function_args(p, "f")
    p.add_argument("--ruscheweyh", type=float)
    p.add_argument("--salagean", type=int)
    p.set_defaults(func=cmd_operators)

    p = sub.add_parser("integral", help="F_beta coefficients and a quadrature cross-check")
    _add_function_args(p, "fg")
    p.add_argument("--beta", default="1")
    p.add_argument("--at", help="evaluation point, e.g. 0.5 or 0.2+0.3i")
    p.add_argument("--order", type=int, default=DEFAULT_ORDER)
    p.add_argument("--terms", type=int, default=12)
    p.set_defaults(func=cmd_integral)

    p = sub.add_parser("loewner", help="validate the Loewner chain")
    _add_function_args(p)
    _add_param_args(p)
    _add_loewner_args(p)
    p.add_argument("--variant", choices=("T2", "T4"), default="T2")
    p.set_defaults(func=cmd_loewner)

    p = sub.add_parser("sweep", help="margin against one parameter, as CSV")
    p.add_argument("--criterion", choices=CRITERIA, required=True)
    _add_function_args(p)
    _add_param_args(p)
    _add_grid_args(p)
    p.add_argument("--vary", nargs=2, metavar=("NAME", "LO..HI"), required=True,
                   help="a (z^2 coefficient added to f), alpha, beta, c or m")
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--scan", action="store_true", help="add a dense lattice scan column as an oracle")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    try:
        return a.func(a)
    except SingularPoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SINGULAR
    except (InputError, ValueError, UnivalenceError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
