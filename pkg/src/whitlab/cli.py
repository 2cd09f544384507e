"""Batch verification driver.

Every library check is exposed as a subcommand emitting a machine-readable
report: {command, config, checks[], pass} with one record per check holding
lhs/rhs as {re, im}, absolute and relative errors, evaluation counts, and
(with --timings) wall-clock milliseconds.  Reports are deterministic for a
fixed seed: wall_ms stays null unless requested, quadrature is deterministic,
and sampling is driven entirely by numpy's seeded Generator.

Exit codes: 0 all checks pass, 1 at least one check fails, 2 the computation
could not be carried out (non-convergence, unsupported rank), 3 usage error.
WHITLAB_THREADS caps internal parallelism (grid scans); default is the
hardware concurrency.
"""

import argparse
import csv
import io
import json
import sys
import time

import numpy as np

from .errors import DimensionUnsupported, PreconditionViolated, WhitlabError
from .identities import (
    barnes_first,
    beta_integral,
    euler_gamma,
    glo11,
    gustafson_n1,
)
from .intertwiners import (
    check_kernel_intertwining,
    check_scalar_identity,
    draw_kernel_sample,
    draw_scalar_sample,
    gl2_apply_kernel,
    gl2_reduced_kernel,
    gl2_sigma,
    gl2_whittaker_images,
    gl3_BL_apply,
    gl3_BLdag_BR_fixedpoint,
    gl3_BR_apply,
    psi_tilde_L,
    psi_tilde_R,
)
from .quadrature import QuadSpec
from .realizations import (
    SpectralParams,
    check_gl_commutations,
    check_whittaker_defining,
    gg_modified,
    gg_realization,
    gt_modified,
    gt_realization,
    whittaker_vectors,
)
from .toda import eigen_ratio_scan, frozen_mb_evaluator, line_grid
from .whittaker import (
    phi_hat_closed_form,
    phi_hat_mb_integral,
    psi_givental,
    psi_mb,
    psi_modified,
)

__all__ = ["main"]

_TINY = 1e-300


class CliUsageError(Exception):
    """Malformed flags or config; mapped to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


# --- small codecs ----------------------------------------------------------


def _parse_complex(tok):
    tok = tok.strip().lower().replace("i", "j")
    try:
        return complex(tok)
    except ValueError as exc:
        raise CliUsageError(f"bad complex entry {tok!r} (expected a+bi)") from exc


def _parse_complex_list(text):
    return tuple(_parse_complex(t) for t in text.split(","))


def _parse_float_list(text):
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise CliUsageError(f"bad numeric list {text!r}") from exc


def _fmt_complex(z):
    z = complex(z)
    return f"{z.real:g}{z.imag:+g}i"


def _cnum(z):
    if z is None:
        return {"re": None, "im": None}
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _record(name, lhs, rhs, abs_err, rel_err, n_evals, tol, wall_ms=None, error=None):
    rec = {
        "name": name,
        "lhs": _cnum(lhs),
        "rhs": _cnum(rhs),
        "abs_err": abs_err,
        "rel_err": rel_err,
        "n_evals": n_evals,
        "wall_ms": wall_ms,
        "tol": tol,
    }
    if error is not None:
        rec["error"] = error
    return rec


def _rec_from_report(rep, tol, name=None, wall_ms=None):
    quad = rep.quad
    n = getattr(quad, "n_evals", None) if quad is not None else None
    return _record(
        name or rep.name,
        rep.lhs,
        rep.rhs,
        rep.abs_residual,
        rep.rel_residual,
        n,
        tol,
        wall_ms=wall_ms,
    )


def _passes(rec):
    return rec.get("rel_err") is not None and rec["rel_err"] < rec["tol"]


def _emit(args, command, config, checks):
    report = {
        "command": command,
        "config": config,
        "checks": checks,
        "pass": all(_passes(c) for c in checks),
    }
    if args.format == "csv":
        buf = io.StringIO()
        fields = [
            "name",
            "lhs_re",
            "lhs_im",
            "rhs_re",
            "rhs_im",
            "abs_err",
            "rel_err",
            "n_evals",
            "wall_ms",
            "tol",
            "error",
        ]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for c in checks:
            writer.writerow(
                {
                    "name": c["name"],
                    "lhs_re": c["lhs"]["re"],
                    "lhs_im": c["lhs"]["im"],
                    "rhs_re": c["rhs"]["re"],
                    "rhs_im": c["rhs"]["im"],
                    "abs_err": c["abs_err"],
                    "rel_err": c["rel_err"],
                    "n_evals": c["n_evals"],
                    "wall_ms": c["wall_ms"],
                    "tol": c["tol"],
                    "error": c.get("error", ""),
                }
            )
        text = buf.getvalue()
    else:
        text = json.dumps(report, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report["pass"] else 1


def _clock(args, t0):
    if not args.timings:
        return None
    return (time.perf_counter() - t0) * 1000.0


# --- option plumbing -------------------------------------------------------


def _load_config_file(path):
    cfg = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise CliUsageError(f"config line without '=': {raw.strip()!r}")
            key, val = line.split("=", 1)
            cfg[key.strip().replace("-", "_")] = val.strip()
    return cfg


def _opt(args, key, fallback=None, cast=None):
    """Flag value, else config-file value, else fallback."""
    v = getattr(args, key, None)
    if v is None:
        v = args.file_cfg.get(key)
    if v is None:
        return fallback
    if cast is not None and isinstance(v, str):
        try:
            return cast(v)
        except (ValueError, CliUsageError) as exc:
            raise CliUsageError(f"bad value for {key}: {v!r}") from exc
    return v


def _check_ell(ell):
    if ell not in (1, 2):
        raise DimensionUnsupported(f"ell={ell} beyond implemented ranks")
    return ell


_DEFAULT_LAM = {1: (0.3, -0.45), 2: (0.2, -0.1, 0.3)}


def _build_params(args, ell, default_kappa=0.0):
    gamma = _opt(args, "gamma", cast=_parse_complex_list)
    lam = _opt(args, "lam", cast=_parse_float_list)
    eps = _opt(args, "eps", cast=float)
    kappa = _opt(args, "kappa", fallback=default_kappa, cast=float)
    if gamma is not None:
        if len(gamma) != ell + 1:
            raise CliUsageError(f"--gamma needs {ell + 1} entries for ell={ell}")
        return SpectralParams.from_gamma(ell, gamma, kappa=kappa)
    if lam is not None:
        if len(lam) != ell + 1:
            raise CliUsageError(f"--lambda needs {ell + 1} entries for ell={ell}")
        return SpectralParams.from_lambda(ell, lam, eps=0.0 if eps is None else eps, kappa=kappa)
    return SpectralParams.from_lambda(
        ell, _DEFAULT_LAM[ell], eps=0.2 if eps is None else eps, kappa=kappa
    )


def _build_spec(args, rel_fallback=None, abs_fallback=None):
    rel = _opt(args, "rel_tol", fallback=rel_fallback, cast=float)
    abso = _opt(args, "abs_tol", fallback=abs_fallback, cast=float)
    kw = {}
    if rel is not None:
        kw["rel_tol"] = rel
    if abso is not None:
        kw["abs_tol"] = abso
    return QuadSpec(**kw)


def _spec_echo(spec):
    return {"rel_tol": spec.rel_tol, "abs_tol": spec.abs_tol}


# --- identities ------------------------------------------------------------

_ID_DEFAULT_TOL = {
    "barnes": 1e-8,
    "gustafson": 1e-7,
    "glo11": 1e-7,
    "euler": 1e-8,
    "beta": 1e-8,
}
_ID_DEFAULT_RE = {
    "barnes": (0.1, 1.2),
    "gustafson": (0.15, 1.0),
    "glo11": (0.15, 1.0),
    "euler": (0.2, 2.0),
    "beta": (0.2, 1.5),
}
_ID_IM_SPAN = {"barnes": 0.5, "gustafson": 0.3, "glo11": 0.3, "euler": 0.5, "beta": 0.3}


def _identity_check(which, rng, re_box, spec):
    lo, hi = re_box
    span = _ID_IM_SPAN[which]

    def draw(n):
        return tuple(
            complex(rng.uniform(lo, hi), rng.uniform(-span, span)) for _ in range(n)
        )

    if which == "barnes":
        return barnes_first(draw(2), draw(2), spec)
    if which == "gustafson":
        return gustafson_n1(draw(4), spec)
    if which == "glo11":
        return glo11(draw(3), spec)
    if which == "euler":
        return euler_gamma(draw(1)[0], spec)
    if which == "beta":
        a, b = draw(2)
        return beta_integral(a, b, spec)
    raise CliUsageError(f"unknown identity {which!r}")


def cmd_identities(args):
    which = _opt(args, "which", fallback="all")
    names = list(_ID_DEFAULT_TOL) if which == "all" else [which]
    if any(n not in _ID_DEFAULT_TOL for n in names):
        raise CliUsageError(f"unknown identity {which!r}")
    samples = _opt(args, "samples", fallback=20, cast=int)
    if samples < 1:
        raise CliUsageError("--samples must be at least 1")
    seed = _opt(args, "seed", fallback=0, cast=int)
    tol_flag = _opt(args, "tol", cast=float)
    re_lo = _opt(args, "re_lo", cast=float)
    re_hi = _opt(args, "re_hi", cast=float)
    spec = _build_spec(args)
    rng = np.random.default_rng(seed)

    checks = []
    for name in names:
        tol = tol_flag if tol_flag is not None else _ID_DEFAULT_TOL[name]
        box = list(_ID_DEFAULT_RE[name])
        if re_lo is not None:
            box[0] = re_lo
        if re_hi is not None:
            box[1] = re_hi
        for i in range(samples):
            t0 = time.perf_counter()
            try:
                rep = _identity_check(name, rng, box, spec)
            except PreconditionViolated as exc:
                checks.append(
                    _record(
                        f"{name}[{i}]", None, None, None, None, None, tol,
                        wall_ms=_clock(args, t0), error=str(exc),
                    )
                )
                continue
            checks.append(
                _rec_from_report(rep, tol, name=f"{name}[{i}]", wall_ms=_clock(args, t0))
            )
    config = {
        "which": which,
        "samples": samples,
        "seed": seed,
        "re_lo": re_lo,
        "re_hi": re_hi,
        **_spec_echo(spec),
    }
    return _emit(args, "identities", config, checks)


# --- eval ------------------------------------------------------------------

_REPS = {"mb": psi_mb, "givental": psi_givental, "modified": psi_modified}


def cmd_eval(args):
    rep_name = _opt(args, "rep", fallback="mb")
    if rep_name not in _REPS:
        raise CliUsageError(f"unknown representation {rep_name!r}")
    ell = _check_ell(_opt(args, "ell", fallback=1, cast=int))
    params = _build_params(args, ell)
    x = _opt(args, "x", fallback=(0.0,) * (ell + 1), cast=_parse_float_list)
    if len(x) != ell + 1:
        raise CliUsageError(f"--x needs {ell + 1} entries for ell={ell}")
    tol = _opt(args, "tol", fallback=1e-6, cast=float)
    spec = _build_spec(args, *([None, None] if ell == 1 else [1e-7, 1e-10]))

    t0 = time.perf_counter()
    value = _REPS[rep_name](params, x, spec)
    err = value.quad.err_estimate
    rel = err / max(abs(value.value), _TINY)
    checks = [
        _record(
            f"eval[{rep_name}]", value.value, value.value, err, rel,
            value.quad.n_evals, tol, wall_ms=_clock(args, t0),
        )
    ]
    config = {
        "rep": rep_name,
        "ell": ell,
        "gamma": [_fmt_complex(g) for g in params.gamma],
        "x": list(x),
        **_spec_echo(spec),
    }
    return _emit(args, "eval", config, checks)


# --- compare ---------------------------------------------------------------


def cmd_compare(args):
    ell = _check_ell(_opt(args, "ell", fallback=1, cast=int))
    seed = _opt(args, "seed", fallback=0, cast=int)
    rng = np.random.default_rng(seed)
    checks = []

    if _opt(args, "fourier", fallback=False):
        if ell != 2:
            raise CliUsageError("--fourier applies to ell=2 only")
        samples = _opt(args, "samples", fallback=10, cast=int)
        tol = _opt(args, "tol", fallback=1e-7, cast=float)
        spec = _build_spec(args, 1e-9, 1e-12)
        for i in range(samples):
            g = tuple(rng.uniform(-0.5, 0.5, 3))
            pt = tuple(rng.uniform(-0.5, 0.5, 2))
            p = SpectralParams.from_gamma(2, g)
            t0 = time.perf_counter()
            lhs = phi_hat_mb_integral(p, pt, spec)
            rhs = phi_hat_closed_form(p, pt)
            abs_err = abs(lhs - rhs)
            rel = abs_err / max(abs(rhs), _TINY)
            checks.append(
                _record(
                    f"fourier[{i}]", lhs, rhs, abs_err, rel, None, tol,
                    wall_ms=_clock(args, t0),
                )
            )
        config = {"ell": ell, "fourier": True, "samples": samples, "seed": seed, **_spec_echo(spec)}
        return _emit(args, "compare", config, checks)

    if ell == 1:
        rep_names = ["mb", "givental", "modified"]
        samples = _opt(args, "samples", fallback=9, cast=int)
        tol = _opt(args, "tol", fallback=1e-8, cast=float)
        spec = _build_spec(args)
    else:
        rep_names = ["mb", "givental"]
        samples = _opt(args, "samples", fallback=3, cast=int)
        tol = _opt(args, "tol", fallback=1e-6, cast=float)
        spec = _build_spec(args, 1e-7, 1e-10)
    req = _opt(args, "reps")
    if req is not None:
        rep_names = [r.strip() for r in req.split(",")]
        if any(r not in _REPS for r in rep_names) or len(rep_names) < 2:
            raise CliUsageError("--reps needs two or more of mb,givental,modified")

    eps = _opt(args, "eps", fallback=0.2 if ell == 2 else 0.0, cast=float)
    half = 1.0 if ell == 1 else 0.5
    for i in range(samples):
        lam = tuple(rng.uniform(-half, half, ell + 1))
        x = tuple(rng.uniform(-half, half, ell + 1))
        p = SpectralParams.from_lambda(ell, lam, eps=eps)
        t0 = time.perf_counter()
        vals = {r: _REPS[r](p, x, spec).value for r in rep_names}
        wall = _clock(args, t0)
        for j, r1 in enumerate(rep_names):
            for r2 in rep_names[j + 1 :]:
                abs_err = abs(vals[r1] - vals[r2])
                rel = abs_err / max(abs(vals[r2]), _TINY)
                checks.append(
                    _record(
                        f"compare[{r1}|{r2}][{i}]", vals[r1], vals[r2],
                        abs_err, rel, None, tol, wall_ms=wall,
                    )
                )
    config = {
        "ell": ell,
        "reps": rep_names,
        "samples": samples,
        "seed": seed,
        "eps": eps,
        **_spec_echo(spec),
    }
    return _emit(args, "compare", config, checks)


# --- intertwine ------------------------------------------------------------


def _draw_tau2(rng, span=0.8, margin=0.15):
    while True:
        t11, t21, t22 = rng.uniform(-span, span, 3)
        if abs(t21 - t22) > margin:
            return float(t11), float(t21), float(t22)


def cmd_intertwine(args):
    check = _opt(args, "check", fallback="kernel-all")
    seed = _opt(args, "seed", fallback=0, cast=int)
    rng = np.random.default_rng(seed)
    spec = _build_spec(args)
    checks = []
    config = {"check": check, "seed": seed, **_spec_echo(spec)}

    if check in ("br", "bl"):
        samples = _opt(args, "samples", fallback=5, cast=int)
        tol = _opt(args, "tol", fallback=1e-8, cast=float)
        p = _build_params(args, 2, default_kappa=0.1)
        phi_l, phi_r = whittaker_vectors(gg_modified(p))
        for i in range(samples):
            tau = _draw_tau2(rng)
            shifted = (tau[0] - 1j * p.kappa, tau[1], tau[2])
            t0 = time.perf_counter()
            if check == "br":
                lhs = gl3_BR_apply(phi_r.fn, p, tau, spec)
                rhs = psi_tilde_R(p, shifted)
            else:
                lhs = gl3_BL_apply(phi_l.fn, p, tau, spec)
                rhs = psi_tilde_L(p, shifted)
            abs_err = abs(lhs - rhs)
            checks.append(
                _record(
                    f"{check}[{i}]", lhs, rhs, abs_err,
                    abs_err / max(abs(rhs), _TINY), None, tol,
                    wall_ms=_clock(args, t0),
                )
            )
    elif check == "bldag-br":
        samples = _opt(args, "samples", fallback=3, cast=int)
        tol = _opt(args, "tol", fallback=1e-7, cast=float)
        p = _build_params(args, 2, default_kappa=0.1)
        for i in range(samples):
            s = tuple(rng.uniform(-0.5, 0.5, 3))
            t0 = time.perf_counter()
            rep = gl3_BLdag_BR_fixedpoint(p, s, spec)
            checks.append(
                _rec_from_report(rep, tol, name=f"bldag-br[{i}]", wall_ms=_clock(args, t0))
            )
    elif check in ("e21", "e23"):
        samples = _opt(args, "samples", fallback=100, cast=int)
        tol = _opt(args, "tol", fallback=1e-12, cast=float)
        which = check.upper()
        for i in range(samples):
            t0 = time.perf_counter()
            rep = check_scalar_identity(which, draw_scalar_sample(which, rng))
            checks.append(
                _rec_from_report(rep, tol, name=f"{check}[{i}]", wall_ms=_clock(args, t0))
            )
    elif check == "kernel-all":
        samples = _opt(args, "samples", fallback=2, cast=int)
        tol = _opt(args, "tol", fallback=1e-10, cast=float)
        p3 = _build_params(args, 2, default_kappa=0.1)
        p2 = SpectralParams.from_lambda(1, _DEFAULT_LAM[1], eps=0.2)
        for side, p in (
            ("R_gl3", p3),
            ("Ldag_gl3", p3),
            ("R_gl2", p2),
            ("L_gl2", p2),
        ):
            pairs = sorted(gt_realization(p).generators)
            for i in range(samples):
                sample = draw_kernel_sample(side, p, rng)
                for pair in pairs:
                    t0 = time.perf_counter()
                    rep = check_kernel_intertwining(side, pair, sample)
                    checks.append(
                        _rec_from_report(
                            rep, tol, name=f"{rep.name}[{i}]", wall_ms=_clock(args, t0)
                        )
                    )
    elif check == "gl2-all":
        tol = _opt(args, "tol", fallback=1e-11, cast=float)
        p = _build_params(args, 1)
        phi_l, phi_r = whittaker_vectors(gg_modified(p))
        psi_l, psi_r = gl2_whittaker_images(p)
        taus = rng.uniform(-1.5, 1.5, 4)
        for i, tau in enumerate(taus):
            t0 = time.perf_counter()
            lhs = gl2_apply_kernel("BR", phi_r.fn, p, tau)
            rhs = psi_r(tau)
            checks.append(
                _record(
                    f"gl2_br[{i}]", lhs, rhs, abs(lhs - rhs),
                    abs(lhs - rhs) / max(abs(rhs), _TINY), None, tol,
                    wall_ms=_clock(args, t0),
                )
            )
            t0 = time.perf_counter()
            lhs = gl2_apply_kernel("BL", phi_l.fn, p, tau)
            rhs = psi_l(tau)
            checks.append(
                _record(
                    f"gl2_bl[{i}]", lhs, rhs, abs(lhs - rhs),
                    abs(lhs - rhs) / max(abs(rhs), _TINY), None, tol,
                    wall_ms=_clock(args, t0),
                )
            )
            t0 = time.perf_counter()
            lhs = gl2_apply_kernel(
                "BLdag", lambda t: gl2_apply_kernel("BR", phi_r.fn, p, t), p, tau
            )
            rhs = phi_r.fn(tau)
            checks.append(
                _record(
                    f"gl2_roundtrip[{i}]", lhs, rhs, abs(lhs - rhs),
                    abs(lhs - rhs) / max(abs(rhs), _TINY), None, tol,
                    wall_ms=_clock(args, t0),
                )
            )
        p0 = SpectralParams.from_lambda(1, p.lam, eps=0.0)
        ker_n = gl2_reduced_kernel("N", p0)
        ker_r = gl2_reduced_kernel("BR", p0)
        for i, tau in enumerate(taus):
            t0 = time.perf_counter()
            n_val = complex(ker_n.prefactor(tau))
            checks.append(
                _record(
                    f"gl2_n_mod[{i}]", abs(n_val), 1.0, abs(abs(n_val) - 1.0),
                    abs(abs(n_val) - 1.0), None, tol, wall_ms=_clock(args, t0),
                )
            )
            t0 = time.perf_counter()
            rhs = gl2_sigma(p0, tau) * complex(ker_r.prefactor(tau))
            checks.append(
                _record(
                    f"gl2_n_sigma[{i}]", n_val, rhs, abs(n_val - rhs),
                    abs(n_val - rhs) / max(abs(rhs), _TINY), None, tol,
                    wall_ms=_clock(args, t0),
                )
            )
    else:
        raise CliUsageError(f"unknown intertwine check {check!r}")
    return _emit(args, "intertwine", config, checks)


# --- toda ------------------------------------------------------------------


def cmd_toda(args):
    ell = _check_ell(_opt(args, "ell", fallback=1, cast=int))
    params = _build_params(args, ell, default_kappa=0.0)
    n_default, span_default = (9, 0.5) if ell == 1 else (5, 0.3)
    n = _opt(args, "grid_points", fallback=n_default, cast=int)
    span = _opt(args, "span", fallback=span_default, cast=float)
    h = _opt(args, "step", fallback=1e-3 if ell == 1 else 5e-3, cast=float)
    tol = _opt(args, "tol", fallback=1e-5 if ell == 1 else 1e-4, cast=float)
    grid = line_grid(ell, n, span=span)

    t0 = time.perf_counter()
    if ell == 1:
        spec = _build_spec(args)
        psi = lambda p, x: psi_givental(p, x, spec)  # noqa: E731
    else:
        spec = _build_spec(args, 1e-7, 1e-10)
        psi = frozen_mb_evaluator(params, grid[len(grid) // 2], spec)
    scan = eigen_ratio_scan(psi, params, grid, h)
    wall = _clock(args, t0)

    checks = []
    for i, r in enumerate(scan.ratios):
        dev = abs(r - scan.mean)
        checks.append(
            _record(f"toda[{i}]", r, scan.mean, dev, dev, None, tol, wall_ms=wall)
        )
    checks.append(
        _record(
            "toda[spread]", scan.spread, 0.0, scan.spread, scan.spread, None, tol,
            wall_ms=wall,
        )
    )
    config = {
        "ell": ell,
        "gamma": [_fmt_complex(g) for g in params.gamma],
        "grid_points": n,
        "span": span,
        "step": h,
        **_spec_echo(spec),
    }
    return _emit(args, "toda", config, checks)


# --- commutators / whitvec -------------------------------------------------

_REALIZATIONS = {
    "gt": gt_realization,
    "gtmod": gt_modified,
    "ggmod": gg_modified,
    "gg": gg_realization,
}


def _build_realization(args, name):
    if name not in _REALIZATIONS:
        raise CliUsageError(f"unknown realization {name!r}")
    ell = _check_ell(_opt(args, "ell", fallback=1, cast=int))
    params = _build_params(args, ell, default_kappa=0.1 if ell == 2 else 0.0)
    return _REALIZATIONS[name](params), params


def cmd_commutators(args):
    name = _opt(args, "realization", fallback="gt")
    if name == "gg":
        raise CliUsageError(
            "bracket checks need shift operators; use whitvec for the differential family"
        )
    seed = _opt(args, "seed", fallback=4821, cast=int)
    tol = _opt(args, "tol", fallback=1e-10, cast=float)
    rea, params = _build_realization(args, name)
    t0 = time.perf_counter()
    rep = check_gl_commutations(rea, seed=seed)
    checks = [_rec_from_report(rep, tol, wall_ms=_clock(args, t0))]
    config = {
        "realization": name,
        "ell": params.ell,
        "gamma": [_fmt_complex(g) for g in params.gamma],
        "seed": seed,
    }
    return _emit(args, "commutators", config, checks)


def cmd_whitvec(args):
    name = _opt(args, "realization", fallback="gt")
    seed = _opt(args, "seed", fallback=710, cast=int)
    tol = _opt(args, "tol", fallback=1e-6 if name == "gg" else 1e-10, cast=float)
    rea, params = _build_realization(args, name)
    t0 = time.perf_counter()
    rep = check_whittaker_defining(rea, seed=seed)
    checks = [_rec_from_report(rep, tol, wall_ms=_clock(args, t0))]
    config = {
        "realization": name,
        "ell": params.ell,
        "gamma": [_fmt_complex(g) for g in params.gamma],
        "seed": seed,
    }
    return _emit(args, "whitvec", config, checks)


# --- parser ----------------------------------------------------------------


def _add_common(sub):
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--tol", type=float, default=None)
    sub.add_argument("--samples", type=int, default=None)
    sub.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    sub.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    sub.add_argument("--output", default=None)
    sub.add_argument("--format", choices=["json", "csv"], default="json")
    sub.add_argument("--timings", action="store_true")
    sub.add_argument("--config", default=None, help="key = value file; flags win")


def _add_params(sub):
    sub.add_argument("--ell", type=int, default=None)
    sub.add_argument("--gamma", default=None, help="comma list, entries a+bi")
    sub.add_argument("--lambda", dest="lam", default=None, help="comma list of reals")
    sub.add_argument("--eps", type=float, default=None)
    sub.add_argument("--kappa", type=float, default=None)


def _make_parser():
    parser = _Parser(prog="whitlab", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("identities", help="scalar Gamma-product identities")
    s.add_argument("--which", default=None,
                   help="barnes | gustafson | glo11 | euler | beta | all")
    s.add_argument("--re-lo", dest="re_lo", type=float, default=None)
    s.add_argument("--re-hi", dest="re_hi", type=float, default=None)
    _add_common(s)
    s.set_defaults(func=cmd_identities)

    s = subs.add_parser("eval", help="evaluate one representation at one point")
    s.add_argument("--rep", default=None, help="mb | givental | modified")
    s.add_argument("--x", default=None, help="comma list of reals")
    _add_params(s)
    _add_common(s)
    s.set_defaults(func=cmd_eval)

    s = subs.add_parser("compare", help="cross-representation agreement")
    s.add_argument("--reps", default=None, help="comma subset of mb,givental,modified")
    s.add_argument("--fourier", action="store_true", default=None,
                   help="rank-2 Fourier-side pair instead of representations")
    _add_params(s)
    _add_common(s)
    s.set_defaults(func=cmd_compare)

    s = subs.add_parser("intertwine", help="kernel maps and exchange identities")
    s.add_argument("--check", default=None,
                   help="br | bl | bldag-br | e21 | e23 | kernel-all | gl2-all")
    _add_params(s)
    _add_common(s)
    s.set_defaults(func=cmd_intertwine)

    s = subs.add_parser("toda", help="eigen-ratio constancy scan")
    s.add_argument("--grid-points", dest="grid_points", type=int, default=None)
    s.add_argument("--span", type=float, default=None)
    s.add_argument("--step", type=float, default=None)
    _add_params(s)
    _add_common(s)
    s.set_defaults(func=cmd_toda)

    s = subs.add_parser("commutators", help="bracket relations of a realization")
    s.add_argument("--realization", default=None, help="gt | gtmod | ggmod")
    _add_params(s)
    _add_common(s)
    s.set_defaults(func=cmd_commutators)

    s = subs.add_parser("whitvec", help="vector defining equations of a realization")
    s.add_argument("--realization", default=None, help="gt | gtmod | ggmod | gg")
    _add_params(s)
    _add_common(s)
    s.set_defaults(func=cmd_whitvec)

    return parser


def main(argv=None):
    try:
        args = _make_parser().parse_args(argv)
        args.file_cfg = _load_config_file(args.config) if args.config else {}
        return args.func(args)
    except CliUsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 3
    except WhitlabError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
