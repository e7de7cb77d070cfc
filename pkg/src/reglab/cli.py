"""Command-line front end.

Subcommands:
  compute    period table plus regulator determinant for one l
  fibers     singular fiber inventory of the example family
  pf         Picard-Fuchs data A, A', B and monomial relations
  oracle     quadrature cross-check of the series-route periods
  selfcheck  bundled invariant suite, [pass]/[fail] per check

Results of `compute` can be cached as one checksummed JSON file per
(l, digits, version) key; corrupted or stale files are ignored with a
warning and recomputed.  Exit codes: 0 success, 2 validation error,
3 precision or quadrature failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from fractions import Fraction
from typing import NamedTuple, Optional

from mpmath import mp

from . import __version__
from .bigreal_periods import eisenstein_transform_residual, eval_IJ
from .errors import (
    PrecisionNotReached,
    QuadratureNotConverged,
    ReglabError,
    UnsupportedL,
)

_DEFAULT_DIGITS = 30
_ORACLE_BITS = 64


class RunConfig(NamedTuple):
    subcommand: str
    l: int
    digits: Optional[int]  # None means subcommand default
    format: str
    cache_dir: Optional[str]
    parallelism: Optional[int]
    skip_oracle: bool
    m: Optional[int]
    j: Optional[int]

    @property
    def effective_digits(self) -> int:
        return _DEFAULT_DIGITS if self.digits is None else self.digits


def _bits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + 8


def _config_from(args: argparse.Namespace) -> RunConfig:
    digits = getattr(args, "digits", None)
    if digits is not None and digits < 10:
        raise ValueError("--digits must be at least 10")
    parallelism = getattr(args, "parallelism", None)
    if parallelism is not None and parallelism < 1:
        raise ValueError("--parallelism must be at least 1")
    cache_dir = os.environ.get("REGLAB_CACHE") or getattr(args, "cache", None)
    return RunConfig(
        subcommand=args.subcommand,
        l=getattr(args, "l", 0),
        digits=digits,
        format=getattr(args, "format", "text"),
        cache_dir=cache_dir,
        parallelism=parallelism,
        skip_oracle=getattr(args, "skip_oracle", False),
        m=getattr(args, "m", None),
        j=getattr(args, "j", None),
    )


# ---------------------------------------------------------------- compute

def _oracle_check(l: int, pairs, p_oracle: int = _ORACLE_BITS) -> str:
    from .elliptic_oracle import direct_periods

    worst = mp.mpf(0)
    with mp.workprec(p_oracle + 16):
        for j, pair in enumerate(pairs, start=1):
            got = direct_periods(l, j, p_oracle)
            want_delta = 54 * mp.pi / l * pair.I.value
            want_gamma = mp.mpf(27) / l * pair.J.value
            worst = max(worst,
                        abs(got.delta_abs.value - want_delta) / want_delta,
                        abs(got.gamma_abs.value - want_gamma) / want_gamma)
    return mp.nstr(worst, 3)


def compute_payload(cfg: RunConfig) -> dict:
    from .regulator import regulator_closed_form

    digits = cfg.effective_digits
    p = _bits(digits)
    pairs = [eval_IJ(cfg.l, j, p) for j in range(1, cfg.l)]
    result = regulator_closed_form(cfg.l, p)
    oracle = None
    if not cfg.skip_oracle:
        oracle = {"max_rel_diff": _oracle_check(cfg.l, pairs)}
    from .weierstrass import hodge_and_dims

    return {
        "l": cfg.l,
        "h": hodge_and_dims(cfg.l)["h"],
        "I": [pair.I.to_decimal(digits) for pair in pairs],
        "J": [pair.J.to_decimal(digits) for pair in pairs],
        "regulator_e_ind": result.value_e_ind.to_decimal(digits),
        "det_agreement_digits": result.det_agreement_digits,
        "oracle_check": oracle,
        "N_used": max(pair.N_used for pair in pairs),
        "sign_policy": result.sign_policy,
        "normalization_verified": result.normalization_verified,
    }


def _render_text(payload: dict) -> str:
    width = max(len(v) for v in payload["I"] + payload["J"]) + 2
    lines = [
        "l = {}    h = {}    sign policy: {}".format(
            payload["l"], payload["h"], payload["sign_policy"]),
        "  j  {}{}".format("I(j)".ljust(width), "J(j)"),
    ]
    for j, (iv, jv) in enumerate(zip(payload["I"], payload["J"]), start=1):
        lines.append("  {}  {}{}".format(j, iv.ljust(width), jv))
    lines.append("regulator e_ind = {}    (det routes agree to {} digits)".format(
        payload["regulator_e_ind"], payload["det_agreement_digits"]))
    if payload["oracle_check"] is None:
        lines.append("oracle check: skipped")
    else:
        lines.append("oracle check: max relative difference {}".format(
            payload["oracle_check"]["max_rel_diff"]))
    if not payload["normalization_verified"]:
        lines.append("note: normalization follows the generalized formula, "
                     "unverified for this l")
    return "\n".join(lines)


def _render_csv(payload: dict) -> str:
    lines = ["l,j,I,J"]
    for j, (iv, jv) in enumerate(zip(payload["I"], payload["J"]), start=1):
        lines.append("{},{},{},{}".format(payload["l"], j, iv, jv))
    return "\n".join(lines)


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if fmt == "csv":
        return _render_csv(payload)
    return _render_text(payload)


# ---------------------------------------------------------------- cache

def _checksum(key: dict, payload: dict) -> str:
    body = json.dumps({"key": key, "payload": payload},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(body.encode()).hexdigest()


def _cache_path(cfg: RunConfig) -> str:
    name = "reglab-l{}-d{}-v{}.json".format(
        cfg.l, cfg.effective_digits, __version__)
    return os.path.join(cfg.cache_dir, name)


def _cache_load(cfg: RunConfig) -> Optional[dict]:
    path = _cache_path(cfg)
    if not os.path.exists(path):
        return None
    try:
        with open(path) as fh:
            entry = json.load(fh)
        key, payload = entry["key"], entry["payload"]
        if entry["checksum"] != _checksum(key, payload):
            raise ValueError("checksum mismatch")
    except (ValueError, KeyError, TypeError) as exc:
        print("warning: ignoring corrupt cache file {}: {}".format(path, exc),
              file=sys.stderr)
        return None
    if key.get("version") != __version__:
        return None  # stale artifact version
    if key.get("l") != cfg.l or key.get("digits") != cfg.effective_digits:
        return None
    return payload


def _cache_store(cfg: RunConfig, payload: dict) -> None:
    key = {
        "l": cfg.l,
        "digits": cfg.effective_digits,
        "N": payload["N_used"],
        "version": __version__,
    }
    entry = {"key": key, "payload": payload,
             "checksum": _checksum(key, payload)}
    os.makedirs(cfg.cache_dir, exist_ok=True)
    with open(_cache_path(cfg), "w") as fh:
        json.dump(entry, fh, sort_keys=True, indent=2)
        fh.write("\n")


def cmd_compute(cfg: RunConfig) -> int:
    payload = _cache_load(cfg) if cfg.cache_dir else None
    if payload is None:
        payload = compute_payload(cfg)
        if cfg.cache_dir:
            _cache_store(cfg, payload)
    print(_render(payload, cfg.format))
    return 0


# ---------------------------------------------------------------- fibers / pf

def cmd_fibers(cfg: RunConfig) -> int:
    from .weierstrass import (
        discriminant_and_j,
        euler_epsilon,
        example_family,
        fiber_list,
        hodge_and_dims,
    )

    W = example_family(cfg.l)
    print("family: {}".format(W.label))
    fibers = fiber_list(W)
    print("  {}  {}  {}".format("place".ljust(20), "type".ljust(8), "epsilon"))
    for fiber in fibers:
        place = "infinity" if fiber.place.is_infinity else str(fiber.place.polynomial)
        print("  {}  {}  {}".format(place.ljust(20), fiber.type.ljust(8),
                                    fiber.epsilon_s))
    eps, a, deg_h10, deg_h01 = euler_epsilon(W)
    print("epsilon = {}   a = {}   deg H^(1,0) = {}   deg H^(0,1) = {}".format(
        eps, a, deg_h10, deg_h01))
    if math.gcd(cfg.l, 6) == 1:
        dims = hodge_and_dims(cfg.l)
        print("hodge: h20 = {h20}   h11 = {h11}   h = {h}   "
              "dim Lambda1 = {dim_Lambda1}   dim Lambda2 = {dim_Lambda2}".format(**dims))
    _, j_inv = discriminant_and_j(W)
    print("j nonconstant: {}".format(not j_inv.is_constant()))
    return 0


def cmd_pf(cfg: RunConfig) -> int:
    from .gauss_manin import picard_fuchs, pf_relation
    from .weierstrass import example_family

    W = example_family(cfg.l)
    pf = picard_fuchs(W)
    print("family: {}".format(W.label))
    print("A  = {}".format(pf.A))
    print("A' = {}".format(pf.A.derivative()))
    print("B  = {}".format(pf.B))
    if cfg.m is not None:
        rel = pf_relation(W, cfg.m)
        print("relation at m = {}: {}".format(cfg.m, rel))
        scaled = rel * Fraction(3 * cfg.l, 2)
        print("scaled by 3l/2:  {}".format(scaled))
    return 0


# ---------------------------------------------------------------- oracle

def cmd_oracle(cfg: RunConfig) -> int:
    from .elliptic_oracle import direct_periods

    p_oracle = _ORACLE_BITS if cfg.digits is None else _bits(cfg.digits)
    p_series = max(128, p_oracle)
    js = [cfg.j] if cfg.j is not None else list(range(1, cfg.l))
    worst = mp.mpf(0)
    print("  l  j  arch   {}  {}  {}".format(
        "series route".ljust(22), "quadrature".ljust(22), "rel diff"))
    with mp.workprec(p_series + 16):
        for j in js:
            pair = eval_IJ(cfg.l, j, p_series)
            got = direct_periods(cfg.l, j, p_oracle)
            want_delta = 54 * mp.pi / cfg.l * pair.I.value
            want_gamma = mp.mpf(27) / cfg.l * pair.J.value
            rd = abs(got.delta_abs.value - want_delta) / want_delta
            rg = abs(got.gamma_abs.value - want_gamma) / want_gamma
            worst = max(worst, rd, rg)
            for arch, want, got_v, diff in (
                    ("delta", want_delta, got.delta_abs.value, rd),
                    ("gamma", want_gamma, got.gamma_abs.value, rg)):
                print("  {}  {}  {}  {}  {}  {}".format(
                    cfg.l, j, arch.ljust(5),
                    mp.nstr(want, 15).ljust(22),
                    mp.nstr(got_v, 15).ljust(22),
                    mp.nstr(diff, 3)))
    print("max relative difference: {}".format(mp.nstr(worst, 3)))
    return 0


# ---------------------------------------------------------------- selfcheck

def _check_series_identities() -> bool:
    from .exact_series import AlphaPolynomial, a_coeffs, b_coeffs, formal_alpha

    alpha = formal_alpha()
    a = a_coeffs(alpha, 4)
    b = b_coeffs(alpha, 3)
    F = Fraction
    return (a.coefficient(2) == AlphaPolynomial([3, -27])
            and a.coefficient(3) == AlphaPolynomial([9, F(-81, 2), F(729, 2)])
            and b.coefficient(1) == AlphaPolynomial([-9, -15])
            and b.coefficient(2) == AlphaPolynomial([27, F(387, 2), F(225, 2)]))


def _check_trace_zero() -> bool:
    from .gauss_manin import connection_matrix
    from .weierstrass import example_family

    return all(connection_matrix(example_family(l)).trace().is_zero
               for l in (1, 5, 7))


def _check_fiber_list() -> bool:
    from .weierstrass import example_family, fiber_list

    found = {(("infinity" if f.place.is_infinity else str(f.place.polynomial)),
              f.type) for f in fiber_list(example_family(5))}
    return found == {("t", "I_15"), ("t^5 - 1", "I_1"), ("infinity", "IV")}


def _check_epsilon_integrality() -> bool:
    from .weierstrass import euler_epsilon, example_family

    for l in (5, 7, 11, 13, 25):
        eps, a, _, _ = euler_epsilon(example_family(l))
        if eps != (l - 1) // 3 + 1 or a != 1:
            return False
    return True


def _check_transformation_law(p: int) -> bool:
    r1 = eisenstein_transform_residual(mp.mpc(0, 1), N=80, p=p)
    r2 = eisenstein_transform_residual(mp.mpc(0, 2), N=200, p=p)
    return r1.value < mp.mpf("1e-10") and r2.value < mp.mpf("1e-10")


def _check_vandermonde(p: int) -> bool:
    from .regulator import vandermonde_like_det

    for l in range(3, 16, 2):
        v = vandermonde_like_det(l, p)
        with mp.workprec(p + 32):
            target = mp.mpf(l) ** ((l - 1) // 2)
            if abs(v.value * v.value - target) > mp.mpf("1e-20") * target:
                return False
    return True


def _check_oracle_l5(p_oracle: int) -> bool:
    from .elliptic_oracle import direct_periods

    with mp.workprec(144):
        for j in range(1, 5):
            pair = eval_IJ(5, j, 128)
            got = direct_periods(5, j, p_oracle)
            want_delta = 54 * mp.pi / 5 * pair.I.value
            want_gamma = mp.mpf(27) / 5 * pair.J.value
            if (abs(got.delta_abs.value - want_delta) / want_delta > mp.mpf("1e-6")
                    or abs(got.gamma_abs.value - want_gamma) / want_gamma > mp.mpf("1e-6")):
                return False
    return True


def cmd_selfcheck(cfg: RunConfig) -> int:
    p = _bits(cfg.effective_digits)
    p_oracle = _ORACLE_BITS if cfg.digits is None else _bits(cfg.digits)
    checks = [
        ("series coefficient identities", _check_series_identities),
        ("connection trace zero", _check_trace_zero),
        ("fiber list for l = 5", _check_fiber_list),
        ("epsilon integrality", _check_epsilon_integrality),
        ("transformation law residual", lambda: _check_transformation_law(max(p, 128))),
        ("vandermonde determinant identity", lambda: _check_vandermonde(max(p, 128))),
        ("l = 5 oracle cross-check", lambda: _check_oracle_l5(p_oracle)),
    ]
    failures = 0
    for name, check in checks:
        try:
            ok = bool(check())
        except ReglabError as exc:
            ok = False
            print("[fail] {} raised {}: {}".format(name, type(exc).__name__, exc))
            failures += 1
            continue
        print("[{}] {}".format("pass" if ok else "fail", name))
        failures += 0 if ok else 1
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------- entry point

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reglab",
        description="Period integrals and regulator determinants for "
                    "3y^2 + x^3 + (3x + 4t^l)^2 = 0.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    compute = sub.add_parser("compute", help="period table and regulator value")
    compute.add_argument("--l", type=int, required=True)
    compute.add_argument("--digits", type=int, default=None)
    compute.add_argument("--format", choices=("json", "csv", "text"), default="text")
    compute.add_argument("--cache", default=None, metavar="DIR")
    compute.add_argument("--parallelism", type=int, default=None)
    compute.add_argument("--skip-oracle", action="store_true", dest="skip_oracle")

    fibers = sub.add_parser("fibers", help="singular fiber inventory")
    fibers.add_argument("--l", type=int, required=True)

    pf = sub.add_parser("pf", help="Picard-Fuchs operator data")
    pf.add_argument("--l", type=int, required=True)
    pf.add_argument("--m", type=int, default=None)

    oracle = sub.add_parser("oracle", help="quadrature cross-check")
    oracle.add_argument("--l", type=int, required=True)
    oracle.add_argument("--j", type=int, default=None)
    oracle.add_argument("--digits", type=int, default=None)

    selfcheck = sub.add_parser("selfcheck", help="bundled invariant suite")
    selfcheck.add_argument("--digits", type=int, default=None)
    return parser


_DISPATCH = {
    "compute": cmd_compute,
    "fibers": cmd_fibers,
    "pf": cmd_pf,
    "oracle": cmd_oracle,
    "selfcheck": cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        if cfg.subcommand == "compute" and (cfg.l < 5 or math.gcd(cfg.l, 6) != 1):
            raise UnsupportedL(
                "compute requires l >= 5 with gcd(l, 6) = 1 "
                "(the standing assumption on l); got l = {}".format(cfg.l))
        if cfg.subcommand in ("fibers", "pf") and cfg.l < 1:
            raise ValueError("--l must be at least 1")
        if cfg.subcommand == "oracle":
            if math.gcd(cfg.l, 6) != 1 or cfg.l < 5:
                raise UnsupportedL(
                    "oracle requires l >= 5 with gcd(l, 6) = 1; got l = {}".format(cfg.l))
            if cfg.j is not None and not 1 <= cfg.j <= cfg.l - 1:
                raise ValueError("--j must be between 1 and l - 1")
        return _DISPATCH[cfg.subcommand](cfg)
    except (UnsupportedL, ValueError) as exc:
        print("error: {}".format(exc), file=sys.stderr)
        return 2
    except (PrecisionNotReached, QuadratureNotConverged) as exc:
        print("error: {}: {}".format(type(exc).__name__, exc), file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
