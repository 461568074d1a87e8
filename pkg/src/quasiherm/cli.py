"""Command-line front end: hermitize, model, scan, compat."""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .dyson import (
    DysonMap,
    build_report,
    hermitian_avatar,
    hermitize,
    metric_from_theta,
    solve_schrodinger_pair,
)
from .errors import (
    ComplexSpectrum,
    DefectiveMatrix,
    ModelDomainError,
    QuasihermError,
)
from .linalg import Tolerances
from .matfile import (
    MatrixFileError,
    compat_document,
    emit_json,
    load_matrix_file,
    report_document,
    write_matrix_file,
)
from .models import (
    FermionicParams,
    dimer_build,
    dimer_from_coupling,
    dimer_params,
    ep_scan,
    fermionic_build,
)
from .observables import shared_metric

__all__ = ["main"]


def _add_tol_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--tol-residual", type=float, default=1e-10, metavar="X",
                     help="relative residual tolerance (default 1e-10)")
    sub.add_argument("--tol-reality", type=float, default=1e-9, metavar="X",
                     help="relative eigenvalue reality tolerance (default 1e-9)")
    sub.add_argument("--tol-positivity", type=float, default=1e-12, metavar="X",
                     help="relative positivity threshold (default 1e-12)")


def _tolerances(args: argparse.Namespace) -> Tolerances:
    return Tolerances(
        residual_rel=args.tol_residual,
        reality_rel=args.tol_reality,
        positivity_rel=args.tol_positivity,
    )


def _parse_k_diag(text: str) -> np.ndarray:
    entries = [complex(part.strip().replace(" ", "")) for part in text.split(",") if part.strip()]
    if not entries:
        raise ValueError("--k-diag needs at least one entry")
    return np.asarray(entries, dtype=np.complex128)


def cmd_hermitize(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    h = load_matrix_file(args.input)
    k = _parse_k_diag(args.k_diag) if args.k_diag else None
    _system, _dmap, metric, avatar, report = hermitize(
        h, k_diag=k, hermitian_map=args.hermitian_omega, tol=tol
    )
    print(emit_json(report_document(report, metric, avatar, tol)))
    return 0 if report.passed else 1


def cmd_model(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    if args.name == "dimer":
        if args.kappa is not None or args.gamma is not None:
            if args.kappa is None or args.gamma is None:
                raise ValueError("dimer needs both --kappa and --gamma")
            if args.omega is not None or args.alpha is not None:
                raise ValueError("give either --omega/--alpha or --kappa/--gamma, not both")
            p = dimer_from_coupling(args.kappa, args.gamma)
        else:
            if args.omega is None or args.alpha is None:
                raise ValueError("dimer needs --omega and --alpha (or --kappa and --gamma)")
            p = dimer_params(args.omega, args.alpha)
        h_small, omega_map, big_h, theta = dimer_build(p)
        omega_inv = np.linalg.inv(omega_map)
        family = "dimer"
    else:
        if args.alpha is None or args.beta is None or args.omega is None:
            raise ValueError("fermion needs --alpha, --beta and --omega")
        p = FermionicParams(alpha=args.alpha, beta=args.beta, omega=args.omega)
        big_h, h_small, omega_inv, omega_map, theta = fermionic_build(p)
        family = "fermion"

    dmap = DysonMap(omega=omega_map, omega_inv=omega_inv, family=family)
    system = solve_schrodinger_pair(big_h, tol)
    metric = metric_from_theta(theta, tol)
    avatar = hermitian_avatar(big_h, dmap, tol)
    report = build_report(big_h, system, dmap, metric, avatar, tol)

    os.makedirs(args.out_dir, exist_ok=True)
    write_matrix_file(os.path.join(args.out_dir, "hamiltonian.json"), big_h)
    write_matrix_file(os.path.join(args.out_dir, "avatar.json"), h_small)
    write_matrix_file(os.path.join(args.out_dir, "omega.json"), omega_map)
    write_matrix_file(os.path.join(args.out_dir, "theta.json"), theta)
    doc = emit_json(report_document(report, metric, avatar, tol))
    with open(os.path.join(args.out_dir, "report.json"), "w", encoding="utf-8") as fh:
        fh.write(doc)
        fh.write("\n")
    print(doc)
    return 0 if report.passed else 1


def cmd_scan(args: argparse.Namespace) -> int:
    if args.step <= 0:
        raise ValueError("--step must be positive")
    if args.gamma_max < args.gamma_min:
        raise ValueError("--gamma-max must be at least --gamma-min")
    if args.kappa <= 0:
        raise ValueError("--kappa must be positive")
    count = int(np.floor((args.gamma_max - args.gamma_min) / args.step + 1e-9)) + 1
    grid = args.gamma_min + np.arange(count) * args.step
    report = ep_scan(args.kappa, grid)
    lines = ["gamma,min_gap,eigvec_cond,is_ep"]
    for g, gap, cond, flag in zip(
        report.parameter_grid, report.min_gap, report.eigvec_cond, report.is_ep
    ):
        lines.append(
            f"{format(g, '.17g')},{format(gap, '.17g')},{format(cond, '.17g')},"
            f"{'true' if flag else 'false'}"
        )
    print("\n".join(lines))
    return 0


def cmd_compat(args: argparse.Namespace) -> int:
    tol = _tolerances(args)
    h1 = load_matrix_file(args.h1)
    h2 = load_matrix_file(args.h2)
    if h1.shape != h2.shape:
        raise MatrixFileError("the two matrices must have the same dimension")
    result = shared_metric(h1, h2, tol=tol, seed=args.seed)
    print(emit_json(compat_document(result, h1, h2, tol)))
    if result.status == "Found":
        return 0
    if result.status == "NoSharedMetric":
        return 7
    return 8


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasiherm",
        description="Dyson maps, physical metrics, and Hermitian avatars "
        "for quasi-Hermitian Hamiltonians.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_herm = subs.add_parser("hermitize", help="construct a Dyson map and metric for H")
    p_herm.add_argument("input", help="MatrixFile holding H")
    p_herm.add_argument("--k-diag", default=None, metavar="K1,K2,...",
                        help="comma separated complex entries of the diagonal K")
    p_herm.add_argument("--hermitian-omega", action="store_true",
                        help="rotate by the polar unitary so the map is Hermitian")
    _add_tol_flags(p_herm)
    p_herm.set_defaults(func=cmd_hermitize)

    p_model = subs.add_parser("model", help="emit the matrices of a worked model")
    p_model.add_argument("name", choices=("dimer", "fermion"))
    p_model.add_argument("--omega", type=float, default=None)
    p_model.add_argument("--alpha", type=float, default=None)
    p_model.add_argument("--beta", type=float, default=None)
    p_model.add_argument("--kappa", type=float, default=None)
    p_model.add_argument("--gamma", type=float, default=None)
    p_model.add_argument("--out-dir", default=".", metavar="DIR",
                         help="directory for the emitted MatrixFiles (default .)")
    _add_tol_flags(p_model)
    p_model.set_defaults(func=cmd_model)

    p_scan = subs.add_parser("scan", help="scan the dimer gain/loss axis for exceptional points")
    p_scan.add_argument("--kappa", type=float, required=True)
    p_scan.add_argument("--gamma-min", type=float, required=True)
    p_scan.add_argument("--gamma-max", type=float, required=True)
    p_scan.add_argument("--step", type=float, required=True)
    p_scan.set_defaults(func=cmd_scan)

    p_compat = subs.add_parser("compat", help="search for a metric shared by two Hamiltonians")
    p_compat.add_argument("h1", help="MatrixFile holding the first Hamiltonian")
    p_compat.add_argument("h2", help="MatrixFile holding the second Hamiltonian")
    p_compat.add_argument("--seed", type=int, default=0,
                          help="seed for the randomized positivity search (default 0)")
    _add_tol_flags(p_compat)
    p_compat.set_defaults(func=cmd_compat)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (MatrixFileError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComplexSpectrum as exc:
        print(f"ComplexSpectrum: {exc}", file=sys.stderr)
        return 3
    except DefectiveMatrix as exc:
        print(f"DefectiveMatrix: {exc}", file=sys.stderr)
        return 4
    except ModelDomainError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 6
    except QuasihermError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
