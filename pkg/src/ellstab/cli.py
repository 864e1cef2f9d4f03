"""Command-line interface.

Exit codes: 0 on success, 1 on invalid input or violated parameter relations and 2
when a verification suite fails.

"""

import argparse
import logging
import sys

from ellstab import interface
from ellstab.charges import ChargeFamily, ChargeSpec, central_charge, phase
from ellstab.exceptions import (
    ConfigurationError,
    EllstabError,
    KernelClassError,
    PhaseBranchError,
    VerificationError,
)
from ellstab.glaction import verify_commutation, verify_curve
from ellstab.lattice import fiber_divisor
from ellstab.patching import (
    gepner_params,
    patching_residuals,
    solve_beta_series,
    solve_u_exact,
    solve_u_series,
    solve_uv_numeric,
)
from ellstab.pre_processing.config import check_config_and_set_defaults, load_config
from ellstab.series.laurent import V
from ellstab.series.quadratic import as_scalar
from ellstab.transform import phi, phi_hat
from ellstab.walls import (
    boundedness_probe,
    candidate_classes,
    correspondence_check,
    find_walls,
    stability_family,
    weight_curves,
)

LOGGER = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"

SERIES_FAMILIES = (ChargeFamily.LARGE_VOLUME_RAY, ChargeFamily.HYPERBOLA_ZL)


def _add_output_arguments(parser, default=None, verbosity=0):
    parser.add_argument(
        "--config", default=default, help="YAML or JSON configuration file."
    )
    parser.add_argument("--out", default=default, help="Write the result to this file.")
    parser.add_argument("-v", "--verbose", action="count", default=verbosity)


def _add_geometry_arguments(parser):
    parser.add_argument("--e", help="The number -Θ², e.g. 0 or 1/2.")
    parser.add_argument("--m", help="Ampleness threshold m > e; default e + 1.")
    parser.add_argument("--kx-f", dest="kx_f", help="f-coefficient of K_X.")


def _add_family_arguments(parser):
    parser.add_argument("--alpha")
    parser.add_argument("--q")
    parser.add_argument("--l")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ellstab",
        description="Stability conditions on Weierstraß elliptic surfaces.",
    )
    _add_output_arguments(parser)
    # Flags repeated after the subcommand only override when given.
    common = argparse.ArgumentParser(add_help=False)
    _add_output_arguments(common, argparse.SUPPRESS, argparse.SUPPRESS)
    subparsers = parser.add_subparsers(dest="command", required=True)

    def add_command(name, **kwargs):
        return subparsers.add_parser(name, parents=[common], **kwargs)

    transform = add_command("transform", help="Chern character of Φ(E).")
    transform.add_argument("--chern", required=True, help="n,x,y,xi2,s")
    transform.add_argument("--inverse", action="store_true", help="Apply Φ̂ instead.")
    _add_geometry_arguments(transform)

    charge = add_command("charge", help="Central charge and limit phase.")
    charge.add_argument("--chern", required=True)
    charge.add_argument(
        "--family", required=True, choices=[f.value for f in ChargeFamily]
    )
    charge.add_argument("--omega", help="p,q of the polarization pΘ + qf.")
    charge.add_argument("--B", dest="b_field", help="p,q of the B-field, e.g. 0,l.")
    for name in ("a", "b", "beta", "u", "v"):
        charge.add_argument(f"--{name}")
    charge.add_argument(
        "--series",
        action="store_true",
        help="Charge as a series in w = 1/v along the ray or the hyperbola.",
    )
    charge.add_argument("--series-order", type=int, dest="series_order")
    charge.add_argument(
        "--phase", action="store_true", help="Include the phase function."
    )
    _add_geometry_arguments(charge)
    _add_family_arguments(charge)

    solve = add_command("solve", help="Solve the patching relations.")
    solve.add_argument("--v", help="Numeric solution at this v.")
    solve.add_argument("--exact", action="store_true", help="Exact u for rational v.")
    solve.add_argument("--series-order", type=int, dest="series_order")
    solve.add_argument(
        "--gepner", action="store_true", help="Exact solution with ω̄ = ω."
    )
    _add_geometry_arguments(solve)
    _add_family_arguments(solve)

    verify = add_command("verify", help="Run a verification suite.")
    verify.add_argument(
        "--suite", required=True, choices=["commutation", "gepner", "curve"]
    )
    verify.add_argument("--v")
    verify.add_argument("--series-order", type=int, dest="series_order")
    verify.add_argument("--n-random", type=int, default=100, dest="n_random")
    verify.add_argument("--seed", type=int, default=0)
    _add_geometry_arguments(verify)
    _add_family_arguments(verify)

    walls = add_command("walls", help="Numerical walls of a class.")
    _add_wall_arguments(walls)
    walls.add_argument("--csv", help="Also write the wall table as CSV.")
    walls.add_argument(
        "--correspondence",
        action="store_true",
        help="Compare ray and hyperbola walls; the interval is read in v.",
    )
    walls.add_argument(
        "--probe", action="store_true", help="Report the largest wall only."
    )

    gepner = add_command("gepner", help="Exact Gepner parameters.")
    _add_geometry_arguments(gepner)
    _add_family_arguments(gepner)

    plot = add_command("plot-data", help="Weight curves as CSV.")
    _add_wall_arguments(plot)
    return parser


def _add_wall_arguments(parser):
    parser.add_argument("--chern", required=True)
    parser.add_argument("--family", required=True, choices=["ray", "hyperbola"])
    parser.add_argument("--interval", default="1/10,10", help="a,b")
    parser.add_argument("--grid", type=int, default=2000)
    parser.add_argument("--bounds", type=int, default=3)
    _add_geometry_arguments(parser)
    _add_family_arguments(parser)


def _config_from_args(args) -> dict:
    """File configuration overridden by command-line flags, checked and completed."""
    config = load_config(args.config) if args.config else {}
    geometry = dict(config.get("geometry") or {})
    params = dict(config.get("params") or {})
    for key in ("e", "m", "kx_f"):
        if getattr(args, key, None) is not None:
            geometry[key] = getattr(args, key)
    for key in ("alpha", "q", "l", "v"):
        if getattr(args, key, None) is not None:
            params[key] = getattr(args, key)
    if "e" not in geometry:
        geometry["e"] = "0"
    if "m" not in geometry:
        geometry["m"] = as_scalar(geometry["e"]) + 1
    config["geometry"], config["params"] = geometry, params
    if getattr(args, "series_order", None) is not None:
        config["series_order"] = args.series_order
    return check_config_and_set_defaults(config)


def _run_transform(args, config):
    geom = config["geometry"]["surface"]
    gamma = interface.parse_chern(args.chern)
    image = phi_hat(gamma, geom) if args.inverse else phi(gamma, geom)
    return {"mode": "exact", **interface.chern_to_dict(image)}


def _charge_params(args, config):
    family = ChargeFamily(args.family)
    params = config["params"]
    geom = config["geometry"]["surface"]
    if args.series and family not in SERIES_FAMILIES:
        raise ConfigurationError(
            "--series applies to the ray and hyperbola families only."
        )
    if family is ChargeFamily.OMEGA_B:
        if args.omega is None:
            raise ConfigurationError("The omegaB family requires --omega p,q.")
        return {"omega": interface.parse_divisor(args.omega)}
    if family in (ChargeFamily.AB_B, ChargeFamily.AB_B_PRIME):
        return {"a": as_scalar(args.a), "b": as_scalar(args.b)}
    order = config["series_order"]
    if family is ChargeFamily.LARGE_VOLUME_RAY:
        if args.series:
            beta = solve_beta_series(geom.m, params["alpha"], geom.e, order)
            return {"alpha": params["alpha"], "beta": beta}
        return {"alpha": params["alpha"], "beta": as_scalar(args.beta)}
    if args.series:
        return {"u": solve_u_series(geom.m, params["alpha"], geom.e, order), "v": V}
    if "v" not in params:
        raise ConfigurationError("The hyperbola family requires --v.")
    if args.u is not None:
        return {"u": as_scalar(args.u), "v": params["v"]}
    u, _ = solve_uv_numeric(geom.m, params["alpha"], geom.e, float(params["v"]))
    return {"u": u, "v": float(params["v"])}


def _run_charge(args, config):
    geom = config["geometry"]["surface"]
    family = ChargeFamily(args.family)
    if args.b_field is not None:
        b_field = interface.parse_divisor(args.b_field)
    elif family is ChargeFamily.LARGE_VOLUME_RAY:
        b_field = fiber_divisor(config["params"]["l"])
    else:
        b_field = fiber_divisor(config["params"]["q"])
    spec = ChargeSpec(family, _charge_params(args, config), b_field, geom)
    gamma = interface.parse_chern(args.chern)
    value = central_charge(gamma, spec)
    try:
        phase_function = phase(gamma, spec)
    except (KernelClassError, PhaseBranchError) as error:
        LOGGER.warning("No phase in the branch %s: %s", spec.phase_branch, error)
        phase_function = None
    result = {
        "mode": interface.mode_of(value),
        "re": value.re,
        "im": value.im,
        "phase_limit": None if phase_function is None else phase_function.limit_value,
    }
    if args.phase:
        result["phase"] = phase_function
    return result


def _run_solve(args, config):
    geom = config["geometry"]["surface"]
    params = config["params"]
    m, alpha, e = geom.m, params["alpha"], geom.e
    lq = {"l": params["l"], "q": params["q"]}
    if args.gepner:
        u, beta, v = gepner_params(m, alpha, e)
        residuals = patching_residuals(m, alpha, e, u, v, beta, **lq)
        return {"mode": "exact", "u": u, "beta": beta, "v": v, "residuals": residuals}
    if "v" in params and args.exact:
        v = params["v"]
        u, beta_squared = solve_u_exact(m, alpha, e, v)
        residuals = patching_residuals(
            m, alpha, e, u, v, beta_squared=beta_squared, **lq
        )
        return {
            "mode": "exact",
            "u": u,
            "beta_squared": beta_squared,
            "v": v,
            "residuals": residuals,
        }
    if "v" in params:
        v = float(params["v"])
        u, beta = solve_uv_numeric(m, alpha, e, v)
        residuals = patching_residuals(
            float(m), float(alpha), float(e), u, v, beta, float(lq["l"]), float(lq["q"])
        )
        return {"mode": "float", "u": u, "beta": beta, "v": v, "residuals": residuals}
    order = config["series_order"]
    u = solve_u_series(m, alpha, e, order)
    beta = solve_beta_series(m, alpha, e, order)
    return {
        "mode": "exact",
        "series_order": order,
        "u": u,
        "beta": beta,
        "v": V,
        "residuals": patching_residuals(m, alpha, e, u, V, beta, **lq),
    }


def _run_verify(args, config):
    geom = config["geometry"]["surface"]
    params = config["params"]
    if args.suite == "curve":
        report = verify_curve(n_random=max(args.n_random, 1), seed=args.seed)
    else:
        if args.suite == "gepner":
            mode = "gepner"
        else:
            mode = "numeric" if "v" in params else "series"
        report = verify_commutation(
            geom.m,
            params["alpha"],
            geom.e,
            params["q"],
            mode=mode,
            v=params.get("v"),
            order=config["series_order"],
            l=params["l"],
            n_random=args.n_random,
            seed=args.seed,
        )
    return report


def _family_from_args(args, config, interval=None):
    params = config["params"]
    return stability_family(
        args.family,
        config["geometry"]["surface"],
        params["alpha"],
        q=params["q"],
        interval=(
            interface.parse_interval(args.interval) if interval is None else interval
        ),
    )


def _run_walls(args, config):
    gamma = interface.parse_chern(args.chern)
    family = _family_from_args(args, config)
    metadata = {"grid_size": args.grid, "bounds": args.bounds}
    if args.correspondence:
        params = config["params"]
        return correspondence_check(
            gamma,
            family.geom,
            params["alpha"],
            params["q"],
            family.interval,
            grid_size=args.grid,
            bounds=args.bounds,
        )
    if args.probe:
        low, high = family.interval
        return boundedness_probe(gamma, family, low, high, args.grid, args.bounds)
    candidates = candidate_classes(gamma, family, args.bounds)
    walls = find_walls(gamma, family, candidates, grid_size=args.grid)
    metadata["n_candidates"] = len(candidates)
    if args.csv:
        interface.write_csv(interface.walls_to_frame(walls), args.csv)
    return interface.walls_report(family, walls, metadata)


def _run_gepner(args, config):
    geom = config["geometry"]["surface"]
    u, beta, v = gepner_params(geom.m, config["params"]["alpha"], geom.e)
    return {"mode": "exact", "u": u, "beta": beta, "v": v}


def _run_plot_data(args, config):
    gamma = interface.parse_chern(args.chern)
    family = _family_from_args(args, config)
    candidates = candidate_classes(gamma, family, args.bounds)
    return weight_curves(gamma, family, candidates, grid_size=args.grid)


COMMANDS = {
    "transform": _run_transform,
    "charge": _run_charge,
    "solve": _run_solve,
    "verify": _run_verify,
    "walls": _run_walls,
    "gepner": _run_gepner,
    "plot-data": _run_plot_data,
}


def _emit(result, out):
    if hasattr(result, "to_csv"):
        if out:
            interface.write_csv(result, out)
        else:
            result.to_csv(sys.stdout, index=False, float_format="%.12g")
        return
    if out:
        interface.write_json(result, out)
    else:
        print(interface.dumps(result))


def run(argv) -> int:
    """Parse ``argv``, run the subcommand and return the exit code."""
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    try:
        config = _config_from_args(args)
        result = COMMANDS[args.command](args, config)
    except VerificationError as error:
        LOGGER.error("Verification failed: %s", error)
        print(str(error), file=sys.stderr)
        return 2
    except (EllstabError, ValueError, TypeError, ArithmeticError) as error:
        LOGGER.error("%s", error)
        print(f"error: {error}", file=sys.stderr)
        return 1
    _emit(result, args.out)
    if isinstance(result, dict) and result.get("pass") is False:
        LOGGER.error("Verification failed.")
        return 2
    return 0


def cli(argv=None) -> int:
    """Console-script entry point."""
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(cli())
