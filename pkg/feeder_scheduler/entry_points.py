"""The :mod:`~feeder_scheduler.entry_points` module defines the command line entry
point to the feeder_scheduler package. The ``feeder_scheduler`` command has two
subcommands: ``run`` schedules a single day and ``compare`` runs two configurations on
the same inputs and tabulates the differences.
"""  # noqa D210, D415

import argparse
import sys
import textwrap
from collections.abc import Sequence
from pathlib import Path
from shutil import copytree, ignore_patterns
from typing import Any

import feeder_scheduler as fs
from feeder_scheduler import example_data_path
from feeder_scheduler.core.config import config_merge
from feeder_scheduler.core.exceptions import (
    AccountingError,
    ConfigurationError,
    ConsistencyError,
    DivergenceError,
    EvaluationError,
    InputError,
)
from feeder_scheduler.core.logger import LOGGER
from feeder_scheduler.main import fs_compare, fs_run

if sys.version_info[:2] >= (3, 11):
    import tomllib
    from tomllib import TOMLDecodeError
else:
    import tomli as tomllib
    from tomli import TOMLDecodeError

EXIT_CODES: tuple[tuple[type[Exception], int], ...] = (
    (DivergenceError, 2),
    (AccountingError, 3),
    (ConfigurationError, 1),
    (InputError, 1),
    (EvaluationError, 1),
    (ConsistencyError, 1),
    (ValueError, 1),
)
"""The exit status returned for each failure of a run."""


def _parse_param_str(s: str) -> dict[str, Any]:
    """Parse a single parameter string into a dict.

    For example: optimizer.constants.OptimizerConsts.generations=50

    Raises:
        ConfigurationError: If the command-line parameters are not valid TOML
    """
    try:
        return tomllib.loads(s)
    except TOMLDecodeError:
        to_raise = ConfigurationError("Invalid format for command-line parameters")
        LOGGER.critical(to_raise)
        raise to_raise


def _parse_command_line_params(
    params_str: Sequence[str], override_params: dict[str, Any]
) -> dict[str, Any]:
    """Parse extra parameters provided with command-line arguments.

    Args:
        params_str: Extra parameters in string format (e.g. my.parameter=0.2)
        override_params: Dictionary of parameters to be extended

    Returns:
        The extended parameter dictionary.

    Raises:
        ConfigurationError: Invalid format for parameters or conflicting values supplied
    """
    conflicts: tuple = ()
    for param_str in params_str:
        param_dict = _parse_param_str(param_str)
        override_params, conflicts = config_merge(
            override_params, param_dict, conflicts
        )

    if conflicts:
        to_raise = ConfigurationError(
            "Conflicting values supplied for command-line arguments"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    return override_params


def _flag_overrides(args: argparse.Namespace) -> dict[str, Any]:
    """Translate the run flags into configuration overrides."""

    core: dict[str, Any] = {}
    data = {
        key: str(Path(value).absolute())
        for key, value in (
            ("case", args.case),
            ("prices", args.prices),
            ("profiles", args.profiles),
        )
        if value is not None
    }
    if data:
        core["data"] = data
    if args.seed is not None:
        core["seed"] = args.seed
    if args.out is not None:
        core["data_output_options"] = {"out_path": args.out}

    override_params: dict[str, Any] = {"core": core} if core else {}
    if args.strategy is not None:
        override_params["dms"] = {"strategy": args.strategy}
    if args.k is not None:
        override_params["uncertainty"] = {"k": args.k}
    if args.no_reverse_constraint:
        override_params["optimizer"] = {"reverse_constraint": False}

    if args.params:
        override_params = _parse_command_line_params(args.params, override_params)

    return override_params


def install_example_directory(install_dir: Path) -> int:
    """Install the example directory to a location.

    This function installs the example case, price and profile files and the example
    configuration provided within the package to a selected location, in a
    ``fs_example`` directory.

    Args:
        install_dir: the installation path.

    Returns:
        An integer indicating success (0) or failure (1).
    """
    if not install_dir.is_dir():
        sys.stderr.write("--install-example path is not a valid directory.\n")
        return 1

    example_dir = install_dir / "fs_example"
    if example_dir.exists():
        sys.stderr.write(f"Example directory already present in: {install_dir} \n")
        return 1

    copytree(example_data_path, example_dir, ignore=ignore_patterns("__*"))

    print(f"Example directory created at:\n{example_dir}")
    return 0


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    """Add the flags shared by the subcommands."""

    parser.add_argument("--case", type=Path, help="Path to the network case file")
    parser.add_argument(
        "--prices", type=Path, help="Path to the day-ahead price file"
    )
    parser.add_argument(
        "--profiles", type=Path, help="Folder holding the historical profiles"
    )
    parser.add_argument("--seed", type=int, help="Seed for every random generator")
    parser.add_argument("--out", type=str, help="Path for output files")
    parser.add_argument(
        "--strategy",
        choices=("mpas", "fixed-window"),
        help="The battery scheduling strategy",
    )
    parser.add_argument(
        "--no-reverse-constraint",
        action="store_true",
        help="Do not penalise reverse power flow at the substation",
        dest="no_reverse_constraint",
    )
    parser.add_argument(
        "--k", type=float, help="Spread coefficient of the uncertainty bounds"
    )
    parser.add_argument(
        "-p",
        "--param",
        type=str,
        action="append",
        help="Value for additional parameter (in the form parameter.name=something)",
        dest="params",
    )
    parser.add_argument(
        "--logfile",
        type=Path,
        help="A file path to use for logging the run",
        default=None,
    )
    parser.add_argument(
        "--progress",
        action="store_true",
        help="A flag to turn on simple progress reporting",
    )


def _exit_code(excep: Exception) -> int | None:
    for error_class, code in EXIT_CODES:
        if isinstance(excep, error_class):
            return code
    return None


def feeder_scheduler_cli(args_list: list[str] | None = None) -> int:
    """Configure and run a day-ahead feeder scheduling run.

    The ``run`` subcommand schedules the batteries and microturbines of a radial
    distribution feeder for one day. Inputs are a network case file, a day-ahead price
    file and a folder of historical SPV, WT and load profiles, given as flags or in
    TOML configuration files passed with ``--config``. Without inputs, the example data
    bundled with the package is used.

    The ``compare`` subcommand runs two configurations, which must share the same case,
    prices and profiles, and writes a comparison of the two day reports.

    The `--install-example` option copies the example case, prices, profiles and
    configuration to a ``fs_example`` directory in the given location.

    Each run writes the effective configuration, ``schedule.csv``, ``series.csv``,
    ``report.json`` and ``report.txt`` to the output path and prints the daily profit.

    Exit codes: 0 on success, 1 for configuration and input errors, 2 when a power flow
    does not converge and 3 when the day report does not balance.

    Args:
        args_list: This is a developer and testing facing argument that is used to
            simulate command line arguments, allowing this function to be called
            directly. For example, ``feeder_scheduler run --seed 3`` can be replicated
            by calling ``feeder_scheduler_cli(['run', '--seed', '3'])``.

    Returns:
        An integer exit status.
    """

    if args_list is None:
        args_list = sys.argv[1:]

    # Strip the description of args_list, which is not part of the command line docs
    if feeder_scheduler_cli.__doc__ is not None:
        desc = textwrap.dedent(
            "\n".join(feeder_scheduler_cli.__doc__.splitlines()[:-10])
        )
    else:
        desc = "Python in -OO mode: no docs"

    fmt = argparse.RawDescriptionHelpFormatter
    parser = argparse.ArgumentParser(
        prog="feeder_scheduler", description=desc, formatter_class=fmt
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {fs.__version__}",
    )
    parser.add_argument(
        "--install-example",
        type=Path,
        help="Install the example data to the given location",
        dest="install_example",
    )

    subparsers = parser.add_subparsers(dest="command")

    run_parser = subparsers.add_parser("run", help="Schedule a single day")
    run_parser.add_argument(
        "--config",
        type=Path,
        action="append",
        help="Path to a config file or a folder of config files",
        dest="config",
        default=[],
    )
    _add_run_flags(run_parser)

    compare_parser = subparsers.add_parser(
        "compare", help="Compare the schedules of two configurations"
    )
    compare_parser.add_argument(
        "config_a", type=Path, help="Config file or folder of the first run"
    )
    compare_parser.add_argument(
        "config_b", type=Path, help="Config file or folder of the second run"
    )
    _add_run_flags(compare_parser)

    args = parser.parse_args(args=args_list)

    if args.install_example:
        if args.command is not None:
            sys.stderr.write(
                "--install-example cannot be used in combination with a subcommand.\n"
            )
            return 1
        return install_example_directory(args.install_example)

    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1

    try:
        override_params = _flag_overrides(args)

        if args.command == "run":
            report = fs_run(
                cfg_paths=args.config,
                override_params=override_params,
                logfile=args.logfile,
                progress=args.progress,
            )
            print(f"Daily profit ({report.strategy}): {report.dpf:.2f} $")
        else:
            comparison = fs_compare(
                args.config_a,
                args.config_b,
                override_params=override_params,
                logfile=args.logfile,
                progress=args.progress,
            )
            print(comparison.to_text(), end="")

    except Exception as excep:
        code = _exit_code(excep)
        if code is None:
            raise
        sys.stderr.write(f"{type(excep).__name__}: {excep}\n")
        return code

    return 0
