"""The ``core.utils`` module contains functions that are used across the scheduler, but
which don't have a natural home in a specific module.
"""  # noqa: D205, D415

import hashlib
from collections.abc import Iterable
from pathlib import Path

from feeder_scheduler.core.exceptions import ConfigurationError, InputError
from feeder_scheduler.core.logger import LOGGER


def check_outfile(out_file_path: Path) -> None:
    """Check that an output file is not already in the output folder.

    Args:
        out_file_path: Path to save an output file to (i.e. folder location + file
            name)

    Raises:
        ConfigurationError: If the output folder is invalid or the output file already
            exists.
    """

    parent_fold = out_file_path.parent
    out_file_name = out_file_path.name

    if not parent_fold.exists():
        to_raise = ConfigurationError(
            f"The user specified output directory ({parent_fold}) doesn't exist!"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    elif not parent_fold.is_dir():
        to_raise = ConfigurationError(
            f"The user specified output folder ({parent_fold}) isn't a directory!"
        )
        LOGGER.critical(to_raise)
        raise to_raise

    if out_file_path.exists():
        to_raise = ConfigurationError(
            f"A file in the user specified output folder ({parent_fold}) already "
            f"makes use of the specified output file name ({out_file_name}), this "
            f"file should either be renamed or deleted!"
        )
        LOGGER.critical(to_raise)
        raise to_raise


def input_digest(paths: Iterable[Path], extra: Iterable[bytes] = ()) -> str:
    """Compute a digest identifying a set of input files.

    Folders contribute the files they contain in name order, so that two runs reading
    the same case, prices and profiles produce the same digest wherever the files are
    stored.

    Args:
        paths: Input files or folders.
        extra: Further byte strings folded into the digest after the files, such as
            the synthesised profiles and the settings that produced them.

    Raises:
        InputError: If a path does not exist.
    """

    digest = hashlib.sha256()

    for path in paths:
        if path.is_dir():
            members = sorted(p for p in path.iterdir() if p.is_file())
        elif path.is_file():
            members = [path]
        else:
            to_raise = InputError(f"Input path not found: {path}")
            LOGGER.critical(to_raise)
            raise to_raise

        for member in members:
            digest.update(member.name.encode())
            digest.update(member.read_bytes())

    for chunk in extra:
        digest.update(chunk)

    return digest.hexdigest()
