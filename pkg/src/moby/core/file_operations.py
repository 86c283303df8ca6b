"""File operation utilities for writing artifacts atomically."""

import os
import pathlib
import tempfile
import logging

from moby.core.exceptions import RepositoryError

logger = logging.getLogger(__name__)


class FileOperationError(RepositoryError):
    """Raised when a file operation fails."""

    pass


def get_sidecar_path(file_path: pathlib.Path, suffix: str = ".dot") -> pathlib.Path:
    """
    Get the sidecar path for a given artifact.

    Args:
        file_path: Path to the main file
        suffix: Extension of the sidecar

    Returns:
        Path to the sidecar ("mode_1.machine.json" -> "mode_1.machine.dot")
    """
    return file_path.with_suffix(suffix)


def atomic_write_text(
    target: pathlib.Path, content: str, create_dirs: bool = True
) -> None:
    """
    Write text to a file so readers never observe a partial artifact.

    The content goes to a temporary file in the target directory which then
    replaces the target.

    Args:
        target: Target file path
        content: Text to write (UTF-8)
        create_dirs: Whether to create target directories

    Raises:
        FileOperationError: If the operation fails
    """
    if create_dirs:
        target.parent.mkdir(parents=True, exist_ok=True)

    tmp_name = None
    try:
        with tempfile.NamedTemporaryFile(
            "w",
            encoding="utf-8",
            dir=target.parent,
            prefix=f".{target.name}.",
            suffix=".tmp",
            delete=False,
        ) as handle:
            tmp_name = handle.name
            handle.write(content)
        os.replace(tmp_name, target)
        logger.debug(f"Wrote {target}")
    except Exception as e:
        if tmp_name and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise FileOperationError(f"Failed to write {target}: {e}") from e
