import os
from pathlib import Path
from typing import Union

from twobridge.errors import ReportIOError

PathLike = Union[str, Path]


def read_text(path: PathLike) -> str:
    """
    Read a UTF-8 text file.
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ReportIOError(f"Failed to read {path}: {e}") from e


def atomic_write_text(path: PathLike, text: str) -> None:
    """
    Write text next to the target, fsync it, then move it into place, so a
    reader never sees a half-written report.
    """
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    try:
        with tmp.open("w", encoding="utf-8", newline="\n") as f:
            f.write(text)
            f.flush()
            os.fsync(f.fileno())
        os.replace(str(tmp), str(path))
    except OSError as e:
        try:
            tmp.unlink()
        except OSError:
            pass
        raise ReportIOError(f"Failed to write {path}: {e}") from e
