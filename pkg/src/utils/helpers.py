import logging
import os
import sys
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence, Sized, TypeVar

from tqdm import tqdm

from models.types import MAX_ORDER


T = TypeVar("T")
R = TypeVar("R")

CORPUS_DIR_ENV = "CRDECK_CORPUS_DIR"
LOG_LEVEL_ENV = "CRDECK_LOG_LEVEL"

_progress_enabled = True


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    global _progress_enabled
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.ERROR
    else:
        level = getattr(logging, os.environ.get(LOG_LEVEL_ENV, "WARNING").upper(), logging.WARNING)
    logging.basicConfig(level=level, format="[%(levelname)s] %(message)s", stream=sys.stderr, force=True)
    _progress_enabled = not quiet


def corpus_cache_dir() -> Path:
    """Corpus cache directory, overridable through CRDECK_CORPUS_DIR."""
    configured = os.environ.get(CORPUS_DIR_ENV)
    if configured:
        return Path(configured).expanduser()
    return Path.home() / ".cache" / "crdeck"


def default_jobs() -> int:
    return os.cpu_count() or 1


def progress(items: Iterable[T], total: Optional[int] = None, desc: str = "") -> Iterable[T]:
    """Progress bar on a terminal, plain iteration otherwise."""
    if not _progress_enabled or not sys.stderr.isatty():
        return items
    return tqdm(items, total=total, desc=desc, leave=False)


def parallel_map(func: Callable[[T], R], items: Sequence[T], jobs: int = 1, desc: str = "") -> list[R]:
    """
    Map `func` over `items`, in input order.

    `func` must be a module-level function so worker processes can import it.
    """
    if jobs <= 1 or len(items) < 2:
        return list(progress(map(func, items), total=len(items), desc=desc))
    chunksize = max(1, len(items) // (jobs * 8))
    with Pool(processes=jobs) as pool:
        return list(progress(pool.imap(func, items, chunksize=chunksize), total=len(items), desc=desc))


def validate_order(n: Optional[int], minimum: int = 1, maximum: int = MAX_ORDER) -> tuple[bool, Optional[str]]:

    if n is None:
        return False, "The order --n is required"

    if n < minimum or n > maximum:
        return False, f"The order must be between {minimum} and {maximum}"

    return True, None


def validate_depth(depth: Optional[int]) -> tuple[bool, Optional[str]]:

    if depth is None:
        return False, "The depth is required"

    if depth < 0:
        return False, "The depth must be non-negative"

    return True, None


def validate_positive(value: int, name: str) -> tuple[bool, Optional[str]]:
    if value <= 0:
        return False, f"{name} must be positive"
    return True, None


def validate_graph_count(graphs: Sized, expected: int) -> tuple[bool, Optional[str]]:

    if len(graphs) != expected:
        noun = "graph" if expected == 1 else "graphs"
        return False, f"Expected {expected} {noun}, got {len(graphs)}"

    return True, None
