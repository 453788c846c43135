"""Progress tracking utilities.

This module shows a transient Rich progress bar on stderr while long runs
(covariance trials, independence sampling) are in flight. stdout is left
alone so machine-readable reports stay byte-identical.
"""

from typing import Optional, Any
from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn

console = Console(stderr=True)


class ProgressManager:
    """Manages progress indicators for long-running checks.

    Example:
        >>> with ProgressManager() as progress:
        ...     task = progress.add_task("Covariance trials", total=50)
        ...     for _ in range(50):
        ...         run_trial()
        ...         progress.advance(task)
    """

    def __init__(self, enabled: bool = True, target: Optional[Console] = None):
        """Initialize the progress manager.

        Args:
            enabled: When False every method is a no-op (used for quiet runs)
            target: Console to draw on; defaults to the shared stderr console
        """
        self.enabled = enabled
        self.progress = Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            console=target or console,
            transient=True,
        )

    def __enter__(self) -> 'ProgressManager':
        if self.enabled:
            self.progress.start()
        return self

    def __exit__(self, exc_type: Optional[type],
                 exc_val: Optional[Exception],
                 exc_tb: Optional[Any]) -> None:
        if self.enabled:
            self.progress.stop()

    def add_task(self, description: str, total: Optional[float] = None) -> int:
        """Add a task.

        Args:
            description: Task description to display
            total: Optional total steps (None for indefinite)

        Returns:
            int: Task ID
        """
        return self.progress.add_task(description, total=total)

    def advance(self, task_id: int, steps: float = 1) -> None:
        self.progress.advance(task_id, steps)

    def callback(self, task_id: int):
        """Zero-argument callable that advances ``task_id`` by one step."""
        return lambda: self.advance(task_id)
