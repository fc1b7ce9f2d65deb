import sys
from typing import Optional, TextIO


def format_elapsed(seconds: float) -> str:
    """
    Format a duration in human readable form.

    Args:
        seconds: Duration in seconds

    Returns:
        Formatted duration string
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f} ms"
    if seconds < 60:
        return f"{seconds:.2f} s"
    minutes = int(seconds // 60)
    return f"{minutes} min {seconds - 60 * minutes:.0f} s"


def create_progress_bar(current: int, total: int, prefix: str = "") -> str:
    """
    Create a text-based progress bar.

    Args:
        current: Current progress
        total: Total items
        prefix: Prefix text

    Returns:
        Progress bar string
    """
    percentage = int((current / total) * 100) if total > 0 else 0
    bar_length = 30
    filled_length = int(bar_length * current // total) if total > 0 else 0

    bar = "#" * filled_length + "-" * (bar_length - filled_length)
    return f"{prefix} |{bar}| {percentage}% ({current}/{total})"


def _emit(marker: str, message: str, details: Optional[str], stream: TextIO) -> None:
    print(f"{marker} {message}", file=stream)
    if details:
        for line in details.splitlines():
            print(f"    {line}", file=stream)


def display_success_message(message: str, details: Optional[str] = None, stream: TextIO = None):
    """
    Print a formatted success line.

    Args:
        message: Main success message
        details: Optional details, indented below
    """
    _emit("[ok]", message, details, stream or sys.stdout)


def display_error_message(message: str, details: Optional[str] = None, stream: TextIO = None):
    """
    Print a formatted error line (to stderr by default).

    Args:
        message: Main error message
        details: Optional error details
    """
    _emit("[error]", message, details, stream or sys.stderr)


def display_warning_message(message: str, details: Optional[str] = None, stream: TextIO = None):
    _emit("[undecided]", message, details, stream or sys.stdout)


class ProgressTracker:
    """Helper class to track progress across a batch of problem files."""

    def __init__(self, total_steps: int, description: str = "Processing", stream: TextIO = None):
        self.total_steps = total_steps
        self.current_step = 0
        self.description = description
        self.stream = stream or sys.stderr
        self.enabled = total_steps > 1

    def update(self, step_description: str = None):
        """Update progress by one step."""
        self.current_step += 1
        if not self.enabled:
            return
        label = step_description or f"Step {self.current_step}/{self.total_steps}"
        bar = create_progress_bar(self.current_step, self.total_steps, self.description)
        print(f"{bar} {label}", file=self.stream)

    def complete(self, final_message: str = "Complete!"):
        if self.enabled:
            print(f"{self.description}: {final_message}", file=self.stream)
