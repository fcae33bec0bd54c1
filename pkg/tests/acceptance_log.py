"""Collects one status line per acceptance criterion for the run summary."""

LINES: list[str] = []


def record(line: str) -> None:
    LINES.append(line)
    print(line, flush=True)
