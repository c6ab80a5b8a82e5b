"""Shared record of acceptance-criterion outcomes, printed in the terminal summary."""

RESULTS: list[tuple[int, str, bool, float, str]] = []
