import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, ok, secs, detail in sorted(RESULTS):
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({secs:.2f}s)"
        terminalreporter.write_line(line + (f"  {detail}" if detail else ""))
