import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))
sys.path.insert(0, str(HERE / "oracle_scripts"))

# filled by test_acceptance.py: criterion -> (passed, detail)
ACCEPTANCE = {}
SCAN_LOG = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE and not SCAN_LOG:
        return
    tr = terminalreporter
    if SCAN_LOG:
        tr.section("negative-eigenvalue scan (criterion 11)")
        for line in SCAN_LOG:
            tr.write_line(line)
    if ACCEPTANCE:
        tr.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            ok, detail = ACCEPTANCE[key]
            tr.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key:>2}: {detail}")
