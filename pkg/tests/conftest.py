import json

import pytest


def write_jsonl(path, records):
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path


@pytest.fixture
def minimal_files(tmp_path):
    """One original with one paragraph citing candidate c1."""
    orig = write_jsonl(
        tmp_path / "originals.jsonl",
        [
            {
                "doc_id": "d1",
                "title": "Citing paper",
                "abstract": "About citation recommendation.",
                "year": 2015,
                "field": "recommender-systems",
                "paragraphs": [
                    {
                        "paragraph_id": "d1-p0",
                        "text": "Earlier work recommended citations with topic models.",
                        "term_function": "problem",
                        "cited_refs": ["c1"],
                    }
                ],
            }
        ],
    )
    cand = write_jsonl(
        tmp_path / "candidates.jsonl",
        [{"cand_id": "c1", "title": "Topic models for citation", "abstract": "We cite.", "year": 2009}],
    )
    return orig, cand


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py" in nodeid and getattr(rep, "when", "call") == "call":
                lines.append((nodeid.split("::")[-1], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {name}")
