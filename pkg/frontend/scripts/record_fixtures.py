"""Record real service responses for the frontend walkthrough test.

Drives the session API through the two-step assertion walkthrough (the
first weakening leaves the target entailed, the second repairs it), checks
on the way that the exported ontology parses back, and freezes every
response under tests/fixtures/.

Run from frontend/:  python3 scripts/record_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

from fastapi.testclient import TestClient

from elgr.parser import parse_ontology
from elgr.service import create_app

ONTOLOGY = """[refutable]
B SubClassOf A
(A and B)(a)
"""

def main() -> None:
    client = TestClient(create_app())
    recorded: list[dict] = []

    def record(step: str, method: str, url: str, response, *, text=False) -> dict:
        body = response.text if text else response.json()
        recorded.append(
            {
                "step": step,
                "method": method,
                "url": url,
                "status": response.status_code,
                "text": text,
                "body": body,
            }
        )
        return body

    response = client.post(
        "/api/sessions",
        json={
            "ontology": ONTOLOGY,
            "query": "A(a)",
            "algorithm": "modified",
            "weakening": "syn",
        },
    )
    created = record("create", "POST", "/api/sessions", response)
    sid = created["id"]

    response = client.get(f"/api/sessions/{sid}/candidates", params={"axiom": "r2"})
    record("candidates-1", "GET", f"/api/sessions/{sid}/candidates?axiom=r2", response)

    response = client.post(
        f"/api/sessions/{sid}/apply", json={"axiom": "r2", "replacement": "B(a)"}
    )
    first = record("apply-1", "POST", f"/api/sessions/{sid}/apply", response)
    assert first["status"] == "awaiting_choice", "first apply must leave the target entailed"

    response = client.get(f"/api/sessions/{sid}/candidates", params={"axiom": "r2"})
    record("candidates-2", "GET", f"/api/sessions/{sid}/candidates?axiom=r2", response)

    response = client.post(
        f"/api/sessions/{sid}/apply", json={"axiom": "r2", "replacement": "Top(a)"}
    )
    second = record("apply-2", "POST", f"/api/sessions/{sid}/apply", response)
    assert second["status"] == "repaired"

    response = client.get(f"/api/sessions/{sid}/export")
    export = record("export", "GET", f"/api/sessions/{sid}/export", response, text=True)
    parse_ontology(export)  # the exported text must parse back

    out = Path(__file__).resolve().parent.parent / "tests" / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    (out / "two-step-walkthrough.json").write_text(
        json.dumps({"session_id": sid, "exchanges": recorded}, indent=2),
        encoding="utf-8",
    )
    print(f"recorded {len(recorded)} exchanges for session {sid}")


if __name__ == "__main__":
    main()
