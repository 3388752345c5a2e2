"""Stdio transport: one JSON request per input line, one response per output line.

EOF on stdin ends the batch. Malformed lines produce error lines; the loop
never stops early because of one bad request.
"""

from __future__ import annotations

import json
import sys
from typing import IO

from .protocol import SummaryService, handle_request


def serve_stdio(service: SummaryService, stdin: IO[str] | None = None, stdout: IO[str] | None = None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            response = {"id": None, "error": f"invalid JSON request line: {exc.msg}"}
        else:
            response = handle_request(record, service)
        stdout.write(json.dumps(response, ensure_ascii=False) + "\n")
        stdout.flush()
    return 0
