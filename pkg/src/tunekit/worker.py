"""Line-delimited subprocess protocol for out-of-process objectives.

One worker process persists across trials.  Per trial the parent writes a
single JSON line mapping parameter names to values on the child's stdin and
reads a single JSON line ``{"score": <real>}`` from its stdout.  A dead child
or a malformed reply fails that trial only; the study keeps running.
"""

from __future__ import annotations

import json
import math
import subprocess
from typing import Sequence

from .space import ParamPoint


class WorkerProtocolError(RuntimeError):
    """A single trial's exchange with the worker went wrong."""


class ExternalWorker:
    """A spawned child evaluated one request at a time over stdin/stdout lines."""

    def __init__(self, command: Sequence[str]) -> None:
        if not command:
            raise ValueError("worker command must be non-empty")
        self.command = tuple(str(part) for part in command)
        # Spawn failures (missing executable etc.) propagate to the caller.
        self._proc = subprocess.Popen(
            self.command,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def evaluate(self, point: ParamPoint) -> float:
        """Send one parameter point and return the replied score."""
        proc = self._proc
        if proc.poll() is not None:
            raise WorkerProtocolError(
                f"worker exited with status {proc.returncode} before the request"
            )
        try:
            proc.stdin.write(json.dumps(point) + "\n")
            proc.stdin.flush()
        except (BrokenPipeError, OSError) as exc:
            raise WorkerProtocolError(f"could not write to worker: {exc}") from exc
        line = proc.stdout.readline()
        if line == "":
            raise WorkerProtocolError("worker closed its output before replying")
        try:
            reply = json.loads(line)
        except json.JSONDecodeError as exc:
            raise WorkerProtocolError(f"malformed reply {line!r}: {exc.msg}") from exc
        if not isinstance(reply, dict) or "score" not in reply:
            raise WorkerProtocolError(f"reply must be an object with a 'score' field, got {line!r}")
        score = reply["score"]
        if isinstance(score, bool) or not isinstance(score, (int, float)) or not math.isfinite(score):
            raise WorkerProtocolError(f"score must be a finite number, got {score!r}")
        return float(score)

    def close(self) -> None:
        proc = self._proc
        if proc.poll() is None:
            try:
                proc.stdin.close()
            except OSError:
                pass
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()

    def __enter__(self) -> "ExternalWorker":
        return self

    def __exit__(self, *exc_info: object) -> None:
        self.close()
