"""Internal event bus for verification stage observability."""

from __future__ import annotations

import threading
import time
from collections import defaultdict
from collections.abc import Callable, Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

Subscriber = Callable[["InternalEvent"], None]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


@dataclass(slots=True)
class InternalEvent:
    topic: str
    ts: datetime
    payload: dict[str, Any] = field(default_factory=dict)


class EventBus:
    def __init__(self) -> None:
        self._subscribers: dict[str, list[Subscriber]] = defaultdict(list)
        self._events: list[InternalEvent] = []
        self._lock = threading.Lock()

    def subscribe(self, topic: str, callback: Subscriber) -> None:
        self._subscribers[topic].append(callback)

    def emit(self, topic: str, **payload: Any) -> InternalEvent:
        event = InternalEvent(topic=topic, ts=utc_now(), payload=payload)
        with self._lock:
            self._events.append(event)

        for callback in self._subscribers.get(topic, []):
            callback(event)
        for callback in self._subscribers.get("*", []):
            callback(event)

        return event

    def recent(self, limit: int = 100) -> list[InternalEvent]:
        if limit <= 0:
            return []
        with self._lock:
            return self._events[-limit:]

    @contextmanager
    def stage(self, name: str, **payload: Any) -> Iterator[dict[str, Any]]:
        """Emit ``stage.started``/``stage.completed``; the yielded dict receives ``elapsed_ms``."""
        timing: dict[str, Any] = {}
        self.emit("stage.started", stage=name, **payload)
        start = time.perf_counter()
        try:
            yield timing
        finally:
            timing["elapsed_ms"] = round((time.perf_counter() - start) * 1000.0, 3)
            self.emit("stage.completed", stage=name, elapsed_ms=timing["elapsed_ms"], **payload)
