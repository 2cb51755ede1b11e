"""
Resource Monitor - Process statistics reported after each stage.
"""

import logging
from typing import Any, Dict

import psutil

from core.event_bus import Event, EventBus

_log = logging.getLogger(__name__)

RESULT_EVENTS = ("analysis.finished", "normalization.finished", "realization.finished")


def process_stats() -> Dict[str, Any]:
    """Memory (MB) and CPU usage of the current process."""
    proc = psutil.Process()
    mem = proc.memory_info()
    return {
        "rss": mem.rss / (1024 * 1024),
        "vms": mem.vms / (1024 * 1024),
        "cpu_percent": proc.cpu_percent(interval=None),
        "threads": proc.num_threads(),
    }


class ResourceMonitor:
    """
    Logs elapsed time and memory when a stage finishes, and the summary
    each analysis stage publishes.

    Usage:
        monitor = ResourceMonitor()
        monitor.attach(event_bus)
    """

    def __init__(self):
        self.last: Dict[str, Any] = {}
        self.results: Dict[str, Dict[str, Any]] = {}

    def attach(self, event_bus: EventBus) -> None:
        event_bus.subscribe("stage.finished", self.on_stage_finished)
        for name in RESULT_EVENTS:
            event_bus.subscribe(name, self.on_result)

    def on_stage_finished(self, event: Event) -> None:
        stats = process_stats()
        stats.update(command=event.data.get("command"), elapsed=event.data.get("elapsed", 0.0))
        self.last = stats
        _log.info("%s finished in %.2fs (rss %.1f MB, %d threads)",
                  stats["command"], stats["elapsed"], stats["rss"], stats["threads"])

    def on_result(self, event: Event) -> None:
        self.results[event.name] = dict(event.data)
        summary = ", ".join(f"{k}={v}" for k, v in event.data.items() if not isinstance(v, (dict, list)))
        _log.info("[%s] %s %s", event.source, event.name, summary)
