"""Tests for the event bus, stage dispatch and resource reporting."""

import argparse
import logging

from core.config import EngineSettings
from core.errors import CompatibilityError
from core.event_bus import EventBus
from core.monitor import ResourceMonitor, process_stats
from stages.base import BaseStage
from stages.manager import StageManager


class FailingStage(BaseStage):
    command = "fail"

    def add_arguments(self, parser):
        pass

    def run(self, args):
        raise CompatibilityError("x violates X(s)x = 0", {"violations": 1})


def test_publish_order_and_global_handlers():
    bus = EventBus()
    seen = []
    bus.subscribe("stage.finished", lambda e: seen.append(("one", e.data["command"])))
    bus.subscribe_all(lambda e: seen.append(("all", e.name)))
    event = bus.publish("stage.finished", {"command": "solve"}, source="test")
    assert event.source == "test"
    assert seen == [("one", "solve"), ("all", "stage.finished")]


def test_failing_handler_does_not_stop_others():
    bus = EventBus()
    seen = []

    def broken(event):
        raise RuntimeError("boom")

    bus.subscribe("x", broken)
    bus.subscribe("x", lambda e: seen.append(e.name))
    bus.publish("x", {})
    assert seen == ["x"]
    bus.unsubscribe("x", broken)
    assert len(bus._handlers["x"]) == 1


def test_manager_loads_and_dispatches(capsys):
    bus = EventBus()
    events = []
    bus.subscribe_all(lambda e: events.append(e.name))
    manager = StageManager(bus, EngineSettings())
    manager.load_stages(["analyze", "nonexistent"])
    assert manager.loaded_stages == ["analyze"]
    assert manager.load_stage("analyze") is manager.get_stage("analyze")

    stage = FailingStage(bus, EngineSettings())
    manager._stages["fail"] = stage
    assert manager.run(argparse.Namespace(command="fail")) == 3
    assert '"code": "incompatible_initial_condition"' in capsys.readouterr().err
    assert events == ["stage.started", "stage.finished"]
    assert manager.run(argparse.Namespace(command="other")) == 2


def test_settings_overrides():
    stage = FailingStage(EventBus(), EngineSettings())
    args = argparse.Namespace(t_bound=3, cert_bound=None, seed=7, no_verify=True)
    settings = stage.settings_for(args)
    assert (settings.t_bound, settings.seed, settings.verify) == (3, 7, False)
    assert settings.cert_degree_bound is None
    assert stage.parse_box("-1:1,0:2", 2) == ((-1, 0), (1, 2))


def test_resource_monitor_records_stage():
    bus = EventBus()
    monitor = ResourceMonitor()
    monitor.attach(bus)
    bus.publish("stage.finished", {"command": "normalize", "elapsed": 0.5})
    assert monitor.last["command"] == "normalize"
    assert monitor.last["rss"] > 0
    assert set(process_stats()) == {"rss", "vms", "cpu_percent", "threads"}


def test_resource_monitor_logs_stage_results(caplog):
    bus = EventBus()
    monitor = ResourceMonitor()
    monitor.attach(bus)
    with caplog.at_level(logging.INFO, logger="core.monitor"):
        bus.publish("normalization.finished", {"d": 1, "T": [[1, 0], [2, 1]]}, source="normalize")
        bus.publish("realization.finished", {"d": 1, "gamma": 6, "delta": 3}, source="regularize")
        bus.publish("analysis.finished", {"d": 1, "autonomous": True}, source="analyze")
    assert set(monitor.results) == {"analysis.finished", "normalization.finished", "realization.finished"}
    assert monitor.results["realization.finished"]["gamma"] == 6
    assert monitor.results["normalization.finished"]["T"] == [[1, 0], [2, 1]]
    assert "realization.finished d=1, gamma=6, delta=3" in caplog.text
    assert len(bus._handlers["analysis.finished"]) == 1
