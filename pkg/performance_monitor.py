"""
PolyBisect Performance Monitoring Module
Tracks oracle usage and timing of enumeration runs.
"""
import logging
import os
import threading
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

COUNTERS = ("pairs_evaluated", "cells_found", "lp_calls", "closed_form_calls",
            "sites_sampled", "sites_rejected")


@dataclass
class RunMetrics:
    """Counters of one run; `processing_mode` turns parallel once any batch runs in the pool."""
    label: str
    start_time: float = field(default_factory=time.time)
    counts: Counter = field(default_factory=Counter)
    processing_mode: str = "sequential"

    @property
    def lp_share(self) -> float:
        total_calls = self.counts["lp_calls"] + self.counts["closed_form_calls"]
        if total_calls == 0:
            return 0
        return self.counts["lp_calls"] / total_calls * 100

    def report(self, elapsed: float, memory_mb: Optional[float]) -> Dict[str, Any]:
        return {
            "label": self.label,
            "total_time": elapsed,
            **{name: self.counts[name] for name in COUNTERS},
            "lp_share_percent": self.lp_share,
            "processing_mode": self.processing_mode,
            "memory_usage_mb": memory_mb
        }


def _resident_memory_mb() -> Optional[float]:
    try:
        import psutil
    except ImportError:
        return None
    try:
        return psutil.Process(os.getpid()).memory_info().rss / 1024 / 1024
    except psutil.Error as e:
        logging.getLogger(__name__).warning(f"Could not get memory usage: {e}")
        return None


class PerformanceMonitor:
    """Monitor and log performance metrics"""

    def __init__(self):
        self.logger = logging.getLogger(__name__)
        self.lock = threading.Lock()
        self.current: Optional[RunMetrics] = None

    def start_run(self, label: str, estimated_pairs: int = 0) -> RunMetrics:
        with self.lock:
            self.current = RunMetrics(label)
        self.logger.info(f"Starting run '{label}' over ~{estimated_pairs} facet pairs")
        return self.current

    def update_metrics(self, **increments: int):
        """Add to the named counters; a no-op outside a run."""
        unknown = set(increments) - set(COUNTERS)
        if unknown:
            raise KeyError(f"unknown counters {sorted(unknown)}")
        with self.lock:
            if self.current is not None:
                self.current.counts.update(increments)

    def record_mode(self, mode: str):
        with self.lock:
            if self.current is not None:
                self.current.processing_mode = mode

    def finish_run(self) -> Dict[str, Any]:
        with self.lock:
            metrics, self.current = self.current, None
        if metrics is None:
            return {}
        report = metrics.report(time.time() - metrics.start_time, _resident_memory_mb())
        self.logger.info(f"Run complete: {report}")
        return report


# Global performance monitor instance
performance_monitor = PerformanceMonitor()
