# ============================================================================
# LatticeChoose - Run audit log
# One JSON line per event: timestamp, source, event type, action, details
# ============================================================================

import json
import os
import threading
from datetime import datetime

from config import AUDIT_ENABLED, AUDIT_LOG_FILE


class AuditLogger:
    """
    Every entry holds:
    a. event date and time
    b. source (command name)
    c. action performed
    d. parameters or outcome
    """

    def __init__(self, log_file=AUDIT_LOG_FILE, enabled=AUDIT_ENABLED):
        self.log_file = log_file
        self.lock = threading.Lock()
        self.enabled = enabled

        if self.enabled and os.path.dirname(log_file):
            os.makedirs(os.path.dirname(log_file), exist_ok=True)

    def log_event(self, source, event_type, action, details=None):
        """
        source: command that produced the event (e.g. "lc solve")
        event_type: "SOLVE", "VERIFY", "GENERATE", "ORACLE", "SELFTEST"
        action: outcome (e.g. "SOLVED", "REJECTED", "PASS")
        """
        if not self.enabled:
            return

        entry = {
            "timestamp": datetime.now().isoformat(),
            "source": source,
            "event_type": event_type,
            "action": action,
            "details": details or {}
        }

        with self.lock:
            try:
                with open(self.log_file, "a", encoding="utf-8") as f:
                    f.write(json.dumps(entry) + "\n")
            except OSError as e:
                print(f"[AuditLogger] Error writing log: {e}")

    def log_solve(self, source, vertices, a, b, success, steps=0, reason=None):
        details = {"vertices": vertices, "a": a, "b": b, "steps": steps}
        if reason:
            details["reason"] = reason
        self.log_event(source, "SOLVE", "SOLVED" if success else "REJECTED", details)

    def log_verify(self, source, vertices, report):
        details = {"vertices": vertices, "result": report.describe()}
        self.log_event(source, "VERIFY", "PASS" if report.ok else "FAIL", details)

    def log_generate(self, source, seed, vertices, style):
        self.log_event(source, "GENERATE", "INSTANCE_WRITTEN",
                       {"seed": seed, "vertices": vertices, "style": style})

    def log_oracle(self, source, kind, length, feasible):
        self.log_event(source, "ORACLE", "FEASIBLE" if feasible else "INFEASIBLE",
                       {"kind": kind, "vertices": length})

    def log_selftest(self, source, scale, passed, failed):
        self.log_event(source, "SELFTEST", "PASS" if not failed else "FAIL",
                       {"scale": scale, "passed": passed, "failed": failed})

    def get_recent_logs(self, limit=100):
        logs = []
        try:
            with open(self.log_file, "r", encoding="utf-8") as f:
                lines = f.readlines()
            for line in lines[-limit:]:
                if line.strip():
                    try:
                        logs.append(json.loads(line))
                    except json.JSONDecodeError:
                        continue
        except FileNotFoundError:
            pass
        return logs

    def search_logs(self, event_type=None, action=None, source=None, start_time=None, end_time=None):
        filtered = []
        for log in self.get_recent_logs(limit=10000):
            if event_type and log.get("event_type") != event_type:
                continue
            if action and log.get("action") != action:
                continue
            if source and log.get("source") != source:
                continue
            if start_time and log.get("timestamp") < start_time:
                continue
            if end_time and log.get("timestamp") > end_time:
                continue
            filtered.append(log)
        return filtered


# ============================================================================
# Global audit logger
# ============================================================================

_audit_logger = None


def get_audit_logger():
    global _audit_logger
    if _audit_logger is None:
        _audit_logger = AuditLogger()
    return _audit_logger


# ============================================================================
# Shortcuts
# ============================================================================

def log_solve(source, vertices, a, b, success, steps=0, reason=None):
    get_audit_logger().log_solve(source, vertices, a, b, success, steps, reason)


def log_verify(source, vertices, report):
    get_audit_logger().log_verify(source, vertices, report)


def log_generate(source, seed, vertices, style):
    get_audit_logger().log_generate(source, seed, vertices, style)


def log_oracle(source, kind, length, feasible):
    get_audit_logger().log_oracle(source, kind, length, feasible)


def log_selftest(source, scale, passed, failed):
    get_audit_logger().log_selftest(source, scale, passed, failed)
