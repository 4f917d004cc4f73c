"""
Report Exporter
===============
Writes the self-test summary table to data/reports/.
Formats: CSV (one row per suite), JSON (run settings plus rows), Text summary.
"""

import json
from datetime import datetime
from pathlib import Path
from typing import Callable, Dict, Optional
import sys

import pandas as pd

sys.path.append(str(Path(__file__).parent.parent))
from src.config import REPORTS_DIR


class ReportExporter:
    """Exports a self-test summary DataFrame in multiple formats."""

    def __init__(self, reports_dir: Optional[Path] = None, log: Callable[[str], None] = print):
        self.reports_dir = Path(reports_dir) if reports_dir is not None else REPORTS_DIR
        self.reports_dir.mkdir(parents=True, exist_ok=True)
        self.log = log

    def _timestamp(self) -> str:
        return datetime.now().strftime('%Y%m%d_%H%M%S')

    # ── JSON export ───────────────────────────────────────────────────────────

    def export_json(self, summary: pd.DataFrame, settings: Dict,
                    filename: str = None) -> str:
        filename = filename or f"selftest_{self._timestamp()}.json"
        path = self.reports_dir / filename
        report = {
            'settings': settings,
            'passed':   int((summary['status'] == 'PASS').sum()),
            'failed':   int((summary['status'] == 'FAIL').sum()),
            'suites':   summary.to_dict(orient='records'),
        }
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report, f, indent=2, default=str, ensure_ascii=False)
        self.log(f"  JSON report: {path}")
        return str(path)

    # ── CSV: one row per suite ────────────────────────────────────────────────

    def export_csv(self, summary: pd.DataFrame, filename: str = None) -> str:
        filename = filename or f"selftest_{self._timestamp()}.csv"
        path = self.reports_dir / filename
        if summary.empty:
            self.log("  No suite rows to export")
            return ''
        summary.to_csv(path, index=False)
        self.log(f"  Suites CSV: {path} ({len(summary)} rows)")
        return str(path)

    # ── Text summary ──────────────────────────────────────────────────────────

    def export_text(self, summary: pd.DataFrame, settings: Dict,
                    filename: str = None) -> str:
        filename = filename or f"selftest_{self._timestamp()}.txt"
        path = self.reports_dir / filename
        failed = summary[summary['status'] == 'FAIL']
        lines = [
            "=" * 70,
            "EULER CALCULUS SELF-TEST",
            f"Date: {datetime.now().strftime('%B %d, %Y')}",
            "  ".join(f"{k}={v}" for k, v in sorted(settings.items())),
            "=" * 70,
            "",
            summary.to_string(index=False),
            "",
            f"Suites passed: {int((summary['status'] == 'PASS').sum())}/{len(summary)}",
        ]
        if not failed.empty:
            lines += ["", "FAILURES", "-" * 70]
            for _, row in failed.iterrows():
                lines.append(f"  ✗ [{row['module']}] {row['suite']}: {row['detail']}")
        with open(path, 'w', encoding='utf-8') as f:
            f.write('\n'.join(lines) + '\n')
        self.log(f"  Text summary: {path}")
        return str(path)

    # ── Full export bundle ────────────────────────────────────────────────────

    def export_all(self, summary: pd.DataFrame, settings: Dict) -> Dict:
        """Export all formats. Returns dict of file paths."""
        self.log("\n📤 Exporting reports...")
        ts = self._timestamp()
        return {
            'json': self.export_json(summary, settings, f"selftest_{ts}.json"),
            'csv':  self.export_csv(summary, f"selftest_{ts}.csv"),
            'text': self.export_text(summary, settings, f"selftest_{ts}.txt"),
        }
