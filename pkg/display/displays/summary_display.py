"""Zusammenfassung eines Laufs als Rich-Tabelle."""

from typing import Any

from rich.panel import Panel
from rich.table import Table
from rich.console import Group

from ..core import BaseDisplay


class SummaryDisplay(BaseDisplay):
    """Zeigt Kennzahlen, Prüfungen und Artefakte eines RunResult"""

    def display(self, data: Any, **kwargs: Any) -> None:
        """
        Zeigt die Zusammenfassung an.

        Args:
            data: RunResult
        """
        self.console.print(self.render(data))

    def render(self, result: Any) -> Panel:
        """Baut das Panel ohne es auszugeben"""
        sections = [self._create_figures_table(result)]
        if result.checks:
            sections.append(self._create_checks_table(result))
        if result.artifacts:
            sections.append(self._create_artifacts_table(result))

        border = "green" if result.passed else "red"
        return Panel(Group(*sections), title=f"[bold blue]{result.command}[/bold blue]",
                     border_style=border)

    def _create_figures_table(self, result: Any) -> Table:
        table = Table(title="Kennzahlen", show_header=True, header_style="bold cyan")
        table.add_column("Größe", style="cyan")
        table.add_column("Wert", justify="right")
        for name, value in result.figures.items():
            table.add_row(name, self.formatter.format_value(value))
        return table

    def _create_checks_table(self, result: Any) -> Table:
        table = Table(title="Prüfungen", show_header=True, header_style="bold cyan")
        table.add_column("Prüfung", style="cyan")
        table.add_column("Status", justify="center")
        for name, passed in result.checks.items():
            table.add_row(name, self.formatter.format_check(passed))
        return table

    def _create_artifacts_table(self, result: Any) -> Table:
        table = Table(title="Artefakte", show_header=True, header_style="bold cyan")
        table.add_column("Typ", style="cyan")
        table.add_column("Pfad")
        for log_type, path in result.artifacts.items():
            table.add_row(log_type, str(path))
        return table
