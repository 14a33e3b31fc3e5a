from typing import Optional

from rich.style import Style
from rich.tree import Tree

from ..core.qubo import Qubo
from ..solvers.options import Solution


class TraceVisualizer:
    """Render solver traces and QUBO summaries as rich trees."""

    def __init__(self):
        self.converged_style = Style(color="green", bold=True)
        self.cyclic_style = Style(color="red")
        self.ledger_style = Style(color="cyan")

    def create_tree(self, solution: Solution, max_ledger: Optional[int] = 20) -> Tree:
        """Tree with one branch per iteration and the final ledger."""
        status = "[green]converged[/green]" if solution.converged else "[red]cycles remain[/red]"
        tree = Tree(f"[bold blue]{solution.method}[/bold blue] kt={solution.cumulative_kt:g} ({status})")
        iterations = tree.add(f"[bold]iterations[/bold] ({len(solution.trace)})")
        for record in solution.trace:
            touched = record.new_cycles or record.bumped_cycles
            iterations.add(
                f"#{record.iteration}: kt={record.best_kt:g} energy={record.best_energy:g} "
                f"ledger={record.ledger_size} (+{record.new_cycles} new, {record.bumped_cycles} raised)",
                style=self.cyclic_style if touched else self.converged_style,
            )
        if solution.removed_pairs:
            removed = tree.add(f"[bold]removed pairs[/bold] (restarts: {solution.restarts})")
            for i, j in solution.removed_pairs:
                removed.add(f"({i}, {j})")
        if solution.ledger:
            self._add_ledger(tree, solution, max_ledger)
        tree.add(f"[bold]ranking[/bold] {list(solution.ranking.order)}")
        return tree

    def _add_ledger(self, tree: Tree, solution: Solution, max_ledger: Optional[int]) -> None:
        ledger = tree.add(f"[bold cyan]ledger[/bold cyan] ({len(solution.ledger)} cycles)")
        items = sorted(solution.ledger.items(), key=lambda kv: (-kv[1], kv[0]))
        shown = items if max_ledger is None else items[:max_ledger]
        for cycle, penalty in shown:
            ledger.add(f"{cycle} -> {penalty:g}", style=self.ledger_style)
        if len(shown) < len(items):
            ledger.add(f"[dim]... {len(items) - len(shown)} more[/dim]")

    def qubo_tree(self, qubo: Qubo) -> Tree:
        """Variable count, term counts and coefficient range."""
        largest, smallest = qubo.coefficient_range()
        tree = Tree(f"[bold blue]QUBO[/bold blue] {qubo.num_vars} variables")
        tree.add(f"linear terms: {len(qubo.linear)}")
        tree.add(f"quadratic terms: {len(qubo.quadratic)}")
        tree.add(f"offset: {qubo.offset:g}")
        tree.add(f"|coefficient| range: {smallest:g} .. {largest:g}")
        return tree
