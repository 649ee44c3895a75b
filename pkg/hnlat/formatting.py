# formatting.py
from rich.console import Console
from rich.table import Table

# Results go to stdout, everything else to stderr
console = Console()
err_console = Console(stderr=True)


class LatticeFormatter:
    """Rich markup for diagnostics and tables for `--table` output."""

    @classmethod
    def header(cls, text):
        return f"[bold bright_green]{text}[/bold bright_green]"

    @classmethod
    def error(cls, text):
        """Format an error message."""
        return f"[bold red]Error:[/bold red] {text}"

    @classmethod
    def warning(cls, text):
        """Format a warning message."""
        return f"[bold yellow]Warning:[/bold yellow] {text}"

    @classmethod
    def success(cls, text):
        return f"[green]{text}[/green]"

    @classmethod
    def basis(cls, rows):
        """A basis as `(1, 0) (0, 1)` on one line."""
        return " ".join("(" + ", ".join(str(x) for x in row) + ")" for row in rows)

    @classmethod
    def _degree_cells(cls, deg):
        return [deg["D"], str(deg["rank"]), deg["log_value_approx"], deg["slope_approx"]]

    @classmethod
    def degree_table(cls, result):
        """Table for `hnlat degree`."""
        table = Table(title=cls.header("Degree"))
        for column in ("object", "D", "rank", "deg ≈", "slope ≈"):
            table.add_column(column)
        if "sub" in result:
            table.add_row(result["sub"], *cls._degree_cells(result["degree"]))
            table.add_row("saturation", *cls._degree_cells(result["saturation"]["degree"]))
            table.caption = (f"saturation index {result['saturation_index']}, "
                             f"defect ≈ {result['saturation_defect_log_approx']}")
        else:
            table.add_row("E", *cls._degree_cells(result["degree"]))
        return table

    @classmethod
    def sublattice_table(cls, title, subs):
        """Table of sublattice payloads, one row each."""
        table = Table(title=cls.header(title))
        table.add_column("#", justify="right")
        table.add_column("basis")
        for column in ("D", "rank", "deg ≈", "slope ≈"):
            table.add_column(column)
        for i, entry in enumerate(subs, 1):
            table.add_row(str(i), cls.basis(entry["basis"]), *cls._degree_cells(entry["degree"]))
        return table

    @classmethod
    def hn_table(cls, result):
        """Table for `hnlat hn`: one row per filtration step."""
        table = Table(title=cls.header("Harder-Narasimhan filtration"))
        table.add_column("step", justify="right")
        table.add_column("E_i basis")
        for column in ("D of E_i/E_i-1", "rank", "deg ≈", "slope ≈"):
            table.add_column(column)
        for i, step in enumerate(result["steps"], 1):
            table.add_row(str(i), cls.basis(step["basis"]), *cls._degree_cells(step["quotient_degree"]))
        verdict = "verified" if result["verification"]["passed"] else "FAILED verification"
        table.caption = verdict
        return table

    @classmethod
    def semistable_table(cls, result):
        table = Table(title=cls.header("Semistability"))
        table.add_column("semistable")
        table.add_column("slope(E) ≈")
        table.add_column("witness")
        table.add_column("slope(witness) ≈")
        verdict = {True: cls.success("yes"), False: "[red]no[/red]", None: cls.warning("inconclusive")}
        witness = result["witness"]
        table.add_row(
            verdict[result["semistable"]],
            result["slope"]["slope_approx"],
            cls.basis(witness["basis"]) if witness else "-",
            witness["degree"]["slope_approx"] if witness else "-",
        )
        return table
