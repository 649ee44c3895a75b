# help.py
from hnlat.config import APP_NAME, APP_VERSION


class CommandHelp:
    """Centralized help system for hnlat commands."""

    @classmethod
    def get_main_help(cls):
        """Return the main help text."""
        return f"""
[bold green]{APP_NAME} v{APP_VERSION}[/bold green] - Exact slopes and Harder-Narasimhan filtrations of hermitian lattices

[bold]INVARIANTS[/bold]
  [bold yellow]degree[/bold yellow] FILE           Arithmetic degree of the lattice or of a named submodule
    [blue]→[/blue] hnlat degree e.json
    [blue]→[/blue] hnlat degree e.json --sub doubled

  [bold yellow]enum[/bold yellow] FILE             Saturated sublattices with D >= D_min
    [blue]→[/blue] hnlat enum e.json --all --dmin 1
    [blue]→[/blue] hnlat enum e.json --rank 2 --dmin 1/4 --cap 50000

[bold]STABILITY[/bold]
  [bold yellow]semistable[/bold yellow] FILE       Semistability test with a destabilizing witness
  [bold yellow]hn[/bold yellow] FILE               Harder-Narasimhan filtration, slopes and polygon
    [blue]→[/blue] hnlat hn e.json --table

[bold]CHECKING[/bold]
  [bold yellow]check[/bold yellow] [FILE]          Run the invariant suite on a file or a random corpus
    [blue]→[/blue] hnlat check --random 50 --rank 3 --seed 7
  [bold yellow]oracle-short[/bold yellow] FILE     Brute-force short vectors (small ranks only)
  [bold yellow]oracle-subs[/bold yellow] FILE      Brute-force sublattice enumeration
  [bold yellow]oracle-hn[/bold yellow] FILE        Brute-force HN filtration

[bold]COMMON OPTIONS[/bold]
  [yellow]--threads N[/yellow]      Parallel enumeration threads (default HNLAT_THREADS)
  [yellow]--verbose[/yellow]        Debug logging on stderr
  [yellow]-h, --help[/yellow]       Detailed help for a command

[bold]FILE FORMAT[/bold]
  {{"rank": 2, "gram": [["1", "0"], ["0", "4"]], "name": "e", "subs": {{"doubled": [[2, 0]]}}}}
  Gram entries are rationals written as strings ("3/4") or integers.
"""

    @classmethod
    def get_command_help(cls, command):
        """Return detailed help for a specific command."""
        help_templates = {
            "degree": """
[bold green]degree FILE[/bold green] - Arithmetic degree in exact form

[bold]Options:[/bold]
  [yellow]--sub NAME[/yellow]   Use the submodule NAME from the file's "subs" instead of the whole lattice
  [yellow]--table[/yellow]      Render a table instead of JSON

[bold]Description:[/bold]
  A degree is reported as D with deg = ½·log D. For a submodule the degree
  of its saturation and the saturation index are reported as well.

[bold]Examples:[/bold]
  [blue]hnlat degree e.json[/blue]
  [blue]hnlat degree e.json --sub doubled[/blue]
""",

            "enum": """
[bold green]enum FILE[/bold green] - Saturated sublattices of large degree

[bold]Options:[/bold]
  [yellow]--rank S[/yellow]     Only sublattices of rank S
  [yellow]--all[/yellow]        Every rank, including the lattice itself
  [yellow]--dmin P/Q[/yellow]   Exact threshold: keep F with D_F >= P/Q
  [yellow]--c X[/yellow]        Decimal threshold: keep F with ½·log D_F >= X
  [yellow]--cap N[/yellow]      Search-tree node cap; a capped run reports complete=false
  [yellow]--table[/yellow]      Render a table instead of JSON

[bold]Examples:[/bold]
  [blue]hnlat enum e.json --all --dmin 1[/blue]
  [blue]hnlat enum e.json --rank 1 --c 0.5[/blue]
""",

            "hn": """
[bold green]hn FILE[/bold green] - Harder-Narasimhan filtration

[bold]Options:[/bold]
  [yellow]--table[/yellow]      Render a table instead of JSON

[bold]Description:[/bold]
  Prints every step E_i with the exact degree of E_i/E_i-1, the slope chain,
  the polygon vertices and the verification report of the filtration.
""",

            "semistable": """
[bold green]semistable FILE[/bold green] - Semistability test

[bold]Options:[/bold]
  [yellow]--table[/yellow]      Render a table instead of JSON

[bold]Description:[/bold]
  Reports true, false with a witness sublattice of larger slope, or null
  when the node cap stopped the search first.
""",

            "check": """
[bold green]check [FILE][/bold green] - Invariant suite

[bold]Options:[/bold]
  [yellow]--random N[/yellow]     Generate N random lattices instead of reading FILE
  [yellow]--rank R[/yellow]       Rank of the random lattices (default 3)
  [yellow]--seed S[/yellow]       Seed of the random generator (default 0)
  [yellow]--dmin P/Q[/yellow]     Threshold used by the enumeration properties (default 1)
  [yellow]--property NAME[/yellow] Run only the named properties (repeatable)

[bold]Description:[/bold]
  Exits with status 1 if any property fails; the first counterexample of
  each failing property is included in the output.

[bold]Examples:[/bold]
  [blue]hnlat check e.json[/blue]
  [blue]hnlat check --random 50 --rank 3 --seed 7[/blue]
""",

            "oracle-short": """
[bold green]oracle-short FILE --bound B[/bold green] - Short vectors by exhaustive box scan

[bold]Description:[/bold]
  Lists every nonzero vector up to sign with norm at most B. Refuses boxes
  larger than HNLAT_ORACLE_MAX_POINTS.
""",

            "oracle-subs": """
[bold green]oracle-subs FILE --rank S --dmin P/Q[/bold green] - Sublattices by exhaustive scan

[bold]Description:[/bold]
  Independent of `enum`; used to cross-check it at small ranks.
""",

            "oracle-hn": """
[bold green]oracle-hn FILE[/bold green] - HN filtration by exhaustive slope maximisation

[bold]Description:[/bold]
  Handles ranks up to 4. Output has the same shape as `hn` without the
  verification report.
""",
        }

        return help_templates.get(command, f"No detailed help available for '{command}'. Try 'hnlat commands' for a list of all commands.")
