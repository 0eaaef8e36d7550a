"""CLI interface for frame_soliton using Typer."""

import json
import logging
import shutil
import sys
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Iterable, NoReturn, Optional, Tuple

import typer
from r3a_logger.logger import (  # type: ignore[import-untyped]
    get_current_logger,
    initialize_logging,
)
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from frame_soliton.config import FrameSolitonConfig
from frame_soliton.exceptions import FrameSolitonError, ParameterError
from frame_soliton.geometry.curvature import compute_curvature, levi_civita
from frame_soliton.geometry.derived import (
    PseudoProjectiveParams,
    pseudo_projective_branch,
)
from frame_soliton.geometry.manifold import FrameManifold, load_manifold
from frame_soliton.geometry.structure import classify_contact
from frame_soliton.kernel.rational import format_rat, parse_rat
from frame_soliton.library import builtin_examples, export_example
from frame_soliton.report import build_report, render_text, solution_line, theorem_line
from frame_soliton.soliton.solver import solve_soliton
from frame_soliton.soliton.theorems import verify_theorems
from frame_soliton.soliton.variants import VariantFactory
from frame_soliton.utils import get_command_context, yes_no

app = typer.Typer(help="Exact curvature and soliton checks on frame manifolds")
examples_app = typer.Typer(help="Builtin example manifolds")
app.add_typer(examples_app, name="examples")
console = Console()

EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class ExportFormat(str, Enum):
    JSON = "json"
    TOML = "toml"
    YAML = "yaml"


def get_home_directory() -> Path:
    """Get the home directory path."""
    return Path.home() / ".frame_soliton"


def get_log_directory() -> Path:
    """Get the log directory path."""
    return get_home_directory() / "logs"


def create_config_template() -> str:
    """Create the content for the initial configuration file by reading
    from assets/default_config.toml.
    """
    with (
        resources.files("frame_soliton")
        .joinpath("assets/default_config.toml")
        .open("rb") as f
    ):
        return f.read().decode("utf-8")


def load_config() -> Optional[FrameSolitonConfig]:
    """Read the user config, or ``None`` when it is missing or unreadable."""
    try:
        return FrameSolitonConfig()
    except Exception:
        return None


def get_console_logging_setting() -> bool:
    """Read console_logging setting from config file, fallback to False on error."""
    config = load_config()
    return config.get_console_logging() if config is not None else False


def get_logging_level_setting() -> str:
    config = load_config()
    return config.get_logging_level() if config is not None else "WARNING"


def _setup_logging(
    verbose: bool = False,
    debug: bool = False,
    console_logging: bool = False,
    log_level: Optional[str] = None,
) -> None:
    """Initialise file (and optional console) logging for a command.

    Args:
        verbose: Enable verbose logging (INFO level)
        debug: Enable debug logging (DEBUG level)
        console_logging: Enable console logging
        log_level: Configured level, used when neither flag is given
    """
    if debug:
        log_level = "DEBUG"
    elif verbose:
        log_level = "INFO"
    elif not log_level:
        log_level = "WARNING"

    initialize_logging(
        log_dir=get_log_directory(),
        log_level=log_level,
        console_logging=console_logging,
        logger_name="frame_soliton",
        log_file_name=None,
    )


def _start_command(
    command: str, args: Dict[str, Any], verbose: bool, debug: bool
) -> logging.Logger:
    _setup_logging(
        verbose=verbose,
        debug=debug,
        console_logging=get_console_logging_setting(),
        log_level=get_logging_level_setting(),
    )
    logger = get_current_logger() or logging.getLogger("frame_soliton")
    logger.info(f"Starting command - {get_command_context(command, args)}")
    return logger


def _fail(error: Exception, logger: Optional[logging.Logger] = None) -> NoReturn:
    if logger is not None:
        logger.error(str(error))
    console.print(f"❌ [red]Error:[/red] {escape(str(error))}", soft_wrap=True)
    raise typer.Exit(code=EXIT_INPUT_ERROR)


def _emit(lines: Iterable[str]) -> None:
    for line in lines:
        console.print(line, markup=False, highlight=False, soft_wrap=True)


def _emit_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2, ensure_ascii=False))


def _load(path: Path, logger: logging.Logger) -> FrameManifold:
    try:
        return load_manifold(path)
    except (FrameSolitonError, FileNotFoundError) as e:
        _fail(e, logger)


def _resolve_format(fmt: Optional[OutputFormat]) -> OutputFormat:
    if fmt is not None:
        return fmt
    config = load_config()
    return OutputFormat(config.get_default_format()) if config else OutputFormat.TEXT


def _resolve_params(
    a: Optional[str], b: Optional[str], r_override: Optional[str]
) -> PseudoProjectiveParams:
    """Flags override the ``[pseudo_projective]`` config section, which
    overrides ``a = b = 1``."""
    config = load_config()
    base = (
        config.get_pseudo_projective_params()
        if config is not None
        else PseudoProjectiveParams()
    )
    return PseudoProjectiveParams(
        a=parse_rat(a, "--a") if a is not None else base.a,
        b=parse_rat(b, "--b") if b is not None else base.b,
        r_override=(
            parse_rat(r_override, "--r-override")
            if r_override is not None
            else base.r_override
        ),
    )


def _parse_potential(text: Optional[str], dim: int) -> Optional[Tuple[Any, ...]]:
    if text is None:
        return None
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != dim:
        raise ParameterError(
            f"Potential needs {dim} components, got {len(parts)}", "--potential"
        )
    return tuple(parse_rat(part, f"--potential[{k}]") for k, part in enumerate(parts))


_VERBOSE = typer.Option(
    False, "--verbose", "-v", help="Show detailed operational logs (INFO level)"
)
_DEBUG = typer.Option(
    False,
    "--debug",
    help="Enable comprehensive debugging logs (DEBUG level, includes verbose)",
)
_PATH = typer.Argument(..., help="Manifold document (.json, .toml, .yaml)")
_FORMAT = typer.Option(None, "--format", "-f", help="Output format: text or json")
_A = typer.Option(None, "--a", help="Pseudo-projective constant a (e.g. 1 or 3/2)")
_B = typer.Option(None, "--b", help="Pseudo-projective constant b (e.g. 1 or 3/2)")
_R_OVERRIDE = typer.Option(
    None, "--r-override", help="Use this scalar curvature in the P-bar tensor"
)


@app.command()
def validate(
    path: Path = _PATH,
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """Parse a manifold document and print its structure classification."""
    logger = _start_command("validate", {"path": path}, verbose, debug)
    m = _load(path, logger)
    structure = classify_contact(m, levi_civita(m))

    lines = [f"manifold: {m.name} (dimension {m.dim})"]
    for flag in structure.flags():
        line = f"{flag.name}: {yes_no(flag.passed)}"
        if flag.witness:
            line += f" ({flag.witness})"
        lines.append(line)
    lines.extend(structure.notes)
    _emit(lines)
    logger.info(f"Validated {m.name}: sasakian={structure.is_sasakian}")


@app.command()
def report(
    path: Path = _PATH,
    fmt: Optional[OutputFormat] = _FORMAT,
    a: Optional[str] = _A,
    b: Optional[str] = _B,
    r_override: Optional[str] = _R_OVERRIDE,
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """Print the full report: structure, curvature, conditions, solitons,
    theorems and reference discrepancies."""
    logger = _start_command(
        "report",
        {"path": path, "format": fmt, "a": a, "b": b, "r_override": r_override},
        verbose,
        debug,
    )
    m = _load(path, logger)
    try:
        result = build_report(m, _resolve_params(a, b, r_override))
    except FrameSolitonError as e:
        _fail(e, logger)

    if _resolve_format(fmt) is OutputFormat.JSON:
        _emit_json(result.to_dict())
    else:
        _emit(render_text(result))


@app.command()
def soliton(
    path: Path = _PATH,
    variant: Optional[str] = typer.Option(
        None,
        "--variant",
        help=f"One of: {', '.join(VariantFactory.get_available_variants())}",
    ),
    potential: Optional[str] = typer.Option(
        None,
        "--potential",
        help="Constant potential field as comma-separated components (default xi)",
    ),
    a: Optional[str] = _A,
    b: Optional[str] = _B,
    fmt: Optional[OutputFormat] = _FORMAT,
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """Solve a soliton equation exactly for its constants."""
    logger = _start_command(
        "soliton",
        {"path": path, "variant": variant, "potential": potential, "a": a, "b": b},
        verbose,
        debug,
    )
    m = _load(path, logger)
    try:
        config = load_config()
        name = variant or (
            config.get_default_variant() if config else VariantFactory.DEFAULT
        )
        chosen = VariantFactory.create(name, _parse_potential(potential, m.dim))
        params = _resolve_params(a, b, None)
    except FrameSolitonError as e:
        _fail(e, logger)

    conn = levi_civita(m)
    pack = compute_curvature(m, conn)
    sasakian = classify_contact(m, conn).is_sasakian
    solution = solve_soliton(m, pack, conn, chosen, sasakian=sasakian)
    branch = pseudo_projective_branch(m, pack, params)

    if _resolve_format(fmt) is OutputFormat.JSON:
        data = solution.to_dict()
        data["pseudo_projective_branch"] = (
            format_rat(branch) if branch is not None else None
        )
        _emit_json(data)
        return

    lines = [solution_line(solution)]
    if solution.lambda_shifted is not None:
        lines.append(f"λ = {solution.lambda_text()}")
    if solution.nature is not None:
        lines.append(f"nature: {solution.nature}")
    for check in solution.einstein_checks:
        lines.append(f"{check.name}: {'holds' if check.holds else 'FAILS'}")
    if branch is None:
        lines.append("P̄ branch: n/a (pseudo-projective tensor needs dimension > 1)")
    else:
        lines.append(f"P̄ branch: a - (r/(2n+1))(a/(2n) + b) = {format_rat(branch)}")
    _emit(lines)


@app.command("check-theorems")
def check_theorems(
    path: Path = _PATH,
    a: Optional[str] = _A,
    b: Optional[str] = _B,
    r_override: Optional[str] = _R_OVERRIDE,
    fmt: Optional[OutputFormat] = _FORMAT,
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """Check every theorem mechanically; exit 1 if any is violated."""
    logger = _start_command(
        "check-theorems",
        {"path": path, "a": a, "b": b, "r_override": r_override},
        verbose,
        debug,
    )
    m = _load(path, logger)
    try:
        params = _resolve_params(a, b, r_override)
        conn = levi_civita(m)
        theorems = verify_theorems(m, compute_curvature(m, conn), conn, params)
    except FrameSolitonError as e:
        _fail(e, logger)

    if _resolve_format(fmt) is OutputFormat.JSON:
        _emit_json(theorems.to_dict())
    else:
        _emit(theorem_line(entry) for entry in theorems.entries)

    if theorems.has_violation:
        logger.error(f"{len(theorems.violations)} theorem violation(s) on {m.name}")
        raise typer.Exit(code=EXIT_VIOLATION)


@examples_app.command("list")
def examples_list(
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """List the builtin example manifolds."""
    _start_command("examples list", {}, verbose, debug)
    table = Table(title="Builtin manifolds")
    table.add_column("name")
    table.add_column("dim", justify="right")
    table.add_column("description")
    for example in builtin_examples():
        table.add_row(example.name, str(example.dimension), example.description)
    console.print(table)


@examples_app.command("export")
def examples_export(
    name: str = typer.Argument(..., help="Builtin example name"),
    fmt: ExportFormat = typer.Option(
        ExportFormat.JSON, "--format", "-f", help="json, toml or yaml"
    ),
    output: Optional[Path] = typer.Option(
        None, "--output", "-o", help="Write to this file instead of stdout"
    ),
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """Write a builtin example as a manifold document."""
    logger = _start_command(
        "examples export",
        {"name": name, "format": fmt.value, "output": output},
        verbose,
        debug,
    )
    try:
        text = export_example(name, fmt.value)
    except FrameSolitonError as e:
        _fail(e, logger)

    if output is None:
        typer.echo(text, nl=False)
        return
    output.write_text(text, encoding="utf-8")
    console.print(f"📝 Wrote {name} to {output}")


@app.command()
def init(
    force: bool = typer.Option(
        False, "--force", help="Force reinitialize even if directory exists"
    ),
    verbose: bool = _VERBOSE,
    debug: bool = _DEBUG,
):
    """Create the configuration directory, config file and logs directory."""
    home_dir = get_home_directory()

    context = get_command_context(
        "init", {"force": force, "verbose": verbose, "debug": debug}
    )
    if verbose:
        console.print(f"Starting frame_soliton initialization - {context}")

    if home_dir.exists() and not force:
        console.print(
            f"📁 [yellow]frame_soliton directory already exists:[/yellow] {home_dir}"
        )
        console.print("[yellow]Use --force to reinitialize[/yellow]")
        return

    try:
        home_dir.mkdir(parents=True, exist_ok=True)
        config_file = home_dir / "config.toml"
        config_file.write_text(create_config_template())
        logs_dir = get_log_directory()
        logs_dir.mkdir(exist_ok=True)

        logger = _start_command("init", {"force": force}, verbose, debug)
        logger.debug(f"Created {config_file} and {logs_dir}")

        panel = Panel.fit(
            f"✅ frame_soliton initialized successfully!\n\n"
            f"📁 Configuration directory: {home_dir}\n"
            f"📝 Config file: {config_file}\n"
            f"📁 Logs directory: {logs_dir}\n\n"
            f"💡 Edit {config_file} to set default a, b, variant and format.",
            title="🎉 Initialization Complete",
            border_style="green",
        )
        console.print(panel)
    except PermissionError:
        console.print(
            f"❌ [red]Error:[/red] Permission denied: Cannot create directory "
            f"{home_dir}"
        )
        sys.exit(1)
    except Exception as e:
        console.print(f"❌ [red]Error:[/red] Failed to initialize: {escape(str(e))}")
        sys.exit(1)


@app.command()
def clean(
    yes: bool = typer.Option(False, "--yes", "-y", help="Skip confirmation prompt"),
    verbose: bool = _VERBOSE,
):
    """Remove the configuration directory and everything in it."""
    home_dir = get_home_directory()

    if verbose:
        console.print(
            f"Starting frame_soliton cleanup : "
            f"{get_command_context('clean', {'yes': yes, 'verbose': verbose})}"
        )

    if not home_dir.exists():
        console.print(
            f"📁 [yellow]frame_soliton directory does not exist:[/yellow] {home_dir}"
        )
        console.print("💡 Nothing to clean up")
        return

    if not yes:
        confirm = typer.confirm(
            f"Are you sure you want to delete {home_dir} and all its contents?",
            default=False,
        )
        if not confirm:
            console.print("🛑 Cleanup cancelled")
            return

    try:
        shutil.rmtree(home_dir)
        panel = Panel.fit(
            f"✅ frame_soliton cleaned up successfully!\n\n"
            f"🗑️ Removed directory: {home_dir}\n\n"
            f"💡 Run 'frame-soliton init' to recreate the configuration.",
            title="🧹 Cleanup Complete",
            border_style="red",
        )
        console.print(panel)
    except PermissionError:
        console.print(
            f"❌ [red]Error:[/red] Permission denied: Cannot remove directory "
            f"{home_dir}"
        )
        sys.exit(1)


if __name__ == "__main__":
    app()  # pragma: no cover
