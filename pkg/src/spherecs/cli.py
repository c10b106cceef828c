"""Thin command-line client for the service.

Every command talks HTTP: against a remote server when --server is given,
otherwise against the ASGI app run in-process.  Exit codes: 0 success,
1 preparation verification failure, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import sys
import warnings
from pathlib import Path

import click
import httpx


def _client(server: str | None) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=300.0)
    with warnings.catch_warnings():
        # the in-process client is an implementation detail; keep its
        # deprecation chatter off the command output
        warnings.simplefilter("ignore")
        from starlette.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _call(server: str | None, method: str, path: str, **kwargs) -> dict:
    with _client(server) as client:
        response = client.request(method, path, **kwargs)
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    click.echo(f"error: {detail}", err=True)
    sys.exit(3 if response.status_code >= 500 else 2)


def _parse_mu(text: str) -> tuple[float, float]:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return float(parts[0]), 0.0
        if len(parts) == 2:
            return float(parts[0]), float(parts[1])
    except ValueError:
        pass
    raise click.BadParameter(f"expected RE or RE,IM, got {text!r}")


def _parse_grid(text: str) -> dict:
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise click.BadParameter(f"expected a:b:n or a:b:n:log, got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise click.BadParameter(f"bad grid bounds in {text!r}")
    scale = "linear"
    if len(parts) == 4:
        if parts[3] not in ("log", "linear"):
            raise click.BadParameter(f"grid scale must be log or linear, got {parts[3]!r}")
        scale = parts[3]
    return {"start": start, "stop": stop, "points": points, "scale": scale}


def _parse_int_list(text: str) -> list[int]:
    if not text:
        return []
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise click.BadParameter(f"expected comma-separated integers, got {text!r}")


def _write(path: Path, content: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(content, encoding="utf-8")
    click.echo(f"wrote {path}")


_KINDS = ("sphere-cs", "flat-cs", "pacs", "pscs")


@click.group()
@click.option(
    "--server",
    envvar="SPHERECS_SERVER",
    default=None,
    help="Base URL of a running service; by default the service runs in-process.",
)
@click.pass_context
def main(ctx, server):
    """Finite Fock-space coherent states on a sphere: build, sweep, prepare."""
    ctx.obj = server


@main.command()
@click.argument("figure_id")
@click.option("--out", type=click.Path(path_type=Path), default=Path("."), help="Output directory.")
@click.option("--svg", is_flag=True, help="Also write an SVG rendering.")
@click.pass_obj
def figure(server, figure_id, out, svg):
    """Write the CSV for one bundled figure panel (see `spherecs figures`)."""
    data = _call(
        server, "GET", f"/figures/{figure_id}", params={"include_svg": svg}
    )
    _write(out / data["filename"], data["csv"])
    if svg:
        _write(out / data["filename"].replace(".csv", ".svg"), data["svg"])


@main.command()
@click.pass_obj
def figures(server):
    """List the bundled figure panels."""
    for item in _call(server, "GET", "/figures"):
        click.echo(f"{item['figure_id']:>3}  {item['filename']:<12} {item['title']}")


@main.command()
@click.option("--kind", type=click.Choice(_KINDS), required=True)
@click.option("--N", "cutoff", type=int, required=True, help="Fock cutoff N.")
@click.option("--mu", required=True, help="Coherent label, RE or RE,IM.")
@click.option("--m", "m_list", default="", help="Comma-separated photon-operation counts.")
@click.option("--var", type=click.Choice(("lambda", "m", "phi")), required=True)
@click.option("--grid", required=True, help="Grid a:b:n or a:b:n:log.")
@click.option("--obs", required=True, help="Comma-separated observables (pdf,mean,mandel,squeezing).")
@click.option("--lambda", "curvature", type=float, default=0.0, help="Fixed curvature when var is not lambda.")
@click.option("--out", type=click.Path(path_type=Path), required=True)
@click.pass_obj
def sweep(server, kind, cutoff, mu, m_list, var, grid, obs, curvature, out):
    """Sweep an observable over curvature, photon operations, or phase."""
    mu_re, mu_im = _parse_mu(mu)
    body = {
        "kind": kind,
        "cutoff": cutoff,
        "curvature": curvature,
        "mu_re": mu_re,
        "mu_im": mu_im,
        "m_values": _parse_int_list(m_list),
        "variable": var,
        "grid": _parse_grid(grid),
        "observables": [o for o in obs.split(",") if o],
    }
    data = _call(server, "POST", "/sweeps/run", json=body)
    _write(out, data["csv"])


@main.command()
@click.option("--kind", type=click.Choice(_KINDS), required=True)
@click.option("--N", "cutoff", type=int, required=True)
@click.option("--mu", required=True)
@click.option("--m", type=int, default=0)
@click.option("--lambda", "curvature", type=float, default=0.0)
@click.option("--gtau", type=float, default=1.0, help="Uniform interaction time.")
@click.option(
    "--policy",
    type=click.Choice(("max-success", "smallest-magnitude")),
    default="max-success",
)
@click.option("--out", type=click.Path(path_type=Path), required=True)
@click.pass_obj
def prepare(server, kind, cutoff, mu, m, curvature, gtau, policy, out):
    """Synthesize a cavity preparation sequence for the requested state."""
    mu_re, mu_im = _parse_mu(mu)
    body = {
        "kind": kind,
        "cutoff": cutoff,
        "curvature": curvature,
        "mu_re": mu_re,
        "mu_im": mu_im,
        "m": m,
        "g_tau": gtau,
        "policy": policy,
    }
    data = _call(server, "POST", "/preparations/synthesize", json=body)
    _write(out, data["csv"])
    click.echo(
        f"steps={len(data['steps'])} fidelity={data['fidelity']:.12g} "
        f"success_probability={data['success_probability']:.12g}"
    )
    if data["fidelity"] < 1.0 - 1e-6:
        click.echo("verification failed: plan does not reproduce the target", err=True)
        sys.exit(1)


@main.command()
@click.option("--N", "cutoff", type=int, required=True)
@click.option("--lambda", "curvature", type=float, default=0.0)
@click.option("--m", type=int, default=0)
@click.option("--kind", type=click.Choice(("pacs", "pscs")), default="pacs")
@click.option("--mode", type=click.Choice(("flat", "literal")), default="flat")
@click.option("--beta", type=float, default=2.0, help="Denominator power of the literal measure.")
@click.option("--tol", type=float, default=1e-9, help="Radial quadrature tolerance.")
@click.pass_obj
def identity(server, cutoff, curvature, m, kind, mode, beta, tol):
    """Check how close the family comes to resolving the identity."""
    body = {
        "cutoff": cutoff,
        "curvature": curvature,
        "m": m,
        "kind": kind,
        "mode": mode,
        "beta": beta,
        "tolerance": tol,
    }
    data = _call(server, "POST", "/identity/check", json=body)
    lo, hi = data["support_lo"], data["support_hi"]
    for n in range(lo, hi + 1):
        dev = data["deviation"][n - lo]
        click.echo(f"n={n:<3} diag={data['diag'][n]:.12g}  |diag-1|={dev:.3e}")
    click.echo(
        f"max_offdiag={data['max_offdiag']:.3e} "
        f"quadrature_error={data['quadrature_error_estimate']:.3e}"
    )


@main.command()
@click.option("--kind", type=click.Choice(_KINDS), required=True)
@click.option("--N", "cutoff", type=int, required=True)
@click.option("--mu", required=True)
@click.option("--m", type=int, default=0)
@click.option("--lambda", "curvature", type=float, default=0.0)
@click.option("--out", type=click.Path(path_type=Path), required=True)
@click.pass_obj
def state(server, kind, cutoff, mu, m, curvature, out):
    """Dump one state's amplitudes and photon distribution as CSV."""
    mu_re, mu_im = _parse_mu(mu)
    body = {
        "kind": kind,
        "cutoff": cutoff,
        "curvature": curvature,
        "mu_re": mu_re,
        "mu_im": mu_im,
        "m": m,
    }
    data = _call(server, "POST", "/states/build", json=body)
    _write(out, data["csv"])
    q = data["mandel_q"]
    click.echo(
        f"mean={data['mean']:.12g} mandel_q="
        + ("undefined" if q is None else f"{q:.12g}")
    )


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
