"""Command line front end.

Exit codes: 0 success, 1 axiom or validation failure, 2 unreadable input,
3 inadmissible theta weights, 4 dimension table asked for a non-fusion input.
"""
from __future__ import annotations

import json
import sys

import click

from . import builders, io as dio
from .double import filling_condition, is_vacant, validate as validate_dgpd

EXIT_OK, EXIT_AXIOM, EXIT_PARSE, EXIT_THETA, EXIT_FUSION = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(path: str) -> dio.Loaded:
    try:
        return dio.loads(_read(path))
    except (OSError, dio.ParseError) as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PARSE)


def _emit(data: dict) -> None:
    click.echo(json.dumps(data, indent=2, sort_keys=True, default=str))


def _theta_option(loaded: dio.Loaded, theta: str | None):
    """Weights from --theta (canonical or a file), else from the document."""
    from .wha import ThetaWeights

    T = loaded.T
    if theta is None:
        return loaded.theta()
    if theta == "canonical":
        return ThetaWeights.canonical(T)
    try:
        doc = json.loads(_read(theta))
        mapping = doc.get("theta", doc) if isinstance(doc, dict) else None
        if not isinstance(mapping, dict):
            raise dio.ParseError("a theta file is an object {point id: \"p/q\"}")
        return dio.theta_from_mapping(T, mapping, loaded.ids["points"])
    except (OSError, json.JSONDecodeError, dio.ParseError) as e:
        click.echo(f"error: theta: {e}", err=True)
        sys.exit(EXIT_PARSE)


def _pairs_file(loaded: dio.Loaded, path: str, key: str):
    try:
        doc = json.loads(_read(path))
        rows = doc[key] if isinstance(doc, dict) else doc
        return dio.Loaded(loaded.T, {key: rows}, loaded.ids)._pairs(key, {"sigma": dio.SigmaCochain,
                                                                         "tau": dio.TauCochain}[key])
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        click.echo(f"error: {key}: {e}", err=True)
        sys.exit(EXIT_PARSE)


def _algebra(loaded: dio.Loaded, theta: str | None, sigma: str | None, tau: str | None):
    """Pick the construction: sigma/tau if given, else theta weights, else canonical."""
    from .cocycles import TauCochain
    from .wha import Refused, ThetaWeights, build_canonical, build_sigma_tau, build_theta

    T = loaded.T
    weights = _theta_option(loaded, theta)
    sig = _pairs_file(loaded, sigma, "sigma") if sigma else loaded.sigma()
    ta = _pairs_file(loaded, tau, "tau") if tau else loaded.tau()
    try:
        if sig is not None or ta is not None:
            from .cocycles import SigmaCochain

            sig = sig if sig is not None else SigmaCochain.trivial(T)
            ta = ta if ta is not None else TauCochain.from_theta(T, weights or ThetaWeights.canonical(T))
            W = build_sigma_tau(T, sig, ta)
            W.theta = weights
            if W.theta is None:
                from .representations import weights_of

                try:
                    W.theta = weights_of(W)
                except Refused:
                    pass    # tau is not built from point weights; no theta invariants
            return W
        if weights is not None:
            return build_theta(T, weights)
        return build_canonical(T)
    except Refused as e:
        click.echo(f"error: {e}; witness {list(map(str, e.witness))}", err=True)
        sys.exit(EXIT_THETA)


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Weak Hopf algebras of finite double groupoids."""


@main.command()
@click.argument("file", default="-")
@click.option("--cap", default=50, show_default=True, help="Failures recorded per axiom.")
def validate(file: str, cap: int) -> None:
    """Check the double groupoid axioms; prints a JSON report."""
    loaded = _load(file)
    rep = validate_dgpd(loaded.T, cap=cap)
    _emit(rep.to_dict())
    sys.exit(EXIT_OK if rep.ok else EXIT_AXIOM)


@main.command()
@click.argument("family", type=click.Choice(builders.FAMILIES))
@click.option("--m", default=1, show_default=True)
@click.option("--n", default=1, show_default=True)
@click.option("--k", default=3, show_default=True, help="Number of points (discrete, coarse-squares).")
@click.option("--G", "G", default="S3", show_default=True, help="Group: C<n>, S<n> or coarse<n>.")
@click.option("--F", "F", default="S2", show_default=True, help="Subgroup for comma.")
@click.option("--V", "V", default="C3", show_default=True, help="Vertical factor for matched-pair.")
@click.option("--H", "H", default="S2", show_default=True, help="Horizontal factor for matched-pair.")
@click.option("--omega", type=click.Choice(["trivial", "sign"]), default="trivial", show_default=True)
@click.option("--theta", "with_theta", is_flag=True, help="Include the canonical weights.")
@click.option("-o", "--output", default="-", help="Output file, '-' for stdout.")
def build(family, m, n, k, G, F, V, H, omega, with_theta, output) -> None:
    """Build an example double groupoid and write its JSON document."""
    from .cocycles import TauCochain
    from .wha import ThetaWeights

    try:
        T, sigma = builders.build_family(family, m=m, n=n, k=k, G=G, F=F, V=V, H=H, omega=omega)
    except ValueError as e:
        click.echo(f"error: {e}", err=True)
        sys.exit(EXIT_PARSE)
    extra = {}
    if with_theta:
        extra["theta"] = ThetaWeights.canonical(T)
    if sigma is not None:
        extra["sigma"] = sigma
        extra["tau"] = TauCochain.from_theta(T, ThetaWeights.canonical(T))
    text = dio.dump(T, **extra)
    if output == "-":
        click.echo(text, nl=False)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


@main.command()
@click.argument("file", default="-")
@click.option("--theta", default=None, help="'canonical' or a JSON file of point weights.")
@click.option("--sigma", default=None, help="JSON file with a sigma section.")
@click.option("--tau", default=None, help="JSON file with a tau section.")
@click.option("--verify", is_flag=True, help="Check every axiom and the antipode invariants.")
@click.option("--exhaustive", is_flag=True, help="Loop over all basis tuples.")
@click.option("--json", "as_json", is_flag=True)
def wha(file, theta, sigma, tau, verify, exhaustive, as_json) -> None:
    """Construct the weak Hopf algebra and optionally verify it."""
    from .verify import verify_axioms
    from .wha import antipode_analysis, pivotal_report

    loaded = _load(file)
    W = _algebra(loaded, theta, sigma, tau)
    out: dict = {"name": loaded.T.name, "kind": W.kind, "dimension": W.n, "has_antipode": W.has_antipode}
    ok = True
    if W.conditions is not None:
        out["conditions"] = W.conditions.to_dict()
        ok &= W.conditions.ok
    if verify:
        rep = verify_axioms(W, exhaustive=True if exhaustive else None)
        out["axioms"] = rep.to_dict()
        ok &= rep.ok
        if W.theta is not None and W.has_antipode:
            an = antipode_analysis(W)
            piv = pivotal_report(W)
            out["antipode"] = {
                "spectrum": [str(q) for q in an.spectrum],
                "regular": an.is_regular,
                "involutive": an.is_involutive,
                "report": an.report.to_dict(),
            }
            out["pivotal"] = piv.to_dict()
            ok &= an.report.ok and piv.ok
    out["ok"] = ok
    if as_json:
        _emit(out)
    else:
        _print_wha(out)
    sys.exit(EXIT_OK if ok else EXIT_AXIOM)


def _print_wha(out: dict) -> None:
    click.echo(f"{out['name']}: {out['kind']} structure on {out['dimension']} boxes")
    if "conditions" in out:
        click.echo(f"  weak bialgebra conditions: {'pass' if out['conditions']['ok'] else 'FAIL'}")
    click.echo(f"  antipode: {'found' if out['has_antipode'] else 'none'}")
    if "axioms" in out:
        a = out["axioms"]
        click.echo(f"  axioms ({a['mode']}): {'pass' if a['ok'] else 'FAIL'}; hopf algebra: {a['is_hopf']}")
        for f in a["failures"][:10]:
            click.echo(f"    {f['axiom']} at {f['witness']} {f['detail']}")
    if "antipode" in out:
        s = out["antipode"]
        click.echo(f"  S^2 spectrum: {', '.join(s['spectrum'])}; regular: {s['regular']}")
        click.echo(f"  pivotal identities: {'pass' if out['pivotal']['ok'] else 'FAIL'}")
    click.echo("pass" if out["ok"] else "FAIL")


@main.command()
@click.argument("file", default="-")
@click.option("--theta", default=None, help="'canonical' or a JSON file of point weights.")
@click.option("--seed", default=0, show_default=True, help="Seed for telling irreducibles apart.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--csv", "as_csv", is_flag=True, help="Print only the dimension table.")
def rep(file, theta, seed, as_json, as_csv) -> None:
    """Fusion verdict and the table of simple modules with their dimensions."""
    from .representations import dimensions, is_fusion

    loaded = _load(file)
    W = _algebra(loaded, theta, None, None)
    verdict = is_fusion(W)
    fusion = {
        "is_fusion": verdict.is_fusion,
        "vertical_connected": verdict.v_connected,
        "one_e_per_bottom": verdict.one_e_per_bottom,
        "unit_module_simple": verdict.unit_simple,
        "witness": [str(x) for x in verdict.witness],
    }
    if not verdict.is_fusion:
        clause = "(a) vertical groupoid not connected" if not verdict.v_connected else \
            "(b) two boxes of E over one bottom arrow"
        fusion["failing_clause"] = clause
        if as_json:
            _emit({"fusion": fusion})
        else:
            click.echo(f"not fusion: clause {clause}; witness {fusion['witness']}")
        sys.exit(EXIT_FUSION)
    dims = dimensions(W, seed=seed)
    if as_json:
        _emit({"fusion": fusion, "dimensions": dims.to_dict(), "seed": seed})
    elif as_csv:
        click.echo(dims.to_csv(), nl=False)
    else:
        click.echo("fusion: true")
        click.echo(dims.to_csv(), nl=False)
        fp = ", ".join(str(s.fpdim) for s in dims.simples)
        click.echo(f"fpdims: {fp}; global dimension {dims.global_dim}; pseudo-unitary {dims.pseudo_unitary}")


@main.command()
@click.argument("file", default="-")
@click.option("--json", "as_json", is_flag=True)
@click.option("--csv", "as_csv", is_flag=True, help="Print the box table.")
def info(file, as_json, as_csv) -> None:
    """Sizes, theta values, vacancy and filling of a double groupoid."""
    loaded = _load(file)
    T = loaded.T
    if as_csv:
        click.echo(dio.boxes_csv(T), nl=False)
        return
    rep = validate_dgpd(T)
    data = {
        "name": T.name,
        "points": T.n_points,
        "h_arrows": T.H.n_arrows,
        "v_arrows": T.V.n_arrows,
        "boxes": T.n,
        "valid": rep.ok,
    }
    if rep.ok:
        from .representations import vertical_classes

        data["theta"] = {str(T.points[P]): int(v) for P, v in enumerate(T.theta_values)}
        data["vacant"] = bool(is_vacant(T))
        data["filling"] = bool(filling_condition(T))
        data["vertical_classes"] = [{"size": len(c.members), "loop_order": len(c.loops)}
                                    for c in vertical_classes(T)]
    if as_json:
        _emit(data)
    else:
        for k, v in data.items():
            click.echo(f"{k}: {v}")
    sys.exit(EXIT_OK if rep.ok else EXIT_AXIOM)


if __name__ == "__main__":  # pragma: no cover
    main()
