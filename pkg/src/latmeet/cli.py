"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource limit.
"""
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, List, Optional, Sequence

import click

from .betti import invariants_report
from .enumeration import MAX_SIZE, SizeLimitExceeded, enumerate_lattices
from .groebner import ResourceLimit, buchberger
from .joinmeet import (
    PreconditionFailed,
    distributive_suite,
    fixture_claims,
    join_meet_ideal,
    lk_suite,
    section1_suite,
)
from .lattice import (
    Lattice,
    LatticeError,
    birkhoff,
    boolean,
    chain,
    diamond,
    find_diamond,
    find_pentagon,
    is_distributive,
    is_modular,
    lk,
    load_lattice,
    poset_chain_plus_point,
)
from . import fixtures

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

# invariant fields need a Betti table; structure fields do not
STRUCTURE_FIELDS = ("name", "size", "distributive", "modular", "graded", "covers")
INVARIANT_FIELDS = ("reg", "pd", "depth", "dim", "beta24", "cm", "gorenstein", "linearly_related")
INVARIANT_MAX_SIZE = 7


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _fail(code: int, msg: str):
    click.echo(f"error: {msg}", err=True)
    sys.exit(code)


def _guard(fn: Callable):
    """Run ``fn`` and map library errors onto exit codes."""
    try:
        return fn()
    except (ResourceLimit, SizeLimitExceeded) as exc:
        _fail(EXIT_LIMIT, str(exc))
    except (LatticeError, PreconditionFailed, OSError) as exc:
        _fail(EXIT_INPUT, str(exc))


@click.group()
def main():
    """Join-meet ideals of finite lattices."""


# -- lattice check ------------------------------------------------------------

def lattice_summary(L: Lattice) -> dict:
    pent = find_pentagon(L)
    diam = find_diamond(L)
    ranks = L.ranks() if L.is_graded else None
    return {
        "valid": True,
        "size": len(L),
        "graded": L.is_graded,
        "ranks": ranks,
        "modular": is_modular(L),
        "distributive": is_distributive(L),
        "pentagon": list(pent) if pent else None,
        "diamond": list(diam) if diam else None,
    }


def _witness(w) -> str:
    return "{" + ",".join(w) + "}" if w else "none"


@main.group()
def lattice():
    """Lattice files."""


@lattice.command("check")
@click.argument("file", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def lattice_check(file, fmt):
    """Validate a lattice JSON file and report its structure."""
    L = _guard(lambda: load_lattice(file))
    s = lattice_summary(L)
    if fmt == "json":
        click.echo(_dump(s))
        return
    click.echo(f"valid: true, elements: {s['size']}")
    if s["graded"]:
        click.echo("ranks: " + ", ".join(f"{e}={r}" for e, r in s["ranks"].items()))
    else:
        click.echo("graded: false")
    if s["modular"]:
        click.echo(f"modular: true, distributive: {str(s['distributive']).lower()}")
    else:
        click.echo(f"modular: false, witness: {_witness(s['pentagon'])}")
    if s["diamond"]:
        click.echo(f"diamond: {_witness(s['diamond'])}")


# -- analyze ------------------------------------------------------------------

def family_lattice(family: str, n: Optional[int], k: Optional[int], m: Optional[int]) -> Lattice:
    def need(name, v):
        if v is None:
            raise LatticeError(f"--family {family} needs --{name}")
        return v
    if family == "chain":
        return chain(need("m", m if m is not None else n))
    if family == "boolean":
        return boolean(need("n", n))
    if family == "diamond":
        return diamond(need("n", n))
    if family == "lk":
        return lk(need("n", n), need("k", k))
    if family == "birkhoff":
        return birkhoff(poset_chain_plus_point(need("m", m if m is not None else n)))
    raise LatticeError(f"unknown family {family}")


def analyze_lattice(L: Lattice, order: str, jcap: Optional[int], with_gb: bool) -> dict:
    P = join_meet_ideal(L, order)
    gb = buchberger(P.ideal) if with_gb and not P.ideal.is_zero() else None
    rep = invariants_report(P.ideal, j_cap=jcap)
    out = {
        "lattice": L.to_dict(),
        "modular": is_modular(L),
        "distributive": is_distributive(L),
        "order": order,
        "variables": list(P.ring.names),
        "generators": [str(g) for g in P.ideal.gens],
        "report": rep.to_dict(),
    }
    out["report"]["betti"]["complete_through"] = rep.betti.complete_through
    if with_gb:
        out["groebner_basis"] = [str(g) for g in gb] if gb is not None else []
    out["_diagram"] = rep.betti.diagram()
    return out


def _yn(v) -> str:
    return "n/a" if v is None else str(v).lower()


def render_analysis(a: dict) -> str:
    r = a["report"]
    lines = [
        f"elements: {len(a['lattice']['elements'])}, modular: {_yn(a['modular'])}, "
        f"distributive: {_yn(a['distributive'])}",
        f"order: {a['order']} ({' > '.join(a['variables'])})",
        f"generators: {len(a['generators'])}",
    ]
    lines += [f"  {g}" for g in a["generators"]]
    if "groebner_basis" in a:
        lines.append(f"reduced Groebner basis: {len(a['groebner_basis'])}")
        lines += [f"  {g}" for g in a["groebner_basis"]]
    lines += [
        f"Hilbert series: {r['hilbert_series']}",
        f"dim: {r['dim']}, depth: {r['depth']}, pd: {r['pd']}, reg: {r['reg']}",
        f"Cohen-Macaulay: {_yn(r['is_CM'])}, Gorenstein: {_yn(r['is_gorenstein'])}, "
        f"nearly extremal Gorenstein: {_yn(r['nearly_extremal_gorenstein'])}",
        f"linearly related: {_yn(r['is_linearly_related'])}, "
        f"linear resolution: {_yn(r['has_linear_resolution'])}",
        f"Betti numbers (internal degree <= {r['betti']['complete_through']}):",
        a["_diagram"],
        f"Auslander-Buchsbaum: {_yn(r['auslander_buchsbaum'])}, Euler identity: {_yn(r['euler_identity'])}",
    ]
    return "\n".join(lines)


@main.command()
@click.option("--file", "file", type=click.Path(), help="lattice JSON file")
@click.option("--family", type=click.Choice(["chain", "boolean", "diamond", "lk", "birkhoff"]))
@click.option("--n", type=int)
@click.option("--k", type=int)
@click.option("--m", type=int)
@click.option("--gb", "with_gb", is_flag=True, help="print the reduced Groebner basis")
@click.option("--order", type=click.Choice(["degrevlex", "lex", "deglex"]), default="degrevlex")
@click.option("--jcap", type=int, help="largest internal degree for Betti numbers")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def analyze(file, family, n, k, m, with_gb, order, jcap, fmt):
    """Groebner basis, Hilbert series and Betti table of a join-meet ideal."""
    if (file is None) == (family is None):
        _fail(EXIT_INPUT, "give exactly one of --file and --family")
    if jcap is not None and jcap < 0:
        _fail(EXIT_INPUT, "--jcap must be >= 0")
    if file is not None:
        L = _guard(lambda: load_lattice(file))
    else:
        L = _guard(lambda: family_lattice(family, n, k, m))
    a = _guard(lambda: analyze_lattice(L, order, jcap, with_gb))
    diagram = a.pop("_diagram")
    if fmt == "json":
        click.echo(_dump(a))
    else:
        a["_diagram"] = diagram
        click.echo(render_analysis(a))


# -- verify-paper -------------------------------------------------------------

def _fixture_job(args):
    name, caption, expected, root = args
    L = fixtures.load(name, root)
    return [c.to_dict() for c in fixture_claims(L, expected, caption)]


def _section1_job(n):
    return [c.to_dict() for c in section1_suite(n)]


def _lk_job(nk):
    rep = lk_suite(*nk)
    return [c.to_dict() for c in rep.claims], {f"L_{nk[1]} (n={nk[0]})": rep.discrepancies}


def _distributive_job(_):
    return [c.to_dict() for c in distributive_suite()]


def _map(fn, items: Sequence, jobs: int) -> List:
    """Order-stable map, in a process pool when ``jobs > 1``."""
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def validate_fixtures(root=None) -> List[str]:
    """Problems with the shipped example lattices, one line each; empty if all are usable."""
    problems = []
    for name, meta in fixtures.index(root).items():
        caption = meta.get("caption", name)
        try:
            L = fixtures.load(name, root)
        except (LatticeError, OSError) as exc:
            problems.append(f"fixture {name} ({caption}): unreadable: {exc}")
            continue
        if not is_modular(L):
            problems.append(f"fixture {name} ({caption}): not modular")
        elif is_distributive(L):
            problems.append(f"fixture {name} ({caption}): distributive")
    return problems


LK_CASES = ((3, 1), (3, 2), (4, 2))


def verify_all(max_n: int, root=None, jobs: int = 1):
    claims: List[dict] = []
    for part in _map(_section1_job, list(range(3, max_n + 1)), jobs):
        claims += part
    notes = {}
    for part, disc in _map(_lk_job, list(LK_CASES), jobs):
        claims += part
        notes.update(disc)
    idx = fixtures.index(root)
    args = [(name, meta.get("caption", name), meta["expected_reg"], root) for name, meta in idx.items()]
    for part in _map(_fixture_job, args, jobs):
        claims += part
    claims += _distributive_job(None)
    return claims, notes


def render_claims(claims: List[dict], notes: dict) -> str:
    lines = []
    for c in claims:
        mark = "PASS" if c["pass"] else "FAIL"
        line = f"[{mark}] {c['claim']}  ({c['paper_ref']})"
        if not c["pass"]:
            line += f"\n       expected {json.dumps(c['expected'])}, computed {json.dumps(c['computed'])}"
        lines.append(line)
    if notes:
        lines.append("")
        lines.append("differences from the printed lists (cross-checks, not pass/fail):")
        for lat, d in notes.items():
            for key, diff in d.items():
                miss, extra = diff["missing_from_printed"], diff["not_in_computed"]
                if miss or extra:
                    lines.append(f"  {lat} [{key}] computed only: {', '.join(miss) or '-'}; "
                                 f"printed only: {', '.join(extra) or '-'}")
                else:
                    lines.append(f"  {lat} [{key}] identical")
    failed = sum(1 for c in claims if not c["pass"])
    lines.append("")
    lines.append(f"{len(claims) - failed}/{len(claims)} claims pass")
    return "\n".join(lines)


@main.command("verify-paper")
@click.option("--max-n", type=int, default=3, show_default=True)
@click.option("--fixtures", "root", type=click.Path(), help="directory with index.json and lattice files")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--jobs", type=int, default=1, show_default=True, help="worker processes")
@click.option("--notes", type=click.Path(), help="write the printed-list comparison as JSON")
def verify_paper(max_n, root, fmt, jobs, notes):
    """Re-check every stated result; exit 1 if any claim fails."""
    if not 3 <= max_n <= 6:
        _fail(EXIT_INPUT, "--max-n must be between 3 and 6")
    if jobs < 1:
        _fail(EXIT_INPUT, "--jobs must be >= 1")
    try:
        problems = validate_fixtures(root)
    except (OSError, ValueError, KeyError) as exc:
        _fail(EXIT_FAIL, f"fixture index unusable: {exc}")
    if problems:
        for p in problems:
            click.echo(f"FAIL {p}")
        sys.exit(EXIT_FAIL)
    claims, disc = _guard(lambda: verify_all(max_n, root, jobs))
    if notes:
        with open(notes, "w") as fh:
            fh.write(_dump(disc) + "\n")
    if fmt == "json":
        click.echo(_dump(claims))
    else:
        click.echo(render_claims(claims, disc))
    sys.exit(EXIT_OK if all(c["pass"] for c in claims) else EXIT_FAIL)


# -- enumerate ----------------------------------------------------------------

def lattice_row(L: Lattice, fields: Sequence[str]) -> dict:
    row = {}
    for f in fields:
        if f == "name":
            row[f] = L.name
        elif f == "size":
            row[f] = len(L)
        elif f == "distributive":
            row[f] = is_distributive(L)
        elif f == "modular":
            row[f] = is_modular(L)
        elif f == "graded":
            row[f] = L.is_graded
        elif f == "covers":
            row[f] = [list(c) for c in L.covers]
    inv = [f for f in fields if f in INVARIANT_FIELDS]
    if inv:
        P = join_meet_ideal(L)
        rep = invariants_report(P.ideal)
        values = {
            "reg": rep.reg, "pd": rep.pd, "depth": rep.depth, "dim": rep.dim,
            "beta24": rep.betti.get(2, 4), "cm": rep.is_CM, "gorenstein": rep.is_gorenstein,
            "linearly_related": rep.is_linearly_related,
        }
        for f in inv:
            row[f] = values[f]
    return row


FILTERS = {
    "all": lambda L: True,
    "distributive": is_distributive,
    "modular": is_modular,
    "modular-nondistributive": lambda L: is_modular(L) and not is_distributive(L),
}


def _row_job(args):
    L, fields = args
    return lattice_row(L, fields)


def enumerate_rows(max_size: int, filt: str, fields: Sequence[str], jobs: int = 1) -> List[dict]:
    if max_size > MAX_SIZE:
        raise SizeLimitExceeded(f"enumeration is limited to {MAX_SIZE} elements")
    if any(f in INVARIANT_FIELDS for f in fields) and max_size > INVARIANT_MAX_SIZE:
        raise SizeLimitExceeded(f"invariant fields are limited to {INVARIANT_MAX_SIZE} elements")
    keep = [L for L in enumerate_lattices(max_size) if FILTERS[filt](L)]
    return _map(_row_job, [(L, tuple(fields)) for L in keep], jobs)


def render_rows(rows: List[dict], fields: Sequence[str]) -> str:
    def cell(v):
        if isinstance(v, bool):
            return str(v).lower()
        if v is None:
            return "n/a"
        if isinstance(v, list):
            return " ".join(f"{a}<{b}" for a, b in v)
        return str(v)
    table = [list(fields)] + [[cell(r[f]) for f in fields] for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(fields))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]
    lines.append(f"{len(rows)} lattice(s)")
    return "\n".join(lines)


@main.command("enumerate")
@click.option("--max-size", type=int, required=True)
@click.option("--filter", "filt", type=click.Choice(sorted(FILTERS)), default="all", show_default=True)
@click.option("--report", "report", default="name,size,modular,distributive", show_default=True,
              help="comma-separated fields: " + ",".join(STRUCTURE_FIELDS + INVARIANT_FIELDS))
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.option("--jobs", type=int, default=1, show_default=True, help="worker processes")
def enumerate_cmd(max_size, filt, report, fmt, jobs):
    """List lattices up to isomorphism with the requested invariants."""
    fields = [f.strip() for f in report.split(",") if f.strip()]
    bad = [f for f in fields if f not in STRUCTURE_FIELDS + INVARIANT_FIELDS]
    if bad:
        _fail(EXIT_INPUT, f"unknown report field(s): {', '.join(bad)}")
    if max_size < 1:
        _fail(EXIT_INPUT, "--max-size must be >= 1")
    if jobs < 1:
        _fail(EXIT_INPUT, "--jobs must be >= 1")
    rows = _guard(lambda: enumerate_rows(max_size, filt, fields, jobs))
    if fmt == "json":
        click.echo(_dump(rows))
    else:
        click.echo(render_rows(rows, fields))


if __name__ == "__main__":
    main()
