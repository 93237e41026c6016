"""Command-line front end.

Subcommands:
    picard     compute the Picard group T(G) of the stable module category
    faithful   certify contractibility of the Tate construction
    chart      render a page of any variant (or the pic pages) as SVG
    ring       dump a catalog ring presentation as JSON
    reproduce  run the full acceptance matrix
    batch      run many jobs from a plain-text file, one per line

Exit codes: 0 success, 1 usage or parse errors, 2 ambiguous extension
assembly, 3 certificate failure.  PICSS_CACHE sets the page cache
directory; --cache overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import chart as chartmod
from .gf import FieldDescriptor, FieldError, parse_field
from .groups import (CATALOG_VERSION, CatalogError, GroupFamily, cohomology_ring,
                     parse_group, tate_ring)
from .picard import (AmbiguousExtensionError, PicardError, compute_picard_group,
                     picard_pages)
from .reproduce import run_acceptance
from .specseq import (PageCache, SpectralSequenceError, Window, content_key,
                      page_to_json, run_spectral_sequence, run_to_json)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_AMBIGUOUS = 2
EXIT_CERTIFICATE = 3


def _parse_window(text: str | None) -> Window | None:
    if not text:
        return None
    try:
        s_part, t_part = text.split(",")
        s0, s1 = (int(v) for v in s_part.split(":"))
        t0, t1 = (int(v) for v in t_part.split(":"))
        return Window(s0, s1, t0, t1)
    except (ValueError, SpectralSequenceError) as exc:
        raise CatalogError(f"bad window {text!r}: {exc}") from exc


def _default_field(group: GroupFamily) -> FieldDescriptor:
    return FieldDescriptor(group.p if group.kind != "torus" else 2, 1)


def _resolve(args) -> tuple[GroupFamily, FieldDescriptor, Window | None]:
    group = parse_group(args.group)
    field = parse_field(args.field) if args.field else _default_field(group)
    window = _parse_window(getattr(args, "window", None))
    return group, field, window


def _cache_from(args) -> PageCache | None:
    root = getattr(args, "cache", None) or os.environ.get("PICSS_CACHE")
    return PageCache(root) if root else None


def _write(args, name: str, text: str) -> str | None:
    out = getattr(args, "out", None)
    if not out:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return None
    os.makedirs(out, exist_ok=True)
    path = os.path.join(out, name)
    with open(path, "w") as fh:
        fh.write(text)
    print(f"wrote {path}")
    return path


def cmd_picard(args) -> int:
    group, field, window = _resolve(args)
    comp = compute_picard_group(group, field, window,
                                with_certificate=not args.no_certificate)
    print(str(comp.picard))
    payload = json.dumps(comp.to_json(), indent=1, sort_keys=True)
    name = f"{group}_{field}_picard.json".replace("^", "").replace("(", "")\
        .replace(")", "")
    if args.out:
        _write(args, name, payload)
    elif args.emit == "json":
        print(payload)
    return EXIT_OK


def cmd_faithful(args) -> int:
    group, field, window = _resolve(args)
    from .groups import extension_datum
    datum = extension_datum(group, field)
    run = run_spectral_sequence(datum, "tate", window)
    certificate = {
        "group": str(group),
        "field": str(field),
        "collapsed": run.collapsed,
        "contractible": bool(run.contractible),
        "final_page": max(run.pages),
        "pages_cached": _maybe_cache(args, group, field, "tate", run),
    }
    text = json.dumps(certificate, indent=1, sort_keys=True)
    if args.out:
        name = f"{group}_{field}_faithful.json".replace("^", "")\
            .replace("(", "").replace(")", "")
        _write(args, name, text)
    else:
        print(text)
    return EXIT_OK if certificate["contractible"] else EXIT_CERTIFICATE


def _maybe_cache(args, group, field, variant, run) -> list:
    cache = _cache_from(args)
    if not cache:
        return sorted(run.pages)
    key = content_key(CATALOG_VERSION, str(group), str(field), variant,
                      run.window.to_json())
    cache.store(key, run_to_json(run))
    return [cache.path(key)]


def cmd_chart(args) -> int:
    group, field, window = _resolve(args)
    if args.variant == "pic":
        comp = compute_picard_group(group, field, window, with_certificate=False)
        pages = picard_pages(comp)
        wanted = [p for p in pages if p.r == args.page]
        if not wanted:
            print(f"no pic page E_{args.page} (have "
                  f"{[p.r for p in pages]})", file=sys.stderr)
            return EXIT_USAGE
        spec = chartmod.chart_from_pic(wanted[0])
        run = None
    else:
        from .groups import extension_datum
        datum = extension_datum(group, field)
        cache = _cache_from(args)
        run = None
        if cache:
            key = content_key(CATALOG_VERSION, str(group), str(field),
                              args.variant, (window or Window.default()).to_json())
            stored = cache.load(key)
            if stored:
                page_data = [p for p in stored["pages"] if p["r"] == args.page]
                if page_data:
                    spec = chartmod.chart_from_json(page_data[0])
                    return _emit_chart(args, group, field, spec)
        run = run_spectral_sequence(datum, args.variant, window)
        if cache:
            _maybe_cache(args, group, field, args.variant, run)
        if args.page not in run.pages:
            print(f"page E_{args.page} not computed "
                  f"(pages {sorted(run.pages)})", file=sys.stderr)
            return EXIT_USAGE
        spec = chartmod.chart_from_page(run.pages[args.page],
                                        run.diffs.get(args.page))
    return _emit_chart(args, group, field, spec)


def _emit_chart(args, group, field, spec) -> int:
    base = f"{group}_{field}_{args.variant}_E{args.page}".replace("^", "")\
        .replace("(", "").replace(")", "")
    if args.emit == "svg":
        _write(args, base + ".svg", chartmod.emit_svg(spec))
    elif args.emit == "json":
        payload = {
            "title": spec.title,
            "glyphs": [vars(g) for g in spec.glyphs],
            "arrows": [vars(a) for a in spec.arrows],
        }
        _write(args, base + ".json", json.dumps(payload, indent=1, sort_keys=True))
    else:
        lines = [spec.title]
        for g in spec.glyphs:
            lines.append(f"  ({g.x:>3},{g.y:>3}) {g.kind} x{g.count} "
                         f"{g.label} {g.hover}")
        _write(args, base + ".txt", "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_ring(args) -> int:
    group, field, _ = _resolve(args)
    ring = tate_ring(group, field).positive if args.tate \
        else cohomology_ring(group, field)
    text = json.dumps(ring.to_json(), indent=1, sort_keys=True)
    if args.dump_ring and args.dump_ring != "-":
        with open(args.dump_ring, "w") as fh:
            fh.write(text)
        print(f"wrote {args.dump_ring}")
    else:
        print(text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    results = run_acceptance(only=args.only, cases=args.cases)
    if not results:
        print(f"no criteria match {args.only!r}", file=sys.stderr)
        return EXIT_USAGE
    for res in results:
        print(res.line())
    failed = [r for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} criteria failed; first: {failed[0].name}")
        return EXIT_CERTIFICATE
    print(f"all {len(results)} criteria passed")
    return EXIT_OK


def _run_batch_line(line: str) -> tuple[str, int]:
    argv = line.split()
    try:
        return line, main(argv)
    except SystemExit as exc:  # argparse error paths
        return line, int(exc.code or 0)


def cmd_batch(args) -> int:
    with open(args.file) as fh:
        lines = [ln.strip() for ln in fh
                 if ln.strip() and not ln.strip().startswith("#")]
    results = []
    if args.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        try:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_run_batch_line, lines))
        except OSError:
            results = [_run_batch_line(ln) for ln in lines]
    else:
        results = [_run_batch_line(ln) for ln in lines]
    bad = [(ln, code) for ln, code in results if code != 0]
    for ln, code in results:
        print(f"[{'ok' if code == 0 else code}] {ln}")
    return EXIT_OK if not bad else max(code for _, code in bad)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="picss",
        description="Picard groups of stable module categories over "
                    "concrete finite fields, with chart output.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field_required=False):
        p.add_argument("--group", required=True,
                       help='group name, e.g. "Q8", "C8", "C_3^2"')
        p.add_argument("--field", required=field_required, default=None,
                       help='field, e.g. "GF(4)" (default: prime field)')
        p.add_argument("--window", default=None, metavar="s0:s1,t0:t1")
        p.add_argument("--out", default=None, help="output directory")
        p.add_argument("--cache", default=None, help="page cache directory")

    p = sub.add_parser("picard", help="compute T(G) = Pic(StMod(kG))")
    common(p)
    p.add_argument("--emit", choices=("json", "txt"), default="txt")
    p.add_argument("--no-certificate", action="store_true",
                   help="skip the Tate faithfulness certificate")
    p.set_defaults(func=cmd_picard)

    p = sub.add_parser("faithful", help="certify Tate contractibility")
    common(p)
    p.set_defaults(func=cmd_faithful)

    p = sub.add_parser("chart", help="render a page as SVG/JSON/text")
    common(p)
    p.add_argument("--variant", choices=("hs", "hfpss", "tate", "pic"),
                   default="hfpss")
    p.add_argument("--page", type=int, default=2, metavar="N")
    p.add_argument("--emit", choices=("svg", "json", "txt"), default="svg")
    p.set_defaults(func=cmd_chart)

    p = sub.add_parser("ring", help="dump a catalog presentation as JSON")
    common(p)
    p.add_argument("--tate", action="store_true",
                   help="the Tate ring instead of cohomology")
    p.add_argument("--dump-ring", default="-", metavar="FILE",
                   help="write to FILE instead of stdout")
    p.set_defaults(func=cmd_ring)

    p = sub.add_parser("reproduce", help="run the acceptance matrix")
    p.add_argument("--only", default=None,
                   help="substring filter, e.g. 'appendix' or 'picard'")
    p.add_argument("--cases", type=int, default=1000,
                   help="randomized cases per property suite")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("batch", help="run jobs from a file, one per line")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except AmbiguousExtensionError as exc:
        print(f"ambiguous extension: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except (CatalogError, FieldError, PicardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SpectralSequenceError as exc:
        print(f"spectral sequence failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE


if __name__ == "__main__":
    sys.exit(main())
