"""Command-line interface.

Exit status: 0 when everything checked passes, 1 when a check fails, 2 on
malformed input or configuration.
"""

from __future__ import annotations

import argparse
import os
import re
import sys
import warnings
from dataclasses import dataclass

from .choice import PreferenceStructure, StructureFormatError, choice_from_structure, parse_structure
from .conditions import CONDITIONS, SampledModeWarning, check_KLM, check_condition, check_system_P
from .consequence import DISCRIMINATIVE, PLAIN, induce
from .formula import ParseError, atoms as formula_atoms, read_kb, render
from .harness import THEOREMS, verify_theorem
from .modeltheory import CapExceeded, Space, bits, resolve_cap
from .semantics import Kind, Structure, UnknownAtom


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    kind: Kind
    atoms: tuple[str, ...]
    kb: list
    structure_text: str | None
    discriminative: bool
    cap: int
    fmt: str


class Output:
    """Collects (key, value, human line) records and prints them in order."""

    def __init__(self, fmt: str):
        self.fmt = fmt
        self.lines: list[str] = []

    def add(self, key: str, value, human: str | None = None):
        if isinstance(value, bool):
            value = str(value).lower()
        if self.fmt == "kv":
            self.lines.append(f"{key}={value}")
        elif human is not None:
            self.lines.append(human)

    def text(self, human: str):
        if self.fmt != "kv":
            self.lines.append(human)

    def flush(self, stream=None):
        stream = stream or sys.stdout
        for line in self.lines:
            print(line, file=stream)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None


def _config(args) -> RunConfig:
    kb = read_kb(_read(args.kb)) if getattr(args, "kb", None) else []
    if args.atoms:
        atom_list = [a.strip() for a in args.atoms.split(",") if a.strip()]
    else:
        found = set()
        for f in kb:
            found |= formula_atoms(f)
        atom_list = sorted(found) or ["p", "q", "r"]
    for f in kb:
        missing = formula_atoms(f) - set(atom_list)
        if missing:
            raise ConfigError(f"formula {render(f)!r} uses atoms outside --atoms: {sorted(missing)}")
    structure_text = _read(args.structure) if getattr(args, "structure", None) else None
    return RunConfig(Kind(args.semantics), tuple(atom_list), kb, structure_text,
                     bool(getattr(args, "discriminative", False)), resolve_cap(args.cap), args.format)


def _space(cfg: RunConfig, structure: Structure, out: Output, prefix: str) -> Space:
    try:
        space = Space.build(structure, cfg.cap)
        out.add(f"{prefix}.sampled", False)
    except CapExceeded as exc:
        space = Space.sampled(structure, cfg.kb)
        out.add(f"{prefix}.sampled", True,
                f"sampled mode: closure exceeds cap ({exc.cap}); results cover "
                f"{len(space.universe)} sampled formula classes only")
    return space


def _preference(cfg: RunConfig, structure: Structure) -> PreferenceStructure:
    if cfg.structure_text is None:
        return PreferenceStructure(structure, range(len(structure)))
    return parse_structure(structure, cfg.structure_text)


def cmd_models(args) -> int:
    cfg = _config(args)
    structure = Structure(cfg.kind, cfg.atoms)
    out = Output(cfg.fmt)
    mask = structure.full
    for f in cfg.kb:
        mask &= structure.models(f)
    rows = structure.describe(mask)
    out.add("models.count", len(rows), f"{len(rows)} model(s)")
    for i in bits(mask):
        out.add(f"models.v{i}", str(structure.valuations[i]), f"v{i}  {structure.valuations[i]}")
    out.flush()
    return 0


def cmd_consequences(args) -> int:
    cfg = _config(args)
    structure = Structure(cfg.kind, cfg.atoms)
    out = Output(cfg.fmt)
    r = _preference(cfg, structure)
    space = _space(cfg, structure, out, "consequences")
    mode = DISCRIMINATIVE if cfg.discriminative else PLAIN
    rel = induce(r.mu, mode, space)
    v = rel.premises(cfg.kb)
    chosen = r.mu(v)
    result = rel[v]
    out.add("consequences.mode", mode, f"mode: {mode}")
    out.add("consequences.premise_models", ",".join(structure.describe(v)) or "-",
            f"models of KB: {', '.join(structure.describe(v)) or 'none'}")
    out.add("consequences.chosen", ",".join(structure.describe(chosen)) or "-",
            f"chosen models: {', '.join(structure.describe(chosen)) or 'none'}")
    texts = space.texts(result)
    out.add("consequences.count", len(texts), f"{len(texts)} consequence class(es):")
    for i, text in enumerate(texts):
        out.add(f"consequences.{i}", text, f"  {text}")
    out.flush()
    return 0


_RANGE = re.compile(r"c(\d+)(?:\.\.|-)c(\d+)$")


def parse_condition_list(text: str) -> list[str]:
    out = []
    for item in (x.strip() for x in text.split(",")):
        if not item:
            continue
        m = _RANGE.match(item)
        if m:
            lo, hi = int(m.group(1)), int(m.group(2))
            if lo > hi or hi >= len(CONDITIONS):
                raise ConfigError(f"bad condition range {item!r}")
            out.extend(f"c{i}" for i in range(lo, hi + 1))
        elif item in CONDITIONS or item in ("P", "KLM"):
            out.append(item)
        else:
            raise ConfigError(f"unknown condition {item!r}")
    return out


def cmd_check(args) -> int:
    cfg = _config(args)
    wanted = parse_condition_list(args.conditions)
    structure = Structure(cfg.kind, cfg.atoms)
    out = Output(cfg.fmt)
    r = _preference(cfg, structure)
    space = _space(cfg, structure, out, "check")
    mode = DISCRIMINATIVE if cfg.discriminative else PLAIN
    if space.exhaustive:
        rel = induce(choice_from_structure(r, space), mode)
    else:
        rel = induce(r.mu, mode, space)
    out.add("check.mode", mode, f"mode: {mode}")
    failed = False
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SampledModeWarning)
        for cid in wanted:
            if cid == "KLM":
                reports = check_KLM(space).values()
            elif cid == "P":
                reports = [check_system_P(rel)]
            else:
                reports = [check_condition(rel, cid)]
            for rep in reports:
                failed |= not rep.ok
                status = "pass" if rep.ok else "FAIL"
                human = f"{rep.condition}: {status}"
                if rep.witness is not None:
                    human += f"  witness={rep.witness}"
                out.add(f"check.{rep.condition}.pass", rep.ok, human)
                if rep.witness is not None:
                    out.add(f"check.{rep.condition}.witness", " ".join(map(str, rep.witness)))
    out.flush()
    return 1 if failed else 0


VERIFY_DEFAULT_ATOMS = {Kind.CLASSICAL: "p,q", Kind.J3: "p,q", Kind.FOUR: "p"}


def cmd_verify(args) -> int:
    if not args.atoms:
        args.atoms = VERIFY_DEFAULT_ATOMS[Kind(args.semantics)]
    cfg = _config(args)
    structure = Structure(cfg.kind, cfg.atoms)
    out = Output(cfg.fmt)
    try:
        space = Space.build(structure, cfg.cap)
    except CapExceeded as exc:
        raise ConfigError(f"theorem checks need the full closure, which exceeds the cap ({exc.cap})") from None
    variants = None
    if args.variants:
        variants = tuple(int(x) for x in args.variants.split(","))
    report = verify_theorem(args.theorem, space, range(args.seed_start, args.seed_start + args.seeds),
                            variants, copies=args.copies)
    for line in report.lines():
        key, _, value = line.partition("=")
        out.add(key, value)
    out.text(f"{report.theorem} on {cfg.kind.value} over {','.join(cfg.atoms)}: "
             f"{report.cases} case(s), {report.skipped} skipped (hypothesis unmet), "
             f"{len(report.failures)} failure(s)")
    for key in sorted(report.counts):
        out.text(f"  {key}: {report.counts[key]}")
    for note in report.notes:
        out.text(f"  note: {note}")
    for seed, what, witness in report.failures[:20]:
        out.text(f"  seed {seed}: {what} {witness if witness is not None else ''}".rstrip())
    out.flush()
    return 0 if report.ok else 1


def cmd_clone_stats(args) -> int:
    out = Output(args.format)
    kinds = [Kind(args.semantics)] if args.semantics else list(Kind)
    cap = resolve_cap(args.cap)
    for kind in kinds:
        counts = range(1, args.max_atoms + 1)
        for n in counts:
            structure = Structure(kind, "pqrstuvw"[:n])
            key = f"clone.{kind.value}.{n}"
            try:
                space = Space.build(structure, cap)
            except CapExceeded as exc:
                out.add(f"{key}.V", len(structure))
                out.add(f"{key}.capped", True,
                        f"{kind.value:9} |A|={n} |V|={len(structure):4}  closure exceeds cap {exc.cap}")
                continue
            in_c = sum(1 for v in space.D if space.in_C(v))
            out.add(f"{key}.V", len(structure))
            out.add(f"{key}.universe", len(space.universe))
            out.add(f"{key}.D", len(space.D))
            out.add(f"{key}.D_and_C", in_c,
                    f"{kind.value:9} |A|={n} |V|={len(structure):4} |U|={len(space.universe):6} "
                    f"|D|={len(space.D):6} |D&C|={in_c:6}")
    out.flush()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefcons",
                                     description="Preferential consequence over classical, FOUR and J3 semantics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, kb=True):
        p.add_argument("--semantics", choices=[k.value for k in Kind], default="classical")
        p.add_argument("--atoms", help="comma-separated atoms (default: those of the KB, else p,q,r)")
        if kb:
            p.add_argument("--kb", help="file with one formula per line")
        p.add_argument("--cap", type=int, default=None,
                       help="closure size limit (default $PREFCONS_CAP or 100000)")
        p.add_argument("--format", choices=("human", "kv"), default="human")

    p = sub.add_parser("models", help="list the models of a KB")
    common(p)
    p.set_defaults(func=cmd_models)

    p = sub.add_parser("consequences", help="list the consequences of a KB")
    common(p)
    p.add_argument("--structure", help="preference structure file (default: no preferences)")
    p.add_argument("--discriminative", action="store_true")
    p.set_defaults(func=cmd_consequences)

    p = sub.add_parser("check", help="check conditions on the induced relation")
    common(p)
    p.add_argument("--structure")
    p.add_argument("--discriminative", action="store_true")
    p.add_argument("--conditions", default="c0..c12",
                   help="comma list of c0..c12, ranges like c0..c3, P and KLM")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="check a representation theorem on generated instances",
                       description="Default atoms: p,q for classical and j3, p for four.")
    common(p, kb=False)
    p.add_argument("--theorem", choices=THEOREMS, required=True)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--seed-start", type=int, default=0)
    p.add_argument("--variants", help="comma list of theorem variants")
    p.add_argument("--copies", type=int, default=1, help="states per valuation")
    p.add_argument("--exhaustive", action="store_true",
                   help="insist on the full closure (always the case for theorem checks)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("clone-stats", help="sizes of the formula quotient and definable family")
    p.add_argument("--semantics", choices=[k.value for k in Kind], default=None)
    p.add_argument("--max-atoms", type=int, default=2)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--format", choices=("human", "kv"), default="human")
    p.set_defaults(func=cmd_clone_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: malformed formula at position {exc.position}: expected {exc.expected}", file=sys.stderr)
    except StructureFormatError as exc:
        print(f"error: structure file {exc}", file=sys.stderr)
    except UnknownAtom as exc:
        print(f"error: unknown atom {exc.args[0]!r}", file=sys.stderr)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
